#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>

#include "fillings/compression.hpp"
#include "fillings/errors.hpp"
#include "fillings/fillings.hpp"
#include "fillings/grammar.hpp"
#include "fillings/toddcoxeter.hpp"

using namespace fillings;

namespace {

  constexpr int kOk       = 0;
  constexpr int kNegative = 1;
  constexpr int kConfig   = 2;
  constexpr int kBudget   = 3;

  struct Config {
    std::string presentation;
    std::string word;
    std::string oracle;
    std::string csv;
    std::string dot;
    std::string out;
    std::string tc_mode = "layered";
    std::size_t radius  = 0;
    std::size_t n       = 4;
    std::size_t rounds  = 1;
    SearchBudget budget;
    bool        verify = false;
  };

  void emit(std::string const& path, std::string const& text) {
    if (path.empty() || path == "-") {
      std::cout << text;
      return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
      throw InvalidArgument("cannot write '" + path + "'");
    }
    out << text;
  }

  TcMode tc_mode(std::string const& s) {
    return s == "literal" ? TcMode::literal : TcMode::layered;
  }

  int cmd_wp(Config const& cfg) {
    auto p = read_presentation_file(cfg.presentation);
    auto w = parse_word(cfg.word, p.num_generators());
    if (decide_word_problem(p, w, cfg.radius)) {
      std::cout << "trivial\n";
      return kOk;
    }
    std::cout << "not-accepted-at-radius-" << cfg.radius << '\n';
    return kNegative;
  }

  int cmd_profile(Config const& cfg) {
    auto           p      = read_presentation_file(cfg.presentation);
    auto           oracle = ReferenceOracle::parse(cfg.oracle, p);
    ProfileOptions opts;
    opts.budget  = cfg.budget;
    opts.tc_mode = tc_mode(cfg.tc_mode);
    auto profile = measure_profile(p, cfg.n, oracle.as_function(), opts);
    auto report  = check_inequalities(profile);
    emit(cfg.csv, profile_csv(profile, report));
    bool ok = true;
    for (auto const& row : report.rows) {
      ok = ok && row.d_eq_rho_tc.value_or(true) && row.double_exp.value_or(true);
    }
    if (cfg.verify && !p.relators().empty()) {
      ok = verify_compression(compress(p), cfg.n, cfg.budget).all_hold() && ok;
    }
    return ok ? kOk : kNegative;
  }

  int cmd_compress(Config const& cfg) {
    auto p = read_presentation_file(cfg.presentation);
    auto c = compress(p);
    emit(cfg.out, format_presentation(c.combined));
    if (!cfg.verify) {
      return kOk;
    }
    auto report = verify_compression(c, cfg.n, cfg.budget);
    if (!cfg.csv.empty()) {
      emit(cfg.csv, compression_csv(report));
    }
    auto mismatches = group_mismatches(c.base, c.combined, cfg.n, cfg.budget);
    for (auto const& w : mismatches) {
      std::cerr << "group mismatch: " << to_string(w) << '\n';
    }
    return report.all_hold() && mismatches.empty() ? kOk : kNegative;
  }

  int cmd_tc(Config const& cfg) {
    auto    p = read_presentation_file(cfg.presentation);
    TcState s(p, tc_mode(cfg.tc_mode));
    for (std::size_t k = 0; k < cfg.rounds; ++k) {
      s.run_round();
    }
    auto pcg = partial_cayley(s);
    emit(cfg.dot, to_dot(pcg.graph, "TC"));
    std::cerr << "rounds=" << s.round() << " vertices=" << pcg.graph.num_vertices()
              << " radius=" << pcg.radius << '\n';
    return kOk;
  }

  int cmd_grammar_bound(Config const& cfg) {
    auto           p      = read_presentation_file(cfg.presentation);
    auto           oracle = ReferenceOracle::parse(cfg.oracle, p);
    GrammarOptions opts;
    opts.budget = cfg.budget;
    auto rows   = double_exp_experiment(p, cfg.n, oracle.as_function(), opts);
    emit(cfg.csv, bound_csv(rows));
    bool ok = std::all_of(rows.begin(), rows.end(), [](BoundReport const& r) { return r.ok(); });
    return ok ? kOk : kNegative;
  }

  void add_budget(CLI::App* cmd, Config& cfg) {
    cmd->add_option("--budget-len", cfg.budget.max_word_length, "Longest intermediate word in rewrite searches")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--budget-states", cfg.budget.max_states, "Most words a rewrite search may visit")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
  }

}  // namespace

int main(int argc, char** argv) {
  Config   cfg;
  CLI::App app{"Filling functions of finite presentations"};
  app.require_subcommand(1);

  auto* wp = app.add_subcommand("wp", "Decide a word with the folded loop complex of a given radius");
  wp->add_option("presentation", cfg.presentation)->required();
  wp->add_option("word", cfg.word, "Word, e.g. aBAb; \"\" or 1 for the empty word")->required();
  wp->add_option("--radius", cfg.radius)->capture_default_str();

  auto* profile = app.add_subcommand("profile", "Measure P, f, d and rhoTC for n = 0..N as CSV");
  profile->add_option("presentation", cfg.presentation)->required();
  profile->add_option("--n", cfg.n)->capture_default_str();
  profile->add_option("--oracle", cfg.oracle, "cyclic:k, free-abelian:r, free:r or rewrite:L")->required();
  profile->add_option("--csv", cfg.csv, "Output file (default stdout)");
  profile->add_option("--tc-mode", cfg.tc_mode)
      ->check(CLI::IsMember({"layered", "literal"}))
      ->capture_default_str();
  profile->add_flag("--verify", cfg.verify, "Also check the compression inequality");
  add_budget(profile, cfg);

  auto* comp = app.add_subcommand("compress", "Print the compressed presentation");
  comp->add_option("presentation", cfg.presentation)->required();
  comp->add_option("out", cfg.out, "Output .pres file (default stdout)");
  comp->add_flag("--verify", cfg.verify, "Check the area inequality and that the group is unchanged");
  comp->add_option("--n", cfg.n, "Word length for --verify")->capture_default_str();
  comp->add_option("--csv", cfg.csv, "Write the --verify table here");
  add_budget(comp, cfg);

  auto* tc = app.add_subcommand("tc", "Run Todd-Coxeter rounds and print the partial Cayley graph as DOT");
  tc->add_option("presentation", cfg.presentation)->required();
  tc->add_option("--rounds", cfg.rounds)->capture_default_str();
  tc->add_option("--dot", cfg.dot, "Output file (default stdout)");
  tc->add_option("--tc-mode", cfg.tc_mode)->check(CLI::IsMember({"layered", "literal"}))->capture_default_str();

  auto* gb = app.add_subcommand("grammar-bound", "Shortest-word bound check for every trivial word up to length N");
  gb->add_option("presentation", cfg.presentation)->required();
  gb->add_option("--n", cfg.n)->capture_default_str();
  gb->add_option("--oracle", cfg.oracle)->required();
  gb->add_option("--csv", cfg.csv, "Output file (default stdout)");
  add_budget(gb, cfg);

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? kOk : kConfig;
  }

  try {
    if (wp->parsed()) {
      return cmd_wp(cfg);
    }
    if (profile->parsed()) {
      return cmd_profile(cfg);
    }
    if (comp->parsed()) {
      return cmd_compress(cfg);
    }
    if (tc->parsed()) {
      return cmd_tc(cfg);
    }
    return cmd_grammar_bound(cfg);
  } catch (ResourceLimitExceeded const& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBudget;
  } catch (Error const& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfig;
  }
}
