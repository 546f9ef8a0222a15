// One line per acceptance criterion; exits nonzero if any fails.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "fillings/compression.hpp"
#include "fillings/fillings.hpp"
#include "fillings/grammar.hpp"
#include "oracles.hpp"

using namespace fillings;

namespace {

  struct Case {
    std::string      name;
    Presentation     p;
    TrivialityOracle oracle;
  };

  std::vector<Case> matrix() {
    return {{"<a; aa>", test::z2(), [](Word const& w) { return test::cyclic_trivial(w, 2); }},
            {"<a; aaa>", test::z3(), [](Word const& w) { return test::cyclic_trivial(w, 3); }},
            {"<a,b; abAB>", test::zz(), [](Word const& w) { return test::free_abelian_trivial(w, 2); }}};
  }

  struct Outcome {
    bool        pass = true;
    std::string detail;

    void fail(std::string const& why) {
      if (pass) {
        detail = why;
      }
      pass = false;
    }
  };

  std::string status_or(OracleResult const& r) {
    return r.value ? std::to_string(*r.value) : to_string(r.status);
  }

  Outcome folding() {
    Outcome     out;
    std::size_t checked = 0;
    for (auto const& c : matrix()) {
      auto d = measure_isodiametric(c.p, 6, c.oracle);
      if (d.status != Status::exact) {
        out.fail(c.name + ": d(6) not measured");
        continue;
      }
      auto words = test::all_words(c.p.num_generators(), 6);
      for (std::size_t j = 0; j <= std::max<std::size_t>(2, *d.value); ++j) {
        auto dfa = fold(build_loop_complex(c.p, j));
        for (auto const& w : words) {
          bool accepted = dfa.accepts_reduced(w);
          bool trivial  = c.oracle(w);
          ++checked;
          if (accepted && !trivial) {
            out.fail(c.name + ": unsound at j=" + std::to_string(j) + " on " + to_string(w));
          }
          if (j == *d.value && accepted != trivial) {
            out.fail(c.name + ": incomplete at d(6) on " + to_string(w));
          }
        }
      }
    }
    if (out.pass) {
      out.detail = std::to_string(checked) + " word checks";
    }
    return out;
  }

  Outcome tc_equality() {
    Outcome out;
    for (auto const& c : matrix()) {
      for (std::size_t n = 0; n <= 6; ++n) {
        auto d = measure_isodiametric(c.p, n, c.oracle);
        auto m = measure_tc_radius(c.p, n, c.oracle);
        std::string at = c.name + " n=" + std::to_string(n);
        if (d.status != Status::exact || !m) {
          out.fail(at + ": measurement failed");
          continue;
        }
        auto folded = remove_hairs(fold(build_loop_complex(c.p, *d.value)).graph());
        if (canonical_form(folded) != canonical_form(m->partial.graph)) {
          out.fail(at + ": TC_n differs from fold(Lambda_d)");
        }
        if (m->face_radius != *d.value) {
          out.fail(at + ": rhoTC=" + std::to_string(m->face_radius) + " d=" + std::to_string(*d.value));
        }
      }
    }
    if (out.pass) {
      out.detail = "21 (presentation, n) pairs";
    }
    return out;
  }

  Outcome cayley_balls() {
    Outcome out;
    for (auto const& c : matrix()) {
      for (std::size_t n = 0; n <= 6; n += 2) {
        auto m = measure_tc_radius(c.p, n, c.oracle);
        if (!m) {
          out.fail(c.name + ": TC did not converge");
          continue;
        }
        auto ref = cayley_ball(c.p.num_generators(), n / 2, c.oracle);
        if (canonical_form(ball(m->raw, n / 2)) != canonical_form(ref)) {
          out.fail(c.name + " n=" + std::to_string(n) + ": ball differs");
        }
      }
    }
    if (out.pass) {
      out.detail = "12 balls";
    }
    return out;
  }

  Outcome compression() {
    Outcome      out;
    SearchBudget budget{8, 20'000'000};
    for (auto const& c : matrix()) {
      auto comp   = compress(c.p);
      auto report = verify_compression(comp, 6, budget);
      for (auto const& row : report.rows) {
        std::string at = c.name + " n=" + std::to_string(row.n);
        if (!row.holds) {
          out.fail(at + ": P not exact");
        } else if (!*row.holds) {
          out.fail(at + ": " + status_or(row.combined) + " > " + std::to_string(row.bound));
        }
      }
      auto bad = group_mismatches(comp.base, comp.combined, 6, budget);
      if (!bad.empty()) {
        out.fail(c.name + ": groups differ on " + to_string(bad.front()));
      }
    }
    if (out.pass) {
      out.detail = "n <= 6, no group mismatches up to length 6";
    }
    return out;
  }

  Outcome grammar_pipeline(Outcome& pda_cfg) {
    Outcome        out;
    GrammarOptions opts;
    std::size_t    rows = 0;
    std::size_t    compared = 0;
    for (auto const& c : matrix()) {
      if (c.p.num_generators() != 1) {
        continue;
      }
      for (auto const& r : double_exp_experiment(c.p, 5, c.oracle, opts)) {
        ++rows;
        if (!r.ok()) {
          out.fail(c.name + ": row " + to_string(r.word) + " fails");
        }
        // PDA against grammar, same construction as the experiment
        auto pda = build_product_pda(r.word, build_tree_nfa(c.p, r.d));
        auto raw = pda_to_cfg(pda);
        auto g   = simplify_cfg(raw, pda);
        CykParser before(raw);
        CykParser after(g);
        for (auto const& z : test::all_words(c.p.num_generators(), 4)) {
          bool a = pda.accepts(z);
          ++compared;
          if (before.member(z) != a || after.member(z) != a) {
            pda_cfg.fail(c.name + ": w=" + to_string(r.word) + " disagrees on " + to_string(z));
          }
        }
      }
    }
    if (out.pass) {
      out.detail = std::to_string(rows) + " trivial words";
    }
    if (pda_cfg.pass) {
      pda_cfg.detail = std::to_string(compared) + " strings against raw and simplified grammars";
    }
    return out;
  }

  Outcome inequalities() {
    Outcome            out;
    std::ostringstream fitted;
    for (auto const& c : matrix()) {
      auto profile = measure_profile(c.p, 6, c.oracle);
      auto report  = check_inequalities(profile);
      for (auto const& row : report.rows) {
        std::string at = c.name + " n=" + std::to_string(row.n);
        if (row.d_le_half_f == false) {
          out.fail(at + ": d > ceil(f/2)");
        }
        if (row.double_exp == false) {
          out.fail(at + ": P above the double exponential bound");
        }
      }
      auto const& last = report.rows.back();
      fitted << ' ' << c.name << " c3=" << (last.fitted_c3 ? std::to_string(*last.fitted_c3) : "-")
             << " c4=" << (last.fitted_c4 ? std::to_string(*last.fitted_c4) : "-");
    }
    if (out.pass) {
      out.detail = "fitted at n=6:" + fitted.str();
    }
    return out;
  }

  Outcome oracle_consistency() {
    Outcome     out;
    std::size_t checked = 0;
    for (auto const& c : matrix()) {
      RewriteOracle rewrite(RewriteSystem(c.p), SearchBudget{});
      for (auto const& w : test::all_words(c.p.num_generators(), 8)) {
        ++checked;
        if (rewrite.trivial(w).trivial != c.oracle(w)) {
          out.fail(c.name + ": disagree on " + to_string(w));
        }
      }
    }
    if (out.pass) {
      out.detail = std::to_string(checked) + " words";
    }
    return out;
  }

  std::string slurp(std::string const& path) {
    std::ifstream      in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  Outcome determinism() {
    Outcome                  out;
    std::string const        cli  = FILLINGS_CLI;
    std::string const        data = FILLINGS_DATA;
    std::vector<std::string> commands{
        "profile " + data + "/zz.pres --n 5 --oracle free-abelian:2",
        "profile " + data + "/z3.pres --n 6 --oracle cyclic:3",
        "grammar-bound " + data + "/z3.pres --n 5 --oracle cyclic:3",
        "grammar-bound " + data + "/z2.pres --n 4 --oracle cyclic:2"};
    for (std::size_t i = 0; i < commands.size(); ++i) {
      std::string outputs[2];
      for (int run = 0; run < 2; ++run) {
        std::string file = "acceptance_" + std::to_string(i) + "_" + std::to_string(run) + ".csv";
        std::string cmd  = "\"" + cli + "\" " + commands[i] + " --csv " + file;
        if (std::system(cmd.c_str()) != 0) {
          out.fail("'" + commands[i] + "' exited nonzero");
        }
        outputs[run] = slurp(file);
        std::remove(file.c_str());
      }
      if (outputs[0].empty() || outputs[0] != outputs[1]) {
        out.fail("'" + commands[i] + "' differs between runs");
      }
    }
    if (out.pass) {
      out.detail = std::to_string(commands.size()) + " commands run twice";
    }
    return out;
  }

  bool report(int id, std::string const& title, Outcome const& o, double seconds) {
    std::printf("criterion %d %s  %s (%s) [%.2fs]\n", id, o.pass ? "PASS" : "FAIL", title.c_str(), o.detail.c_str(),
                seconds);
    std::fflush(stdout);
    return o.pass;
  }

  template <typename F>
  bool timed(int id, std::string const& title, F&& f) {
    auto    t0 = std::chrono::steady_clock::now();
    Outcome o  = f();
    return report(id, title, o, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }

}  // namespace

int main() {
  bool ok = true;
  ok      = timed(1, "folding correctness", folding) && ok;
  ok      = timed(2, "TC_n equals fold(Lambda_d) and rhoTC = d", tc_equality) && ok;
  ok      = timed(3, "TC_n agrees with the Cayley ball of radius n/2", cayley_balls) && ok;
  ok      = timed(4, "compression inequality and same group", compression) && ok;

  Outcome pda_cfg;
  auto    t0 = std::chrono::steady_clock::now();
  Outcome g  = grammar_pipeline(pda_cfg);
  double  dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  ok         = report(5, "double exponential pipeline", g, dt) && ok;
  ok         = report(6, "PDA and grammar languages agree", pda_cfg, dt) && ok;

  ok = timed(7, "inequality suite", inequalities) && ok;
  ok = timed(8, "rewrite oracle matches closed forms", oracle_consistency) && ok;
  ok = timed(9, "profile and grammar-bound output is deterministic", determinism) && ok;
  return ok ? EXIT_SUCCESS : EXIT_FAILURE;
}
