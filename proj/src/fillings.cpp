#include "fillings/fillings.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <set>
#include <sstream>

#include "fillings/errors.hpp"

namespace fillings {

  ////////////////////////////////////////////////////////////////////////
  // ReferenceOracle
  ////////////////////////////////////////////////////////////////////////

  ReferenceOracle::ReferenceOracle(Kind k, std::size_t parameter, std::size_t num_generators)
      : _kind(k), _parameter(parameter), _num_generators(num_generators), _rewrite() {}

  ReferenceOracle ReferenceOracle::parse(std::string_view spec, Presentation const& p) {
    auto colon = spec.find(':');
    if (colon == std::string_view::npos) {
      throw InvalidArgument("oracle spec must look like kind:number, got '" + std::string(spec) + "'");
    }
    auto        kind = spec.substr(0, colon);
    auto        arg  = spec.substr(colon + 1);
    std::size_t value = 0;
    auto [ptr, ec]    = std::from_chars(arg.data(), arg.data() + arg.size(), value);
    if (ec != std::errc() || ptr != arg.data() + arg.size() || arg.empty()) {
      throw InvalidArgument("bad oracle parameter '" + std::string(arg) + "'");
    }
    std::size_t const n = p.num_generators();
    if (kind == "cyclic") {
      if (n != 1 || value == 0) {
        throw InvalidArgument("cyclic:k needs one generator and k >= 1");
      }
      return ReferenceOracle(Kind::cyclic, value, n);
    }
    if (kind == "free-abelian" || kind == "free") {
      if (value != n) {
        throw InvalidArgument(std::string(kind) + ":r needs r equal to the number of generators");
      }
      return ReferenceOracle(kind == "free" ? Kind::free : Kind::free_abelian, value, n);
    }
    if (kind == "rewrite") {
      if (value == 0) {
        throw InvalidArgument("rewrite:L needs L >= 1");
      }
      ReferenceOracle out(Kind::rewrite, value, n);
      SearchBudget    b;
      b.max_word_length = value;
      out._rewrite      = std::make_shared<RewriteOracle>(RewriteSystem(p), b);
      return out;
    }
    throw InvalidArgument("unknown oracle kind '" + std::string(kind) + "'");
  }

  std::string ReferenceOracle::name() const {
    switch (_kind) {
      case Kind::cyclic:
        return "cyclic:" + std::to_string(_parameter);
      case Kind::free_abelian:
        return "free-abelian:" + std::to_string(_parameter);
      case Kind::free:
        return "free:" + std::to_string(_parameter);
      case Kind::rewrite:
        return "rewrite:" + std::to_string(_parameter);
    }
    return "?";
  }

  bool ReferenceOracle::trivial(Word const& w) const {
    switch (_kind) {
      case Kind::cyclic: {
        long s = 0;
        for (Letter x : w) {
          s += x.sign();
        }
        auto const k = static_cast<long>(_parameter);
        return ((s % k) + k) % k == 0;
      }
      case Kind::free_abelian: {
        std::vector<long> s(_num_generators, 0);
        for (Letter x : w) {
          s[x.generator()] += x.sign();
        }
        return std::all_of(s.begin(), s.end(), [](long v) { return v == 0; });
      }
      case Kind::free:
        return red(w).empty();
      case Kind::rewrite:
        return _rewrite->trivial(w).trivial;
    }
    return false;
  }

  TrivialityOracle ReferenceOracle::as_function() const {
    return [self = *this](Word const& w) { return self.trivial(w); };
  }

  ////////////////////////////////////////////////////////////////////////
  // Isodiametric measurement
  ////////////////////////////////////////////////////////////////////////

  OracleResult measure_isodiametric(Presentation const&     p,
                                    std::size_t             n,
                                    TrivialityOracle const& oracle,
                                    std::size_t             max_radius,
                                    GraphLimits const&      limits) {
    std::vector<Word> targets;
    for (auto& w : reduced_words_up_to(p.num_generators(), n)) {
      if (!w.empty() && oracle(w)) {
        targets.push_back(std::move(w));
      }
    }
    if (targets.empty()) {
      return {0, Status::exact};
    }
    if (p.relators().empty()) {
      return {std::nullopt, Status::lower_bound_only};
    }
    for (std::size_t j = 0; j <= max_radius; ++j) {
      try {
        auto const dfa = fold(build_loop_complex(p, j, limits));
        bool const all = std::all_of(targets.begin(), targets.end(), [&](Word const& w) {
          return dfa.accepts_reduced(w);
        });
        if (all) {
          return {j, Status::exact};
        }
      } catch (ResourceLimitExceeded const&) {
        return {j, Status::budget_exceeded};
      }
    }
    return {max_radius + 1, Status::budget_exceeded};
  }

  ////////////////////////////////////////////////////////////////////////
  // Profiles
  ////////////////////////////////////////////////////////////////////////

  namespace {
    // Running maximum of per-word results.
    struct MaxAccumulator {
      std::size_t value   = 0;
      bool        missing = false;
      Status      status  = Status::exact;

      void add(OracleResult const& r) {
        if (r.value) {
          value = std::max(value, *r.value);
        } else {
          missing = true;
        }
        if (r.status == Status::budget_exceeded) {
          status = Status::budget_exceeded;
        } else if (r.status != Status::exact && status == Status::exact) {
          status = Status::lower_bound_only;
        }
        if (!r.value && status == Status::exact) {
          status = Status::lower_bound_only;
        }
      }

      [[nodiscard]] OracleResult result() const {
        return {value, status};
      }
    };
  }  // namespace

  FillingProfile measure_profile(Presentation const&     p,
                                 std::size_t             n_max,
                                 TrivialityOracle const& oracle,
                                 ProfileOptions const&   options) {
    RewriteSystem const rs(p);
    RewriteOracle const rw(rs, options.budget);
    FillingProfile      out{p, n_max, {}};
    MaxAccumulator      area, fill;
    for (std::size_t n = 0; n <= n_max; ++n) {
      for_each_word(p.num_generators(), n, [&](Word const& w) {
        if (oracle(w)) {
          area.add(rw.area(w));
          fill.add(rw.filling(w));
        }
      });
      ProfileEntry e{n, area.result(), fill.result(), {}, {}};
      e.d = measure_isodiametric(p, n, oracle, options.max_radius, options.limits);
      try {
        auto tc = measure_tc_radius(p, n, oracle, options.max_tc_rounds, options.tc_mode, options.limits);
        if (tc) {
          e.rho_tc           = {tc->face_radius, Status::exact};
          e.tc_rounds        = tc->rounds;
          e.tc_vertex_radius = tc->radius;
        } else {
          e.rho_tc = {std::nullopt, Status::budget_exceeded};
        }
      } catch (ResourceLimitExceeded const&) {
        e.rho_tc = {std::nullopt, Status::budget_exceeded};
      }
      out.entries.push_back(std::move(e));
    }
    return out;
  }

  DoubleExpBound double_exp_bound(Presentation const& p, std::size_t d) {
    std::uint64_t const a    = p.num_generators();
    std::uint64_t const norm = p.total_length();
    DoubleExpBound      b{2 * (2 * a + 1) * norm * norm, (2 * a) * (2 * a), d, 0, false};
    constexpr auto      kMax = std::numeric_limits<std::uint64_t>::max();
    std::uint64_t       e    = b.C;
    for (std::size_t i = 0; i < d && !b.saturated && e != 0; ++i) {
      if (e > kMax / b.c) {
        b.saturated = true;
      } else {
        e *= b.c;
      }
    }
    b.exponent = b.saturated ? kMax : e;
    return b;
  }

  bool DoubleExpBound::admits(std::uint64_t value, std::size_t n) const noexcept {
    if (n == 0) {
      return value == 0;
    }
    if (saturated || exponent >= 64) {
      return true;
    }
    std::uint64_t const bound_hi = std::numeric_limits<std::uint64_t>::max() >> exponent;
    if (n > bound_hi) {
      return true;
    }
    return value <= (static_cast<std::uint64_t>(n) << exponent);
  }

  std::string DoubleExpBound::text(std::size_t n) const {
    std::string e = saturated ? std::string("inf") : std::to_string(exponent);
    return std::to_string(n) + "*2^" + e;
  }

  namespace {
    // Least integer c >= 2 with value <= c^e, nullopt if none exists.
    std::optional<std::uint64_t> fit_base(std::uint64_t value, std::uint64_t e) {
      if (value <= 1) {
        return 2;
      }
      if (e == 0) {
        return std::nullopt;
      }
      for (std::uint64_t c = 2;; ++c) {
        std::uint64_t pw = 1;
        bool          big = false;
        for (std::uint64_t i = 0; i < e && !big; ++i) {
          if (pw > value / c) {
            big = true;
          } else {
            pw *= c;
          }
        }
        if (big || pw >= value) {
          return c;
        }
      }
    }
  }  // namespace

  InequalityReport check_inequalities(FillingProfile const& profile) {
    InequalityReport out;
    for (auto const& e : profile.entries) {
      InequalityRow row{e.n, {}, {}, {}, {}, {}};
      bool const    P_ok = e.P.status == Status::exact && e.P.value;
      bool const    f_ok = e.f.status == Status::exact && e.f.value;
      bool const    d_ok = e.d.status == Status::exact && e.d.value;
      bool const    r_ok = e.rho_tc.status == Status::exact && e.rho_tc.value;
      if (d_ok && f_ok) {
        row.d_le_half_f = *e.d.value <= (*e.f.value + 1) / 2;
      }
      if (P_ok && d_ok) {
        row.double_exp = double_exp_bound(profile.presentation, *e.d.value).admits(*e.P.value, e.n);
      }
      if (d_ok && r_ok) {
        row.d_eq_rho_tc = *e.d.value == *e.rho_tc.value;
      }
      if (P_ok && f_ok) {
        row.fitted_c3 = fit_base(*e.P.value, *e.f.value);
      }
      if (f_ok && d_ok) {
        row.fitted_c4 = fit_base(*e.f.value, *e.d.value + e.n);
      }
      out.rows.push_back(row);
    }
    return out;
  }

  bool InequalityReport::all_hold() const {
    return std::all_of(rows.begin(), rows.end(), [](InequalityRow const& r) {
      return r.d_le_half_f.value_or(true) && r.double_exp.value_or(true)
             && r.d_eq_rho_tc.value_or(true);
    });
  }

  namespace {
    std::string cell(std::optional<std::size_t> const& v) {
      return v ? std::to_string(*v) : std::string();
    }
    std::string cell(std::optional<std::uint64_t> const& v, int) {
      return v ? std::to_string(*v) : std::string();
    }
    std::string cell(std::optional<bool> const& b) {
      return b ? (*b ? "true" : "false") : "skipped";
    }
  }  // namespace

  std::string profile_csv(FillingProfile const& profile, InequalityReport const& report) {
    std::ostringstream out;
    out << "n,P,P_status,f,f_status,d,d_status,rhoTC,rhoTC_status,tc_rounds,"
           "d_le_half_f,double_exp,d_eq_rhoTC,c3_fit,c4_fit\n";
    for (std::size_t i = 0; i < profile.entries.size(); ++i) {
      auto const& e = profile.entries[i];
      auto const& r = report.rows[i];
      out << e.n << ',' << cell(e.P.value) << ',' << to_string(e.P.status) << ','
          << cell(e.f.value) << ',' << to_string(e.f.status) << ',' << cell(e.d.value) << ','
          << to_string(e.d.status) << ',' << cell(e.rho_tc.value) << ','
          << to_string(e.rho_tc.status) << ',' << e.tc_rounds << ',' << cell(r.d_le_half_f)
          << ',' << cell(r.double_exp) << ',' << cell(r.d_eq_rho_tc) << ','
          << cell(r.fitted_c3, 0) << ',' << cell(r.fitted_c4, 0) << '\n';
    }
    return out.str();
  }

  ////////////////////////////////////////////////////////////////////////
  // Pulling apart and Cayley balls
  ////////////////////////////////////////////////////////////////////////

  std::vector<ConjugatedLoop> pull_apart(LabeledGraph const& folded) {
    if (folded.faces().empty()) {
      if (!folded.edges().empty()) {
        throw MissingFaceData();
      }
      return {};
    }
    FoldedDfa const          dfa(folded);
    std::size_t const        nv  = folded.num_vertices();
    std::size_t const        inf = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> dist(nv, inf);
    std::vector<vertex_type> parent(nv, 0);
    std::vector<Letter>      via(nv);
    std::vector<vertex_type> queue{LabeledGraph::origin()};
    dist[LabeledGraph::origin()] = 0;
    for (std::size_t i = 0; i < queue.size(); ++i) {
      vertex_type v = queue[i];
      for (std::uint32_t c = 0; c < 2 * folded.num_generators(); ++c) {
        auto t = dfa.step(v, Letter::from_code(c));
        if (t && dist[*t] == inf) {
          dist[*t]   = dist[v] + 1;
          parent[*t] = v;
          via[*t]    = Letter::from_code(c);
          queue.push_back(*t);
        }
      }
    }
    auto path_to = [&](vertex_type v) {
      Word x;
      while (v != LabeledGraph::origin()) {
        x.push_back(via[v]);
        v = parent[v];
      }
      std::reverse(x.begin(), x.end());
      return x;
    };

    std::vector<ConjugatedLoop> out;
    for (auto const& f : folded.faces()) {
      Word const& r    = f.boundary;
      vertex_type v    = f.basepoint;
      vertex_type best = f.basepoint;
      std::size_t bd   = inf;
      for (std::size_t i = 0; i < r.size(); ++i) {
        Word rot = rotate(r, i);
        if ((rot == r || invert(rot) == r) && dist[v] < bd) {
          bd   = dist[v];
          best = v;
        }
        v = *dfa.step(v, r[i]);
      }
      out.push_back({r, path_to(best)});
    }
    return out;
  }

  FoldedDfa refold(std::size_t num_generators, std::vector<ConjugatedLoop> const& loops) {
    LabeledGraph g(num_generators);
    for (auto const& l : loops) {
      g.add_loop(g.add_path(LabeledGraph::origin(), l.conjugator), l.relator);
    }
    return fold(g);
  }

  LabeledGraph cayley_ball(std::size_t num_generators, std::size_t k, TrivialityOracle const& oracle) {
    std::vector<Word> reps;
    auto              find = [&](Word const& w) -> std::optional<vertex_type> {
      for (std::size_t i = 0; i < reps.size(); ++i) {
        if (oracle(red(concat(w, invert(reps[i]))))) {
          return static_cast<vertex_type>(i);
        }
      }
      return std::nullopt;
    };
    LabeledGraph g(num_generators);
    for (auto const& w : reduced_words_up_to(num_generators, k)) {
      if (!find(w)) {
        if (!reps.empty()) {
          (void) g.add_vertex();
        }
        reps.push_back(w);
      }
    }
    std::set<Edge> edges;
    for (std::size_t i = 0; i < reps.size(); ++i) {
      if (reps[i].size() >= k) {
        continue;
      }
      auto const v = static_cast<vertex_type>(i);
      for (generator_type a = 0; a < num_generators; ++a) {
        auto out = find(concat(reps[i], Word{Letter::positive(a)}));
        auto in  = find(concat(reps[i], Word{Letter::negative(a)}));
        edges.insert({v, a, *out});
        edges.insert({*in, a, v});
      }
    }
    for (auto const& e : edges) {
      g.add_edge(e.source, e.label, e.target);
    }
    return g;
  }

}  // namespace fillings
