#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fillings/errors.hpp"
#include "fillings/fillings.hpp"
#include "oracles.hpp"

using namespace fillings;
using test::W;

namespace {

  bool z2(Word const& w) {
    return test::cyclic_trivial(w, 2);
  }
  bool z3(Word const& w) {
    return test::cyclic_trivial(w, 3);
  }
  bool zz(Word const& w) {
    return test::free_abelian_trivial(w, 2);
  }

  ProfileOptions options() {
    ProfileOptions o;
    o.budget = SearchBudget{8, 20'000'000};
    return o;
  }

}  // namespace

TEST_CASE("reference oracles") {
  auto c = ReferenceOracle::parse("cyclic:3", test::z3());
  CHECK(c.kind() == ReferenceOracle::Kind::cyclic);
  CHECK(c.name() == "cyclic:3");
  CHECK(c.trivial(W("aAaaa", 1)));
  CHECK_FALSE(c.trivial(W("aa", 1)));

  auto f = ReferenceOracle::parse("free-abelian:2", test::zz());
  CHECK(f.trivial(W("aBAb")));
  CHECK_FALSE(f.trivial(W("aab")));
  auto g = ReferenceOracle::parse("free:2", Presentation(2, {}));
  CHECK(g.trivial(W("abBA")));
  CHECK_FALSE(g.trivial(W("aBAb")));
  auto r = ReferenceOracle::parse("rewrite:8", test::zz());
  CHECK(r.parameter() == 8);
  CHECK(r.as_function()(W("aBAb")));
  CHECK_FALSE(r.trivial(W("ab")));

  CHECK_THROWS_AS((void)ReferenceOracle::parse("cyclic", test::z2()), InvalidArgument);
  CHECK_THROWS_AS((void)ReferenceOracle::parse("cyclic:x", test::z2()), InvalidArgument);
  CHECK_THROWS_AS((void)ReferenceOracle::parse("cyclic:2", test::zz()), InvalidArgument);
  CHECK_THROWS_AS((void)ReferenceOracle::parse("free-abelian:3", test::zz()), InvalidArgument);
  CHECK_THROWS_AS((void)ReferenceOracle::parse("rewrite:0", test::zz()), InvalidArgument);
  CHECK_THROWS_AS((void)ReferenceOracle::parse("nilpotent:2", test::zz()), InvalidArgument);
}

TEST_CASE("isodiametric function") {
  CHECK(*measure_isodiametric(test::z2(), 4, z2).value == 0);
  CHECK(*measure_isodiametric(test::z3(), 3, z3).value == 0);
  for (std::size_t k : {2u, 3u}) {
    auto p = k == 2 ? test::z2() : test::z3();
    auto r = measure_isodiametric(p, 0, [](Word const&) { return true; });
    CHECK(r.status == Status::exact);
    CHECK(*r.value == 0);
  }
  CHECK(*measure_isodiametric(test::zz(), 4, zz).value == 2);
  CHECK(*measure_isodiametric(test::zz(), 6, zz).value == 3);

  Presentation free2(2, {});
  CHECK(*measure_isodiametric(free2, 5, [](Word const& w) { return test::free_trivial(w); }).value == 0);
  CHECK(measure_isodiametric(free2, 4, zz).status == Status::lower_bound_only);
  CHECK(measure_isodiametric(test::zz(), 6, zz, 1).status == Status::budget_exceeded);
}

TEST_CASE("profile of <a; aa>") {
  auto prof = measure_profile(test::z2(), 4, z2, options());
  REQUIRE(prof.entries.size() == 5);
  auto const& e4 = prof.entries[4];
  CHECK(*e4.P.value == 2);
  CHECK(*e4.d.value == 0);
  CHECK(*e4.f.value == 4);
  CHECK(*prof.entries[2].f.value == 2);
  CHECK(*e4.rho_tc.value == 0);
  CHECK(prof.entries[0].P.status == Status::exact);
  CHECK(*prof.entries[0].P.value == 0);
  CHECK(*prof.entries[1].P.value == 0);
}

TEST_CASE("profile of the free group") {
  Presentation free2(2, {});
  auto         prof = measure_profile(free2, 4, [](Word const& w) { return test::free_trivial(w); }, options());
  for (auto const& e : prof.entries) {
    CHECK(*e.P.value == 0);
    CHECK(*e.d.value == 0);
    CHECK(*e.rho_tc.value == 0);
  }
}

TEST_CASE("profiles are monotone and the inequalities hold") {
  struct Case {
    Presentation     p;
    TrivialityOracle oracle;
  };
  for (auto const& c : {Case{test::z2(), z2}, Case{test::z3(), z3}, Case{test::zz(), zz}}) {
    auto prof = measure_profile(c.p, 6, c.oracle, options());
    for (std::size_t n = 1; n < prof.entries.size(); ++n) {
      auto const& a = prof.entries[n - 1];
      auto const& b = prof.entries[n];
      CHECK(*a.P.value <= *b.P.value);
      CHECK(*a.f.value <= *b.f.value);
      CHECK(*a.d.value <= *b.d.value);
      CHECK(*a.rho_tc.value <= *b.rho_tc.value);
    }
    auto report = check_inequalities(prof);
    CHECK(report.all_hold());
    for (auto const& row : report.rows) {
      CHECK(row.d_le_half_f == true);
      CHECK(row.double_exp == true);
      CHECK(row.d_eq_rho_tc == true);
    }
  }
}

TEST_CASE("Z^2 profile values") {
  auto prof = measure_profile(test::zz(), 6, zz, options());
  std::vector<std::size_t> P{0, 0, 0, 0, 1, 1, 2};
  std::vector<std::size_t> d{0, 0, 0, 0, 2, 2, 3};
  for (std::size_t n = 0; n <= 6; ++n) {
    CHECK(*prof.entries[n].P.value == P[n]);
    CHECK(*prof.entries[n].d.value == d[n]);
  }
  // aBAb needs length 6 when relators are only applied as written
  CHECK(*prof.entries[4].f.value == 6);
}

TEST_CASE("double exponential bound") {
  auto b = double_exp_bound(test::z2(), 0);
  CHECK(b.C == 24);
  CHECK(b.c == 4);
  CHECK(b.exponent == 24);
  CHECK(b.text(4) == "4*2^24");
  CHECK(b.admits(2, 4));
  CHECK(b.admits(0, 0));
  CHECK_FALSE(b.admits(1, 0));

  auto z = double_exp_bound(test::zz(), 2);
  CHECK(z.C == 160);
  CHECK(z.c == 16);
  CHECK(z.exponent == 160 * 256);
  CHECK_FALSE(z.saturated);
  CHECK(double_exp_bound(test::zz(), 40).saturated);
}

TEST_CASE("inequality rows") {
  auto prof   = measure_profile(test::z2(), 4, z2, options());
  auto report = check_inequalities(prof);
  auto row    = report.rows[4];
  CHECK(row.d_le_half_f == true);
  CHECK(row.double_exp == true);
  CHECK(row.d_eq_rho_tc == true);
  CHECK(row.fitted_c3);
  CHECK(row.fitted_c4);

  auto csv = profile_csv(prof, report);
  CHECK(csv.rfind("n,P,P_status,f,f_status,d,d_status,rhoTC,rhoTC_status,tc_rounds,", 0) == 0);
  CHECK(csv.find("\n4,2,exact,4,exact,0,exact,0,exact,") != std::string::npos);
  CHECK(csv == profile_csv(measure_profile(test::z2(), 4, z2, options()), report));
}

TEST_CASE("pull apart") {
  auto f0    = fold(build_loop_complex(test::z2(), 0));
  auto loops = pull_apart(f0.graph());
  REQUIRE(loops.size() == 1);
  CHECK(loops[0] == ConjugatedLoop{W("aa", 1), Word{}});

  auto m = measure_tc_radius(test::z3(), 3, z3);
  REQUIRE(m);
  for (auto const& l : pull_apart(m->raw)) {
    CHECK(l.relator == W("aaa", 1));
    CHECK(l.conjugator.size() <= 1);
  }
  auto back = refold(1, pull_apart(m->raw));
  CHECK(canonical_form(remove_hairs(back.graph())) == canonical_form(m->partial.graph));

  LabeledGraph point(2);
  CHECK(pull_apart(point).empty());
  CHECK(refold(2, {}).graph().num_vertices() == 1);

  LabeledGraph bare(1);
  bare.add_vertex();
  bare.add_edge(0, 0, 1);
  CHECK_THROWS_AS((void)pull_apart(bare), MissingFaceData);
}

TEST_CASE("pull apart and refold round trip") {
  for (auto const& p : {test::z2(), test::z3(), test::zz()}) {
    for (std::size_t j = 0; j <= 2; ++j) {
      auto f    = fold(build_loop_complex(p, j));
      auto back = refold(p.num_generators(), pull_apart(f.graph()));
      CHECK(canonical_form(remove_hairs(back.graph())) == canonical_form(remove_hairs(f.graph())));
    }
  }
}

TEST_CASE("Cayley balls") {
  auto b = cayley_ball(1, 2, z3);
  CHECK(canonical_form(b).num_vertices == 3);
  CHECK(canonical_form(b).edges.size() == 3);
  auto z = cayley_ball(2, 1, zz);
  CHECK(z.num_vertices() == 5);
  CHECK(z.edges().size() == 4);
  CHECK(cayley_ball(2, 2, zz).num_vertices() == 13);
}
