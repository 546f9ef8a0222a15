#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fillings/errors.hpp"
#include "fillings/grammar.hpp"
#include "oracles.hpp"

using namespace fillings;
using test::W;

namespace {

  Cfg toy(std::size_t num_nonterminals) {
    Cfg g;
    g.num_generators = 2;
    for (std::size_t i = 0; i < num_nonterminals; ++i) {
      g.nonterminals.push_back({i == 0, 0, 0, 0});
      g.names.push_back(std::string(1, static_cast<char>('S' + i)));
    }
    return g;
  }

  GSymbol t(char c) {
    return {true, W(std::string(1, c)).front().code()};
  }
  GSymbol nt(std::uint32_t i) {
    return {false, i};
  }

}  // namespace

TEST_CASE("Dyck PDA for the empty word") {
  auto pda = build_dyck_pda(Word{}, 1);
  CHECK(pda.accepts(Word{}));
  CHECK(pda.accepts(W("aA", 1)));
  CHECK(pda.accepts(W("AaaA", 1)));
  CHECK_FALSE(pda.accepts(W("a", 1)));
  CHECK_FALSE(pda.accepts(W("aa", 1)));
}

TEST_CASE("Dyck PDA accepts exactly the free class of w") {
  for (std::string target : {"", "aa", "ab", "aBA"}) {
    Word w   = W(target);
    auto pda = build_dyck_pda(w, 2);
    CHECK(pda.num_states() == red(w).size() + 2);
    for (auto const& z : test::all_words(2, 5)) {
      CHECK(pda.accepts(z) == (test::naive_red(z) == red(w)));
    }
  }
  auto pda = build_dyck_pda(W("aa", 1), 1);
  CHECK(pda.accepts(W("aa", 1)));
  CHECK(pda.accepts(W("aaAa", 1)));
  CHECK_FALSE(pda.accepts(W("aaaa", 1)));
}

TEST_CASE("Dyck PDA transitions by phase") {
  auto pda = build_dyck_pda(W("ab"), 2);
  for (auto const& tr : pda.transitions()) {
    if (tr.input) {
      CHECK(pda.in_q1(tr.from));
      CHECK(pda.in_q1(tr.to));
    } else {
      CHECK(tr.push.empty());
      CHECK_FALSE(pda.in_q1(tr.to));
    }
  }
}

TEST_CASE("product PDA") {
  auto p   = test::z2();
  auto nfa = build_tree_nfa(p, 0);
  auto pda = build_product_pda(W("aa", 1), nfa);
  CHECK(pda.num_q1_states() == 2);
  CHECK(pda.accepts(W("aa", 1)));
  CHECK(pda.accepts(W("aAaa", 1)));
  CHECK_FALSE(pda.accepts(W("AA", 1)));
  CHECK_FALSE(pda.accepts(W("a", 1)));

  for (auto const& pres : {test::z2(), test::z3(), test::zz()}) {
    std::size_t n    = pres.num_generators();
    auto        tree = build_tree_nfa(pres, 1);
    for (std::string target : {"", "aa", "aBAb"}) {
      if (n == 1 && target == "aBAb") {
        continue;
      }
      Word w  = W(target, n);
      auto pi = build_product_pda(w, tree);
      for (auto const& z : test::all_words(n, n == 1 ? 6 : 4)) {
        CHECK(pi.accepts(z) == (test::naive_red(z) == red(w) && tree.accepts(z)));
      }
    }
  }
}

TEST_CASE("Q1 size at radius 0") {
  for (auto const& p : {test::z2(), test::z3(), test::zz()}) {
    auto pda = build_product_pda(Word{}, build_tree_nfa(p, 0));
    CHECK(pda.num_q1_states() <= p.total_length());
  }
}

TEST_CASE("triple construction for the Dyck PDA") {
  auto pda = build_dyck_pda(Word{}, 1);
  auto g   = pda_to_cfg(pda);
  CHECK(g.max_rhs_length() <= 3);
  CykParser cyk(g);
  CHECK(cyk.member(W("aA", 1)));
  CHECK(cyk.member(W("Aa", 1)));
  CHECK(cyk.member(Word{}));
  CHECK_FALSE(cyk.member(W("a", 1)));
  for (auto const& z : test::all_words(1, 6)) {
    CHECK(cyk.member(z) == pda.accepts(z));
  }
}

TEST_CASE("grammar and PDA languages agree") {
  for (auto const& p : {test::z2(), test::z3(), test::zz()}) {
    std::size_t n = p.num_generators();
    for (std::size_t j : {0u, 1u}) {
      if (n == 2 && j == 1) {
        continue;
      }
      auto tree = build_tree_nfa(p, j);
      for (std::string target : {"", "aa", "aaa", "aBAb"}) {
        if (n == 1 && target == "aBAb") {
          continue;
        }
        Word w   = W(target, n);
        auto pda = build_product_pda(w, tree);
        auto raw = pda_to_cfg(pda);
        auto g   = simplify_cfg(raw, pda);
        CHECK(raw.max_rhs_length() <= 3);
        CHECK(g.max_rhs_length() <= 3);
        CHECK(has_simplified_shape(g, pda));
        CykParser before(raw);
        CykParser after(g);
        for (auto const& z : test::all_words(n, 4)) {
          bool a = pda.accepts(z);
          CHECK(before.member(z) == a);
          CHECK(after.member(z) == a);
        }
      }
    }
  }
}

TEST_CASE("simplified nonterminal count at radius 0") {
  for (auto const& p : {test::z2(), test::z3(), test::zz()}) {
    std::size_t a     = p.num_generators();
    std::size_t norm  = p.total_length();
    auto        tree  = build_tree_nfa(p, 0);
    auto        pda   = build_product_pda(W("aa", a), tree);
    auto        g     = simplify_cfg(pda_to_cfg(pda), pda);
    CHECK(count_q1_q1(g, pda) <= (2 * a + 1) * norm * norm);
  }
}

TEST_CASE("grammar dump") {
  auto g    = pda_to_cfg(build_dyck_pda(Word{}, 1));
  auto text = g.dump();
  CHECK(text.find("S -> [(0,s0),z,(0,s0)]\n") == 0);
  CHECK(text.find("[(0,s0),z,(0,f)] -> 1\n") != std::string::npos);
  CHECK(text.find("[(0,s0),A,(0,s0)] -> a\n") != std::string::npos);
}

TEST_CASE("shortest word, toy grammars") {
  {
    auto g = toy(3);  // S -> T U, T -> a, U -> b
    g.rules.push_back({0, {nt(1), nt(2)}, std::nullopt});
    g.rules.push_back({1, {t('a')}, std::nullopt});
    g.rules.push_back({2, {t('b')}, std::nullopt});
    auto sw = shortest_word(g);
    REQUIRE(sw);
    CHECK(sw->length == 2);
    CHECK(sw->witness == W("ab"));
  }
  {
    auto g = toy(1);  // S -> a S b | 1
    g.rules.push_back({0, {t('a'), nt(0), t('b')}, std::nullopt});
    g.rules.push_back({0, {}, std::nullopt});
    auto sw = shortest_word(g);
    REQUIRE(sw);
    CHECK(sw->length == 0);
    CHECK(sw->witness.empty());
    CHECK(sw->tree.has_no_repeated_nonterminal());
  }
  {
    auto g = toy(2);  // S -> a T, T -> b T
    g.rules.push_back({0, {t('a'), nt(1)}, std::nullopt});
    g.rules.push_back({1, {t('b'), nt(1)}, std::nullopt});
    CHECK_FALSE(shortest_word(g));
  }
  {
    auto g = toy(1);  // ties go to the lower rule index
    g.rules.push_back({0, {t('b')}, std::nullopt});
    g.rules.push_back({0, {t('a')}, std::nullopt});
    CHECK(shortest_word(g)->witness == W("b"));
  }
}

TEST_CASE("shortest word of the product grammar for aa over <a; aa>") {
  auto p    = test::z2();
  auto tree = build_tree_nfa(p, 0);
  auto pda  = build_product_pda(W("aa", 1), tree);
  auto g    = simplify_cfg(pda_to_cfg(pda), pda);
  auto sw   = shortest_word(g);
  REQUIRE(sw);
  CHECK(sw->length == 2);
  CHECK(sw->witness == W("aa", 1));
  CHECK(CykParser(g).member(sw->witness));
  CHECK(rightmost_path_fact(sw->tree, g, pda));
  RewriteOracle oracle(RewriteSystem(p), SearchBudget{8, 1'000'000});
  CHECK(*oracle.area(W("aa", 1)).value == 1);
}

TEST_CASE("shortest word is minimal") {
  for (std::size_t k : {2u, 3u}) {
    auto p    = k == 2 ? test::z2() : test::z3();
    auto tree = build_tree_nfa(p, 0);
    for (std::string target : {"", "aa", "AA", "aaa", "AAA", "aaAA"}) {
      Word w = W(target, 1);
      if (!test::cyclic_trivial(w, static_cast<long>(k))) {
        auto pda = build_product_pda(w, tree);
        CHECK_FALSE(shortest_word(simplify_cfg(pda_to_cfg(pda), pda)));
        continue;
      }
      auto      pda = build_product_pda(w, tree);
      auto      g   = simplify_cfg(pda_to_cfg(pda), pda);
      auto      sw  = shortest_word(g);
      REQUIRE(sw);
      CykParser cyk(g);
      CHECK(cyk.member(sw->witness));
      CHECK(sw->tree.has_no_repeated_nonterminal());
      CHECK(rightmost_path_fact(sw->tree, g, pda));
      if (sw->length <= 6) {
        for (auto const& z : test::all_words(1, sw->length == 0 ? 0 : sw->length - 1)) {
          if (z.size() < sw->length) {
            CHECK_FALSE(cyk.member(z));
          }
        }
      }
    }
  }
}

TEST_CASE("path decomposition") {
  auto p = test::zz();
  auto g = build_tree_nfa(p, 1);
  // tree vertices 0..4 are 1, a, A, b, B; the loop at a has interior 8, 9, 10
  std::vector<NfaStep> steps{{0, W("a").front(), 1},
                             {1, W("a").front(), 8},
                             {8, W("b").front(), 9},
                             {9, W("A").front(), 10},
                             {10, W("B").front(), 1},
                             {1, W("A").front(), 0}};
  for (auto const& s : steps) {
    auto const& next = g.next(s.from, s.letter);
    CHECK(std::find(next.begin(), next.end(), s.to) != next.end());
  }
  auto factors = decompose_tree_run(p, 1, steps);
  REQUIRE(factors.size() == 1);
  CHECK(factors[0].conjugator == W("a"));
  CHECK(factors[0].loop == W("abAB"));
  CHECK(factors[0].word() == W("aabABA"));

  // the same loop walked backwards
  std::vector<NfaStep> back{{0, W("a").front(), 1},
                            {1, W("b").front(), 10},
                            {10, W("a").front(), 9},
                            {9, W("B").front(), 8},
                            {8, W("A").front(), 1},
                            {1, W("A").front(), 0}};
  factors = decompose_tree_run(p, 1, back);
  REQUIRE(factors.size() == 1);
  CHECK(factors[0].loop == W("baBA"));

  CHECK(decompose_tree_run(p, 1, {}).empty());
  CHECK_THROWS_AS((void)decompose_tree_run(p, 1, {{0, W("a").front(), 1}}), InvalidArgument);
  CHECK_THROWS_AS((void)decompose_tree_run(p, 1, {{0, W("b").front(), 1}}), InvalidArgument);
}

TEST_CASE("self-loop relators in the decomposition") {
  auto p     = test::P(1, {"a"});
  auto steps = std::vector<NfaStep>{{0, W("a", 1).front(), 0}, {0, W("A", 1).front(), 0}};
  auto f     = decompose_tree_run(p, 0, steps);
  REQUIRE(f.size() == 2);
  CHECK(f[0].loop == W("a", 1));
  CHECK(f[1].loop == W("A", 1));
}

TEST_CASE("double exponential experiment over finite cyclic groups") {
  GrammarOptions opts;
  opts.budget = SearchBudget{8, 1'000'000};
  for (long k : {2L, 3L}) {
    auto p    = k == 2 ? test::z2() : test::z3();
    auto rows = double_exp_experiment(p, 5, [k](Word const& w) { return test::cyclic_trivial(w, k); }, opts);
    std::size_t expected = 0;
    for (auto const& w : test::all_words(1, 5)) {
      expected += test::cyclic_trivial(w, k) ? 1 : 0;
    }
    CHECK(rows.size() == expected);
    for (auto const& r : rows) {
      CAPTURE(to_string(r.word));
      CHECK(r.ok());
      CHECK(r.d == 0);
      CHECK(r.num_factors <= *r.ell);
      CHECK(r.bound.C == 2 * 3 * k * k);
      CHECK(r.bound.c == 4);
    }
  }
}

TEST_CASE("bound report for aa over <a; aa>") {
  GrammarOptions opts;
  opts.budget = SearchBudget{8, 1'000'000};
  auto rows   = double_exp_experiment(test::z2(), 2, [](Word const& w) { return test::cyclic_trivial(w, 2); }, opts);
  auto it     = std::find_if(rows.begin(), rows.end(), [](BoundReport const& r) { return r.word == W("aa", 1); });
  REQUIRE(it != rows.end());
  CHECK(*it->ell == 2);
  CHECK(*it->area.value == 1);
  CHECK(it->bound.text(2) == "2*2^24");
  auto csv = bound_csv(rows);
  CHECK(csv.find("aa,2,0,2,aa,1,exact,24,4,2*2^24,true,true,1,true,true\n") != std::string::npos);
  CHECK(csv.rfind("word,n,d,ell,", 0) == 0);
}

TEST_CASE("rule ceiling") {
  auto pda = build_product_pda(W("aa", 1), build_tree_nfa(test::z3(), 2));
  CHECK_THROWS_AS((void)pda_to_cfg(pda, 100), ResourceLimitExceeded);
}
