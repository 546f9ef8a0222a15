#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <set>

#include "fillings/core.hpp"
#include "fillings/errors.hpp"
#include "oracles.hpp"

using namespace fillings;
using test::W;

TEST_CASE("red") {
  CHECK(red(W("aAb")) == W("b"));
  CHECK(red(W("1")) == Word{});
  CHECK(red(W("abBAa")) == W("a"));
  for (auto const& w : test::all_words(2, 6)) {
    auto r = red(w);
    REQUIRE(r == test::naive_red(w));
    CHECK(red(r) == r);
    CHECK(is_reduced(r));
    CHECK(r.size() <= w.size());
    CHECK((w.size() - r.size()) % 2 == 0);
    CHECK(red(concat(w, invert(w))).empty());
  }
}

TEST_CASE("invert") {
  CHECK(invert(W("ab")) == W("BA"));
  CHECK(invert(W("")) == Word{});
  CHECK(invert(W("aA")) == W("aA"));
  for (auto const& w : test::all_words(2, 4)) {
    CHECK(invert(invert(w)) == w);
  }
}

TEST_CASE("conjugate") {
  CHECK(conjugate(W("aa"), W("1")) == W("aa"));
  CHECK(conjugate(W("a"), W("b")) == W("Bab"));
  std::mt19937 rng(7);
  auto const   words = test::all_words(2, 4);
  std::uniform_int_distribution<std::size_t> pick(0, words.size() - 1);
  for (int i = 0; i < 500; ++i) {
    auto const& g = words[pick(rng)];
    auto const& h = words[pick(rng)];
    auto        c = conjugate(g, h);
    CHECK(c.size() == g.size() + 2 * h.size());
    CHECK(red(c).empty() == red(g).empty());
  }
}

TEST_CASE("symmetrize") {
  auto s = symmetrize(test::z2());
  CHECK(s.relators() == std::vector<Word>{W("aa", 1), W("AA", 1)});

  auto ab = symmetrize(test::P(2, {"ab"}));
  std::set<Word> got(ab.relators().begin(), ab.relators().end());
  CHECK(got == std::set<Word>{W("ab"), W("ba"), W("BA"), W("AB")});
  CHECK(ab.relators().size() == 4);

  for (auto const& p : {test::z2(), test::z3(), test::zz(), test::P(2, {"aab", "bAbA"})}) {
    auto once  = symmetrize(p);
    auto twice = symmetrize(once);
    std::set<Word> a(once.relators().begin(), once.relators().end());
    std::set<Word> b(twice.relators().begin(), twice.relators().end());
    CHECK(a == b);
  }
}

TEST_CASE("presentation invariants") {
  auto p = test::zz();
  CHECK(p.num_generators() == 2);
  CHECK(p.num_relators() == 1);
  CHECK(p.total_length() == 4);
  CHECK_THROWS_AS(Presentation(2, {Word{}}), InvalidArgument);
  CHECK_THROWS_AS(Presentation(1, {W("b", 2)}), InvalidArgument);
  CHECK_THROWS_AS(Presentation(0, {}), InvalidArgument);
  // literal duplicates only
  auto q = test::P(1, {"aa", "aa", "aAaa"});
  CHECK(q.relators().size() == 2);
}

TEST_CASE("word text form") {
  CHECK(to_string(Word{}) == "1");
  CHECK(to_string(W("abAB")) == "abAB");
  CHECK(parse_word("", 2).empty());
  CHECK_THROWS_AS((void) parse_word("ac", 2), ParseError);
}

TEST_CASE("presentation text format") {
  auto p = parse_presentation("# Z^2\ngens: a b\n\nrels: abAB\n");
  CHECK(p == test::zz());
  CHECK(format_presentation(p) == "gens: a b\nrels: abAB\n");
  CHECK(parse_presentation(format_presentation(p)) == p);

  // relators are reduced on load
  CHECK(parse_presentation("gens: a\nrels: aAaa\n").relators() == std::vector<Word>{W("aa", 1)});
  CHECK(parse_presentation("gens: a b\nrels:\n").relators().empty());

  try {
    (void) parse_presentation("gens: a b\nrels: abAB aXb\n");
    FAIL("expected a parse error");
  } catch (ParseError const& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 13);
  }
  CHECK_THROWS_AS((void) parse_presentation("gens: a\nrels: aA\n"), ParseError);
  CHECK_THROWS_AS((void) parse_presentation("gens: b\n"), ParseError);
  CHECK_THROWS_AS((void) parse_presentation("rels: aa\n"), ParseError);
  CHECK_THROWS_AS((void) parse_presentation("gens: a\nfoo: x\n"), ParseError);
}

TEST_CASE("word enumeration") {
  std::size_t count = 0;
  for_each_word(2, 3, [&](Word const&) { ++count; });
  CHECK(count == 64);
  auto reduced = reduced_words_up_to(2, 3);
  CHECK(reduced.size() == 1 + 4 + 12 + 36);
  CHECK(num_reduced_words_up_to(2, 3) == reduced.size());
  CHECK(num_reduced_words_up_to(1, 4) == 9);
  for (auto const& w : reduced) {
    CHECK(is_reduced(w));
  }
}
