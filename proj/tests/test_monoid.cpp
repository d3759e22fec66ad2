#include <gtest/gtest.h>

#include <random>

#include "artin/fixtures.hpp"
#include "artin/monoid.hpp"
#include "oracles.hpp"

using namespace artin;

namespace {

std::set<Word> words(const Monoid& m, std::initializer_list<const char*> xs) {
  std::set<Word> out;
  for (auto x : xs) out.insert(m.parse_word(x));
  return out;
}

std::set<Word> as_words(const std::vector<Element>& xs) {
  std::set<Word> out;
  for (const auto& x : xs) out.insert(x.word());
  return out;
}

}  // namespace

TEST(Monoid, EquivalenceClassExamples) {
  Monoid m(fixtures::edge());
  EXPECT_EQ(m.equivalence_class(m.parse_word("s t s")), words(m, {"s t s", "t s t"}));
  EXPECT_EQ(m.equivalence_class(m.parse_word("s t s t")), words(m, {"s t s t", "s s t s", "t s t t"}));
  EXPECT_EQ(m.equivalence_class({}), std::set<Word>{Word{}});
}

TEST(Monoid, EqualityExamples) {
  Monoid m(fixtures::example_six_four());
  EXPECT_TRUE(m.equals(m.parse("s t s"), m.parse("t s t")));
  EXPECT_FALSE(m.equals(m.parse("s t"), m.parse("t s")));
  EXPECT_TRUE(m.equals(m.parse("s u"), m.parse("u s")));
  EXPECT_EQ(m.parse("t s t"), m.parse("s t s"));
  EXPECT_EQ(m.length(m.identity()), 0u);
  EXPECT_EQ(m.length(m.parse("s t s")), 3u);
}

TEST(Monoid, MultiplyExamples) {
  Monoid m(fixtures::edge());
  EXPECT_EQ(m.multiply(m.parse("s"), m.parse("t")), m.parse("s t"));
  EXPECT_EQ(m.multiply(m.identity(), m.parse("s t")), m.parse("s t"));
  EXPECT_EQ(m.multiply(m.parse("t s"), m.parse("t")), m.parse("s t s"));
  EXPECT_EQ(m.format(m.parse("t s t")), "s t s");
  EXPECT_EQ(m.format(m.identity()), "e");
}

TEST(Monoid, DivisibilityExamples) {
  Monoid m(fixtures::edge());
  auto sts = m.parse("s t s");
  EXPECT_TRUE(m.left_divides(m.parse("s"), sts));
  EXPECT_TRUE(m.left_divides(m.parse("t"), sts));
  EXPECT_FALSE(m.left_divides(m.parse("s s"), sts));
  EXPECT_EQ(as_words(m.left_divisors(sts)), words(m, {"e", "s", "t", "s t", "t s", "s t s"}));
  EXPECT_EQ(as_words(m.left_divisors(m.parse("s"))), words(m, {"e", "s"}));
  EXPECT_EQ(as_words(m.left_divisors(m.identity())), words(m, {"e"}));
}

TEST(Monoid, GcdLcmExamples) {
  Monoid m(fixtures::example_six_four());
  EXPECT_EQ(m.gcd_left(m.parse("s t"), m.parse("t s")), m.identity());
  EXPECT_EQ(m.gcd_left(m.parse("s t s"), m.parse("s t")), m.parse("s t"));
  EXPECT_EQ(m.gcd_left(std::vector<Element>{m.parse("s t")}), m.parse("s t"));
  auto l = m.lcm_left(m.parse("s"), m.parse("t"), 4);
  ASSERT_TRUE(l);
  EXPECT_EQ(*l.value, m.parse("s t s"));
  auto su = m.lcm_left(m.parse("s"), m.parse("u"), 4);
  ASSERT_TRUE(su);
  EXPECT_EQ(*su.value, m.parse("s u"));

  Monoid d(fixtures::discrete());
  auto none = d.lcm_left(d.parse("s"), d.parse("t"), 10);
  EXPECT_EQ(none.status, LcmStatus::none);
  EXPECT_FALSE(none.value.has_value());
}

TEST(Monoid, GarsideExamples) {
  Monoid m(fixtures::example_six_four());
  EXPECT_EQ(m.garside_element(m.graph().parse_subset("{s,t}")), m.parse("s t s"));
  EXPECT_EQ(m.garside_element(m.graph().parse_subset("{s}")), m.parse("s"));
  EXPECT_EQ(m.garside_element(m.graph().parse_subset("{s,u}")), m.parse("s u"));
  Monoid tri(fixtures::triangle());
  EXPECT_THROW(tri.garside_element(tri.graph().all()), DomainError);
}

TEST(Monoid, GarsideLengthMatchesLabel) {
  for (int lab : {2, 3, 4, 5, 6}) {
    Monoid m(fixtures::edge(lab));
    auto d = m.garside_element(m.graph().all());
    EXPECT_EQ(d.length(), static_cast<std::size_t>(lab));
    auto l = m.lcm_left(m.parse("s"), m.parse("t"), 10);
    auto r = m.lcm_right(m.parse("s"), m.parse("t"), 10);
    ASSERT_TRUE(l);
    ASSERT_TRUE(r);
    EXPECT_EQ(*l.value, d);
    EXPECT_EQ(*r.value, d);
  }
}

TEST(Monoid, MinimalElements) {
  Monoid e(fixtures::edge());
  EXPECT_EQ(as_words(e.minimal_elements()), words(e, {"s", "t", "s t", "t s", "s t s"}));
  Monoid d(fixtures::discrete());
  EXPECT_EQ(as_words(d.minimal_elements()), words(d, {"s", "t"}));
  Monoid x(fixtures::example_six_four());
  EXPECT_EQ(x.minimal_elements().size(), 11u);
  // figure1 fixture: |S_4| - 1 from {r,s,t}, 5 from {t,u}, minus the shared t.
  Monoid f(fixtures::figure_one());
  EXPECT_EQ(f.minimal_elements().size(), 23u + 5u - 1u);
}

TEST(Monoid, NormalFormExamples) {
  Monoid m(fixtures::edge());
  const GenSet all = m.graph().all();
  auto nf = [&](const char* w) {
    std::vector<Word> out;
    for (const auto& f : m.right_greedy_normal_form(m.parse(w), all)) out.push_back(f.word());
    return out;
  };
  EXPECT_EQ(nf("s t s"), (std::vector<Word>{m.parse_word("s t s")}));
  EXPECT_EQ(nf("s t s t"), (std::vector<Word>{m.parse_word("s"), m.parse_word("s t s")}));
  EXPECT_EQ(nf("s"), (std::vector<Word>{m.parse_word("s")}));
}

TEST(Monoid, TAlphaExamples) {
  Monoid m(fixtures::edge());
  const auto& g = m.graph();
  EXPECT_EQ(m.t_alpha(m.parse("s t")), g.parse_subset("{t}"));
  EXPECT_EQ(m.t_alpha(m.parse("s t s")), g.parse_subset("{s,t}"));
  EXPECT_EQ(m.t_alpha(m.identity()), GenSet{});
}

TEST(Monoid, ParseErrors) {
  Monoid m(fixtures::edge());
  EXPECT_THROW(m.parse("s q"), ArtinError);
  EXPECT_EQ(m.parse("e"), m.identity());
  EXPECT_EQ(m.parse(""), m.identity());
}

TEST(Monoid, ElementsFromDifferentMonoidsRejected) {
  Monoid a(fixtures::edge());
  Monoid b(fixtures::edge());
  EXPECT_THROW(a.multiply(a.parse("s"), b.parse("s")), ArtinError);
}

TEST(Monoid, ClassCapEnforced) {
  MonoidOptions opt;
  opt.class_length_cap = 4;
  Monoid m(fixtures::edge(), opt);
  EXPECT_THROW(m.equivalence_class(m.parse_word("s t s t s")), CapExceeded);
}

// Oracle comparisons over every word up to a fixed length.

class MonoidOracle : public ::testing::TestWithParam<std::string> {};

TEST_P(MonoidOracle, CanonicalMatchesClassClosure) {
  const auto g = fixtures::by_name(GetParam());
  Monoid m(g);
  const std::size_t max_len = g.rank() > 3 ? 4 : 5;
  for (std::size_t n = 0; n <= max_len; ++n)
    for (const auto& w : oracle::all_words(g.all(), n)) {
      ASSERT_EQ(m.canonical(w), oracle::class_min(g, w)) << m.format_word(w);
      ASSERT_EQ(m.equivalence_class(w), oracle::word_class(g, w));
    }
}

TEST_P(MonoidOracle, DivisorsMatchPrefixes) {
  const auto g = fixtures::by_name(GetParam());
  Monoid m(g);
  for (std::size_t n = 0; n <= 4; ++n)
    for (const auto& w : oracle::elements_of_length(g, n, g.all())) {
      auto a = m.element(w);
      EXPECT_EQ(as_words(m.left_divisors(a)), oracle::left_divisors(g, w)) << m.format(a);
      EXPECT_EQ(as_words(m.right_divisors(a)), oracle::right_divisors(g, w)) << m.format(a);
    }
}

TEST_P(MonoidOracle, QuotientsAndDivisionAgree) {
  const auto g = fixtures::by_name(GetParam());
  Monoid m(g);
  std::vector<Word> small;
  for (std::size_t n = 0; n <= 3; ++n)
    for (const auto& w : oracle::elements_of_length(g, n, g.all())) small.push_back(w);
  for (const auto& u : small)
    for (const auto& w : small) {
      auto a = m.element(u), b = m.element(w);
      const bool divides = oracle::left_divides(g, u, w);
      EXPECT_EQ(m.left_divides(a, b), divides) << m.format(a) << " | " << m.format(b);
      auto q = m.left_quotient(a, b);
      EXPECT_EQ(q.has_value(), divides);
      if (q) { EXPECT_TRUE(oracle::same_element(g, concat(u, q->word()), w)); }
      auto rq = m.right_quotient(b, a);
      if (rq) { EXPECT_TRUE(oracle::same_element(g, concat(rq->word(), u), w)); }
    }
}

TEST_P(MonoidOracle, GcdIsGreatestCommonDivisor) {
  const auto g = fixtures::by_name(GetParam());
  Monoid m(g);
  std::vector<Word> small;
  for (std::size_t n = 0; n <= 3; ++n)
    for (const auto& w : oracle::elements_of_length(g, n, g.all())) small.push_back(w);
  for (const auto& u : small)
    for (const auto& w : small) {
      auto common = oracle::left_divisors(g, u);
      auto dw = oracle::left_divisors(g, w);
      std::set<Word> both;
      std::set_intersection(common.begin(), common.end(), dw.begin(), dw.end(), std::inserter(both, both.end()));
      std::size_t best = 0;
      Word top;
      for (const auto& c : both)
        if (c.size() >= best) best = c.size(), top = c;
      EXPECT_EQ(m.gcd_left(m.element(u), m.element(w)).word(), top);
    }
}

TEST_P(MonoidOracle, LcmMatchesSearch) {
  const auto g = fixtures::by_name(GetParam());
  Monoid m(g);
  std::vector<Word> small;
  for (std::size_t n = 1; n <= 2; ++n)
    for (const auto& w : oracle::elements_of_length(g, n, g.all())) small.push_back(w);
  const std::size_t bound = 6;
  for (const auto& u : small)
    for (const auto& w : small) {
      auto got = m.lcm_left(m.element(u), m.element(w), bound);
      auto want = oracle::lcm_left(g, {u, w}, bound);
      if (want) {
        ASSERT_TRUE(got) << m.format_word(u) << " v " << m.format_word(w);
        EXPECT_EQ(got.value->word(), *want);
      } else {
        EXPECT_FALSE(got) << m.format_word(u) << " v " << m.format_word(w);
      }
    }
}

INSTANTIATE_TEST_SUITE_P(Fixtures, MonoidOracle,
                         ::testing::Values("edge", "figure1", "triangle", "example64", "discrete"));

// Algebraic laws on random elements.

TEST(MonoidLaws, RandomElements) {
  std::mt19937 rng(20261015);
  for (const auto& [name, g] : fixtures::all()) {
    Monoid m(g);
    for (int it = 0; it < 150; ++it) {
      auto a = m.element(oracle::random_word(rng, g.all(), rng() % 6));
      auto b = m.element(oracle::random_word(rng, g.all(), rng() % 6));
      auto c = m.element(oracle::random_word(rng, g.all(), rng() % 4));
      // associativity and cancellativity
      EXPECT_EQ(m.multiply(m.multiply(a, b), c), m.multiply(a, m.multiply(b, c))) << name;
      EXPECT_EQ(m.left_quotient(a, m.multiply(a, b)), b) << name;
      EXPECT_EQ(m.right_quotient(m.multiply(a, b), b), a) << name;
      EXPECT_EQ(m.length(m.multiply(a, b)), a.length() + b.length());
      // gcd divides both, and is left-divisible by any common divisor
      auto d = m.gcd_left(a, b);
      EXPECT_TRUE(m.left_divides(d, a));
      EXPECT_TRUE(m.left_divides(d, b));
      EXPECT_EQ(m.gcd_left(m.multiply(c, a), m.multiply(c, b)), m.multiply(c, d)) << name;
      auto dr = m.gcd_right(a, b);
      EXPECT_TRUE(m.right_divides(dr, a));
      EXPECT_TRUE(m.right_divides(dr, b));
      // lcm is a common multiple dividing c a c b products when it exists
      auto l = m.lcm_left(a, b, 16);
      if (l) {
        EXPECT_TRUE(m.left_divides(a, *l.value));
        EXPECT_TRUE(m.left_divides(b, *l.value));
      }
      // reversal is an anti-automorphism
      EXPECT_EQ(m.reverse(m.multiply(a, b)), m.multiply(m.reverse(b), m.reverse(a)));
    }
  }
}

TEST(MonoidLaws, NormalFormFactorsAreMinimalAndMaximal) {
  std::mt19937 rng(7);
  for (const char* name : {"edge", "figure1", "example64"}) {
    Monoid m(fixtures::by_name(name));
    const auto mins = m.minimal_elements();
    for (int it = 0; it < 60; ++it) {
      auto a = m.element(oracle::random_word(rng, m.graph().all(), rng() % 8));
      if (!is_finite_type(m.graph(), m.support(a))) continue;
      const GenSet t = m.support(a);
      auto nf = m.right_greedy_normal_form(a, t);
      EXPECT_EQ(m.multiply(nf), a);
      for (const auto& f : nf) EXPECT_NE(std::find(mins.begin(), mins.end(), f), mins.end()) << m.format(f);
      // the last factor is the largest right divisor of a below Delta_T
      if (!nf.empty()) { EXPECT_EQ(nf.back(), m.gcd_right(a, m.garside_element(t))); }
    }
  }
}

TEST(MonoidLaws, TAlphaIsFiniteTypeAndMatchesLastLetters) {
  for (const char* name : {"edge", "figure1", "triangle", "example64"}) {
    Monoid m(fixtures::by_name(name));
    const auto& g = m.graph();
    for (const auto& level : m.elements_by_length(4))
      for (const auto& a : level) {
        GenSet want;
        for (const auto& w : oracle::word_class(g, a.word()))
          if (!w.empty()) want = want.with(w.back());
        EXPECT_EQ(m.t_alpha(a), want);
        EXPECT_TRUE(is_finite_type(g, want));
      }
  }
}

TEST(MonoidLaws, ElementsByLengthCountsMatchOracle) {
  for (const auto& [name, g] : fixtures::all()) {
    Monoid m(g);
    auto levels = m.elements_by_length(4);
    for (std::size_t n = 0; n <= 4; ++n) {
      std::set<Word> got;
      for (const auto& a : levels[n]) got.insert(a.word());
      auto want = oracle::elements_of_length(g, n, g.all());
      EXPECT_EQ(got, std::set<Word>(want.begin(), want.end())) << name << " " << n;
    }
  }
}
