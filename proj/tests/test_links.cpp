#include <gtest/gtest.h>

#include "artin/fixtures.hpp"
#include "artin/links.hpp"
#include "oracles.hpp"

using namespace artin;

namespace {

using Labels = std::vector<std::string>;

std::set<std::string> as_set(const Labels& xs) { return {xs.begin(), xs.end()}; }

std::set<std::set<std::string>> facets(const SimplicialComplex& k) {
  std::set<std::set<std::string>> out;
  for (const auto& s : k.maximal_simplices()) out.insert(as_set(s));
  return out;
}

oracle::Burau burau(const GroupElement& g) {
  return oracle::burau_word(g.neg.word(), -1) * oracle::burau_word(g.pos.word(), 1);
}

// x in A_{T'} for T' in {{}, {s}, {t}} of the m=3 edge graph, by matching
// the Burau image against short powers of the generator.
bool in_special(const oracle::Burau& x, GenSet sub) {
  if (sub.empty()) return x == oracle::Burau::identity();
  const Gen g = sub.min();
  for (int j = -8; j <= 8; ++j) {
    oracle::Burau p = oracle::Burau::identity();
    for (int i = 0; i < std::abs(j); ++i) p = p * oracle::burau_letter(g, j > 0 ? 1 : -1);
    if (p == x) return true;
  }
  return false;
}

}  // namespace

TEST(Simplicial, FlagExamples) {
  SimplicialComplex hollow;
  hollow.add_simplex({"a", "b"});
  hollow.add_simplex({"b", "c"});
  hollow.add_simplex({"a", "c"});
  EXPECT_FALSE(hollow.is_flag());
  SimplicialComplex full;
  full.add_simplex({"a", "b", "c"});
  EXPECT_TRUE(full.is_flag());
  EXPECT_EQ(full.simplex_count(), 7u);
  EXPECT_EQ(full.dimension(), 2);
  SimplicialComplex empty;
  EXPECT_TRUE(empty.is_flag());
  EXPECT_EQ(empty.dimension(), -1);
}

TEST(Simplicial, FullSubcomplexExamples) {
  SimplicialComplex l;
  l.add_simplex({"a", "b", "c"});
  EXPECT_TRUE(is_full_subcomplex(l, l));
  SimplicialComplex k;
  k.add_simplex({"a", "b"});
  k.add_simplex({"b", "c"});
  k.add_simplex({"a", "c"});
  EXPECT_FALSE(is_full_subcomplex(k, l));
  SimplicialComplex stray;
  stray.add_vertex("z");
  EXPECT_THROW(is_full_subcomplex(stray, l), DomainError);
}

TEST(Simplicial, CliquesOfRandomGraphsSpanSimplicesOfTheirFlagCompletion) {
  std::mt19937 rng(3);
  for (int it = 0; it < 40; ++it) {
    const int n = 6;
    std::vector<std::pair<int, int>> edges;
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        if (rng() % 2) edges.emplace_back(a, b);
    SimplicialComplex k;
    for (int a = 0; a < n; ++a) k.add_vertex(std::to_string(a));
    for (auto [a, b] : edges) k.add_simplex({std::to_string(a), std::to_string(b)});
    // brute-force flag completion: every vertex subset that is pairwise joined
    SimplicialComplex flag = k;
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
      Labels s;
      bool clique = true;
      for (int a = 0; a < n && clique; ++a)
        for (int b = a + 1; b < n && clique; ++b)
          if ((mask >> a & 1) && (mask >> b & 1) &&
              std::find(edges.begin(), edges.end(), std::make_pair(a, b)) == edges.end())
            clique = false;
      if (!clique) continue;
      for (int a = 0; a < n; ++a)
        if (mask >> a & 1) s.push_back(std::to_string(a));
      flag.add_simplex(s);
    }
    EXPECT_TRUE(flag.is_flag());
    bool has_triangle = flag.dimension() >= 2;
    EXPECT_EQ(k.is_flag(), !has_triangle);
  }
}

TEST(Links, FundamentalDomainFigureOne) {
  Monoid m(fixtures::figure_one());
  auto f = fundamental_domain(m);
  auto lk = link(f, coset_of(m, m.identity(), GenSet{}));
  EXPECT_EQ(facets(lk), (std::set<std::set<std::string>>{{"[e]_{r}", "[e]_{s}", "[e]_{t}"}, {"[e]_{t}", "[e]_{u}"}}));
  auto sp = split_link(f, coset_of(m, m.identity(), GenSet{}));
  EXPECT_EQ(sp.downward.vertex_count(), 0u);
  EXPECT_TRUE(sp.upward == sp.whole);

  auto st = split_link(f, coset_of(m, m.identity(), m.graph().parse_subset("{t}")));
  EXPECT_EQ(as_set(st.downward.vertices()), (std::set<std::string>{"[e]_{}"}));
  EXPECT_EQ(as_set(st.upward.vertices()), (std::set<std::string>{"[e]_{r,t}", "[e]_{s,t}", "[e]_{t,u}"}));
  EXPECT_TRUE(link_is_join(st));
}

TEST(Links, SquareCorner) {
  Monoid m(fixtures::edge());
  auto f = fundamental_domain(m);
  auto lk = link(f, coset_of(m, m.identity(), m.graph().all()));
  EXPECT_EQ(lk.vertex_count(), 2u);
  EXPECT_EQ(facets(lk), (std::set<std::set<std::string>>{{"[e]_{s}", "[e]_{t}"}}));
  EXPECT_TRUE(lk.is_flag());
}

TEST(Links, TopVertexOfStageOne) {
  Monoid m(fixtures::edge());
  auto d1 = build_d_k(m, 1);
  auto sp = split_link(d1, coset_of(m, m.identity(), m.graph().all()));
  EXPECT_EQ(sp.upward.vertex_count(), 0u);
  EXPECT_EQ(as_set(sp.downward.vertices()), (std::set<std::string>{"[e]_{s}", "[e]_{t}", "[s]_{t}", "[t]_{s}"}));
  EXPECT_TRUE(sp.downward.is_flag());
}

TEST(Links, EveryLinkIsAJoin) {
  for (const auto& [name, g] : fixtures::all()) {
    Monoid m(g);
    auto x = build_d_k(m, 2);
    for (const auto& v : x.vertices()) EXPECT_TRUE(link_is_join(split_link(x, v))) << name << " " << format_coset(m, v);
  }
}

TEST(Links, GromovCheckExamples) {
  Monoid f(fixtures::figure_one());
  for (const auto& e : gromov_local_check(build_d_k(f, 2))) EXPECT_TRUE(e.missing.empty());
  Monoid t(fixtures::triangle());
  std::size_t bad = 0;
  for (const auto& e : gromov_local_check(build_d_k(t, 1))) {
    if (e.missing.empty()) continue;
    ++bad;
    EXPECT_TRUE(e.vertex.subset.empty()) << format_coset(t, e.vertex);
  }
  EXPECT_GT(bad, 0u);
  Monoid s(fixtures::edge());
  for (const auto& e : gromov_local_check(fundamental_domain(s))) EXPECT_TRUE(e.missing.empty());
}

TEST(GroupLinks, SingletonLinkIsDiscrete) {
  Monoid m(fixtures::edge());
  auto lk = group_downward_link(m, m.graph().parse_subset("{s}"), 2);
  EXPECT_EQ(lk.dimension(), 0);
  EXPECT_EQ(lk.vertex_count(), 5u);  // s^-2 .. s^2
}

TEST(GroupLinks, DeltaConjugatesSToT) {
  Monoid m(fixtures::edge());
  FiniteTypeGroup g(m);
  auto x = g.multiply(g.multiply(g.negative(g.delta()), g.parse("s")), g.positive(g.delta()));
  EXPECT_EQ(x, g.parse("t"));
  EXPECT_TRUE(g.in_special_subgroup(x, m.graph().parse_subset("{t}")));
}

// Coset names identify cosets exactly and edges are exactly the meeting
// pairs, checked through the faithful Burau image.
TEST(GroupLinks, MembershipMatchesBurauSearch) {
  Monoid m(fixtures::edge());
  const GenSet t = m.graph().all();
  FiniteTypeGroup g(m, t);
  const std::size_t depth = 2;
  GroupCosetNamer namer(g, depth);
  auto lk = group_downward_link(m, t, depth);
  const auto ball = fraction_ball(g, depth);
  const GenSet s_only = m.graph().parse_subset("{s}"), t_only = m.graph().parse_subset("{t}");
  std::vector<oracle::Burau> image;
  for (const auto& h : ball) image.push_back(burau(h));
  auto inverse = [](const GroupElement& h) { return oracle::burau_word(h.pos.word(), -1) * oracle::burau_word(h.neg.word(), 1); };
  for (std::size_t i = 0; i < ball.size(); ++i)
    for (std::size_t j = 0; j < ball.size(); ++j)
      for (GenSet sub : {s_only, t_only}) {
        const bool same = in_special(inverse(ball[i]) * image[j], sub);
        EXPECT_EQ(namer.name(ball[i], sub) == namer.name(ball[j], sub), same);
      }
  for (std::size_t i = 0; i < ball.size(); ++i)
    for (std::size_t j = 0; j < ball.size(); ++j) {
      bool meet = false;
      for (std::size_t k = 0; k < ball.size() && !meet; ++k)
        meet = in_special(inverse(ball[i]) * image[k], s_only) && in_special(inverse(ball[j]) * image[k], t_only);
      EXPECT_EQ(lk.has_simplex({namer.name(ball[i], s_only), namer.name(ball[j], t_only)}), meet)
          << g.format(ball[i]) << " / " << g.format(ball[j]);
    }
}

TEST(GroupLinks, Lemma57Witness) {
  Monoid m(fixtures::edge());
  FiniteTypeGroup g(m);
  const auto& gr = m.graph();
  auto c1 = coset_of(m, m.identity(), gr.parse_subset("{s}"));
  auto c2 = coset_of(m, m.identity(), gr.parse_subset("{t}"));
  std::string why;
  EXPECT_TRUE(verify_lemma_5_7_witness(m, g, c1, c2, g.identity(), why)) << why;
  auto c3 = coset_of(m, m.parse("s t"), gr.parse_subset("{s}"));
  auto c4 = coset_of(m, m.parse("s"), gr.parse_subset("{t}"));
  EXPECT_TRUE(verify_lemma_5_7_witness(m, g, c3, c4, g.parse("s t"), why)) << why;
  EXPECT_FALSE(verify_lemma_5_7_witness(m, g, c1, c2, g.parse("s"), why));
}

TEST(Theorem51, Examples) {
  Monoid e(fixtures::edge());
  EXPECT_TRUE(verify_theorem_5_1(e, 2, 2).ok());
  Monoid f(fixtures::figure_one());
  EXPECT_TRUE(verify_theorem_5_1(f, 1, 1).ok());
  Monoid t(fixtures::triangle());
  auto r = verify_theorem_5_1(t, 1, 1);
  EXPECT_TRUE(r.ok());
  for (const auto& entry : r.entries) EXPECT_TRUE(entry.downward_flag_truncated);
}

TEST(Theorem51, DepthBelowStageIsRejected) {
  Monoid f(fixtures::figure_one());
  EXPECT_THROW(verify_theorem_5_1(f, 2, 1), DomainError);
  EXPECT_TRUE(verify_theorem_5_1(f, 2, 2).ok());
}
