#include <gtest/gtest.h>

#include "artin/deligne.hpp"
#include "artin/fixtures.hpp"

using namespace artin;

namespace {

std::set<std::string> vertex_names(const Monoid& m, const CubeComplex& x) {
  std::set<std::string> out;
  for (const auto& v : x.vertices()) out.insert(format_coset(m, v));
  return out;
}

std::set<Coset> vertex_set(const CubeComplex& x) {
  auto v = x.vertices();
  return {v.begin(), v.end()};
}

}  // namespace

TEST(Deligne, FundamentalDomainEdge) {
  Monoid m(fixtures::edge());
  auto f = fundamental_domain(m);
  EXPECT_EQ(vertex_names(m, f), (std::set<std::string>{"[e]_{}", "[e]_{s}", "[e]_{t}", "[e]_{s,t}"}));
  EXPECT_EQ(f.f_vector(), (std::vector<std::size_t>{4, 4, 1}));
}

TEST(Deligne, FundamentalDomainFigureOne) {
  Monoid m(fixtures::figure_one());
  auto f = fundamental_domain(m);
  EXPECT_EQ(f.dimension(), 3u);
  EXPECT_EQ(f.cubes_of_dim(3).size(), 1u);
  // maximal squares: the {t,u} square is not a face of the 3-cube
  std::size_t free_squares = 0;
  for (const auto& sq : f.cubes_of_dim(2))
    if (!sq.top.subset_of(m.graph().parse_subset("{r,s,t}"))) ++free_squares;
  EXPECT_EQ(free_squares, 1u);
  EXPECT_EQ(f.vertices().size(), m.spherical().size());
}

TEST(Deligne, FundamentalDomainDiscreteIsWedge) {
  Monoid m(fixtures::discrete());
  auto f = fundamental_domain(m);
  EXPECT_EQ(f.f_vector(), (std::vector<std::size_t>{3, 2}));
  for (const auto& e : f.cubes_of_dim(1)) EXPECT_EQ(e.base.subset, GenSet{});
}

TEST(Deligne, TranslatesShareExpectedVertices) {
  Monoid m(fixtures::edge());
  auto f = vertex_set(fundamental_domain(m));
  auto shared = [&](const char* b) {
    std::set<std::string> out;
    for (const auto& v : vertex_set(translate_domain(m, m.parse(b))))
      if (f.count(v)) out.insert(format_coset(m, v));
    return out;
  };
  EXPECT_EQ(shared("e").size(), 4u);
  EXPECT_EQ(shared("s"), (std::set<std::string>{"[e]_{s}", "[e]_{s,t}"}));
  EXPECT_EQ(shared("s t"), (std::set<std::string>{"[e]_{s,t}"}));
}

TEST(Deligne, BuildStagesOnEdge) {
  Monoid m(fixtures::edge());
  auto d0 = build_d_k(m, 0);
  EXPECT_EQ(d0.f_vector(), (std::vector<std::size_t>{4, 4, 1}));
  auto d1 = build_d_k(m, 1);
  EXPECT_EQ(vertex_names(m, d1), (std::set<std::string>{"[e]_{}", "[e]_{s}", "[e]_{t}", "[e]_{s,t}", "[s]_{}",
                                                        "[s]_{t}", "[t]_{}", "[t]_{s}"}));
  for (const auto& [name, g] : fixtures::all()) {
    Monoid mm(g);
    EXPECT_EQ(build_d_k(mm, 0).vertices().size(), mm.spherical().size()) << name;
  }
}

TEST(Deligne, StageFiltration) {
  Monoid m(fixtures::figure_one());
  auto d2 = build_d_k(m, 2);
  auto d1 = build_d_k(m, 1);
  auto s1 = d2.stage(1);
  EXPECT_EQ(s1.cubes().size(), d1.cubes().size());
  for (const auto& [c, b] : d1.cubes()) EXPECT_TRUE(s1.contains(c));
}

TEST(Deligne, ChainComplexSquaresToZero) {
  for (const auto& [name, g] : fixtures::all()) {
    Monoid m(g);
    auto cc = build_d_k(m, 2).chain_complex();
    for (std::size_t d = 2; d < cc.cells.size(); ++d) {
      const auto& a = cc.boundary[d - 1];
      const auto& b = cc.boundary[d];
      for (std::size_t j = 0; j < b.cols(); ++j) {
        std::map<std::size_t, std::int64_t> acc;
        for (auto [k, v] : b.columns[j])
          for (auto [i, w] : a.columns[k]) acc[i] += v * w;
        for (auto [i, s] : acc) EXPECT_EQ(s, 0) << name << " dim " << d;
      }
    }
  }
}

TEST(Deligne, HomologyExamples) {
  Monoid m(fixtures::edge());
  auto sq = fundamental_domain(m);
  EXPECT_TRUE(homology_vanishes(homology(sq)));
  CubeComplex hollow(m);
  for (const auto& e : sq.cubes_of_dim(1)) hollow.add_cube(e);
  auto h = homology(hollow);
  ASSERT_EQ(h.size(), 2u);
  EXPECT_TRUE(h[0].trivial());
  EXPECT_EQ(h[1].rank, 1u);
}

TEST(Deligne, StagesAreAcyclic) {
  for (const auto& [name, g] : fixtures::all())
    for (std::size_t k = 0; k <= 2; ++k) {
      Monoid m(g);
      EXPECT_TRUE(homology_vanishes(homology(build_d_k(m, k)))) << name << " k=" << k;
    }
}

TEST(Deligne, DirectEnumerationMatchesBuild) {
  for (const auto& [name, g] : fixtures::all()) {
    Monoid m(g);
    for (std::size_t k = 0; k <= 2; ++k) {
      auto e = enumerate_cosets(m, k);
      EXPECT_EQ(std::set<Coset>(e.begin(), e.end()), vertex_set(build_d_k(m, k))) << name << " k=" << k;
    }
  }
}

TEST(Deligne, ChamberBoundaryExamples) {
  Monoid m(fixtures::edge());
  const auto& g = m.graph();
  auto s = chamber_boundary(m, m.parse("s"));
  for (const auto& c : s) EXPECT_TRUE(c.base.subset.contains(g.index("s")));
  auto st = chamber_boundary(m, m.parse("s t"));
  for (const auto& c : st) EXPECT_TRUE(c.base.subset.contains(g.index("t")));
  auto sts = chamber_boundary(m, m.parse("s t s"));
  for (const auto& c : sts) EXPECT_FALSE(c.base.subset.empty());
  // every non-empty coset vertex of the chamber appears
  std::set<Coset> verts;
  for (const auto& c : sts)
    if (c.is_vertex()) verts.insert(c.base);
  EXPECT_EQ(verts.size(), 3u);
  EXPECT_THROW(chamber_boundary(m, m.identity()), DomainError);
}

TEST(Deligne, RetractionCertificateExamples) {
  Monoid m(fixtures::edge());
  auto s = retraction_certificate(m, m.parse("s"));
  EXPECT_TRUE(validate_certificate(m, s).ok);
  EXPECT_EQ(format_coset(m, s.apex), "[e]_{s}");
  EXPECT_EQ(s.steps.size(), 1u);  // Y is the edge [e]_{s} - [e]_{s,t}
  for (const auto& st : s.steps) EXPECT_EQ(st.phase, 1);

  auto st = retraction_certificate(m, m.parse("s t"));
  EXPECT_TRUE(validate_certificate(m, st).ok);
  EXPECT_EQ(format_coset(m, st.apex), "[s]_{t}");

  auto sts = retraction_certificate(m, m.parse("s t s"));
  EXPECT_TRUE(validate_certificate(m, sts).ok);
  EXPECT_EQ(format_coset(m, sts.apex), "[e]_{s,t}");
  for (const auto& step : sts.steps) EXPECT_EQ(step.phase, 2);
}

TEST(Deligne, TamperedCertificateIsRejected) {
  Monoid m(fixtures::figure_one());
  auto cert = retraction_certificate(m, m.parse("r s t"));
  ASSERT_TRUE(validate_certificate(m, cert).ok);
  ASSERT_GE(cert.steps.size(), 2u);
  auto swapped = cert;
  std::reverse(swapped.steps.begin(), swapped.steps.end());
  EXPECT_FALSE(validate_certificate(m, swapped).ok);
  auto truncated = cert;
  truncated.steps.pop_back();
  EXPECT_FALSE(validate_certificate(m, truncated).ok);
}

TEST(Deligne, Prop42Examples) {
  Monoid e(fixtures::edge());
  auto r1 = verify_prop_4_2(e, 1);
  EXPECT_TRUE(r1.ok());
  EXPECT_EQ(r1.entries.size(), 2u);
  Monoid f(fixtures::figure_one());
  EXPECT_TRUE(verify_prop_4_2(f, 2).ok());
  EXPECT_THROW(verify_prop_4_2(e, 0), DomainError);
}

TEST(Deligne, StarRequiresVertex) {
  Monoid m(fixtures::edge());
  auto f = fundamental_domain(m);
  EXPECT_EQ(f.star(coset_of(m, m.identity(), GenSet{})).size(), 4u);  // vertex, two edges, square
  EXPECT_THROW(f.star(coset_of(m, m.parse("s"), GenSet{})), DomainError);
}
