#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "artin/cosets.hpp"
#include "artin/homology.hpp"
#include "artin/monoid.hpp"

namespace artin {

/// The interval [base, [base.rep]_top]; a cube of dimension |top \ base.subset|.
struct Cube {
  Coset base;
  GenSet top;

  std::size_t dim() const { return (top - base.subset).size(); }
  bool is_vertex() const { return top == base.subset; }

  friend bool operator==(const Cube&, const Cube&) = default;
  friend auto operator<=>(const Cube& a, const Cube& b) {
    if (auto c = a.dim() <=> b.dim(); c != 0) return c;
    if (auto c = a.base <=> b.base; c != 0) return c;
    return a.top <=> b.top;
  }
};

inline Cube vertex_cube(const Coset& v) { return {v, v.subset}; }

/// Vertices of a cube: [rep]_T for base.subset <= T <= top.
inline std::vector<Coset> cube_vertices(const Monoid& m, const Cube& c) {
  std::vector<Coset> out;
  const auto free = (c.top - c.base.subset).members();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << free.size()); ++mask) {
    GenSet t = c.base.subset;
    for (std::size_t i = 0; i < free.size(); ++i)
      if (mask >> i & 1) t = t.with(free[i]);
    out.push_back(coset_of(m, c.base.rep, t));
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Codimension-one faces with their boundary signs. Axes are the generators
/// of top \ base.subset in generator order; the face x_i = 1 enlarges the
/// base subset, x_i = 0 shrinks the top.
struct SignedFace {
  Cube face;
  int sign;
};

inline std::vector<SignedFace> cube_boundary(const Monoid& m, const Cube& c) {
  std::vector<SignedFace> out;
  const auto axes = (c.top - c.base.subset).members();
  for (std::size_t i = 0; i < axes.size(); ++i) {
    const int sign = (i % 2 == 0) ? 1 : -1;
    out.push_back({Cube{coset_of(m, c.base.rep, c.base.subset.with(axes[i])), c.top}, sign});
    out.push_back({Cube{c.base, c.top.without(axes[i])}, -sign});
  }
  return out;
}

/// Every face (including c itself), each as a Cube key.
inline std::vector<Cube> cube_faces(const Monoid& m, const Cube& c) {
  std::vector<Cube> out;
  const auto free = (c.top - c.base.subset).members();
  const std::size_t n = free.size();
  // each axis: 0 (fixed low), 1 (fixed high), 2 (free)
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= 3;
  for (std::size_t code = 0; code < total; ++code) {
    GenSet lo = c.base.subset, hi = c.base.subset;
    std::size_t x = code;
    for (std::size_t i = 0; i < n; ++i, x /= 3) {
      if (x % 3 == 1) lo = lo.with(free[i]);
      if (x % 3 >= 1) hi = hi.with(free[i]);
    }
    out.push_back({coset_of(m, c.base.rep, lo), hi});
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Finite cube complex on monoid cosets. Each cube remembers the first
/// stage k of the D_k filtration that contains it.
class CubeComplex {
 public:
  explicit CubeComplex(const Monoid& m) : monoid_(&m) {}

  const Monoid& monoid() const { return *monoid_; }
  const std::map<Cube, std::size_t>& cubes() const { return cubes_; }
  std::size_t size() const { return cubes_.size(); }

  bool contains(const Cube& c) const { return cubes_.count(c) != 0; }
  bool contains(const Coset& v) const { return contains(vertex_cube(v)); }

  /// Adds c and all its faces; existing cubes keep their birth stage.
  void add_cube(const Cube& c, std::size_t birth = 0) {
    if (contains(c)) return;
    for (const auto& f : cube_faces(*monoid_, c)) cubes_.emplace(f, birth);
    star_.clear();
  }

  /// The chamber alpha F_0: every [alpha]_{T1} <= T2 with T2 in S^f.
  void add_chamber(const Element& alpha, std::size_t birth = 0) {
    const auto& fam = monoid_->spherical();
    for (GenSet t2 : fam.members())
      for (GenSet t1 : fam.members())
        if (t1.subset_of(t2)) {
          Cube c{coset_of(*monoid_, alpha, t1), t2};
          cubes_.emplace(c, birth);
        }
    star_.clear();
  }

  std::vector<Coset> vertices() const {
    std::vector<Coset> out;
    for (auto& [c, b] : cubes_)
      if (c.is_vertex()) out.push_back(c.base);
    std::sort(out.begin(), out.end());
    return out;
  }

  std::vector<Cube> cubes_of_dim(std::size_t d) const {
    std::vector<Cube> out;
    for (auto& [c, b] : cubes_)
      if (c.dim() == d) out.push_back(c);
    return out;
  }

  std::size_t dimension() const {
    std::size_t d = 0;
    for (auto& [c, b] : cubes_) d = std::max(d, c.dim());
    return d;
  }

  /// Counts of cubes per dimension.
  std::vector<std::size_t> f_vector() const {
    std::vector<std::size_t> out(cubes_.empty() ? 0 : dimension() + 1, 0);
    for (auto& [c, b] : cubes_) ++out[c.dim()];
    return out;
  }

  /// Cubes having v as a vertex.
  const std::vector<Cube>& star(const Coset& v) const {
    if (star_.empty() && !cubes_.empty()) {
      for (auto& [c, b] : cubes_)
        for (const auto& w : cube_vertices(*monoid_, c)) star_[w].push_back(c);
    }
    auto it = star_.find(v);
    if (it == star_.end()) throw DomainError("vertex " + format_coset(*monoid_, v) + " is not in the complex");
    return it->second;
  }

  /// Subcomplex of cubes born at stage <= k.
  CubeComplex stage(std::size_t k) const {
    CubeComplex out(*monoid_);
    for (auto& [c, b] : cubes_)
      if (b <= k) out.cubes_.emplace(c, b);
    return out;
  }

  ChainComplex chain_complex() const {
    ChainComplex cc;
    const std::size_t top = cubes_.empty() ? 0 : dimension() + 1;
    std::vector<std::map<Cube, std::size_t>> index(top);
    for (auto& [c, b] : cubes_) {
      auto& idx = index[c.dim()];
      idx.emplace(c, idx.size());
    }
    cc.cells.resize(top);
    cc.boundary.resize(top);
    for (std::size_t d = 0; d < top; ++d) cc.cells[d] = index[d].size();
    for (std::size_t d = 1; d < top; ++d) {
      auto& mat = cc.boundary[d];
      mat.rows = index[d - 1].size();
      mat.columns.resize(index[d].size());
      for (auto& [c, col] : index[d])
        for (auto& [f, sign] : cube_boundary(*monoid_, c)) {
          auto it = index[d - 1].find(f);
          if (it == index[d - 1].end()) throw InvariantViolation("complex is not closed under faces");
          mat.add(it->second, col, sign);
        }
    }
    return cc;
  }

 private:
  const Monoid* monoid_;
  std::map<Cube, std::size_t> cubes_;
  mutable std::map<Coset, std::vector<Cube>> star_;
};

inline std::vector<HomologyGroup> homology(const CubeComplex& x) { return reduced_homology(x.chain_complex()); }

inline bool homology_vanishes(const std::vector<HomologyGroup>& h) {
  return std::all_of(h.begin(), h.end(), [](const HomologyGroup& g) { return g.trivial(); });
}

inline CubeComplex translate_domain(const Monoid& m, const Element& b) {
  CubeComplex x(m);
  x.add_chamber(b);
  return x;
}

inline CubeComplex fundamental_domain(const Monoid& m) { return translate_domain(m, m.identity()); }

/// D_k^+: the union of alpha F_0 over l(alpha) <= k.
inline CubeComplex build_d_k(const Monoid& m, std::size_t k) {
  CubeComplex x(m);
  const auto levels = m.elements_by_length(k);
  for (std::size_t len = 0; len <= k; ++len)
    for (const auto& a : levels[len]) x.add_chamber(a, len);
  return x;
}

/// Cosets [beta]_T, T in S^f, whose minimal representative has length <= k.
inline std::vector<Coset> enumerate_cosets(const Monoid& m, std::size_t k) {
  std::set<Coset> out;
  const auto levels = m.elements_by_length(k);
  for (GenSet t : m.spherical().members())
    for (const auto& level : levels)
      for (const auto& b : level)
        if (end_factor(m, b, t).is_identity()) out.insert({b, t});
  return {out.begin(), out.end()};
}

/// Y = alpha F_0 cap D_{k-1}^+ computed from T_alpha: the cubes
/// [alpha]_{R1} <= R2 with R1 meeting T_alpha.
inline std::vector<Cube> chamber_boundary(const Monoid& m, const Element& alpha) {
  if (alpha.is_identity()) throw DomainError("the identity chamber has no boundary in a previous stage");
  const GenSet ta = m.t_alpha(alpha);
  std::vector<Cube> out;
  const auto& fam = m.spherical();
  for (GenSet r2 : fam.members())
    for (GenSet r1 : fam.members())
      if (r1.subset_of(r2) && r1.intersects(ta)) out.push_back({coset_of(m, alpha, r1), r2});
  std::sort(out.begin(), out.end());
  return out;
}

struct CollapseStep {
  Cube face;
  Cube coface;
  int phase = 1;  // 1: Y onto Y_0, 2: Y_0 onto the apex
};

struct CollapseCertificate {
  Element alpha;
  GenSet t_alpha;
  std::vector<Cube> start;  // the complex Y
  std::vector<CollapseStep> steps;
  Coset apex;
};

struct CertificateCheck {
  bool ok = true;
  std::vector<std::string> errors;
};

/// Replays a certificate: each face must be a codimension-one face of its
/// coface, both present, and the coface the only remaining cube that has the
/// face on its boundary. The survivor must be the apex alone.
inline CertificateCheck validate_certificate(const Monoid& m, const CollapseCertificate& cert) {
  CertificateCheck out;
  std::set<Cube> alive(cert.start.begin(), cert.start.end());
  for (const auto& c : alive)
    for (const auto& f : cube_faces(m, c))
      if (!alive.count(f)) {
        out.ok = false;
        out.errors.push_back("start complex is not closed under faces");
        return out;
      }
  std::size_t n = 0;
  for (const auto& st : cert.steps) {
    ++n;
    const std::string where = "step " + std::to_string(n) + ": ";
    if (!alive.count(st.face) || !alive.count(st.coface)) {
      out.ok = false;
      out.errors.push_back(where + "face or coface already removed");
      continue;
    }
    bool is_facet = false;
    for (auto& [f, s] : cube_boundary(m, st.coface))
      if (f == st.face) is_facet = true;
    if (!is_facet) {
      out.ok = false;
      out.errors.push_back(where + "face is not a codimension-one face of the coface");
      continue;
    }
    std::size_t cofaces = 0;
    for (const auto& c : alive) {
      if (c.dim() != st.face.dim() + 1) continue;
      for (auto& [f, s] : cube_boundary(m, c))
        if (f == st.face) {
          ++cofaces;
          break;
        }
    }
    if (cofaces != 1) {
      out.ok = false;
      out.errors.push_back(where + "face is not free (" + std::to_string(cofaces) + " cofaces)");
      continue;
    }
    alive.erase(st.face);
    alive.erase(st.coface);
  }
  if (alive.size() != 1 || *alive.begin() != vertex_cube(cert.apex)) {
    out.ok = false;
    out.errors.push_back("collapse ends with " + std::to_string(alive.size()) + " cubes instead of the apex");
  }
  return out;
}

/// Collapses Y onto Y_0 = {[alpha]_R : R <= T_alpha} and Y_0 onto
/// [alpha]_{T_alpha}. Phase 1 pairs [R1, R2] (x not in R1) with its face
/// [R1 + x, R2], x the least generator of R2 \ T_alpha. Phase 2 reads each
/// cube of Y_0 as a 0/*/1 word over T_alpha and pairs 0 with * at the first
/// position that is not 1. Pairs are scheduled in any order that keeps the
/// face free; a matching that admits no schedule is reported as errors.
inline CollapseCertificate retraction_certificate(const Monoid& m, const Element& alpha) {
  CollapseCertificate cert;
  cert.alpha = alpha;
  cert.t_alpha = m.t_alpha(alpha);
  cert.start = chamber_boundary(m, alpha);
  cert.apex = coset_of(m, alpha, cert.t_alpha);
  const GenSet ta = cert.t_alpha;

  struct Pair {
    GenSet f1, f2, c1, c2;
    int phase;
  };
  std::vector<Pair> pairs;
  const auto& fam = m.spherical();
  for (GenSet r2 : fam.members())
    for (GenSet r1 : fam.members()) {
      if (!r1.subset_of(r2) || !r1.intersects(ta)) continue;
      if (!r2.subset_of(ta)) {
        const Gen x = (r2 - ta).min();
        if (!r1.contains(x)) pairs.push_back({r1.with(x), r2, r1, r2, 1});
      } else {
        const auto order = ta.members();
        for (Gen g : order) {
          if (r1.contains(g)) continue;
          if (r2.contains(g)) pairs.push_back({r1, r2.without(g), r1, r2, 2});
          break;
        }
      }
    }

  auto as_cube = [&](GenSet lo, GenSet hi) { return Cube{coset_of(m, alpha, lo), hi}; };
  std::set<Cube> alive(cert.start.begin(), cert.start.end());
  auto free_in = [&](const Cube& face, const Cube& coface) {
    if (!alive.count(face) || !alive.count(coface)) return false;
    for (const auto& c : alive) {
      if (c == coface || c.dim() != face.dim() + 1) continue;
      for (auto& [f, s] : cube_boundary(m, c))
        if (f == face) return false;
    }
    return true;
  };
  std::vector<bool> done(pairs.size(), false);
  for (int phase = 1; phase <= 2; ++phase) {
    for (bool progress = true; progress;) {
      progress = false;
      for (std::size_t i = 0; i < pairs.size(); ++i) {
        if (done[i] || pairs[i].phase != phase) continue;
        Cube face = as_cube(pairs[i].f1, pairs[i].f2);
        Cube coface = as_cube(pairs[i].c1, pairs[i].c2);
        if (!free_in(face, coface)) continue;
        alive.erase(face);
        alive.erase(coface);
        cert.steps.push_back({face, coface, phase});
        done[i] = true;
        progress = true;
      }
    }
    for (std::size_t i = 0; i < pairs.size(); ++i)
      if (!done[i] && pairs[i].phase == phase)
        throw InvariantViolation("collapse matching for " + m.format(alpha) + " admits no free-face schedule");
  }
  return cert;
}

struct Prop42Entry {
  Element alpha;
  bool nonempty = false;
  bool matches_literal = false;
  bool certificate_ok = false;
  bool chambers_ok = false;
  std::vector<std::string> errors;
  bool ok() const { return nonempty && matches_literal && certificate_ok && chambers_ok; }
};

struct Prop42Report {
  std::size_t k = 0;
  std::vector<Prop42Entry> entries;
  bool ok() const {
    return std::all_of(entries.begin(), entries.end(), [](const Prop42Entry& e) { return e.ok(); });
  }
};

/// For each alpha of length k: Y = alpha F_0 cap D_{k-1}^+ is nonempty,
/// agrees with the literal intersection, and collapses to a point; and two
/// distinct chambers of length k meet only inside D_{k-1}^+.
inline Prop42Report verify_prop_4_2(const Monoid& m, std::size_t k) {
  if (k == 0) throw DomainError("stage k must be at least 1");
  Prop42Report report;
  report.k = k;
  const CubeComplex prev = build_d_k(m, k - 1);
  const auto levels = m.elements_by_length(k);
  std::vector<std::set<Coset>> chamber_vertices;
  for (const auto& a : levels[k]) {
    Prop42Entry e;
    e.alpha = a;
    const CubeComplex chamber = translate_domain(m, a);
    const auto y = chamber_boundary(m, a);
    e.nonempty = !y.empty();
    std::vector<Cube> literal;
    for (auto& [c, b] : chamber.cubes())
      if (prev.contains(c)) literal.push_back(c);
    std::sort(literal.begin(), literal.end());
    e.matches_literal = literal == y;
    if (!e.matches_literal) e.errors.push_back("Y differs from the literal intersection");
    try {
      auto cert = retraction_certificate(m, a);
      auto check = validate_certificate(m, cert);
      e.certificate_ok = check.ok;
      e.errors.insert(e.errors.end(), check.errors.begin(), check.errors.end());
    } catch (const InvariantViolation& err) {
      e.errors.push_back(err.what());
    }
    std::set<Coset> verts;
    for (const auto& v : chamber.vertices()) verts.insert(v);
    chamber_vertices.push_back(std::move(verts));
    e.chambers_ok = true;
    report.entries.push_back(std::move(e));
  }
  for (std::size_t i = 0; i < chamber_vertices.size(); ++i)
    for (std::size_t j = i + 1; j < chamber_vertices.size(); ++j)
      for (const auto& v : chamber_vertices[i])
        if (chamber_vertices[j].count(v) && !prev.contains(v)) {
          for (std::size_t idx : {i, j}) {
            report.entries[idx].chambers_ok = false;
            report.entries[idx].errors.push_back("chambers of " + m.format(report.entries[i].alpha) + " and " +
                                                 m.format(report.entries[j].alpha) + " share " +
                                                 format_coset(m, v) + " outside the previous stage");
          }
        }
  return report;
}

}  // namespace artin
