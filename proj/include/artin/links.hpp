#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "artin/cosets.hpp"
#include "artin/deligne.hpp"
#include "artin/group.hpp"

namespace artin {

/// Abstract simplicial complex on string-labelled vertices, closed under
/// taking faces.
class SimplicialComplex {
 public:
  std::size_t add_vertex(const std::string& label) {
    auto [it, inserted] = index_.try_emplace(label, labels_.size());
    if (inserted) {
      labels_.push_back(label);
      simplices_.insert({it->second});
    }
    return it->second;
  }

  void add_simplex(const std::vector<std::string>& labels) {
    std::vector<std::size_t> idx;
    for (const auto& l : labels) idx.push_back(add_vertex(l));
    std::sort(idx.begin(), idx.end());
    idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
    const std::size_t n = idx.size();
    if (n > 20) throw CapExceeded("simplex with more than 20 vertices");
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
      std::vector<std::size_t> face;
      for (std::size_t i = 0; i < n; ++i)
        if (mask >> i & 1) face.push_back(idx[i]);
      simplices_.insert(std::move(face));
    }
  }

  bool has_vertex(const std::string& label) const { return index_.count(label) != 0; }

  bool has_simplex(const std::vector<std::string>& labels) const {
    std::vector<std::size_t> idx;
    for (const auto& l : labels) {
      auto it = index_.find(l);
      if (it == index_.end()) return false;
      idx.push_back(it->second);
    }
    std::sort(idx.begin(), idx.end());
    idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
    return simplices_.count(idx) != 0;
  }

  std::vector<std::string> vertices() const {
    std::vector<std::string> out = labels_;
    std::sort(out.begin(), out.end());
    return out;
  }

  std::size_t vertex_count() const { return labels_.size(); }
  std::size_t simplex_count() const { return simplices_.size(); }

  /// Simplices as sorted label lists, sorted by size then lexicographically.
  std::vector<std::vector<std::string>> simplices() const {
    std::vector<std::vector<std::string>> out;
    for (const auto& s : simplices_) out.push_back(to_labels(s));
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
      return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    return out;
  }

  std::vector<std::vector<std::string>> maximal_simplices() const {
    std::vector<std::vector<std::string>> out;
    for (const auto& s : simplices_) {
      bool maximal = true;
      for (std::size_t v = 0; v < labels_.size() && maximal; ++v) {
        if (std::binary_search(s.begin(), s.end(), v)) continue;
        auto bigger = s;
        bigger.insert(std::upper_bound(bigger.begin(), bigger.end(), v), v);
        if (simplices_.count(bigger)) maximal = false;
      }
      if (maximal) out.push_back(to_labels(s));
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  long dimension() const {
    long d = -1;
    for (const auto& s : simplices_) d = std::max(d, static_cast<long>(s.size()) - 1);
    return d;
  }

  /// Subcomplex spanned by the given vertices.
  SimplicialComplex induced(const std::set<std::string>& keep) const {
    SimplicialComplex out;
    for (const auto& l : labels_)
      if (keep.count(l)) out.add_vertex(l);
    for (const auto& s : simplices_) {
      auto labels = to_labels(s);
      if (std::all_of(labels.begin(), labels.end(), [&](const std::string& l) { return keep.count(l) != 0; }))
        out.add_simplex(labels);
    }
    return out;
  }

  /// Maximal cliques of the 1-skeleton (Bron-Kerbosch with pivoting).
  std::vector<std::vector<std::string>> maximal_cliques() const {
    const std::size_t n = labels_.size();
    std::vector<std::set<std::size_t>> adj(n);
    for (const auto& s : simplices_)
      if (s.size() == 2) {
        adj[s[0]].insert(s[1]);
        adj[s[1]].insert(s[0]);
      }
    std::vector<std::vector<std::string>> out;
    std::vector<std::size_t> r;
    std::set<std::size_t> p, x;
    for (std::size_t v = 0; v < n; ++v) p.insert(v);
    bron_kerbosch(adj, r, p, x, out);
    std::sort(out.begin(), out.end());
    return out;
  }

  /// Every clique of the 1-skeleton spans a simplex.
  bool is_flag() const {
    for (const auto& c : maximal_cliques())
      if (!has_simplex(c)) return false;
    return true;
  }

  friend bool operator==(const SimplicialComplex& a, const SimplicialComplex& b) {
    return a.vertices() == b.vertices() && a.simplices() == b.simplices();
  }

 private:
  std::vector<std::string> to_labels(const std::vector<std::size_t>& s) const {
    std::vector<std::string> out;
    for (auto i : s) out.push_back(labels_[i]);
    std::sort(out.begin(), out.end());
    return out;
  }

  void bron_kerbosch(const std::vector<std::set<std::size_t>>& adj, std::vector<std::size_t>& r,
                     std::set<std::size_t> p, std::set<std::size_t> x,
                     std::vector<std::vector<std::string>>& out) const {
    if (p.empty() && x.empty()) {
      if (!r.empty()) out.push_back(to_labels(r));
      return;
    }
    std::size_t pivot = p.empty() ? *x.begin() : *p.begin();
    std::size_t best = 0;
    for (const auto* side : {&p, &x})
      for (auto u : *side) {
        std::size_t cnt = 0;
        for (auto w : p) cnt += adj[u].count(w);
        if (cnt >= best) {
          best = cnt;
          pivot = u;
        }
      }
    std::vector<std::size_t> candidates;
    for (auto v : p)
      if (!adj[pivot].count(v)) candidates.push_back(v);
    for (auto v : candidates) {
      std::set<std::size_t> p2, x2;
      for (auto w : p)
        if (adj[v].count(w)) p2.insert(w);
      for (auto w : x)
        if (adj[v].count(w)) x2.insert(w);
      r.push_back(v);
      bron_kerbosch(adj, r, std::move(p2), std::move(x2), out);
      r.pop_back();
      p.erase(v);
      x.insert(v);
    }
  }

  std::vector<std::string> labels_;
  std::map<std::string, std::size_t> index_;
  std::set<std::vector<std::size_t>> simplices_;
};

/// Every simplex of L whose vertices all lie in K is a simplex of K.
inline bool is_full_subcomplex(const SimplicialComplex& k, const SimplicialComplex& l) {
  const auto kv = k.vertices();
  std::set<std::string> keep(kv.begin(), kv.end());
  for (const auto& v : kv)
    if (!l.has_vertex(v)) throw DomainError("vertex " + v + " of the subcomplex is missing from the ambient complex");
  for (const auto& s : l.induced(keep).simplices())
    if (!k.has_simplex(s)) return false;
  return true;
}

/// Neighbours of v inside cube c: one per axis, with the direction flag
/// (true = upward, the neighbour coset contains v).
inline std::vector<std::pair<Coset, bool>> cube_neighbours(const Monoid& m, const Cube& c, const Coset& v) {
  std::vector<std::pair<Coset, bool>> out;
  for (Gen x : (v.subset - c.base.subset).members()) out.emplace_back(coset_of(m, c.base.rep, v.subset.without(x)), false);
  for (Gen x : (c.top - v.subset).members()) out.emplace_back(coset_of(m, c.base.rep, v.subset.with(x)), true);
  return out;
}

struct SplitLink {
  SimplicialComplex whole;
  SimplicialComplex upward;
  SimplicialComplex downward;
};

/// Link of v: one simplex per cube containing v, on the neighbours of v in
/// that cube, labelled by their coset text.
inline SplitLink split_link(const CubeComplex& x, const Coset& v) {
  const Monoid& m = x.monoid();
  SplitLink out;
  std::set<std::string> up, down;
  for (const auto& c : x.star(v)) {
    if (c.dim() == 0) continue;
    std::vector<std::string> simplex;
    for (auto& [w, is_up] : cube_neighbours(m, c, v)) {
      const std::string label = format_coset(m, w);
      simplex.push_back(label);
      (is_up ? up : down).insert(label);
    }
    out.whole.add_simplex(simplex);
  }
  out.upward = out.whole.induced(up);
  out.downward = out.whole.induced(down);
  return out;
}

inline SimplicialComplex link(const CubeComplex& x, const Coset& v) { return split_link(x, v).whole; }

/// The link is the join of its upward and downward parts.
inline bool link_is_join(const SplitLink& s) {
  const auto ups = s.upward.simplices();
  const auto downs = s.downward.simplices();
  for (const auto& a : ups)
    for (const auto& b : downs) {
      auto u = a;
      u.insert(u.end(), b.begin(), b.end());
      if (!s.whole.has_simplex(u)) return false;
    }
  for (const auto& w : s.whole.simplices()) {
    std::vector<std::string> a, b;
    for (const auto& l : w) (s.upward.has_vertex(l) ? a : b).push_back(l);
    if ((!a.empty() && !s.upward.has_simplex(a)) || (!b.empty() && !s.downward.has_simplex(b))) return false;
  }
  return true;
}

struct GromovEntry {
  Coset vertex;
  std::size_t link_vertices = 0;
  std::vector<std::vector<std::string>> missing;  // cliques that span no simplex
};

/// Vertices whose link is not flag; empty means locally CAT(0).
inline std::vector<GromovEntry> gromov_local_check(const CubeComplex& x) {
  std::vector<GromovEntry> out;
  for (const auto& v : x.vertices()) {
    auto lk = link(x, v);
    GromovEntry e{v, lk.vertex_count(), {}};
    for (const auto& c : lk.maximal_cliques())
      if (!lk.has_simplex(c)) e.missing.push_back(c);
    if (!e.missing.empty()) out.push_back(std::move(e));
  }
  return out;
}

/// Names the coset g A_{T'} of A_T (T' a subset of T) by a monoid coset:
/// Delta_T^{2J} is central in A_T, so Delta_T^{2J} g A_{T'} is the same
/// left translate for every representative, and it is positive once
/// 2J bounds the negative part of g.
class GroupCosetNamer {
 public:
  GroupCosetNamer(const FiniteTypeGroup& group, std::size_t depth)
      : group_(&group), shift_(group.delta_power(2 * static_cast<long>((depth + 1) / 2))) {}

  std::string name(const GroupElement& g, GenSet sub) const {
    GroupElement x = group_->multiply(shift_, g);
    if (!x.is_positive())
      throw CapExceeded("central shift too short to make " + group_->format(g) + " positive");
    return format_coset(group_->monoid(), coset_of(group_->monoid(), x.pos, sub));
  }

 private:
  const FiniteTypeGroup* group_;
  GroupElement shift_;
};

/// Elements of A_T whose reduced fraction has length <= depth.
inline std::vector<GroupElement> fraction_ball(const FiniteTypeGroup& group, std::size_t depth) {
  const Monoid& m = group.monoid();
  const auto levels = m.elements_by_length(depth, group.support());
  std::set<GroupElement> out;
  for (std::size_t la = 0; la <= depth; ++la)
    for (std::size_t lb = 0; la + lb <= depth; ++lb)
      for (const auto& a : levels[la])
        for (const auto& b : levels[lb]) out.insert(group.reduce(a, b));
  return {out.begin(), out.end()};
}

/// Downward link of A_T in the Deligne complex of the group: a simplex
/// {h A_{T \ t} : t in D} for every h of fraction length <= depth and every
/// nonempty D in T. The link at alpha A_T is its left translate by alpha.
inline SimplicialComplex group_downward_link(const Monoid& m, GenSet t, std::size_t depth) {
  FiniteTypeGroup group(m, t);
  GroupCosetNamer namer(group, depth);
  SimplicialComplex out;
  const auto gens = t.members();
  const auto ball = fraction_ball(group, depth);
  for (const auto& h : ball) {
    std::vector<std::string> names;
    for (Gen g : gens) names.push_back(namer.name(h, t.without(g)));
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << gens.size()); ++mask) {
      std::vector<std::string> simplex;
      for (std::size_t i = 0; i < gens.size(); ++i)
        if (mask >> i & 1) simplex.push_back(names[i]);
      out.add_simplex(simplex);
    }
  }
  return out;
}

/// Given h in a_1 A_{T_1} cap a_2 A_{T_2} (inside A_T), writes
/// h = a_i b_i Delta_i^{-k} and checks that h . gcd_L(Delta_1^k, Delta_2^k)
/// is a positive element of a_1 A_{T_1}^+ cap a_2 A_{T_2}^+.
inline bool verify_lemma_5_7_witness(const Monoid& m, const FiniteTypeGroup& group, const Coset& c1,
                                     const Coset& c2, const GroupElement& h, std::string& why) {
  const Coset* cs[2] = {&c1, &c2};
  Element b[2];
  long kappa[2];
  std::unique_ptr<FiniteTypeGroup> sub[2];
  for (int i = 0; i < 2; ++i) {
    GroupElement xi = group.multiply(group.negative(cs[i]->rep), h);
    if (!group.in_special_subgroup(xi, cs[i]->subset)) {
      why = "h is not in the coset";
      return false;
    }
    sub[i] = std::make_unique<FiniteTypeGroup>(m, cs[i]->subset);
    GarsideForm gf = sub[i]->garside_form(xi);
    if (gf.k >= 0) {
      b[i] = m.multiply(gf.m, m.power(sub[i]->delta(), static_cast<std::size_t>(gf.k)));
      kappa[i] = 0;
    } else {
      b[i] = gf.m;
      kappa[i] = -gf.k;
    }
  }
  const long k = std::max(kappa[0], kappa[1]);
  for (int i = 0; i < 2; ++i) {
    b[i] = m.multiply(b[i], m.power(sub[i]->delta(), static_cast<std::size_t>(k - kappa[i])));
    GroupElement check = sub[i]->multiply(sub[i]->positive(b[i]), sub[i]->delta_power(-k));
    GroupElement xi = group.multiply(group.negative(cs[i]->rep), h);
    if (check != xi) {
      why = "Garside decomposition does not reconstruct a_i^{-1} h";
      return false;
    }
  }
  GroupElement w = h;
  if (k > 0) {
    Element d = m.gcd_left(m.power(sub[0]->delta(), static_cast<std::size_t>(k)),
                           m.power(sub[1]->delta(), static_cast<std::size_t>(k)));
    w = group.multiply(h, group.positive(d));
  }
  if (!w.is_positive()) {
    why = "cd is not positive";
    return false;
  }
  for (int i = 0; i < 2; ++i) {
    auto q = m.left_quotient(cs[i]->rep, w.pos);
    if (!q || !m.in_submonoid(*q, cs[i]->subset)) {
      why = "cd is not in a_i A_{T_i}^+";
      return false;
    }
  }
  return true;
}

struct Thm51Entry {
  Coset vertex;
  bool upward_full = false;
  bool downward_flag = false;            // exact downward link on the stage's vertices
  bool downward_flag_truncated = false;  // link inside D_k^+ itself
  bool downward_full = false;
  bool witnesses_ok = false;
  std::size_t witnesses = 0;
  std::vector<std::string> errors;
  bool ok() const { return upward_full && downward_flag && downward_full && witnesses_ok; }
};

struct Thm51Report {
  std::size_t k = 0;
  std::size_t depth = 0;
  std::vector<Thm51Entry> entries;
  bool ok() const {
    return std::all_of(entries.begin(), entries.end(), [](const Thm51Entry& e) { return e.ok(); });
  }
};

namespace detail {

/// A set of downward neighbours [a_i]_{T \ t_i} of [e]_T spans a simplex
/// of the full monoid complex iff the t_i are distinct and the cosets meet.
inline bool monoid_downward_simplex(const Monoid& m, GenSet t, const std::vector<Coset>& cosets, std::size_t bound) {
  GenSet removed;
  for (const auto& c : cosets) {
    GenSet r = t - c.subset;
    if (r.size() != 1 || removed.intersects(r)) return false;
    removed = removed | r;
  }
  Coset acc = cosets.front();
  for (std::size_t i = 1; i < cosets.size(); ++i) {
    auto meet = coset_intersection(m, acc, cosets[i], bound);
    if (meet.status == MeetStatus::unknown) throw CapExceeded("finite-type coset intersection exceeded its bound");
    if (meet.status == MeetStatus::empty) return false;
    acc = *meet.coset;
  }
  return true;
}

}  // namespace detail

/// Local conditions of the embedding of D^+ into D at every vertex of
/// D_k^+: upward link full, downward link flag, downward link full in the
/// group downward link (at the given depth) with an explicit positive
/// common element for each edge. The downward link of a vertex of D_k^+
/// reaches translates of length k, so depth must be at least k.
inline Thm51Report verify_theorem_5_1(const Monoid& m, std::size_t k, std::size_t depth) {
  if (depth < k)
    throw DomainError("link depth " + std::to_string(depth) + " is below the stage " + std::to_string(k));
  Thm51Report report;
  report.k = k;
  report.depth = depth;
  const CubeComplex x = build_d_k(m, k);
  const auto& fam = m.spherical();
  std::map<std::uint64_t, SimplicialComplex> group_links;
  std::map<std::uint64_t, std::unique_ptr<FiniteTypeGroup>> groups;

  for (const auto& v : x.vertices()) {
    Thm51Entry e;
    e.vertex = v;
    const GenSet t = v.subset;
    const SplitLink lk = split_link(x, v);

    // upward: abstract group upward link, a simplex for each X with T + X in S^f
    SimplicialComplex group_up;
    std::vector<Gen> outside;
    for (Gen g : (m.graph().all() - t).members())
      if (fam.contains(t.with(g))) outside.push_back(g);
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << outside.size()); ++mask) {
      GenSet add;
      for (std::size_t i = 0; i < outside.size(); ++i)
        if (mask >> i & 1) add = add.with(outside[i]);
      if (!fam.contains(t | add)) continue;
      std::vector<std::string> simplex;
      for (Gen g : add.members()) simplex.push_back(format_coset(m, coset_of(m, v.rep, t.with(g))));
      group_up.add_simplex(simplex);
    }
    try {
      e.upward_full = is_full_subcomplex(lk.upward, group_up);
      if (!e.upward_full) e.errors.push_back("upward link is not full");
    } catch (const DomainError& err) {
      e.errors.push_back(err.what());
    }

    // downward: reduce to [e]_T by left division by the minimal representative
    e.downward_flag_truncated = lk.downward.is_flag();
    std::vector<Coset> down;  // reduced neighbours [a]_{T \ t}
    std::map<std::string, Coset> by_label;
    for (const auto& label : lk.downward.vertices()) {
      Coset w = parse_coset(m, label);
      auto a = m.left_quotient(v.rep, w.rep);
      if (!a || !m.in_submonoid(*a, t)) {
        e.errors.push_back("downward neighbour " + label + " is not below the vertex");
        continue;
      }
      Coset reduced = coset_of(m, *a, w.subset);
      down.push_back(reduced);
    }
    std::size_t bound = 0;
    if (!t.empty()) {
      const std::size_t dl = m.garside_element(t).length();
      for (const auto& c : down) bound = std::max(bound, dl * std::max<std::size_t>(1, c.rep.length()));
    }

    SimplicialComplex exact;
    std::vector<std::string> names;
    if (!t.empty()) {
      auto& gp = groups[t.bits()];
      if (!gp) gp = std::make_unique<FiniteTypeGroup>(m, t);
      GroupCosetNamer namer(*gp, depth);
      for (const auto& c : down) {
        names.push_back(namer.name(gp->positive(c.rep), c.subset));
        exact.add_vertex(names.back());
      }
      // simplices: subsets with distinct removed generators whose cosets meet
      const std::size_t n = down.size();
      std::vector<std::vector<std::size_t>> frontier;
      for (std::size_t i = 0; i < n; ++i) frontier.push_back({i});
      while (!frontier.empty()) {
        std::vector<std::vector<std::size_t>> next;
        for (const auto& s : frontier)
          for (std::size_t j = s.back() + 1; j < n; ++j) {
            std::vector<Coset> cs;
            for (auto i : s) cs.push_back(down[i]);
            cs.push_back(down[j]);
            if (!detail::monoid_downward_simplex(m, t, cs, bound)) continue;
            auto s2 = s;
            s2.push_back(j);
            std::vector<std::string> labels;
            for (auto i : s2) labels.push_back(names[i]);
            exact.add_simplex(labels);
            next.push_back(std::move(s2));
          }
        frontier = std::move(next);
      }
      e.downward_flag = exact.is_flag();
      if (!e.downward_flag) e.errors.push_back("downward link is not flag");

      auto it = group_links.find(t.bits());
      if (it == group_links.end()) it = group_links.emplace(t.bits(), group_downward_link(m, t, depth)).first;
      try {
        e.downward_full = is_full_subcomplex(exact, it->second);
        if (!e.downward_full) e.errors.push_back("downward link is not full in the group downward link");
      } catch (const DomainError& err) {
        e.errors.push_back(err.what());
      }

      // explicit positive common element for every group edge between image vertices
      e.witnesses_ok = true;
      const FiniteTypeGroup& group = *gp;
      std::map<std::string, std::size_t> index;
      for (std::size_t i = 0; i < names.size(); ++i) index.emplace(names[i], i);
      std::set<std::pair<std::size_t, std::size_t>> seen;
      for (const auto& h : fraction_ball(group, depth)) {
        std::vector<std::pair<std::size_t, Gen>> hits;
        for (Gen g : t.members()) {
          auto f = index.find(namer.name(h, t.without(g)));
          if (f != index.end()) hits.emplace_back(f->second, g);
        }
        for (std::size_t p = 0; p < hits.size(); ++p)
          for (std::size_t q = p + 1; q < hits.size(); ++q) {
            auto key = std::minmax(hits[p].first, hits[q].first);
            if (!seen.insert(key).second) continue;
            ++e.witnesses;
            const Coset& c1 = down[hits[p].first];
            const Coset& c2 = down[hits[q].first];
            std::string why;
            if (!verify_lemma_5_7_witness(m, group, c1, c2, h, why)) {
              e.witnesses_ok = false;
              e.errors.push_back("no positive witness for " + format_coset(m, c1) + " and " + format_coset(m, c2) +
                                 ": " + why);
            }
          }
      }
    } else {
      e.downward_flag = true;
      e.downward_full = true;
      e.witnesses_ok = true;
    }
    report.entries.push_back(std::move(e));
  }
  return report;
}

}  // namespace artin
