#pragma once

#include <algorithm>
#include <deque>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "artin/group.hpp"
#include "artin/monoid.hpp"

namespace artin {

enum class GeneratingSet { S, M };

inline std::string to_string(GeneratingSet g) { return g == GeneratingSet::S ? "S" : "M"; }

/// Positive generators of the chosen set, in a fixed order.
inline std::vector<Element> generator_list(const FiniteTypeGroup& group, GeneratingSet gens) {
  const Monoid& m = group.monoid();
  std::vector<Element> out;
  if (gens == GeneratingSet::S) {
    for (Gen g : group.support().members()) out.push_back(m.generator(g));
  } else {
    for (const auto& d : m.left_divisors(group.delta()))
      if (!d.is_identity()) out.push_back(d);
  }
  return out;
}

/// Edge from -> to with to = from . gen^{sign}.
struct CayleyEdge {
  std::size_t from;
  std::size_t gen;
  int sign;
  std::size_t to;
};

/// Ball in the Cayley graph; vertices are indexed, distances from the center.
struct CayleyBall {
  GroupElement center;
  std::size_t radius = 0;
  GeneratingSet gens = GeneratingSet::M;
  std::vector<Element> generators;
  std::vector<GroupElement> vertices;
  std::vector<std::size_t> distance;
  std::vector<CayleyEdge> edges;
  std::unordered_map<GroupElement, std::size_t, GroupElementHash> index;

  std::optional<std::size_t> find(const GroupElement& g) const {
    auto it = index.find(g);
    if (it == index.end()) return std::nullopt;
    return it->second;
  }
};

/// BFS closure under right multiplication by generators and their inverses.
/// Edges between any two ball vertices are all recorded.
inline CayleyBall cayley_ball(const FiniteTypeGroup& group, GeneratingSet gens, std::size_t radius,
                              std::optional<GroupElement> center = std::nullopt) {
  CayleyBall ball;
  ball.center = center.value_or(group.identity());
  ball.radius = radius;
  ball.gens = gens;
  ball.generators = generator_list(group, gens);
  std::vector<GroupElement> steps[2];
  for (const auto& g : ball.generators) {
    steps[0].push_back(group.positive(g));
    steps[1].push_back(group.negative(g));
  }
  ball.vertices.push_back(ball.center);
  ball.distance.push_back(0);
  ball.index.emplace(ball.center, 0);
  for (std::size_t i = 0; i < ball.vertices.size(); ++i) {
    const std::size_t d = ball.distance[i];
    for (int sign = 0; sign < 2; ++sign)
      for (std::size_t g = 0; g < steps[sign].size(); ++g) {
        GroupElement next = group.multiply(ball.vertices[i], steps[sign][g]);
        auto it = ball.index.find(next);
        std::size_t j;
        if (it != ball.index.end()) {
          j = it->second;
        } else {
          if (d == radius) continue;
          j = ball.vertices.size();
          ball.index.emplace(next, j);
          ball.vertices.push_back(next);
          ball.distance.push_back(d + 1);
        }
        ball.edges.push_back({i, g, sign == 0 ? 1 : -1, j});
      }
  }
  return ball;
}

/// Full subgraph on the positive vertices.
inline CayleyBall monoid_ball(const CayleyBall& ball) {
  CayleyBall out;
  out.center = ball.center;
  out.radius = ball.radius;
  out.gens = ball.gens;
  out.generators = ball.generators;
  std::vector<std::size_t> remap(ball.vertices.size(), SIZE_MAX);
  for (std::size_t i = 0; i < ball.vertices.size(); ++i)
    if (ball.vertices[i].is_positive()) {
      remap[i] = out.vertices.size();
      out.index.emplace(ball.vertices[i], out.vertices.size());
      out.vertices.push_back(ball.vertices[i]);
      out.distance.push_back(ball.distance[i]);
    }
  for (const auto& e : ball.edges)
    if (remap[e.from] != SIZE_MAX && remap[e.to] != SIZE_MAX) out.edges.push_back({remap[e.from], e.gen, e.sign, remap[e.to]});
  return out;
}

/// Adjacency lists of a ball's graph (undirected).
inline std::vector<std::vector<std::size_t>> adjacency(const CayleyBall& ball) {
  std::vector<std::vector<std::size_t>> adj(ball.vertices.size());
  for (const auto& e : ball.edges) {
    adj[e.from].push_back(e.to);
    adj[e.to].push_back(e.from);
  }
  for (auto& a : adj) {
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
  }
  return adj;
}

/// Unweighted BFS distances from one vertex inside a finite graph.
inline std::vector<std::size_t> bfs_distances(const std::vector<std::vector<std::size_t>>& adj, std::size_t source) {
  std::vector<std::size_t> dist(adj.size(), SIZE_MAX);
  std::deque<std::size_t> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    auto v = queue.front();
    queue.pop_front();
    for (auto w : adj[v])
      if (dist[w] == SIZE_MAX) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
  }
  return dist;
}

/// Word distance in the Cayley graph, by bidirectional BFS; absent when it
/// exceeds cap.
inline std::optional<std::size_t> distance(const FiniteTypeGroup& group, const GroupElement& x, const GroupElement& y,
                                           GeneratingSet gens, std::size_t cap) {
  if (x == y) return 0;
  const auto list = generator_list(group, gens);
  std::vector<GroupElement> steps;
  for (const auto& g : list) {
    steps.push_back(group.positive(g));
    steps.push_back(group.negative(g));
  }
  std::unordered_map<GroupElement, std::size_t, GroupElementHash> seen[2];
  std::vector<GroupElement> frontier[2] = {{x}, {y}};
  seen[0].emplace(x, 0);
  seen[1].emplace(y, 0);
  std::size_t depth[2] = {0, 0};
  while (depth[0] + depth[1] < cap) {
    const int side = frontier[0].size() <= frontier[1].size() ? 0 : 1;
    std::vector<GroupElement> next;
    for (const auto& v : frontier[side])
      for (const auto& s : steps) {
        GroupElement w = group.multiply(v, s);
        if (seen[side].count(w)) continue;
        if (auto it = seen[1 - side].find(w); it != seen[1 - side].end()) return depth[side] + 1 + it->second;
        seen[side].emplace(w, depth[side] + 1);
        next.push_back(std::move(w));
      }
    ++depth[side];
    frontier[side] = std::move(next);
    if (frontier[side].empty()) return std::nullopt;
  }
  return std::nullopt;
}

/// One letter of a word over M and its inverses.
struct MLetter {
  Element factor;
  int sign;
  friend bool operator==(const MLetter&, const MLetter&) = default;
};

/// mu_k^{-1} ... mu_1^{-1} eta_1 ... eta_j from the right-greedy forms of
/// the two fraction parts.
inline std::vector<MLetter> geodesic_normal_form(const FiniteTypeGroup& group, const GroupElement& x) {
  const Monoid& m = group.monoid();
  std::vector<MLetter> out;
  if (!x.neg.is_identity()) {
    auto mus = m.right_greedy_normal_form(x.neg, group.support());
    for (auto it = mus.rbegin(); it != mus.rend(); ++it) out.push_back({*it, -1});
  }
  if (!x.pos.is_identity())
    for (auto& eta : m.right_greedy_normal_form(x.pos, group.support())) out.push_back({eta, 1});
  return out;
}

inline GroupElement evaluate(const FiniteTypeGroup& group, const std::vector<MLetter>& word) {
  GroupElement acc = group.identity();
  for (const auto& l : word) acc = group.multiply(acc, l.sign > 0 ? group.positive(l.factor) : group.negative(l.factor));
  return acc;
}

inline std::string format_letters(const Monoid& m, const std::vector<MLetter>& word) {
  if (word.empty()) return "e";
  std::string out;
  for (const auto& l : word) {
    if (!out.empty()) out += " . ";
    std::string f = m.format(l.factor);
    out += l.sign > 0 ? "(" + f + ")" : "(" + f + ")^-1";
  }
  return out;
}


struct Prop62Report {
  std::size_t radius = 0;
  std::size_t certifying_radius = 0;
  std::size_t pairs = 0;
  std::size_t distance_mismatches = 0;
  std::size_t witness_failures = 0;
  std::size_t normal_form_checked = 0;
  std::size_t normal_form_failures = 0;
  std::vector<std::string> errors;
  bool ok() const { return distance_mismatches == 0 && witness_failures == 0 && normal_form_failures == 0; }
};

namespace detail {

/// Path a -> gcd_L(a, b) -> b through positive vertices: peel the right
/// greedy factors of a' off a, then append those of b'. Returns its length,
/// or nothing if some step leaves the monoid or is not an M-letter.
inline std::optional<std::size_t> prop_6_2_witness(const FiniteTypeGroup& group, const Element& a, const Element& b) {
  const Monoid& m = group.monoid();
  const Element c = m.gcd_left(a, b);
  const Element a1 = *m.left_quotient(c, a);
  const Element b1 = *m.left_quotient(c, b);
  std::vector<MLetter> steps;
  if (!a1.is_identity()) {
    auto mus = m.right_greedy_normal_form(a1, group.support());
    for (auto it = mus.rbegin(); it != mus.rend(); ++it) steps.push_back({*it, -1});
  }
  if (!b1.is_identity())
    for (auto& eta : m.right_greedy_normal_form(b1, group.support())) steps.push_back({eta, 1});
  GroupElement cur = group.positive(a);
  for (const auto& st : steps) {
    if (!m.left_divides(st.factor, group.delta()) || st.factor.is_identity()) return std::nullopt;
    cur = group.multiply(cur, st.sign > 0 ? group.positive(st.factor) : group.negative(st.factor));
    if (!cur.is_positive()) return std::nullopt;
  }
  if (cur != group.positive(b)) return std::nullopt;
  return steps.size();
}

}  // namespace detail

/// For every pair of positive vertices in the M-ball of the given radius:
/// the distance inside the monoid subgraph equals the group distance, read
/// from a ball of twice the radius, and the gcd path realizes it. Also checks
/// that the geodesic normal form is a shortest word on the ball.
inline Prop62Report verify_prop_6_2(const FiniteTypeGroup& group, std::size_t radius) {
  Prop62Report report;
  report.radius = radius;
  report.certifying_radius = 2 * radius;
  const CayleyBall big = cayley_ball(group, GeneratingSet::M, 2 * radius);

  CayleyBall inner;
  inner.generators = big.generators;
  std::vector<std::size_t> remap(big.vertices.size(), SIZE_MAX);
  for (std::size_t i = 0; i < big.vertices.size(); ++i)
    if (big.distance[i] <= radius && big.vertices[i].is_positive()) {
      remap[i] = inner.vertices.size();
      inner.vertices.push_back(big.vertices[i]);
      inner.distance.push_back(big.distance[i]);
    }
  for (const auto& e : big.edges)
    if (remap[e.from] != SIZE_MAX && remap[e.to] != SIZE_MAX) inner.edges.push_back({remap[e.from], e.gen, e.sign, remap[e.to]});
  const auto adj = adjacency(inner);

  const Monoid& m = group.monoid();
  for (std::size_t i = 0; i < inner.vertices.size(); ++i) {
    const auto dplus = bfs_distances(adj, i);
    for (std::size_t j = 0; j < inner.vertices.size(); ++j) {
      ++report.pairs;
      const Element& a = inner.vertices[i].pos;
      const Element& b = inner.vertices[j].pos;
      GroupElement g = group.multiply(group.negative(a), group.positive(b));
      auto where = big.find(g);
      if (!where) {
        ++report.distance_mismatches;
        report.errors.push_back("a^-1 b outside the certifying ball for " + m.format(a) + ", " + m.format(b));
        continue;
      }
      const std::size_t dg = big.distance[*where];
      if (dplus[j] != dg) {
        ++report.distance_mismatches;
        if (report.errors.size() < 20)
          report.errors.push_back("d+(" + m.format(a) + ", " + m.format(b) + ") = " +
                                  (dplus[j] == SIZE_MAX ? std::string("inf") : std::to_string(dplus[j])) +
                                  " but d = " + std::to_string(dg));
      }
      auto w = detail::prop_6_2_witness(group, a, b);
      if (!w || *w != dg) {
        ++report.witness_failures;
        if (report.errors.size() < 20)
          report.errors.push_back("gcd path for " + m.format(a) + ", " + m.format(b) + " is not a geodesic in the monoid");
      }
    }
  }
  for (std::size_t i = 0; i < big.vertices.size(); ++i) {
    if (big.distance[i] > radius) continue;
    ++report.normal_form_checked;
    auto nf = geodesic_normal_form(group, big.vertices[i]);
    if (nf.size() != big.distance[i] || evaluate(group, nf) != big.vertices[i]) {
      ++report.normal_form_failures;
      if (report.errors.size() < 20)
        report.errors.push_back("normal form of " + group.format(big.vertices[i]) + " has length " +
                                std::to_string(nf.size()) + ", distance is " + std::to_string(big.distance[i]));
    }
  }
  return report;
}

struct Example64Report {
  std::size_t n = 0;
  std::size_t cap = 0;
  std::optional<std::size_t> d_sn_tn;
  bool positive_path_ok = false;   // s^n -> e -> t^n inside the monoid
  bool gamma_prime_ok = false;     // s^n -> u^-n -> t^n via (su)^-1 and (tu)
  std::size_t gamma_prime_length = 0;
  std::optional<std::size_t> d_to_monoid;  // from u^-n to the nearest positive vertex
  std::vector<std::string> errors;
  bool ok() const {
    return d_sn_tn == 2 * n && positive_path_ok && gamma_prime_ok && gamma_prime_length == 2 * n &&
           d_to_monoid == n;
  }
};

/// The non-quasi-convexity family on s - t (m_st = 3), u commuting with both:
/// s^n and t^n are 2n apart, joined by a geodesic through u^-n, which is n
/// away from every positive vertex.
inline Example64Report quasiconvexity_example(const FiniteTypeGroup& group, std::size_t n, std::size_t cap) {
  const Monoid& m = group.monoid();
  const auto& g = m.graph();
  Example64Report r;
  r.n = n;
  r.cap = cap;
  const Gen s = g.index("s"), t = g.index("t"), u = g.index("u");
  if (g.label(s, u) != 2 || g.label(t, u) != 2 || !g.joined(s, t))
    throw DomainError("the example needs u commuting with s and t, and s, t joined");
  const auto letters = generator_list(group, GeneratingSet::M);
  auto is_m = [&](const Element& e) { return std::find(letters.begin(), letters.end(), e) != letters.end(); };

  const Element sn = m.power(m.generator(s), n);
  const Element tn = m.power(m.generator(t), n);
  const GroupElement x = group.positive(sn), y = group.positive(tn);
  r.d_sn_tn = distance(group, x, y, GeneratingSet::M, cap);
  if (!r.d_sn_tn) r.errors.push_back("d(s^n, t^n) exceeds the cap");

  auto walk = [&](const std::vector<MLetter>& steps, bool stay_positive, std::string& err) {
    GroupElement cur = x;
    for (const auto& st : steps) {
      if (!is_m(st.factor)) {
        err = m.format(st.factor) + " is not a minimal element";
        return false;
      }
      cur = group.multiply(cur, st.sign > 0 ? group.positive(st.factor) : group.negative(st.factor));
      if (stay_positive && !cur.is_positive()) {
        err = "path leaves the monoid at " + group.format(cur);
        return false;
      }
    }
    if (cur != y) {
      err = "path ends at " + group.format(cur);
      return false;
    }
    return true;
  };

  std::vector<MLetter> positive_path(n, MLetter{m.generator(s), -1});
  positive_path.insert(positive_path.end(), n, MLetter{m.generator(t), 1});
  std::string err;
  r.positive_path_ok = walk(positive_path, true, err);
  if (!r.positive_path_ok) r.errors.push_back("positive path: " + err);

  const Element su = m.parse("s u"), tu = m.parse("t u");
  std::vector<MLetter> gamma(n, MLetter{su, -1});
  gamma.insert(gamma.end(), n, MLetter{tu, 1});
  r.gamma_prime_ok = walk(gamma, false, err);
  r.gamma_prime_length = gamma.size();
  if (!r.gamma_prime_ok) r.errors.push_back("gamma': " + err);
  GroupElement mid = group.multiply(x, group.negative(m.power(su, n)));
  if (mid != group.negative(m.power(m.generator(u), n))) {
    r.gamma_prime_ok = false;
    r.errors.push_back("gamma' does not pass through u^-n");
  }

  // BFS from u^-n until a positive vertex shows up
  std::unordered_map<GroupElement, std::size_t, GroupElementHash> seen{{mid, 0}};
  std::vector<GroupElement> frontier{mid};
  std::vector<GroupElement> steps;
  for (const auto& l : letters) {
    steps.push_back(group.positive(l));
    steps.push_back(group.negative(l));
  }
  for (std::size_t d = 0; d <= cap && !frontier.empty() && !r.d_to_monoid; ++d) {
    for (const auto& v : frontier)
      if (v.is_positive()) {
        r.d_to_monoid = d;
        break;
      }
    if (r.d_to_monoid || d == cap) break;
    std::vector<GroupElement> next;
    for (const auto& v : frontier)
      for (const auto& st : steps) {
        GroupElement w = group.multiply(v, st);
        if (seen.emplace(w, d + 1).second) next.push_back(std::move(w));
      }
    frontier = std::move(next);
  }
  if (!r.d_to_monoid) r.errors.push_back("no positive vertex within the cap " + std::to_string(cap) + " of u^-n");
  return r;
}

}  // namespace artin
