#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "artin/errors.hpp"

namespace artin {

using Gen = std::uint8_t;

/// Subset of the generating set, stored as a bitmask over generator indices.
class GenSet {
 public:
  static constexpr std::size_t kMaxGenerators = 64;

  constexpr GenSet() = default;
  constexpr explicit GenSet(std::uint64_t bits) : bits_(bits) {}

  static constexpr GenSet single(Gen g) { return GenSet(std::uint64_t{1} << g); }
  static constexpr GenSet first(std::size_t n) {
    return GenSet(n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
  }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr bool contains(Gen g) const { return (bits_ >> g) & 1U; }
  constexpr std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits_)); }
  constexpr bool subset_of(GenSet other) const { return (bits_ & ~other.bits_) == 0; }
  constexpr bool intersects(GenSet other) const { return (bits_ & other.bits_) != 0; }

  constexpr GenSet with(Gen g) const { return GenSet(bits_ | (std::uint64_t{1} << g)); }
  constexpr GenSet without(Gen g) const { return GenSet(bits_ & ~(std::uint64_t{1} << g)); }

  friend constexpr GenSet operator|(GenSet a, GenSet b) { return GenSet(a.bits_ | b.bits_); }
  friend constexpr GenSet operator&(GenSet a, GenSet b) { return GenSet(a.bits_ & b.bits_); }
  friend constexpr GenSet operator-(GenSet a, GenSet b) { return GenSet(a.bits_ & ~b.bits_); }
  friend constexpr bool operator==(GenSet, GenSet) = default;
  friend constexpr auto operator<=>(GenSet, GenSet) = default;

  /// Members in increasing index order.
  std::vector<Gen> members() const {
    std::vector<Gen> out;
    for (std::uint64_t b = bits_; b != 0; b &= b - 1) out.push_back(static_cast<Gen>(std::countr_zero(b)));
    return out;
  }

  /// Smallest member; undefined on the empty set.
  Gen min() const { return static_cast<Gen>(std::countr_zero(bits_)); }

 private:
  std::uint64_t bits_ = 0;
};

/// Labelled graph Gamma. A pair without an edge carries the label infinity.
class DefiningGraph {
 public:
  static constexpr int kInfinity = 0;

  DefiningGraph() = default;

  explicit DefiningGraph(std::vector<std::string> generators) : names_(std::move(generators)) {
    if (names_.size() > GenSet::kMaxGenerators) throw DomainError("at most 64 generators are supported");
    for (std::size_t i = 0; i < names_.size(); ++i) {
      if (names_[i].empty()) throw DomainError("empty generator name");
      for (std::size_t j = 0; j < i; ++j)
        if (names_[i] == names_[j]) throw DomainError("duplicate generator '" + names_[i] + "'");
    }
    labels_.assign(names_.size() * names_.size(), kInfinity);
  }

  std::size_t rank() const { return names_.size(); }
  GenSet all() const { return GenSet::first(rank()); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(Gen g) const { return names_.at(g); }

  std::optional<Gen> find(std::string_view name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (names_[i] == name) return static_cast<Gen>(i);
    return std::nullopt;
  }

  Gen index(std::string_view name) const {
    if (auto g = find(name)) return *g;
    throw DomainError("unknown generator '" + std::string(name) + "'");
  }

  /// m_st, or kInfinity when s and t are not joined. Diagonal entries read 1.
  int label(Gen s, Gen t) const {
    if (s == t) return 1;
    return labels_[s * rank() + t];
  }
  bool joined(Gen s, Gen t) const { return s != t && label(s, t) != kInfinity; }

  void set_label(Gen s, Gen t, int m) {
    if (s >= rank() || t >= rank()) throw DomainError("label on a non-existent generator");
    if (s == t) throw DomainError("self-loop on generator '" + name(s) + "'");
    if (m < 2) throw DomainError("label " + std::to_string(m) + " < 2 on edge " + name(s) + "-" + name(t));
    labels_[s * rank() + t] = m;
    labels_[t * rank() + s] = m;
  }

  /// Checks that every generator index in T exists.
  void require_subset(GenSet t) const {
    if (!t.subset_of(all())) throw DomainError("subset mentions an unknown generator");
  }

  GenSet parse_subset(std::string_view text) const;
  std::string format_subset(GenSet t) const;

  friend bool operator==(const DefiningGraph&, const DefiningGraph&) = default;

 private:
  std::vector<std::string> names_;
  std::vector<int> labels_;
};

namespace detail {

inline std::vector<std::string> split_tokens(std::string_view line, std::string_view seps = " \t\r") {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && seps.find(line[i]) != std::string_view::npos) ++i;
    std::size_t j = i;
    while (j < line.size() && seps.find(line[j]) == std::string_view::npos) ++j;
    if (j > i) out.emplace_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

}  // namespace detail

/// Accepts "{s,t}", "s,t", "s t" or "{}" / "" for the empty set.
inline GenSet DefiningGraph::parse_subset(std::string_view text) const {
  std::string cleaned(text);
  std::erase_if(cleaned, [](char c) { return c == '{' || c == '}'; });
  GenSet out;
  for (const auto& tok : detail::split_tokens(cleaned, " ,\t")) out = out.with(index(tok));
  return out;
}

inline std::string DefiningGraph::format_subset(GenSet t) const {
  std::string out = "{";
  bool first = true;
  for (Gen g : t.members()) {
    if (!first) out += ',';
    out += name(g);
    first = false;
  }
  return out + "}";
}

/// Parses the line-oriented graph format:
///
///     # comment
///     gens r s t u
///     edge r s 3
///
/// Statements may also be separated by ';' on a single line.
inline DefiningGraph parse_graph(std::string_view text) {
  std::optional<DefiningGraph> graph;
  std::vector<std::string> statements;
  {
    std::string current;
    bool in_comment = false;
    for (char c : text) {
      if (c == '\n') {
        in_comment = false;
        statements.push_back(std::move(current));
        current.clear();
      } else if (in_comment) {
        continue;
      } else if (c == '#') {
        in_comment = true;
      } else if (c == ';') {
        statements.push_back(std::move(current));
        current.clear();
      } else {
        current += c;
      }
    }
    statements.push_back(std::move(current));
  }

  for (std::size_t n = 0; n < statements.size(); ++n) {
    auto tokens = detail::split_tokens(statements[n]);
    if (tokens.empty()) continue;
    const std::string where = "statement " + std::to_string(n + 1) + ": ";
    if (tokens[0] == "gens") {
      if (graph) throw ParseError(where + "repeated 'gens' statement");
      try {
        graph.emplace(std::vector<std::string>(tokens.begin() + 1, tokens.end()));
      } catch (const DomainError& e) {
        throw ParseError(where + e.what());
      }
    } else if (tokens[0] == "edge") {
      if (!graph) throw ParseError(where + "'edge' before 'gens'");
      if (tokens.size() != 4) throw ParseError(where + "expected 'edge <a> <b> <label>'");
      auto a = graph->find(tokens[1]);
      auto b = graph->find(tokens[2]);
      if (!a || !b) throw ParseError(where + "label on a non-existent generator");
      int m = 0;
      try {
        std::size_t used = 0;
        m = std::stoi(tokens[3], &used);
        if (used != tokens[3].size()) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        throw ParseError(where + "label '" + tokens[3] + "' is not an integer");
      }
      if (*a == *b) throw ParseError(where + "self-loop on '" + tokens[1] + "'");
      if (m < 2) throw ParseError(where + "label " + std::to_string(m) + " < 2");
      if (graph->label(*a, *b) != DefiningGraph::kInfinity)
        throw ParseError(where + "edge " + tokens[1] + "-" + tokens[2] + " given twice");
      graph->set_label(*a, *b, m);
    } else {
      throw ParseError(where + "unknown keyword '" + tokens[0] + "'");
    }
  }
  if (!graph) throw ParseError("missing 'gens' statement");
  return *graph;
}

/// Inverse of parse_graph: one statement per line, edges in index order.
inline std::string serialize(const DefiningGraph& g) {
  std::string out = "gens";
  for (const auto& n : g.names()) out += " " + n;
  out += "\n";
  for (Gen s = 0; s < g.rank(); ++s)
    for (Gen t = s + 1; t < g.rank(); ++t)
      if (g.joined(s, t)) out += "edge " + g.name(s) + " " + g.name(t) + " " + std::to_string(g.label(s, t)) + "\n";
  return out;
}

/// Full subgraph spanned by T; generators keep their relative order.
inline DefiningGraph full_subgraph(const DefiningGraph& g, GenSet t) {
  g.require_subset(t);
  auto members = t.members();
  std::vector<std::string> names;
  for (Gen s : members) names.push_back(g.name(s));
  DefiningGraph sub(std::move(names));
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = i + 1; j < members.size(); ++j)
      if (g.joined(members[i], members[j]))
        sub.set_label(static_cast<Gen>(i), static_cast<Gen>(j), g.label(members[i], members[j]));
  return sub;
}

/// One connected component of the Coxeter diagram of T with its type, e.g.
/// "A3", "B4", "D5", "E6", "F4", "H3", "I2(5)", or "infinite".
struct CoxeterComponent {
  GenSet generators;
  std::string type;
  bool finite() const { return type != "infinite"; }
};

namespace detail {

// Coxeter diagram edges: labels >= 3 and infinity. Label 2 means commuting.
inline bool diagram_edge(const DefiningGraph& g, Gen s, Gen t) { return s != t && g.label(s, t) != 2; }

inline std::string classify_component(const DefiningGraph& g, const std::vector<Gen>& verts) {
  const std::size_t n = verts.size();
  if (n == 1) return "A1";
  std::map<Gen, std::vector<Gen>> adj;
  std::size_t edges = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (diagram_edge(g, verts[i], verts[j])) {
        if (g.label(verts[i], verts[j]) == DefiningGraph::kInfinity) return "infinite";
        adj[verts[i]].push_back(verts[j]);
        adj[verts[j]].push_back(verts[i]);
        ++edges;
      }
  if (edges != n - 1) return "infinite";  // connected with a cycle

  std::vector<Gen> branch;
  std::vector<Gen> leaves;
  for (Gen v : verts) {
    const auto deg = adj[v].size();
    if (deg >= 4) return "infinite";
    if (deg == 3) branch.push_back(v);
    if (deg == 1) leaves.push_back(v);
  }

  if (branch.size() > 1) return "infinite";
  if (branch.size() == 1) {
    std::vector<int> arms;
    for (Gen start : adj[branch[0]]) {
      Gen prev = branch[0];
      Gen cur = start;
      int len = 1;
      if (g.label(prev, cur) != 3) return "infinite";
      while (adj[cur].size() == 2) {
        Gen next = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
        if (g.label(cur, next) != 3) return "infinite";
        prev = cur;
        cur = next;
        ++len;
      }
      arms.push_back(len);
    }
    std::sort(arms.begin(), arms.end());
    if (arms[0] == 1 && arms[1] == 1) return "D" + std::to_string(n);
    if (arms[0] == 1 && arms[1] == 2 && arms[2] <= 4) return "E" + std::to_string(n);
    return "infinite";
  }

  // A path: read the labels along it.
  std::vector<int> labels;
  Gen prev = leaves[0];
  Gen cur = adj[prev][0];
  labels.push_back(g.label(prev, cur));
  while (adj[cur].size() == 2) {
    Gen next = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
    labels.push_back(g.label(cur, next));
    prev = cur;
    cur = next;
  }
  if (n == 2) {
    const int m = labels[0];
    return m == 3 ? "A2" : "I2(" + std::to_string(m) + ")";
  }
  std::vector<std::size_t> odd;
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] != 3) odd.push_back(i);
  if (odd.empty()) return "A" + std::to_string(n);
  if (odd.size() > 1) return "infinite";
  const std::size_t pos = odd[0];
  const bool at_end = pos == 0 || pos + 1 == labels.size();
  const int m = labels[pos];
  if (m == 4 && at_end) return "B" + std::to_string(n);
  if (m == 4 && n == 4) return "F4";
  if (m == 5 && at_end && (n == 3 || n == 4)) return "H" + std::to_string(n);
  return "infinite";
}

}  // namespace detail

/// Connected components of the Coxeter diagram of T with their types.
inline std::vector<CoxeterComponent> coxeter_components(const DefiningGraph& g, GenSet t) {
  g.require_subset(t);
  std::vector<CoxeterComponent> out;
  GenSet remaining = t;
  while (!remaining.empty()) {
    GenSet comp = GenSet::single(remaining.min());
    GenSet frontier = comp;
    while (!frontier.empty()) {
      GenSet next;
      for (Gen s : frontier.members())
        for (Gen u : (remaining - comp).members())
          if (detail::diagram_edge(g, s, u)) next = next.with(u);
      comp = comp | next;
      frontier = next;
    }
    remaining = remaining - comp;
    out.push_back({comp, detail::classify_component(g, comp.members())});
  }
  return out;
}

/// True iff the Coxeter group W_T is finite.
inline bool is_finite_type(const DefiningGraph& g, GenSet t) {
  for (const auto& c : coxeter_components(g, t))
    if (!c.finite()) return false;
  return true;
}

/// The family S^f of finite-type subsets, closed under taking subsets.
class SphericalFamily {
 public:
  SphericalFamily() = default;
  explicit SphericalFamily(std::vector<GenSet> members) : members_(std::move(members)) {
    std::sort(members_.begin(), members_.end(), [](GenSet a, GenSet b) {
      return a.size() != b.size() ? a.size() < b.size() : a.bits() < b.bits();
    });
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  }

  /// Sorted by cardinality, then by bitmask.
  const std::vector<GenSet>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool contains(GenSet t) const { return std::find(members_.begin(), members_.end(), t) != members_.end(); }

  std::vector<GenSet> maximal() const {
    std::vector<GenSet> out;
    for (GenSet t : members_) {
      bool covered = false;
      for (GenSet u : members_)
        if (u != t && t.subset_of(u)) covered = true;
      if (!covered) out.push_back(t);
    }
    return out;
  }

 private:
  std::vector<GenSet> members_;
};

/// All finite-type subsets. Grown by adding generators in index order, which
/// reaches every member because the family is subset-closed.
inline SphericalFamily spherical_subsets(const DefiningGraph& g) {
  std::vector<GenSet> found{GenSet{}};
  std::vector<GenSet> stack{GenSet{}};
  while (!stack.empty()) {
    GenSet t = stack.back();
    stack.pop_back();
    const Gen start = t.empty() ? 0 : static_cast<Gen>(t.members().back() + 1);
    for (Gen s = start; s < g.rank(); ++s) {
      GenSet u = t.with(s);
      if (is_finite_type(g, u)) {
        found.push_back(u);
        stack.push_back(u);
      }
    }
  }
  return SphericalFamily(std::move(found));
}

}  // namespace artin
