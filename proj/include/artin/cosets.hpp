#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "artin/group.hpp"
#include "artin/monoid.hpp"

namespace artin {

/// The monoid coset [alpha]_T, stored by its minimal representative.
struct Coset {
  Element rep;
  GenSet subset;

  friend bool operator==(const Coset&, const Coset&) = default;
  friend auto operator<=>(const Coset& a, const Coset& b) {
    if (auto c = a.rep <=> b.rep; c != 0) return c;
    return a.subset <=> b.subset;
  }
};

struct CosetHash {
  std::size_t operator()(const Coset& c) const noexcept { return ElementHash{}(c.rep) * 1000003 + c.subset.bits(); }
};

/// Maximal right divisor of a lying in A_T^+. Peeling generators of T off the
/// right one at a time is exact: the right divisors of a in A_T^+ are closed
/// under lcm_R, so any T-letter right-dividing the remainder extends the
/// divisor found so far.
inline Element end_factor(const Monoid& m, const Element& a, GenSet t) {
  m.check(a);
  m.graph().require_subset(t);
  Word rest = reversed(a.word());
  Word end;  // reversed
  for (bool moved = true; moved && !rest.empty();) {
    moved = false;
    for (Gen s : t.members()) {
      if (auto q = m.quotient_by_generator(s, rest)) {
        rest = std::move(*q);
        end.push_back(s);
        moved = true;
        break;
      }
    }
  }
  return m.element(reversed(end));
}

/// Same quantity read off the equivalence class: the longest suffix made of
/// letters of T over all representatives.
inline Element end_factor_by_suffix_scan(const Monoid& m, const Element& a, GenSet t) {
  m.check(a);
  Word best;
  for (const Word& w : m.equivalence_class(a.word())) {
    std::size_t i = w.size();
    while (i > 0 && t.contains(w[i - 1])) --i;
    if (w.size() - i > best.size()) best.assign(w.begin() + static_cast<std::ptrdiff_t>(i), w.end());
  }
  return m.element(best);
}

/// The minimal representative: a = min_rep(a, T) . end_factor(a, T).
inline Element min_rep(const Monoid& m, const Element& a, GenSet t) {
  return *m.right_quotient(a, end_factor(m, a, t));
}

inline Coset coset_of(const Monoid& m, const Element& a, GenSet t) { return {min_rep(m, a, t), t}; }

inline bool coset_contains(const Monoid& m, const Coset& c, const Element& a) {
  return min_rep(m, a, c.subset) == c.rep;
}

/// Members rep . t with t in A_T^+, of total length <= max_length.
inline std::set<Element> coset_members(const Monoid& m, const Coset& c, std::size_t max_length) {
  std::set<Element> out;
  if (c.rep.length() > max_length) return out;
  for (const auto& level : m.elements_by_length(max_length - c.rep.length(), c.subset))
    for (const auto& t : level) out.insert(m.multiply(c.rep, t));
  return out;
}

inline bool coset_subset(const Monoid& m, const Coset& c1, const Coset& c2) {
  m.check(c1.rep);
  m.check(c2.rep);
  return c1.subset.subset_of(c2.subset) && min_rep(m, c1.rep, c2.subset) == c2.rep;
}

enum class MeetStatus {
  found,    // intersection is the returned coset
  empty,    // proven empty
  unknown,  // no common member within the bound
};

struct CosetMeet {
  MeetStatus status = MeetStatus::empty;
  std::optional<Coset> coset;
};

/// [a]_{T1} and [b]_{T2} meet in [lcm_L(a, b)]_{T1 cap T2} when that lcm lies
/// in both cosets. Any common member x has both minimal representatives as
/// left divisors, so no lcm means no common member.
inline CosetMeet coset_intersection(const Monoid& m, const Coset& c1, const Coset& c2, std::size_t bound) {
  m.check(c1.rep);
  m.check(c2.rep);
  bound = std::max({bound, c1.rep.length(), c2.rep.length()});
  auto l = m.lcm_left(c1.rep, c2.rep, bound);
  if (l.status == LcmStatus::none) return {MeetStatus::empty, std::nullopt};
  if (l.status == LcmStatus::bound_exceeded) return {MeetStatus::unknown, std::nullopt};
  const Element& x = *l.value;
  if (!coset_contains(m, c1, x) || !coset_contains(m, c2, x)) return {MeetStatus::empty, std::nullopt};
  return {MeetStatus::found, coset_of(m, x, c1.subset & c2.subset)};
}

/// alpha A_T cap A^+ up to length cap, built from group elements c^{-1} d of
/// A_T: alpha c^{-1} d is positive exactly when c right-divides alpha.
inline std::set<Element> group_coset_trace(const Monoid& m, const Element& a, GenSet t, std::size_t cap) {
  FiniteTypeGroup group(m, t);
  std::set<Element> out;
  const auto levels = m.elements_by_length(cap, t);
  for (std::size_t lc = 0; lc <= std::min(a.length(), cap); ++lc)
    for (const auto& c : levels[lc]) {
      auto prefix = m.right_quotient(a, c);
      if (!prefix) continue;
      for (std::size_t ld = 0; prefix->length() + ld <= cap; ++ld)
        for (const auto& d : levels[ld]) {
          GroupElement g = group.reduce(c, d);
          if (g.neg != c) continue;  // not a reduced fraction; reached from its reduced form
          out.insert(m.multiply(*prefix, d));
        }
    }
  return out;
}

inline std::string format_coset(const Monoid& m, const Coset& c) {
  std::string inner;
  for (Gen g : c.subset.members()) {
    if (!inner.empty()) inner += ',';
    inner += m.graph().name(g);
  }
  return "[" + m.format(c.rep) + "]_{" + inner + "}";
}

/// Inverse of format_coset; the representative need not be minimal.
inline Coset parse_coset(const Monoid& m, std::string_view text) {
  auto lb = text.find('[');
  auto rb = text.rfind("]_");
  if (lb == std::string_view::npos || rb == std::string_view::npos || rb < lb)
    throw ParseError("coset must look like [word]_{t1,t2}: " + std::string(text));
  Element a = m.parse(text.substr(lb + 1, rb - lb - 1));
  GenSet t = m.graph().parse_subset(text.substr(rb + 2));
  return coset_of(m, a, t);
}

}  // namespace artin
