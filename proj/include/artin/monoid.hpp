#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <shared_mutex>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "artin/defining_graph.hpp"
#include "artin/errors.hpp"

namespace artin {

/// A positive word: a sequence of generator indices.
using Word = std::vector<Gen>;

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept {
    std::uint64_t h = 1469598103934665603ULL;
    for (Gen g : w) {
      h ^= g;
      h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h ^ (w.size() << 56));
  }
};

inline Word reversed(Word w) {
  std::reverse(w.begin(), w.end());
  return w;
}

inline Word concat(const Word& a, const Word& b) {
  Word out;
  out.reserve(a.size() + b.size());
  out.insert(out.end(), a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

/// Element of A_Gamma^+, stored as the lexicographically least word of its
/// class under the declared generator order. Carries the id of the monoid it
/// belongs to so mixing ambients can be detected.
class Element {
 public:
  Element() = default;

  const Word& word() const { return word_; }
  std::size_t length() const { return word_.size(); }
  bool is_identity() const { return word_.empty(); }
  std::uint64_t ambient() const { return ambient_; }

  friend bool operator==(const Element&, const Element&) = default;
  friend auto operator<=>(const Element& a, const Element& b) {
    if (auto c = a.ambient_ <=> b.ambient_; c != 0) return c;
    if (auto c = a.word_.size() <=> b.word_.size(); c != 0) return c;
    return a.word_ <=> b.word_;
  }

 private:
  friend class Monoid;
  Element(std::uint64_t ambient, Word w) : ambient_(ambient), word_(std::move(w)) {}

  std::uint64_t ambient_ = 0;
  Word word_;
};

struct ElementHash {
  std::size_t operator()(const Element& e) const noexcept { return WordHash{}(e.word()) ^ e.ambient(); }
};

enum class LcmStatus {
  found,           // least common multiple returned
  none,            // proven: no common multiple exists
  bound_exceeded,  // no common multiple of length <= bound
};

struct LcmResult {
  LcmStatus status = LcmStatus::none;
  std::optional<Element> value;
  explicit operator bool() const { return status == LcmStatus::found; }
};

struct MonoidOptions {
  /// Longest word whose full equivalence class may be enumerated.
  std::size_t class_length_cap = 12;
  /// Entries kept in the canonical-form cache before it is flushed.
  std::size_t cache_capacity = 1 << 18;
};

/// Arithmetic in the Artin monoid of a defining graph.
///
/// Division is decided by subword reversing against the complemented Artin
/// presentation, which is complete, so no equivalence class has to be
/// enumerated. The exhaustive class closure is kept for the oracle routes.
class Monoid {
 public:
  explicit Monoid(DefiningGraph graph, MonoidOptions options = {})
      : graph_(std::move(graph)), options_(options), id_(next_id()) {
    const std::size_t n = graph_.rank();
    complement_.resize(n * n);
    for (Gen s = 0; s < n; ++s)
      for (Gen t = 0; t < n; ++t) {
        if (s == t || !graph_.joined(s, t)) continue;
        // s . (t s t ...)_{m-1} = t . (s t s ...)_{m-1}
        complement_[s * n + t] = alternating(t, s, static_cast<std::size_t>(graph_.label(s, t) - 1));
      }
  }

  Monoid(const Monoid& other) : Monoid(other.graph_, other.options_) {}
  Monoid& operator=(const Monoid&) = delete;

  const DefiningGraph& graph() const { return graph_; }
  const MonoidOptions& options() const { return options_; }
  std::uint64_t id() const { return id_; }
  std::size_t rank() const { return graph_.rank(); }

  // --- construction and text ------------------------------------------------

  Element identity() const { return Element(id_, {}); }
  Element generator(Gen g) const {
    check_letter(g);
    return Element(id_, Word{g});
  }
  Element element(const Word& w) const {
    for (Gen g : w) check_letter(g);
    return Element(id_, canonical(w));
  }

  /// Whitespace-separated generator names. The empty string, or "e" when no
  /// generator is called "e", denotes the identity.
  Word parse_word(std::string_view text) const {
    Word w;
    for (const auto& tok : detail::split_tokens(text, " \t\r\n")) {
      if (tok == "e" && !graph_.find("e")) continue;
      w.push_back(graph_.index(tok));
    }
    return w;
  }
  Element parse(std::string_view text) const { return element(parse_word(text)); }

  std::string format_word(const Word& w) const {
    if (w.empty()) return "e";
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (i) out += ' ';
      out += graph_.name(w[i]);
    }
    return out;
  }
  std::string format(const Element& a) const { return format_word(a.word()); }

  /// Alternating word x y x y ... of the given length.
  static Word alternating(Gen x, Gen y, std::size_t length) {
    Word w(length);
    for (std::size_t i = 0; i < length; ++i) w[i] = (i % 2 == 0) ? x : y;
    return w;
  }

  // --- word problem ---------------------------------------------------------

  /// Every word obtained from w by repeatedly swapping one side of a braid
  /// relation for the other. Exponential in |w|; capped by class_length_cap.
  std::set<Word> equivalence_class(const Word& w) const {
    for (Gen g : w) check_letter(g);
    if (w.size() > options_.class_length_cap)
      throw CapExceeded("equivalence class of a word of length " + std::to_string(w.size()) +
                        " exceeds the cap " + std::to_string(options_.class_length_cap));
    {
      std::shared_lock lock(class_mutex_);
      if (auto it = class_cache_.find(w); it != class_cache_.end()) return it->second;
    }
    std::set<Word> seen{w};
    std::deque<Word> queue{w};
    while (!queue.empty()) {
      Word cur = std::move(queue.front());
      queue.pop_front();
      for (Gen s = 0; s < rank(); ++s)
        for (Gen t = 0; t < rank(); ++t) {
          if (s == t || !graph_.joined(s, t)) continue;
          const auto m = static_cast<std::size_t>(graph_.label(s, t));
          if (m > cur.size()) continue;
          const Word lhs = alternating(s, t, m);
          const Word rhs = alternating(t, s, m);
          for (std::size_t i = 0; i + m <= cur.size(); ++i) {
            if (!std::equal(lhs.begin(), lhs.end(), cur.begin() + static_cast<std::ptrdiff_t>(i))) continue;
            Word next = cur;
            std::copy(rhs.begin(), rhs.end(), next.begin() + static_cast<std::ptrdiff_t>(i));
            if (seen.insert(next).second) queue.push_back(std::move(next));
          }
        }
    }
    std::unique_lock lock(class_mutex_);
    class_cache_.emplace(w, seen);
    return seen;
  }

  /// Lexicographically least word representing the same element as w.
  /// Greedy: the least first letter of any representative is the least
  /// generator left-dividing w, and left cancellation reduces to the rest.
  Word canonical(const Word& w) const {
    if (w.size() <= 1) return w;
    {
      std::shared_lock lock(cache_mutex_);
      if (auto it = canonical_cache_.find(w); it != canonical_cache_.end()) return it->second;
    }
    Word out;
    out.reserve(w.size());
    Word cur = w;
    while (!cur.empty()) {
      bool moved = false;
      for (Gen s = 0; s < cur.front(); ++s) {
        if (auto q = quotient_by_generator(s, cur)) {
          out.push_back(s);
          cur = std::move(*q);
          moved = true;
          break;
        }
      }
      if (!moved) {
        out.push_back(cur.front());
        cur.erase(cur.begin());
      }
    }
    std::unique_lock lock(cache_mutex_);
    if (canonical_cache_.size() >= options_.cache_capacity) canonical_cache_.clear();
    canonical_cache_.emplace(w, out);
    return out;
  }

  bool equals(const Element& a, const Element& b) const {
    check(a);
    check(b);
    return a.word() == b.word();
  }

  std::size_t length(const Element& a) const {
    check(a);
    return a.length();
  }

  Element multiply(const Element& a, const Element& b) const {
    check(a);
    check(b);
    if (a.is_identity()) return b;
    if (b.is_identity()) return a;
    return Element(id_, canonical(concat(a.word(), b.word())));
  }

  Element multiply(std::span<const Element> factors) const {
    Word w;
    for (const auto& f : factors) {
      check(f);
      w.insert(w.end(), f.word().begin(), f.word().end());
    }
    return Element(id_, canonical(w));
  }

  /// The word-reversal anti-automorphism; maps left divisibility to right.
  Element reverse(const Element& a) const {
    check(a);
    return Element(id_, canonical(reversed(a.word())));
  }

  Element power(const Element& a, std::size_t k) const {
    Word w;
    for (std::size_t i = 0; i < k; ++i) w.insert(w.end(), a.word().begin(), a.word().end());
    return Element(id_, canonical(w));
  }

  // --- divisibility ---------------------------------------------------------

  /// a^{-1} b when a left-divides b.
  std::optional<Element> left_quotient(const Element& a, const Element& b) const {
    check(a);
    check(b);
    auto q = left_quotient_word(a.word(), b.word());
    if (!q) return std::nullopt;
    return Element(id_, canonical(*q));
  }

  /// b a^{-1} when a right-divides b.
  std::optional<Element> right_quotient(const Element& b, const Element& a) const {
    check(a);
    check(b);
    auto q = left_quotient_word(reversed(a.word()), reversed(b.word()));
    if (!q) return std::nullopt;
    return Element(id_, canonical(reversed(*q)));
  }

  bool left_divides(const Element& a, const Element& b) const { return left_quotient(a, b).has_value(); }
  bool right_divides(const Element& a, const Element& b) const { return right_quotient(b, a).has_value(); }

  bool generator_left_divides(Gen s, const Element& b) const {
    check(b);
    return quotient_by_generator(s, b.word()).has_value();
  }
  bool generator_right_divides(Gen s, const Element& b) const {
    check(b);
    return quotient_by_generator(s, reversed(b.word())).has_value();
  }

  /// All left divisors of a, sorted by (length, word).
  std::vector<Element> left_divisors(const Element& a) const {
    check(a);
    std::set<Element> seen{identity()};
    std::vector<Element> frontier{identity()};
    while (!frontier.empty()) {
      std::vector<Element> next;
      for (const auto& d : frontier) {
        auto rest = left_quotient_word(d.word(), a.word());
        for (Gen s = 0; s < rank(); ++s) {
          if (!rest || !quotient_by_generator(s, *rest)) continue;
          Element ds = multiply(d, generator(s));
          if (seen.insert(ds).second) next.push_back(ds);
        }
      }
      frontier = std::move(next);
    }
    return {seen.begin(), seen.end()};
  }

  std::vector<Element> right_divisors(const Element& a) const {
    std::vector<Element> out;
    for (const auto& d : left_divisors(reverse(a))) out.push_back(reverse(d));
    std::sort(out.begin(), out.end());
    return out;
  }

  // --- lattice operations -------------------------------------------------

  /// Greatest common left divisor. Any common generator prefix divides the
  /// gcd, so peeling one off at a time is exact.
  Element gcd_left(std::span<const Element> xs) const {
    if (xs.empty()) throw DomainError("gcd of an empty set");
    std::vector<Word> rest;
    for (const auto& x : xs) {
      check(x);
      rest.push_back(x.word());
    }
    Word g;
    for (;;) {
      bool found = false;
      for (Gen s = 0; s < rank() && !found; ++s) {
        std::vector<Word> next;
        for (const auto& r : rest) {
          auto q = quotient_by_generator(s, r);
          if (!q) break;
          next.push_back(std::move(*q));
        }
        if (next.size() == rest.size()) {
          g.push_back(s);
          rest = std::move(next);
          found = true;
        }
      }
      if (!found) break;
    }
    return Element(id_, canonical(g));
  }
  Element gcd_left(const Element& a, const Element& b) const {
    const Element xs[] = {a, b};
    return gcd_left(xs);
  }

  Element gcd_right(std::span<const Element> xs) const {
    std::vector<Element> rev;
    for (const auto& x : xs) rev.push_back(reverse(x));
    return reverse(gcd_left(rev));
  }
  Element gcd_right(const Element& a, const Element& b) const {
    const Element xs[] = {a, b};
    return gcd_right(xs);
  }

  /// Least common left multiple (every x is a left divisor), searched up to
  /// length `bound`. Reversing getting stuck on an infinity pair proves that
  /// no common multiple exists at all.
  LcmResult lcm_left(std::span<const Element> xs, std::size_t bound) const {
    if (xs.empty()) throw DomainError("lcm of an empty set");
    for (const auto& x : xs) {
      check(x);
      if (x.length() > bound)
        throw DomainError("lcm bound " + std::to_string(bound) + " is below input length " +
                          std::to_string(x.length()));
    }
    Word acc = xs[0].word();
    for (std::size_t i = 1; i < xs.size(); ++i) {
      Word uv, vu;
      switch (complement(acc, xs[i].word(), bound, uv, vu)) {
        case Reversal::stuck:
          return {LcmStatus::none, std::nullopt};
        case Reversal::exceeded:
          return {LcmStatus::bound_exceeded, std::nullopt};
        case Reversal::ok:
          acc.insert(acc.end(), uv.begin(), uv.end());
      }
    }
    return {LcmStatus::found, Element(id_, canonical(acc))};
  }
  LcmResult lcm_left(const Element& a, const Element& b, std::size_t bound) const {
    const Element xs[] = {a, b};
    return lcm_left(xs, bound);
  }

  /// Least common right multiple (every x is a right divisor).
  LcmResult lcm_right(std::span<const Element> xs, std::size_t bound) const {
    std::vector<Element> rev;
    for (const auto& x : xs) rev.push_back(reverse(x));
    auto r = lcm_left(rev, bound);
    if (r.value) r.value = reverse(*r.value);
    return r;
  }
  LcmResult lcm_right(const Element& a, const Element& b, std::size_t bound) const {
    const Element xs[] = {a, b};
    return lcm_right(xs, bound);
  }

  // --- Garside structure ----------------------------------------------------

  /// Delta_T = lcm_L(T) = lcm_R(T); T must be of finite type.
  Element garside_element(GenSet t) const {
    graph_.require_subset(t);
    if (!is_finite_type(graph_, t))
      throw DomainError("Garside element requested for " + graph_.format_subset(t) + ", which is not of finite type");
    {
      std::shared_lock lock(cache_mutex_);
      if (auto it = delta_cache_.find(t.bits()); it != delta_cache_.end()) return it->second;
    }
    std::vector<Element> gens;
    for (Gen s : t.members()) gens.push_back(generator(s));
    if (gens.empty()) return identity();
    constexpr std::size_t kDeltaBound = 1 << 14;
    auto left = lcm_left(gens, kDeltaBound);
    auto right = lcm_right(gens, kDeltaBound);
    if (!left || !right) throw InvariantViolation("finite-type subset without a common multiple");
    if (*left.value != *right.value)
      throw InvariantViolation("left and right lcm of " + graph_.format_subset(t) + " differ");
    std::unique_lock lock(cache_mutex_);
    delta_cache_.emplace(t.bits(), *left.value);
    return *left.value;
  }

  /// Nontrivial left divisors of Delta_T over every maximal T in S^f; sorted.
  std::vector<Element> minimal_elements() const {
    std::set<Element> out;
    for (GenSet t : spherical().maximal()) {
      if (t.empty()) continue;
      for (auto& d : left_divisors(garside_element(t)))
        if (!d.is_identity()) out.insert(d);
    }
    return {out.begin(), out.end()};
  }

  /// a = mu_1 ... mu_k with mu_k = gcd_R(a, Delta_T), recursively on the
  /// remaining prefix. Every factor is a nontrivial divisor of Delta_T.
  std::vector<Element> right_greedy_normal_form(const Element& a, GenSet t) const {
    check(a);
    if (!in_submonoid(a, t))
      throw DomainError("element " + format(a) + " has letters outside " + graph_.format_subset(t));
    const Element delta = garside_element(t);
    std::vector<Element> factors;
    Element cur = a;
    while (!cur.is_identity()) {
      Element mu = gcd_right(cur, delta);
      if (mu.is_identity()) throw InvariantViolation("right greedy factor is trivial");
      cur = *right_quotient(cur, mu);
      factors.push_back(std::move(mu));
    }
    std::reverse(factors.begin(), factors.end());
    return factors;
  }

  /// Generators appearing in a (the same for every representative).
  GenSet support(const Element& a) const {
    GenSet out;
    for (Gen g : a.word()) out = out.with(g);
    return out;
  }

  /// Membership in A_T^+: relations applied to a T-word only involve letters
  /// already present, so one representative decides it.
  bool in_submonoid(const Element& a, GenSet t) const { return support(a).subset_of(t); }

  /// T_alpha = { s : s right-divides alpha }; always of finite type.
  GenSet t_alpha(const Element& a) const {
    check(a);
    GenSet out;
    const Word rev = reversed(a.word());
    for (Gen s = 0; s < rank(); ++s)
      if (quotient_by_generator(s, rev)) out = out.with(s);
    if (!is_finite_type(graph_, out))
      throw InvariantViolation("T_alpha = " + graph_.format_subset(out) + " of " + format(a) +
                               " is not of finite type");
    return out;
  }

  const SphericalFamily& spherical() const {
    std::call_once(spherical_once_, [this] { spherical_ = spherical_subsets(graph_); });
    return spherical_;
  }

  /// Elements of A_T^+ grouped by length 0..max_length.
  std::vector<std::vector<Element>> elements_by_length(std::size_t max_length, GenSet t) const {
    graph_.require_subset(t);
    std::vector<std::vector<Element>> levels{{identity()}};
    for (std::size_t len = 1; len <= max_length; ++len) {
      std::set<Element> next;
      for (const auto& a : levels.back())
        for (Gen s : t.members()) next.insert(Element(id_, canonical(concat(a.word(), Word{s}))));
      levels.emplace_back(next.begin(), next.end());
    }
    return levels;
  }
  std::vector<std::vector<Element>> elements_by_length(std::size_t max_length) const {
    return elements_by_length(max_length, graph_.all());
  }

  void check(const Element& a) const {
    if (a.ambient() != id_) throw DomainError("element belongs to a different monoid");
  }

  // --- word-level reversing -------------------------------------------------

  enum class Reversal { ok, stuck, exceeded };

  /// Right reversing of u^{-1} v. On success fills uv = u\v and vu = v\u with
  /// u.uv = v.vu = lcm_L(u, v). `cap` bounds the length of that lcm; every
  /// intermediate lcm left-divides the final one, so the cap is sound.
  Reversal complement(std::span<const Gen> u, std::span<const Gen> v, std::size_t cap, Word& uv, Word& vu) const {
    if (u.size() > cap || v.size() > cap) return Reversal::exceeded;
    if (u.empty()) {
      uv.assign(v.begin(), v.end());
      vu.clear();
      return Reversal::ok;
    }
    if (v.empty()) {
      uv.clear();
      vu.assign(u.begin(), u.end());
      return Reversal::ok;
    }
    if (u.size() == 1 && v.size() == 1) {
      const Gen s = u[0];
      const Gen t = v[0];
      if (s == t) {
        uv.clear();
        vu.clear();
        return Reversal::ok;
      }
      if (!graph_.joined(s, t)) return Reversal::stuck;
      const auto& st = complement_[s * rank() + t];
      if (st.size() + 1 > cap) return Reversal::exceeded;
      uv = st;
      vu = complement_[t * rank() + s];
      return Reversal::ok;
    }
    Word a, b, c, d;
    if (u.size() >= 2) {
      // lcm(u1 u2, v) = u1 . lcm(u2, u1\v)
      if (auto r = complement(u.first(1), v, cap, a, b); r != Reversal::ok) return r;
      if (auto r = complement(u.subspan(1), a, cap - 1, c, d); r != Reversal::ok) return r;
      uv = std::move(c);
      vu = std::move(b);
      vu.insert(vu.end(), d.begin(), d.end());
    } else {
      // lcm(s, v1 v2) = v1 . lcm(v1\s, v2)
      if (auto r = complement(u, v.first(1), cap, a, b); r != Reversal::ok) return r;
      if (auto r = complement(b, v.subspan(1), cap - 1, c, d); r != Reversal::ok) return r;
      uv = std::move(a);
      uv.insert(uv.end(), c.begin(), c.end());
      vu = std::move(d);
    }
    if (u.size() + uv.size() > cap) return Reversal::exceeded;
    return Reversal::ok;
  }

  /// u^{-1} w as a (non-canonical) word when u left-divides w.
  std::optional<Word> left_quotient_word(const Word& u, const Word& w) const {
    if (u.size() > w.size()) return std::nullopt;
    if (u.empty()) return w;
    if (std::equal(u.begin(), u.end(), w.begin())) return Word(w.begin() + static_cast<std::ptrdiff_t>(u.size()), w.end());
    Word uv, vu;
    if (complement(u, w, w.size(), uv, vu) != Reversal::ok || !vu.empty()) return std::nullopt;
    return uv;
  }

  std::optional<Word> quotient_by_generator(Gen s, const Word& w) const {
    if (w.empty()) return std::nullopt;
    if (w.front() == s) return Word(w.begin() + 1, w.end());
    const Gen x[] = {s};
    Word uv, vu;
    if (complement(x, w, w.size(), uv, vu) != Reversal::ok || !vu.empty()) return std::nullopt;
    return uv;
  }

 private:
  static std::uint64_t next_id() {
    static std::atomic<std::uint64_t> counter{1};
    return counter.fetch_add(1);
  }

  void check_letter(Gen g) const {
    if (g >= rank()) throw DomainError("letter outside the generating set");
  }

  DefiningGraph graph_;
  MonoidOptions options_;
  std::uint64_t id_;
  std::vector<Word> complement_;

  mutable std::shared_mutex cache_mutex_;
  mutable std::unordered_map<Word, Word, WordHash> canonical_cache_;
  mutable std::unordered_map<std::uint64_t, Element> delta_cache_;
  mutable std::shared_mutex class_mutex_;
  mutable std::unordered_map<Word, std::set<Word>, WordHash> class_cache_;
  mutable std::once_flag spherical_once_;
  mutable SphericalFamily spherical_;
};

}  // namespace artin
