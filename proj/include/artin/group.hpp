#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "artin/monoid.hpp"

namespace artin {

/// a^{-1} b with gcd_L(a, b) = e. Equal elements have equal fractions.
struct GroupElement {
  Element neg;
  Element pos;

  bool is_positive() const { return neg.is_identity(); }
  bool is_identity() const { return neg.is_identity() && pos.is_identity(); }
  std::size_t fraction_length() const { return neg.length() + pos.length(); }

  friend bool operator==(const GroupElement&, const GroupElement&) = default;
  friend auto operator<=>(const GroupElement& x, const GroupElement& y) {
    if (auto c = x.fraction_length() <=> y.fraction_length(); c != 0) return c;
    if (auto c = x.neg <=> y.neg; c != 0) return c;
    return x.pos <=> y.pos;
  }
};

struct GroupElementHash {
  std::size_t operator()(const GroupElement& g) const noexcept {
    return ElementHash{}(g.neg) * 31 + ElementHash{}(g.pos);
  }
};

/// m . Delta^k with Delta not a right divisor of m.
struct GarsideForm {
  Element m;
  long k = 0;
};

/// Arithmetic in the finite-type Artin group A_T, on top of the monoid of
/// the ambient graph. Elements are reduced left fractions.
class FiniteTypeGroup {
 public:
  FiniteTypeGroup(const Monoid& monoid, GenSet support) : monoid_(&monoid), support_(support) {
    if (!is_finite_type(monoid.graph(), support))
      throw DomainError("group arithmetic needs a finite-type support, got " +
                        monoid.graph().format_subset(support));
    delta_ = monoid.garside_element(support);
    for (Gen s : support.members()) {
      Element s_delta = monoid.multiply(monoid.generator(s), delta_);
      tau_.emplace(s, monoid.left_quotient(delta_, s_delta)->word().front());
    }
  }

  explicit FiniteTypeGroup(const Monoid& monoid) : FiniteTypeGroup(monoid, monoid.graph().all()) {}

  const Monoid& monoid() const { return *monoid_; }
  GenSet support() const { return support_; }
  const Element& delta() const { return delta_; }

  GroupElement identity() const { return {monoid_->identity(), monoid_->identity()}; }

  GroupElement positive(const Element& a) const {
    require_support(a);
    return {monoid_->identity(), a};
  }
  GroupElement negative(const Element& a) const {
    require_support(a);
    return {a, monoid_->identity()};
  }

  /// Cancels gcd_L(a, b) from a^{-1} b.
  GroupElement reduce(const Element& a, const Element& b) const {
    require_support(a);
    require_support(b);
    Element g = monoid_->gcd_left(a, b);
    if (g.is_identity()) return {a, b};
    return {*monoid_->left_quotient(g, a), *monoid_->left_quotient(g, b)};
  }

  GroupElement inverse(const GroupElement& x) const { return {x.pos, x.neg}; }

  /// (a^{-1} b)(c^{-1} d): with L = lcm_R(b, c) = p b = q c the product is
  /// (p a)^{-1} (q d).
  GroupElement multiply(const GroupElement& x, const GroupElement& y) const {
    if (x.pos.is_identity()) return reduce(monoid_->multiply(y.neg, x.neg), y.pos);
    if (y.neg.is_identity()) return reduce(x.neg, monoid_->multiply(x.pos, y.pos));
    const Element& b = x.pos;
    const Element& c = y.neg;
    const std::size_t bound = std::max<std::size_t>(1, delta_.length()) * std::max(b.length(), c.length());
    auto l = monoid_->lcm_right(b, c, bound);
    if (!l) throw InvariantViolation("finite-type lcm missing within the guaranteed bound");
    Element p = *monoid_->right_quotient(*l.value, b);
    Element q = *monoid_->right_quotient(*l.value, c);
    return reduce(monoid_->multiply(p, x.neg), monoid_->multiply(q, y.pos));
  }

  GroupElement multiply(std::span<const GroupElement> xs) const {
    GroupElement acc = identity();
    for (const auto& x : xs) acc = multiply(acc, x);
    return acc;
  }

  /// Delta^{-1} s Delta for s in T, extended to words letterwise.
  Element tau(const Element& a, long times = 1) const {
    long r = times % 2;
    if (r < 0) r += 2;
    if (r == 0) return a;
    Word w;
    for (Gen g : a.word()) w.push_back(tau_.at(g));
    return monoid_->element(w);
  }

  GroupElement delta_power(long k) const {
    Element d = monoid_->power(delta_, static_cast<std::size_t>(k < 0 ? -k : k));
    return k < 0 ? GroupElement{d, monoid_->identity()} : GroupElement{monoid_->identity(), d};
  }

  /// x = m . Delta^k with Delta not right-dividing m.
  GarsideForm garside_form(const GroupElement& x) const {
    // a^{-1} = c Delta^{-j} where Delta^j = a c, then move Delta^{-j} right.
    if (delta_.is_identity()) return {x.pos, 0};
    std::size_t j = 0;
    Element dj = monoid_->identity();
    while (!monoid_->left_divides(x.neg, dj)) {
      dj = monoid_->multiply(dj, delta_);
      ++j;
    }
    Element c = *monoid_->left_quotient(x.neg, dj);
    Element m = monoid_->multiply(c, tau(x.pos, static_cast<long>(j)));
    long k = -static_cast<long>(j);
    while (monoid_->right_divides(delta_, m)) {
      m = *monoid_->right_quotient(m, delta_);
      ++k;
    }
    return {m, k};
  }

  GroupElement from_garside_form(const GarsideForm& f) const {
    return multiply(positive(f.m), delta_power(f.k));
  }

  /// Membership in the special subgroup A_{T'}: both fraction parts use
  /// only letters of T'.
  bool in_special_subgroup(const GroupElement& x, GenSet sub) const {
    return monoid_->in_submonoid(x.neg, sub) && monoid_->in_submonoid(x.pos, sub);
  }

  /// Words over generators and inverses: pairs (letter, exponent sign).
  GroupElement from_letters(const std::vector<std::pair<Gen, int>>& letters) const {
    GroupElement acc = identity();
    for (auto [g, sign] : letters) {
      Element e = monoid_->generator(g);
      acc = multiply(acc, sign > 0 ? positive(e) : negative(e));
    }
    return acc;
  }

  /// Parses "s t^-1 u" style text.
  GroupElement parse(std::string_view text) const {
    std::vector<std::pair<Gen, int>> letters;
    for (auto tok : detail::split_tokens(text, " \t\r\n")) {
      if (tok == "e" && !monoid_->graph().find("e")) continue;
      int sign = 1;
      if (tok.size() > 3 && tok.ends_with("^-1")) {
        tok.resize(tok.size() - 3);
        sign = -1;
      }
      letters.emplace_back(monoid_->graph().index(tok), sign);
    }
    return from_letters(letters);
  }

  std::string format(const GroupElement& x) const {
    if (x.is_identity()) return "e";
    if (x.is_positive()) return monoid_->format(x.pos);
    std::string out = "(" + monoid_->format(x.neg) + ")^-1";
    if (!x.pos.is_identity()) out += " " + monoid_->format(x.pos);
    return out;
  }

 private:
  void require_support(const Element& a) const {
    if (!monoid_->in_submonoid(a, support_))
      throw DomainError("element " + monoid_->format(a) + " is outside " +
                        monoid_->graph().format_subset(support_));
  }

  const Monoid* monoid_;
  GenSet support_;
  Element delta_;
  std::map<Gen, Gen> tau_;
};

}  // namespace artin
