#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "bicrossed/errors.hpp"
#include "bicrossed/padic.hpp"
#include "bicrossed/rational.hpp"
#include "bicrossed/rng.hpp"

namespace bicrossed {

// Rational r with v_p(r) >= 0 reduced modulo p^e, exactly.
inline Int rational_mod(const Rat& r, std::int64_t p, int e) {
  if (e <= 0) return Int(0);
  Int mod = ipow(p, static_cast<unsigned>(e));
  Int num = boost::multiprecision::numerator(r);
  Int den = boost::multiprecision::denominator(r);
  return imod(num * PAdicNumber::mod_inverse(imod(den, mod), mod, p), mod);
}

/****************************************************************************

  Locally constant functions with compact support on Q_p, the class on
  which every integral in this library is a finite exact sum.

  A function of level k and support radius m is constant on cosets of
  p^k Z_p and vanishes outside p^-m Z_p.  Its table has one rational value
  per coset; coset j (0 <= j < p^(k+m)) is the coset of j * p^-m.  Haar
  measure is normalized so that Z_p has measure one; the coset of level k
  then has measure p^-k, and the multiplicative measure da/|a| gives the
  coset of j * p^-m the mass p^(val(j)-m-k).

 ****************************************************************************/
struct LocallyConstant {
  std::int64_t p = 2;
  int level = 0;
  int radius = 0;
  std::vector<Rat> table;

  LocallyConstant() = default;
  LocallyConstant(std::int64_t p_, int level_, int radius_, std::vector<Rat> table_)
      : p(p_), level(level_), radius(radius_), table(std::move(table_)) {
    validate();
  }

  void validate() const {
    if (level < 0 || radius < 0) fail(ErrorCode::MalformedFunction, "level/radius must be >= 0");
    Int want = ipow(p, static_cast<unsigned>(level + radius));
    if (Int(table.size()) != want)
      fail(ErrorCode::MalformedFunction,
           "table covers " + std::to_string(table.size()) + " cosets, expected " + want.str());
  }

  std::size_t coset_count() const { return table.size(); }
  Rat coset_rep(std::size_t j) const { return Rat(Int(j)) / rpow(p, radius); }

  // valuation of every element of coset j; only defined for j != 0
  int coset_valuation(std::size_t j) const {
    if (j == 0) fail(ErrorCode::MalformedFunction, "coset of 0 has no single valuation");
    Int jj(j);
    int v = 0;
    while (jj % p == 0) { jj /= p; ++v; }
    return v - radius;
  }

  Rat additive_measure(std::size_t) const { return rpow(p, -level); }

  Rat multiplicative_measure(std::size_t j) const {
    return rpow(p, coset_valuation(j) - level);
  }

  Rat value_at(const Rat& x) const {
    if (x != 0 && padic_valuation(p, x) < -radius) return Rat(0);
    Int c = rational_mod(x * rpow(p, radius), p, level + radius);
    return table[static_cast<std::size_t>(c)];
  }

  Rat value_at(const PAdicNumber& x) const {
    if (x.prime() != p) fail(ErrorCode::PrimeMismatch, "function and argument disagree");
    auto c = x.coset_index(level, radius);
    if (!c) return Rat(0);
    return table[static_cast<std::size_t>(*c)];
  }

  // Exact integral against additive Haar measure (measure(Z_p) = 1).
  Rat integral() const {
    Rat s = 0;
    for (const auto& v : table) s += v;
    return s * rpow(p, -level);
  }

  // Exact integral against da/|a| on the units Q_p^x.  Requires the zero
  // coset to carry the value 0, i.e. compact support away from 0.
  Rat integral_units() const {
    if (table[0] != 0)
      fail(ErrorCode::MalformedFunction,
           "multiplicative integral needs support away from 0 (zero coset must vanish)");
    Rat s = 0;
    for (std::size_t j = 1; j < table.size(); ++j)
      if (table[j] != 0) s += table[j] * multiplicative_measure(j);
    return s;
  }

  LocallyConstant refined(int new_level, int new_radius) const {
    return sample(p, new_level, new_radius, [this](const Rat& x) { return value_at(x); });
  }

  static LocallyConstant indicator_integers(std::int64_t p) {
    return LocallyConstant(p, 0, 0, {Rat(1)});
  }

  static LocallyConstant indicator_units(std::int64_t p) {
    std::vector<Rat> t(static_cast<std::size_t>(p), Rat(1));
    t[0] = 0;
    return LocallyConstant(p, 1, 0, std::move(t));
  }

  // indicator of rep + p^level Z_p
  static LocallyConstant indicator_coset(std::int64_t p, const Rat& rep, int level, int radius) {
    LocallyConstant f(p, level, radius,
                      std::vector<Rat>(static_cast<std::size_t>(ipow(p, static_cast<unsigned>(level + radius))), Rat(0)));
    Int c = rational_mod(rep * rpow(p, radius), p, level + radius);
    f.table[static_cast<std::size_t>(c)] = 1;
    return f;
  }

  static LocallyConstant sample(std::int64_t p, int level, int radius,
                                const std::function<Rat(const Rat&)>& fn) {
    std::size_t n = static_cast<std::size_t>(ipow(p, static_cast<unsigned>(level + radius)));
    std::vector<Rat> t(n);
    LocallyConstant shape(p, level, radius, std::vector<Rat>(n, Rat(0)));
    for (std::size_t j = 0; j < n; ++j) t[j] = fn(shape.coset_rep(j));
    return LocallyConstant(p, level, radius, std::move(t));
  }

  static LocallyConstant random(std::int64_t p, int level, int radius, Rng& rng,
                                bool vanish_at_zero_coset = false) {
    std::size_t n = static_cast<std::size_t>(ipow(p, static_cast<unsigned>(level + radius)));
    std::vector<Rat> t(n);
    for (auto& v : t) v = Rat(rng.range(-6, 6), rng.range(1, 4));
    if (vanish_at_zero_coset) t[0] = 0;
    return LocallyConstant(p, level, radius, std::move(t));
  }

  friend LocallyConstant operator+(const LocallyConstant& a, const LocallyConstant& b) {
    if (a.p != b.p || a.level != b.level || a.radius != b.radius)
      fail(ErrorCode::MalformedFunction, "mismatched shapes in sum");
    LocallyConstant r = a;
    for (std::size_t j = 0; j < r.table.size(); ++j) r.table[j] += b.table[j];
    return r;
  }

  friend LocallyConstant operator*(const Rat& c, const LocallyConstant& a) {
    LocallyConstant r = a;
    for (auto& v : r.table) v *= c;
    return r;
  }
};

// Two-variable locally constant function on Q_p x Q_p, same level and
// radius in both slots; coordinates are named (a, x) after the group
// coordinates they carry in the density identity.
struct LocallyConstant2 {
  std::int64_t p = 2;
  int level = 0;
  int radius = 0;
  std::vector<Rat> table;  // index = ja * side + jx

  LocallyConstant2() = default;
  LocallyConstant2(std::int64_t p_, int level_, int radius_, std::vector<Rat> table_)
      : p(p_), level(level_), radius(radius_), table(std::move(table_)) {
    validate();
  }

  std::size_t side() const {
    return static_cast<std::size_t>(ipow(p, static_cast<unsigned>(level + radius)));
  }

  void validate() const {
    if (level < 0 || radius < 0) fail(ErrorCode::MalformedFunction, "level/radius must be >= 0");
    std::size_t s = side();
    if (table.size() != s * s)
      fail(ErrorCode::MalformedFunction, "two-variable table has wrong coset count");
  }

  Rat coset_rep(std::size_t j) const { return Rat(Int(j)) / rpow(p, radius); }

  const Rat& at(std::size_t ja, std::size_t jx) const { return table[ja * side() + jx]; }
  Rat& at(std::size_t ja, std::size_t jx) { return table[ja * side() + jx]; }

  Rat value_at(const Rat& a, const Rat& x) const {
    if ((a != 0 && padic_valuation(p, a) < -radius) ||
        (x != 0 && padic_valuation(p, x) < -radius))
      return Rat(0);
    Int ca = rational_mod(a * rpow(p, radius), p, level + radius);
    Int cx = rational_mod(x * rpow(p, radius), p, level + radius);
    return at(static_cast<std::size_t>(ca), static_cast<std::size_t>(cx));
  }

  // product additive Haar integral over Q_p x Q_p
  Rat integral() const {
    Rat s = 0;
    for (const auto& v : table) s += v;
    return s * rpow(p, -2 * level);
  }

  bool vanishes_at_zero_a() const {
    std::size_t s = side();
    for (std::size_t jx = 0; jx < s; ++jx)
      if (at(0, jx) != 0) return false;
    return true;
  }

  static LocallyConstant2 sample(std::int64_t p, int level, int radius,
                                 const std::function<Rat(const Rat&, const Rat&)>& fn) {
    LocallyConstant2 f;
    f.p = p;
    f.level = level;
    f.radius = radius;
    std::size_t s = static_cast<std::size_t>(ipow(p, static_cast<unsigned>(level + radius)));
    f.table.assign(s * s, Rat(0));
    for (std::size_t ja = 0; ja < s; ++ja)
      for (std::size_t jx = 0; jx < s; ++jx)
        f.at(ja, jx) = fn(f.coset_rep(ja), f.coset_rep(jx));
    f.validate();
    return f;
  }

  static LocallyConstant2 random(std::int64_t p, int level, int radius, Rng& rng,
                                 bool vanish_at_zero_a = true) {
    LocallyConstant2 f;
    f.p = p;
    f.level = level;
    f.radius = radius;
    std::size_t s = static_cast<std::size_t>(ipow(p, static_cast<unsigned>(level + radius)));
    f.table.assign(s * s, Rat(0));
    for (std::size_t ja = vanish_at_zero_a ? 1 : 0; ja < s; ++ja)
      for (std::size_t jx = 0; jx < s; ++jx)
        f.at(ja, jx) = Rat(rng.range(-6, 6), rng.range(1, 4));
    f.validate();
    return f;
  }
};

}  // namespace bicrossed
