#pragma once

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "bicrossed/errors.hpp"
#include "bicrossed/rational.hpp"
#include "bicrossed/rng.hpp"

namespace bicrossed {

/****************************************************************************

  Exact elements of the p-adic field, tracked to finite precision.

  A nonzero value is stored as p^v * u where u is the unit part, known
  modulo p^N for the tracked precision N >= 1 and with u % p != 0.  The
  precision is relative to the valuation: arithmetic never reports digits
  it does not know.  Addition that cancels j leading digits returns a
  value of precision N - j and records j in `precision_loss`.

  A value whose tracked digits all vanish is kept as "zero to precision":
  it is known to lie in p^M Z_p and nothing more.  No artificial huge
  valuation is invented for it, so unit / non-unit verdicts stay honest.

  Textual form, round-tripped bit-exactly by parse/print:

      nonzero:  "5^-2 * (3 0 1)_5"       digits least significant first
      zero:     "0 mod 5^4"              known = 0 (mod 5^4)

 ****************************************************************************/
class PAdicNumber {
 public:
  static constexpr int kDefaultPrecision = 8;

  // Zero known to lie in p^abs_prec Z_p.
  static PAdicNumber zero_to_precision(std::int64_t p, int abs_prec) {
    PAdicNumber x(p);
    x.zero_ = true;
    x.abs_prec_ = abs_prec;
    return x;
  }

  static PAdicNumber from_unit(std::int64_t p, int valuation, Int unit, int precision) {
    if (precision < 1) fail(ErrorCode::PrecisionExhausted, "unit part needs at least one digit");
    PAdicNumber x(p);
    x.zero_ = false;
    x.valuation_ = valuation;
    x.precision_ = precision;
    x.unit_ = imod(unit, ipow(p, static_cast<unsigned>(precision)));
    if (x.unit_ % p == 0)
      fail(ErrorCode::MalformedFunction, "leading digit of a unit part must be nonzero");
    return x;
  }

  // Exact embedding of a rational, truncated to `precision` digits.
  static PAdicNumber from_rational(std::int64_t p, const Rat& q,
                                   int precision = kDefaultPrecision) {
    if (q == 0) return zero_to_precision(p, precision);
    int v = padic_valuation(p, q);
    Rat u = q / rpow(p, v);
    Int num = boost::multiprecision::numerator(u);
    Int den = boost::multiprecision::denominator(u);
    Int mod = ipow(p, static_cast<unsigned>(precision));
    Int unit = imod(num * mod_inverse(imod(den, mod), mod, p), mod);
    return from_unit(p, v, unit, precision);
  }

  static PAdicNumber from_digits(std::int64_t p, int valuation,
                                 const std::vector<int>& digits) {
    Int u = 0;
    for (std::size_t i = digits.size(); i-- > 0;) {
      if (digits[i] < 0 || digits[i] >= p)
        fail(ErrorCode::ParseError, "digit out of range");
      u = u * p + digits[i];
    }
    return from_unit(p, valuation, u, static_cast<int>(digits.size()));
  }

  std::int64_t prime() const { return p_; }
  bool is_zero_to_precision() const { return zero_; }
  // Exponent M with value = 0 (mod p^M), for zero-to-precision values.
  int zero_abs_precision() const {
    require_zero();
    return abs_prec_;
  }
  int valuation() const {
    require_nonzero("valuation");
    return valuation_;
  }
  int precision() const {
    require_nonzero("precision");
    return precision_;
  }
  const Int& unit_part() const {
    require_nonzero("unit part");
    return unit_;
  }
  int precision_loss() const { return loss_; }

  // Position of the first unknown digit: value is known modulo p^abs.
  int absolute_precision() const { return zero_ ? abs_prec_ : valuation_ + precision_; }

  bool in_integers() const { return zero_ ? abs_prec_ >= 0 : valuation_ >= 0; }
  // Unit of Z_p: certified nonzero with valuation 0.
  bool is_integer_unit() const { return !zero_ && valuation_ == 0; }

  std::vector<int> digits() const {
    require_nonzero("digits");
    std::vector<int> d(static_cast<std::size_t>(precision_));
    Int u = unit_;
    for (auto& di : d) {
      di = static_cast<int>(u % p_);
      u /= p_;
    }
    return d;
  }

  PAdicNumber operator-() const {
    if (zero_) return *this;
    Int mod = ipow(p_, static_cast<unsigned>(precision_));
    return from_unit(p_, valuation_, mod - unit_, precision_);
  }

  friend PAdicNumber operator+(const PAdicNumber& a, const PAdicNumber& b) {
    return add_sub(a, b, false);
  }
  friend PAdicNumber operator-(const PAdicNumber& a, const PAdicNumber& b) {
    return add_sub(a, b, true);
  }

  friend PAdicNumber operator*(const PAdicNumber& a, const PAdicNumber& b) {
    check_primes(a, b);
    if (a.zero_ && b.zero_) {
      // both in p^M Z_p resp. p^M' Z_p, so the product is in p^(M+M') Z_p
      return zero_to_precision(a.p_, a.abs_prec_ + b.abs_prec_);
    }
    if (a.zero_) return zero_to_precision(a.p_, a.abs_prec_ + b.valuation_);
    if (b.zero_) return zero_to_precision(a.p_, b.abs_prec_ + a.valuation_);
    int prec = std::min(a.precision_, b.precision_);
    Int mod = ipow(a.p_, static_cast<unsigned>(prec));
    return from_unit(a.p_, a.valuation_ + b.valuation_, imod(a.unit_ * b.unit_, mod), prec);
  }

  friend PAdicNumber operator/(const PAdicNumber& a, const PAdicNumber& b) {
    check_primes(a, b);
    if (b.zero_)
      fail(ErrorCode::DivisionByZeroToPrecision,
           "divisor is zero to precision p^" + std::to_string(b.abs_prec_));
    if (a.zero_) return zero_to_precision(a.p_, a.abs_prec_ - b.valuation_);
    int prec = std::min(a.precision_, b.precision_);
    Int mod = ipow(a.p_, static_cast<unsigned>(prec));
    Int binv = mod_inverse(imod(b.unit_, mod), mod, a.p_);
    return from_unit(a.p_, a.valuation_ - b.valuation_, imod(a.unit_ * binv, mod), prec);
  }

  PAdicNumber inverse() const {
    return from_rational(p_, Rat(1), zero_ ? abs_prec_ : precision_) / *this;
  }

  // Agreement of the digits both sides actually track.
  bool equals_to_precision(const PAdicNumber& other) const {
    check_primes(*this, other);
    if (zero_ && other.zero_) return true;
    if (zero_) return other.valuation_ >= abs_prec_;
    if (other.zero_) return valuation_ >= other.abs_prec_;
    if (valuation_ != other.valuation_) return false;
    int prec = std::min(precision_, other.precision_);
    Int mod = ipow(p_, static_cast<unsigned>(prec));
    return imod(unit_, mod) == imod(other.unit_, mod);
  }

  // Index of the coset x + p^level Z_p inside p^-radius Z_p, i.e. the
  // integer c in [0, p^(level+radius)) with x = c p^-radius (mod p^level).
  // Returns nothing when x falls outside p^-radius Z_p.
  std::optional<Int> coset_index(int level, int radius) const {
    if (zero_) {
      if (abs_prec_ < level)
        fail(ErrorCode::PrecisionExhausted, "zero-to-precision value too coarse for level " +
                                                std::to_string(level));
      return Int(0);
    }
    if (valuation_ < -radius) return std::nullopt;
    if (valuation_ >= level) return Int(0);
    if (absolute_precision() < level)
      fail(ErrorCode::PrecisionExhausted,
           "value tracked to p^" + std::to_string(absolute_precision()) +
               " cannot be placed in a level-" + std::to_string(level) + " coset");
    Int mod = ipow(p_, static_cast<unsigned>(level + radius));
    return imod(unit_ * ipow(p_, static_cast<unsigned>(valuation_ + radius)), mod);
  }

  std::string str() const {
    std::ostringstream os;
    if (zero_) {
      os << "0 mod " << p_ << "^" << abs_prec_;
      return os.str();
    }
    os << p_ << "^" << valuation_ << " * (";
    auto d = digits();
    for (std::size_t i = 0; i < d.size(); ++i) {
      if (i) os << " ";
      os << d[i];
    }
    os << ")_" << p_;
    return os.str();
  }

  static PAdicNumber parse(const std::string& text) {
    std::istringstream is(text);
    std::string tok;
    is >> tok;
    if (tok == "0") {
      std::int64_t p;
      int m;
      char caret;
      if (!(is >> tok) || tok != "mod" || !(is >> p >> caret >> m) || caret != '^')
        fail(ErrorCode::ParseError, "expected '0 mod p^M' in: " + text);
      return zero_to_precision(p, m);
    }
    std::int64_t p;
    int v;
    char caret;
    std::istringstream head(tok);
    if (!(head >> p >> caret >> v) || caret != '^')
      fail(ErrorCode::ParseError, "expected 'p^v' in: " + text);
    if (!(is >> tok) || tok != "*") fail(ErrorCode::ParseError, "expected '*' in: " + text);
    std::string rest;
    std::getline(is, rest);
    auto open = rest.find('(');
    auto close = rest.find(')');
    if (open == std::string::npos || close == std::string::npos || close < open)
      fail(ErrorCode::ParseError, "expected digit list in: " + text);
    std::istringstream ds(rest.substr(open + 1, close - open - 1));
    std::vector<int> digs;
    int d;
    while (ds >> d) digs.push_back(d);
    if (digs.empty()) fail(ErrorCode::ParseError, "empty digit list in: " + text);
    std::string suffix = rest.substr(close + 1);
    auto us = suffix.find('_');
    if (us == std::string::npos || std::stoll(suffix.substr(us + 1)) != p)
      fail(ErrorCode::ParseError, "digit base does not match prime in: " + text);
    return from_digits(p, v, digs);
  }

  static Int mod_inverse(const Int& a, const Int& mod, std::int64_t p) {
    if (a % p == 0)
      fail(ErrorCode::NotInvertible, "not a unit modulo " + std::to_string(p));
    // extended Euclid on (a, mod); gcd is 1 because a is prime to p
    Int r0 = mod, r1 = imod(a, mod), s0 = 0, s1 = 1;
    while (r1 != 0) {
      Int q = r0 / r1;
      Int r2 = r0 - q * r1;
      r0 = r1;
      r1 = r2;
      Int s2 = s0 - q * s1;
      s0 = s1;
      s1 = s2;
    }
    return imod(s0, mod);
  }

 private:
  explicit PAdicNumber(std::int64_t p) : p_(p) {
    if (p < 2) fail(ErrorCode::ParseError, "prime must be >= 2");
  }

  static void check_primes(const PAdicNumber& a, const PAdicNumber& b) {
    if (a.p_ != b.p_)
      fail(ErrorCode::PrimeMismatch, std::to_string(a.p_) + " vs " + std::to_string(b.p_));
  }

  void require_nonzero(const char* what) const {
    if (zero_)
      fail(ErrorCode::PrecisionExhausted,
           std::string(what) + " undefined for a zero-to-precision value");
  }
  void require_zero() const {
    if (!zero_) fail(ErrorCode::ParseError, "value is not zero to precision");
  }

  static PAdicNumber add_sub(const PAdicNumber& a, const PAdicNumber& b, bool subtract) {
    check_primes(a, b);
    std::int64_t p = a.p_;
    if (a.zero_ && b.zero_) return zero_to_precision(p, std::min(a.abs_prec_, b.abs_prec_));
    if (a.zero_ || b.zero_) {
      const PAdicNumber& z = a.zero_ ? a : b;
      const PAdicNumber& x = a.zero_ ? b : a;
      if (x.valuation_ >= z.abs_prec_) return zero_to_precision(p, z.abs_prec_);
      int prec = std::min(x.precision_, z.abs_prec_ - x.valuation_);
      Int mod = ipow(p, static_cast<unsigned>(prec));
      Int u = imod(x.unit_, mod);
      if (subtract && x.is_same(b)) u = imod(-u, mod);
      return from_unit(p, x.valuation_, u, prec);
    }
    int m = std::min(a.valuation_, b.valuation_);
    int prec = std::min(a.precision_ + a.valuation_ - m, b.precision_ + b.valuation_ - m);
    Int mod = ipow(p, static_cast<unsigned>(prec));
    Int s = a.unit_ * ipow(p, static_cast<unsigned>(a.valuation_ - m));
    Int t = b.unit_ * ipow(p, static_cast<unsigned>(b.valuation_ - m));
    s = imod(subtract ? Int(s - t) : Int(s + t), mod);
    if (s == 0) return zero_to_precision(p, m + prec);
    int j = 0;
    while (s % p == 0) {
      s /= p;
      ++j;
    }
    PAdicNumber r = from_unit(p, m + j, s, prec - j);
    r.loss_ = j;
    return r;
  }

  bool is_same(const PAdicNumber& o) const { return this == &o; }

  std::int64_t p_;
  bool zero_ = false;
  int abs_prec_ = 0;  // zero case: value = 0 (mod p^abs_prec_)
  int valuation_ = 0;
  int precision_ = 1;
  int loss_ = 0;
  Int unit_ = 1;
};

enum class PAdicOp { add, sub, mul, div };

inline PAdicOp parse_padic_op(const std::string& s) {
  if (s == "add") return PAdicOp::add;
  if (s == "sub") return PAdicOp::sub;
  if (s == "mul") return PAdicOp::mul;
  if (s == "div") return PAdicOp::div;
  fail(ErrorCode::ParseError, "unknown arithmetic op: " + s);
}

inline PAdicNumber padic_arith(PAdicOp op, const PAdicNumber& a, const PAdicNumber& b) {
  switch (op) {
    case PAdicOp::add: return a + b;
    case PAdicOp::sub: return a - b;
    case PAdicOp::mul: return a * b;
    case PAdicOp::div: return a / b;
  }
  fail(ErrorCode::ParseError, "bad op");
}

// Haar sample from Z_p at the normalization measure(Z_p) = 1: digits are
// i.i.d. uniform.  Deterministic for a given seed.
inline PAdicNumber haar_sample(std::int64_t p, int precision, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<int> digs(static_cast<std::size_t>(precision));
  for (auto& d : digs) d = static_cast<int>(rng.below(static_cast<std::uint64_t>(p)));
  int j = 0;
  while (j < precision && digs[j] == 0) ++j;
  if (j == precision) return PAdicNumber::zero_to_precision(p, precision);
  std::vector<int> unit(digs.begin() + j, digs.end());
  return PAdicNumber::from_digits(p, j, unit);
}

}  // namespace bicrossed
