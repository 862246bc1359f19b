#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace bicrossed {

// All exact arithmetic in the library runs over these two types.  Every
// verdict that matters (rank equality, measure value, pentagon identity)
// is an exact comparison of Rat values; floating point appears only in
// Monte Carlo summaries (estimates, standard errors).
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int ipow(Int base, unsigned e) {
  Int r = 1;
  while (e) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

inline Int ipow(std::int64_t base, unsigned e) { return ipow(Int(base), e); }

// p^k with k possibly negative.
inline Rat rpow(std::int64_t base, int e) {
  if (e >= 0) return Rat(ipow(base, static_cast<unsigned>(e)));
  return Rat(Int(1), ipow(base, static_cast<unsigned>(-e)));
}

inline std::string to_string(const Rat& r) { return r.str(); }

// Non-negative remainder of a cpp_int modulo m > 0.
inline Int imod(const Int& a, const Int& m) {
  Int r = a % m;
  if (r < 0) r += m;
  return r;
}

// p-adic valuation of a nonzero rational q: largest e with p^e | q.
inline int padic_valuation(std::int64_t p, const Rat& q) {
  Int num = boost::multiprecision::numerator(q);
  Int den = boost::multiprecision::denominator(q);
  int v = 0;
  while (num % p == 0) { num /= p; ++v; }
  while (den % p == 0) { den /= p; --v; }
  return v;
}

}  // namespace bicrossed
