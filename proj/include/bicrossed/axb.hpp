#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "bicrossed/errors.hpp"
#include "bicrossed/locally_constant.hpp"
#include "bicrossed/matched_pair.hpp"
#include "bicrossed/ring.hpp"

namespace bicrossed {

/****************************************************************************

  The ax+b group over a ring A: pairs (a, x) with a a unit and

      (a, x)(b, y) = (ab, x + ay),    identity (1, 0).

  Its two natural subgroups G1 = {(a, a-1)} and G2 = {(b, 0)} factor
  exactly those elements whose translation part satisfies x + 1 a unit:

      (a, x) = (x+1, x) (a (x+1)^-1, 0).

  The group is never represented by tables; the factorization is solved in
  closed form and certified element by element.

 ****************************************************************************/
struct AxbElement {
  RingElement a, x;
};

inline AxbElement axb_identity(const RingDescriptor& desc) {
  return {ring_from_rational(desc, Rat(1)), ring_from_rational(desc, Rat(0))};
}

inline AxbElement axb_mul(const RingDescriptor& desc, const AxbElement& u, const AxbElement& v) {
  return {ring_arith(desc, RingOp::mul, u.a, v.a),
          ring_arith(desc, RingOp::add, u.x, ring_arith(desc, RingOp::mul, u.a, v.x))};
}

inline bool axb_equal(const RingDescriptor& desc, const AxbElement& u, const AxbElement& v) {
  return ring_equal(desc, u.a, v.a) && ring_equal(desc, u.x, v.x);
}

struct AxbFactorization {
  AxbElement g;  // in G1: (x+1, x)
  AxbElement s;  // in G2: (a (x+1)^-1, 0)
};

inline AxbFactorization axb_factorize(const RingDescriptor& desc, const AxbElement& elem) {
  if (!ring_is_certified_unit(desc, elem.a))
    fail(ErrorCode::DescriptorMismatch, "group element needs a certified unit in the a slot");
  RingElement xp1 = ring_arith(desc, RingOp::add, elem.x, ring_from_rational(desc, Rat(1)));
  switch (desc.kind) {
    case RingDescriptor::Kind::PAdicField: {
      const auto& v = detail::as_padic(xp1, desc);
      if (v.is_zero_to_precision())
        fail(ErrorCode::NotFactorizable,
             "x + 1 is zero to precision p^" + std::to_string(v.zero_abs_precision()) +
                 "; the element sits in the measure-zero complement of G1 G2");
      break;
    }
    case RingDescriptor::Kind::RestrictedAdeles: {
      const auto& v = detail::as_adele(xp1, desc);
      switch (v.unit_verdict()) {
        case UnitVerdict::nonunit:
          fail(ErrorCode::NotFactorizable, "x + 1 is a certified non-unit");
        case UnitVerdict::uncertain:
          fail(ErrorCode::TailUncertain, "x + 1 has an integral tail; no certified verdict");
        case UnitVerdict::unit: break;
      }
      break;
    }
    case RingDescriptor::Kind::FiniteModRing: {
      if (!ring_is_certified_unit(desc, xp1))
        fail(ErrorCode::NotFactorizable,
             "x + 1 is not invertible; over a finite ring the complement of G1 G2 is nonempty");
      break;
    }
    case RingDescriptor::Kind::BqRing:
      fail(ErrorCode::NotMatchedPair, "the deformed ring enters only through its arithmetic");
  }
  AxbFactorization f{{xp1, elem.x},
                     {ring_arith(desc, RingOp::div, elem.a, xp1), ring_from_rational(desc, Rat(0))}};
  return f;
}

// The ax+b group over Z/n as an explicit table, together with its two
// natural subgroups.  Handing these to check_matched must fail with
// NotExactFactorization: x + 1 = 0 is never invertible in a finite ring,
// so G1 G2 has a genuinely nonempty complement.
struct FiniteAxbGroup {
  FiniteGroup G;
  std::vector<int> g1, g2;
};

inline FiniteAxbGroup axb_finite_group(std::int64_t n) {
  std::vector<std::pair<std::int64_t, std::int64_t>> elems;
  elems.emplace_back(1, 0);  // identity first
  for (std::int64_t a = 1; a < n; ++a) {
    if (std::gcd(a, n) != 1) continue;
    for (std::int64_t x = 0; x < n; ++x)
      if (!(a == 1 && x == 0)) elems.emplace_back(a, x);
  }
  int N = static_cast<int>(elems.size());
  std::map<std::pair<std::int64_t, std::int64_t>, int> index;
  std::vector<std::string> labels;
  for (int i = 0; i < N; ++i) {
    index[elems[static_cast<std::size_t>(i)]] = i;
    labels.push_back("(" + std::to_string(elems[static_cast<std::size_t>(i)].first) + "," +
                     std::to_string(elems[static_cast<std::size_t>(i)].second) + ")");
  }
  std::vector<int> table(static_cast<std::size_t>(N) * N);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      auto [a, x] = elems[static_cast<std::size_t>(i)];
      auto [b, y] = elems[static_cast<std::size_t>(j)];
      table[static_cast<std::size_t>(i) * N + j] = index.at({a * b % n, (x + a * y) % n});
    }
  FiniteAxbGroup out{FiniteGroup(N, std::move(table), std::move(labels)), {}, {}};
  for (int i = 0; i < N; ++i) {
    auto [a, x] = elems[static_cast<std::size_t>(i)];
    if ((x - (a - 1)) % n == 0) out.g1.push_back(i);  // (a, a-1)
    if (x == 0) out.g2.push_back(i);                  // (b, 0)
  }
  return out;
}

enum class Regularity { regular, semiregular_not_regular, not_semiregular };

inline const char* regularity_name(Regularity r) {
  switch (r) {
    case Regularity::regular: return "regular";
    case Regularity::semiregular_not_regular: return "semiregular_not_regular";
    case Regularity::not_semiregular: return "not_semiregular";
  }
  return "?";
}

// Finite exact factorizations are homeomorphic bijections of discrete
// spaces: always regular.
inline Regularity semiregularity_verdict(const MatchedPair&) { return Regularity::regular; }

// ax+b over a ring whose non-units have measure zero is never regular;
// semi-regularity is exactly openness of the unit group.
inline Regularity semiregularity_verdict(const RingDescriptor& desc) {
  switch (desc.kind) {
    case RingDescriptor::Kind::FiniteModRing:
      fail(ErrorCode::NotMatchedPair,
           "over a finite ring the complement of G1 G2 has positive measure");
    case RingDescriptor::Kind::BqRing:
      fail(ErrorCode::NotMatchedPair, "the deformed ring enters only through its arithmetic");
    case RingDescriptor::Kind::PAdicField:
    case RingDescriptor::Kind::RestrictedAdeles:
      return units_open_verdict(desc) == OpennessVerdict::open
                 ? Regularity::semiregular_not_regular
                 : Regularity::not_semiregular;
  }
  fail(ErrorCode::DescriptorMismatch, "unhandled ring kind");
}

/****************************************************************************

  Haar calculus for ax+b over Q_p.

  Right Haar measure on G in coordinates (a, x):  da/|a| dx, with the
  additive measure normalized by measure(Z_p) = 1.  The modular function
  is Delta(a, x) = |a|^-1 and both subgroups are unimodular, so the
  density identity to verify reads

      int F(a,x) da/|a| dx  =  int int F(u b, u - 1) |u| du/|u| db/|b| .

  The exponents are not taken on faith: translate_right / translate_left
  below recompute translated tables exactly, and the tests pin

      int F(z (b,y)) = int F(z)          (right invariance)
      int F((b,y) z) = p^{v(b)} int F(z) (left scaling, Delta = |b|^-1).

 ****************************************************************************/

inline void guard_table_size(std::int64_t p, int level, int radius, int arity) {
  double cells = std::pow(static_cast<double>(p), static_cast<double>(arity * (level + radius)));
  if (level + radius < 0 || cells > 4.0e6)
    fail(ErrorCode::UnsupportedLevel,
         "level " + std::to_string(level) + " with radius " + std::to_string(radius) +
             " is beyond the supported table size at p = " + std::to_string(p));
}

// integral of F(a, x) against da/|a| dx; needs F to vanish for a in the
// zero coset (compact support in the units)
inline Rat integral_units_cross_additive(const LocallyConstant2& F) {
  if (!F.vanishes_at_zero_a())
    fail(ErrorCode::MalformedFunction, "support must avoid a = 0 (zero a-coset must vanish)");
  std::size_t s = F.side();
  LocallyConstant shape(F.p, F.level, F.radius, std::vector<Rat>(s, Rat(0)));
  Rat total = 0;
  for (std::size_t ja = 1; ja < s; ++ja) {
    Rat col = 0;
    for (std::size_t jx = 0; jx < s; ++jx) col += F.at(ja, jx);
    if (col != 0) total += col * shape.multiplicative_measure(ja);
  }
  return total * rpow(F.p, -F.level);
}

// G(a, x) = F((a, x) (b, y)) = F(a b, x + a y), tabulated exactly
inline LocallyConstant2 translate_right(const LocallyConstant2& F, const Rat& b, const Rat& y) {
  if (b == 0) fail(ErrorCode::ParseError, "translation needs a unit in the a slot");
  int vb = padic_valuation(F.p, b);
  int vy = y == 0 ? 0 : padic_valuation(F.p, y);
  int level = F.level + std::max({0, -vb, -vy});
  int radius = F.radius + std::max(0, vb) + std::max(0, -vy);
  guard_table_size(F.p, level, radius, 2);
  return LocallyConstant2::sample(F.p, level, radius, [&](const Rat& a, const Rat& x) {
    return F.value_at(a * b, x + a * y);
  });
}

// G(a, x) = F((b, y) (a, x)) = F(b a, y + b x)
inline LocallyConstant2 translate_left(const LocallyConstant2& F, const Rat& b, const Rat& y) {
  if (b == 0) fail(ErrorCode::ParseError, "translation needs a unit in the a slot");
  int vb = padic_valuation(F.p, b);
  int vy = y == 0 ? 0 : padic_valuation(F.p, y);
  int level = F.level + std::max(0, -vb);
  int radius = F.radius + std::max(0, vb) + std::max(0, -vy);
  guard_table_size(F.p, level, radius, 2);
  return LocallyConstant2::sample(F.p, level, radius, [&](const Rat& a, const Rat& x) {
    return F.value_at(b * a, y + b * x);
  });
}

struct DensityIdentityResult {
  Rat lhs = 0;
  Rat rhs = 0;
  bool equal = false;
  int tail_cutoff = 0;  // geometric tail starts at this valuation of u
};

/****************************************************************************

  Exact two-route evaluation of the density identity over Q_p.

  Route 1 sums F over its own cosets against da/|a| dx.

  Route 2 parametrizes G1 x G2 by (u, b), u = x+1, and sums the integrand
  F(u b, u - 1) |u| over genuinely two-dimensional (u, b) coset pairs,
  refined until the integrand is constant on each product.  The u-range is
  1 + (x-support).  When that range includes the coset of 0 the shells
  v(u) = D, D+1, ... contribute the exact geometric tail

      sum_{j >= D} p^-j (1 - 1/p) C = p^-D C,
      C = int F(a, c) da/|a|  at the x-coset c of -1,

  because the inner b-integral is translation invariant shell by shell.

 ****************************************************************************/
inline DensityIdentityResult density_identity_check(std::int64_t p, const LocallyConstant2& F) {
  if (p != F.p) fail(ErrorCode::PrimeMismatch, "function lives over a different prime");
  guard_table_size(p, F.level, F.radius, 2);
  if (!F.vanishes_at_zero_a())
    fail(ErrorCode::MalformedFunction,
         "density identity needs compact support in the units in the a coordinate");

  const int k = F.level;
  const int m = F.radius;
  DensityIdentityResult out;
  out.lhs = integral_units_cross_additive(F);

  const int va_min = -m;
  const int va_max = k - 1;

  // inner b-sum for one refined u-coset representative
  auto b_sum = [&](const Rat& u_rep, int vu) {
    Rat acc = 0;
    for (int vb = va_min - vu; vb <= va_max - vu; ++vb) {
      int nb = std::max(k - vu, vb + 1);
      // units w modulo p^(nb - vb): cosets w p^vb + p^nb Z_p tile the shell
      Int reps = ipow(p, static_cast<unsigned>(nb - vb));
      Rat coset_measure = rpow(p, vb - nb);
      for (Int w = 1; w < reps; ++w) {
        if (w % p == 0) continue;
        Rat b = Rat(w) * rpow(p, vb);
        Rat val = F.value_at(u_rep * b, u_rep - 1);
        if (val != 0) acc += val * coset_measure;
      }
    }
    return acc;
  };

  Rat rhs = 0;
  std::size_t side = F.side();
  LocallyConstant shape(p, k, m, std::vector<Rat>(side, Rat(0)));
  bool zero_coset_seen = false;
  std::size_t zero_jx = 0;

  for (std::size_t jx = 0; jx < side; ++jx) {
    Rat x_rep = shape.coset_rep(jx);
    Rat u_rep = x_rep + 1;
    bool contains_zero = (u_rep == 0) || padic_valuation(p, u_rep) >= k;
    if (contains_zero) {
      zero_coset_seen = true;
      zero_jx = jx;
      continue;  // handled by shells + geometric tail below
    }
    int vu = padic_valuation(p, u_rep);
    // refine the u-coset (level k) far enough that u b is constant at
    // level k against the coarsest b-shell
    int mu = std::max({k, vu + 1, k - (va_min - vu)});
    Int subs = ipow(p, static_cast<unsigned>(mu - k));
    Rat sub_measure = rpow(p, vu - mu);
    Rat weight = rpow(p, -vu);  // the |u| factor of the identity
    for (Int t = 0; t < subs; ++t) {
      Rat u = u_rep + Rat(t) * rpow(p, k);
      rhs += weight * sub_measure * b_sum(u, vu);
    }
  }

  if (zero_coset_seen) {
    const int cutoff = k + 3;
    out.tail_cutoff = cutoff;
    for (int vu = k; vu < cutoff; ++vu) {
      int mu = std::max({vu + 1, k - (va_min - vu)});
      Int reps = ipow(p, static_cast<unsigned>(mu - vu));
      Rat sub_measure = rpow(p, vu - mu);
      Rat weight = rpow(p, -vu);
      for (Int w = 1; w < reps; ++w) {
        if (w % p == 0) continue;
        Rat u = Rat(w) * rpow(p, vu);
        rhs += weight * sub_measure * b_sum(u, vu);
      }
    }
    // C = int F(a, -1 coset) da/|a|
    Rat C = 0;
    for (std::size_t ja = 1; ja < side; ++ja) {
      const Rat& val = F.at(ja, zero_jx);
      if (val != 0) C += val * shape.multiplicative_measure(ja);
    }
    rhs += C * rpow(p, -cutoff);
  }

  out.rhs = rhs;
  out.equal = (out.lhs == out.rhs);
  return out;
}

/****************************************************************************

  Quotient averages: H(g) = int F1(p1(s g)) F2(s) ds.

  Finite case: an exhaustive sum over G2, computed for every x in G and
  checked to be constant on the cosets x G2, the exact form of
  "H lives on G/G2".

  ax+b over Q_p: with g = (u, u-1) and s = (b, 0),

      H(u) = int F1(b(u-1) + 1) F2(b) db/|b| ,

  reported as an exact table in the coordinate x = u - 1 on G/G2 = A.
  Both F1, F2 are locally constant with compact support in the units.
  Points where b(u-1) + 1 falls in the zero coset of F1 contribute
  nothing; their b-measure (at most p^-level) is reported as the
  measure-zero certificate for the non-factorizable locus.

 ****************************************************************************/
struct FiniteQuotientAverage {
  std::vector<Rat> on_G;      // H(x) for every x in G
  std::vector<Rat> on_cosets; // H restricted to G1 representatives
  bool constant_on_cosets = true;
};

inline FiniteQuotientAverage quotient_average(const MatchedPair& mp, const std::vector<Rat>& F1,
                                              const std::vector<Rat>& F2) {
  if (static_cast<int>(F1.size()) != mp.n1() || static_cast<int>(F2.size()) != mp.n2())
    fail(ErrorCode::MalformedFunction, "function tables must match the factor sizes");
  FiniteQuotientAverage out;
  out.on_G.assign(static_cast<std::size_t>(mp.G.order()), Rat(0));
  for (int x = 0; x < mp.G.order(); ++x) {
    Rat acc = 0;
    for (int s = 0; s < mp.n2(); ++s) {
      int sx = mp.G.mul(mp.g2[static_cast<std::size_t>(s)], x);
      acc += F1[static_cast<std::size_t>(mp.p1[static_cast<std::size_t>(sx)])] *
             F2[static_cast<std::size_t>(s)];
    }
    out.on_G[static_cast<std::size_t>(x)] = acc;
  }
  for (int i = 0; i < mp.n1(); ++i)
    out.on_cosets.push_back(out.on_G[static_cast<std::size_t>(mp.g1[static_cast<std::size_t>(i)])]);
  for (int x = 0; x < mp.G.order(); ++x)
    for (int s = 0; s < mp.n2(); ++s) {
      int xt = mp.G.mul(x, mp.g2[static_cast<std::size_t>(s)]);
      if (out.on_G[static_cast<std::size_t>(xt)] != out.on_G[static_cast<std::size_t>(x)])
        out.constant_on_cosets = false;
    }
  return out;
}

struct PAdicQuotientAverage {
  LocallyConstant H;          // table in the coordinate x = u - 1
  bool locally_constant_verified = false;
  Rat excluded_measure_bound = 0;  // largest b-mass of the non-factorizable locus seen
};

inline PAdicQuotientAverage quotient_average(std::int64_t p, const LocallyConstant& F1,
                                             const LocallyConstant& F2) {
  if (F1.p != p || F2.p != p) fail(ErrorCode::PrimeMismatch, "functions live over different primes");
  if (F1.table[0] != 0 || F2.table[0] != 0)
    fail(ErrorCode::MalformedFunction, "both functions need compact support in the units");
  const int k1 = F1.level, m1 = F1.radius;
  const int k2 = F2.level, m2 = F2.radius;

  PAdicQuotientAverage out;

  auto H_at = [&](const Rat& x) {
    // refine F2's cosets until b (x) + 1 is constant at level k1 on each
    int vx = x == 0 ? k1 + m2 + 1 : padic_valuation(p, x);
    int nb = std::max(k2, k1 - vx);
    LocallyConstant F2r = nb > k2 ? F2.refined(nb, m2) : F2;
    Rat acc = 0;
    Rat excluded = 0;
    for (std::size_t j = 1; j < F2r.table.size(); ++j) {
      const Rat& w = F2r.table[j];
      if (w == 0) continue;
      Rat b = F2r.coset_rep(j);
      Rat arg = b * x + 1;
      Rat v1 = F1.value_at(arg);
      if (v1 != 0)
        acc += v1 * w * F2r.multiplicative_measure(j);
      else if (arg == 0 || padic_valuation(p, arg) >= k1)
        excluded += F2r.multiplicative_measure(j);
    }
    if (excluded > out.excluded_measure_bound) out.excluded_measure_bound = excluded;
    return acc;
  };

  int kH = k1 + m2;
  int mH = std::max(0, m1 + k2 - 1);
  guard_table_size(p, kH, mH, 1);
  out.H = LocallyConstant::sample(p, kH, mH, H_at);

  // belt over the level bound: one level finer must agree
  LocallyConstant finer = LocallyConstant::sample(p, kH + 1, mH, H_at);
  out.locally_constant_verified = true;
  for (std::size_t j = 0; j < finer.table.size() && out.locally_constant_verified; ++j)
    if (finer.table[j] != out.H.value_at(finer.coset_rep(j)))
      out.locally_constant_verified = false;
  return out;
}

}  // namespace bicrossed
