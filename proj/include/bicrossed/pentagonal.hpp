#pragma once

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bicrossed/errors.hpp"
#include "bicrossed/rational.hpp"
#include "bicrossed/rng.hpp"

#include <json.hpp>

namespace bicrossed {

// Bivariate polynomials over Q, exponent pairs -> coefficient.
struct Poly2 {
  std::map<std::pair<int, int>, Rat> coef;

  static Poly2 constant(Rat c) {
    Poly2 p;
    if (c != 0) p.coef[{0, 0}] = std::move(c);
    return p;
  }
  static Poly2 var_x() {
    Poly2 p;
    p.coef[{1, 0}] = 1;
    return p;
  }
  static Poly2 var_y() {
    Poly2 p;
    p.coef[{0, 1}] = 1;
    return p;
  }

  Rat eval(const Rat& x, const Rat& y) const {
    Rat out = 0;
    for (auto& [e, c] : coef) {
      Rat term = c;
      for (int i = 0; i < e.first; ++i) term *= x;
      for (int i = 0; i < e.second; ++i) term *= y;
      out += term;
    }
    return out;
  }

  Poly2 swapped_vars() const {
    Poly2 p;
    for (auto& [e, c] : coef) p.coef[{e.second, e.first}] = c;
    return p;
  }

  Poly2 dx() const {
    Poly2 p;
    for (auto& [e, c] : coef)
      if (e.first > 0) p.coef[{e.first - 1, e.second}] = c * e.first;
    return p;
  }
  Poly2 dy() const {
    Poly2 p;
    for (auto& [e, c] : coef)
      if (e.second > 0) p.coef[{e.first, e.second - 1}] = c * e.second;
    return p;
  }

  bool is_zero() const { return coef.empty(); }

  friend Poly2 operator+(const Poly2& a, const Poly2& b) {
    Poly2 p = a;
    for (auto& [e, c] : b.coef) {
      p.coef[e] += c;
      if (p.coef[e] == 0) p.coef.erase(e);
    }
    return p;
  }
  friend Poly2 operator-(const Poly2& a, const Poly2& b) { return a + (Rat(-1) * b); }
  friend Poly2 operator*(const Rat& c, const Poly2& a) {
    Poly2 p;
    if (c == 0) return p;
    for (auto& [e, v] : a.coef) p.coef[e] = c * v;
    return p;
  }
  friend Poly2 operator*(const Poly2& a, const Poly2& b) {
    Poly2 p;
    for (auto& [ea, ca] : a.coef)
      for (auto& [eb, cb] : b.coef) {
        auto key = std::make_pair(ea.first + eb.first, ea.second + eb.second);
        p.coef[key] += ca * cb;
        if (p.coef[key] == 0) p.coef.erase(key);
      }
    return p;
  }
};

// Rational function of two variables; den = 0 marks the excluded locus.
struct RatFun2 {
  Poly2 num;
  Poly2 den = Poly2::constant(Rat(1));

  std::optional<Rat> eval(const Rat& x, const Rat& y) const {
    Rat d = den.eval(x, y);
    if (d == 0) return std::nullopt;
    return num.eval(x, y) / d;
  }

  RatFun2 swapped_vars() const { return {num.swapped_vars(), den.swapped_vars()}; }

  // exact partial derivatives: (N' D - N D') / D^2
  RatFun2 dx() const { return {num.dx() * den - num * den.dx(), den * den}; }
  RatFun2 dy() const { return {num.dy() * den - num * den.dy(), den * den}; }
};

enum class MapDomain { positive_rationals, open_unit_interval, full_rationals };

inline const char* domain_name(MapDomain d) {
  switch (d) {
    case MapDomain::positive_rationals: return "positive_rationals";
    case MapDomain::open_unit_interval: return "open_unit_interval_rationals";
    case MapDomain::full_rationals: return "full_rationals_with_excluded_locus";
  }
  return "?";
}

/****************************************************************************

  Pentagonal transformations v(x, y) = (x . y, x # y) of a rational
  domain, with exact inverse v^-1(x, y) = (x <> y, x * y).  Every
  evaluation is exact; hitting a denominator zero reports the excluded
  locus instead of a value, and samplers resample rather than approximate.

 ****************************************************************************/
struct PentagonalMap {
  std::string name;
  MapDomain domain = MapDomain::full_rationals;
  std::array<RatFun2, 2> fwd;
  std::array<RatFun2, 2> inv;
  bool has_inverse = true;
  bool combinatorial = false;  // acts as a bijection of basis labels

  bool in_domain(const Rat& x) const {
    switch (domain) {
      case MapDomain::positive_rationals: return x > 0;
      case MapDomain::open_unit_interval: return x > 0 && x < 1;
      case MapDomain::full_rationals: return true;
    }
    return false;
  }
  bool in_domain(const Rat& x, const Rat& y) const { return in_domain(x) && in_domain(y); }

  std::optional<std::pair<Rat, Rat>> apply(const Rat& x, const Rat& y) const {
    auto a = fwd[0].eval(x, y);
    auto b = fwd[1].eval(x, y);
    if (!a || !b) return std::nullopt;
    return std::make_pair(*a, *b);
  }

  std::optional<std::pair<Rat, Rat>> apply_inv(const Rat& x, const Rat& y) const {
    if (!has_inverse) fail(ErrorCode::MissingInverse, name + " carries no inverse");
    auto a = inv[0].eval(x, y);
    auto b = inv[1].eval(x, y);
    if (!a || !b) return std::nullopt;
    return std::make_pair(*a, *b);
  }

  // the denominator polynomials, i.e. the excluded locus
  std::vector<const Poly2*> excluded_locus() const {
    std::vector<const Poly2*> out;
    for (auto& f : fwd) out.push_back(&f.den);
    if (has_inverse)
      for (auto& f : inv) out.push_back(&f.den);
    return out;
  }

  Rat sample_coordinate(Rng& rng) const {
    for (;;) {
      Rat x(rng.range(1, 10000), rng.range(1, 10000));
      if (domain == MapDomain::full_rationals && rng.below(2) == 0) x = -x;
      if (in_domain(x)) return x;
    }
  }

  static PentagonalMap builtin(const std::string& name);
  static PentagonalMap from_json(const nlohmann::json& j);
};

namespace penta_detail {

inline Poly2 parse_poly(const nlohmann::json& j) {
  Poly2 p;
  for (auto& term : j) {
    int ex = term.at(0).get<int>();
    int ey = term.at(1).get<int>();
    std::string c = term.at(2).is_string() ? term.at(2).get<std::string>()
                                           : std::to_string(term.at(2).get<std::int64_t>());
    auto slash = c.find('/');
    Rat coef = slash == std::string::npos ? Rat(Int(c))
                                          : Rat(Int(c.substr(0, slash)), Int(c.substr(slash + 1)));
    if (coef != 0) p.coef[{ex, ey}] += coef;
  }
  return p;
}

inline RatFun2 parse_ratfun(const nlohmann::json& j) {
  RatFun2 f;
  f.num = parse_poly(j.at("num"));
  f.den = j.contains("den") ? parse_poly(j.at("den")) : Poly2::constant(Rat(1));
  if (f.den.is_zero()) fail(ErrorCode::ParseError, "denominator is identically zero");
  return f;
}

}  // namespace penta_detail

inline PentagonalMap PentagonalMap::from_json(const nlohmann::json& j) {
  PentagonalMap m;
  m.name = j.contains("name") ? j.at("name").get<std::string>() : "user-map";
  std::string d = j.at("domain").get<std::string>();
  if (d == "positive_rationals")
    m.domain = MapDomain::positive_rationals;
  else if (d == "open_unit_interval_rationals")
    m.domain = MapDomain::open_unit_interval;
  else if (d == "full_rationals_with_excluded_locus")
    m.domain = MapDomain::full_rationals;
  else
    fail(ErrorCode::ParseError, "unknown domain tag: " + d);
  m.fwd[0] = penta_detail::parse_ratfun(j.at("forward").at(0));
  m.fwd[1] = penta_detail::parse_ratfun(j.at("forward").at(1));
  if (j.contains("inverse")) {
    m.inv[0] = penta_detail::parse_ratfun(j.at("inverse").at(0));
    m.inv[1] = penta_detail::parse_ratfun(j.at("inverse").at(1));
    m.has_inverse = true;
  } else {
    m.has_inverse = false;
  }
  return m;
}

inline PentagonalMap PentagonalMap::builtin(const std::string& name) {
  using P = Poly2;
  P x = P::var_x(), y = P::var_y(), one = P::constant(Rat(1));
  PentagonalMap m;
  m.name = name;
  if (name == "identity") {
    m.domain = MapDomain::full_rationals;
    m.fwd = {RatFun2{x, one}, RatFun2{y, one}};
    m.inv = {RatFun2{x, one}, RatFun2{y, one}};
    return m;
  }
  if (name == "axb_real" || name == "qplus") {
    m.domain = MapDomain::positive_rationals;
    m.combinatorial = (name == "qplus");
    // v(x,y) = (x y / (x + y + 1), y / (x + 1))
    m.fwd = {RatFun2{x * y, x + y + one}, RatFun2{y, x + one}};
    // v^-1(x,y) = (x (y + 1) / y, x + y + x y)
    m.inv = {RatFun2{x * (y + one), y}, RatFun2{x + y + x * y, one}};
    return m;
  }
  if (name == "unit_interval") {
    m.domain = MapDomain::open_unit_interval;
    // v(x,y) = (x y, y (1 - x) / (1 - x y))
    m.fwd = {RatFun2{x * y, one}, RatFun2{y * (one - x), one - x * y}};
    // v^-1(x,y) = (x / (x + y - x y), x + y - x y)
    m.inv = {RatFun2{x, x + y - x * y}, RatFun2{x + y - x * y, one}};
    return m;
  }
  fail(ErrorCode::UnknownName, "no built-in pentagonal map named " + name);
}

/****************************************************************************

  Pentagon identity on sampled triples, exact at every point.

  The check runs v23 . v13 . v12 = v12 . v23 (function composition, v12
  applied first) through exact rational arithmetic.  Points on an excluded
  locus are resampled.  A map whose image escapes its declared domain is
  malformed and reported as DomainViolation.

 ****************************************************************************/
template <typename E>
struct LegMap {
  // apply the two-coordinate map to legs (i, j) of a tuple
  std::function<std::optional<std::pair<E, E>>(const E&, const E&)> f;

  bool apply_legs(std::vector<E>& tuple, int i, int j) const {
    auto r = f(tuple[static_cast<std::size_t>(i)], tuple[static_cast<std::size_t>(j)]);
    if (!r) return false;
    tuple[static_cast<std::size_t>(i)] = r->first;
    tuple[static_cast<std::size_t>(j)] = r->second;
    return true;
  }
};

template <typename E>
struct PentagonSampleReport {
  bool passed = true;
  long checked = 0;
  long resampled = 0;
  std::optional<std::array<E, 3>> counterexample;
};

template <typename E>
PentagonSampleReport<E> pentagon_on_samples(const LegMap<E>& v, long n_samples,
                                            const std::function<E(Rng&)>& sampler,
                                            std::uint64_t seed) {
  PentagonSampleReport<E> rep;
  Rng rng(seed);
  long produced = 0;
  long attempts = 0;
  while (produced < n_samples) {
    if (++attempts > 100 * n_samples + 1000)
      fail(ErrorCode::DomainViolation, "almost every sample hits the excluded locus");
    std::array<E, 3> pt = {sampler(rng), sampler(rng), sampler(rng)};
    std::vector<E> lhs = {pt[0], pt[1], pt[2]};
    std::vector<E> rhs = lhs;
    bool ok_eval = v.apply_legs(lhs, 0, 1) && v.apply_legs(lhs, 0, 2) && v.apply_legs(lhs, 1, 2) &&
                   v.apply_legs(rhs, 1, 2) && v.apply_legs(rhs, 0, 1);
    if (!ok_eval) {
      ++rep.resampled;
      continue;
    }
    ++produced;
    ++rep.checked;
    if (lhs != rhs) {
      rep.passed = false;
      if (!rep.counterexample) rep.counterexample = pt;
    }
  }
  return rep;
}

struct PentagonIdentityReport {
  bool passed = true;
  long checked = 0;
  long resampled = 0;
  std::optional<std::array<Rat, 3>> counterexample;
};

inline PentagonIdentityReport pentagon_identity_check(const PentagonalMap& v, long n_samples,
                                                      std::uint64_t seed) {
  LegMap<Rat> legmap{[&](const Rat& a, const Rat& b) -> std::optional<std::pair<Rat, Rat>> {
    auto r = v.apply(a, b);
    if (r && !(v.in_domain(r->first) && v.in_domain(r->second)))
      fail(ErrorCode::DomainViolation,
           v.name + " mapped a domain point outside its domain; the map is malformed");
    return r;
  }};
  auto rep = pentagon_on_samples<Rat>(
      legmap, n_samples, [&](Rng& rng) { return v.sample_coordinate(rng); }, seed);
  return {rep.passed, rep.checked, rep.resampled, rep.counterexample};
}

/****************************************************************************

  Derived maps of a pentagonal transformation with exact inverse:

     phi(x,y)  = (x . y, y)          eta(x,y) = (x, x # y)
     psi'(x,y) = (y * x, y)          w(a,b,c,d) = (a.(b#c), d*(b.c), c, d)

  phi, psi' are pentagonal on X, w is pentagonal on X x X, and w is the
  conjugate  w = psi'_24 v_21 phi_13 v_21^-1  (composition right to left).
  All of it is checked pointwise on seeded samples, exactly.

 ****************************************************************************/
struct DerivedMapsReport {
  bool phi_pentagonal = false;
  bool psi_prime_pentagonal = false;
  bool w_pentagonal = false;
  bool conjugation_identity = false;
  bool jacobians_nonzero = false;
  long samples = 0;
};

struct DerivedMaps {
  RatFun2 phi1;        // first component of phi; second is y
  RatFun2 eta2;        // second component of eta; first is x
  RatFun2 psi_prime1;  // first component of psi'; second is y
  // w as an exact evaluator on 4-tuples
  std::function<std::optional<std::array<Rat, 4>>(const std::array<Rat, 4>&)> w;
};

inline DerivedMaps derived_maps(const PentagonalMap& v) {
  if (!v.has_inverse) fail(ErrorCode::MissingInverse, v.name + " carries no inverse");
  DerivedMaps d;
  d.phi1 = v.fwd[0];
  d.eta2 = v.fwd[1];
  d.psi_prime1 = v.inv[1].swapped_vars();  // (y * x) = second inverse component at (y, x)
  d.w = [v](const std::array<Rat, 4>& t) -> std::optional<std::array<Rat, 4>> {
    const Rat &a = t[0], &b = t[1], &c = t[2], &d4 = t[3];
    auto bc_dot = v.fwd[0].eval(b, c);
    auto bc_sharp = v.fwd[1].eval(b, c);
    if (!bc_dot || !bc_sharp) return std::nullopt;
    auto w1 = v.fwd[0].eval(a, *bc_sharp);
    auto w2 = v.inv[1].eval(d4, *bc_dot);
    if (!w1 || !w2) return std::nullopt;
    return std::array<Rat, 4>{*w1, *w2, c, d4};
  };
  return d;
}

inline DerivedMapsReport derived_maps_check(const PentagonalMap& v, long n_samples,
                                            std::uint64_t seed) {
  DerivedMaps d = derived_maps(v);
  DerivedMapsReport rep;
  rep.samples = n_samples;

  auto sampler = [&](Rng& rng) { return v.sample_coordinate(rng); };

  LegMap<Rat> phi{[&](const Rat& a, const Rat& b) -> std::optional<std::pair<Rat, Rat>> {
    auto r = d.phi1.eval(a, b);
    if (!r) return std::nullopt;
    return std::make_pair(*r, b);
  }};
  rep.phi_pentagonal =
      pentagon_on_samples<Rat>(phi, n_samples, sampler, derive_seed(seed, "phi")).passed;

  LegMap<Rat> psi{[&](const Rat& a, const Rat& b) -> std::optional<std::pair<Rat, Rat>> {
    auto r = d.psi_prime1.eval(a, b);
    if (!r) return std::nullopt;
    return std::make_pair(*r, b);
  }};
  rep.psi_prime_pentagonal =
      pentagon_on_samples<Rat>(psi, n_samples, sampler, derive_seed(seed, "psi")).passed;

  using Pair = std::pair<Rat, Rat>;
  LegMap<Pair> wmap{[&](const Pair& u, const Pair& z) -> std::optional<std::pair<Pair, Pair>> {
    auto r = d.w({u.first, u.second, z.first, z.second});
    if (!r) return std::nullopt;
    return std::make_pair(Pair{(*r)[0], (*r)[1]}, Pair{(*r)[2], (*r)[3]});
  }};
  rep.w_pentagonal = pentagon_on_samples<Pair>(
                         wmap, n_samples,
                         [&](Rng& rng) { return Pair{sampler(rng), sampler(rng)}; },
                         derive_seed(seed, "w"))
                         .passed;

  // w = psi'_24 v_21 phi_13 v_21^-1, applied right to left
  Rng rng(derive_seed(seed, "conjugation"));
  long done = 0, attempts = 0;
  bool conj_ok = true;
  while (done < n_samples) {
    if (++attempts > 100 * n_samples + 1000)
      fail(ErrorCode::DomainViolation, "almost every sample hits the excluded locus");
    std::array<Rat, 4> t = {sampler(rng), sampler(rng), sampler(rng), sampler(rng)};
    auto direct = d.w(t);
    // v_21^-1: apply v^-1 to (t2, t1), writing back (first -> t2, second -> t1)
    auto step1 = v.apply_inv(t[1], t[0]);
    if (!direct || !step1) continue;
    std::array<Rat, 4> u = {step1->second, step1->first, t[2], t[3]};
    auto step2 = d.phi1.eval(u[0], u[2]);  // phi_13
    if (!step2) continue;
    u[0] = *step2;
    auto step3 = v.apply(u[1], u[0]);  // v_21
    if (!step3) continue;
    u[1] = step3->first;
    u[0] = step3->second;
    auto step4 = d.psi_prime1.eval(u[1], u[3]);  // psi'_24
    if (!step4) continue;
    u[1] = *step4;
    ++done;
    if (u != *direct) conj_ok = false;
  }
  rep.conjugation_identity = conj_ok;

  // measure-class hypothesis at sample resolution: the Jacobians of
  // phi (x,y)->(x.y, y) and eta (x,y)->(x, x#y) are d(x.y)/dx and
  // d(x#y)/dy; both must be nonzero at the sampled points
  RatFun2 jphi = d.phi1.dx();
  RatFun2 jeta = d.eta2.dy();
  Rng jrng(derive_seed(seed, "jacobian"));
  bool jac_ok = true;
  long jdone = 0, jattempts = 0;
  while (jdone < n_samples) {
    if (++jattempts > 100 * n_samples + 1000)
      fail(ErrorCode::DomainViolation, "almost every sample hits the excluded locus");
    Rat x = sampler(jrng), y = sampler(jrng);
    auto a = jphi.eval(x, y);
    auto b = jeta.eval(x, y);
    if (!a || !b) continue;
    ++jdone;
    if (*a == 0 || *b == 0) jac_ok = false;
  }
  rep.jacobians_nonzero = jac_ok;
  return rep;
}

/****************************************************************************

  The basis-label operator of the qplus map on l2 of the positive
  rationals: Y e_(u,w) = e_(v^-1(u,w)).  A first-leg matrix-unit slice at
  (q, q') has the single entry

      <e_s, . e_r> = 1   at  r = q' / (q - q')  (only when q > q'),
                               s = q' + r + q' r,

  verified here by evaluating v^-1 exactly.  Every nonzero entry has
  r < s: the slices are strictly triangular in the rational order, and
  the adjoint of any nonzero slice is supported at r > s, hence
  orthogonal to every slice.  That is the finite witness that the slice
  span is not closed under adjoints.

 ****************************************************************************/
struct QplusSliceEntry {
  Rat q, q_prime;  // slice functional indices
  Rat r, s;        // the single nonzero entry <e_s, . e_r>
};

struct QplusSliceReport {
  std::vector<QplusSliceEntry> entries;
  bool all_strictly_triangular = true;
  bool diagonal_free = true;
  std::optional<QplusSliceEntry> witness;  // adjoint escapes the span
  bool witness_orthogonal_to_all = false;
};

inline std::vector<Rat> calkin_wilf_window(int count) {
  std::vector<Rat> out;
  std::vector<std::pair<Int, Int>> queue = {{1, 1}};
  for (std::size_t i = 0; static_cast<int>(out.size()) < count; ++i) {
    auto [a, b] = queue[i];
    out.emplace_back(a, b);
    queue.emplace_back(a, a + b);
    queue.emplace_back(a + b, b);
  }
  return out;
}

inline QplusSliceReport qplus_slice_structure(const std::vector<Rat>& window) {
  if (window.empty()) fail(ErrorCode::EmptyWindow, "need at least one window label");
  for (const Rat& w : window)
    if (w <= 0) fail(ErrorCode::ParseError, "window labels must be positive rationals");
  PentagonalMap v = PentagonalMap::builtin("qplus");
  QplusSliceReport rep;
  for (const Rat& q : window)
    for (const Rat& qp : window) {
      if (q <= qp) continue;  // no r > 0 solves the first coordinate
      Rat r = qp / (q - qp);
      auto img = v.apply_inv(qp, r);
      if (!img || img->first != q)
        fail(ErrorCode::DomainViolation, "slice solve disagrees with the inverse map");
      Rat s = img->second;
      QplusSliceEntry e{q, qp, r, s};
      if (!(r < s)) rep.all_strictly_triangular = false;
      if (r == s) rep.diagonal_free = false;
      rep.entries.push_back(e);
    }
  if (!rep.entries.empty()) {
    rep.witness = rep.entries.front();
    // adjoint of theta_{e_s} theta_{e_r}^* is supported at (r, s) with
    // r < s; every slice entry sits at (s', r') with r' < s', so the
    // positions are disjoint and the Hilbert-Schmidt pairing vanishes
    rep.witness_orthogonal_to_all = true;
    for (const auto& e : rep.entries)
      if (e.s == rep.witness->r && e.r == rep.witness->s) rep.witness_orthogonal_to_all = false;
  }
  return rep;
}

}  // namespace bicrossed
