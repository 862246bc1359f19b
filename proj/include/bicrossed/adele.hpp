#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>

#include "bicrossed/errors.hpp"
#include "bicrossed/padic.hpp"
#include "bicrossed/primes.hpp"

#include <json.hpp>

namespace bicrossed {

/****************************************************************************

  Elements of a restricted product of p-adic fields, represented by a
  finite exceptional map plus a tail class.

    unit_tail      every non-exceptional component is exactly 1
    integral_tail  non-exceptional components are unspecified elements
                   of Z_p (a certificate, not a value)

  The unit verdict follows the lab's convention for these rings: an adele
  is accepted as a unit only when every component is a unit of Z_p, i.e.
  has valuation 0.  Verdicts are only ever CERTIFIED: an integral tail
  never produces a unit or non-unit claim, it produces "uncertain".

 ****************************************************************************/
enum class TailClass { unit, integral };
enum class UnitVerdict { unit, nonunit, uncertain };

struct Adele {
  PrimePool pool;
  std::map<std::int64_t, PAdicNumber> exceptions;
  TailClass tail = TailClass::unit;

  static Adele all_ones(const PrimePool& pool) { return Adele{pool, {}, TailClass::unit}; }

  void validate() const {
    for (auto& [p, comp] : exceptions) {
      if (!pool.contains(p))
        fail(ErrorCode::DescriptorMismatch,
             "exceptional prime " + std::to_string(p) + " is not in the pool");
      if (comp.prime() != p)
        fail(ErrorCode::DescriptorMismatch, "component prime disagrees with its key");
      if (tail == TailClass::integral && !comp.in_integers() &&
          !comp.is_zero_to_precision()) {
        // fine: explicit components may be non-integral; the restricted
        // product only constrains the unlisted tail
      }
    }
  }

  bool has_exception(std::int64_t p) const { return exceptions.count(p) != 0; }

  // The component at p; exact 1 for the unit tail.  Calling this for a
  // non-exceptional prime of an integral tail is a logic error guarded by
  // the caller (the value is unknown there).
  PAdicNumber component(std::int64_t p, int precision = PAdicNumber::kDefaultPrecision) const {
    auto it = exceptions.find(p);
    if (it != exceptions.end()) return it->second;
    if (tail == TailClass::integral)
      fail(ErrorCode::TailUncertain,
           "component at p = " + std::to_string(p) + " is not tracked by an integral tail");
    return PAdicNumber::from_rational(p, Rat(1), precision);
  }

  static UnitVerdict component_verdict(const PAdicNumber& c) {
    if (c.is_zero_to_precision())
      return c.zero_abs_precision() >= 1 ? UnitVerdict::nonunit : UnitVerdict::uncertain;
    return c.valuation() == 0 ? UnitVerdict::unit : UnitVerdict::nonunit;
  }

  // a finite pool with every prime listed has nothing left in the tail
  bool tail_vacuous() const {
    return !pool.is_infinite() && exceptions.size() == pool.primes.size();
  }

  UnitVerdict unit_verdict() const {
    if (tail == TailClass::integral && !tail_vacuous()) return UnitVerdict::uncertain;
    bool uncertain = false;
    for (auto& [p, comp] : exceptions) {
      switch (component_verdict(comp)) {
        case UnitVerdict::nonunit: return UnitVerdict::nonunit;
        case UnitVerdict::uncertain: uncertain = true; break;
        case UnitVerdict::unit: break;
      }
    }
    return uncertain ? UnitVerdict::uncertain : UnitVerdict::unit;
  }

  bool certified_unit() const { return unit_verdict() == UnitVerdict::unit; }
  bool certified_nonunit() const { return unit_verdict() == UnitVerdict::nonunit; }

  Adele inverse() const {
    switch (unit_verdict()) {
      case UnitVerdict::uncertain:
        fail(ErrorCode::TailUncertain, "invertibility of an integral tail is not certified");
      case UnitVerdict::nonunit:
        fail(ErrorCode::NotInvertible, "certified non-unit component present");
      case UnitVerdict::unit: break;
    }
    Adele r{pool, {}, TailClass::unit};
    for (auto& [p, comp] : exceptions) r.exceptions.emplace(p, comp.inverse());
    return r;
  }

  // every component is pinned down: either the tail is the constant 1 or
  // the finite pool is fully enumerated
  bool fully_known() const { return tail == TailClass::unit || tail_vacuous(); }

  bool equals_to_precision(const Adele& other) const {
    std::set<std::int64_t> keys;
    for (auto& [p, c] : exceptions) keys.insert(p);
    for (auto& [p, c] : other.exceptions) keys.insert(p);
    if (fully_known() && other.fully_known()) {
      for (auto p : keys)
        if (!component(p).equals_to_precision(other.component(p))) return false;
      return true;
    }
    if (tail != other.tail) return false;
    for (auto p : keys) {
      bool ha = has_exception(p), hb = other.has_exception(p);
      if (!ha || !hb) return false;  // untracked against tracked: not certified equal
      if (!component(p).equals_to_precision(other.component(p))) return false;
    }
    return true;
  }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    nlohmann::ordered_json ex = nlohmann::ordered_json::object();
    for (auto& [p, comp] : exceptions) ex[std::to_string(p)] = comp.str();
    j["exceptions"] = ex;
    j["tail"] = tail == TailClass::unit ? "unit" : "integral";
    return j;
  }

  static Adele from_json(const PrimePool& pool, const nlohmann::json& j) {
    Adele a{pool, {}, TailClass::unit};
    std::string t = j.at("tail").get<std::string>();
    if (t == "unit")
      a.tail = TailClass::unit;
    else if (t == "integral")
      a.tail = TailClass::integral;
    else
      fail(ErrorCode::ParseError, "tail must be \"unit\" or \"integral\"");
    if (j.contains("exceptions"))
      for (auto& [key, val] : j.at("exceptions").items()) {
        std::int64_t p = std::stoll(key);
        a.exceptions.emplace(p, PAdicNumber::parse(val.get<std::string>()));
      }
    a.validate();
    return a;
  }
};

namespace detail {

// known + unknown-integral at one prime: the digits below 0 survive, the
// rest are lost.  Returns nothing when the sum is only known to be integral.
inline std::optional<PAdicNumber> add_unknown_integral(const PAdicNumber& x) {
  if (x.is_zero_to_precision()) {
    if (x.zero_abs_precision() >= 0) return std::nullopt;  // absorbed
    fail(ErrorCode::TailUncertain, "cannot add an unknown integral to this component");
  }
  if (x.valuation() >= 0) return std::nullopt;  // absorbed into the integral tail
  int keep = std::min(x.precision(), -x.valuation());
  Int mod = ipow(x.prime(), static_cast<unsigned>(keep));
  return PAdicNumber::from_unit(x.prime(), x.valuation(), imod(x.unit_part(), mod), keep);
}

}  // namespace detail

inline Adele adele_add_sub(const Adele& a, const Adele& b, bool subtract) {
  Adele r{a.pool, {}, TailClass::integral};  // additive tails are never certified units
  std::set<std::int64_t> keys;
  for (auto& [p, c] : a.exceptions) keys.insert(p);
  for (auto& [p, c] : b.exceptions) keys.insert(p);
  for (auto p : keys) {
    bool ka = a.has_exception(p) || a.tail == TailClass::unit;
    bool kb = b.has_exception(p) || b.tail == TailClass::unit;
    if (ka && kb) {
      PAdicNumber s = subtract ? a.component(p) - b.component(p) : a.component(p) + b.component(p);
      r.exceptions.emplace(p, s);
    } else {
      const PAdicNumber& known = ka ? a.component(p) : b.component(p);
      PAdicNumber signed_known =
          (subtract && !ka) ? -known : known;  // unknown - known keeps only low digits anyway
      auto kept = detail::add_unknown_integral(signed_known);
      if (kept) r.exceptions.emplace(p, *kept);
    }
  }
  return r;
}

inline Adele adele_mul(const Adele& a, const Adele& b) {
  TailClass tail = (a.tail == TailClass::unit && b.tail == TailClass::unit)
                       ? TailClass::unit
                       : TailClass::integral;
  Adele r{a.pool, {}, tail};
  std::set<std::int64_t> keys;
  for (auto& [p, c] : a.exceptions) keys.insert(p);
  for (auto& [p, c] : b.exceptions) keys.insert(p);
  for (auto p : keys) {
    bool ka = a.has_exception(p) || a.tail == TailClass::unit;
    bool kb = b.has_exception(p) || b.tail == TailClass::unit;
    if (ka && kb) {
      r.exceptions.emplace(p, a.component(p) * b.component(p));
    } else {
      // known * unknown-integral: certifiable only when the known factor is
      // integral (product then drops into the integral tail)
      const PAdicNumber& known = ka ? a.component(p) : b.component(p);
      if (!known.in_integers())
        fail(ErrorCode::TailUncertain,
             "product with an untracked component cannot be certified at p = " +
                 std::to_string(p));
    }
  }
  return r;
}

inline Adele adele_div(const Adele& a, const Adele& b) { return adele_mul(a, b.inverse()); }

/****************************************************************************

  Interior witness: the computational content of "the unit group has empty
  interior".  A basic neighborhood of a unit u fixes the components at a
  finite constraint set; for an infinite pool there is always a pool prime
  left free, and setting that coordinate to the value p produces an
  element of the neighborhood that is certifiably not a unit.

 ****************************************************************************/
struct WitnessResult {
  Adele witness;
  std::int64_t free_prime;
};

inline WitnessResult interior_witness(const PrimePool& pool, const Adele& u,
                                      const std::set<std::int64_t>& constraint,
                                      int precision = PAdicNumber::kDefaultPrecision) {
  if (!u.certified_unit())
    fail(ErrorCode::NotInvertible, "witness base point must be a certified unit");
  for (auto p : constraint)
    if (!pool.contains(p))
      fail(ErrorCode::DescriptorMismatch,
           "constrained prime " + std::to_string(p) + " is not in the pool");
  std::int64_t free_p = pool.smallest_outside(constraint);
  Adele w{pool, {}, TailClass::unit};
  for (auto p : constraint)
    if (u.has_exception(p)) w.exceptions.emplace(p, u.component(p));
  w.exceptions.emplace(free_p, PAdicNumber::from_rational(free_p, Rat(free_p), precision));
  return WitnessResult{std::move(w), free_p};
}

inline bool witness_verifies(const Adele& u, const WitnessResult& res,
                             const std::set<std::int64_t>& constraint) {
  if (!res.witness.certified_nonunit()) return false;
  for (auto p : constraint)
    if (!res.witness.component(p).equals_to_precision(u.component(p))) return false;
  return true;
}

}  // namespace bicrossed
