#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "bicrossed/errors.hpp"
#include "bicrossed/rational.hpp"

#include <json.hpp>

namespace bicrossed {

inline bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::int64_t nth_prime(int n) {
  std::int64_t p = 1;
  for (int i = 0; i < n; ++i) {
    do { ++p; } while (!is_prime(p));
  }
  return p;
}

/****************************************************************************

  Prime pools index the restricted products the lab can construct.  A pool
  is admissible only when the complement measures p^-f_p form a certified
  convergent sum; the certificate is carried by the pool kind:

    ExplicitFinite           finite set, sum trivially finite
    AllPrimesResidueDegree2  every prime with residue degree 2, sum 1/p^2
    SparseSummableList       an explicitly listed sparse prefix together
                             with a declared bound B >= sum 1/p, checked
                             monotonically against the partial sums

  A pool with f = 1 over all primes is deliberately unconstructible: its
  complement sum diverges and no kind certifies it.

 ****************************************************************************/
struct PrimePool {
  enum class Kind { ExplicitFinite, AllPrimesResidueDegree2, SparseSummableList };

  Kind kind = Kind::ExplicitFinite;
  std::vector<std::int64_t> primes;          // explicit list or sparse prefix
  std::map<std::int64_t, int> f_override;    // per-prime residue degree (default 1)
  Rat declared_bound = 0;                    // sparse: certified bound on sum 1/p

  static PrimePool explicit_finite(std::vector<std::int64_t> ps,
                                   std::map<std::int64_t, int> f = {}) {
    PrimePool pool;
    pool.kind = Kind::ExplicitFinite;
    pool.primes = std::move(ps);
    pool.f_override = std::move(f);
    pool.validate();
    return pool;
  }

  static PrimePool all_primes_residue_degree_2() {
    PrimePool pool;
    pool.kind = Kind::AllPrimesResidueDegree2;
    return pool;
  }

  static PrimePool sparse_summable(std::vector<std::int64_t> prefix, Rat bound) {
    PrimePool pool;
    pool.kind = Kind::SparseSummableList;
    pool.primes = std::move(prefix);
    pool.declared_bound = std::move(bound);
    pool.validate();
    return pool;
  }

  void validate() const {
    std::int64_t last = 1;
    Rat partial = 0;
    for (auto p : primes) {
      if (!is_prime(p)) fail(ErrorCode::ParseError, std::to_string(p) + " is not prime");
      if (p <= last) fail(ErrorCode::ParseError, "pool primes must be strictly increasing");
      last = p;
      partial += Rat(1, p);
      if (kind == Kind::SparseSummableList && partial > declared_bound)
        fail(ErrorCode::ParseError,
             "partial sum of 1/p exceeds the declared summability bound at p = " +
                 std::to_string(p));
    }
  }

  bool is_infinite() const { return kind != Kind::ExplicitFinite; }

  int residue_degree(std::int64_t p) const {
    if (kind == Kind::AllPrimesResidueDegree2) return 2;
    auto it = f_override.find(p);
    return it == f_override.end() ? 1 : it->second;
  }

  bool contains(std::int64_t p) const {
    if (kind == Kind::AllPrimesResidueDegree2) return is_prime(p);
    for (auto q : primes)
      if (q == p) return true;
    return false;
  }

  // Pool primes <= bound, in increasing order.  For the sparse kind only the
  // listed prefix is available; asking beyond it is an error rather than a
  // silent truncation.
  std::vector<std::int64_t> primes_up_to(std::int64_t bound) const {
    std::vector<std::int64_t> out;
    if (kind == Kind::AllPrimesResidueDegree2) {
      for (std::int64_t p = 2; p <= bound; ++p)
        if (is_prime(p)) out.push_back(p);
      return out;
    }
    if (kind == Kind::SparseSummableList && !primes.empty() && bound > primes.back())
      fail(ErrorCode::ParseError,
           "truncation " + std::to_string(bound) + " exceeds the listed sparse prefix");
    for (auto p : primes)
      if (p <= bound) out.push_back(p);
    return out;
  }

  // Smallest pool prime outside `excluded`; the free coordinate used by
  // interior witnesses.
  std::int64_t smallest_outside(const std::set<std::int64_t>& excluded) const {
    if (kind == Kind::AllPrimesResidueDegree2) {
      for (std::int64_t p = 2;; ++p)
        if (is_prime(p) && !excluded.count(p)) return p;
    }
    for (auto p : primes)
      if (!excluded.count(p)) return p;
    fail(ErrorCode::NoFreePrime,
         "every pool prime is constrained; the unit group of a finite product is open");
  }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    switch (kind) {
      case Kind::ExplicitFinite: j["kind"] = "ExplicitFinite"; break;
      case Kind::AllPrimesResidueDegree2: j["kind"] = "AllPrimesResidueDegree2"; break;
      case Kind::SparseSummableList: j["kind"] = "SparseSummableList"; break;
    }
    if (kind != Kind::AllPrimesResidueDegree2) j["primes"] = primes;
    if (!f_override.empty()) {
      nlohmann::ordered_json fo;
      for (auto& [p, f] : f_override) fo[std::to_string(p)] = f;
      j["f"] = fo;
    }
    if (kind == Kind::SparseSummableList) j["bound"] = to_string(declared_bound);
    return j;
  }

  static PrimePool from_json(const nlohmann::json& j) {
    std::string k = j.at("kind").get<std::string>();
    PrimePool pool;
    if (k == "AllPrimesResidueDegree2") return all_primes_residue_degree_2();
    if (k == "ExplicitFinite")
      pool.kind = Kind::ExplicitFinite;
    else if (k == "SparseSummableList")
      pool.kind = Kind::SparseSummableList;
    else
      fail(ErrorCode::ParseError, "unknown pool kind: " + k);
    pool.primes = j.at("primes").get<std::vector<std::int64_t>>();
    if (j.contains("f"))
      for (auto& [key, val] : j.at("f").items())
        pool.f_override[std::stoll(key)] = val.get<int>();
    if (pool.kind == Kind::SparseSummableList) {
      std::string b = j.at("bound").get<std::string>();
      auto slash = b.find('/');
      pool.declared_bound = slash == std::string::npos
                                ? Rat(Int(b))
                                : Rat(Int(b.substr(0, slash)), Int(b.substr(slash + 1)));
    }
    pool.validate();
    return pool;
  }
};

}  // namespace bicrossed
