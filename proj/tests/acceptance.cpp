// Acceptance suite: every release gate in one binary, one verdict line per
// criterion, exact comparisons wherever the quantity is exact.  Exits
// nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include "bicrossed/axb.hpp"
#include "bicrossed/locally_constant.hpp"
#include "bicrossed/pentagonal.hpp"
#include "bicrossed/ring.hpp"
#include "bicrossed/unitary.hpp"

using namespace bicrossed;

namespace {

int g_failures = 0;

void verdict(int number, const std::string& name, bool pass, const std::string& detail = "") {
  std::cout << (pass ? "[PASS] " : "[FAIL] ") << "criterion " << number << ": " << name;
  if (!detail.empty()) std::cout << "  (" << detail << ")";
  std::cout << "\n";
  if (!pass) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

const std::vector<std::string>& gate_pairs() {
  static const std::vector<std::string> pairs = {"S3", "S4", "C7C3", "D8"};
  return pairs;
}

}  // namespace

int main() {
  // 1. pentagon for the bicrossed W of every gate pair, exact, < 10 s total
  {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    for (const auto& name : gate_pairs()) ok = ok && pentagon_check(build_W(builtin_pair(name)));
    double dt = seconds_since(t0);
    verdict(1, "pentagon identity for W over {S3, S4, C7C3, D8}", ok && dt < 10.0,
            "elapsed " + std::to_string(dt) + " s");
  }

  // 2. regularity of finite pairs: dim C(W) = (|G1||G2|)^2 = dim [S Shat]
  // 3. crossed-product dimensions: dim S = |G2||G1|, dim [S Shat] = |G2||G1||G|
  {
    bool reg_ok = true, dims_ok = true;
    std::string detail2, detail3;
    for (const auto& name : gate_pairs()) {
      auto mp = builtin_pair(name);
      auto rep = regularity_report(mp);
      int n = mp.n1() * mp.n2();
      reg_ok = reg_ok && rep.dim_C == n * n && rep.dim_C == rep.dim_K &&
               rep.c_equals_sshat_dim && rep.verdict == "regular";
      auto dims = crossed_product_dims(mp);
      dims_ok = dims_ok && dims.ok;
      detail2 += name + ":" + std::to_string(rep.dim_C) + " ";
      detail3 += name + ":" + std::to_string(dims.dim_S) + "/" + std::to_string(dims.dim_SShat) + " ";
    }
    verdict(2, "dim C(W) = (|G1||G2|)^2 and dim C(W) = dim [S Shat], exact", reg_ok, detail2);
    verdict(3, "dim S = |G2||G1| and dim [S Shat] = |G2||G1||G|, exact", dims_ok, detail3);
  }

  // 4. matching relations, every triple of every gate pair
  {
    bool ok = true;
    long triples = 0;
    for (const auto& name : gate_pairs()) {
      auto rep = verify_matching_relations(builtin_pair(name));
      ok = ok && rep.ok;
      triples += rep.triples_checked;
    }
    verdict(4, "matching relations exhaustively on all gate pairs", ok,
            std::to_string(triples) + " triples");
  }

  // 5. Haar values: measure(Z_p^x) = 1 - 1/p, f = 2 complement 1/p^2
  {
    bool ok = true;
    for (std::int64_t p : {2, 3, 5, 7}) {
      ok = ok && LocallyConstant::indicator_integers(p).integral() == 1;
      ok = ok && LocallyConstant::indicator_units(p).integral() == Rat(p - 1, p);
      std::map<std::int64_t, int> f{{p, 2}};
      auto d = RingDescriptor::restricted_adeles(PrimePool::explicit_finite({p}, f));
      ok = ok && unit_density_estimate(d, p, 1, 0).closed_form == Rat(p * p - 1, p * p);
    }
    verdict(5, "p-adic Haar values 1 - 1/p and residue-degree-2 complement 1/p^2, exact", ok);
  }

  // 6. density identity over Q_5 and Q_3 at levels 1-2, >= 20 random tables
  {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    int count = 0;
    for (std::int64_t p : {5, 3})
      for (int level = 1; level <= 2; ++level) {
        Rng rng(derive_seed(2026, "acceptance-density",
                            static_cast<std::uint64_t>(100 * p + level)));
        for (int i = 0; i < 6; ++i) {
          auto F = LocallyConstant2::random(p, level, 1, rng, true);
          auto res = density_identity_check(p, F);
          ok = ok && res.equal;
          ++count;
        }
      }
    double dt = seconds_since(t0);
    verdict(6, "density identity LHS = RHS exactly on random tables", ok && count >= 20 && dt < 30.0,
            std::to_string(count) + " functions, elapsed " + std::to_string(dt) + " s");
  }

  // 7. adelic unit density at the 25th prime, 1e5 samples, fixed seed
  {
    auto t0 = std::chrono::steady_clock::now();
    auto d = RingDescriptor::restricted_adeles(PrimePool::all_primes_residue_degree_2());
    auto est = unit_density_estimate(d, nth_prime(25), 100000, 7);
    double e = static_cast<double>(est.estimate);
    double cf = static_cast<double>(est.closed_form);
    bool within = std::abs(e - cf) <= 3.0 * est.std_error;
    bool monotone = true;
    Rat prev = 2;
    for (int c = 1; c <= 25; ++c) {
      Rat cfc = unit_density_estimate(d, nth_prime(c), 1, 0).closed_form;
      if (!(cfc > 0) || !(cfc < prev)) monotone = false;
      prev = cfc;
    }
    double dt = seconds_since(t0);
    verdict(7, "unit density within 3 sigma of prod(1 - 1/p^2); closed form monotone, positive",
            within && monotone && dt < 60.0,
            "estimate " + std::to_string(e) + " vs " + std::to_string(cf) + ", sigma " +
                std::to_string(est.std_error) + ", elapsed " + std::to_string(dt) + " s");
  }

  // 8. semi-regularity verdicts + verified witnesses in 100 random neighborhoods
  {
    bool ok = true;
    for (const auto& name : gate_pairs())
      ok = ok && semiregularity_verdict(builtin_pair(name)) == Regularity::regular;
    ok = ok && semiregularity_verdict(RingDescriptor::padic_field(5)) ==
                   Regularity::semiregular_not_regular;
    auto pool = PrimePool::all_primes_residue_degree_2();
    ok = ok && semiregularity_verdict(RingDescriptor::restricted_adeles(pool)) ==
                   Regularity::not_semiregular;
    Rng rng(derive_seed(2026, "acceptance-witness"));
    int verified = 0;
    const int cases = 100;
    for (int i = 0; i < cases; ++i) {
      std::set<std::int64_t> constraint;
      Adele u = Adele::all_ones(pool);
      int k = static_cast<int>(rng.below(11));  // at most 10 constrained primes
      for (int j = 0; j < k; ++j) {
        std::int64_t p = nth_prime(1 + static_cast<int>(rng.below(25)));
        constraint.insert(p);
        int lead = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(p - 1)));
        int d2 = static_cast<int>(rng.below(static_cast<std::uint64_t>(p)));
        u.exceptions.insert_or_assign(p, PAdicNumber::from_digits(p, 0, {lead, d2, 1}));
      }
      auto res = interior_witness(pool, u, constraint);
      if (witness_verifies(u, res, constraint)) ++verified;
    }
    verdict(8, "verdicts regular / semiregular_not_regular / not_semiregular + verified witnesses",
            ok && verified == cases, std::to_string(verified) + "/100 witnesses verified");
  }

  // 9. explicit pentagonal maps: identity on 1000 seeded triples, exact
  //    round trips, and the derived conjugation identity on 500 samples
  {
    bool ok = true;
    for (const char* name : {"axb_real", "unit_interval"}) {
      auto v = PentagonalMap::builtin(name);
      auto rep = pentagon_identity_check(v, 1000, 1);
      ok = ok && rep.passed && rep.checked == 1000;
      Rng rng(9);
      for (int i = 0; i < 1000 && ok; ++i) {
        Rat x = v.sample_coordinate(rng), y = v.sample_coordinate(rng);
        auto f = v.apply(x, y);
        auto b = v.apply_inv(f->first, f->second);
        ok = ok && b && b->first == x && b->second == y;
      }
      auto dm = derived_maps_check(v, 500, 2);
      ok = ok && dm.phi_pentagonal && dm.psi_prime_pentagonal && dm.w_pentagonal &&
           dm.conjugation_identity && dm.jacobians_nonzero;
    }
    verdict(9, "axb_real and unit_interval: pentagon, round trips, w = psi'_24 v_21 phi_13 v_21^-1",
            ok);
  }

  // 10. qplus slice triangularity on a 20-element window + adjoint witness
  {
    auto rep = qplus_slice_structure(calkin_wilf_window(20));
    bool ok = rep.all_strictly_triangular && rep.diagonal_free && rep.witness.has_value() &&
              rep.witness_orthogonal_to_all;
    verdict(10, "qplus slices strictly triangular; adjoint of a slice escapes the span", ok,
            std::to_string(rep.entries.size()) + " nonzero slices");
  }

  // 11. finite 5.2 checks for the S3 pair
  {
    auto mp = builtin_pair("S3");
    auto sl = semiregularity_slice_check(mp);
    auto co = coaction_continuity_check(mp);
    bool ok = sl.equal && sl.dim_S == 6 && co.coaction_identity && co.T_adjoint_closed &&
              co.T_product_closed && co.weakly_continuous && co.strongly_continuous;
    verdict(11, "S3: slice span of W*(1xS)W equals S; T a *-algebra; weak => strong continuity",
            ok,
            "dims " + std::to_string(sl.dim_sliced) + "=" + std::to_string(sl.dim_S) + ", T " +
                std::to_string(co.dim_T) + "/" + std::to_string(co.dim_B));
  }

  // 12. B_q over Z/36 for q in {0, 1, 6}: pi_q multiplicative on 1000 pairs;
  //     bijection of the first component for a unit q over Z/7
  {
    bool ok = true;
    auto z36 = RingDescriptor::finite_mod(36);
    for (std::int64_t qv : {0, 1, 6}) {
      RingElement q = RingElement{Residue{36, qv}};
      Rng rng(derive_seed(2026, "acceptance-bq", static_cast<std::uint64_t>(qv)));
      for (int i = 0; i < 1000 && ok; ++i) {
        BqElement m, m2;
        for (int t = 0; t < 4; ++t) {
          m.entries.push_back(RingElement{Residue{36, static_cast<std::int64_t>(rng.below(36))}});
          m2.entries.push_back(RingElement{Residue{36, static_cast<std::int64_t>(rng.below(36))}});
        }
        auto [a1, a2] = pi_q(z36, q, m);
        auto [b1, b2] = pi_q(z36, q, m2);
        auto [p1, p2] = pi_q(z36, q, bq_mul(z36, q, m, m2));
        Mat2 m1 = mat2_mul(z36, a1, b1), mm2 = mat2_mul(z36, a2, b2);
        for (int t = 0; t < 4; ++t) {
          ok = ok && ring_equal(z36, m1[static_cast<std::size_t>(t)], p1[static_cast<std::size_t>(t)]);
          ok = ok && ring_equal(z36, mm2[static_cast<std::size_t>(t)], p2[static_cast<std::size_t>(t)]);
        }
      }
    }
    auto z7 = RingDescriptor::finite_mod(7);
    RingElement q3 = RingElement{Residue{7, 3}};
    std::set<std::array<std::int64_t, 4>> images;
    for (std::int64_t a = 0; a < 7; ++a)
      for (std::int64_t b = 0; b < 7; ++b)
        for (std::int64_t c = 0; c < 7; ++c)
          for (std::int64_t d = 0; d < 7; ++d) {
            BqElement m;
            m.entries = {RingElement{Residue{7, a}}, RingElement{Residue{7, b}},
                         RingElement{Residue{7, c}}, RingElement{Residue{7, d}}};
            auto [first, second] = pi_q(z7, q3, m);
            images.insert({detail::as_residue(first[0], z7).v, detail::as_residue(first[1], z7).v,
                           detail::as_residue(first[2], z7).v, detail::as_residue(first[3], z7).v});
          }
    ok = ok && images.size() == 2401;
    verdict(12, "pi_q multiplicative over Z/36 (q = 0, 1, 6); bijective first component over Z/7",
            ok, std::to_string(images.size()) + "/2401 images");
  }

  std::cout << (g_failures == 0 ? "ALL CRITERIA PASS" : "FAILURES: " + std::to_string(g_failures))
            << "\n";
  return g_failures == 0 ? 0 : 1;
}
