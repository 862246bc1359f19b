#include <catch2/catch_amalgamated.hpp>

#include "bicrossed/axb.hpp"
#include "bicrossed/matched_pair.hpp"

using namespace bicrossed;

namespace {

const PAdicNumber& qp(const RingDescriptor& d, const RingElement& e) {
  return detail::as_padic(e, d);
}

}  // namespace

TEST_CASE("S3 = A3 . C2 factors exactly") {
  auto mp = builtin_pair("S3");
  REQUIRE(mp.n1() == 3);
  REQUIRE(mp.n2() == 2);
  // oracle: re-multiply the factorization for every element
  for (int x = 0; x < mp.G.order(); ++x) {
    int g = mp.g1[static_cast<std::size_t>(mp.p1[static_cast<std::size_t>(x)])];
    int s = mp.g2[static_cast<std::size_t>(mp.p2[static_cast<std::size_t>(x)])];
    REQUIRE(mp.G.mul(g, s) == x);
  }
}

TEST_CASE("degenerate factorizations are rejected with the right verdicts") {
  FiniteGroup S3 = FiniteGroup::symmetric(3);
  auto idx = [&](std::vector<int> p) { return FiniteGroup::symmetric_index(3, p); };
  std::vector<int> a3 = {idx({0, 1, 2}), idx({1, 2, 0}), idx({2, 0, 1})};
  std::vector<int> t01 = {idx({0, 1, 2}), idx({1, 0, 2})};
  std::vector<int> t02 = {idx({0, 1, 2}), idx({2, 1, 0})};

  REQUIRE_THROWS_MATCHES(check_matched(S3, a3, a3), Error,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::ContainsSubstring("NontrivialIntersection")));
  REQUIRE_THROWS_MATCHES(check_matched(S3, t01, t02), Error,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::ContainsSubstring("NotExactFactorization")));
  std::vector<int> not_closed = {idx({0, 1, 2}), idx({1, 2, 0})};
  REQUIRE_THROWS_MATCHES(check_matched(S3, not_closed, t01), Error,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::ContainsSubstring("NotSubgroup")));
}

TEST_CASE("matching relations hold exhaustively on the built-in family") {
  for (const auto& name : builtin_pair_names()) {
    auto mp = builtin_pair(name);
    auto rep = verify_matching_relations(mp);
    INFO(name);
    REQUIRE(rep.ok);
    REQUIRE(rep.triples_checked ==
            static_cast<long>(mp.n2()) * mp.n1() * mp.n1());
  }
}

TEST_CASE("trivial second factor degenerates to alpha_e = id") {
  FiniteGroup C5 = FiniteGroup::cyclic(5);
  auto mp = check_matched(C5, {0, 1, 2, 3, 4}, {0}, "C5-trivial");
  for (int g = 0; g < 5; ++g) REQUIRE(mp.alpha[0][static_cast<std::size_t>(g)] == g);
  REQUIRE(verify_matching_relations(mp).ok);
}

TEST_CASE("factorization maps restrict to the factors as the spec states") {
  for (const auto& name : builtin_pair_names()) {
    auto mp = builtin_pair(name);
    for (int i = 0; i < mp.n1(); ++i) {
      int g = mp.g1[static_cast<std::size_t>(i)];
      REQUIRE(mp.p1[static_cast<std::size_t>(g)] == i);
      REQUIRE(mp.p2[static_cast<std::size_t>(g)] == 0);
    }
    for (int j = 0; j < mp.n2(); ++j) {
      int s = mp.g2[static_cast<std::size_t>(j)];
      REQUIRE(mp.p1[static_cast<std::size_t>(s)] == 0);
      REQUIRE(mp.p2[static_cast<std::size_t>(s)] == j);
    }
  }
}

TEST_CASE("interchanging the factors yields a matched pair again") {
  for (const auto& name : builtin_pair_names()) {
    auto mp = builtin_pair(name);
    auto sw = interchanged(mp);
    REQUIRE(verify_matching_relations(sw).ok);
    // the swapped factorization maps are the originals, twisted by
    // inversion: p1'(x) = p2(x^-1)^-1 and p2'(x) = p1(x^-1)^-1
    for (int x = 0; x < mp.G.order(); ++x) {
      int xi = mp.G.inv(x);
      int p1s = sw.g1[static_cast<std::size_t>(sw.p1[static_cast<std::size_t>(x)])];
      int p2s = sw.g2[static_cast<std::size_t>(sw.p2[static_cast<std::size_t>(x)])];
      REQUIRE(p1s == mp.G.inv(mp.g2[static_cast<std::size_t>(mp.p2[static_cast<std::size_t>(xi)])]));
      REQUIRE(p2s == mp.G.inv(mp.g1[static_cast<std::size_t>(mp.p1[static_cast<std::size_t>(xi)])]));
    }
  }
}

TEST_CASE("ax+b over Q_5 factors (2, 3) as g = (4,3), s = (1/2, 0)") {
  auto desc = RingDescriptor::padic_field(5);
  AxbElement e{ring_from_rational(desc, Rat(2)), ring_from_rational(desc, Rat(3))};
  auto f = axb_factorize(desc, e);
  REQUIRE(qp(desc, f.g.a).equals_to_precision(PAdicNumber::from_rational(5, Rat(4))));
  REQUIRE(qp(desc, f.g.x).equals_to_precision(PAdicNumber::from_rational(5, Rat(3))));
  REQUIRE(qp(desc, f.s.a).equals_to_precision(PAdicNumber::from_rational(5, Rat(1, 2))));
  REQUIRE(qp(desc, f.s.x).equals_to_precision(PAdicNumber::from_rational(5, Rat(0))));
  REQUIRE(axb_equal(desc, axb_mul(desc, f.g, f.s), e));
}

TEST_CASE("the identity factors trivially and (1, -1) does not factor at all") {
  auto desc = RingDescriptor::padic_field(5);
  auto id = axb_identity(desc);
  auto f = axb_factorize(desc, id);
  REQUIRE(axb_equal(desc, f.g, id));
  REQUIRE(axb_equal(desc, f.s, id));

  AxbElement bad{ring_from_rational(desc, Rat(1)), ring_from_rational(desc, Rat(-1))};
  REQUIRE_THROWS_MATCHES(axb_factorize(desc, bad), Error,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::ContainsSubstring("NotFactorizable")));
}

TEST_CASE("axb factorization round-trips whenever it succeeds") {
  auto desc = RingDescriptor::padic_field(3);
  Rng rng(31);
  int succeeded = 0;
  for (int i = 0; i < 300; ++i) {
    Rat a(rng.range(1, 40), rng.range(1, 40));
    Rat x(rng.range(-40, 40), rng.range(1, 40));
    AxbElement e{ring_from_rational(desc, a), ring_from_rational(desc, x)};
    try {
      auto f = axb_factorize(desc, e);
      ++succeeded;
      REQUIRE(axb_equal(desc, axb_mul(desc, f.g, f.s), e));
      // g in G1 by shape: g = (u, u-1); s in G2: translation 0
      auto diff = qp(desc, f.g.a) - qp(desc, f.g.x);
      REQUIRE(diff.equals_to_precision(PAdicNumber::from_rational(3, Rat(1))));
      REQUIRE(qp(desc, f.s.x).is_zero_to_precision());
    } catch (const Error& err) {
      REQUIRE(err.code() == ErrorCode::NotFactorizable);
    }
  }
  REQUIRE(succeeded > 200);
}

TEST_CASE("adelic factorization certifies or reports honestly") {
  auto pool = PrimePool::explicit_finite({2, 3, 5});
  auto desc = RingDescriptor::restricted_adeles(pool);

  // x = all ones listed explicitly: x + 1 = all twos, a certified
  // non-unit at p = 2 (the finite pool leaves nothing in the tail)
  Adele x = Adele::all_ones(pool);
  for (std::int64_t p : {2, 3, 5}) x.exceptions.emplace(p, PAdicNumber::from_rational(p, Rat(1)));
  AxbElement e{RingElement{Adele::all_ones(pool)}, RingElement{x}};
  REQUIRE_THROWS_MATCHES(axb_factorize(desc, e), Error,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::ContainsSubstring("NotFactorizable")));

  // the same x with an unlisted tail is only known integrally: x + 1 gets
  // an integral tail and no verdict is certified
  Adele terse = Adele::all_ones(pool);
  AxbElement e_terse{RingElement{Adele::all_ones(pool)}, RingElement{terse}};
  REQUIRE_THROWS_MATCHES(axb_factorize(desc, e_terse), Error,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::ContainsSubstring("TailUncertain")));

  // an integral tail cannot be certified either way
  Adele unknown{pool, {}, TailClass::integral};
  AxbElement e2{RingElement{Adele::all_ones(pool)}, RingElement{unknown}};
  REQUIRE_THROWS_MATCHES(axb_factorize(desc, e2), Error,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::ContainsSubstring("TailUncertain")));

  // x with x+1 a certified unit everywhere round-trips
  Adele good{pool, {}, TailClass::unit};
  good.exceptions.emplace(2, PAdicNumber::from_rational(2, Rat(2)));   // 2+1 = 3, unit at 2
  good.exceptions.emplace(3, PAdicNumber::from_rational(3, Rat(1)));   // 1+1 = 2, unit at 3
  good.exceptions.emplace(5, PAdicNumber::from_rational(5, Rat(3)));   // 3+1 = 4, unit at 5
  AxbElement e3{RingElement{Adele::all_ones(pool)}, RingElement{good}};
  auto f = axb_factorize(desc, e3);
  REQUIRE(axb_equal(desc, axb_mul(desc, f.g, f.s), e3));
}

TEST_CASE("the finite ax+b group never factors exactly") {
  for (std::int64_t n : {4, 5, 6}) {
    auto axb = axb_finite_group(n);
    REQUIRE(axb.G.is_subgroup(axb.g1));
    REQUIRE(axb.G.is_subgroup(axb.g2));
    REQUIRE_THROWS_MATCHES(check_matched(axb.G, axb.g1, axb.g2), Error,
                           Catch::Matchers::MessageMatches(
                               Catch::Matchers::ContainsSubstring("NotExactFactorization")));
  }
}

TEST_CASE("over a finite ring the complement is real and the pair is not matched") {
  auto z36 = RingDescriptor::finite_mod(36);
  AxbElement e{ring_from_rational(z36, Rat(5)), ring_from_rational(z36, Rat(5))};
  REQUIRE_THROWS_MATCHES(axb_factorize(z36, e), Error,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::ContainsSubstring("NotFactorizable")));
  AxbElement ok{ring_from_rational(z36, Rat(5)), ring_from_rational(z36, Rat(4))};
  auto f = axb_factorize(z36, ok);
  REQUIRE(axb_equal(z36, axb_mul(z36, f.g, f.s), ok));
  REQUIRE_THROWS_MATCHES(semiregularity_verdict(z36), Error,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::ContainsSubstring("NotMatchedPair")));
}

TEST_CASE("semi-regularity verdicts across the family") {
  REQUIRE(semiregularity_verdict(builtin_pair("S3")) == Regularity::regular);
  REQUIRE(semiregularity_verdict(RingDescriptor::padic_field(5)) ==
          Regularity::semiregular_not_regular);
  REQUIRE(semiregularity_verdict(RingDescriptor::restricted_adeles(
              PrimePool::all_primes_residue_degree_2())) == Regularity::not_semiregular);
  REQUIRE(semiregularity_verdict(RingDescriptor::restricted_adeles(
              PrimePool::explicit_finite({2, 3, 5}))) == Regularity::semiregular_not_regular);
}

TEST_CASE("finite quotient average: F2 = indicator of e gives back F1") {
  auto mp = builtin_pair("S3");
  std::vector<Rat> F1 = {Rat(2), Rat(-1), Rat(1, 3)};
  std::vector<Rat> F2 = {Rat(1), Rat(0)};
  auto qa = quotient_average(mp, F1, F2);
  REQUIRE(qa.constant_on_cosets);
  for (int i = 0; i < mp.n1(); ++i)
    REQUIRE(qa.on_cosets[static_cast<std::size_t>(i)] == F1[static_cast<std::size_t>(i)]);
}

TEST_CASE("finite quotient average counts matching translates (exhaustive oracle)") {
  auto mp = builtin_pair("S3");
  for (int target = 0; target < mp.n1(); ++target) {
    std::vector<Rat> F1(static_cast<std::size_t>(mp.n1()), Rat(0));
    F1[static_cast<std::size_t>(target)] = 1;
    std::vector<Rat> F2(static_cast<std::size_t>(mp.n2()), Rat(1));
    auto qa = quotient_average(mp, F1, F2);
    REQUIRE(qa.constant_on_cosets);
    for (int g = 0; g < mp.n1(); ++g) {
      int count = 0;  // oracle: #{s : alpha_s(g) = target}
      for (int s = 0; s < mp.n2(); ++s)
        if (mp.alpha[static_cast<std::size_t>(s)][static_cast<std::size_t>(g)] == target) ++count;
      REQUIRE(qa.on_cosets[static_cast<std::size_t>(g)] == Rat(count));
    }
  }
}

TEST_CASE("p-adic quotient average is locally constant of bounded level") {
  auto F = LocallyConstant::indicator_units(5);
  auto qa = quotient_average(5, F, F);
  REQUIRE(qa.locally_constant_verified);
  REQUIRE(qa.H.level <= 2);
  REQUIRE(qa.excluded_measure_bound <= Rat(1, 5));

  Rng rng(55);
  auto F1 = LocallyConstant::random(5, 1, 1, rng, true);
  auto F2 = LocallyConstant::random(5, 2, 0, rng, true);
  auto qa2 = quotient_average(5, F1, F2);
  REQUIRE(qa2.locally_constant_verified);
}

TEST_CASE("density identity: zero function and the reference indicator") {
  auto zero = LocallyConstant2::sample(5, 1, 0, [](const Rat&, const Rat&) { return Rat(0); });
  auto rz = density_identity_check(5, zero);
  REQUIRE(rz.lhs == 0);
  REQUIRE(rz.rhs == 0);
  REQUIRE(rz.equal);

  // indicator of units x integers at level 1
  auto F = LocallyConstant2::sample(5, 1, 0, [](const Rat& a, const Rat& x) {
    (void)x;
    return a == 0 ? Rat(0) : Rat(1);
  });
  auto r = density_identity_check(5, F);
  REQUIRE(r.lhs == Rat(4, 5));  // measure of units times measure of Z_5
  REQUIRE(r.rhs == Rat(4, 5));
  REQUIRE(r.equal);
}

TEST_CASE("density identity on random tables, p in {3, 5}, levels 1-2") {
  for (std::int64_t p : {3, 5})
    for (int level = 1; level <= 2; ++level) {
      Rng rng(derive_seed(7100, "density", static_cast<std::uint64_t>(10 * p + level)));
      for (int i = 0; i < 3; ++i) {
        auto F = LocallyConstant2::random(p, level, 1, rng, true);
        auto r = density_identity_check(p, F);
        INFO("p=" << p << " level=" << level << " i=" << i);
        REQUIRE(r.equal);
      }
    }
}

TEST_CASE("density identity rejects support touching a = 0") {
  auto bad = LocallyConstant2::sample(5, 1, 0, [](const Rat&, const Rat&) { return Rat(1); });
  REQUIRE_THROWS_MATCHES(density_identity_check(5, bad), Error,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::ContainsSubstring("MalformedFunction")));
}

TEST_CASE("oversized tables report UnsupportedLevel") {
  REQUIRE_THROWS_MATCHES(guard_table_size(7, 5, 4, 2), Error,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::ContainsSubstring("UnsupportedLevel")));
}

TEST_CASE("right invariance and the modular scaling pin the exponents") {
  Rng rng(61);
  for (std::int64_t p : {3, 5}) {
    auto F = LocallyConstant2::random(p, 1, 0, rng, true);
    Rat I = integral_units_cross_additive(F);
    // right translates leave the integral alone
    for (auto [b, y] : std::vector<std::pair<Rat, Rat>>{
             {Rat(2), Rat(3)}, {Rat(p), Rat(1)}, {Rat(1, p), Rat(2, p)}, {Rat(3, 2), Rat(-1)}}) {
      auto G = translate_right(F, b, y);
      REQUIRE(integral_units_cross_additive(G) == I);
    }
    // left translates scale by Delta(b, y) = |b|^-1 = p^{v(b)}
    for (auto [b, y] : std::vector<std::pair<Rat, Rat>>{
             {Rat(2), Rat(0)}, {Rat(p), Rat(1)}, {Rat(1, p), Rat(3)}}) {
      auto G = translate_left(F, b, y);
      REQUIRE(integral_units_cross_additive(G) == rpow(p, padic_valuation(p, b)) * I);
    }
  }
}

TEST_CASE("finite groups ingest from JSON and reject non-groups") {
  auto S3 = FiniteGroup::symmetric(3);
  auto back = FiniteGroup::from_json(nlohmann::json::parse(S3.to_json().dump()));
  REQUIRE(back.order() == 6);
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) REQUIRE(back.mul(a, b) == S3.mul(a, b));

  nlohmann::json bad = {{"order", 2}, {"table", {{0, 1}, {1, 1}}}};
  REQUIRE_THROWS_AS(FiniteGroup::from_json(bad), Error);
}

TEST_CASE("built-in generators validate") {
  REQUIRE(FiniteGroup::cyclic(12).order() == 12);
  REQUIRE(FiniteGroup::dihedral(6).order() == 12);
  REQUIRE(FiniteGroup::symmetric(4).order() == 24);
  REQUIRE(FiniteGroup::semidirect_cyclic(7, 3).order() == 21);
  REQUIRE(FiniteGroup::direct_product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(3)).order() == 6);
}
