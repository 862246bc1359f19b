#include <catch2/catch_amalgamated.hpp>

#include "bicrossed/pentagonal.hpp"

using namespace bicrossed;

namespace {

// the genuinely broken map v(x, y) = (x + y, x); the shift (x + y, y) is
// the multiplicative unitary of the additive group and passes
nlohmann::json broken_map_json() {
  return nlohmann::json{
      {"name", "broken_swap"},
      {"domain", "full_rationals_with_excluded_locus"},
      {"forward",
       {{{"num", {{1, 0, "1"}, {0, 1, "1"}}}}, {{"num", {{1, 0, "1"}}}}}},
      {"inverse",
       {{{"num", {{0, 1, "1"}}}}, {{"num", {{1, 0, "1"}, {0, 1, "-1"}}}}}}};
}

}  // namespace

TEST_CASE("built-in maps evaluate to the reference values") {
  auto axb = PentagonalMap::builtin("axb_real");
  auto f = axb.apply(Rat(2), Rat(3));
  REQUIRE(f->first == 1);
  REQUIRE(f->second == 1);
  auto b = axb.apply_inv(Rat(1), Rat(1));
  REQUIRE(b->first == 2);
  REQUIRE(b->second == 3);

  auto ui = PentagonalMap::builtin("unit_interval");
  auto u = ui.apply(Rat(1, 2), Rat(1, 3));
  REQUIRE(u->first == Rat(1, 6));
  REQUIRE(u->second == Rat(1, 5));

  REQUIRE_THROWS_AS(PentagonalMap::builtin("no_such_map"), Error);
}

TEST_CASE("identity is trivially pentagonal") {
  auto rep = pentagon_identity_check(PentagonalMap::builtin("identity"), 50, 3);
  REQUIRE(rep.passed);
}

TEST_CASE("pentagon identity holds on 1000 seeded triples for every built-in") {
  for (const char* name : {"axb_real", "unit_interval", "qplus"}) {
    auto rep = pentagon_identity_check(PentagonalMap::builtin(name), 1000, 1);
    INFO(name);
    REQUIRE(rep.passed);
    REQUIRE(rep.checked == 1000);
    auto rep2 = pentagon_identity_check(PentagonalMap::builtin(name), 1000, 1);
    REQUIRE(rep2.resampled == rep.resampled);  // same seed, same stream
  }
}

TEST_CASE("forward and inverse round-trip exactly on 1000 points") {
  for (const char* name : {"axb_real", "unit_interval", "identity"}) {
    auto v = PentagonalMap::builtin(name);
    Rng rng(8);
    for (int i = 0; i < 1000; ++i) {
      Rat x = v.sample_coordinate(rng), y = v.sample_coordinate(rng);
      auto f = v.apply(x, y);
      REQUIRE(f);
      auto rb = v.apply_inv(f->first, f->second);
      REQUIRE(rb);
      REQUIRE(rb->first == x);
      REQUIRE(rb->second == y);
      auto g = v.apply_inv(x, y);
      REQUIRE(g);
      auto fb = v.apply(g->first, g->second);
      REQUIRE(fb);
      REQUIRE(fb->first == x);
      REQUIRE(fb->second == y);
    }
  }
}

TEST_CASE("forward maps stay in their domain on samples") {
  for (const char* name : {"axb_real", "unit_interval"}) {
    auto v = PentagonalMap::builtin(name);
    Rng rng(12);
    for (int i = 0; i < 500; ++i) {
      Rat x = v.sample_coordinate(rng), y = v.sample_coordinate(rng);
      auto f = v.apply(x, y);
      REQUIRE(f);
      REQUIRE(v.in_domain(f->first, f->second));
    }
  }
}

TEST_CASE("the registered broken map fails with a witness") {
  auto bm = PentagonalMap::from_json(broken_map_json());
  auto rep = pentagon_identity_check(bm, 200, 4);
  REQUIRE_FALSE(rep.passed);
  REQUIRE(rep.counterexample.has_value());
  // the witness really is a counterexample: recheck it by hand
  auto& t = *rep.counterexample;
  LegMap<Rat> leg{[&](const Rat& a, const Rat& b) { return bm.apply(a, b); }};
  std::vector<Rat> lhs = {t[0], t[1], t[2]}, rhs = lhs;
  REQUIRE(leg.apply_legs(lhs, 0, 1));
  REQUIRE(leg.apply_legs(lhs, 0, 2));
  REQUIRE(leg.apply_legs(lhs, 1, 2));
  REQUIRE(leg.apply_legs(rhs, 1, 2));
  REQUIRE(leg.apply_legs(rhs, 0, 1));
  REQUIRE(lhs != rhs);
}

TEST_CASE("a map that escapes its domain is reported as malformed") {
  nlohmann::json bad = {{"name", "escape"},
                        {"domain", "positive_rationals"},
                        {"forward", {{{"num", {{1, 0, "-1"}}}}, {{"num", {{0, 1, "1"}}}}}},
                        {"inverse", {{{"num", {{1, 0, "-1"}}}}, {{"num", {{0, 1, "1"}}}}}}};
  auto m = PentagonalMap::from_json(bad);
  REQUIRE_THROWS_MATCHES(pentagon_identity_check(m, 10, 5), Error,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::ContainsSubstring("DomainViolation")));
}

TEST_CASE("derived maps pass all four identities on 500 samples") {
  for (const char* name : {"axb_real", "unit_interval"}) {
    auto rep = derived_maps_check(PentagonalMap::builtin(name), 500, 2);
    INFO(name);
    REQUIRE(rep.phi_pentagonal);
    REQUIRE(rep.psi_prime_pentagonal);
    REQUIRE(rep.w_pentagonal);
    REQUIRE(rep.conjugation_identity);
    REQUIRE(rep.jacobians_nonzero);
  }
}

TEST_CASE("derived maps of the identity are the identity") {
  auto v = PentagonalMap::builtin("identity");
  auto d = derived_maps(v);
  Rng rng(6);
  for (int i = 0; i < 100; ++i) {
    Rat x(rng.range(1, 100), rng.range(1, 100));
    Rat y(rng.range(1, 100), rng.range(1, 100));
    REQUIRE(*d.phi1.eval(x, y) == x);
    REQUIRE(*d.eta2.eval(x, y) == y);
    REQUIRE(*d.psi_prime1.eval(x, y) == x);
    auto w = d.w({x, y, x + 1, y + 1});
    REQUIRE(*w == std::array<Rat, 4>{x, y, x + 1, y + 1});
  }
}

TEST_CASE("maps without an inverse cannot derive psi' or w") {
  nlohmann::json no_inv = {{"name", "fwd-only"},
                           {"domain", "positive_rationals"},
                           {"forward", {{{"num", {{1, 0, "1"}}}}, {{"num", {{0, 1, "1"}}}}}}};
  auto m = PentagonalMap::from_json(no_inv);
  REQUIRE_THROWS_MATCHES(derived_maps(m), Error,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::ContainsSubstring("MissingInverse")));
}

TEST_CASE("Calkin-Wilf window enumerates distinct positive rationals") {
  auto win = calkin_wilf_window(20);
  REQUIRE(win.size() == 20);
  REQUIRE(win[0] == 1);
  REQUIRE(win[1] == Rat(1, 2));
  REQUIRE(win[2] == 2);
  REQUIRE(win[3] == Rat(1, 3));
  REQUIRE(win[4] == Rat(3, 2));
  REQUIRE(win[5] == Rat(2, 3));
  REQUIRE(win[6] == 3);
  std::set<Rat> uniq(win.begin(), win.end());
  REQUIRE(uniq.size() == 20);
  for (auto& w : win) REQUIRE(w > 0);
}

TEST_CASE("qplus slices are strictly triangular with an adjoint-escaping witness") {
  auto rep = qplus_slice_structure(calkin_wilf_window(20));
  REQUIRE(rep.all_strictly_triangular);
  REQUIRE(rep.diagonal_free);
  REQUIRE(rep.entries.size() == 190);  // one entry per window pair with q > q'
  REQUIRE(rep.witness.has_value());
  REQUIRE(rep.witness_orthogonal_to_all);
  // the concrete theta_{e_s} theta_{e_r}^* shape from the first window pair
  REQUIRE(rep.witness->q == 1);
  REQUIRE(rep.witness->q_prime == Rat(1, 2));
  REQUIRE(rep.witness->r == 1);
  REQUIRE(rep.witness->s == 2);
  for (const auto& e : rep.entries) {
    REQUIRE(e.r < e.s);
    REQUIRE(e.r > 0);
    // entry solves the inverse map exactly
    auto img = PentagonalMap::builtin("qplus").apply_inv(e.q_prime, e.r);
    REQUIRE(img->first == e.q);
    REQUIRE(img->second == e.s);
  }
  REQUIRE_THROWS_MATCHES(qplus_slice_structure({}), Error,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::ContainsSubstring("EmptyWindow")));
}

TEST_CASE("polynomial calculus: exact derivatives") {
  // d/dx of x^2 y / (x + 1) at (2, 3): (2xy(x+1) - x^2 y) / (x+1)^2 = (36 - 12)/9
  Poly2 x = Poly2::var_x(), y = Poly2::var_y(), one = Poly2::constant(Rat(1));
  RatFun2 f{x * x * y, x + one};
  auto df = f.dx();
  REQUIRE(*df.eval(Rat(2), Rat(3)) == Rat(24, 9));
  auto dy = f.dy();
  REQUIRE(*dy.eval(Rat(2), Rat(3)) == Rat(4, 3));
}
