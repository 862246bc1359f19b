#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "bicrossed/errors.hpp"
#include "bicrossed/finite_group.hpp"

namespace bicrossed {

/****************************************************************************

  Exact factorizations G = G1 G2 of a finite group, with the factorization
  maps and the two mutual actions.

  Conventions (kept throughout the lab): g, h range over G1, s, t over G2,

      x = p1(x) p2(x),   alpha_s(g) = p1(s g),   beta_g(s) = p2(s g),

  so alpha is a left action of G2 on the set G1 and beta a right action of
  G1 on the set G2, both fixing the identity.  In the finite case "the
  complement has measure zero" means the complement is empty: the product
  map G1 x G2 -> G must be a bijection.

 ****************************************************************************/
struct MatchedPair {
  FiniteGroup G;
  std::vector<int> g1, g2;  // element ids in G; position 0 is the identity
  std::vector<int> p1, p2;  // G element id -> position in g1 / g2
  std::vector<std::vector<int>> alpha;  // [s-pos][g-pos] -> g-pos
  std::vector<std::vector<int>> beta;   // [g-pos][s-pos] -> s-pos
  std::string label;

  int n1() const { return static_cast<int>(g1.size()); }
  int n2() const { return static_cast<int>(g2.size()); }

  // products and inverses inside the factors, by position
  int mul1(int a, int b) const {
    return p1[static_cast<std::size_t>(G.mul(g1[static_cast<std::size_t>(a)], g1[static_cast<std::size_t>(b)]))];
  }
  int mul2(int a, int b) const {
    return p2[static_cast<std::size_t>(G.mul(g2[static_cast<std::size_t>(a)], g2[static_cast<std::size_t>(b)]))];
  }
  int inv2(int a) const { return p2[static_cast<std::size_t>(G.inv(g2[static_cast<std::size_t>(a)]))]; }
};

inline MatchedPair check_matched(const FiniteGroup& G, std::vector<int> g1, std::vector<int> g2,
                                 std::string label = "pair") {
  auto id_first = [&](std::vector<int>& v) {
    auto it = std::find(v.begin(), v.end(), G.identity());
    if (it != v.end()) std::iter_swap(v.begin(), it);
  };
  id_first(g1);
  id_first(g2);
  if (!G.is_subgroup(g1)) fail(ErrorCode::NotSubgroup, "first factor is not a subgroup");
  if (!G.is_subgroup(g2)) fail(ErrorCode::NotSubgroup, "second factor is not a subgroup");
  for (int a : g1)
    for (int b : g2)
      if (a == b && a != G.identity())
        fail(ErrorCode::NontrivialIntersection, "shared element " + G.label(a));
  if (static_cast<int>(g1.size() * g2.size()) != G.order())
    fail(ErrorCode::NotExactFactorization,
         std::to_string(g1.size() * g2.size()) + " products cannot cover a group of order " +
             std::to_string(G.order()));

  MatchedPair mp{G, g1, g2, {}, {}, {}, {}, std::move(label)};
  mp.p1.assign(static_cast<std::size_t>(G.order()), -1);
  mp.p2.assign(static_cast<std::size_t>(G.order()), -1);
  for (std::size_t i = 0; i < g1.size(); ++i)
    for (std::size_t j = 0; j < g2.size(); ++j) {
      int x = G.mul(g1[i], g2[j]);
      if (mp.p1[static_cast<std::size_t>(x)] != -1)
        fail(ErrorCode::NotExactFactorization, "product map collides at " + G.label(x));
      mp.p1[static_cast<std::size_t>(x)] = static_cast<int>(i);
      mp.p2[static_cast<std::size_t>(x)] = static_cast<int>(j);
    }
  for (int x = 0; x < G.order(); ++x)
    if (mp.p1[static_cast<std::size_t>(x)] == -1)
      fail(ErrorCode::NotExactFactorization, G.label(x) + " is not a product g1 g2");

  mp.alpha.assign(g2.size(), std::vector<int>(g1.size()));
  mp.beta.assign(g1.size(), std::vector<int>(g2.size()));
  for (std::size_t j = 0; j < g2.size(); ++j)
    for (std::size_t i = 0; i < g1.size(); ++i) {
      int sg = G.mul(g2[j], g1[i]);
      mp.alpha[j][i] = mp.p1[static_cast<std::size_t>(sg)];
      mp.beta[i][j] = mp.p2[static_cast<std::size_t>(sg)];
    }
  return mp;
}

struct MatchingViolation {
  int s, g, h;
  std::string identity;
};

struct MatchingReport {
  bool ok = true;
  long triples_checked = 0;
  std::vector<MatchingViolation> violations;
};

// Exhaustive check of the two cocycle-free matching identities
//   alpha_s(g h) = alpha_s(g) alpha_{beta_g(s)}(h)
//   beta_{g h}(s) = beta_h(beta_g(s))
inline MatchingReport verify_matching_relations(const MatchedPair& mp) {
  MatchingReport rep;
  for (int s = 0; s < mp.n2(); ++s)
    for (int g = 0; g < mp.n1(); ++g)
      for (int h = 0; h < mp.n1(); ++h) {
        ++rep.triples_checked;
        int gh = mp.mul1(g, h);
        int lhs_a = mp.alpha[static_cast<std::size_t>(s)][static_cast<std::size_t>(gh)];
        int bs = mp.beta[static_cast<std::size_t>(g)][static_cast<std::size_t>(s)];
        int rhs_a = mp.mul1(mp.alpha[static_cast<std::size_t>(s)][static_cast<std::size_t>(g)],
                            mp.alpha[static_cast<std::size_t>(bs)][static_cast<std::size_t>(h)]);
        if (lhs_a != rhs_a) {
          rep.ok = false;
          rep.violations.push_back({s, g, h, "alpha_s(gh) = alpha_s(g) alpha_{beta_g(s)}(h)"});
        }
        int lhs_b = mp.beta[static_cast<std::size_t>(gh)][static_cast<std::size_t>(s)];
        int rhs_b = mp.beta[static_cast<std::size_t>(h)][static_cast<std::size_t>(bs)];
        if (lhs_b != rhs_b) {
          rep.ok = false;
          rep.violations.push_back({s, g, h, "beta_{gh}(s) = beta_h(beta_g(s))"});
        }
      }
  return rep;
}

inline MatchedPair interchanged(const MatchedPair& mp) {
  return check_matched(mp.G, mp.g2, mp.g1, mp.label + "-interchanged");
}

/****************************************************************************

  The built-in family of exact factorizations.

 ****************************************************************************/
inline MatchedPair builtin_pair(const std::string& name) {
  if (name == "S3") {
    FiniteGroup G = FiniteGroup::symmetric(3);
    auto idx = [&](std::vector<int> p) { return FiniteGroup::symmetric_index(3, p); };
    std::vector<int> a3 = {idx({0, 1, 2}), idx({1, 2, 0}), idx({2, 0, 1})};
    std::vector<int> c2 = {idx({0, 1, 2}), idx({1, 0, 2})};
    return check_matched(G, a3, c2, "S3");
  }
  if (name == "S4") {
    FiniteGroup G = FiniteGroup::symmetric(4);
    auto idx = [&](std::vector<int> p) { return FiniteGroup::symmetric_index(4, p); };
    std::vector<int> s3;  // permutations fixing the last point
    for (std::vector<int> p : {std::vector<int>{0, 1, 2, 3}, {1, 2, 0, 3}, {2, 0, 1, 3},
                               {1, 0, 2, 3}, {0, 2, 1, 3}, {2, 1, 0, 3}})
      s3.push_back(idx(p));
    int c = idx({1, 2, 3, 0});
    std::vector<int> c4 = G.generated_subgroup({c});
    return check_matched(G, s3, c4, "S4");
  }
  if (name == "S4b") {
    // the other exact factorization of S4: alternating times a transposition
    FiniteGroup G = FiniteGroup::symmetric(4);
    auto idx = [&](std::vector<int> p) { return FiniteGroup::symmetric_index(4, p); };
    std::vector<int> a4;
    std::vector<int> perm = {0, 1, 2, 3};
    do {
      int inversions = 0;
      for (std::size_t i = 0; i < perm.size(); ++i)
        for (std::size_t j = i + 1; j < perm.size(); ++j)
          if (perm[i] > perm[j]) ++inversions;
      if (inversions % 2 == 0) a4.push_back(FiniteGroup::symmetric_index(4, perm));
    } while (std::next_permutation(perm.begin(), perm.end()));
    std::vector<int> c2 = {idx({0, 1, 2, 3}), idx({1, 0, 2, 3})};
    return check_matched(G, a4, c2, "S4b");
  }
  if (name == "C7C3") {
    FiniteGroup G = FiniteGroup::semidirect_cyclic(7, 3);
    std::vector<int> c7, c3;
    for (int x = 0; x < 7; ++x) c7.push_back(x);            // (x, 0)
    for (int y = 0; y < 3; ++y) c3.push_back(y * 7);        // (0, y)
    return check_matched(G, c7, c3, "C7C3");
  }
  if (name == "D8") {
    FiniteGroup G = FiniteGroup::dihedral(4);
    std::vector<int> c4 = {0, 1, 2, 3};  // rotations
    std::vector<int> c2 = {0, 4};        // identity and one reflection
    return check_matched(G, c4, c2, "D8");
  }
  if (name == "D12") {
    FiniteGroup G = FiniteGroup::dihedral(6);
    std::vector<int> c6 = {0, 1, 2, 3, 4, 5};
    std::vector<int> c2 = {0, 6};
    return check_matched(G, c6, c2, "D12");
  }
  if (name == "C2xC3") {
    FiniteGroup G = FiniteGroup::direct_product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(3));
    std::vector<int> a, b;
    for (int i = 0; i < 2; ++i) a.push_back(i * 3);
    for (int j = 0; j < 3; ++j) b.push_back(j);
    return check_matched(G, a, b, "C2xC3");
  }
  if (name == "trivial") {
    FiniteGroup G = FiniteGroup::trivial();
    return check_matched(G, {0}, {0}, "trivial");
  }
  fail(ErrorCode::UnknownName, "no built-in pair named " + name);
}

inline const std::vector<std::string>& builtin_pair_names() {
  static const std::vector<std::string> names = {"S3",  "S4",    "S4b",    "C7C3",
                                                 "D8",  "D12",   "C2xC3",  "trivial"};
  return names;
}

}  // namespace bicrossed
