#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "bicrossed/errors.hpp"

#include <json.hpp>

namespace bicrossed {

/****************************************************************************

  Finite groups by multiplication table.  Every table is validated on
  construction: identity, inverses and full associativity.  Element 0 is
  always the identity.

 ****************************************************************************/
class FiniteGroup {
 public:
  FiniteGroup(int order, std::vector<int> table, std::vector<std::string> labels = {})
      : n_(order), table_(std::move(table)), labels_(std::move(labels)) {
    if (n_ < 1 || static_cast<int>(table_.size()) != n_ * n_)
      fail(ErrorCode::ParseError, "multiplication table has wrong size");
    for (int v : table_)
      if (v < 0 || v >= n_) fail(ErrorCode::ParseError, "table entry out of range");
    if (labels_.empty()) {
      labels_.resize(static_cast<std::size_t>(n_));
      for (int i = 0; i < n_; ++i) labels_[static_cast<std::size_t>(i)] = "e" + std::to_string(i);
    }
    validate();
  }

  int order() const { return n_; }
  int identity() const { return 0; }
  int mul(int a, int b) const { return table_[static_cast<std::size_t>(a) * n_ + b]; }
  int inv(int a) const { return inverse_[static_cast<std::size_t>(a)]; }
  const std::string& label(int a) const { return labels_[static_cast<std::size_t>(a)]; }
  const std::vector<std::string>& labels() const { return labels_; }

  bool is_subgroup(const std::vector<int>& elems) const {
    bool has_id = false;
    for (int a : elems) {
      if (a < 0 || a >= n_) return false;
      if (a == identity()) has_id = true;
    }
    if (!has_id) return false;
    for (int a : elems)
      for (int b : elems) {
        int ab = mul(a, b);
        if (std::find(elems.begin(), elems.end(), ab) == elems.end()) return false;
      }
    return true;
  }

  std::vector<int> generated_subgroup(std::vector<int> gens) const {
    std::vector<bool> seen(static_cast<std::size_t>(n_), false);
    seen[0] = true;
    std::vector<int> out{0};
    for (std::size_t i = 0; i < out.size(); ++i)
      for (int g : gens) {
        int x = mul(out[i], g);
        if (!seen[static_cast<std::size_t>(x)]) {
          seen[static_cast<std::size_t>(x)] = true;
          out.push_back(x);
        }
      }
    std::sort(out.begin(), out.end());
    return out;
  }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["order"] = n_;
    std::vector<std::vector<int>> rows;
    for (int a = 0; a < n_; ++a)
      rows.emplace_back(table_.begin() + static_cast<std::size_t>(a) * n_,
                        table_.begin() + static_cast<std::size_t>(a + 1) * n_);
    j["table"] = rows;
    j["labels"] = labels_;
    return j;
  }

  static FiniteGroup from_json(const nlohmann::json& j) {
    int order = j.at("order").get<int>();
    auto rows = j.at("table").get<std::vector<std::vector<int>>>();
    std::vector<int> flat;
    for (auto& r : rows) flat.insert(flat.end(), r.begin(), r.end());
    std::vector<std::string> labels;
    if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
    return FiniteGroup(order, std::move(flat), std::move(labels));
  }

  static FiniteGroup trivial() { return FiniteGroup(1, {0}, {"e"}); }

  static FiniteGroup cyclic(int n) {
    std::vector<int> t(static_cast<std::size_t>(n) * n);
    std::vector<std::string> lab;
    for (int a = 0; a < n; ++a) {
      lab.push_back("g^" + std::to_string(a));
      for (int b = 0; b < n; ++b) t[static_cast<std::size_t>(a) * n + b] = (a + b) % n;
    }
    return FiniteGroup(n, std::move(t), std::move(lab));
  }

  // dihedral group of order 2n: pairs (rotation i, flip s)
  static FiniteGroup dihedral(int n) {
    int N = 2 * n;
    auto id = [n](int i, int s) { return s * n + i; };
    std::vector<int> t(static_cast<std::size_t>(N) * N);
    std::vector<std::string> lab(static_cast<std::size_t>(N));
    for (int s = 0; s < 2; ++s)
      for (int i = 0; i < n; ++i)
        lab[static_cast<std::size_t>(id(i, s))] =
            (s ? "sr^" : "r^") + std::to_string(i);
    for (int s = 0; s < 2; ++s)
      for (int i = 0; i < n; ++i)
        for (int u = 0; u < 2; ++u)
          for (int j = 0; j < n; ++j) {
            // (i,s)(j,u) = (i + (-1)^s j, s xor u)
            int rot = s ? ((i - j) % n + n) % n : (i + j) % n;
            t[static_cast<std::size_t>(id(i, s)) * N + id(j, u)] = id(rot, s ^ u);
          }
    return FiniteGroup(N, std::move(t), std::move(lab));
  }

  // symmetric group on {0..n-1}, elements in lexicographic order,
  // composition (f g)(x) = f(g(x))
  static FiniteGroup symmetric(int n) {
    std::vector<std::vector<int>> perms;
    std::vector<int> p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    do {
      perms.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    std::map<std::vector<int>, int> index;
    for (std::size_t i = 0; i < perms.size(); ++i) index[perms[i]] = static_cast<int>(i);
    int N = static_cast<int>(perms.size());
    std::vector<int> t(static_cast<std::size_t>(N) * N);
    std::vector<std::string> lab;
    for (auto& q : perms) {
      std::string s = "(";
      for (int i = 0; i < n; ++i) s += std::to_string(q[static_cast<std::size_t>(i)]);
      lab.push_back(s + ")");
    }
    for (int a = 0; a < N; ++a)
      for (int b = 0; b < N; ++b) {
        std::vector<int> c(static_cast<std::size_t>(n));
        for (int x = 0; x < n; ++x)
          c[static_cast<std::size_t>(x)] =
              perms[static_cast<std::size_t>(a)][static_cast<std::size_t>(
                  perms[static_cast<std::size_t>(b)][static_cast<std::size_t>(x)])];
        t[static_cast<std::size_t>(a) * N + b] = index[c];
      }
    return FiniteGroup(N, std::move(t), std::move(lab));
  }

  static int symmetric_index(int n, const std::vector<int>& perm) {
    std::vector<int> p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    int idx = 0;
    do {
      if (p == perm) return idx;
      ++idx;
    } while (std::next_permutation(p.begin(), p.end()));
    fail(ErrorCode::ParseError, "not a permutation");
  }

  // C_p x| C_q acting by x -> r x mod p, where r has order q mod p
  static FiniteGroup semidirect_cyclic(int p, int q, int r = 0) {
    if (r == 0) {
      for (int cand = 2; cand < p && r == 0; ++cand) {
        int pow = 1;
        bool ok = true;
        for (int i = 0; i < q; ++i) pow = pow * cand % p;
        if (pow != 1) continue;
        int check = 1;
        for (int i = 1; i < q; ++i) {
          check = check * cand % p;
          if (check == 1) { ok = false; break; }
        }
        if (ok) r = cand;
      }
      if (r == 0)
        fail(ErrorCode::ParseError, "no automorphism of the requested order exists");
    }
    int N = p * q;
    auto id = [p](int x, int y) { return y * p + x; };
    std::vector<int> rpow(static_cast<std::size_t>(q), 1);
    for (int i = 1; i < q; ++i) rpow[static_cast<std::size_t>(i)] = rpow[static_cast<std::size_t>(i - 1)] * r % p;
    std::vector<int> t(static_cast<std::size_t>(N) * N);
    std::vector<std::string> lab(static_cast<std::size_t>(N));
    for (int y = 0; y < q; ++y)
      for (int x = 0; x < p; ++x)
        lab[static_cast<std::size_t>(id(x, y))] =
            "a^" + std::to_string(x) + "b^" + std::to_string(y);
    for (int y = 0; y < q; ++y)
      for (int x = 0; x < p; ++x)
        for (int y2 = 0; y2 < q; ++y2)
          for (int x2 = 0; x2 < p; ++x2) {
            // (x,y)(x2,y2) = (x + r^y x2, y + y2)
            int xx = (x + rpow[static_cast<std::size_t>(y)] * x2) % p;
            t[static_cast<std::size_t>(id(x, y)) * N + id(x2, y2)] = id(xx, (y + y2) % q);
          }
    return FiniteGroup(N, std::move(t), std::move(lab));
  }

  static FiniteGroup direct_product(const FiniteGroup& A, const FiniteGroup& B) {
    int N = A.order() * B.order();
    auto id = [&](int a, int b) { return a * B.order() + b; };
    std::vector<int> t(static_cast<std::size_t>(N) * N);
    std::vector<std::string> lab(static_cast<std::size_t>(N));
    for (int a = 0; a < A.order(); ++a)
      for (int b = 0; b < B.order(); ++b) {
        lab[static_cast<std::size_t>(id(a, b))] = A.label(a) + "*" + B.label(b);
        for (int a2 = 0; a2 < A.order(); ++a2)
          for (int b2 = 0; b2 < B.order(); ++b2)
            t[static_cast<std::size_t>(id(a, b)) * N + id(a2, b2)] =
                id(A.mul(a, a2), B.mul(b, b2));
      }
    return FiniteGroup(N, std::move(t), std::move(lab));
  }

 private:
  void validate() {
    // identity must be element 0
    for (int a = 0; a < n_; ++a)
      if (mul(0, a) != a || mul(a, 0) != a)
        fail(ErrorCode::ParseError, "element 0 is not an identity");
    inverse_.assign(static_cast<std::size_t>(n_), -1);
    for (int a = 0; a < n_; ++a) {
      for (int b = 0; b < n_; ++b)
        if (mul(a, b) == 0 && mul(b, a) == 0) {
          inverse_[static_cast<std::size_t>(a)] = b;
          break;
        }
      if (inverse_[static_cast<std::size_t>(a)] < 0)
        fail(ErrorCode::ParseError, "element without inverse");
    }
    for (int a = 0; a < n_; ++a)
      for (int b = 0; b < n_; ++b)
        for (int c = 0; c < n_; ++c)
          if (mul(mul(a, b), c) != mul(a, mul(b, c)))
            fail(ErrorCode::ParseError, "table is not associative");
  }

  int n_;
  std::vector<int> table_;
  std::vector<std::string> labels_;
  std::vector<int> inverse_;
};

}  // namespace bicrossed
