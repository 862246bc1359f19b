#pragma once

#include <map>
#include <vector>

#include "bicrossed/operator.hpp"
#include "bicrossed/rational.hpp"

namespace bicrossed {

/****************************************************************************

  Linear spans of operators with exact rank.

  The reduced basis is a canonical reduced row echelon form over Q: rows
  keyed by pivot, pivot coefficient 1, pivots eliminated from every other
  row.  Insertion order therefore does not change the final basis, and
  rank, membership and span equality are exact linear algebra, never a
  tolerance.

 ****************************************************************************/
class OperatorSpan {
 public:
  OperatorSpan() = default;
  explicit OperatorSpan(std::vector<int> op_legs) : op_legs_(std::move(op_legs)) {}

  int rank() const { return static_cast<int>(rows_.size()); }

  // returns true when the vector enlarged the span
  bool insert(SparseVec v) {
    reduce(v);
    if (v.empty()) return false;
    Rat lead = v.front().second;
    for (auto& [i, c] : v) c /= lead;
    int pivot = v.front().first;
    // keep the basis fully reduced
    for (auto& [piv, row] : rows_) {
      Rat coeff = coeff_at(row, pivot);
      if (coeff != 0) axpy(row, -coeff, v);
    }
    rows_.emplace(pivot, std::move(v));
    return true;
  }

  bool insert(const TensorOp& op) { return insert(op.flatten()); }

  bool contains(SparseVec v) const {
    reduce(v);
    return v.empty();
  }

  bool contains(const TensorOp& op) const { return contains(op.flatten()); }

  bool same_span(const OperatorSpan& other) const {
    if (rank() != other.rank()) return false;
    for (auto& [piv, row] : other.rows_)
      if (!contains(row)) return false;
    return true;
  }

  std::vector<SparseVec> basis() const {
    std::vector<SparseVec> out;
    for (auto& [piv, row] : rows_) out.push_back(row);
    return out;
  }

  // reduced basis rows reinterpreted as operators
  std::vector<TensorOp> basis_ops() const {
    std::vector<TensorOp> out;
    for (auto& [piv, row] : rows_) out.push_back(TensorOp::unflatten(op_legs_, row));
    return out;
  }

  const std::vector<int>& op_legs() const { return op_legs_; }

 private:
  static Rat coeff_at(const SparseVec& v, int idx) {
    auto it = std::lower_bound(v.begin(), v.end(), idx,
                               [](const auto& e, int i) { return e.first < i; });
    return (it != v.end() && it->first == idx) ? it->second : Rat(0);
  }

  static void axpy(SparseVec& v, const Rat& c, const SparseVec& w) {
    SparseVec merged;
    merged.reserve(v.size() + w.size());
    std::size_t i = 0, j = 0;
    while (i < v.size() || j < w.size()) {
      if (j == w.size() || (i < v.size() && v[i].first < w[j].first)) {
        merged.push_back(v[i++]);
      } else if (i == v.size() || w[j].first < v[i].first) {
        Rat val = c * w[j].second;
        if (val != 0) merged.emplace_back(w[j].first, std::move(val));
        ++j;
      } else {
        Rat val = v[i].second + c * w[j].second;
        if (val != 0) merged.emplace_back(v[i].first, std::move(val));
        ++i;
        ++j;
      }
    }
    v = std::move(merged);
  }

  void reduce(SparseVec& v) const {
    // basis rows never contain another row's pivot, so every elimination
    // strictly removes one pivot occurrence from v and introduces none
    std::size_t i = 0;
    while (i < v.size()) {
      auto it = rows_.find(v[i].first);
      if (it == rows_.end()) {
        ++i;
        continue;
      }
      axpy(v, -v[i].second, it->second);
    }
  }

  std::vector<int> op_legs_;
  std::map<int, SparseVec> rows_;  // pivot index -> reduced row
};

// span of the products a * b over two operator lists
inline OperatorSpan product_span(const std::vector<TensorOp>& a, const std::vector<TensorOp>& b) {
  OperatorSpan span(a.empty() ? (b.empty() ? std::vector<int>{} : b.front().legs())
                              : a.front().legs());
  for (const auto& x : a)
    for (const auto& y : b) span.insert(x * y);
  return span;
}

}  // namespace bicrossed
