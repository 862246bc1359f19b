#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "bicrossed/errors.hpp"
#include "bicrossed/rational.hpp"

namespace bicrossed {

// Sparse vector over the rationals, sorted by index, no explicit zeros.
using SparseVec = std::vector<std::pair<int, Rat>>;

inline void sparse_normalize(SparseVec& v) {
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  SparseVec out;
  for (auto& [i, c] : v) {
    if (!out.empty() && out.back().first == i)
      out.back().second += c;
    else
      out.emplace_back(i, c);
  }
  out.erase(std::remove_if(out.begin(), out.end(), [](const auto& e) { return e.second == 0; }),
            out.end());
  v = std::move(out);
}

/****************************************************************************

  Exact operators on tensor products of finite-dimensional spaces.

  legs = (d_1, ..., d_k) fixes the basis of the product space; a basis
  vector is a tuple of per-leg indices flattened row-major.  Matrices are
  stored as sparse rows of rationals, which makes the permutation
  operators of the construction (one entry per row) as cheap as index
  maps while still supporting the dense products that the span
  computations need.  Leg placement (the subscript calculus W_12, W_13,
  ...) is index-exact via embed().

 ****************************************************************************/
class TensorOp {
 public:
  TensorOp() = default;
  explicit TensorOp(std::vector<int> legs) : legs_(std::move(legs)) {
    dim_ = 1;
    for (int d : legs_) dim_ *= d;
    rows_.assign(static_cast<std::size_t>(dim_), {});
  }

  static TensorOp identity(std::vector<int> legs) {
    TensorOp op(std::move(legs));
    for (int r = 0; r < op.dim_; ++r) op.rows_[static_cast<std::size_t>(r)] = {{r, Rat(1)}};
    return op;
  }

  // composition operator of the index map row -> image(row)
  static TensorOp from_index_map(std::vector<int> legs, const std::vector<int>& image) {
    TensorOp op(std::move(legs));
    if (static_cast<int>(image.size()) != op.dim_)
      fail(ErrorCode::LegMismatch, "index map has the wrong size");
    for (int r = 0; r < op.dim_; ++r)
      op.rows_[static_cast<std::size_t>(r)] = {{image[static_cast<std::size_t>(r)], Rat(1)}};
    return op;
  }

  static TensorOp flip(int d) {
    TensorOp op({d, d});
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) op.rows_[static_cast<std::size_t>(a) * d + b] = {{b * d + a, Rat(1)}};
    return op;
  }

  const std::vector<int>& legs() const { return legs_; }
  int dim() const { return dim_; }
  const SparseVec& row(int r) const { return rows_[static_cast<std::size_t>(r)]; }

  void set(int r, int c, Rat v) {
    auto& row = rows_[static_cast<std::size_t>(r)];
    row.emplace_back(c, std::move(v));
    sparse_normalize(row);
  }

  Rat get(int r, int c) const {
    for (auto& [j, v] : rows_[static_cast<std::size_t>(r)])
      if (j == c) return v;
    return Rat(0);
  }

  // reinterpret the leg structure (same total dimension)
  TensorOp with_legs(std::vector<int> legs) const {
    TensorOp op = *this;
    int d = 1;
    for (int x : legs) d *= x;
    if (d != dim_) fail(ErrorCode::LegMismatch, "total dimension must be preserved");
    op.legs_ = std::move(legs);
    return op;
  }

  friend TensorOp operator*(const TensorOp& a, const TensorOp& b) {
    if (a.dim_ != b.dim_) fail(ErrorCode::LegMismatch, "operator product needs equal dimensions");
    TensorOp c(a.legs_);
    for (int r = 0; r < a.dim_; ++r) {
      SparseVec acc;
      for (auto& [k, v] : a.rows_[static_cast<std::size_t>(r)])
        for (auto& [j, w] : b.rows_[static_cast<std::size_t>(k)]) acc.emplace_back(j, v * w);
      sparse_normalize(acc);
      c.rows_[static_cast<std::size_t>(r)] = std::move(acc);
    }
    return c;
  }

  friend TensorOp operator+(const TensorOp& a, const TensorOp& b) {
    if (a.dim_ != b.dim_) fail(ErrorCode::LegMismatch, "operator sum needs equal dimensions");
    TensorOp c = a;
    for (int r = 0; r < a.dim_; ++r) {
      auto& row = c.rows_[static_cast<std::size_t>(r)];
      for (auto& e : b.rows_[static_cast<std::size_t>(r)]) row.push_back(e);
      sparse_normalize(row);
    }
    return c;
  }

  friend TensorOp operator-(const TensorOp& a, const TensorOp& b) { return a + (Rat(-1) * b); }

  friend TensorOp operator*(const Rat& c, const TensorOp& a) {
    TensorOp out = a;
    if (c == 0) {
      out.rows_.assign(static_cast<std::size_t>(a.dim_), {});
      return out;
    }
    for (auto& row : out.rows_)
      for (auto& [j, v] : row) v *= c;
    return out;
  }

  // transpose; entries are rational so this is the adjoint
  TensorOp adjoint() const {
    TensorOp t(legs_);
    for (int r = 0; r < dim_; ++r)
      for (auto& [c, v] : rows_[static_cast<std::size_t>(r)])
        t.rows_[static_cast<std::size_t>(c)].emplace_back(r, v);
    for (auto& row : t.rows_) sparse_normalize(row);
    return t;
  }

  bool operator==(const TensorOp& o) const { return dim_ == o.dim_ && rows_ == o.rows_; }
  bool operator!=(const TensorOp& o) const { return !(*this == o); }

  bool is_permutation() const {
    std::vector<bool> hit(static_cast<std::size_t>(dim_), false);
    for (auto& row : rows_) {
      if (row.size() != 1 || row[0].second != 1) return false;
      if (hit[static_cast<std::size_t>(row[0].first)]) return false;
      hit[static_cast<std::size_t>(row[0].first)] = true;
    }
    return true;
  }

  bool is_identity() const {
    for (int r = 0; r < dim_; ++r) {
      auto& row = rows_[static_cast<std::size_t>(r)];
      if (row.size() != 1 || row[0].first != r || row[0].second != 1) return false;
    }
    return true;
  }

  // Place this operator on the legs `where` (0-based, strictly increasing)
  // of a larger product with legs big_legs, acting as the identity on the
  // remaining legs.
  TensorOp embed(const std::vector<int>& big_legs, const std::vector<int>& where) const {
    if (where.size() != legs_.size())
      fail(ErrorCode::LegMismatch, "placement needs one target per leg");
    for (std::size_t i = 0; i < where.size(); ++i)
      if (big_legs[static_cast<std::size_t>(where[i])] != legs_[i])
        fail(ErrorCode::LegMismatch, "target leg dimension disagrees");
    int big_dim = 1;
    for (int d : big_legs) big_dim *= d;
    std::vector<int> rest;  // complementary legs
    for (int i = 0; i < static_cast<int>(big_legs.size()); ++i)
      if (std::find(where.begin(), where.end(), i) == where.end()) rest.push_back(i);

    // strides for mixed-radix decoding of the big index
    std::vector<int> stride(big_legs.size(), 1);
    for (int i = static_cast<int>(big_legs.size()) - 2; i >= 0; --i)
      stride[static_cast<std::size_t>(i)] =
          stride[static_cast<std::size_t>(i + 1)] * big_legs[static_cast<std::size_t>(i + 1)];

    int rest_count = 1;
    for (int i : rest) rest_count *= big_legs[static_cast<std::size_t>(i)];

    TensorOp out(big_legs);
    std::vector<int> own_idx(legs_.size());
    for (int r = 0; r < dim_; ++r) {
      // decode local row into per-leg indices
      int rr = r;
      for (std::size_t i = legs_.size(); i-- > 0;) {
        own_idx[i] = rr % legs_[i];
        rr /= legs_[i];
      }
      int row_base = 0;
      for (std::size_t i = 0; i < where.size(); ++i)
        row_base += own_idx[i] * stride[static_cast<std::size_t>(where[i])];
      for (auto& [c, v] : rows_[static_cast<std::size_t>(r)]) {
        int cc = c;
        int col_base = 0;
        for (std::size_t i = legs_.size(); i-- > 0;) {
          int ci = cc % legs_[i];
          cc /= legs_[i];
          col_base += ci * stride[static_cast<std::size_t>(where[i])];
        }
        for (int t = 0; t < rest_count; ++t) {
          int tt = t, diag = 0;
          for (std::size_t i = rest.size(); i-- > 0;) {
            int leg = rest[i];
            int di = tt % big_legs[static_cast<std::size_t>(leg)];
            tt /= big_legs[static_cast<std::size_t>(leg)];
            diag += di * stride[static_cast<std::size_t>(leg)];
          }
          out.rows_[static_cast<std::size_t>(row_base + diag)].emplace_back(col_base + diag, v);
        }
      }
    }
    for (auto& row : out.rows_) sparse_normalize(row);
    return out;
  }

  // tensor product a (x) b with legs concatenated
  friend TensorOp tensor(const TensorOp& a, const TensorOp& b) {
    std::vector<int> legs = a.legs_;
    legs.insert(legs.end(), b.legs_.begin(), b.legs_.end());
    TensorOp out(legs);
    for (int ra = 0; ra < a.dim_; ++ra)
      for (auto& [ca, va] : a.rows_[static_cast<std::size_t>(ra)])
        for (int rb = 0; rb < b.dim_; ++rb)
          for (auto& [cb, vb] : b.rows_[static_cast<std::size_t>(rb)])
            out.rows_[static_cast<std::size_t>(ra) * b.dim_ + rb].emplace_back(ca * b.dim_ + cb,
                                                                               va * vb);
    for (auto& row : out.rows_) sparse_normalize(row);
    return out;
  }

  // flattened matrix as a sparse vector, index = row * dim + col
  SparseVec flatten() const {
    SparseVec v;
    for (int r = 0; r < dim_; ++r)
      for (auto& [c, val] : rows_[static_cast<std::size_t>(r)])
        v.emplace_back(r * dim_ + c, val);
    return v;  // already sorted: rows ascending, cols ascending within rows
  }

  static TensorOp unflatten(std::vector<int> legs, const SparseVec& v) {
    TensorOp op(std::move(legs));
    for (auto& [i, val] : v) op.rows_[static_cast<std::size_t>(i / op.dim_)].emplace_back(i % op.dim_, val);
    for (auto& row : op.rows_) sparse_normalize(row);
    return op;
  }

  // block (i, j) over the first leg of a two-leg operator:
  // (omega_ij (x) id)(A)[r, c] = A[(i, r), (j, c)]
  TensorOp slice_first(int i, int j) const {
    two_leg_guard();
    int d1 = legs_[1];
    TensorOp out({d1});
    for (int r = 0; r < d1; ++r)
      for (auto& [c, v] : rows_[static_cast<std::size_t>(i) * d1 + r])
        if (c / d1 == j) out.rows_[static_cast<std::size_t>(r)].emplace_back(c % d1, v);
    for (auto& row : out.rows_) sparse_normalize(row);
    return out;
  }

  // block over the second leg: (id (x) omega_ij)(A)[r, c] = A[(r, i), (c, j)]
  TensorOp slice_second(int i, int j) const {
    two_leg_guard();
    int d0 = legs_[0], d1 = legs_[1];
    TensorOp out({d0});
    for (int r = 0; r < d0; ++r)
      for (auto& [c, v] : rows_[static_cast<std::size_t>(r) * d1 + i])
        if (c % d1 == j) out.rows_[static_cast<std::size_t>(r)].emplace_back(c / d1, v);
    for (auto& row : out.rows_) sparse_normalize(row);
    return out;
  }

  // all first-leg slices in one sweep, row-major functional order
  std::vector<TensorOp> all_slices_first() const {
    two_leg_guard();
    int d0 = legs_[0], d1 = legs_[1];
    std::vector<TensorOp> out(static_cast<std::size_t>(d0) * d0, TensorOp({d1}));
    for (int R = 0; R < dim_; ++R) {
      int i = R / d1, r = R % d1;
      for (auto& [C, v] : rows_[static_cast<std::size_t>(R)]) {
        int j = C / d1, c = C % d1;
        out[static_cast<std::size_t>(i) * d0 + j].rows_[static_cast<std::size_t>(r)].emplace_back(c, v);
      }
    }
    for (auto& op : out)
      for (auto& row : op.rows_) sparse_normalize(row);
    return out;
  }

  std::vector<TensorOp> all_slices_second() const {
    two_leg_guard();
    int d0 = legs_[0], d1 = legs_[1];
    std::vector<TensorOp> out(static_cast<std::size_t>(d1) * d1, TensorOp({d0}));
    for (int R = 0; R < dim_; ++R) {
      int r = R / d1, i = R % d1;
      for (auto& [C, v] : rows_[static_cast<std::size_t>(R)]) {
        int c = C / d1, j = C % d1;
        out[static_cast<std::size_t>(i) * d1 + j].rows_[static_cast<std::size_t>(r)].emplace_back(c, v);
      }
    }
    for (auto& op : out)
      for (auto& row : op.rows_) sparse_normalize(row);
    return out;
  }

  std::size_t entry_count() const {
    std::size_t n = 0;
    for (auto& row : rows_) n += row.size();
    return n;
  }

  // sparse dump: one (row, col, numerator, denominator) quadruple per entry
  std::vector<std::array<std::string, 4>> quadruples() const {
    std::vector<std::array<std::string, 4>> out;
    for (int r = 0; r < dim_; ++r)
      for (auto& [c, v] : rows_[static_cast<std::size_t>(r)])
        out.push_back({std::to_string(r), std::to_string(c),
                       boost::multiprecision::numerator(v).str(),
                       boost::multiprecision::denominator(v).str()});
    return out;
  }

 private:
  void two_leg_guard() const {
    if (legs_.size() != 2) fail(ErrorCode::LegMismatch, "slice needs a two-leg operator");
  }

  std::vector<int> legs_;
  int dim_ = 0;
  std::vector<SparseVec> rows_;
};

}  // namespace bicrossed
