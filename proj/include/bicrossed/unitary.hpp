#pragma once

#include <string>
#include <vector>

#include "bicrossed/errors.hpp"
#include "bicrossed/matched_pair.hpp"
#include "bicrossed/operator.hpp"
#include "bicrossed/span.hpp"

#include <json.hpp>

namespace bicrossed {

/****************************************************************************

  The multiplicative unitaries of the construction, realized exactly.

  All three generators are composition operators of index bijections, so
  they are permutation matrices; that is asserted on construction and any
  transcription error downstream fails the pentagon loudly.

    X on l2(G1 x G1):      (X xi)(g, h) = xi(g h, h)
    Yhat on l2(G2 x G2):   (Yhat eta)(s, t) = eta(s, s^-1 t)

  The bicrossed unitary lives on H (x) H with H = l2(G2 x G1).  Writing
  beta_g(s) = p2(s g) and alpha_t(h) = p1(t h), it is the composition
  operator of

    v(s, g, t, h) = (s, g alpha_{beta_g(s)^-1 t}(h), beta_g(s)^-1 t, h),

  which is exactly (beta x id)(Yhat)_123 (id x alpha)(X)_234 evaluated
  pointwise: the first factor left-translates the third slot by
  beta_g(s)^-1, the second multiplies the G1 slot by alpha_t(h).

 ****************************************************************************/

inline TensorOp build_X(const FiniteGroup& G1) {
  int n = G1.order();
  std::vector<int> image(static_cast<std::size_t>(n) * n);
  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h) image[static_cast<std::size_t>(g) * n + h] = G1.mul(g, h) * n + h;
  TensorOp X = TensorOp::from_index_map({n, n}, image);
  if (!X.is_permutation()) fail(ErrorCode::LegMismatch, "X must be a permutation operator");
  return X;
}

inline TensorOp build_Yhat(const FiniteGroup& G2) {
  int n = G2.order();
  std::vector<int> image(static_cast<std::size_t>(n) * n);
  for (int s = 0; s < n; ++s)
    for (int t = 0; t < n; ++t)
      image[static_cast<std::size_t>(s) * n + t] = s * n + G2.mul(G2.inv(s), t);
  TensorOp Y = TensorOp::from_index_map({n, n}, image);
  if (!Y.is_permutation()) fail(ErrorCode::LegMismatch, "Yhat must be a permutation operator");
  return Y;
}

// W on legs (G2, G1, G2, G1), then reinterpreted as (H, H)
inline TensorOp build_W(const MatchedPair& mp) {
  int n1 = mp.n1(), n2 = mp.n2();
  int n = n2 * n1;
  std::vector<int> image(static_cast<std::size_t>(n) * n);
  for (int s = 0; s < n2; ++s)
    for (int g = 0; g < n1; ++g)
      for (int t = 0; t < n2; ++t)
        for (int h = 0; h < n1; ++h) {
          int bs = mp.beta[static_cast<std::size_t>(g)][static_cast<std::size_t>(s)];
          int t2 = mp.mul2(mp.inv2(bs), t);
          int g2 = mp.mul1(g, mp.alpha[static_cast<std::size_t>(t2)][static_cast<std::size_t>(h)]);
          int row = ((s * n1 + g) * n2 + t) * n1 + h;
          int col = ((s * n1 + g2) * n2 + t2) * n1 + h;
          image[static_cast<std::size_t>(row)] = col;
        }
  TensorOp W = TensorOp::from_index_map({n2, n1, n2, n1}, image).with_legs({n, n});
  if (!W.is_permutation()) fail(ErrorCode::LegMismatch, "W must be a permutation operator");
  return W;
}

inline bool pentagon_check(const TensorOp& W) {
  const auto& legs = W.legs();
  if (legs.size() != 2 || legs[0] != legs[1])
    fail(ErrorCode::LegMismatch, "pentagon needs an operator on H (x) H");
  int n = legs[0];
  std::vector<int> big = {n, n, n};
  TensorOp W12 = W.embed(big, {0, 1});
  TensorOp W13 = W.embed(big, {0, 2});
  TensorOp W23 = W.embed(big, {1, 2});
  return W12 * W13 * W23 == W23 * W12;
}

struct SliceSpans {
  OperatorSpan S;     // [(omega (x) id)(W)]
  OperatorSpan Shat;  // [(id (x) omega)(W)]
};

inline SliceSpans slice_spans(const TensorOp& W) {
  const auto& legs = W.legs();
  if (legs.size() != 2) fail(ErrorCode::LegMismatch, "slice spans need a two-leg operator");
  SliceSpans out{OperatorSpan({legs[1]}), OperatorSpan({legs[0]})};
  for (const auto& s : W.all_slices_first()) out.S.insert(s);
  for (const auto& s : W.all_slices_second()) out.Shat.insert(s);
  return out;
}

struct CvSpan {
  OperatorSpan C;              // [(id (x) omega)(Sigma V)]
  bool product_span_equal = false;  // [C C] = [C]
};

inline CvSpan cv_span(const TensorOp& V) {
  const auto& legs = V.legs();
  if (legs.size() != 2 || legs[0] != legs[1])
    fail(ErrorCode::LegMismatch, "C(V) needs an operator on H (x) H");
  TensorOp SigmaV = TensorOp::flip(legs[0]) * V;
  CvSpan out{OperatorSpan({legs[0]}), false};
  for (const auto& s : SigmaV.all_slices_second()) out.C.insert(s);
  OperatorSpan products = product_span(out.C.basis_ops(), out.C.basis_ops());
  out.product_span_equal = products.same_span(out.C);
  return out;
}

struct RegularityReport {
  std::string pair;
  bool pentagon = false;
  int dim_S = 0;
  int dim_Shat = 0;
  int dim_C = 0;
  int dim_SShat = 0;
  int dim_K = 0;
  bool c_equals_sshat_dim = false;
  bool c_equals_sshat_span = false;  // recorded experiment, not asserted
  bool product_span_equal = false;
  std::string verdict;

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["pair"] = pair;
    j["pentagon"] = pentagon;
    j["dims"] = {{"S", dim_S}, {"Shat", dim_Shat}, {"C", dim_C}, {"SShat", dim_SShat}, {"K", dim_K}};
    j["C_dim_matches_SShat"] = c_equals_sshat_dim;
    j["C_span_equals_SShat"] = c_equals_sshat_span;
    j["C_product_span_stable"] = product_span_equal;
    j["verdict"] = verdict;
    return j;
  }
};

inline RegularityReport regularity_report(const MatchedPair& mp) {
  TensorOp W = build_W(mp);
  RegularityReport rep;
  rep.pair = mp.label;
  rep.pentagon = pentagon_check(W);
  SliceSpans spans = slice_spans(W);
  rep.dim_S = spans.S.rank();
  rep.dim_Shat = spans.Shat.rank();
  CvSpan cv = cv_span(W);
  rep.dim_C = cv.C.rank();
  rep.product_span_equal = cv.product_span_equal;
  OperatorSpan sshat = product_span(spans.S.basis_ops(), spans.Shat.basis_ops());
  rep.dim_SShat = sshat.rank();
  rep.dim_K = W.legs()[0] * W.legs()[0];
  rep.c_equals_sshat_dim = (rep.dim_C == rep.dim_SShat);
  rep.c_equals_sshat_span = cv.C.same_span(sshat);
  rep.verdict = (rep.dim_C == rep.dim_K) ? "regular" : "not_regular";
  return rep;
}

struct CrossedProductDims {
  int dim_S = 0, expect_S = 0;
  int dim_Shat = 0, expect_Shat = 0;
  int dim_SShat = 0, expect_SShat = 0;
  bool ok = false;
};

// finite shadows of the crossed-product identifications:
//   dim S = |G2| |G/G2| = |G2||G1|, dim Shat = |G1||G2|,
//   dim [S Shat] = |G2||G1||G|
inline CrossedProductDims crossed_product_dims(const MatchedPair& mp) {
  TensorOp W = build_W(mp);
  SliceSpans spans = slice_spans(W);
  OperatorSpan sshat = product_span(spans.S.basis_ops(), spans.Shat.basis_ops());
  CrossedProductDims out;
  out.dim_S = spans.S.rank();
  out.dim_Shat = spans.Shat.rank();
  out.dim_SShat = sshat.rank();
  out.expect_S = mp.n2() * mp.n1();
  out.expect_Shat = mp.n1() * mp.n2();
  out.expect_SShat = mp.n2() * mp.n1() * mp.G.order();
  out.ok = out.dim_S == out.expect_S && out.dim_Shat == out.expect_Shat &&
           out.dim_SShat == out.expect_SShat;
  return out;
}

struct ComultiplicationReport {
  bool delta_coassociative = true;
  bool delta_image_in_SxS = true;
  bool deltahat_coassociative = true;
  bool deltahat_image_in_ShxSh = true;
  bool unit_grouplike = true;       // delta(1) = 1 (x) 1
  bool alpha_comodule = true;       // delta alpha = (alpha (x) alpha) delta_1
  bool beta_comodule = true;        // deltahat beta = (beta (x) beta) delta_2
  int basis_checked = 0;
};

// delta(x) = W (x (x) 1) W*, deltahat(y) = W* (1 (x) y) W, verified
// coassociative on the reduced bases of S and Shat.  The comodule
// formulas pin the pointwise realization of alpha and beta: a wrong
// transcription of the action tables fails here or in the pentagon.
inline ComultiplicationReport comultiplication_check(const MatchedPair& mp) {
  TensorOp W = build_W(mp);
  int n = W.legs()[0];
  TensorOp Wst = W.adjoint();
  SliceSpans spans = slice_spans(W);
  ComultiplicationReport rep;

  {
    int n1 = mp.n1(), n2 = mp.n2();
    auto alpha_diag = [&](int k) {
      // multiplication by the indicator of alpha_s(g) = k on H
      TensorOp d({n});
      for (int s = 0; s < n2; ++s)
        for (int g = 0; g < n1; ++g)
          if (mp.alpha[static_cast<std::size_t>(s)][static_cast<std::size_t>(g)] == k)
            d.set(s * n1 + g, s * n1 + g, Rat(1));
      return d;
    };
    auto beta_diag = [&](int r) {
      TensorOp d({n});
      for (int s = 0; s < n2; ++s)
        for (int g = 0; g < n1; ++g)
          if (mp.beta[static_cast<std::size_t>(g)][static_cast<std::size_t>(s)] == r)
            d.set(s * n1 + g, s * n1 + g, Rat(1));
      return d;
    };
    auto inv1 = [&](int a) {
      return mp.p1[static_cast<std::size_t>(mp.G.inv(mp.g1[static_cast<std::size_t>(a)]))];
    };
    for (int k = 0; k < n1; ++k) {
      TensorOp lhs = W * tensor(alpha_diag(k), TensorOp::identity({n})) * Wst;
      TensorOp rhs({n, n});
      for (int g = 0; g < n1; ++g)
        rhs = rhs + tensor(alpha_diag(g), alpha_diag(mp.mul1(inv1(g), k)));
      if (lhs != rhs) rep.alpha_comodule = false;
    }
    for (int r = 0; r < n2; ++r) {
      TensorOp lhs = Wst * tensor(TensorOp::identity({n}), beta_diag(r)) * W;
      TensorOp rhs({n, n});
      for (int s = 0; s < n2; ++s)
        rhs = rhs + tensor(beta_diag(s), beta_diag(mp.mul2(mp.inv2(s), r)));
      if (lhs != rhs) rep.beta_comodule = false;
    }
  }

  TensorOp one = TensorOp::identity({n});
  std::vector<int> big = {n, n, n};
  TensorOp W12 = W.embed(big, {0, 1});
  TensorOp W23 = W.embed(big, {1, 2});

  OperatorSpan SxS({n, n});
  for (const auto& a : spans.S.basis_ops())
    for (const auto& b : spans.S.basis_ops()) SxS.insert(tensor(a, b));
  OperatorSpan ShxSh({n, n});
  for (const auto& a : spans.Shat.basis_ops())
    for (const auto& b : spans.Shat.basis_ops()) ShxSh.insert(tensor(a, b));

  auto delta = [&](const TensorOp& x) { return W * tensor(x, one) * Wst; };
  auto deltahat = [&](const TensorOp& y) { return Wst * tensor(one, y) * W; };

  for (const auto& s : spans.S.basis_ops()) {
    TensorOp d = delta(s);
    ++rep.basis_checked;
    if (!SxS.contains(d)) rep.delta_image_in_SxS = false;
    TensorOp lhs = W12 * d.embed(big, {0, 2}) * W12.adjoint();
    TensorOp rhs = W23 * d.embed(big, {0, 1}) * W23.adjoint();
    if (lhs != rhs) rep.delta_coassociative = false;
  }
  for (const auto& y : spans.Shat.basis_ops()) {
    TensorOp d = deltahat(y);
    if (!ShxSh.contains(d)) rep.deltahat_image_in_ShxSh = false;
    TensorOp lhs = W12.adjoint() * d.embed(big, {1, 2}) * W12;
    TensorOp rhs = W23.adjoint() * d.embed(big, {0, 2}) * W23;
    if (lhs != rhs) rep.deltahat_coassociative = false;
  }
  TensorOp did = delta(one);
  rep.unit_grouplike = (did == TensorOp::identity({n, n}).with_legs({n, n}));
  return rep;
}

struct SemiregularSliceReport {
  int dim_S = 0;
  int dim_sliced = 0;
  bool equal = false;
};

// span of (omega (x) id)(W* (1 (x) S) W) against S itself; equality is the
// finite (regular) case of the slice characterization
inline SemiregularSliceReport semiregularity_slice_check(const MatchedPair& mp) {
  TensorOp W = build_W(mp);
  int n = W.legs()[0];
  TensorOp Wst = W.adjoint();
  TensorOp one = TensorOp::identity({n});
  SliceSpans spans = slice_spans(W);
  OperatorSpan sliced({n});
  for (const auto& s : spans.S.basis_ops()) {
    TensorOp conj = Wst * tensor(one, s) * W;
    for (const auto& sl : conj.all_slices_first()) sliced.insert(sl);
  }
  SemiregularSliceReport rep;
  rep.dim_S = spans.S.rank();
  rep.dim_sliced = sliced.rank();
  rep.equal = sliced.same_span(spans.S);
  return rep;
}

struct CoactionReport {
  int dim_B = 0;
  int dim_T = 0;
  bool coaction_identity = false;   // (id (x) delta) gamma = (gamma (x) id) gamma
  bool T_adjoint_closed = false;
  bool T_product_closed = false;
  bool weakly_continuous = false;   // T = B
  bool strongly_continuous = false; // [gamma(B)(1 (x) S)] = B (x) S
};

// B = K(H + C) and X = W + 1 acting on (H + C) (x) H.  The pentagon alone
// makes gamma(x) = X (x (x) 1) X* a coaction of (S, delta) with the B leg
// on the left: (id (x) delta) gamma = (gamma (x) id) gamma, verified here
// exactly.  T = [(id (x) omega) gamma(B)] is the space of continuous
// elements; in the finite regular case it must be all of B, closed under
// products and adjoints, and weak continuity must come with strong
// continuity [gamma(B)(1 (x) S)] = B (x) S.
inline CoactionReport coaction_continuity_check(const MatchedPair& mp) {
  TensorOp W = build_W(mp);
  int n = W.legs()[0];
  int nb = n + 1;
  // X = W on H (x) H plus the identity on C (x) H, legs (n+1, n)
  TensorOp X({nb, n});
  for (int r = 0; r < n; ++r)
    for (int k = 0; k < n; ++k) {
      int R = r * n + k;
      for (auto& [C, v] : W.row(R)) X.set(R, C, v);
    }
  for (int k = 0; k < n; ++k) X.set(n * n + k, n * n + k, Rat(1));
  if (!X.is_permutation()) fail(ErrorCode::LegMismatch, "W + 1 must stay a permutation");
  TensorOp Xst = X.adjoint();

  TensorOp idH = TensorOp::identity({n});
  std::vector<TensorOp> b_units;
  for (int k = 0; k < nb; ++k)
    for (int l = 0; l < nb; ++l) {
      TensorOp e({nb});
      e.set(k, l, Rat(1));
      b_units.push_back(e);
    }

  OperatorSpan T({nb});
  std::vector<TensorOp> gammas;
  for (const auto& x : b_units) {
    TensorOp gx = X * tensor(x, idH) * Xst;
    gammas.push_back(gx);
    for (const auto& sl : gx.all_slices_second()) T.insert(sl);
  }

  CoactionReport rep;
  rep.dim_B = nb * nb;
  rep.dim_T = T.rank();

  std::vector<int> big = {nb, n, n};
  TensorOp X12 = X.embed(big, {0, 1});
  TensorOp W23 = W.embed(big, {1, 2});
  rep.coaction_identity = true;
  for (const auto& gx : gammas) {
    TensorOp lhs2 = W23 * gx.embed(big, {0, 1}) * W23.adjoint();
    TensorOp rhs2 = X12 * gx.embed(big, {0, 2}) * X12.adjoint();
    if (lhs2 != rhs2) rep.coaction_identity = false;
  }

  rep.T_adjoint_closed = true;
  rep.T_product_closed = true;
  auto tbasis = T.basis_ops();
  for (const auto& t : tbasis)
    if (!T.contains(t.adjoint())) rep.T_adjoint_closed = false;
  for (const auto& t1 : tbasis)
    for (const auto& t2 : tbasis)
      if (!T.contains(t1 * t2)) rep.T_product_closed = false;
  rep.weakly_continuous = (rep.dim_T == rep.dim_B);

  SliceSpans spans = slice_spans(W);
  OperatorSpan lhs({nb, n});
  for (const auto& gx : gammas)
    for (const auto& s : spans.S.basis_ops()) lhs.insert(gx * tensor(TensorOp::identity({nb}), s));
  OperatorSpan rhs({nb, n});
  for (const auto& b : b_units)
    for (const auto& s : spans.S.basis_ops()) rhs.insert(tensor(b, s));
  rep.strongly_continuous = lhs.same_span(rhs);
  return rep;
}

}  // namespace bicrossed
