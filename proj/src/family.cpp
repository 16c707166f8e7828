// Copyright 2026 The posmap Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "posmap/family.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "posmap/error.hpp"
#include "posmap/parallel.hpp"
#include "posmap/random.hpp"

namespace posmap::family {
namespace {

Eigen::Index idx(std::size_t v) { return static_cast<Eigen::Index>(v); }

CMatrix psi_apply(double lambda, const CMatrix& a) {
  const auto n = static_cast<double>(a.rows());
  CMatrix out = (1.0 - lambda) * a;
  out.diagonal().array() += lambda * a.trace() / n;
  return out;
}

void check_params(std::size_t n, std::size_t m, double lambda, double eps) {
  if (n < 2) throw Error(ErrorCode::BadRange, "n must be >= 2");
  if (m < 1) throw Error(ErrorCode::BadRange, "m must be >= 1");
  if (!(eps > 0.0 && eps < 1.0)) throw Error(ErrorCode::BadRange, "eps must lie in (0, 1)");
  if (!std::isfinite(lambda) || lambda < 0.0) throw Error(ErrorCode::BadRange, "lambda must be finite and >= 0");
}

}  // namespace

CMatrix apply_phi_lambda_m(std::size_t n, std::size_t m, double lambda, double eps, const CMatrix& x) {
  check_params(n, m, lambda, eps);
  const Eigen::Index nn = idx(n);
  if (x.rows() != idx(m * n) || x.cols() != idx(m * n)) {
    throw Error(ErrorCode::DimensionMismatch, "argument must be (mn) x (mn)");
  }
  const CMatrix corner = psi_apply(lambda, x.topLeftCorner(nn, nn));
  CMatrix out = (1.0 - eps) * x;
  for (std::size_t alpha = 0; alpha < m; ++alpha) {
    out.block(idx(alpha) * nn, idx(alpha) * nn, nn, nn) += eps * corner;
  }
  return out;
}

PMap phi_lambda_m(std::size_t n, std::size_t m, double lambda, double eps) {
  check_params(n, m, lambda, eps);
  if (m * n > kMaxChoiSide) {
    throw Error(ErrorCode::BadRange, "m * n = " + std::to_string(m * n) + " is too large for a Choi representation");
  }
  const std::size_t dim = m * n;
  const FiniteCStar algebra = FiniteCStar::matrix_algebra(dim);
  std::vector<Element> images;
  images.reserve(algebra.dimension());
  for (const auto& u : matrix_unit_indices(algebra)) {
    CMatrix e = CMatrix::Zero(idx(dim), idx(dim));
    e(idx(u.row), idx(u.col)) = 1.0;
    images.emplace_back(algebra, std::vector<CMatrix>{apply_phi_lambda_m(n, m, lambda, eps, e)});
  }
  return from_action(algebra, algebra, images);
}

CMatrix apply_partial_trace_first(std::size_t m, std::size_t n, const CMatrix& x) {
  if (m < 1 || n < 1) throw Error(ErrorCode::BadRange, "m, n must be >= 1");
  if (x.rows() != idx(m * n) || x.cols() != idx(m * n)) {
    throw Error(ErrorCode::DimensionMismatch, "argument must be (mn) x (mn)");
  }
  const Eigen::Index nn = idx(n);
  CMatrix out = CMatrix::Zero(nn, nn);
  for (std::size_t alpha = 0; alpha < m; ++alpha) out += x.block(idx(alpha) * nn, idx(alpha) * nn, nn, nn);
  return out / static_cast<double>(m);
}

PMap partial_trace_first(std::size_t m, std::size_t n) {
  if (m < 1 || n < 1) throw Error(ErrorCode::BadRange, "m, n must be >= 1");
  const FiniteCStar source = FiniteCStar::matrix_algebra(m * n);
  const FiniteCStar target = FiniteCStar::matrix_algebra(n);
  std::vector<Element> images;
  images.reserve(source.dimension());
  for (const auto& u : matrix_unit_indices(source)) {
    CMatrix img = CMatrix::Zero(idx(n), idx(n));
    if (u.row / n == u.col / n) img(idx(u.row % n), idx(u.col % n)) = 1.0 / static_cast<double>(m);
    images.emplace_back(target, std::vector<CMatrix>{std::move(img)});
  }
  return from_action(source, target, images);
}

CMatrix corner_embed(std::size_t m, const CMatrix& a) {
  if (m < 1) throw Error(ErrorCode::BadRange, "m must be >= 1");
  const Eigen::Index n = a.rows();
  CMatrix out = CMatrix::Zero(idx(m) * n, idx(m) * n);
  out.topLeftCorner(n, n) = a;
  return out;
}

double lambda_tilde(std::size_t m, double eps, double lambda) {
  if (m < 1) throw Error(ErrorCode::BadRange, "m must be >= 1");
  if (!(eps > 0.0 && eps < 1.0)) throw Error(ErrorCode::BadRange, "eps must lie in (0, 1)");
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw Error(ErrorCode::BadRange, "lambda must be > 0");
  const double me = static_cast<double>(m) * eps;
  return me * lambda / ((1.0 - eps) + me);
}

ExampleReport verify_example(std::size_t n, std::size_t m, std::size_t k, double lambda, double eps,
                             const ExampleOptions& options) {
  check_params(n, m, lambda, eps);
  if (k < 1 || k >= n) throw Error(ErrorCode::BadRange, "need 1 <= k < n");
  if (options.samples == 0) throw Error(ErrorCode::BadRange, "samples must be >= 1");
  const double lower = 1.0 / static_cast<double>(n * (k + 1) - 1);
  const double upper = 1.0 / static_cast<double>(n * k - 1);
  const double excess = lambda - 1.0;
  if (!(excess > lower && excess <= upper * (1.0 + 1e-12))) {
    throw Error(ErrorCode::BadRange, "lambda - 1 must lie in (1/(n(k+1)-1), 1/(nk-1)]");
  }

  ExampleReport r;
  r.n = n;
  r.m = m;
  r.k = k;
  r.lambda = lambda;
  r.epsilon = eps;
  r.seed = options.seed;
  r.samples = options.samples;
  r.lambda_tilde = lambda_tilde(m, eps, lambda);
  r.defect_bound = 6.0 * eps;

  const FiniteCStar big = FiniteCStar::matrix_algebra(m * n);
  std::vector<double> defects(options.samples, 0.0);
  parallel_for(options.samples, [&](std::size_t s) {
    const CMatrix x = random_contraction(big, mix_seed(options.seed, s)).block(0);
    const CMatrix px = apply_phi_lambda_m(n, m, lambda, eps, x);
    const CMatrix px2 = apply_phi_lambda_m(n, m, lambda, eps, x * x);
    defects[s] = op_norm(px * px - px2);
  });
  r.max_square_defect = *std::max_element(defects.begin(), defects.end());
  r.defect_bound_ok = r.max_square_defect < r.defect_bound;

  // Composed map Phi_n o phi o iota on the matrix units of M_n.
  const FiniteCStar small = FiniteCStar::matrix_algebra(n);
  const double rescale = eps * lambda / r.lambda_tilde;
  std::vector<Element> composed;
  for (const auto& u : matrix_unit_indices(small)) {
    CMatrix e = CMatrix::Zero(idx(n), idx(n));
    e(idx(u.row), idx(u.col)) = 1.0;
    const CMatrix image =
        apply_partial_trace_first(m, n, apply_phi_lambda_m(n, m, lambda, eps, corner_embed(m, e)));
    const CMatrix closed = rescale * psi_apply(r.lambda_tilde, e);
    const CMatrix direct = (1.0 - eps) / static_cast<double>(m) * e + eps * psi_apply(lambda, e);
    r.closed_form_deviation = std::max(r.closed_form_deviation, op_norm(image - closed));
    r.direct_form_deviation = std::max(r.direct_form_deviation, op_norm(image - direct));
    composed.emplace_back(small, std::vector<CMatrix>{image});
  }

  // lt > nk'/(nk'-1) with k' = k + 1, compared without division.
  const auto nk1 = static_cast<double>(n * (k + 1));
  r.next_threshold = tomiyama_threshold(n, k + 1);
  const double me = static_cast<double>(m) * eps;
  r.exceeds_next_threshold = me * lambda * (nk1 - 1.0) > nk1 * ((1.0 - eps) + me);

  if (r.exceeds_next_threshold && options.confirm_with_falsifier) {
    const PMap composed_map = from_action(small, small, composed);
    r.falsifier = k_positivity_falsify(composed_map, k + 1, options.restarts, options.seed);
  }
  return r;
}

}  // namespace posmap::family
