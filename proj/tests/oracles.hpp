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

// Reference computations for the tests. Everything here is written directly
// against Eigen and closed-form formulas, without calling into posmap, so the
// library is checked against an independent path.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Complex = std::complex<double>;
using Mat = Eigen::MatrixXcd;

inline Mat unit_matrix(int n, int i, int j) {
  Mat e = Mat::Zero(n, n);
  e(i, j) = 1.0;
  return e;
}

/// Real parts of the eigenvalues, ascending, from the general (non-Hermitian)
/// solver.
inline std::vector<double> spectrum(const Mat& m) {
  Eigen::ComplexEigenSolver<Mat> solver(m, false);
  std::vector<double> out;
  for (int i = 0; i < m.rows(); ++i) out.push_back(solver.eigenvalues()(i).real());
  std::sort(out.begin(), out.end());
  return out;
}

inline double min_eig(const Mat& m) { return spectrum(m).front(); }

/// Largest singular value from the general SVD.
inline double op_norm(const Mat& m) {
  if (m.size() == 0) return 0.0;
  return Eigen::BDCSVD<Mat>(m).singularValues()(0);
}

/// lambda tr(a)/n 1 + (1 - lambda) a.
inline Mat tomiyama_apply(double lambda, const Mat& a) {
  const auto n = static_cast<double>(a.rows());
  Mat out = (1.0 - lambda) * a;
  out += (lambda * a.trace() / n) * Mat::Identity(a.rows(), a.cols());
  return out;
}

/// Choi matrix sum e_ij (x) phi(e_ij), source index slow, built entry by entry.
inline Mat tomiyama_choi(int n, double lambda) {
  Mat c = Mat::Zero(n * n, n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s) {
          Complex v = 0.0;
          if (i == j && r == s) v += lambda / n;
          if (i == r && j == s) v += 1.0 - lambda;
          c(i * n + r, j * n + s) = v;
        }
  return c;
}

/// Closed-form Choi spectrum of the Tomiyama map.
inline std::vector<double> tomiyama_spectrum(int n, double lambda) {
  std::vector<double> out(static_cast<std::size_t>(n * n - 1), lambda / n);
  out.push_back(lambda / n + n * (1.0 - lambda));
  std::sort(out.begin(), out.end());
  return out;
}

/// 1 + 1/(nk - 1).
inline double tomiyama_threshold(int n, int k) { return 1.0 + 1.0 / (n * k - 1.0); }

/// Applies a map from its Choi matrix: phi(x) = sum_ij x_ij C[i, j] with C
/// split into d x d blocks.
inline Mat apply_from_choi(const Mat& c, int n, int d, const Mat& x) {
  Mat out = Mat::Zero(d, d);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out += x(i, j) * c.block(i * d, j * d, d, d);
  return out;
}

/// Partial transpose on the second factor of M_k (x) M_n.
inline Mat partial_transpose_second(const Mat& x, int k, int n) {
  Mat out(k * n, k * n);
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b)
      for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s) out(a * n + r, b * n + s) = x(a * n + s, b * n + r);
  return out;
}

/// SWAP on C^n (x) C^n.
inline Mat swap_operator(int n) {
  Mat s = Mat::Zero(n * n, n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) s(i * n + j, j * n + i) = 1.0;
  return s;
}

/// Largest eigenvalue magnitude of a Hermitian difference, used for the
/// operator-norm defects of explicit 2x2 computations.
inline double herm_norm(const Mat& m) {
  const auto s = spectrum(m);
  return std::max(std::abs(s.front()), std::abs(s.back()));
}

/// Tomiyama map on M_2 at lambda = 1: one-variable defect at e_11 is
/// ||(I/2)^2 - (I/2) I|| = 1/4.
inline double psi1_one_var_defect_e11() {
  const Mat h = 0.5 * Mat::Identity(2, 2);
  return op_norm(h * h - h * Mat::Identity(2, 2));
}

/// od_defect of psi_1 on M_2 at a = e_11 by brute force over matrix units.
inline double psi1_od_defect_e11() {
  const Mat a = unit_matrix(2, 0, 0);
  const Mat one = Mat::Identity(2, 2);
  const Mat pa = tomiyama_apply(1.0, a);
  const Mat p1 = tomiyama_apply(1.0, one);
  double worst = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const Mat b = unit_matrix(2, i, j);
      const Mat pb = tomiyama_apply(1.0, b);
      worst = std::max(worst, op_norm(pa * pb - p1 * tomiyama_apply(1.0, a * b)));
      worst = std::max(worst, op_norm(pb * pa - tomiyama_apply(1.0, b * a) * p1));
    }
  return worst;
}

/// pi(e_ij) = h^+ psi_1(e_ij) with h = I; multiplicativity defect over all
/// pairs of matrix units.
inline double psi1_mult_defect() {
  double worst = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) {
          const Mat prod = unit_matrix(2, i, j) * unit_matrix(2, k, l);
          worst = std::max(worst, op_norm(tomiyama_apply(1.0, unit_matrix(2, i, j)) *
                                              tomiyama_apply(1.0, unit_matrix(2, k, l)) -
                                          tomiyama_apply(1.0, prod)));
        }
  return worst;
}

/// lambda~ = m eps lambda / ((1 - eps) + m eps).
inline double lambda_tilde(double m, double eps, double lambda) { return m * eps * lambda / ((1.0 - eps) + m * eps); }

}  // namespace oracle
