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

// Dense complex matrix substrate. Everything here is a pure function of its
// arguments and is safe to call concurrently.

#pragma once

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

namespace posmap {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

namespace tol {
// Relative Hermiticity tolerance accepted by the eigensolver.
inline constexpr double kHermitian = 1e-10;
// h is PSD iff min eigenvalue >= -kPsd * max(1, ||h||).
inline constexpr double kPsd = 1e-9;
// Eigenvalues <= kSupportCutoff * ||b|| are treated as zero.
inline constexpr double kSupportCutoff = 1e-10;
}  // namespace tol

struct EigDecomp {
  RVector eigenvalues;  // ascending
  CMatrix basis;        // unitary; column j is the eigenvector for eigenvalues[j]
};

/// Eigendecomposition of a Hermitian matrix. The input is symmetrized before
/// solving. Eigenvectors are phase-normalized (first non-negligible entry real
/// and positive) and exactly degenerate eigenvalues are ordered by
/// lexicographic comparison of their eigenvectors, so output is reproducible.
EigDecomp eig_hermitian(const CMatrix& h);

/// Eigenvalues only, ascending.
RVector eigvals_hermitian(const CMatrix& h);

/// Largest singular value.
double op_norm(const CMatrix& m);

/// Smallest eigenvalue of a Hermitian matrix.
double psd_min_eig(const CMatrix& h);

/// True iff min eigenvalue >= -tol_rel * max(1, ||h||).
bool is_psd(const CMatrix& h, double tol_rel = tol::kPsd);

CMatrix hermitian_part(const CMatrix& m);

bool is_hermitian(const CMatrix& m, double tol_rel = tol::kHermitian);

/// Spectral projection onto eigenvalues > cutoff * ||b||.
CMatrix support_projection(const CMatrix& b, double cutoff = tol::kSupportCutoff);

/// Square root of a PSD matrix (negative eigenvalues clipped to zero).
CMatrix psd_sqrt(const CMatrix& a);

/// Pseudo-inverse square root p(b) b^{-1/2} p(b), computed on the support of b.
CMatrix pinv_sqrt(const CMatrix& b, double cutoff = tol::kSupportCutoff);

/// Pseudo-inverse p(b) b^{-1} p(b).
CMatrix pinv_psd(const CMatrix& b, double cutoff = tol::kSupportCutoff);

/// The unique x with b^{1/2} x = a^{1/2} and p(b) x = x, for 0 <= a <= b.
/// Throws DominanceViolated when a is not dominated by b.
CMatrix support_pinv_sqrt(const CMatrix& b, const CMatrix& a,
                          double cutoff = tol::kSupportCutoff);

/// The unique y with b y = a and p(b) y = y, for commuting a, b with a
/// supported inside b. Throws NotCommuting / DominanceViolated.
CMatrix support_pinv(const CMatrix& b, const CMatrix& a,
                     double cutoff = tol::kSupportCutoff);

/// Unitary factor of the polar decomposition y = U |y|. On the kernel of |y|
/// the partial isometry is completed by a deterministic orthonormal basis
/// choice, so y = 0 gives the identity.
CMatrix polar_unitary(const CMatrix& y);

/// Kronecker product a (x) b, with a as the outer (slow) index.
CMatrix kron(const CMatrix& a, const CMatrix& b);

/// Thin QR with Q having orthonormal columns; returns {Q, R} with m = Q R.
std::pair<CMatrix, CMatrix> thin_qr(const CMatrix& m);

}  // namespace posmap
