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

#include "posmap/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "posmap/error.hpp"

namespace posmap {
namespace {

void require_square(const CMatrix& h, const char* what) {
  if (h.rows() != h.cols()) {
    throw Error(ErrorCode::NonSquare, std::string(what) + ": " + std::to_string(h.rows()) +
                                          "x" + std::to_string(h.cols()));
  }
}

void require_finite(const CMatrix& h) {
  if (!h.allFinite()) throw Error(ErrorCode::NumericalFailure, "non-finite matrix entry");
}

CMatrix checked_hermitian(const CMatrix& h) {
  require_square(h, "eig_hermitian");
  require_finite(h);
  const double scale = h.norm();
  const double asym = (h - h.adjoint()).norm();
  if (asym > tol::kHermitian * scale) {
    throw Error(ErrorCode::NotHermitian,
                "||h - h*||_F = " + std::to_string(asym) + " exceeds tolerance");
  }
  return hermitian_part(h);
}

bool lex_less(const CVector& a, const CVector& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a(i).real() != b(i).real()) return a(i).real() < b(i).real();
    if (a(i).imag() != b(i).imag()) return a(i).imag() < b(i).imag();
  }
  return false;
}

void normalize_phase(Eigen::Ref<CVector> v) {
  const double peak = v.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double mag = std::abs(v(i));
    if (mag > 1e-8 * peak) {
      v *= std::conj(v(i)) / mag;
      v(i) = Complex(mag, 0.0);
      return;
    }
  }
}

// Orthonormalizes `candidates` columns in order and keeps the first `count`.
CMatrix gram_schmidt(const CMatrix& candidates, Eigen::Index count) {
  CMatrix out(candidates.rows(), count);
  Eigen::Index kept = 0;
  for (Eigen::Index j = 0; j < candidates.cols() && kept < count; ++j) {
    CVector v = candidates.col(j);
    for (int pass = 0; pass < 2; ++pass) {
      for (Eigen::Index k = 0; k < kept; ++k) v -= out.col(k) * out.col(k).dot(v);
    }
    const double nv = v.norm();
    if (nv > 1e-8) out.col(kept++) = v / nv;
  }
  if (kept < count) throw Error(ErrorCode::NumericalFailure, "orthonormal completion failed");
  return out;
}

}  // namespace

CMatrix hermitian_part(const CMatrix& m) { return 0.5 * (m + m.adjoint()); }

bool is_hermitian(const CMatrix& m, double tol_rel) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).norm() <= tol_rel * std::max(1.0, m.norm());
}

EigDecomp eig_hermitian(const CMatrix& h) {
  const CMatrix sym = checked_hermitian(h);
  const Eigen::Index n = sym.rows();
  if (n == 0) return {RVector(0), CMatrix(0, 0)};

  Eigen::SelfAdjointEigenSolver<CMatrix> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::NumericalFailure, "Hermitian eigensolver did not converge");
  }
  RVector values = solver.eigenvalues();
  CMatrix basis = solver.eigenvectors();
  for (Eigen::Index j = 0; j < n; ++j) normalize_phase(basis.col(j));

  // Degenerate clusters: order eigenvectors lexicographically.
  const double scale = std::max(1.0, values.cwiseAbs().maxCoeff());
  Eigen::Index start = 0;
  while (start < n) {
    Eigen::Index end = start + 1;
    while (end < n && values(end) - values(end - 1) <= 1e-12 * scale) ++end;
    if (end - start > 1) {
      std::vector<Eigen::Index> order(static_cast<std::size_t>(end - start));
      std::iota(order.begin(), order.end(), start);
      std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
        return lex_less(basis.col(a), basis.col(b));
      });
      CMatrix block(n, end - start);
      for (std::size_t k = 0; k < order.size(); ++k) {
        block.col(static_cast<Eigen::Index>(k)) = basis.col(order[k]);
      }
      basis.middleCols(start, end - start) = block;
    }
    start = end;
  }
  return {std::move(values), std::move(basis)};
}

RVector eigvals_hermitian(const CMatrix& h) {
  const CMatrix sym = checked_hermitian(h);
  if (sym.rows() == 0) return RVector(0);
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(sym, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::NumericalFailure, "Hermitian eigensolver did not converge");
  }
  return solver.eigenvalues();
}

double op_norm(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  require_finite(m);
  const CMatrix gram = m.rows() >= m.cols() ? CMatrix(m.adjoint() * m) : CMatrix(m * m.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(hermitian_part(gram), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::NumericalFailure, "op_norm: eigensolver did not converge");
  }
  return std::sqrt(std::max(0.0, solver.eigenvalues().maxCoeff()));
}

double psd_min_eig(const CMatrix& h) {
  const RVector values = eigvals_hermitian(h);
  return values.size() == 0 ? 0.0 : values(0);
}

bool is_psd(const CMatrix& h, double tol_rel) {
  const RVector values = eigvals_hermitian(h);
  if (values.size() == 0) return true;
  const double norm = std::max(std::abs(values(0)), std::abs(values(values.size() - 1)));
  return values(0) >= -tol_rel * std::max(1.0, norm);
}

namespace {

// Applies f to eigenvalues above the support cutoff and zero elsewhere.
template <class F>
CMatrix spectral_on_support(const CMatrix& b, double cutoff, F f) {
  const EigDecomp eig = eig_hermitian(b);
  const Eigen::Index n = b.rows();
  if (n == 0) return CMatrix(0, 0);
  const double norm = eig.eigenvalues.cwiseAbs().maxCoeff();
  CMatrix out = CMatrix::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const double mu = eig.eigenvalues(j);
    if (mu > cutoff * norm && mu > 0.0) {
      out.noalias() += f(mu) * eig.basis.col(j) * eig.basis.col(j).adjoint();
    }
  }
  return out;
}

}  // namespace

CMatrix support_projection(const CMatrix& b, double cutoff) {
  return spectral_on_support(b, cutoff, [](double) { return 1.0; });
}

CMatrix psd_sqrt(const CMatrix& a) {
  return spectral_on_support(a, 0.0, [](double mu) { return std::sqrt(mu); });
}

CMatrix pinv_sqrt(const CMatrix& b, double cutoff) {
  return spectral_on_support(b, cutoff, [](double mu) { return 1.0 / std::sqrt(mu); });
}

CMatrix pinv_psd(const CMatrix& b, double cutoff) {
  return spectral_on_support(b, cutoff, [](double mu) { return 1.0 / mu; });
}

CMatrix support_pinv_sqrt(const CMatrix& b, const CMatrix& a, double cutoff) {
  require_square(b, "support_pinv_sqrt(b)");
  require_square(a, "support_pinv_sqrt(a)");
  if (a.rows() != b.rows()) throw Error(ErrorCode::DimensionMismatch, "support_pinv_sqrt");
  const double bnorm = op_norm(b);
  const double gap = psd_min_eig(b - a);
  if (gap < -tol::kPsd * bnorm) {
    throw Error(ErrorCode::DominanceViolated,
                "min eig(b - a) = " + std::to_string(gap) + " (a is not <= b)");
  }
  return pinv_sqrt(b, cutoff) * psd_sqrt(a);
}

CMatrix support_pinv(const CMatrix& b, const CMatrix& a, double cutoff) {
  require_square(b, "support_pinv(b)");
  require_square(a, "support_pinv(a)");
  if (a.rows() != b.rows()) throw Error(ErrorCode::DimensionMismatch, "support_pinv");
  const double anorm = op_norm(a);
  const double bnorm = op_norm(b);
  const double comm = op_norm(a * b - b * a);
  if (comm > 1e-9 * anorm * bnorm) {
    throw Error(ErrorCode::NotCommuting, "||[a,b]|| = " + std::to_string(comm));
  }
  const double gap = psd_min_eig(b - a);
  if (gap < -tol::kPsd * bnorm) {
    throw Error(ErrorCode::DominanceViolated,
                "min eig(b - a) = " + std::to_string(gap) + " (a is not <= b)");
  }
  return pinv_psd(b, cutoff) * a;
}

CMatrix polar_unitary(const CMatrix& y) {
  require_square(y, "polar_unitary");
  require_finite(y);
  const Eigen::Index n = y.rows();
  if (n == 0) return CMatrix(0, 0);

  Eigen::JacobiSVD<CMatrix> svd(y, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const RVector& s = svd.singularValues();
  const double smax = s(0);
  Eigen::Index rank = 0;
  while (rank < n && s(rank) > tol::kSupportCutoff * smax && s(rank) > 0.0) ++rank;

  const CMatrix range_left = svd.matrixU().leftCols(rank);
  const CMatrix range_right = svd.matrixV().leftCols(rank);
  CMatrix u = range_left * range_right.adjoint();
  if (rank == n) return u;

  // Complete on ker|y|: map the kernel onto (range y)^perp by the polar factor
  // of the orthogonal projection, which is basis independent and gives the
  // identity wherever the two subspaces coincide.
  const Eigen::Index q = n - rank;
  const CMatrix kernel = svd.matrixV().rightCols(q);
  const CMatrix proj_perp = CMatrix::Identity(n, n) - range_left * range_left.adjoint();
  const CMatrix t = proj_perp * kernel;
  Eigen::JacobiSVD<CMatrix> tsvd(t, Eigen::ComputeThinU | Eigen::ComputeThinV);
  CMatrix completion;
  if (tsvd.singularValues()(q - 1) > 1e-8) {
    completion = tsvd.matrixU() * tsvd.matrixV().adjoint();
  } else {
    CMatrix candidates(n, q + n);
    candidates << t, proj_perp;
    completion = gram_schmidt(candidates, q);
  }
  u.noalias() += completion * kernel.adjoint();
  return u;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

std::pair<CMatrix, CMatrix> thin_qr(const CMatrix& m) {
  const Eigen::Index rows = m.rows();
  const Eigen::Index cols = m.cols();
  Eigen::HouseholderQR<CMatrix> qr(m);
  CMatrix q = qr.householderQ() * CMatrix::Identity(rows, cols);
  CMatrix r = qr.matrixQR().topRows(cols).triangularView<Eigen::Upper>();
  return {std::move(q), std::move(r)};
}

}  // namespace posmap
