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

#include "posmap/positivity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "posmap/error.hpp"
#include "posmap/parallel.hpp"
#include "posmap/random.hpp"

namespace posmap {

std::string_view to_string(KposStatus status) {
  switch (status) {
    case KposStatus::CertifiedPositive: return "CERTIFIED_POSITIVE";
    case KposStatus::Unfalsified: return "UNFALSIFIED";
    case KposStatus::Violated: return "VIOLATED";
  }
  return "UNKNOWN";
}

CVector Witness::assemble() const {
  if (factors_left.empty()) return CVector(0);
  const Eigen::Index n = factors_left.front().size();
  const Eigen::Index d = factors_right.front().size();
  CVector x = CVector::Zero(n * d);
  for (std::size_t r = 0; r < factors_left.size() && r < factors_right.size(); ++r) {
    for (Eigen::Index i = 0; i < n; ++i) x.segment(i * d, d) += factors_left[r](i) * factors_right[r];
  }
  return x;
}

bool is_cp(const PMap& phi, double tol) {
  for (const auto& c : phi.choi_blocks()) {
    if (!is_hermitian(c, tol)) return false;
    if (!is_psd(hermitian_part(c), tol)) return false;
  }
  return true;
}

double choi_min_eig(const PMap& phi) {
  double out = std::numeric_limits<double>::infinity();
  for (const auto& c : phi.choi_blocks()) out = std::min(out, psd_min_eig(hermitian_part(c)));
  return out;
}

double tomiyama_threshold(std::size_t n, std::size_t k) {
  if (k < 1 || k > n || n * k < 2) {
    throw Error(ErrorCode::BadRange, "tomiyama_threshold needs 1 <= k <= n and nk >= 2 (n=" +
                                         std::to_string(n) + ", k=" + std::to_string(k) + ")");
  }
  const double nk = static_cast<double>(n * k);
  return nk / (nk - 1.0);
}

PMap tomiyama_map(std::size_t n, double lambda) {
  if (n < 2) throw Error(ErrorCode::BadRange, "tomiyama_map needs n >= 2");
  if (!std::isfinite(lambda) || lambda < 0.0) throw Error(ErrorCode::BadRange, "lambda must be finite and >= 0");
  const FiniteCStar algebra = FiniteCStar::matrix_algebra(n);
  const auto dim = static_cast<Eigen::Index>(n);
  const double trace_weight = lambda / static_cast<double>(n);
  std::vector<Element> images;
  for (const auto& u : matrix_unit_indices(algebra)) {
    CMatrix img = CMatrix::Zero(dim, dim);
    img(static_cast<Eigen::Index>(u.row), static_cast<Eigen::Index>(u.col)) = 1.0 - lambda;
    if (u.row == u.col) img.diagonal().array() += trace_weight;
    images.emplace_back(algebra, std::vector<CMatrix>{std::move(img)});
  }
  return from_action(algebra, algebra, images);
}

namespace {

constexpr std::size_t kMaxSweeps = 500;
constexpr double kImprovementTol = 1e-12;

struct SearchResult {
  double value = std::numeric_limits<double>::infinity();
  CMatrix left;   // n x k, column r = a_r
  CMatrix right;  // d x k, orthonormal columns, column r = b_r
};

// Smallest eigenpair of a Hermitian matrix.
std::pair<double, CVector> lowest(const CMatrix& h) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(hermitian_part(h));
  if (solver.info() != Eigen::Success) throw Error(ErrorCode::NumericalFailure, "seesaw eigensolve failed");
  return {solver.eigenvalues()(0), solver.eigenvectors().col(0)};
}

// x = vec(A B^T) with x index i * d + s. For fixed B the map vec(A) -> x is
// the isometry (when B has orthonormal columns) built here, and vice versa.
CMatrix embed_left(const CMatrix& right, Eigen::Index n) {
  const Eigen::Index d = right.rows();
  const Eigen::Index k = right.cols();
  CMatrix m = CMatrix::Zero(n * d, n * k);
  for (Eigen::Index i = 0; i < n; ++i) m.block(i * d, i * k, d, k) = right;
  return m;
}

CMatrix embed_right(const CMatrix& left, Eigen::Index d) {
  const Eigen::Index n = left.rows();
  const Eigen::Index k = left.cols();
  CMatrix m = CMatrix::Zero(n * d, d * k);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index s = 0; s < d; ++s) m.block(i * d + s, s * k, 1, k) = left.row(i);
  }
  return m;
}

SearchResult seesaw(const CMatrix& c, Eigen::Index n, Eigen::Index d, Eigen::Index k, std::uint64_t seed) {
  Rng rng(seed);
  SearchResult out;
  out.right = thin_qr(rng.gaussian_matrix(d, k)).first;
  out.left = CMatrix::Zero(n, k);
  double previous = std::numeric_limits<double>::infinity();
  for (std::size_t sweep = 0; sweep < kMaxSweeps; ++sweep) {
    const CMatrix ml = embed_left(out.right, n);
    const auto [va, vec_a] = lowest(ml.adjoint() * c * ml);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index r = 0; r < k; ++r) out.left(i, r) = vec_a(i * k + r);
    }
    out.left = thin_qr(out.left).first;

    const CMatrix mr = embed_right(out.left, d);
    const auto [vb, vec_b] = lowest(mr.adjoint() * c * mr);
    CMatrix right(d, k);
    for (Eigen::Index s = 0; s < d; ++s) {
      for (Eigen::Index r = 0; r < k; ++r) right(s, r) = vec_b(s * k + r);
    }
    auto [q, rr] = thin_qr(right);
    out.left = out.left * rr.transpose();
    out.right = std::move(q);
    out.value = vb;

    if (previous - vb < kImprovementTol) break;
    previous = vb;
  }
  return out;
}

Witness make_witness(const SearchResult& r, std::size_t k, std::size_t block, const CMatrix& c) {
  Witness w;
  w.k = k;
  w.source_block = block;
  for (Eigen::Index j = 0; j < r.left.cols(); ++j) {
    w.factors_left.push_back(r.left.col(j));
    w.factors_right.push_back(r.right.col(j));
  }
  const CVector x = w.assemble();
  w.vector_norm = x.norm();
  w.value = x.dot(c * x).real();
  return w;
}

}  // namespace

KposVerdict k_positivity_falsify(const PMap& phi, std::size_t k, std::size_t restarts,
                                 std::uint64_t seed, double tol) {
  if (k == 0) throw Error(ErrorCode::BadRange, "k must be >= 1");
  if (restarts == 0) throw Error(ErrorCode::BadRange, "restarts must be >= 1");
  const auto d = static_cast<Eigen::Index>(phi.target().embedding_dim());

  KposVerdict verdict;
  verdict.restarts_used = restarts;
  verdict.best_value = std::numeric_limits<double>::infinity();
  double best_violation_ratio = 0.0;

  for (std::size_t b = 0; b < phi.source().num_blocks(); ++b) {
    const CMatrix c = hermitian_part(phi.choi_block(b));
    const auto n = static_cast<Eigen::Index>(phi.source().block_size(b));
    const Eigen::Index k_eff = std::min<Eigen::Index>({static_cast<Eigen::Index>(k), n, d});

    std::vector<SearchResult> results(restarts);
    parallel_for(restarts, [&](std::size_t r) { results[r] = seesaw(c, n, d, k_eff, seed ^ r); });

    std::size_t best = 0;
    for (std::size_t r = 1; r < restarts; ++r) {
      if (results[r].value < results[best].value) best = r;
    }
    Witness w = make_witness(results[best], k, b, c);
    verdict.best_value = std::min(verdict.best_value, w.value);

    const double cnorm = op_norm(c);
    if (w.value < -tol * cnorm) {
      const double ratio = cnorm > 0.0 ? w.value / cnorm : w.value;
      if (!verdict.witness || ratio < best_violation_ratio) {
        best_violation_ratio = ratio;
        verdict.witness = std::move(w);
      }
    }
  }

  if (verdict.witness) {
    if (!witness_verify(phi, *verdict.witness, tol)) {
      throw Error(ErrorCode::NumericalFailure, "falsifier produced a witness that does not verify");
    }
    verdict.status = KposStatus::Violated;
  } else if (is_cp(phi)) {
    verdict.status = KposStatus::CertifiedPositive;
  } else {
    verdict.status = KposStatus::Unfalsified;
  }
  return verdict;
}

bool witness_verify(const PMap& phi, const Witness& w, double tol) {
  if (w.source_block >= phi.source().num_blocks()) {
    throw Error(ErrorCode::DimensionMismatch, "witness source block out of range");
  }
  const auto n = static_cast<Eigen::Index>(phi.source().block_size(w.source_block));
  const auto d = static_cast<Eigen::Index>(phi.target().embedding_dim());
  for (const auto& a : w.factors_left) {
    if (a.size() != n) throw Error(ErrorCode::DimensionMismatch, "left factor has wrong dimension");
  }
  for (const auto& b : w.factors_right) {
    if (b.size() != d) throw Error(ErrorCode::DimensionMismatch, "right factor has wrong dimension");
  }
  if (w.factors_left.empty() || w.factors_left.size() != w.factors_right.size()) return false;
  if (w.factors_left.size() > w.k) return false;

  const CMatrix c = hermitian_part(phi.choi_block(w.source_block));
  const CVector x = w.assemble();
  const double x_norm = x.norm();
  if (x_norm < 1.0 - 1e-9 || x_norm > 1.0 + 1e-9) return false;
  const double value = x.dot(c * x).real();
  const double cnorm = op_norm(c);
  if (std::abs(value - w.value) > 1e-9 * std::max(1.0, cnorm)) return false;
  return value < -tol * cnorm;
}

}  // namespace posmap
