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

#include "posmap/orderzero.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>

#include "posmap/error.hpp"
#include "posmap/random.hpp"

namespace posmap {
namespace {

Eigen::Index idx(std::size_t v) { return static_cast<Eigen::Index>(v); }

// Matrix-unit product e_u e_v, or nullopt when it vanishes.
std::optional<MatrixUnitIndex> unit_product(const MatrixUnitIndex& u, const MatrixUnitIndex& v) {
  if (u.block != v.block || u.col != v.row) return std::nullopt;
  return MatrixUnitIndex{u.block, u.row, v.col};
}

std::size_t unit_position(const FiniteCStar& algebra, const MatrixUnitIndex& u) {
  std::size_t pos = 0;
  for (std::size_t b = 0; b < u.block; ++b) pos += algebra.block_size(b) * algebra.block_size(b);
  return pos + u.row * algebra.block_size(u.block) + u.col;
}

// max over pairs of ||pi(e_u) pi(e_v) - pi(e_u e_v)||.
double multiplicativity_defect(const FiniteCStar& source, const std::vector<Element>& pi) {
  const auto units = matrix_unit_indices(source);
  double worst = 0.0;
  for (std::size_t p = 0; p < units.size(); ++p) {
    for (std::size_t q = 0; q < units.size(); ++q) {
      Element diff = pi[p] * pi[q];
      if (const auto prod = unit_product(units[p], units[q])) diff = diff - pi[unit_position(source, *prod)];
      worst = std::max(worst, norm(diff));
    }
  }
  return worst;
}

// Positive pair a, b with ab = 0: complementary spectral supports in a shared
// random eigenbasis, per block.
std::pair<Element, Element> orthogonal_pair(const FiniteCStar& algebra, std::uint64_t seed) {
  Rng rng(seed);
  Element a(algebra);
  Element b(algebra);
  for (std::size_t blk = 0; blk < algebra.num_blocks(); ++blk) {
    const Eigen::Index n = idx(algebra.block_size(blk));
    const CMatrix u = rng.haar_unitary(n);
    const auto split = std::min<Eigen::Index>(n, static_cast<Eigen::Index>(rng.uniform() * static_cast<double>(n + 1)));
    RVector wa = RVector::Zero(n);
    RVector wb = RVector::Zero(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const double w = 1.0 - rng.uniform();  // (0, 1]
      (i < split ? wa : wb)(i) = w;
    }
    a.block(blk) = u * wa.cast<Complex>().asDiagonal() * u.adjoint();
    b.block(blk) = u * wb.cast<Complex>().asDiagonal() * u.adjoint();
  }
  return {std::move(a), std::move(b)};
}

Element blockwise_pinv_psd(const Element& h, double cutoff) {
  std::vector<CMatrix> blocks;
  for (const auto& b : h.blocks()) blocks.push_back(pinv_psd(hermitian_part(b), cutoff));
  return Element(h.algebra(), std::move(blocks));
}

}  // namespace

double one_var_defect(const PMap& phi, const Element& a) {
  if (!is_positive_contraction(a)) {
    throw Error(ErrorCode::NotPositiveContraction, "one_var_defect needs a positive contraction");
  }
  const Element pa = apply(phi, a);
  const Element pa2 = apply(phi, a * a);
  const Element p1 = apply(phi, unit(phi.source()));
  return norm(pa * pa - pa2 * p1);
}

DefectReport order_zero_defect(const PMap& phi, std::size_t samples, std::uint64_t seed) {
  if (samples == 0) throw Error(ErrorCode::BadRange, "samples must be >= 1");
  DefectReport report;
  report.samples = samples;
  report.seed = seed;
  for (std::size_t s = 0; s < samples; ++s) {
    const std::uint64_t sample_seed = mix_seed(seed, s);
    const Element a = random_positive_contraction(phi.source(), sample_seed);
    report.one_var_sup = std::max(report.one_var_sup, one_var_defect(phi, a));
    report.od_sup = std::max(report.od_sup, od_defect(phi, a));

    const auto [p, q] = orthogonal_pair(phi.source(), mix_seed(sample_seed, 1));
    report.orth_pair_sup = std::max(report.orth_pair_sup, norm(apply(phi, p) * apply(phi, q)));
    report.one_var_sup = std::max({report.one_var_sup, one_var_defect(phi, p), one_var_defect(phi, q)});
  }
  return report;
}

double od_defect(const PMap& phi, const Element& a) {
  const Element pa = apply(phi, a);
  const Element p1 = apply(phi, unit(phi.source()));
  double worst = 0.0;
  for (const auto& u : matrix_unit_indices(phi.source())) {
    const Element e = matrix_unit(phi.source(), u);
    const Element pe = apply_unit(phi, u);
    worst = std::max(worst, norm(pa * pe - p1 * apply(phi, a * e)));
    worst = std::max(worst, norm(pe * pa - apply(phi, e * a) * p1));
  }
  return worst;
}

double od_star_symmetry_defect(const PMap& phi, const Element& a) {
  return std::abs(od_defect(phi, a) - od_defect(phi, adj(a)));
}

double kadison_gap(const PMap& phi, const Element& a) {
  const Element pa = apply(phi, a);
  return min_eig(apply(phi, adj(a) * a) - adj(pa) * pa);
}

double schwartz_gap(const PMap& phi, const Element& a, const Element& b) {
  const Element pbb = apply(phi, adj(b) * b);
  const Element pba = apply(phi, adj(b) * a);
  const Element paa = apply(phi, adj(a) * a);
  double worst = std::numeric_limits<double>::infinity();
  for (std::size_t blk = 0; blk < paa.blocks().size(); ++blk) {
    const CMatrix x = pinv_sqrt(hermitian_part(pbb.block(blk))) * pba.block(blk);
    const CMatrix gap = hermitian_part(paa.block(blk) - x.adjoint() * x);
    worst = std::min(worst, psd_min_eig(gap));
  }
  return worst;
}

OzDecomposition oz_decompose(const PMap& phi, double cutoff) {
  const Element h = apply(phi, unit(phi.source()));
  const Element h_pinv = blockwise_pinv_psd(h, cutoff);
  OzDecomposition out{h, {}, 0.0, 0.0, 0.0};
  for (const auto& u : matrix_unit_indices(phi.source())) {
    const Element image = apply_unit(phi, u);
    Element pi = h_pinv * image;
    out.reconstruct_defect = std::max(out.reconstruct_defect, norm(h * pi - image));
    out.commute_defect = std::max(out.commute_defect, norm(h * pi - pi * h));
    out.pi_images.push_back(std::move(pi));
  }
  out.mult_defect = multiplicativity_defect(phi.source(), out.pi_images);
  return out;
}

PMap oz_construct(const FiniteCStar& source, const std::vector<Element>& pi_images, const Element& h) {
  if (pi_images.size() != source.dimension()) {
    throw Error(ErrorCode::CountMismatch, "expected one image per matrix unit");
  }
  for (const auto& img : pi_images) {
    if (!(img.algebra() == h.algebra())) throw Error(ErrorCode::AlgebraMismatch, "pi images and h differ in algebra");
  }
  if (!is_positive_contraction(h)) throw Error(ErrorCode::NotPositiveContraction, "h must be a positive contraction");

  constexpr double kStructureTol = 1e-10;
  const double mult = multiplicativity_defect(source, pi_images);
  if (mult > kStructureTol) {
    throw Error(ErrorCode::NotHomomorphism, "pi(e)pi(f) differs from pi(ef) by " + std::to_string(mult));
  }
  const auto units = matrix_unit_indices(source);
  for (std::size_t p = 0; p < units.size(); ++p) {
    const MatrixUnitIndex star{units[p].block, units[p].col, units[p].row};
    const double err = norm(adj(pi_images[p]) - pi_images[unit_position(source, star)]);
    if (err > kStructureTol) {
      throw Error(ErrorCode::NotHomomorphism, "pi(e)* differs from pi(e*) by " + std::to_string(err));
    }
  }
  std::vector<Element> images;
  for (const auto& pi : pi_images) {
    const double comm = norm(h * pi - pi * h);
    if (comm > kStructureTol) throw Error(ErrorCode::NotCommuting, "||[h, pi(e)]|| = " + std::to_string(comm));
    images.push_back(h * pi);
  }
  return from_action(source, h.algebra(), images);
}

RepairResult cp_repair(const PMap& phi) {
  if (!phi.source().is_single_block()) {
    throw Error(ErrorCode::MultiBlockUnsupported, "cp_repair needs a single-block source");
  }
  const std::size_t n = phi.source().block_size(0);
  double eps = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Element left = apply_unit(phi, {0, i, 0});
    for (std::size_t j = 0; j < n; ++j) {
      const Element right = apply_unit(phi, {0, 0, j});
      eps = std::max(eps, norm(left * right - apply_unit(phi, {0, i, j})));
    }
  }
  const double weight = static_cast<double>(n) * eps;
  PMap repaired = add(phi, scale(trace_times_unit(n, phi.target()), Complex(weight, 0.0)));
  return {std::move(repaired), eps};
}

PolarLift polar_lift(const PMap& phi, const Element& x, const Element& y) {
  if (!(x.algebra() == phi.target())) throw Error(ErrorCode::AlgebraMismatch, "x must lie in the target");
  if (!is_unitary(x)) throw Error(ErrorCode::NotUnitary, "polar_lift target element is not unitary");
  std::vector<CMatrix> blocks;
  for (const auto& b : y.blocks()) blocks.push_back(polar_unitary(b));
  Element u(y.algebra(), std::move(blocks));
  PolarLift out{u, 0.0, 0.0, false};
  out.input_error = norm(apply(phi, y) - x);
  out.lifted_error = norm(apply(phi, u) - x);
  out.bound_ok = out.lifted_error < 3.0 * std::sqrt(out.input_error);
  return out;
}

namespace {

void require_block_layout(const CMatrix& m, std::size_t block_dim) {
  if (m.rows() != m.cols() || block_dim == 0 || m.rows() % idx(block_dim) != 0 || m.rows() == 0) {
    throw Error(ErrorCode::DimensionMismatch, "matrix is not an L x L array of d x d blocks");
  }
}

}  // namespace

bool block_column_positive_check(const CMatrix& a, std::size_t block_dim, double eps) {
  require_block_layout(a, block_dim);
  if (!is_hermitian(a, tol::kPsd) || !is_psd(hermitian_part(a)) || op_norm(a) > 1.0 + tol::kPsd) {
    throw Error(ErrorCode::NotPositiveContraction, "block_column_positive_check needs a positive contraction");
  }
  const Eigen::Index d = idx(block_dim);
  if (!(op_norm(a.topLeftCorner(d, d)) < eps)) {
    throw Error(ErrorCode::PreconditionFailed, "||a_11|| >= eps");
  }
  const CMatrix column = a.leftCols(d);
  return op_norm(column.adjoint() * column) < eps;
}

bool block_column_unitary_check(const CMatrix& u, std::size_t block_dim, double eps) {
  require_block_layout(u, block_dim);
  const Eigen::Index n = u.rows();
  if (op_norm(u.adjoint() * u - CMatrix::Identity(n, n)) > 1e-9) {
    throw Error(ErrorCode::NotUnitary, "block_column_unitary_check needs a unitary");
  }
  const Eigen::Index d = idx(block_dim);
  const CMatrix corner = u.topLeftCorner(d, d);
  if (!(op_norm(corner.adjoint() * corner - CMatrix::Identity(d, d)) < eps)) {
    throw Error(ErrorCode::PreconditionFailed, "||u_11^* u_11 - 1|| >= eps");
  }
  const CMatrix tail = u.block(d, 0, n - d, d);
  return op_norm(tail.adjoint() * tail) < eps;
}

}  // namespace posmap
