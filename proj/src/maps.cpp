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

#include "posmap/maps.hpp"

#include <string>

#include "posmap/error.hpp"

namespace posmap {
namespace {

Eigen::Index idx(std::size_t v) { return static_cast<Eigen::Index>(v); }

// 1 where (r, s) fall in the same diagonal block of the target embedding.
Eigen::MatrixXd target_mask(const FiniteCStar& target) {
  const Eigen::Index dim = idx(target.embedding_dim());
  Eigen::MatrixXd mask = Eigen::MatrixXd::Zero(dim, dim);
  Eigen::Index offset = 0;
  for (std::size_t n : target.block_sizes()) {
    mask.block(offset, offset, idx(n), idx(n)).setOnes();
    offset += idx(n);
  }
  return mask;
}

}  // namespace

PMap::PMap(FiniteCStar source, FiniteCStar target, std::vector<CMatrix> choi_blocks)
    : source_(std::move(source)), target_(std::move(target)), choi_(std::move(choi_blocks)) {
  if (choi_.size() != source_.num_blocks()) {
    throw Error(ErrorCode::DimensionMismatch,
                "expected " + std::to_string(source_.num_blocks()) + " Choi blocks, got " +
                    std::to_string(choi_.size()));
  }
  const Eigen::Index dim = idx(target_.embedding_dim());
  const Eigen::MatrixXd mask = target_mask(target_);
  for (std::size_t b = 0; b < choi_.size(); ++b) {
    const Eigen::Index n = idx(source_.block_size(b));
    CMatrix& c = choi_[b];
    if (c.rows() != n * dim || c.cols() != n * dim) {
      throw Error(ErrorCode::DimensionMismatch,
                  "Choi block " + std::to_string(b) + " is " + std::to_string(c.rows()) + "x" +
                      std::to_string(c.cols()) + ", expected " + std::to_string(n * dim));
    }
    if (target_.num_blocks() > 1) {
      for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
          c.block(i * dim, j * dim, dim, dim).array() *= mask.array().cast<Complex>();
        }
      }
    }
  }
}

PMap from_action(const FiniteCStar& source, const FiniteCStar& target,
                 const std::vector<Element>& images) {
  if (images.size() != source.dimension()) {
    throw Error(ErrorCode::CountMismatch, "expected " + std::to_string(source.dimension()) +
                                              " images, got " + std::to_string(images.size()));
  }
  const Eigen::Index dim = idx(target.embedding_dim());
  std::vector<CMatrix> blocks;
  std::size_t k = 0;
  for (std::size_t b = 0; b < source.num_blocks(); ++b) {
    const Eigen::Index n = idx(source.block_size(b));
    CMatrix c = CMatrix::Zero(n * dim, n * dim);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j, ++k) {
        if (!(images[k].algebra() == target)) {
          throw Error(ErrorCode::AlgebraMismatch, "image " + std::to_string(k) + " is not in the target");
        }
        c.block(i * dim, j * dim, dim, dim) = images[k].to_matrix();
      }
    }
    blocks.push_back(std::move(c));
  }
  return PMap(source, target, std::move(blocks));
}

PMap from_choi(const FiniteCStar& source, const FiniteCStar& target, std::vector<CMatrix> blocks) {
  return PMap(source, target, std::move(blocks));
}

const std::vector<CMatrix>& choi(const PMap& phi) { return phi.choi_blocks(); }

Element apply(const PMap& phi, const Element& x) {
  if (!(x.algebra() == phi.source())) {
    throw Error(ErrorCode::AlgebraMismatch, "argument is not in the source algebra");
  }
  const Eigen::Index dim = idx(phi.target().embedding_dim());
  CMatrix out = CMatrix::Zero(dim, dim);
  for (std::size_t b = 0; b < phi.source().num_blocks(); ++b) {
    const CMatrix& c = phi.choi_block(b);
    const CMatrix& xb = x.block(b);
    for (Eigen::Index i = 0; i < xb.rows(); ++i) {
      for (Eigen::Index j = 0; j < xb.cols(); ++j) {
        if (xb(i, j) != Complex(0.0, 0.0)) out += xb(i, j) * c.block(i * dim, j * dim, dim, dim);
      }
    }
  }
  return Element::from_matrix(phi.target(), out);
}

Element apply_unit(const PMap& phi, const MatrixUnitIndex& u) {
  const Eigen::Index dim = idx(phi.target().embedding_dim());
  const CMatrix& c = phi.choi_block(u.block);
  return Element::from_matrix(phi.target(), c.block(idx(u.row) * dim, idx(u.col) * dim, dim, dim));
}

PMap compose(const PMap& phi, const PMap& psi) {
  if (!(psi.target() == phi.source())) {
    throw Error(ErrorCode::AlgebraMismatch, "compose: inner target differs from outer source");
  }
  std::vector<Element> images;
  for (const auto& u : matrix_unit_indices(psi.source())) images.push_back(apply(phi, apply_unit(psi, u)));
  return from_action(psi.source(), phi.target(), images);
}

PMap add(const PMap& phi, const PMap& psi) {
  if (!(phi.source() == psi.source()) || !(phi.target() == psi.target())) {
    throw Error(ErrorCode::AlgebraMismatch, "add: maps have different source or target");
  }
  std::vector<CMatrix> blocks;
  for (std::size_t b = 0; b < phi.choi_blocks().size(); ++b) blocks.push_back(phi.choi_block(b) + psi.choi_block(b));
  return PMap(phi.source(), phi.target(), std::move(blocks));
}

PMap scale(const PMap& phi, Complex c) {
  std::vector<CMatrix> blocks;
  for (const auto& blk : phi.choi_blocks()) blocks.push_back(c * blk);
  return PMap(phi.source(), phi.target(), std::move(blocks));
}

PMap tensor_id(const PMap& phi, std::size_t k) {
  if (!phi.source().is_single_block() || !phi.target().is_single_block()) {
    throw Error(ErrorCode::MultiBlockUnsupported, "tensor_id needs single-block algebras");
  }
  if (k == 0) throw Error(ErrorCode::BadRange, "tensor_id: k must be positive");
  const std::size_t n = phi.source().block_size(0);
  const std::size_t m = phi.target().block_size(0);
  const FiniteCStar source = FiniteCStar::matrix_algebra(k * n);
  const FiniteCStar target = FiniteCStar::matrix_algebra(k * m);
  std::vector<Element> images;
  images.reserve(source.dimension());
  for (std::size_t row = 0; row < k * n; ++row) {
    for (std::size_t col = 0; col < k * n; ++col) {
      CMatrix outer = CMatrix::Zero(idx(k), idx(k));
      outer(idx(row / n), idx(col / n)) = 1.0;
      const Element inner = apply_unit(phi, {0, row % n, col % n});
      images.emplace_back(target, std::vector<CMatrix>{kron(outer, inner.block(0))});
    }
  }
  return from_action(source, target, images);
}

double pmap_norm(const PMap& phi) { return norm(apply(phi, unit(phi.source()))); }

bool is_self_adjoint(const PMap& phi, double tol_rel) {
  for (const auto& c : phi.choi_blocks()) {
    if (!is_hermitian(c, tol_rel)) return false;
  }
  return true;
}

PMap identity_map(const FiniteCStar& algebra) { return from_action(algebra, algebra, matrix_units(algebra)); }

PMap transpose_map(const FiniteCStar& algebra) {
  std::vector<Element> images;
  for (const auto& u : matrix_unit_indices(algebra)) images.push_back(matrix_unit(algebra, {u.block, u.col, u.row}));
  return from_action(algebra, algebra, images);
}

PMap kraus_map(std::size_t n, std::size_t m, const std::vector<CMatrix>& kraus) {
  const FiniteCStar source = FiniteCStar::matrix_algebra(n);
  const FiniteCStar target = FiniteCStar::matrix_algebra(m);
  for (const auto& v : kraus) {
    if (v.rows() != idx(n) || v.cols() != idx(m)) {
      throw Error(ErrorCode::DimensionMismatch, "Kraus operators must be n x m");
    }
  }
  std::vector<Element> images;
  for (const auto& u : matrix_unit_indices(source)) {
    CMatrix img = CMatrix::Zero(idx(m), idx(m));
    for (const auto& v : kraus) img += v.row(idx(u.row)).adjoint() * v.row(idx(u.col));
    images.emplace_back(target, std::vector<CMatrix>{std::move(img)});
  }
  return from_action(source, target, images);
}

PMap trace_times_unit(std::size_t n, const FiniteCStar& target) {
  const FiniteCStar source = FiniteCStar::matrix_algebra(n);
  std::vector<Element> images;
  for (const auto& u : matrix_unit_indices(source)) {
    images.push_back(u.row == u.col ? unit(target) : Element(target));
  }
  return from_action(source, target, images);
}

}  // namespace posmap
