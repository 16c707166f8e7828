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

#include "posmap/cstar.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "posmap/error.hpp"
#include "posmap/random.hpp"

namespace posmap {

FiniteCStar::FiniteCStar(std::vector<std::size_t> block_sizes)
    : block_sizes_(std::move(block_sizes)) {
  if (block_sizes_.empty()) throw Error(ErrorCode::BadRange, "algebra needs at least one block");
  for (std::size_t n : block_sizes_) {
    if (n == 0) throw Error(ErrorCode::BadRange, "block sizes must be positive");
  }
}

std::size_t FiniteCStar::dimension() const {
  std::size_t total = 0;
  for (std::size_t n : block_sizes_) total += n * n;
  return total;
}

std::size_t FiniteCStar::embedding_dim() const {
  std::size_t total = 0;
  for (std::size_t n : block_sizes_) total += n;
  return total;
}

std::size_t FiniteCStar::block_offset(std::size_t b) const {
  std::size_t offset = 0;
  for (std::size_t i = 0; i < b; ++i) offset += block_sizes_.at(i);
  return offset;
}

FiniteCStar direct_sum(const std::vector<FiniteCStar>& parts) {
  std::vector<std::size_t> sizes;
  for (const auto& p : parts) sizes.insert(sizes.end(), p.block_sizes().begin(), p.block_sizes().end());
  return FiniteCStar(std::move(sizes));
}

Element::Element(FiniteCStar algebra) : algebra_(std::move(algebra)) {
  blocks_.reserve(algebra_.num_blocks());
  for (std::size_t n : algebra_.block_sizes()) {
    const auto dim = static_cast<Eigen::Index>(n);
    blocks_.push_back(CMatrix::Zero(dim, dim));
  }
}

Element::Element(FiniteCStar algebra, std::vector<CMatrix> blocks)
    : algebra_(std::move(algebra)), blocks_(std::move(blocks)) {
  if (blocks_.size() != algebra_.num_blocks()) {
    throw Error(ErrorCode::DimensionMismatch,
                "expected " + std::to_string(algebra_.num_blocks()) + " blocks, got " +
                    std::to_string(blocks_.size()));
  }
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    const auto n = static_cast<Eigen::Index>(algebra_.block_size(b));
    if (blocks_[b].rows() != n || blocks_[b].cols() != n) {
      throw Error(ErrorCode::DimensionMismatch, "block " + std::to_string(b) + " is " +
                                                    std::to_string(blocks_[b].rows()) + "x" +
                                                    std::to_string(blocks_[b].cols()) +
                                                    ", expected " + std::to_string(n));
    }
  }
}

CMatrix Element::to_matrix() const {
  const auto dim = static_cast<Eigen::Index>(algebra_.embedding_dim());
  CMatrix m = CMatrix::Zero(dim, dim);
  Eigen::Index offset = 0;
  for (const auto& blk : blocks_) {
    m.block(offset, offset, blk.rows(), blk.cols()) = blk;
    offset += blk.rows();
  }
  return m;
}

Element Element::from_matrix(const FiniteCStar& algebra, const CMatrix& m) {
  const auto dim = static_cast<Eigen::Index>(algebra.embedding_dim());
  if (m.rows() != dim || m.cols() != dim) {
    throw Error(ErrorCode::DimensionMismatch, "matrix does not match embedding dimension");
  }
  std::vector<CMatrix> blocks;
  Eigen::Index offset = 0;
  for (std::size_t n : algebra.block_sizes()) {
    const auto sz = static_cast<Eigen::Index>(n);
    blocks.push_back(m.block(offset, offset, sz, sz));
    offset += sz;
  }
  return Element(algebra, std::move(blocks));
}

namespace {

void require_same(const Element& x, const Element& y) {
  if (!(x.algebra() == y.algebra())) throw Error(ErrorCode::AlgebraMismatch, "elements live in different algebras");
}

template <class F>
Element blockwise(const Element& x, F f) {
  std::vector<CMatrix> out;
  out.reserve(x.blocks().size());
  for (const auto& b : x.blocks()) out.push_back(f(b));
  return Element(x.algebra(), std::move(out));
}

template <class F>
Element blockwise2(const Element& x, const Element& y, F f) {
  require_same(x, y);
  std::vector<CMatrix> out;
  out.reserve(x.blocks().size());
  for (std::size_t b = 0; b < x.blocks().size(); ++b) out.push_back(f(x.block(b), y.block(b)));
  return Element(x.algebra(), std::move(out));
}

}  // namespace

Element mul(const Element& x, const Element& y) {
  return blockwise2(x, y, [](const CMatrix& a, const CMatrix& b) -> CMatrix { return a * b; });
}

Element adj(const Element& x) {
  return blockwise(x, [](const CMatrix& a) -> CMatrix { return a.adjoint(); });
}

Element add(const Element& x, const Element& y) {
  return blockwise2(x, y, [](const CMatrix& a, const CMatrix& b) -> CMatrix { return a + b; });
}

Element sub(const Element& x, const Element& y) {
  return blockwise2(x, y, [](const CMatrix& a, const CMatrix& b) -> CMatrix { return a - b; });
}

Element scale(const Element& x, Complex c) {
  return blockwise(x, [c](const CMatrix& a) -> CMatrix { return c * a; });
}

double norm(const Element& x) {
  double out = 0.0;
  for (const auto& b : x.blocks()) out = std::max(out, op_norm(b));
  return out;
}

Element unit(const FiniteCStar& algebra) {
  Element e(algebra);
  for (std::size_t b = 0; b < algebra.num_blocks(); ++b) e.block(b).setIdentity();
  return e;
}

bool is_positive(const Element& x, double tol) {
  const double scale_ref = std::max(1.0, norm(x));
  for (const auto& b : x.blocks()) {
    if ((b - b.adjoint()).norm() > tol * std::max(1.0, b.norm())) return false;
  }
  for (const auto& b : x.blocks()) {
    if (psd_min_eig(hermitian_part(b)) < -tol * scale_ref) return false;
  }
  return true;
}

bool is_positive_contraction(const Element& x, double tol) {
  return is_positive(x, tol) && norm(x) <= 1.0 + tol;
}

bool is_unitary(const Element& x, double tol) {
  for (const auto& b : x.blocks()) {
    const auto n = b.rows();
    if (op_norm(b.adjoint() * b - CMatrix::Identity(n, n)) > tol) return false;
  }
  return true;
}

double min_eig(const Element& x) {
  double out = std::numeric_limits<double>::infinity();
  for (const auto& b : x.blocks()) out = std::min(out, psd_min_eig(hermitian_part(b)));
  return out;
}

std::vector<MatrixUnitIndex> matrix_unit_indices(const FiniteCStar& algebra) {
  std::vector<MatrixUnitIndex> out;
  out.reserve(algebra.dimension());
  for (std::size_t b = 0; b < algebra.num_blocks(); ++b) {
    const std::size_t n = algebra.block_size(b);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) out.push_back({b, i, j});
    }
  }
  return out;
}

Element matrix_unit(const FiniteCStar& algebra, const MatrixUnitIndex& idx) {
  Element e(algebra);
  e.block(idx.block)(static_cast<Eigen::Index>(idx.row), static_cast<Eigen::Index>(idx.col)) = 1.0;
  return e;
}

std::vector<Element> matrix_units(const FiniteCStar& algebra) {
  std::vector<Element> out;
  for (const auto& idx : matrix_unit_indices(algebra)) out.push_back(matrix_unit(algebra, idx));
  return out;
}

Element random_positive_contraction(const FiniteCStar& algebra, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<CMatrix> blocks;
  for (std::size_t n : algebra.block_sizes()) {
    const auto dim = static_cast<Eigen::Index>(n);
    const CMatrix g = rng.gaussian_matrix(dim, dim);
    CMatrix w = hermitian_part(g.adjoint() * g);
    w /= op_norm(w);
    blocks.push_back(std::move(w));
  }
  return Element(algebra, std::move(blocks));
}

Element random_contraction(const FiniteCStar& algebra, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<CMatrix> blocks;
  for (std::size_t n : algebra.block_sizes()) {
    const auto dim = static_cast<Eigen::Index>(n);
    CMatrix g = rng.gaussian_matrix(dim, dim);
    g /= op_norm(g);
    blocks.push_back(std::move(g));
  }
  return Element(algebra, std::move(blocks));
}

Element random_unitary(const FiniteCStar& algebra, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<CMatrix> blocks;
  for (std::size_t n : algebra.block_sizes()) blocks.push_back(rng.haar_unitary(static_cast<Eigen::Index>(n)));
  return Element(algebra, std::move(blocks));
}

}  // namespace posmap
