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

// Finite-dimensional C*-algebras M_{n_0} + ... + M_{n_d} and their elements.

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "posmap/linalg.hpp"

namespace posmap {

class FiniteCStar {
 public:
  /// Throws BadRange for an empty list or a zero block size.
  explicit FiniteCStar(std::vector<std::size_t> block_sizes);

  static FiniteCStar matrix_algebra(std::size_t n) { return FiniteCStar({n}); }

  const std::vector<std::size_t>& block_sizes() const { return block_sizes_; }
  std::size_t num_blocks() const { return block_sizes_.size(); }
  std::size_t block_size(std::size_t b) const { return block_sizes_.at(b); }
  bool is_single_block() const { return block_sizes_.size() == 1; }

  /// Vector-space dimension, sum of n_i^2.
  std::size_t dimension() const;
  /// Size of the block-diagonal embedding, sum of n_i.
  std::size_t embedding_dim() const;
  /// Row offset of block b inside the block-diagonal embedding.
  std::size_t block_offset(std::size_t b) const;

  friend bool operator==(const FiniteCStar&, const FiniteCStar&) = default;

 private:
  std::vector<std::size_t> block_sizes_;
};

/// Concatenation of block lists: the direct sum of the given algebras.
FiniteCStar direct_sum(const std::vector<FiniteCStar>& parts);

class Element {
 public:
  /// Zero element of `algebra`.
  explicit Element(FiniteCStar algebra);
  /// Throws DimensionMismatch when the block shapes disagree with `algebra`.
  Element(FiniteCStar algebra, std::vector<CMatrix> blocks);

  const FiniteCStar& algebra() const { return algebra_; }
  const std::vector<CMatrix>& blocks() const { return blocks_; }
  const CMatrix& block(std::size_t b) const { return blocks_.at(b); }
  CMatrix& block(std::size_t b) { return blocks_.at(b); }

  /// Block-diagonal matrix of size embedding_dim().
  CMatrix to_matrix() const;
  /// Reads the diagonal blocks of a block-diagonal matrix; off-block entries
  /// are ignored.
  static Element from_matrix(const FiniteCStar& algebra, const CMatrix& m);

 private:
  FiniteCStar algebra_;
  std::vector<CMatrix> blocks_;
};

Element mul(const Element& x, const Element& y);
Element adj(const Element& x);
Element add(const Element& x, const Element& y);
Element sub(const Element& x, const Element& y);
Element scale(const Element& x, Complex c);

inline Element operator*(const Element& x, const Element& y) { return mul(x, y); }
inline Element operator+(const Element& x, const Element& y) { return add(x, y); }
inline Element operator-(const Element& x, const Element& y) { return sub(x, y); }
inline Element operator*(Complex c, const Element& x) { return scale(x, c); }
inline Element operator*(double c, const Element& x) { return scale(x, Complex(c, 0.0)); }

/// max over blocks of the operator norm.
double norm(const Element& x);
Element unit(const FiniteCStar& algebra);
bool is_positive(const Element& x, double tol = tol::kPsd);
bool is_positive_contraction(const Element& x, double tol = tol::kPsd);
bool is_unitary(const Element& x, double tol = 1e-9);
/// Smallest eigenvalue over all blocks (Hermitian part).
double min_eig(const Element& x);

struct MatrixUnitIndex {
  std::size_t block;
  std::size_t row;
  std::size_t col;
};

/// Matrix units enumerated blockwise, row-major inside each block.
std::vector<MatrixUnitIndex> matrix_unit_indices(const FiniteCStar& algebra);
Element matrix_unit(const FiniteCStar& algebra, const MatrixUnitIndex& idx);
std::vector<Element> matrix_units(const FiniteCStar& algebra);

/// Blockwise g*g / ||g*g|| with complex Gaussian g; positive, norm one.
Element random_positive_contraction(const FiniteCStar& algebra, std::uint64_t seed);
/// Blockwise g / ||g||; a norm-one contraction.
Element random_contraction(const FiniteCStar& algebra, std::uint64_t seed);
/// Blockwise Haar unitary.
Element random_unitary(const FiniteCStar& algebra, std::uint64_t seed);

}  // namespace posmap
