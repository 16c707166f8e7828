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

// Linear maps between finite-dimensional C*-algebras, stored by their Choi
// matrices. For a source block of size n the Choi block is
//
//   C = sum_{ij} e_ij (x) phi(e_ij),
//
// an (n * D) x (n * D) matrix where D is the embedding dimension of the
// target (the target sits block-diagonally inside M_D). Row (i * D + r),
// column (j * D + s) holds phi(e_ij)(r, s).

#pragma once

#include <cstddef>
#include <vector>

#include "posmap/cstar.hpp"

namespace posmap {

class PMap {
 public:
  /// Builds a map from its Choi blocks. Entries that fall outside the
  /// target's diagonal blocks are discarded. Throws DimensionMismatch.
  PMap(FiniteCStar source, FiniteCStar target, std::vector<CMatrix> choi_blocks);

  const FiniteCStar& source() const { return source_; }
  const FiniteCStar& target() const { return target_; }
  const std::vector<CMatrix>& choi_blocks() const { return choi_; }
  const CMatrix& choi_block(std::size_t b) const { return choi_.at(b); }

 private:
  FiniteCStar source_;
  FiniteCStar target_;
  std::vector<CMatrix> choi_;
};

/// One image per matrix unit of `source`, in matrix_unit_indices order.
/// Throws CountMismatch / AlgebraMismatch.
PMap from_action(const FiniteCStar& source, const FiniteCStar& target,
                 const std::vector<Element>& images_of_matrix_units);
PMap from_choi(const FiniteCStar& source, const FiniteCStar& target,
               std::vector<CMatrix> choi_blocks);
const std::vector<CMatrix>& choi(const PMap& phi);

Element apply(const PMap& phi, const Element& x);
/// phi(e_ij) for one matrix unit, read directly off the Choi block.
Element apply_unit(const PMap& phi, const MatrixUnitIndex& idx);

/// phi o psi.
PMap compose(const PMap& phi, const PMap& psi);
PMap add(const PMap& phi, const PMap& psi);
PMap scale(const PMap& phi, Complex c);
/// id_{M_k} (x) phi on M_k (x) M_n. Single-block source and target only.
PMap tensor_id(const PMap& phi, std::size_t k);

/// ||phi(1)||, which equals ||phi|| for positive maps on unital algebras.
double pmap_norm(const PMap& phi);

/// True iff every Choi block is Hermitian, i.e. phi(x*) = phi(x)*.
bool is_self_adjoint(const PMap& phi, double tol_rel = tol::kHermitian);

PMap identity_map(const FiniteCStar& algebra);
/// Blockwise transpose.
PMap transpose_map(const FiniteCStar& algebra);
/// a -> sum_r v_r^* a v_r with v_r of shape n x m (single blocks M_n -> M_m).
PMap kraus_map(std::size_t n, std::size_t m, const std::vector<CMatrix>& kraus);
/// a -> Tr(a) 1 on M_n into `target` (non-normalized trace).
PMap trace_times_unit(std::size_t n, const FiniteCStar& target);

}  // namespace posmap
