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

// The positivity hierarchy: complete positivity via the Choi matrix, the
// closed-form k-positivity threshold of the family
//   psi_lambda(a) = lambda tr_n(a) 1 + (1 - lambda) a,
// and a seeded Schmidt-rank-k search for violations of k-positivity.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "posmap/maps.hpp"

namespace posmap {

enum class KposStatus { CertifiedPositive, Unfalsified, Violated };

std::string_view to_string(KposStatus status);

/// A unit vector x = sum_r a_r (x) b_r of Schmidt rank <= k with
/// <x|C|x> < 0 for the Choi block C of `source_block`.
struct Witness {
  std::size_t k = 0;
  std::size_t source_block = 0;
  std::vector<CVector> factors_left;   // in C^{n_b}
  std::vector<CVector> factors_right;  // in C^{D_target}
  double value = 0.0;
  double vector_norm = 0.0;

  CVector assemble() const;
};

struct KposVerdict {
  KposStatus status = KposStatus::Unfalsified;
  std::optional<Witness> witness;
  std::size_t restarts_used = 0;
  double best_value = 0.0;
};

inline constexpr std::size_t kDefaultRestarts = 32;
inline constexpr double kDefaultFalsifierTol = 1e-8;

/// Every Choi block Hermitian and min eigenvalue >= -tol * max(1, ||C||).
bool is_cp(const PMap& phi, double tol = tol::kPsd);

/// Smallest eigenvalue over the (Hermitian parts of the) Choi blocks.
double choi_min_eig(const PMap& phi);

/// 1 + 1/(nk - 1). Requires 1 <= k <= n and nk >= 2.
double tomiyama_threshold(std::size_t n, std::size_t k);

/// psi_lambda on M_n. Requires n >= 2 and finite lambda >= 0.
PMap tomiyama_map(std::size_t n, double lambda);

/// Alternating minimization of <x|C|x> over Schmidt-rank-<=k unit vectors.
/// VIOLATED carries a verified witness; CERTIFIED_POSITIVE is reported only
/// when the map is CP; otherwise UNFALSIFIED. Multi-block sources are searched
/// block by block. Restart r uses seed ^ r and restarts run in parallel.
KposVerdict k_positivity_falsify(const PMap& phi, std::size_t k,
                                 std::size_t restarts = kDefaultRestarts,
                                 std::uint64_t seed = 0, double tol = kDefaultFalsifierTol);

/// Recomputes the witness from its factors. Throws DimensionMismatch when the
/// factor sizes do not fit `phi`.
bool witness_verify(const PMap& phi, const Witness& w, double tol = kDefaultFalsifierTol);

}  // namespace posmap
