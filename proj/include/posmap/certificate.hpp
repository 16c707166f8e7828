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

// Decomposition-rank certificates: A -> F_0 + ... + F_d -> A with a 2-positive
// contraction down and 2-positive order-zero contractions up, approximating
// the identity on a finite test set.

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "posmap/orderzero.hpp"
#include "posmap/positivity.hpp"

namespace posmap {

struct DrCertificate {
  FiniteCStar algebra;
  std::size_t d = 0;
  std::vector<FiniteCStar> summands;
  PMap psi;
  std::vector<PMap> phis;
  std::vector<Element> test_set;
  double epsilon = 0.0;
};

struct NormCheck {
  bool pass = false;
  double norm = 0.0;
};

struct PhiReport {
  NormCheck contraction;
  KposVerdict two_positive;
  double mult_defect = 0.0;
  double commute_defect = 0.0;
  double reconstruct_defect = 0.0;
  DefectReport sampled;
  bool order_zero_pass = false;
};

struct ApproximationEntry {
  std::size_t index = 0;
  double error = 0.0;
  bool pass = false;
};

struct VerifyReport {
  double tol = 0.0;
  std::uint64_t seed = 0;
  std::size_t restarts = 0;
  NormCheck psi_contraction;
  KposVerdict psi_two_positive;
  std::vector<PhiReport> phis;
  NormCheck sum_contractive;
  std::vector<ApproximationEntry> approximation;
  // Some 2-positivity check passed only because no witness was found.
  bool caveat_unfalsified = false;
  bool overall = false;

  /// Names of failing sub-checks, e.g. "phi_order_zero[0]", in check order.
  std::vector<std::string> failed_checks() const;
};

inline constexpr std::size_t kOrderZeroSamples = 32;

/// Throws StructurallyInvalid when counts, algebras or test-set norms do not
/// fit together, or when epsilon is not positive.
void validate_structure(const DrCertificate& cert);

VerifyReport verify_certificate(const DrCertificate& cert, double tol = 1e-8, std::uint64_t seed = 0,
                                std::size_t restarts = kDefaultRestarts);

/// d = 0, F_0 = A, psi = phi_0 = id.
DrCertificate identity_certificate(const FiniteCStar& algebra, std::vector<Element> test_set = {},
                                   double epsilon = 1e-6);

/// F_i = A for each weight, psi = x -> (x, ..., x), phi_i = w_i id. The test
/// set holds four seeded random contractions. Throws BadWeights unless the
/// weights are positive and sum to 1 within 1e-12.
DrCertificate orderzero_certificate(const FiniteCStar& algebra, const std::vector<double>& weights,
                                    std::uint64_t seed = 0, double epsilon = 1e-6);

}  // namespace posmap
