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

// k-positive maps of almost order zero that are not (k+1)-positive.
//
// On M_m (x) M_n (row index alpha * n + i) the map
//
//   phi(x) = (1 - eps) x + eps 1_m (x) psi_lambda(corner(x)),
//
// where corner(x) is the (1,1) block of size n, is unital and k-positive for
// lambda <= 1 + 1/(nk - 1). Compressing back with the normalized partial
// trace over M_m gives a rescaled psi with parameter
//
//   lambda_tilde = m eps lambda / ((1 - eps) + m eps),
//
// which exceeds the (k+1)-threshold once m is large.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "posmap/positivity.hpp"

namespace posmap::family {

/// Largest m * n for which phi_lambda_m materializes a Choi matrix.
inline constexpr std::size_t kMaxChoiSide = 32;

/// Direct evaluation of phi on an (mn) x (mn) matrix; no Choi matrix needed.
CMatrix apply_phi_lambda_m(std::size_t n, std::size_t m, double lambda, double eps, const CMatrix& x);

/// phi as a PMap on M_{mn}. Throws BadRange for n < 2, m < 1, eps outside
/// (0, 1), or m * n > kMaxChoiSide.
PMap phi_lambda_m(std::size_t n, std::size_t m, double lambda, double eps);

/// Normalized partial trace over the first factor, M_m (x) M_n -> M_n.
CMatrix apply_partial_trace_first(std::size_t m, std::size_t n, const CMatrix& x);
PMap partial_trace_first(std::size_t m, std::size_t n);

/// Corner embedding a -> e_11 (x) a of M_n into M_m (x) M_n.
CMatrix corner_embed(std::size_t m, const CMatrix& a);

double lambda_tilde(std::size_t m, double eps, double lambda);

struct ExampleReport {
  std::size_t n = 0, m = 0, k = 0;
  double lambda = 0.0;
  double epsilon = 0.0;
  std::uint64_t seed = 0;
  std::size_t samples = 0;

  double lambda_tilde = 0.0;
  // max over sampled contractions of ||phi(x)^2 - phi(x^2)||
  double max_square_defect = 0.0;
  double defect_bound = 0.0;  // 6 eps
  bool defect_bound_ok = false;
  // composed map on matrix units vs (eps lambda / lt) psi_{lt}
  double closed_form_deviation = 0.0;
  // composed map vs (1 - eps)/m a + eps psi_lambda(a)
  double direct_form_deviation = 0.0;
  double next_threshold = 0.0;  // 1 + 1/(n(k+1) - 1)
  bool exceeds_next_threshold = false;
  std::optional<KposVerdict> falsifier;  // level k+1, when the threshold is exceeded
};

struct ExampleOptions {
  std::uint64_t seed = 0;
  std::size_t samples = 100;
  bool confirm_with_falsifier = true;
  std::size_t restarts = kDefaultRestarts;
};

/// Throws BadRange unless 1 <= k < n, m >= 1, eps in (0, 1) and
/// 1/(n(k+1) - 1) < lambda - 1 <= 1/(nk - 1).
ExampleReport verify_example(std::size_t n, std::size_t m, std::size_t k, double lambda, double eps,
                             const ExampleOptions& options = {});

}  // namespace posmap::family
