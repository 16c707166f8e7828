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

// Seeded sampling. The standard distributions are implementation defined, so
// uniform and Gaussian variates are derived from the raw 64-bit engine output
// to keep streams identical across standard libraries.

#pragma once

#include <cstdint>
#include <random>

#include "posmap/linalg.hpp"

namespace posmap {

/// splitmix64 finalizer; used to derive independent sub-seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform();  // [0, 1)
  double gaussian();
  Complex complex_gaussian();  // E|z|^2 = 1

  CMatrix gaussian_matrix(Eigen::Index rows, Eigen::Index cols);
  /// Haar-distributed unitary (QR of a Ginibre matrix with phase fix).
  CMatrix haar_unitary(Eigen::Index n);

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace posmap
