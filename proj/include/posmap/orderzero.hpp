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

// Order-zero analysis of maps between unital finite-dimensional algebras.
// Approximate units are the unit itself, so h_phi = phi(1).
//
// None of the defect functions threshold their result; callers decide.

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "posmap/maps.hpp"

namespace posmap {

struct DefectReport {
  double one_var_sup = 0.0;   // sup ||phi(a)^2 - phi(a^2) phi(1)||
  double orth_pair_sup = 0.0; // sup ||phi(a) phi(b)|| over ab = 0, a, b >= 0
  double od_sup = 0.0;        // sup od_defect(phi, a)
  std::size_t samples = 0;
  std::uint64_t seed = 0;
};

/// phi = h pi with pi defined on matrix units through the support
/// pseudo-inverse of h = phi(1).
struct OzDecomposition {
  Element h;
  std::vector<Element> pi_images;  // matrix_unit_indices(source) order
  double mult_defect = 0.0;
  double commute_defect = 0.0;
  double reconstruct_defect = 0.0;
};

/// ||phi(a)^2 - phi(a^2) phi(1)||. Throws NotPositiveContraction.
double one_var_defect(const PMap& phi, const Element& a);

/// Samples positive contractions and orthogonal positive pairs (built in a
/// common random eigenbasis, so ab = 0 up to rounding).
DefectReport order_zero_defect(const PMap& phi, std::size_t samples, std::uint64_t seed);

/// max over matrix units b of ||phi(a)phi(b) - phi(1)phi(ab)|| and
/// ||phi(b)phi(a) - phi(ba)phi(1)||; zero exactly on the orthogonality domain.
double od_defect(const PMap& phi, const Element& a);

/// |od_defect(a) - od_defect(a*)|.
double od_star_symmetry_defect(const PMap& phi, const Element& a);

/// min eig(phi(a*a) - phi(a)*phi(a)); negative values falsify 2-positivity
/// of a contractive map.
double kadison_gap(const PMap& phi, const Element& a);

/// min eig(phi(a*a) - X*X) with X = phi(b*b)^{-1/2} phi(b*a) taken on the
/// support of phi(b*b).
double schwartz_gap(const PMap& phi, const Element& a, const Element& b);

OzDecomposition oz_decompose(const PMap& phi, double cutoff = tol::kSupportCutoff);

/// a -> h pi(a). Throws NotHomomorphism, NotCommuting, NotPositiveContraction.
PMap oz_construct(const FiniteCStar& source, const std::vector<Element>& pi_images, const Element& h);

struct RepairResult {
  PMap repaired;
  double epsilon = 0.0;  // max_ij ||phi(e_i1) phi(e_1j) - phi(e_ij)||
};

/// a -> phi(a) + n * epsilon * Tr(a) 1 for phi on M_n. Throws
/// MultiBlockUnsupported for multi-block sources.
RepairResult cp_repair(const PMap& phi);

struct PolarLift {
  Element unitary;
  double input_error = 0.0;  // ||phi(y) - x||
  double lifted_error = 0.0; // ||phi(U) - x||
  bool bound_ok = false;     // lifted_error < 3 sqrt(input_error)
};

/// Replaces y by the unitary factor of its polar decomposition and compares
/// ||phi(U) - x|| against 3 sqrt(||phi(y) - x||). Throws NotUnitary when x
/// is not unitary.
PolarLift polar_lift(const PMap& phi, const Element& x, const Element& y);

/// For a positive contraction a on (L d)-dimensional space in L x L blocks of
/// size d with ||a_11|| < eps, reports whether ||sum_i a_i1^* a_i1|| < eps.
/// Throws NotPositiveContraction / PreconditionFailed / DimensionMismatch.
bool block_column_positive_check(const CMatrix& a, std::size_t block_dim, double eps);

/// For a unitary u in L x L blocks of size d with ||u_11^* u_11 - 1|| < eps,
/// reports whether ||sum_{i>=2} u_i1^* u_i1|| < eps. Throws NotUnitary /
/// PreconditionFailed / DimensionMismatch.
bool block_column_unitary_check(const CMatrix& u, std::size_t block_dim, double eps);

}  // namespace posmap
