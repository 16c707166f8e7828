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

#include <doctest.h>

#include "oracles.hpp"
#include "posmap/error.hpp"
#include "posmap/orderzero.hpp"
#include "posmap/positivity.hpp"
#include "posmap/random.hpp"

using namespace posmap;

namespace {

const FiniteCStar kM2 = FiniteCStar::matrix_algebra(2);
const FiniteCStar kM3 = FiniteCStar::matrix_algebra(3);

// x -> diag(x, x) from M_2 into M_4.
std::vector<Element> two_copies() {
  const FiniteCStar m4 = FiniteCStar::matrix_algebra(4);
  std::vector<Element> out;
  for (const auto& u : matrix_unit_indices(kM2)) {
    CMatrix e = CMatrix::Zero(4, 4);
    e(static_cast<Eigen::Index>(u.row), static_cast<Eigen::Index>(u.col)) = 1.0;
    e(static_cast<Eigen::Index>(u.row) + 2, static_cast<Eigen::Index>(u.col) + 2) = 1.0;
    out.emplace_back(m4, std::vector<CMatrix>{e});
  }
  return out;
}

Element diag_element(std::initializer_list<double> d) {
  RVector v(static_cast<Eigen::Index>(d.size()));
  Eigen::Index i = 0;
  for (double x : d) v(i++) = x;
  return Element(FiniteCStar::matrix_algebra(d.size()), {CMatrix(v.cast<Complex>().asDiagonal())});
}

PMap conjugation(const FiniteCStar& a, const CMatrix& u) {
  std::vector<Element> images;
  for (const auto& e : matrix_units(a)) images.emplace_back(a, std::vector<CMatrix>{u * e.block(0) * u.adjoint()});
  return from_action(a, a, images);
}

}  // namespace

TEST_CASE("one_var_defect") {
  Rng rng(1);
  const PMap hom = conjugation(kM3, rng.haar_unitary(3));
  const PMap t = transpose_map(kM3);
  for (std::uint64_t s = 0; s < 10; ++s) {
    const Element a = random_positive_contraction(kM3, s);
    CHECK(one_var_defect(hom, a) < 1e-12);
    CHECK(one_var_defect(t, a) < 1e-12);
  }
  const double d = one_var_defect(tomiyama_map(2, 1.0), matrix_unit(kM2, {0, 0, 0}));
  CHECK(d == doctest::Approx(oracle::psi1_one_var_defect_e11()).epsilon(1e-14));
  CHECK(d == doctest::Approx(0.25).epsilon(1e-14));
  CHECK_THROWS_AS(one_var_defect(hom, 2.0 * unit(kM3)), Error);
}

TEST_CASE("order_zero_defect") {
  Rng rng(2);
  const DefectReport hom = order_zero_defect(conjugation(kM3, rng.haar_unitary(3)), 20, 0);
  CHECK(hom.one_var_sup < 1e-12);
  CHECK(hom.orth_pair_sup < 1e-12);
  CHECK(hom.od_sup < 1e-12);

  const DefectReport t = order_zero_defect(transpose_map(kM3), 20, 0);
  CHECK(t.one_var_sup < 1e-12);
  CHECK(t.orth_pair_sup < 1e-12);

  const DefectReport psi = order_zero_defect(tomiyama_map(2, 1.0), 100, 0);
  CHECK(psi.one_var_sup >= 0.2);
  CHECK(psi.samples == 100);

  const DefectReport again = order_zero_defect(tomiyama_map(2, 1.0), 100, 0);
  CHECK(again.one_var_sup == psi.one_var_sup);
  CHECK(again.od_sup == psi.od_sup);
}

TEST_CASE("od_defect") {
  Rng rng(3);
  const PMap hom = conjugation(kM3, rng.haar_unitary(3));
  CHECK(od_defect(hom, random_contraction(kM3, 1)) < 1e-12);
  CHECK(od_defect(tomiyama_map(3, 1.3), unit(kM3)) < 1e-12);
  const double psi = od_defect(tomiyama_map(2, 1.0), matrix_unit(kM2, {0, 0, 0}));
  CHECK(psi == doctest::Approx(oracle::psi1_od_defect_e11()).epsilon(1e-14));
  CHECK(psi > 0.1);
  CHECK(od_star_symmetry_defect(hom, random_contraction(kM3, 2)) < 1e-12);
}

TEST_CASE("kadison_gap") {
  CHECK(kadison_gap(identity_map(kM2), matrix_unit(kM2, {0, 0, 1})) == doctest::Approx(0.0));
  CHECK(kadison_gap(transpose_map(kM2), matrix_unit(kM2, {0, 0, 1})) == doctest::Approx(-1.0));
  const PMap psi = tomiyama_map(3, 1.2);
  for (std::uint64_t s = 0; s < 20; ++s) CHECK(kadison_gap(psi, random_contraction(kM3, s)) >= -1e-9);
}

TEST_CASE("schwartz_gap") {
  const PMap psi = tomiyama_map(3, 1.2);
  for (std::uint64_t s = 0; s < 20; ++s) {
    const Element a = random_contraction(kM3, mix_seed(s, 0));
    const Element b = random_contraction(kM3, mix_seed(s, 1));
    CHECK(schwartz_gap(psi, a, b) >= -1e-8);
    CHECK(schwartz_gap(psi, a, unit(kM3)) == doctest::Approx(kadison_gap(psi, a)).epsilon(1e-9));
    const double self = schwartz_gap(psi, a, a);
    CHECK(self >= -1e-8);
    CHECK(self <= schwartz_gap(psi, a, unit(kM3)) + 1e-8);
  }
}

TEST_CASE("schwartz_gap detects failure of 2-positivity") {
  // 7/6 exceeds the 2-positivity threshold 8/7 on M_4; matrix units expose it
  // even though Kadison's inequality (b = 1) still holds.
  const FiniteCStar m4 = FiniteCStar::matrix_algebra(4);
  const PMap psi = tomiyama_map(4, 7.0 / 6.0);
  CHECK(schwartz_gap(psi, matrix_unit(m4, {0, 0, 0}), matrix_unit(m4, {0, 0, 1})) ==
        doctest::Approx(-7.0 / 72.0).epsilon(1e-12));
  CHECK(kadison_gap(psi, matrix_unit(m4, {0, 0, 0})) >= 0.0);
  const PMap ok = tomiyama_map(3, 1.2);
  CHECK(schwartz_gap(ok, matrix_unit(kM3, {0, 0, 0}), matrix_unit(kM3, {0, 0, 1})) >= -1e-12);
}

TEST_CASE("oz_decompose") {
  Rng rng(4);
  const PMap hom = conjugation(kM3, rng.haar_unitary(3));
  for (double c : {0.25, 1.0}) {
    const OzDecomposition d = oz_decompose(scale(hom, Complex(c)));
    CHECK(norm(d.h - c * unit(kM3)) < 1e-10);
    CHECK(d.mult_defect < 1e-10);
    CHECK(d.commute_defect < 1e-10);
    CHECK(d.reconstruct_defect < 1e-10);
    for (std::size_t p = 0; p < d.pi_images.size(); ++p) {
      CHECK(norm(d.pi_images[p] - apply(hom, matrix_units(kM3)[p])) < 1e-10);
    }
  }
  const OzDecomposition bad = oz_decompose(tomiyama_map(2, 1.0));
  CHECK(bad.mult_defect == doctest::Approx(oracle::psi1_mult_defect()).epsilon(1e-12));
  CHECK(bad.mult_defect > 0.1);
}

TEST_CASE("oz_construct") {
  const PMap half = oz_construct(kM2, matrix_units(kM2), 0.5 * unit(kM2));
  CHECK((choi(half)[0] - 0.5 * choi(identity_map(kM2))[0]).norm() < 1e-15);

  for (double t : {0.0, 0.3, 1.0}) {
    const Element h = diag_element({1.0, 1.0, t, t});
    const PMap phi = oz_construct(kM2, two_copies(), h);
    CHECK(is_cp(phi));
    CHECK(one_var_defect(phi, random_positive_contraction(kM2, 1)) < 1e-12);
    const OzDecomposition d = oz_decompose(phi);
    CHECK(d.mult_defect < 1e-8);
    CHECK(d.reconstruct_defect < 1e-8);
  }

  const Element h0 = diag_element({0.9, 0.9, 0.4, 0.4});
  const OzDecomposition round = oz_decompose(oz_construct(kM2, two_copies(), h0));
  CHECK(norm(round.h - h0) < 1e-8);

  const PMap zero = oz_construct(kM2, two_copies(), Element(FiniteCStar::matrix_algebra(4)));
  CHECK(choi(zero)[0].norm() == 0.0);

  try {
    oz_construct(kM2, two_copies(), diag_element({1.0, 0.5, 1.0, 1.0}));
    FAIL("expected NotCommuting");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotCommuting);
  }
  CHECK_THROWS_AS(oz_construct(kM2, matrix_units(kM3), unit(kM3)), Error);
  CHECK_THROWS_AS(oz_construct(kM2, two_copies(), diag_element({2.0, 2.0, 1.0, 1.0})), Error);
}

TEST_CASE("cp_repair") {
  Rng rng(5);
  const RepairResult hom = cp_repair(conjugation(kM3, rng.haar_unitary(3)));
  CHECK(hom.epsilon <= 1e-12);
  CHECK(is_cp(hom.repaired));

  const RepairResult t = cp_repair(transpose_map(kM2));
  CHECK(t.epsilon == doctest::Approx(1.0));
  const CMatrix expect = oracle::swap_operator(2) + 2.0 * CMatrix::Identity(4, 4);
  CHECK((choi(t.repaired)[0] - expect).norm() < 1e-14);
  CHECK(oracle::min_eig(choi(t.repaired)[0]) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(is_cp(t.repaired));

  CHECK(is_cp(cp_repair(tomiyama_map(3, 1.2)).repaired));
  CHECK_THROWS_AS(cp_repair(identity_map(FiniteCStar({1, 1}))), Error);
}

TEST_CASE("polar_lift") {
  const Element x = random_unitary(kM3, 3);
  const PolarLift same = polar_lift(identity_map(kM3), x, x);
  CHECK(norm(same.unitary - x) < 1e-10);
  CHECK(same.lifted_error < 1e-10);

  const PolarLift scaled = polar_lift(identity_map(kM3), x, 0.9 * x);
  CHECK(norm(scaled.unitary - x) < 1e-10);
  CHECK(scaled.lifted_error < 1e-10);
  CHECK(scaled.input_error == doctest::Approx(0.1).epsilon(1e-10));
  CHECK(scaled.bound_ok);

  CHECK_THROWS_AS(polar_lift(identity_map(kM3), 0.5 * x, x), Error);
}

TEST_CASE("block-column bounds") {
  CHECK(block_column_positive_check(CMatrix::Zero(4, 4), 2, 0.1));
  CMatrix p = CMatrix::Zero(4, 4);
  p(2, 2) = p(3, 3) = 1.0;
  CHECK(block_column_positive_check(p, 2, 0.1));
  CHECK(block_column_unitary_check(CMatrix::Identity(6, 6), 2, 0.05));

  Rng rng(6);
  CMatrix blockdiag = CMatrix::Zero(6, 6);
  blockdiag.topLeftCorner(2, 2) = rng.haar_unitary(2);
  blockdiag.bottomRightCorner(4, 4) = rng.haar_unitary(4);
  CHECK(block_column_unitary_check(blockdiag, 2, 0.05));

  try {
    block_column_positive_check(CMatrix::Identity(4, 4), 2, 0.1);
    FAIL("expected PreconditionFailed");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::PreconditionFailed);
  }
  CHECK_THROWS_AS(block_column_positive_check(CMatrix::Zero(5, 5), 2, 0.1), Error);
  CHECK_THROWS_AS(block_column_unitary_check(2.0 * CMatrix::Identity(4, 4), 2, 0.1), Error);
}
