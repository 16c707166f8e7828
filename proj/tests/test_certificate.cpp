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

#include <algorithm>

#include <doctest.h>

#include "posmap/certificate.hpp"
#include "posmap/error.hpp"
#include "posmap/random.hpp"

using namespace posmap;

namespace {

bool names(const VerifyReport& r, const std::string& check) {
  const auto f = r.failed_checks();
  return std::find(f.begin(), f.end(), check) != f.end();
}

}  // namespace

TEST_CASE("identity certificates pass") {
  const FiniteCStar m3 = FiniteCStar::matrix_algebra(3);
  const VerifyReport r = verify_certificate(identity_certificate(m3, {random_contraction(m3, 1)}), 1e-10);
  CHECK(r.overall);
  CHECK(r.failed_checks().empty());
  CHECK(r.psi_two_positive.status == KposStatus::CertifiedPositive);
  CHECK_FALSE(r.caveat_unfalsified);
  CHECK(r.phis[0].mult_defect <= 1e-12);
  CHECK(r.phis[0].sampled.one_var_sup <= 1e-12);
  CHECK(r.approximation[0].error <= 1e-12);

  CHECK(verify_certificate(identity_certificate(FiniteCStar::matrix_algebra(2)), 1e-10).overall);
  const FiniteCStar mixed({2, 3});
  CHECK(verify_certificate(identity_certificate(mixed, {random_contraction(mixed, 2)}), 1e-10).overall);
}

TEST_CASE("orderzero certificates pass") {
  const FiniteCStar m2 = FiniteCStar::matrix_algebra(2);
  for (const auto& w : std::vector<std::vector<double>>{{1.0}, {0.5, 0.5}, {0.3, 0.7}}) {
    const DrCertificate cert = orderzero_certificate(m2, w, 0);
    CHECK(cert.d + 1 == w.size());
    const VerifyReport r = verify_certificate(cert, 1e-8);
    CHECK(r.overall);
    CHECK(r.sum_contractive.norm == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK(verify_certificate(orderzero_certificate(FiniteCStar({1, 2}), {0.2, 0.3, 0.5}, 4), 1e-8).overall);
  CHECK_THROWS_AS(orderzero_certificate(m2, {0.5, 0.6}), Error);
  CHECK_THROWS_AS(orderzero_certificate(m2, {1.5, -0.5}), Error);
  CHECK_THROWS_AS(orderzero_certificate(m2, {}), Error);
}

TEST_CASE("failures are reported by sub-check") {
  const FiniteCStar m2 = FiniteCStar::matrix_algebra(2);

  DrCertificate not_oz = identity_certificate(m2, {random_contraction(m2, 0)});
  not_oz.phis[0] = tomiyama_map(2, 1.0);
  const VerifyReport a = verify_certificate(not_oz, 1e-8);
  CHECK_FALSE(a.overall);
  CHECK(names(a, "phi_order_zero[0]"));
  CHECK(a.phis[0].mult_defect > 0.1);

  DrCertificate wide = orderzero_certificate(m2, {0.5, 0.5}, 0, 1.0);
  for (auto& phi : wide.phis) phi = scale(phi, Complex(1.1));
  const VerifyReport b = verify_certificate(wide, 1e-8);
  CHECK(b.failed_checks() == std::vector<std::string>{"sum_contractive"});
  CHECK(b.sum_contractive.norm == doctest::Approx(1.1));

  DrCertificate off = identity_certificate(m2, {}, 1e-6);
  CMatrix x = CMatrix::Zero(2, 2);
  x(0, 0) = 0.5;
  off.test_set.emplace_back(m2, std::vector<CMatrix>{x});
  off.phis[0] = scale(identity_map(m2), Complex(0.98));
  const VerifyReport c = verify_certificate(off, 1e-8);
  CHECK(names(c, "approximation[0]"));
  CHECK(c.approximation[0].error == doctest::Approx(0.01));
}

TEST_CASE("2-positivity failures carry verified witnesses") {
  const FiniteCStar m2 = FiniteCStar::matrix_algebra(2);
  DrCertificate cert = identity_certificate(m2);
  cert.psi = transpose_map(m2);
  cert.phis[0] = transpose_map(m2);
  const VerifyReport r = verify_certificate(cert, 1e-8, 0, 8);
  CHECK(names(r, "psi_two_positive"));
  CHECK(names(r, "phi_two_positive[0]"));
  REQUIRE(r.psi_two_positive.witness.has_value());
  CHECK(witness_verify(cert.psi, *r.psi_two_positive.witness));
}

TEST_CASE("structural validation") {
  const FiniteCStar m2 = FiniteCStar::matrix_algebra(2);
  DrCertificate c = identity_certificate(m2);
  c.d = 1;
  CHECK_THROWS_AS(verify_certificate(c), Error);

  DrCertificate e = identity_certificate(m2);
  e.epsilon = 0.0;
  CHECK_THROWS_AS(verify_certificate(e), Error);

  DrCertificate t = identity_certificate(m2, {2.0 * unit(m2)});
  try {
    verify_certificate(t);
    FAIL("expected StructurallyInvalid");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::StructurallyInvalid);
  }

  DrCertificate p = identity_certificate(m2);
  p.phis[0] = identity_map(FiniteCStar::matrix_algebra(3));
  CHECK_THROWS_AS(verify_certificate(p), Error);
}

TEST_CASE("verification is deterministic and monotone in tol") {
  const DrCertificate cert = orderzero_certificate(FiniteCStar::matrix_algebra(3), {0.25, 0.75}, 9);
  const VerifyReport a = verify_certificate(cert, 1e-8, 3, 4);
  const VerifyReport b = verify_certificate(cert, 1e-8, 3, 4);
  CHECK(a.phis[1].sampled.od_sup == b.phis[1].sampled.od_sup);
  CHECK(a.overall);
  CHECK(verify_certificate(cert, 1e-4, 3, 4).overall);
}
