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
#include "posmap/family.hpp"
#include "posmap/random.hpp"

using namespace posmap;
using namespace posmap::family;

TEST_CASE("phi_lambda_m at lambda = 0 on matrix units") {
  const std::size_t n = 2, m = 3;
  const double eps = 0.2;
  const PMap phi = phi_lambda_m(n, m, 0.0, eps);
  const FiniteCStar big = FiniteCStar::matrix_algebra(m * n);
  for (const auto& u : matrix_unit_indices(big)) {
    const Element e = matrix_unit(big, u);
    CMatrix expect = (1.0 - eps) * e.block(0);
    if (u.row < n && u.col < n) {
      for (std::size_t a = 0; a < m; ++a) {
        expect(static_cast<Eigen::Index>(a * n + u.row), static_cast<Eigen::Index>(a * n + u.col)) += eps;
      }
    }
    CHECK((apply(phi, e).block(0) - expect).norm() < 1e-15);
  }
}

TEST_CASE("phi_lambda_m basic properties") {
  const PMap phi = phi_lambda_m(3, 2, 1.4, 0.1);
  const FiniteCStar big = FiniteCStar::matrix_algebra(6);
  CHECK(norm(apply(phi, unit(big)) - unit(big)) < 1e-14);

  const PMap one = phi_lambda_m(3, 1, 1.4, 0.1);
  const FiniteCStar m3 = FiniteCStar::matrix_algebra(3);
  const Element x = random_contraction(m3, 2);
  const CMatrix expect = 0.9 * x.block(0) + 0.1 * oracle::tomiyama_apply(1.4, x.block(0));
  CHECK((apply(one, x).block(0) - expect).norm() < 1e-14);

  const Element y = random_contraction(big, 3);
  CHECK((apply(phi, y).block(0) - apply_phi_lambda_m(3, 2, 1.4, 0.1, y.block(0))).norm() < 1e-14);

  CHECK_THROWS_AS(phi_lambda_m(3, 20, 1.4, 0.1), Error);
  CHECK_THROWS_AS(phi_lambda_m(3, 2, 1.4, 1.0), Error);
  CHECK_THROWS_AS(phi_lambda_m(1, 2, 1.4, 0.5), Error);
}

TEST_CASE("partial_trace_first") {
  CHECK((choi(partial_trace_first(1, 3))[0] - choi(identity_map(FiniteCStar::matrix_algebra(3)))[0]).norm() == 0.0);
  const PMap tr = partial_trace_first(3, 2);
  CHECK(is_cp(tr));
  CHECK(norm(apply(tr, unit(FiniteCStar::matrix_algebra(6))) - unit(FiniteCStar::matrix_algebra(2))) < 1e-15);
  const Element x = random_contraction(FiniteCStar::matrix_algebra(6), 1);
  CHECK((apply(tr, x).block(0) - apply_partial_trace_first(3, 2, x.block(0))).norm() < 1e-15);
}

TEST_CASE("lambda_tilde") {
  CHECK(lambda_tilde(10, 0.1, 1.4) == doctest::Approx(1.4 / 1.9).epsilon(1e-14));
  // lambda - lambda~ = lambda (1 - eps) / ((1 - eps) + m eps) = 1.26e-5 here.
  CHECK(1.4 - lambda_tilde(1000000, 0.1, 1.4) == doctest::Approx(1.4 * 0.9 / 100000.9).epsilon(1e-9));
  CHECK(std::abs(lambda_tilde(100000000, 0.1, 1.4) - 1.4) < 1e-6);
  CHECK(lambda_tilde(7, 1.0 - 1e-9, 1.4) == doctest::Approx(1.4).epsilon(1e-8));
  CHECK(lambda_tilde(1, 0.05, 1.4) == doctest::Approx(0.07).epsilon(1e-14));
  CHECK(lambda_tilde(200, 0.05, 1.4) == doctest::Approx(14.0 / 10.95).epsilon(1e-14));
  for (std::size_t m = 1; m < 50; ++m) {
    CHECK(lambda_tilde(m + 1, 0.3, 1.2) > lambda_tilde(m, 0.3, 1.2));
    CHECK(lambda_tilde(m, 0.3, 1.2) == doctest::Approx(oracle::lambda_tilde(static_cast<double>(m), 0.3, 1.2)));
  }
  CHECK_THROWS_AS(lambda_tilde(0, 0.1, 1.4), Error);
  CHECK_THROWS_AS(lambda_tilde(2, 0.0, 1.4), Error);
  CHECK_THROWS_AS(lambda_tilde(2, 0.1, 0.0), Error);
}

TEST_CASE("composed map closed form on a parameter grid") {
  for (std::size_t m : {1, 3, 10}) {
    for (double eps : {0.05, 0.3, 0.7}) {
      for (double lambda : {1.25, 1.4, 1.5}) {
        ExampleOptions opts;
        opts.samples = 2;
        opts.confirm_with_falsifier = false;
        const ExampleReport r = verify_example(3, m, 1, lambda, eps, opts);
        CHECK(r.closed_form_deviation < 1e-10);
        CHECK(r.direct_form_deviation < 1e-10);
      }
    }
  }
}

TEST_CASE("verify_example windows and flags") {
  ExampleOptions opts;
  opts.samples = 20;
  const ExampleReport small = verify_example(3, 1, 1, 1.4, 0.05, opts);
  CHECK(small.lambda_tilde == doctest::Approx(0.07));
  CHECK_FALSE(small.exceeds_next_threshold);
  CHECK_FALSE(small.falsifier.has_value());

  const ExampleReport big = verify_example(3, 200, 1, 1.4, 0.05, opts);
  CHECK(big.lambda_tilde == doctest::Approx(14.0 / 10.95));
  CHECK(big.next_threshold == 1.2);
  CHECK(big.exceeds_next_threshold);
  REQUIRE(big.falsifier.has_value());
  CHECK(big.falsifier->status == KposStatus::Violated);
  CHECK(big.defect_bound_ok);

  CHECK_THROWS_AS(verify_example(3, 2, 1, 1.1, 0.05, opts), Error);  // 0.1 <= 1/5
  CHECK_THROWS_AS(verify_example(3, 2, 1, 1.6, 0.05, opts), Error);  // 0.6 > 1/2
  CHECK_THROWS_AS(verify_example(3, 2, 3, 1.05, 0.05, opts), Error);
  CHECK_NOTHROW(verify_example(3, 2, 1, 1.5, 0.05, opts));  // window edge
}

TEST_CASE("6 eps defect bound") {
  ExampleOptions opts;
  opts.samples = 200;
  opts.confirm_with_falsifier = false;
  const ExampleReport r = verify_example(3, 4, 1, 1.4, 0.05, opts);
  CHECK(r.max_square_defect < 0.3);
  CHECK(r.defect_bound == doctest::Approx(0.3));
  CHECK(r.defect_bound_ok);
}

TEST_CASE("phi_lambda_m stays k-positive inside the window") {
  struct Case {
    std::size_t n, k;
    double lambda;
  };
  for (const Case c : {Case{2, 1, 1.5}, Case{3, 1, 1.4}, Case{3, 2, 1.2}}) {
    for (std::size_t m = 1; m <= 3; ++m) {
      if (m * c.n > 9) continue;
      const KposVerdict v = k_positivity_falsify(phi_lambda_m(c.n, m, c.lambda, 0.3), c.k, 32, 0);
      CHECK(v.status != KposStatus::Violated);
    }
  }
}
