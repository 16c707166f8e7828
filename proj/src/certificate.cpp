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

#include "posmap/certificate.hpp"

#include <cmath>
#include <numeric>

#include "posmap/error.hpp"
#include "posmap/parallel.hpp"
#include "posmap/random.hpp"

namespace posmap {
namespace {

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorCode::StructurallyInvalid, what); }

bool verdict_passes(const KposVerdict& v) { return v.status != KposStatus::Violated; }

KposVerdict two_positivity(const PMap& phi, std::size_t restarts, std::uint64_t seed, double tol) {
  if (is_cp(phi)) {
    KposVerdict v;
    v.status = KposStatus::CertifiedPositive;
    v.best_value = choi_min_eig(phi);
    return v;
  }
  return k_positivity_falsify(phi, 2, restarts, seed, tol);
}

// Splits an element of F_0 + ... + F_d into its summand components.
std::vector<Element> split(const Element& x, const std::vector<FiniteCStar>& summands) {
  std::vector<Element> parts;
  std::size_t b = 0;
  for (const auto& f : summands) {
    std::vector<CMatrix> blocks(x.blocks().begin() + static_cast<std::ptrdiff_t>(b),
                                x.blocks().begin() + static_cast<std::ptrdiff_t>(b + f.num_blocks()));
    parts.emplace_back(f, std::move(blocks));
    b += f.num_blocks();
  }
  return parts;
}

}  // namespace

std::vector<std::string> VerifyReport::failed_checks() const {
  std::vector<std::string> out;
  if (!psi_contraction.pass) out.emplace_back("psi_contraction");
  if (!verdict_passes(psi_two_positive)) out.emplace_back("psi_two_positive");
  for (std::size_t i = 0; i < phis.size(); ++i) {
    const std::string tag = "[" + std::to_string(i) + "]";
    if (!phis[i].contraction.pass) out.push_back("phi_contraction" + tag);
    if (!verdict_passes(phis[i].two_positive)) out.push_back("phi_two_positive" + tag);
    if (!phis[i].order_zero_pass) out.push_back("phi_order_zero" + tag);
  }
  if (!sum_contractive.pass) out.emplace_back("sum_contractive");
  for (const auto& a : approximation) {
    if (!a.pass) out.push_back("approximation[" + std::to_string(a.index) + "]");
  }
  return out;
}

void validate_structure(const DrCertificate& cert) {
  if (cert.summands.size() != cert.d + 1) invalid("summands: expected d + 1 entries");
  if (cert.phis.size() != cert.d + 1) invalid("phis: expected d + 1 entries");
  if (!(cert.epsilon > 0.0) || !std::isfinite(cert.epsilon)) invalid("epsilon must be positive");
  if (!(cert.psi.source() == cert.algebra)) invalid("psi: source differs from algebra");
  if (!(cert.psi.target() == direct_sum(cert.summands))) invalid("psi: target differs from the summands");
  for (std::size_t i = 0; i < cert.phis.size(); ++i) {
    if (!(cert.phis[i].source() == cert.summands[i])) invalid("phis[" + std::to_string(i) + "]: source differs");
    if (!(cert.phis[i].target() == cert.algebra)) invalid("phis[" + std::to_string(i) + "]: target differs");
  }
  for (std::size_t t = 0; t < cert.test_set.size(); ++t) {
    const auto& x = cert.test_set[t];
    if (!(x.algebra() == cert.algebra)) invalid("test_set[" + std::to_string(t) + "]: wrong algebra");
    if (norm(x) > 1.0 + 1e-9) invalid("test_set[" + std::to_string(t) + "]: not a contraction");
  }
}

VerifyReport verify_certificate(const DrCertificate& cert, double tol, std::uint64_t seed, std::size_t restarts) {
  validate_structure(cert);
  VerifyReport r;
  r.tol = tol;
  r.seed = seed;
  r.restarts = restarts;

  r.psi_contraction.norm = pmap_norm(cert.psi);
  r.psi_contraction.pass = r.psi_contraction.norm <= 1.0 + tol;
  r.psi_two_positive = two_positivity(cert.psi, restarts, seed, tol);

  r.phis.resize(cert.phis.size());
  parallel_for(cert.phis.size(), [&](std::size_t i) {
    const PMap& phi = cert.phis[i];
    const std::uint64_t phi_seed = mix_seed(seed, i + 1);
    PhiReport& p = r.phis[i];
    p.contraction.norm = pmap_norm(phi);
    p.contraction.pass = p.contraction.norm <= 1.0 + tol;
    p.two_positive = two_positivity(phi, restarts, phi_seed, tol);
    const OzDecomposition oz = oz_decompose(phi);
    p.mult_defect = oz.mult_defect;
    p.commute_defect = oz.commute_defect;
    p.reconstruct_defect = oz.reconstruct_defect;
    p.sampled = order_zero_defect(phi, kOrderZeroSamples, phi_seed);
    p.order_zero_pass = p.mult_defect <= tol && p.commute_defect <= tol && p.reconstruct_defect <= tol &&
                        p.sampled.one_var_sup <= tol && p.sampled.orth_pair_sup <= tol &&
                        p.sampled.od_sup <= tol;
  });

  Element sum(cert.algebra);
  for (std::size_t i = 0; i < cert.phis.size(); ++i) sum = sum + apply(cert.phis[i], unit(cert.summands[i]));
  r.sum_contractive.norm = norm(sum);
  r.sum_contractive.pass = r.sum_contractive.norm <= 1.0 + tol;

  for (std::size_t t = 0; t < cert.test_set.size(); ++t) {
    const Element& x = cert.test_set[t];
    const auto parts = split(apply(cert.psi, x), cert.summands);
    Element back(cert.algebra);
    for (std::size_t i = 0; i < parts.size(); ++i) back = back + apply(cert.phis[i], parts[i]);
    const double err = norm(back - x);
    r.approximation.push_back({t, err, err < cert.epsilon});
  }

  r.caveat_unfalsified = r.psi_two_positive.status == KposStatus::Unfalsified;
  for (const auto& p : r.phis) r.caveat_unfalsified |= p.two_positive.status == KposStatus::Unfalsified;
  r.overall = r.failed_checks().empty();
  return r;
}

DrCertificate identity_certificate(const FiniteCStar& algebra, std::vector<Element> test_set, double epsilon) {
  PMap id = identity_map(algebra);
  return DrCertificate{algebra, 0, {algebra}, id, {id}, std::move(test_set), epsilon};
}

DrCertificate orderzero_certificate(const FiniteCStar& algebra, const std::vector<double>& weights,
                                    std::uint64_t seed, double epsilon) {
  if (weights.empty()) throw Error(ErrorCode::BadWeights, "at least one weight is required");
  for (double w : weights) {
    if (!(w > 0.0) || !std::isfinite(w)) throw Error(ErrorCode::BadWeights, "weights must be positive");
  }
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (std::abs(total - 1.0) > 1e-12) throw Error(ErrorCode::BadWeights, "weights must sum to 1");

  const std::vector<FiniteCStar> summands(weights.size(), algebra);
  const FiniteCStar sum_algebra = direct_sum(summands);

  // psi(e) = (e, ..., e)
  std::vector<Element> diag_images;
  for (const auto& u : matrix_unit_indices(algebra)) {
    const Element e = matrix_unit(algebra, u);
    std::vector<CMatrix> blocks;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      blocks.insert(blocks.end(), e.blocks().begin(), e.blocks().end());
    }
    diag_images.emplace_back(sum_algebra, std::move(blocks));
  }
  PMap psi = from_action(algebra, sum_algebra, diag_images);

  const std::vector<Element> units = matrix_units(algebra);
  std::vector<PMap> phis;
  for (double w : weights) phis.push_back(oz_construct(algebra, units, w * unit(algebra)));

  std::vector<Element> test_set;
  for (std::uint64_t t = 0; t < 4; ++t) test_set.push_back(random_contraction(algebra, mix_seed(seed, t)));
  return DrCertificate{algebra, weights.size() - 1, summands, std::move(psi), std::move(phis), std::move(test_set),
                       epsilon};
}

}  // namespace posmap
