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

#include "cli.hpp"

#include <algorithm>
#include <functional>
#include <iomanip>
#include <optional>

#include <CLI11.hpp>

#include "posmap/certificate.hpp"
#include "posmap/error.hpp"
#include "posmap/family.hpp"
#include "posmap/io.hpp"
#include "posmap/orderzero.hpp"
#include "posmap/positivity.hpp"

namespace posmap::cli {
namespace {

using nlohmann::json;

struct Common {
  bool json_out = false;
  double tol = 1e-8;
  std::uint64_t seed = 0;
  std::size_t restarts = kDefaultRestarts;
  std::size_t samples = 100;
};

// Flattens a report into "key  value" rows. Matrices are summarized by shape.
void flatten(const json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& rows) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      flatten(*it, prefix.empty() ? it.key() : prefix + "." + it.key(), rows);
    }
  } else if (j.is_array() && !j.empty() && (j.front().is_object())) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", rows);
  } else if (j.is_array() && !j.empty() && j.front().is_array()) {
    rows.emplace_back(prefix, "<" + std::to_string(j.size()) + " entries>");
  } else if (j.is_string()) {
    rows.emplace_back(prefix, j.get<std::string>());
  } else {
    rows.emplace_back(prefix, j.dump());
  }
}

void emit(const json& report, const Common& c, std::ostream& out) {
  if (c.json_out) {
    out << io::dump(report);
    return;
  }
  std::vector<std::pair<std::string, std::string>> rows;
  flatten(report, "", rows);
  std::size_t width = 0;
  for (const auto& [k, v] : rows) width = std::max(width, k.size());
  for (const auto& [k, v] : rows) out << std::left << std::setw(static_cast<int>(width + 2)) << k << v << '\n';
}

int verdict_exit(const KposVerdict& v) { return v.status == KposStatus::Violated ? kExitFail : kExitPass; }

void add_json(CLI::App* sub, Common& c) { sub->add_flag("--json", c.json_out, "Structured output"); }
void add_tol(CLI::App* sub, Common& c) { sub->add_option("--tol", c.tol, "Tolerance")->capture_default_str(); }
void add_seed(CLI::App* sub, Common& c) { sub->add_option("--seed", c.seed, "Random seed")->capture_default_str(); }
void add_restarts(CLI::App* sub, Common& c) {
  sub->add_option("--restarts", c.restarts, "Falsifier restarts")->capture_default_str();
}
void add_samples(CLI::App* sub, Common& c) {
  sub->add_option("--samples", c.samples, "Sample count")->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"posmap: positivity and order-zero analysis of maps between matrix algebras", "posmap"};
  app.require_subcommand(1);
  Common c;
  std::string path;
  std::string output;
  std::function<int()> action;

  auto* cp = app.add_subcommand("check-cp", "Complete positivity via the Choi matrix");
  cp->add_option("mapfile", path, "Map file")->required();
  add_tol(cp, c);
  add_json(cp, c);
  cp->callback([&] {
    action = [&] {
      const PMap phi = io::load_map(path);
      const bool ok = is_cp(phi, c.tol);
      emit(json{{"is_cp", ok}, {"choi_min_eig", choi_min_eig(phi)}, {"tol", c.tol}}, c, out);
      return ok ? kExitPass : kExitFail;
    };
  });

  std::size_t k = 0;
  auto* kp = app.add_subcommand("check-kpos", "Search for a k-positivity witness");
  kp->add_option("mapfile", path, "Map file")->required();
  kp->add_option("--k", k, "Level k")->required()->check(CLI::PositiveNumber);
  add_restarts(kp, c);
  add_seed(kp, c);
  add_tol(kp, c);
  add_json(kp, c);
  kp->callback([&] {
    action = [&] {
      const KposVerdict v = k_positivity_falsify(io::load_map(path), k, c.restarts, c.seed, c.tol);
      emit(io::to_json(v), c, out);
      return verdict_exit(v);
    };
  });

  std::size_t n = 0;
  std::optional<double> lambda;
  auto* tm = app.add_subcommand("tomiyama", "k-positivity threshold of a lambda tr + (1 - lambda) id");
  tm->add_option("--n", n, "Matrix size")->required()->check(CLI::Range(std::size_t{2}, std::size_t{64}));
  tm->add_option("--k", k, "Level k")->required()->check(CLI::PositiveNumber);
  tm->add_option("--lambda", lambda, "Compare one lambda against the closed form");
  add_restarts(tm, c);
  add_seed(tm, c);
  add_tol(tm, c);
  add_json(tm, c);
  tm->callback([&] {
    action = [&] {
      const double threshold = tomiyama_threshold(n, k);
      if (!lambda) {
        if (c.json_out) {
          emit(json{{"n", n}, {"k", k}, {"threshold", threshold}}, c, out);
        } else {
          out << json(threshold).dump() << '\n';
        }
        return kExitPass;
      }
      const PMap phi = tomiyama_map(n, *lambda);
      const KposVerdict v = k_positivity_falsify(phi, k, c.restarts, c.seed, c.tol);
      const bool predicted = *lambda <= threshold;
      emit(json{{"n", n},
                {"k", k},
                {"lambda", *lambda},
                {"threshold", threshold},
                {"closed_form_k_positive", predicted},
                {"is_cp", is_cp(phi)},
                {"verdict", io::to_json(v)},
                {"agrees", predicted == (v.status != KposStatus::Violated)}},
           c, out);
      return verdict_exit(v);
    };
  });

  auto* df = app.add_subcommand("defect", "Sampled order-zero defects");
  df->add_option("mapfile", path, "Map file")->required();
  add_samples(df, c);
  add_seed(df, c);
  add_tol(df, c);
  add_json(df, c);
  df->callback([&] {
    action = [&] {
      const DefectReport r = order_zero_defect(io::load_map(path), c.samples, c.seed);
      emit(io::to_json(r), c, out);
      // od_sup is informational: anti-multiplicative order-zero maps such as
      // the transpose leave the orthogonality domain.
      return std::max(r.one_var_sup, r.orth_pair_sup) <= c.tol ? kExitPass : kExitFail;
    };
  });

  auto* dc = app.add_subcommand("decompose", "Split phi = h pi and measure the defects");
  dc->add_option("mapfile", path, "Map file")->required();
  add_tol(dc, c);
  add_json(dc, c);
  dc->callback([&] {
    action = [&] {
      const OzDecomposition d = oz_decompose(io::load_map(path));
      emit(io::to_json(d), c, out);
      const double worst = std::max({d.mult_defect, d.commute_defect, d.reconstruct_defect});
      return worst <= c.tol ? kExitPass : kExitFail;
    };
  });

  auto* rp = app.add_subcommand("repair", "Add n eps tr(a) 1 to restore complete positivity");
  rp->add_option("mapfile", path, "Map file")->required();
  rp->add_option("-o,--output", output, "Write the repaired map here");
  add_json(rp, c);
  rp->callback([&] {
    action = [&] {
      const RepairResult r = cp_repair(io::load_map(path));
      if (!output.empty()) io::save_map(r.repaired, output);
      const bool ok = is_cp(r.repaired);
      emit(json{{"epsilon", r.epsilon}, {"repaired_is_cp", ok}, {"repaired_choi_min_eig", choi_min_eig(r.repaired)}},
           c, out);
      return ok ? kExitPass : kExitFail;
    };
  });

  std::size_t m = 0;
  double lam = 0.0;
  double eps = 0.0;
  auto* ex = app.add_subcommand("example4", "Almost order-zero family on M_m (x) M_n");
  ex->add_option("--n", n, "Block size")->required();
  ex->add_option("--m", m, "Multiplicity")->required();
  ex->add_option("--k", k, "Positivity level")->required();
  ex->add_option("--lambda", lam, "lambda")->required();
  ex->add_option("--eps", eps, "epsilon")->required();
  add_seed(ex, c);
  add_samples(ex, c);
  add_restarts(ex, c);
  add_json(ex, c);
  ex->callback([&] {
    action = [&] {
      family::ExampleOptions opts;
      opts.seed = c.seed;
      opts.samples = c.samples;
      opts.restarts = c.restarts;
      const family::ExampleReport r = family::verify_example(n, m, k, lam, eps, opts);
      emit(io::to_json(r), c, out);
      const bool ok = r.defect_bound_ok && r.closed_form_deviation <= 1e-10;
      return ok ? kExitPass : kExitFail;
    };
  });

  auto* vc = app.add_subcommand("verify-cert", "Check a decomposition-rank certificate");
  vc->add_option("certfile", path, "Certificate file")->required();
  add_tol(vc, c);
  add_seed(vc, c);
  add_restarts(vc, c);
  add_json(vc, c);
  vc->callback([&] {
    action = [&] {
      const VerifyReport r = verify_certificate(io::load_certificate(path), c.tol, c.seed, c.restarts);
      emit(io::to_json(r), c, out);
      return r.overall ? kExitPass : kExitFail;
    };
  });

  std::vector<std::size_t> blocks;
  std::vector<double> weights;
  double cert_eps = 1e-6;
  auto* gc = app.add_subcommand("gen-cert", "Write an order-zero certificate");
  gc->add_option("--algebra", blocks, "Block sizes n0,n1,...")->required()->delimiter(',');
  gc->add_option("--weights", weights, "Weights w0,w1,... summing to 1")->required()->delimiter(',');
  gc->add_option("-o,--output", output, "Output file")->required();
  gc->add_option("--epsilon", cert_eps, "Approximation tolerance")->capture_default_str();
  add_seed(gc, c);
  add_json(gc, c);
  gc->callback([&] {
    action = [&] {
      const DrCertificate cert = orderzero_certificate(FiniteCStar(blocks), weights, c.seed, cert_eps);
      io::save_certificate(cert, output);
      emit(json{{"output", output}, {"d", cert.d}}, c, out);
      return kExitPass;
    };
  });

  std::string kind;
  auto* gm = app.add_subcommand("gen-map", "Write a map file");
  gm->add_option("--kind", kind, "tomiyama, transpose or identity")
      ->required()
      ->check(CLI::IsMember({"tomiyama", "transpose", "identity"}));
  gm->add_option("--n", n, "Matrix size")->required()->check(CLI::PositiveNumber);
  gm->add_option("--lambda", lambda, "lambda for the tomiyama kind");
  gm->add_option("-o,--output", output, "Output file")->required();
  add_json(gm, c);
  gm->callback([&] {
    action = [&] {
      const FiniteCStar a = FiniteCStar::matrix_algebra(n);
      std::optional<PMap> phi;
      if (kind == "tomiyama") {
        if (!lambda) throw CLI::RequiredError("--lambda");
        phi = tomiyama_map(n, *lambda);
      } else if (kind == "transpose") {
        phi = transpose_map(a);
      } else {
        phi = identity_map(a);
      }
      io::save_map(*phi, output);
      emit(json{{"output", output}, {"kind", kind}}, c, out);
      return kExitPass;
    };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    return action();
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace posmap::cli
