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

#include "posmap/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "posmap/error.hpp"

namespace posmap::io {
namespace {

using nlohmann::json;

[[noreturn]] void parse_fail(const std::string& field, const std::string& what) {
  throw Error(ErrorCode::ParseError, "field '" + field + "': " + what);
}

int array_depth(const json& j) {
  if (!j.is_array()) return 0;
  int inner = 0;
  for (const auto& e : j) inner = std::max(inner, array_depth(e));
  return inner + 1;
}

bool is_flat(const json& j) {
  if (j.is_array()) {
    for (const auto& e : j) {
      if (e.is_object()) return false;
    }
    return array_depth(j) <= 2;
  }
  return !j.is_object();
}

void write(const json& j, int indent, std::string& out) {
  const std::string pad(static_cast<std::size_t>(indent) + 2, ' ');
  const std::string close(static_cast<std::size_t>(indent), ' ');
  if (is_flat(j) || j.empty()) {
    out += j.dump();
    return;
  }
  const bool obj = j.is_object();
  out += obj ? "{\n" : "[\n";
  std::size_t i = 0;
  for (auto it = j.begin(); it != j.end(); ++it, ++i) {
    out += pad;
    if (obj) out += json(it.key()).dump() + ": ";
    write(*it, indent + 2, out);
    out += (i + 1 < j.size()) ? ",\n" : "\n";
  }
  out += close + (obj ? "}" : "]");
}

const json& field(const json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) parse_fail(path, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) parse_fail(path.empty() ? key : path + "." + key, "missing");
  return *it;
}

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

std::string at(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

double read_real(const json& j, const std::string& path) {
  if (!j.is_number()) parse_fail(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) parse_fail(path, "expected a finite number");
  return v;
}

std::size_t read_count(const json& j, const std::string& path) {
  if (!j.is_number_unsigned()) parse_fail(path, "expected a non-negative integer");
  return j.get<std::size_t>();
}

const json& read_array(const json& j, const std::string& path) {
  if (!j.is_array()) parse_fail(path, "expected an array");
  return j;
}

FiniteCStar read_algebra(const json& j, const std::string& path) {
  const std::string bpath = join(path, "blocks");
  const json& blocks = read_array(field(j, "blocks", path), bpath);
  std::vector<std::size_t> sizes;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const std::size_t n = read_count(blocks[i], at(bpath, i));
    if (n == 0) parse_fail(at(bpath, i), "block size must be positive");
    sizes.push_back(n);
  }
  if (sizes.empty()) parse_fail(bpath, "at least one block is required");
  return FiniteCStar(std::move(sizes));
}

json algebra_to_json(const FiniteCStar& a) { return json{{"blocks", a.block_sizes()}}; }

CMatrix read_matrix(const json& j, const std::string& path, std::size_t expected) {
  const json& rows = read_array(j, path);
  if (rows.size() != expected) {
    parse_fail(path, "expected " + std::to_string(expected) + " rows, got " + std::to_string(rows.size()));
  }
  const auto n = static_cast<Eigen::Index>(expected);
  CMatrix m(n, n);
  for (std::size_t r = 0; r < expected; ++r) {
    const std::string rpath = at(path, r);
    const json& row = read_array(rows[r], rpath);
    if (row.size() != expected) {
      parse_fail(rpath, "expected " + std::to_string(expected) + " entries, got " + std::to_string(row.size()));
    }
    for (std::size_t c = 0; c < expected; ++c) {
      const std::string epath = at(rpath, c);
      const json& e = read_array(row[c], epath);
      if (e.size() != 2) parse_fail(epath, "expected an [re, im] pair");
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          Complex(read_real(e[0], at(epath, 0)), read_real(e[1], at(epath, 1)));
    }
  }
  return m;
}

std::vector<CMatrix> read_choi_blocks(const json& j, const std::string& path, const FiniteCStar& source,
                                      const FiniteCStar& target) {
  const std::string cpath = join(path, "choi_blocks");
  const json& blocks = read_array(field(j, "choi_blocks", path), cpath);
  if (blocks.size() != source.num_blocks()) {
    parse_fail(cpath, "expected " + std::to_string(source.num_blocks()) + " blocks, got " +
                          std::to_string(blocks.size()));
  }
  std::vector<CMatrix> out;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    out.push_back(read_matrix(blocks[b], at(cpath, b), source.block_size(b) * target.embedding_dim()));
  }
  return out;
}

json choi_to_json(const PMap& phi) {
  json blocks = json::array();
  for (const auto& c : phi.choi_blocks()) blocks.push_back(matrix_to_json(c));
  return json{{"choi_blocks", std::move(blocks)}};
}

Element read_element(const json& j, const std::string& path, const FiniteCStar& algebra) {
  const std::string bpath = join(path, "blocks");
  const json& blocks = read_array(field(j, "blocks", path), bpath);
  if (blocks.size() != algebra.num_blocks()) parse_fail(bpath, "block count differs from the algebra");
  std::vector<CMatrix> mats;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    mats.push_back(read_matrix(blocks[b], at(bpath, b), algebra.block_size(b)));
  }
  return Element(algebra, std::move(mats));
}

json parse_document(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

void check_schema(const json& doc) {
  const int v = static_cast<int>(read_count(field(doc, "schema_version", ""), "schema_version"));
  if (v != kSchemaVersion) {
    throw Error(ErrorCode::SchemaVersionMismatch,
                "schema_version " + std::to_string(v) + " (supported: " + std::to_string(kSchemaVersion) + ")");
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::IoError, "read failed for " + path.string());
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot open " + path.string() + " for writing");
  out << text;
  if (!out.flush()) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

json vector_to_json(const CVector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back({v(i).real(), v(i).imag()});
  return out;
}

json norm_check(const NormCheck& c) { return json{{"pass", c.pass}, {"norm", c.norm}}; }

}  // namespace

std::string dump(const nlohmann::json& doc) {
  std::string out;
  write(doc, 0, out);
  out += '\n';
  return out;
}

nlohmann::json matrix_to_json(const CMatrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string certificate_to_string(const DrCertificate& cert) {
  json summands = json::array();
  for (const auto& f : cert.summands) summands.push_back(algebra_to_json(f));
  json phis = json::array();
  for (const auto& p : cert.phis) phis.push_back(choi_to_json(p));
  json tests = json::array();
  for (const auto& x : cert.test_set) {
    json blocks = json::array();
    for (const auto& b : x.blocks()) blocks.push_back(matrix_to_json(b));
    tests.push_back(json{{"blocks", std::move(blocks)}});
  }
  json doc{{"schema_version", kSchemaVersion},
           {"algebra", algebra_to_json(cert.algebra)},
           {"d", cert.d},
           {"summands", std::move(summands)},
           {"psi", choi_to_json(cert.psi)},
           {"phis", std::move(phis)},
           {"test_set", std::move(tests)},
           {"epsilon", cert.epsilon}};
  return dump(doc);
}

DrCertificate certificate_from_string(std::string_view text) {
  const json doc = parse_document(text);
  check_schema(doc);
  const FiniteCStar algebra = read_algebra(field(doc, "algebra", ""), "algebra");
  const std::size_t d = read_count(field(doc, "d", ""), "d");
  const json& summ = read_array(field(doc, "summands", ""), "summands");
  if (summ.size() != d + 1) parse_fail("summands", "expected d + 1 = " + std::to_string(d + 1) + " entries");
  std::vector<FiniteCStar> summands;
  for (std::size_t i = 0; i < summ.size(); ++i) summands.push_back(read_algebra(summ[i], at("summands", i)));
  const FiniteCStar sum = direct_sum(summands);
  PMap psi(algebra, sum, read_choi_blocks(field(doc, "psi", ""), "psi", algebra, sum));
  const json& ph = read_array(field(doc, "phis", ""), "phis");
  if (ph.size() != d + 1) parse_fail("phis", "expected d + 1 = " + std::to_string(d + 1) + " entries");
  std::vector<PMap> phis;
  for (std::size_t i = 0; i < ph.size(); ++i) {
    phis.emplace_back(summands[i], algebra, read_choi_blocks(ph[i], at("phis", i), summands[i], algebra));
  }
  const json& ts = read_array(field(doc, "test_set", ""), "test_set");
  std::vector<Element> tests;
  for (std::size_t i = 0; i < ts.size(); ++i) tests.push_back(read_element(ts[i], at("test_set", i), algebra));
  const double eps = read_real(field(doc, "epsilon", ""), "epsilon");
  return DrCertificate{algebra, d, std::move(summands), std::move(psi), std::move(phis), std::move(tests), eps};
}

void save_certificate(const DrCertificate& cert, const std::filesystem::path& path) {
  write_file(path, certificate_to_string(cert));
}

DrCertificate load_certificate(const std::filesystem::path& path) { return certificate_from_string(read_file(path)); }

std::string map_to_string(const PMap& phi) {
  json doc = choi_to_json(phi);
  doc["schema_version"] = kSchemaVersion;
  doc["source"] = algebra_to_json(phi.source());
  doc["target"] = algebra_to_json(phi.target());
  return dump(doc);
}

PMap map_from_string(std::string_view text) {
  const json doc = parse_document(text);
  check_schema(doc);
  const FiniteCStar source = read_algebra(field(doc, "source", ""), "source");
  const FiniteCStar target = read_algebra(field(doc, "target", ""), "target");
  return PMap(source, target, read_choi_blocks(doc, "", source, target));
}

void save_map(const PMap& phi, const std::filesystem::path& path) { write_file(path, map_to_string(phi)); }

PMap load_map(const std::filesystem::path& path) { return map_from_string(read_file(path)); }

nlohmann::json to_json(const Witness& w) {
  json left = json::array();
  json right = json::array();
  for (const auto& v : w.factors_left) left.push_back(vector_to_json(v));
  for (const auto& v : w.factors_right) right.push_back(vector_to_json(v));
  return json{{"k", w.k},
              {"source_block", w.source_block},
              {"factors_left", std::move(left)},
              {"factors_right", std::move(right)},
              {"value", w.value},
              {"vector_norm", w.vector_norm}};
}

nlohmann::json to_json(const KposVerdict& v) {
  json out{{"status", std::string(to_string(v.status))},
           {"restarts_used", v.restarts_used},
           {"best_value", v.best_value},
           {"witness", nullptr}};
  if (v.witness) out["witness"] = to_json(*v.witness);
  return out;
}

nlohmann::json to_json(const DefectReport& r) {
  return json{{"one_var_sup", r.one_var_sup},
              {"orth_pair_sup", r.orth_pair_sup},
              {"od_sup", r.od_sup},
              {"samples", r.samples},
              {"seed", r.seed}};
}

nlohmann::json to_json(const OzDecomposition& d) {
  json h = json::array();
  for (const auto& b : d.h.blocks()) h.push_back(matrix_to_json(b));
  return json{{"h_blocks", std::move(h)},
              {"mult_defect", d.mult_defect},
              {"commute_defect", d.commute_defect},
              {"reconstruct_defect", d.reconstruct_defect}};
}

nlohmann::json to_json(const family::ExampleReport& r) {
  json out{{"n", r.n},
           {"m", r.m},
           {"k", r.k},
           {"lambda", r.lambda},
           {"epsilon", r.epsilon},
           {"seed", r.seed},
           {"samples", r.samples},
           {"lambda_tilde", r.lambda_tilde},
           {"max_square_defect", r.max_square_defect},
           {"defect_bound", r.defect_bound},
           {"defect_bound_ok", r.defect_bound_ok},
           {"closed_form_deviation", r.closed_form_deviation},
           {"direct_form_deviation", r.direct_form_deviation},
           {"next_threshold", r.next_threshold},
           {"exceeds_next_threshold", r.exceeds_next_threshold},
           {"falsifier", nullptr}};
  if (r.falsifier) out["falsifier"] = to_json(*r.falsifier);
  return out;
}

nlohmann::json to_json(const VerifyReport& r) {
  json phis = json::array();
  for (const auto& p : r.phis) {
    phis.push_back(json{{"contraction", norm_check(p.contraction)},
                        {"two_positive", to_json(p.two_positive)},
                        {"mult_defect", p.mult_defect},
                        {"commute_defect", p.commute_defect},
                        {"reconstruct_defect", p.reconstruct_defect},
                        {"sampled", to_json(p.sampled)},
                        {"order_zero_pass", p.order_zero_pass}});
  }
  json approx = json::array();
  for (const auto& a : r.approximation) {
    approx.push_back(json{{"index", a.index}, {"error", a.error}, {"pass", a.pass}});
  }
  return json{{"tol", r.tol},
              {"seed", r.seed},
              {"restarts", r.restarts},
              {"psi_contraction", norm_check(r.psi_contraction)},
              {"psi_two_positive", to_json(r.psi_two_positive)},
              {"phis", std::move(phis)},
              {"sum_contractive", norm_check(r.sum_contractive)},
              {"approximation", std::move(approx)},
              {"caveat_unfalsified", r.caveat_unfalsified},
              {"failed_checks", r.failed_checks()},
              {"overall", r.overall}};
}

}  // namespace posmap::io
