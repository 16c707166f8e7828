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

// Text formats for certificates and maps, and JSON views of every report.
//
// Documents are JSON with sorted keys and shortest round-trip doubles.
// Complex entries are [re, im] pairs and matrices are arrays of rows, so
// output is stable byte for byte.

#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "posmap/certificate.hpp"
#include "posmap/family.hpp"
#include "posmap/orderzero.hpp"
#include "posmap/positivity.hpp"

namespace posmap::io {

inline constexpr int kSchemaVersion = 1;

/// Canonical rendering: two-space indentation, arrays nested at most two deep
/// (pairs and matrix rows) kept on one line, trailing newline.
std::string dump(const nlohmann::json& doc);

nlohmann::json matrix_to_json(const CMatrix& m);

// Parsing throws ParseError naming the offending field, or
// SchemaVersionMismatch. File access failures throw IoError.
std::string certificate_to_string(const DrCertificate& cert);
DrCertificate certificate_from_string(std::string_view text);
void save_certificate(const DrCertificate& cert, const std::filesystem::path& path);
DrCertificate load_certificate(const std::filesystem::path& path);

std::string map_to_string(const PMap& phi);
PMap map_from_string(std::string_view text);
void save_map(const PMap& phi, const std::filesystem::path& path);
PMap load_map(const std::filesystem::path& path);

nlohmann::json to_json(const Witness& w);
nlohmann::json to_json(const KposVerdict& v);
nlohmann::json to_json(const DefectReport& r);
nlohmann::json to_json(const OzDecomposition& d);
nlohmann::json to_json(const family::ExampleReport& r);
nlohmann::json to_json(const VerifyReport& r);

}  // namespace posmap::io
