// Copyright 2026 The LOIS Authors
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

#ifndef LOIS_JSON_IO_HPP
#define LOIS_JSON_IO_HPP

#include <string>

#include "json.hpp"

#include "lois/cng.hpp"
#include "lois/equilibrium.hpp"

namespace lois {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// Rationals serialize as JSON integers when integral and small, otherwise
/// as "p/q" strings. Floating-point numbers are rejected on input.
Json rational_to_json(const Rational& r);
Rational rational_from_json(const Json& j);

Json cng_to_json(const CngInstance& instance);
CngInstance cng_from_json(const Json& j);

Json ipg_to_json(const IPGInstance& instance);
IPGInstance ipg_from_json(const Json& j);

Json equilibrium_report_to_json(const EquilibriumReport& report);

/// True when the parsed file is a critical-node-game instance (sniffed by
/// its "V" key) rather than a general game instance ("players").
bool looks_like_cng(const Json& j);

Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

/// Canonical dump used for every artifact: two-space indent plus newline.
std::string dump_artifact(const Json& j);

}  // namespace lois

#endif  // LOIS_JSON_IO_HPP
