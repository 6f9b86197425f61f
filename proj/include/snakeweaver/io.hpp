// Copyright 2026 The snakeweaver Authors
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

#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "snakeweaver/ci_calculus.hpp"
#include "snakeweaver/marginal_store.hpp"
#include "snakeweaver/reconstruct.hpp"
#include "snakeweaver/report.hpp"
#include "snakeweaver/snakes.hpp"
#include "snakeweaver/stabilizer.hpp"

namespace snakeweaver::io {

using nlohmann::json;

inline constexpr int kMarginalFormatVersion = 1;
inline constexpr int kStabilizerFormatVersion = 1;
inline constexpr int kReportSchemaVersion = 1;

// All parsers throw FormatError on malformed input.
json vertex_to_json(const Vertex& v);
Vertex vertex_from_json(const json& j);
json region_to_json(const Region& r);
Region region_from_json(const json& j);

// Nested rows of [re, im] pairs; doubles round-trip exactly.
json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const json& j);

json marginal_set_to_json(const MarginalSet& ms);
MarginalSet marginal_set_from_json(const json& j, Validation v = Validation::preserve);

json state_to_json(const DensityOperator& op);

json report_to_json(const CheckReport& r);
json formula_to_json(const FormulaResult& f);

json statement_to_json(const ci::Statement& s);
ci::Statement statement_from_json(const json& j);
json derivation_to_json(const ci::Derivation& d);

json snake_spec_to_json(const SnakeSpec& s);
SnakeSpec snake_spec_from_json(const json& j);

// {"format_version", "window", "qubits_per_site", "generators": ["0110", ...]}
// with each generator string holding the X part then the Z part.
json stabilizer_to_json(const oracles::StabilizerState& st, const Window& window);
oracles::StabilizerState stabilizer_from_json(const json& j, Window* window = nullptr);

json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const json& j, int indent = -1);

MarginalSet read_marginal_file(const std::filesystem::path& path, Validation v = Validation::preserve);
void write_marginal_file(const std::filesystem::path& path, const MarginalSet& ms);

}  // namespace snakeweaver::io
