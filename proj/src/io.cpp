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

#include "snakeweaver/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "snakeweaver/errors.hpp"

namespace snakeweaver::io {
namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw FormatError(std::string("missing field '") + key + "'");
  return j.at(key);
}

int int_field(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number_integer()) throw FormatError(std::string("field '") + key + "' must be an integer");
  return v.get<int>();
}

double number(const json& j) {
  if (!j.is_number()) throw FormatError("expected a number");
  return j.get<double>();
}

json window_to_json(const Window& w) { return {{"width", w.width}, {"height", w.height}}; }

Window window_from_json(const json& j) {
  const int w = int_field(j, "width"), h = int_field(j, "height");
  if (w < 1 || h < 1) throw FormatError("window dimensions must be positive");
  return Window(w, h);
}

json region_list(const std::vector<std::pair<std::string, Region>>& regions) {
  json out = json::object();
  for (const auto& [name, r] : regions) out[name] = region_to_json(r);
  return out;
}

}  // namespace

json vertex_to_json(const Vertex& v) { return json::array({v.x, v.y}); }

Vertex vertex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer()) {
    throw FormatError("vertex must be [x, y]");
  }
  return {j[0].get<int>(), j[1].get<int>()};
}

json region_to_json(const Region& r) {
  json out = json::array();
  for (const auto& v : r) out.push_back(vertex_to_json(v));
  return out;
}

Region region_from_json(const json& j) {
  if (!j.is_array()) throw FormatError("region must be a list of [x, y]");
  std::vector<Vertex> sites;
  for (const auto& v : j) sites.push_back(vertex_from_json(v));
  try {
    return Region(std::move(sites));
  } catch (const GeometryError& e) {
    throw FormatError(e.what());
  }
}

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(json::array({m(i, k).real(), m(i, k).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw FormatError("matrix must be a non-empty list of rows");
  const auto n = static_cast<Eigen::Index>(j.size());
  Matrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) {
      throw FormatError("matrix must be square; row " + std::to_string(i) + " has the wrong length");
    }
    for (Eigen::Index k = 0; k < n; ++k) {
      const json& e = row[static_cast<std::size_t>(k)];
      if (!e.is_array() || e.size() != 2) throw FormatError("matrix entries must be [re, im]");
      m(i, k) = Complex(number(e[0]), number(e[1]));
    }
  }
  return m;
}

json marginal_set_to_json(const MarginalSet& ms) {
  json out = {{"format_version", kMarginalFormatVersion},
              {"window", window_to_json(ms.window())},
              {"local_dim", ms.local_dim()},
              {"log_base", ms.metadata().log_base == LogBase::two ? json(2) : json("e")}};
  if (ms.metadata().seed) out["seed"] = *ms.metadata().seed;
  if (!ms.metadata().generator.empty()) out["generator"] = ms.metadata().generator;
  json list = json::array();
  for (const auto& [anchor, op] : ms.marginals()) {
    list.push_back({{"anchor", vertex_to_json(anchor)}, {"matrix", matrix_to_json(op.matrix())}});
  }
  out["marginals"] = std::move(list);
  return out;
}

MarginalSet marginal_set_from_json(const json& j, Validation v) {
  if (!j.is_object()) throw FormatError("marginal file must be a JSON object");
  const int version = int_field(j, "format_version");
  if (version != kMarginalFormatVersion) {
    throw FormatError("unsupported format_version " + std::to_string(version));
  }
  const Window w = window_from_json(field(j, "window"));
  const int d = int_field(j, "local_dim");
  if (d < 2) throw FormatError("local_dim must be at least 2");
  MarginalSetMetadata meta;
  if (j.contains("log_base")) {
    const json& b = j.at("log_base");
    meta.log_base = parse_log_base(b.is_string() ? b.get<std::string>() : b.dump());
  }
  if (j.contains("seed")) {
    if (!j.at("seed").is_number_unsigned()) throw FormatError("seed must be a non-negative integer");
    meta.seed = j.at("seed").get<std::uint64_t>();
  }
  if (j.contains("generator")) meta.generator = j.at("generator").get<std::string>();
  const std::size_t expected = hilbert_dimension(d, 9);
  std::map<Vertex, DensityOperator> marginals;
  const json& list = field(j, "marginals");
  if (!list.is_array()) throw FormatError("'marginals' must be a list");
  for (const auto& entry : list) {
    const Vertex anchor = vertex_from_json(field(entry, "anchor"));
    Matrix m = matrix_from_json(field(entry, "matrix"));
    if (static_cast<std::size_t>(m.rows()) != expected) {
      throw FormatError("marginal at " + to_string(anchor) + " has dimension " + std::to_string(m.rows()) +
                        ", expected " + std::to_string(expected));
    }
    if (marginals.count(anchor)) throw FormatError("duplicate marginal at " + to_string(anchor));
    marginals.emplace(anchor, DensityOperator(cluster_region(anchor, 3, 3), d, std::move(m), v));
  }
  try {
    return MarginalSet(w, d, std::move(marginals), std::move(meta));
  } catch (const RegionError& e) {
    throw FormatError(e.what());
  }
}

json state_to_json(const DensityOperator& op) {
  return {{"region", region_to_json(op.region())},
          {"local_dim", op.local_dim()},
          {"matrix", matrix_to_json(op.matrix())}};
}

json report_to_json(const CheckReport& r) {
  json records = json::array();
  for (const auto& rec : r.records()) {
    json e = {{"id", rec.id},
              {"regions", region_list(rec.regions)},
              {"residual", std::isfinite(rec.residual) ? json(rec.residual) : json(nullptr)},
              {"tol", rec.tol},
              {"passed", rec.passed}};
    if (rec.upper_bound) e["upper_bound"] = true;
    if (!rec.note.empty()) e["note"] = rec.note;
    records.push_back(std::move(e));
  }
  json out = {{"name", r.name()},
              {"passed", r.passed()},
              {"failures", r.failures()},
              {"max_residual", std::isfinite(r.max_residual()) ? json(r.max_residual()) : json(nullptr)},
              {"records", std::move(records)},
              {"warnings", r.warnings()}};
  return out;
}

json formula_to_json(const FormulaResult& f) {
  json terms = json::array();
  for (const auto& t : f.terms) {
    terms.push_back({{"v", vertex_to_json(t.v)},
                     {"s22", t.s22},
                     {"s21", t.s21},
                     {"s12", t.s12},
                     {"s11", t.s11},
                     {"value", t.value}});
  }
  return {{"value", f.value}, {"terms", std::move(terms)}};
}

json statement_to_json(const ci::Statement& s) {
  return {{"a", region_to_json(s.a)}, {"b", region_to_json(s.b)}, {"c", region_to_json(s.c)}};
}

ci::Statement statement_from_json(const json& j) {
  try {
    return ci::make_statement(region_from_json(field(j, "a")),
                              j.contains("b") ? region_from_json(j.at("b")) : Region{},
                              region_from_json(field(j, "c")));
  } catch (const GeometryError& e) {
    throw FormatError(e.what());
  }
}

json derivation_to_json(const ci::Derivation& d) {
  json steps = json::array();
  for (const auto& s : d.steps) {
    json inputs = json::array();
    for (const auto& in : s.inputs) inputs.push_back(statement_to_json(in));
    steps.push_back({{"move", s.move}, {"inputs", std::move(inputs)}, {"output", statement_to_json(s.output)}});
  }
  return steps;
}

json snake_spec_to_json(const SnakeSpec& s) {
  return {{"level", s.level},
          {"v", vertex_to_json(s.v)},
          {"u", vertex_to_json(s.u)},
          {"variant", to_string(s.variant)},
          {"order", to_string(s.order)}};
}

SnakeSpec snake_spec_from_json(const json& j) {
  SnakeSpec s;
  s.level = int_field(j, "level");
  s.v = vertex_from_json(field(j, "v"));
  s.u = vertex_from_json(field(j, "u"));
  try {
    if (j.contains("variant")) s.variant = parse_snake_variant(j.at("variant").get<std::string>());
    if (j.contains("order")) s.order = parse_build_order(j.at("order").get<std::string>());
    s.validate();
  } catch (const GeometryError& e) {
    throw FormatError(e.what());
  }
  return s;
}

json stabilizer_to_json(const oracles::StabilizerState& st, const Window& window) {
  if (!(st.sites() == window.region())) throw RegionError("stabilizer state does not cover the window");
  json gens = json::array();
  for (const auto& g : st.generators()) {
    std::string bits;
    for (auto b : g.x) bits.push_back(b ? '1' : '0');
    for (auto b : g.z) bits.push_back(b ? '1' : '0');
    gens.push_back(std::move(bits));
  }
  return {{"format_version", kStabilizerFormatVersion},
          {"window", window_to_json(window)},
          {"qubits_per_site", st.qubits_per_site()},
          {"generators", std::move(gens)}};
}

oracles::StabilizerState stabilizer_from_json(const json& j, Window* window) {
  const int version = int_field(j, "format_version");
  if (version != kStabilizerFormatVersion) {
    throw FormatError("unsupported format_version " + std::to_string(version));
  }
  const Window w = window_from_json(field(j, "window"));
  const int q = j.contains("qubits_per_site") ? int_field(j, "qubits_per_site") : 1;
  if (q < 1) throw FormatError("qubits_per_site must be positive");
  const std::size_t n = w.num_sites() * static_cast<std::size_t>(q);
  std::vector<oracles::PauliRow> rows;
  for (const auto& g : field(j, "generators")) {
    if (!g.is_string()) throw FormatError("generators must be bit strings");
    const std::string bits = g.get<std::string>();
    if (bits.size() != 2 * n) {
      throw FormatError("generator has " + std::to_string(bits.size()) + " bits, expected " + std::to_string(2 * n));
    }
    oracles::PauliRow row{std::vector<std::uint8_t>(n), std::vector<std::uint8_t>(n)};
    for (std::size_t k = 0; k < 2 * n; ++k) {
      if (bits[k] != '0' && bits[k] != '1') throw FormatError("generator strings may only contain 0 and 1");
      (k < n ? row.x[k] : row.z[k - n]) = bits[k] == '1';
    }
    rows.push_back(std::move(row));
  }
  if (window) *window = w;
  try {
    return oracles::StabilizerState(w.region(), q, std::move(rows));
  } catch (const InvalidStateError& e) {
    throw FormatError(e.what());
  }
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const json& j, int indent) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write " + path.string());
  out << j.dump(indent) << '\n';
}

MarginalSet read_marginal_file(const std::filesystem::path& path, Validation v) {
  try {
    return marginal_set_from_json(read_json_file(path), v);
  } catch (const json::exception& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

void write_marginal_file(const std::filesystem::path& path, const MarginalSet& ms) {
  write_json_file(path, marginal_set_to_json(ms));
}

}  // namespace snakeweaver::io
