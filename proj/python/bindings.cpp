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

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <string>
#include <utility>
#include <vector>

#include "snakeweaver/ci_calculus.hpp"
#include "snakeweaver/errors.hpp"
#include "snakeweaver/io.hpp"
#include "snakeweaver/marginal_store.hpp"
#include "snakeweaver/merge.hpp"
#include "snakeweaver/oracles.hpp"
#include "snakeweaver/reconstruct.hpp"
#include "snakeweaver/snakes.hpp"

namespace py = pybind11;
using namespace py::literals;
using namespace snakeweaver;

namespace {

using Site = std::pair<int, int>;
using Sites = std::vector<Site>;

Region region(const Sites& sites) {
  std::vector<Vertex> v;
  v.reserve(sites.size());
  for (const auto& [x, y] : sites) v.push_back({x, y});
  return Region(std::move(v));
}

Sites sites(const Region& r) {
  Sites out;
  for (const auto& v : r) out.emplace_back(v.x, v.y);
  return out;
}

Vertex vertex(const Site& s) { return {s.first, s.second}; }

std::string report_json(const CheckReport& r) { return io::report_to_json(r).dump(); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Reconstruction of 2D quantum Markov states from 3x3 cluster marginals";
  m.attr("__version__") = "0.1.0";

  py::register_exception<GeometryError>(m, "GeometryError", PyExc_ValueError);
  py::register_exception<RegionError>(m, "RegionError", PyExc_ValueError);
  py::register_exception<InvalidStateError>(m, "InvalidStateError", PyExc_ValueError);
  py::register_exception<FormatError>(m, "FormatError", PyExc_ValueError);
  py::register_exception<ConsistencyError>(m, "ConsistencyError", PyExc_RuntimeError);
  py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);
  py::register_exception<DimensionGuardError>(m, "DimensionGuardError", PyExc_MemoryError);

  py::class_<DensityOperator>(m, "DensityOperator")
      .def(py::init([](const Sites& s, int local_dim, const Matrix& matrix) {
             return DensityOperator(region(s), local_dim, matrix);
           }),
           "sites"_a, "local_dim"_a, "matrix"_a)
      .def_property_readonly("sites", [](const DensityOperator& op) { return sites(op.region()); })
      .def_property_readonly("local_dim", &DensityOperator::local_dim)
      .def_property_readonly("dim", &DensityOperator::dim)
      .def_property_readonly("matrix", [](const DensityOperator& op) { return op.matrix(); })
      .def("__repr__", [](const DensityOperator& op) {
        return "<DensityOperator on " + to_string(op.region()) + ", dim " + std::to_string(op.dim()) + ">";
      });

  m.def("partial_trace", [](const DensityOperator& op, const Sites& keep) { return partial_trace(op, region(keep)); },
        "op"_a, "keep"_a);
  m.def("tensor", &tensor, "a"_a, "b"_a);
  m.def(
      "entropy", [](const DensityOperator& op, const std::string& base) { return entropy(op, parse_log_base(base)); },
      "op"_a, "base"_a = "2");
  m.def(
      "cmi",
      [](const DensityOperator& op, const Sites& a, const Sites& b, const Sites& c, const std::string& base) {
        return cmi(op, region(a), region(b), region(c), parse_log_base(base));
      },
      "op"_a, "a"_a, "b"_a, "c"_a, "base"_a = "2");
  m.def("trace_distance", &trace_distance, "a"_a, "b"_a);
  m.def("right_merge", [](const DensityOperator& sigma, const DensityOperator& rho) { return right_merge(sigma, rho); },
        "sigma"_a, "rho"_a);
  m.def(
      "recovery_check",
      [](const DensityOperator& op, const Sites& a, const Sites& b, const Sites& c, double tol) {
        const RecoveryCheck r = is_markov_via_recovery(op, region(a), region(b), region(c), tol);
        return py::dict("markov"_a = r.markov, "residual"_a = r.residual, "cmi"_a = r.cmi,
                        "cmi_agrees"_a = r.cmi_agrees);
      },
      "op"_a, "a"_a, "b"_a, "c"_a, "tol"_a = 1e-8);

  py::class_<MarginalSet>(m, "MarginalSet")
      .def_property_readonly("window",
                             [](const MarginalSet& ms) { return Site{ms.window().width, ms.window().height}; })
      .def_property_readonly("local_dim", &MarginalSet::local_dim)
      .def_property_readonly("anchors",
                             [](const MarginalSet& ms) {
                               Sites out;
                               for (const auto& [a, op] : ms.marginals()) out.emplace_back(a.x, a.y);
                               return out;
                             })
      .def("marginal", [](const MarginalSet& ms, const Site& a) { return ms.marginal(vertex(a)); }, "anchor"_a)
      .def(
          "derived_marginal",
          [](const MarginalSet& ms, const Sites& r, double tol) { return ms.derived_marginal(region(r), tol); },
          "sites"_a, "tol"_a = 1e-8)
      .def("with_marginal",
           [](const MarginalSet& ms, const Site& a, const DensityOperator& op) {
             return ms.with_marginal(vertex(a), op);
           },
           "anchor"_a, "op"_a);

  m.def("read_marginal_file", [](const std::filesystem::path& p) { return io::read_marginal_file(p); }, "path"_a);
  m.def("write_marginal_file", &io::write_marginal_file, "path"_a, "marginals"_a);

  m.def(
      "row_markov",
      [](int width, int height, int local_dim, const std::string& orientation, const std::string& unitaries,
         std::uint64_t seed) {
        const auto spec = oracles::random_row_markov_spec(Window(width, height), local_dim,
                                                          oracles::parse_orientation(orientation),
                                                          oracles::parse_unitary_kind(unitaries), seed);
        return oracles::marginal_set(oracles::RowMarkovSource(spec), {LogBase::two, seed, "row-markov"});
      },
      "width"_a, "height"_a, "local_dim"_a = 2, "orientation"_a = "rows", "unitaries"_a = "complex", "seed"_a = 0);
  m.def(
      "ghz_row",
      [](int width, int height, const Site& first) {
        return oracles::marginal_set(oracles::GhzRowSource(Window(width, height), vertex(first)),
                                     {LogBase::two, std::nullopt, "ghz-row"});
      },
      "width"_a, "height"_a, "first"_a = Site{0, 1});
  m.def("depolarize", &oracles::depolarize, "op"_a, "p"_a);

  m.def(
      "_check_markov_conditions",
      [](const MarginalSet& ms, double tol, const std::string& base) {
        return report_json(check_markov_conditions(ms, tol, parse_log_base(base)));
      },
      "marginals"_a, "tol"_a = 1e-8, "base"_a = "2");
  m.def(
      "_check_local_consistency",
      [](const MarginalSet& ms, double tol, bool full) { return report_json(check_local_consistency(ms, tol, full)); },
      "marginals"_a, "tol"_a = 1e-8, "full_pairwise"_a = false);
  m.def(
      "max_entropy_formula",
      [](const MarginalSet& ms, const std::string& base) { return max_entropy_formula(ms, parse_log_base(base)); },
      "marginals"_a, "base"_a = "2");
  m.def(
      "_reconstruct",
      [](const MarginalSet& ms, double tol_cmi, double tol_consistency, bool compute_entropy) {
        ReconstructionOptions opts;
        opts.tol_cmi = tol_cmi;
        opts.tol_consistency = tol_consistency;
        opts.compute_entropy = compute_entropy;
        ReconstructionResult r = [&] {
          py::gil_scoped_release release;
          return reconstruct_global(ms, opts);
        }();
        return py::make_tuple(r.state, report_json(r.preconditions), report_json(r.fidelity),
                              report_json(r.step_cmi),
                              r.entropy_computed ? py::object(py::float_(r.entropy)) : py::object(py::none()));
      },
      "marginals"_a, "tol_cmi"_a = 1e-8, "tol_consistency"_a = 1e-8, "compute_entropy"_a = true);
  m.def(
      "build_snake",
      [](const MarginalSet& ms, int level, const Site& v, const Site& u, const std::string& variant,
         const std::string& order) {
        return build_snake(ms, {level, vertex(v), vertex(u), parse_snake_variant(variant), parse_build_order(order)});
      },
      "marginals"_a, "level"_a, "v"_a, "u"_a, "variant"_a = "plain", "order"_a = "forward");
  m.def(
      "_derive_snake_target",
      [](const Site& anchor, int depth) {
        const Vertex a = vertex(anchor);
        const auto d = ci::derive(ci::cluster_axioms(a), ci::level1_snake_target(a), depth);
        return d ? py::object(py::str(io::derivation_to_json(*d).dump())) : py::object(py::none());
      },
      "anchor"_a = Site{2, 2}, "depth"_a = 8);
  m.def("set_dense_guard", &set_dense_guard, "max_dim"_a);
  m.def("dense_guard", &dense_guard);
}
