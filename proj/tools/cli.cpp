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

#include "snakeweaver/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <iomanip>
#include <optional>
#include <sstream>

#include "snakeweaver/ci_calculus.hpp"
#include "snakeweaver/errors.hpp"
#include "snakeweaver/io.hpp"
#include "snakeweaver/marginal_store.hpp"
#include "snakeweaver/oracles.hpp"
#include "snakeweaver/parallel.hpp"
#include "snakeweaver/reconstruct.hpp"
#include "snakeweaver/snakes.hpp"
#include "snakeweaver/stabilizer.hpp"

namespace snakeweaver::cli {
namespace {

using io::json;

struct RunConfig {
  double tol_cmi = 1e-8;
  double tol_consistency = 1e-8;
  std::string log_base = "2";
  std::uint64_t seed = 0;
  bool json = false;
  std::string report_path;
  std::size_t threads = 0;
  std::size_t dense_guard = std::size_t{1} << 14;
};

struct Context {
  RunConfig cfg;
  LogBase base = LogBase::two;
  std::ostream& out;
  std::ostream& err;
};

Vertex parse_vertex(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) throw FormatError("expected x,y but got '" + s + "'");
  try {
    std::size_t p1 = 0, p2 = 0;
    const int x = std::stoi(s.substr(0, comma), &p1);
    const int y = std::stoi(s.substr(comma + 1), &p2);
    if (p1 != comma || p2 != s.size() - comma - 1) throw std::invalid_argument(s);
    return {x, y};
  } catch (const std::logic_error&) {
    throw FormatError("expected x,y but got '" + s + "'");
  }
}

std::string unit(LogBase b) { return b == LogBase::two ? "bits" : "nats"; }

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(6) << v;
  return os.str();
}

std::string regions_text(const CheckRecord& r) {
  std::string s;
  for (const auto& [name, reg] : r.regions) s += " " + name + "=" + to_string(reg);
  return s;
}

void print_report(const Context& ctx, const CheckReport& r, std::size_t max_failures = 20) {
  ctx.out << r.name() << ": " << (r.passed() ? "PASS" : "FAIL") << " (" << r.records().size()
          << " checks, " << r.failures() << " failures, max residual " << fmt(r.max_residual()) << ")\n";
  std::size_t shown = 0;
  for (const auto& rec : r.records()) {
    if (rec.passed) continue;
    if (shown++ == max_failures) {
      ctx.out << "  ... " << (r.failures() - max_failures) << " more\n";
      break;
    }
    ctx.out << "  " << rec.id << ": residual " << fmt(rec.residual) << " > tol " << fmt(rec.tol)
            << regions_text(rec) << (rec.note.empty() ? "" : " (" + rec.note + ")") << "\n";
  }
  for (const auto& w : r.warnings()) ctx.out << "  warning: " << w << "\n";
}

json envelope(const std::string& command, int exit_code) {
  return {{"schema_version", io::kReportSchemaVersion},
          {"tool", "snakeweaver"},
          {"command", command},
          {"passed", exit_code == kPass},
          {"exit_code", exit_code}};
}

int emit(const Context& ctx, json doc) {
  const int code = doc.at("exit_code").get<int>();
  if (!ctx.cfg.report_path.empty()) io::write_json_file(ctx.cfg.report_path, doc, 2);
  if (ctx.cfg.json) ctx.out << doc.dump(2) << "\n";
  return code;
}

json config_json(const Context& ctx) {
  return {{"tol_cmi", ctx.cfg.tol_cmi},
          {"tol_consistency", ctx.cfg.tol_consistency},
          {"log_base", to_string(ctx.base)},
          {"dense_guard", ctx.cfg.dense_guard}};
}

// ---- check ---------------------------------------------------------------

struct CheckArgs {
  std::string file;
  bool full_pairwise = false;
};

int cmd_check(const Context& ctx, const CheckArgs& a) {
  const MarginalSet ms = io::read_marginal_file(a.file);
  const CheckReport consistency = check_local_consistency(ms, ctx.cfg.tol_consistency, a.full_pairwise);
  const CheckReport markov = check_markov_conditions(ms, ctx.cfg.tol_cmi, ctx.base);
  const int code = consistency.passed() && markov.passed() ? kPass : kConditionFailure;
  if (!ctx.cfg.json) {
    print_report(ctx, consistency);
    print_report(ctx, markov);
    ctx.out << (code == kPass ? "all conditions hold" : "conditions violated") << "\n";
  }
  json doc = envelope("check", code);
  doc["input"] = a.file;
  doc["config"] = config_json(ctx);
  doc["reports"] = json::array({io::report_to_json(consistency), io::report_to_json(markov)});
  return emit(ctx, std::move(doc));
}

// ---- reconstruct -----------------------------------------------------------

struct ReconstructArgs {
  std::string file;
  bool force = false;
  bool formula_only = false;
  std::string state_out;
};

int cmd_reconstruct(const Context& ctx, const ReconstructArgs& a) {
  const MarginalSet ms = io::read_marginal_file(a.file);
  const Window& w = ms.window();
  const MarginalSetEntropyProvider provider(ms, a.force ? INFINITY : ctx.cfg.tol_consistency);
  const FormulaResult formula = max_entropy_formula_terms(provider, w, ctx.base);
  json doc = envelope("reconstruct", kPass);
  doc["input"] = a.file;
  doc["config"] = config_json(ctx);
  doc["formula"] = io::formula_to_json(formula);

  if (a.formula_only) {
    if (!ctx.cfg.json) ctx.out << "max-entropy formula: " << fmt(formula.value) << " " << unit(ctx.base) << "\n";
    return emit(ctx, std::move(doc));
  }
  const double dim = std::pow(static_cast<double>(ms.local_dim()), static_cast<double>(w.num_sites()));
  if (dim > static_cast<double>(dense_guard())) {
    throw DimensionGuardError("global dimension " + fmt(dim) + " for a " + std::to_string(w.width) + "x" +
                              std::to_string(w.height) + " window exceeds the dense guard " +
                              std::to_string(dense_guard()) + "; use --formula-only or raise --dense-guard");
  }

  ReconstructionOptions opts;
  opts.tol_cmi = ctx.cfg.tol_cmi;
  opts.tol_consistency = ctx.cfg.tol_consistency;
  opts.base = ctx.base;
  if (a.force) opts.tol_derived = INFINITY;
  const ReconstructionResult res = reconstruct_global(ms, opts);
  int code = res.fidelity.passed() ? kPass : kConditionFailure;
  if (!a.force && !res.preconditions.passed()) code = kConditionFailure;

  if (!ctx.cfg.json) {
    print_report(ctx, res.preconditions);
    if (!a.force && !res.preconditions.passed()) ctx.out << "preconditions failed; rerun with --force to proceed\n";
    print_report(ctx, res.step_cmi);
    print_report(ctx, res.fidelity);
    if (res.entropy_computed) ctx.out << "entropy of reconstruction: " << fmt(res.entropy) << " " << unit(ctx.base) << "\n";
    ctx.out << "max-entropy formula: " << fmt(formula.value) << " " << unit(ctx.base) << "\n";
  }
  json merges = json::array();
  for (const auto& m : res.merges) {
    merges.push_back({{"overlap", io::region_to_json(m.overlap)},
                      {"trace_before", m.trace_before},
                      {"dropped_weight", m.dropped_weight},
                      {"tensor_extension", m.tensor_extension}});
  }
  doc["exit_code"] = code;
  doc["passed"] = code == kPass;
  doc["reports"] = json::array({io::report_to_json(res.preconditions), io::report_to_json(res.step_cmi),
                                io::report_to_json(res.fidelity)});
  doc["merges"] = std::move(merges);
  if (res.entropy_computed) doc["entropy"] = res.entropy;
  if (!a.state_out.empty()) io::write_json_file(a.state_out, io::state_to_json(res.state));
  return emit(ctx, std::move(doc));
}

// ---- entropy -------------------------------------------------------------

struct EntropyArgs {
  std::string file;
  bool stabilizer = false;
  bool terms = false;
};

int cmd_entropy(const Context& ctx, const EntropyArgs& a) {
  json doc = envelope("entropy", kPass);
  doc["input"] = a.file;
  doc["config"] = config_json(ctx);
  FormulaResult formula;
  double med_value = 0.0;
  std::optional<double> exact;
  if (a.stabilizer) {
    Window w;
    const oracles::StabilizerEntropyProvider provider(io::stabilizer_from_json(io::read_json_file(a.file), &w));
    formula = max_entropy_formula_terms(provider, w, ctx.base);
    med_value = row_path_med(provider, w, ctx.base);
    exact = provider.entropy(w.region(), ctx.base);
    doc["global_entropy"] = *exact;
  } else {
    const MarginalSet ms = io::read_marginal_file(a.file);
    const MarginalSetEntropyProvider provider(ms, ctx.cfg.tol_consistency);
    formula = max_entropy_formula_terms(provider, ms.window(), ctx.base);
    med_value = row_path_med(provider, ms.window(), ctx.base);
  }
  doc["formula"] = io::formula_to_json(formula);
  doc["med"] = med_value;
  if (!ctx.cfg.json) {
    const std::string u = " " + unit(ctx.base);
    if (a.terms) {
      ctx.out << std::setw(8) << "v" << std::setw(14) << "S(2x2)" << std::setw(14) << "S(2x1)" << std::setw(14)
              << "S(1x2)" << std::setw(14) << "S(1x1)" << std::setw(14) << "term" << "\n";
      for (const auto& t : formula.terms) {
        ctx.out << std::setw(8) << to_string(t.v) << std::setw(14) << fmt(t.s22) << std::setw(14) << fmt(t.s21)
                << std::setw(14) << fmt(t.s12) << std::setw(14) << fmt(t.s11) << std::setw(14) << fmt(t.value)
                << "\n";
      }
    }
    ctx.out << "max-entropy formula: " << fmt(formula.value) << u << "\n";
    ctx.out << "row-path MED: " << fmt(med_value) << u << "\n";
    if (exact) ctx.out << "exact global entropy: " << fmt(*exact) << u << "\n";
  }
  return emit(ctx, std::move(doc));
}

// ---- generate ------------------------------------------------------------

struct GenerateArgs {
  std::string kind;
  std::string output;
  int width = 4;
  int height = 4;
  int local_dim = 2;
  std::string orientation = "rows";
  std::string unitaries = "none";
  std::string site_state = "mixed";
  std::string ghz_at = "0,1";
  double depolarize = 0.0;
  std::string depolarize_at;
  std::string state_out;
};

Matrix site_state(const std::string& kind, int d, oracles::Rng& rng) {
  if (kind == "mixed") return Matrix::Identity(d, d) / static_cast<double>(d);
  if (kind == "zero") {
    Matrix m = Matrix::Zero(d, d);
    m(0, 0) = 1.0;
    return m;
  }
  if (kind == "random") return oracles::random_density_matrix(d, rng);
  throw FormatError("unknown site state '" + kind + "' (mixed, zero, random)");
}

int cmd_generate(const Context& ctx, const GenerateArgs& a) {
  if (a.width < 3 || a.height < 3) throw FormatError("window must be at least 3x3");
  if (a.local_dim < 2) throw FormatError("local dimension must be at least 2");
  const Window w(a.width, a.height);
  json doc = envelope("generate", kPass);
  doc["kind"] = a.kind;
  doc["seed"] = ctx.cfg.seed;
  doc["output"] = a.output;

  if (a.kind == "stabilizer-repetition-rows" || a.kind == "toric-code") {
    const auto st = a.kind == "toric-code" ? oracles::toric_code(w) : oracles::repetition_rows(w);
    io::write_json_file(a.output, io::stabilizer_to_json(st, w));
    if (!ctx.cfg.json) ctx.out << "wrote stabilizer state (" << st.num_qubits() << " qubits) to " << a.output << "\n";
    return emit(ctx, std::move(doc));
  }

  std::unique_ptr<oracles::StateSource> src;
  oracles::Rng rng(ctx.cfg.seed);
  if (a.kind == "product") {
    std::vector<Matrix> states;
    for (std::size_t i = 0; i < w.num_sites(); ++i) states.push_back(site_state(a.site_state, a.local_dim, rng));
    src = std::make_unique<oracles::ProductSource>(w, a.local_dim, std::move(states));
  } else if (a.kind == "row-markov" || a.kind == "column-markov") {
    const auto orientation =
        a.kind == "column-markov" ? oracles::Orientation::columns : oracles::parse_orientation(a.orientation);
    src = std::make_unique<oracles::RowMarkovSource>(oracles::random_row_markov_spec(
        w, a.local_dim, orientation, oracles::parse_unitary_kind(a.unitaries), ctx.cfg.seed));
  } else if (a.kind == "repetition-rows") {
    src = std::make_unique<oracles::RowMarkovSource>(oracles::repetition_rows_spec(w, a.local_dim));
  } else if (a.kind == "ghz-row") {
    if (a.local_dim != 2) throw FormatError("ghz-row is defined for qubits only");
    src = std::make_unique<oracles::GhzRowSource>(w, parse_vertex(a.ghz_at));
  } else {
    throw FormatError("unknown kind '" + a.kind +
                      "' (product, row-markov, column-markov, repetition-rows, ghz-row, "
                      "stabilizer-repetition-rows, toric-code)");
  }

  MarginalSetMetadata meta;
  meta.log_base = ctx.base;
  meta.seed = ctx.cfg.seed;
  meta.generator = a.kind;
  MarginalSet ms = oracles::marginal_set(*src, meta);
  if (!a.depolarize_at.empty()) {
    const Vertex at = parse_vertex(a.depolarize_at);
    if (!w.has_cluster(at)) throw FormatError("no stored cluster at " + to_string(at));
    ms = ms.with_marginal(at, oracles::depolarize(ms.marginal(at), a.depolarize));
    doc["depolarized"] = {{"anchor", io::vertex_to_json(at)}, {"p", a.depolarize}};
  }
  io::write_marginal_file(a.output, ms);
  if (!a.state_out.empty()) io::write_json_file(a.state_out, io::state_to_json(oracles::global_state(*src)));
  if (!ctx.cfg.json) {
    ctx.out << "wrote " << ms.marginals().size() << " marginals for a " << a.width << "x" << a.height
            << " window to " << a.output << "\n";
  }
  return emit(ctx, std::move(doc));
}

// ---- snake ---------------------------------------------------------------

struct SnakeArgs {
  std::string file;
  std::string spec_file;
  int level = 1;
  std::string v = "0,0";
  std::string u;
  std::string variant = "plain";
  std::string order = "forward";
  std::string state_out;
};

int cmd_snake(const Context& ctx, const SnakeArgs& a) {
  const MarginalSet ms = io::read_marginal_file(a.file);
  SnakeSpec spec;
  if (!a.spec_file.empty()) {
    spec = io::snake_spec_from_json(io::read_json_file(a.spec_file));
  } else {
    if (a.u.empty()) throw FormatError("--u is required without --spec");
    spec = {a.level, parse_vertex(a.v), parse_vertex(a.u), parse_snake_variant(a.variant), parse_build_order(a.order)};
    spec.validate();
  }
  const DensityOperator tau = build_snake(ms, spec, ctx.cfg.tol_consistency);
  const double s = entropy(tau, ctx.base);
  const double med_value = snake_entropy_med(ms, spec, ctx.base);
  json doc = envelope("snake", kPass);
  doc["input"] = a.file;
  doc["spec"] = io::snake_spec_to_json(spec);
  doc["region"] = io::region_to_json(tau.region());
  doc["entropy"] = s;
  doc["med"] = med_value;
  int code = kPass;
  if (spec.variant == SnakeVariant::plain) {
    const CheckReport rep = verify_is_snake(ms, spec, ctx.cfg.tol_cmi, ctx.base);
    code = rep.passed() ? kPass : kConditionFailure;
    doc["reports"] = json::array({io::report_to_json(rep)});
    if (!ctx.cfg.json) print_report(ctx, rep);
  }
  doc["exit_code"] = code;
  doc["passed"] = code == kPass;
  if (!ctx.cfg.json) {
    ctx.out << "snake " << to_string(spec.variant) << " level " << spec.level << " on " << tau.region().size()
            << " sites: entropy " << fmt(s) << ", MED " << fmt(med_value) << " " << unit(ctx.base) << "\n";
  }
  if (!a.state_out.empty()) io::write_json_file(a.state_out, io::state_to_json(tau));
  return emit(ctx, std::move(doc));
}

// ---- derive --------------------------------------------------------------

struct DeriveArgs {
  std::string anchor = "2,2";
  std::string target;
  int depth = 8;
};

int cmd_derive(const Context& ctx, const DeriveArgs& a) {
  const Vertex anchor = parse_vertex(a.anchor);
  const auto axioms = ci::cluster_axioms(anchor);
  const ci::Statement target =
      a.target.empty() ? ci::level1_snake_target(anchor) : io::statement_from_json(json::parse(a.target));
  const auto d = ci::derive(axioms, target, a.depth);
  const int code = d ? kPass : kConditionFailure;
  json doc = envelope("derive", code);
  doc["target"] = io::statement_to_json(target);
  doc["axioms"] = axioms.size();
  doc["depth"] = a.depth;
  if (d) doc["trace"] = io::derivation_to_json(*d);
  if (!ctx.cfg.json) {
    ctx.out << "target " << ci::to_string(target) << ": " << (d ? "derived" : "not derivable") << " from "
            << axioms.size() << " axioms (depth " << a.depth << ")\n";
    if (d) {
      for (const auto& s : d->steps) {
        ctx.out << "  " << s.move << ":";
        for (const auto& in : s.inputs) ctx.out << " " << ci::to_string(in);
        ctx.out << " => " << ci::to_string(s.output) << "\n";
      }
    }
  }
  return emit(ctx, std::move(doc));
}

void add_common(CLI::App* app, RunConfig& cfg) {
  app->add_option("--tol-cmi", cfg.tol_cmi, "Tolerance for conditional mutual information residuals");
  app->add_option("--tol-consistency", cfg.tol_consistency, "Tolerance for trace-distance consistency residuals");
  app->add_option("--log-base", cfg.log_base, "Entropy unit: 2 (bits) or e (nats)");
  app->add_option("--seed", cfg.seed, "Random seed");
  app->add_flag("--json", cfg.json, "Print the JSON report instead of text");
  app->add_option("--report", cfg.report_path, "Also write the JSON report to this path");
  app->add_option("--threads", cfg.threads, "Worker threads (default: SNAKEWEAVER_THREADS or 1)");
  app->add_option("--dense-guard", cfg.dense_guard, "Largest dense Hilbert-space dimension allowed");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Markov-condition checks, snake merges and max-entropy reconstruction for 2D marginals",
               args.empty() ? "snakeweaver" : args.front()};
  app.require_subcommand(1);
  RunConfig cfg;

  CheckArgs check;
  auto* c = app.add_subcommand("check", "Check local consistency and every cluster Markov condition");
  c->add_option("file", check.file, "Marginal file")->required();
  c->add_flag("--full-pairwise", check.full_pairwise, "Compare every overlapping cluster pair");
  add_common(c, cfg);

  ReconstructArgs rec;
  auto* r = app.add_subcommand("reconstruct", "Build the global state from the marginals");
  r->add_option("file", rec.file, "Marginal file")->required();
  r->add_flag("--force", rec.force, "Reconstruct even if the preconditions fail");
  r->add_flag("--formula-only", rec.formula_only, "Only evaluate the max-entropy formula");
  r->add_option("--state-out", rec.state_out, "Write the reconstructed state as JSON");
  add_common(r, cfg);

  EntropyArgs ent;
  auto* e = app.add_subcommand("entropy", "Evaluate the max-entropy formula and the row-path MED");
  e->add_option("file", ent.file, "Marginal file (or stabilizer file with --stabilizer)")->required();
  e->add_flag("--stabilizer", ent.stabilizer, "Input is a stabilizer-state file");
  e->add_flag("--terms", ent.terms, "Print the per-vertex term table");
  add_common(e, cfg);

  GenerateArgs gen;
  auto* g = app.add_subcommand("generate", "Write oracle marginal files");
  g->add_option("kind", gen.kind, "product, row-markov, column-markov, repetition-rows, ghz-row, "
                                  "stabilizer-repetition-rows, toric-code")->required();
  g->add_option("-o,--output", gen.output, "Output path")->required();
  g->add_option("--width", gen.width, "Window width");
  g->add_option("--height", gen.height, "Window height");
  g->add_option("--local-dim", gen.local_dim, "Local dimension");
  g->add_option("--orientation", gen.orientation, "rows or columns (row-markov)");
  g->add_option("--unitaries", gen.unitaries, "On-site unitaries: none, real, complex");
  g->add_option("--site-state", gen.site_state, "Product site state: mixed, zero, random");
  g->add_option("--ghz-at", gen.ghz_at, "Leftmost GHZ site as x,y");
  g->add_option("--depolarize", gen.depolarize, "Depolarizing strength applied to one marginal");
  g->add_option("--depolarize-at", gen.depolarize_at, "Anchor x,y of the marginal to depolarize");
  g->add_option("--state-out", gen.state_out, "Also write the global state as JSON");
  add_common(g, cfg);

  SnakeArgs sn;
  auto* s = app.add_subcommand("snake", "Build a snake and verify its Markov structure");
  s->add_option("file", sn.file, "Marginal file")->required();
  s->add_option("--spec", sn.spec_file, "Snake specification JSON");
  s->add_option("--level", sn.level, "Snake level (rows)");
  s->add_option("--v", sn.v, "Left end x,y");
  s->add_option("--u", sn.u, "Right end x,y");
  s->add_option("--variant", sn.variant, "plain, flat_up, flat_down, hooked_up, hooked_down");
  s->add_option("--order", sn.order, "forward or reversed");
  s->add_option("--state-out", sn.state_out, "Write the snake state as JSON");
  add_common(s, cfg);

  DeriveArgs der;
  auto* d = app.add_subcommand("derive", "Derive a conditional-independence statement from cluster axioms");
  d->add_option("--anchor", der.anchor, "Cluster anchor x,y");
  d->add_option("--target", der.target, "Target statement as JSON {\"a\":..,\"b\":..,\"c\":..}");
  d->add_option("--depth", der.depth, "Search depth");
  add_common(d, cfg);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  if (!rev.empty()) rev.pop_back();
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& ex) {
    const int code = app.exit(ex, out, err);
    return code == 0 ? kPass : kInputError;
  }

  try {
    if (cfg.tol_cmi <= 0 || cfg.tol_consistency <= 0) throw FormatError("tolerances must be positive");
    if (cfg.dense_guard < 64) throw FormatError("--dense-guard must be at least 64");
    Context ctx{cfg, parse_log_base(cfg.log_base), out, err};
    set_dense_guard(cfg.dense_guard);
    if (cfg.threads > 0) set_thread_count(cfg.threads);
    if (c->parsed()) return cmd_check(ctx, check);
    if (r->parsed()) return cmd_reconstruct(ctx, rec);
    if (e->parsed()) return cmd_entropy(ctx, ent);
    if (g->parsed()) return cmd_generate(ctx, gen);
    if (s->parsed()) return cmd_snake(ctx, sn);
    if (d->parsed()) return cmd_derive(ctx, der);
  } catch (const DimensionGuardError& ex) {
    err << "error: " << ex.what() << "\n";
    return kGuard;
  } catch (const ConsistencyError& ex) {
    err << "error: " << ex.what() << "\n";
    return kConditionFailure;
  } catch (const ConvergenceError& ex) {
    err << "error: " << ex.what() << "\n";
    return kConditionFailure;
  } catch (const io::json::exception& ex) {
    err << "error: " << ex.what() << "\n";
    return kInputError;
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

}  // namespace snakeweaver::cli
