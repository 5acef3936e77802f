// Copyright 2026 The pprm-synth Authors
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

#include <CLI11.hpp>
#include <iostream>

#include "pprm_synth/pprm_synth.hpp"

namespace {

using namespace pprm;

struct Options {
  std::string input;
  std::string output;
  std::string stop_after;
  std::string format;
  std::string emit = "auto";
  std::string cost_model = "annotated";
  std::string variant_policy = "greedy";
  std::string cvdag_order = "cv-cnot";
  std::uint64_t seed = 0;
  std::uint32_t exhaustive_cap = 16;
  bool strict_pprm = false;
  bool no_factorize = false;
  bool no_reorder = false;
  bool no_rearrange = false;
  bool no_ctr = false;
  bool no_elide = false;
  bool no_simplify = false;
  bool strict_elision = false;
  bool timings = false;
};

PipelineConfig make_config(const Options& o) {
  PipelineConfig c;
  c.factorize = !o.no_factorize;
  c.reorder = !o.no_reorder;
  c.rearrange = !o.no_rearrange;
  c.ctr = !o.no_ctr;
  c.elide = !o.no_elide;
  c.simplify = !o.no_simplify;
  c.strict_elision = o.strict_elision;
  c.variant_policy = VariantPolicy::parse(o.variant_policy);
  c.cost_model = parse_cost_model(o.cost_model);
  if (!o.stop_after.empty()) c.stop_after = parse_stage(o.stop_after);
  c.seed = o.seed;
  c.exhaustive_cap = o.exhaustive_cap;
  c.strict_pprm = o.strict_pprm;
  return c;
}

QasmOptions qasm_options(const Options& o) {
  if (o.cvdag_order == "cv-cnot") return {CvDagLowering::cv_then_cnot};
  if (o.cvdag_order == "cnot-cv") return {CvDagLowering::cnot_then_cv};
  throw std::invalid_argument("unknown --cvdag-order '" + o.cvdag_order + "'");
}

void emit_text(const Options& o, const std::string& text) {
  if (o.output.empty())
    std::cout << text;
  else
    write_text_file(o.output, text);
}

std::string dump(const nlohmann::ordered_json& j) { return j.dump(2) + "\n"; }

std::string ncv_text(const NcvCircuit& c, const Options& o) {
  const std::string fmt = o.format.empty() ? "text" : o.format;
  if (fmt == "text") return gate_listing(c);
  if (fmt == "qasm") return export_qasm(c, qasm_options(o));
  if (fmt == "json") return dump(circuit_json(c));
  throw std::invalid_argument("format '" + fmt + "' does not apply to NCV circuits");
}

std::string mct_text(const MctCircuit& c, const Options& o) {
  const std::string fmt = o.format.empty() ? "real" : o.format;
  if (fmt == "real") return write_real(c);
  if (fmt == "text") return gate_listing(c);
  if (fmt == "json") return dump(circuit_json(c));
  throw std::invalid_argument("format '" + fmt + "' does not apply to MCT circuits");
}

nlohmann::ordered_json summary(const PipelineResult& r) {
  nlohmann::ordered_json j;
  j["reached"] = to_string(r.reached);
  if (r.function) j["function"] = expression_string(*r.function);
  if (const auto* f = r.algebraic()) j["algebraic_form"] = expression_string(*f);
  if (r.mct) j["mct_gates"] = r.mct->size();
  if (r.cost) j["cost"] = to_json(*r.cost);
  if (r.verification) j["verification"] = to_json(*r.verification);
  return j;
}

std::string emit_result(const PipelineResult& r, const Options& o) {
  std::string what = o.emit;
  if (what == "auto") {
    if (r.reached <= PipelineStage::rearrange)
      what = "pprm";
    else if (r.reached <= PipelineStage::elide)
      what = "mct";
    else if (r.reached <= PipelineStage::lower)
      what = "ncv";
    else
      what = "report";
  }
  if (what == "pprm") {
    const auto* f = r.algebraic();
    if (!f) throw std::invalid_argument("no algebraic form for this input");
    return to_pprm(*f);
  }
  if (what == "mct") {
    if (!r.mct) throw std::invalid_argument("no MCT circuit at this stage");
    return mct_text(*r.mct, o);
  }
  if (what == "ncv") {
    const NcvCircuit* c = r.ncv ? &*r.ncv
                          : r.simplified ? &*r.simplified
                          : r.decomposed ? &*r.decomposed
                                         : nullptr;
    if (!c) throw std::invalid_argument("no NCV circuit at this stage");
    return ncv_text(*c, o);
  }
  if (what == "report") return dump(summary(r));
  throw std::invalid_argument("unknown --emit '" + what + "'");
}

PipelineResult run(const Options& o, PipelineConfig cfg) {
  return run_pipeline(load_input(o.input, cfg.strict_pprm), cfg);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Synthesize PPRM expressions into NCV quantum circuits"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--seed", o.seed, "Seed for sampled verification");
  app.add_option("--stop-after", o.stop_after,
                 "Stop after a stage: parse, normalize, factorize, reorder, "
                 "rearrange, synth, ctr, elide, decompose, simplify, lower, "
                 "cost, verify");
  app.add_option("--format", o.format, "text, real, qasm, json or csv");
  app.add_option("--emit", o.emit, "auto, pprm, mct, ncv or report");
  app.add_option("--cost-model", o.cost_model, "annotated or strict-export");
  app.add_option("--variant-policy", o.variant_policy, "greedy or fixed:K");
  app.add_option("--cvdag-order", o.cvdag_order,
                 "CV-dagger export order: cv-cnot or cnot-cv");
  app.add_option("--exhaustive-cap", o.exhaustive_cap,
                 "Largest input count checked exhaustively");
  app.add_flag("--strict-pprm", o.strict_pprm, "Reject negative literals");
  app.add_flag("--no-factorize", o.no_factorize);
  app.add_flag("--no-reorder", o.no_reorder);
  app.add_flag("--no-rearrange", o.no_rearrange);
  app.add_flag("--no-ctr", o.no_ctr);
  app.add_flag("--no-elide", o.no_elide);
  app.add_flag("--no-simplify", o.no_simplify);
  app.add_flag("--strict-elision", o.strict_elision,
               "Drop exactly len_f - 1 gates of a final factored term");
  app.add_option("-o,--output", o.output, "Output file (default stdout)");

  auto* synth = app.add_subcommand("synth", "Run the pipeline on a .pprm or .real file");
  synth->add_option("input", o.input)->required()->check(CLI::ExistingFile);
  auto* lower = app.add_subcommand("lower", "Lower a .real MCT circuit to NCV");
  lower->add_option("input", o.input)->required()->check(CLI::ExistingFile);
  auto* verify = app.add_subcommand("verify", "Check the synthesized circuit");
  verify->add_option("input", o.input)->required()->check(CLI::ExistingFile);
  auto* cost = app.add_subcommand("cost", "Report the quantum cost");
  cost->add_option("input", o.input)->required()->check(CLI::ExistingFile);
  auto* bench = app.add_subcommand("bench", "Run every entry of a manifest");
  bench->add_option("manifest", o.input)->required()->check(CLI::ExistingFile);
  bench->add_flag("--timings", o.timings, "Include runtimes (not byte-stable)");
  auto* exp = app.add_subcommand("export", "Write the NCV circuit as OpenQASM 2.0");
  exp->add_option("input", o.input)->required()->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);

  try {
    PipelineConfig cfg = make_config(o);
    if (synth->parsed()) {
      emit_text(o, emit_result(run(o, cfg), o));
    } else if (lower->parsed()) {
      auto in = load_input(o.input, cfg.strict_pprm);
      if (!std::holds_alternative<MctCircuit>(in))
        throw std::invalid_argument("lower expects a .real circuit");
      auto r = run_pipeline(in, cfg);
      Options ncv = o;
      if (ncv.emit == "auto") ncv.emit = "ncv";
      emit_text(o, emit_result(r, ncv));
    } else if (verify->parsed()) {
      cfg.stop_after.reset();
      auto r = run(o, cfg);
      const auto& v = *r.verification;
      const std::string fmt = o.format.empty() ? "json" : o.format;
      if (fmt == "json") {
        emit_text(o, dump(to_json(v)));
      } else if (fmt == "text") {
        std::string line = to_string(v.status) + " (" + to_string(v.mode) + ", " +
                           std::to_string(v.inputs_checked) + " inputs)";
        if (!v.equivalent()) {
          std::string bits;
          for (auto b : v.input) bits += b ? '1' : '0';
          line += " at input " + bits + ", aux " + std::to_string(v.aux_value);
        }
        emit_text(o, line + "\n");
      } else {
        throw std::invalid_argument("verify supports json or text");
      }
      return r.verification->equivalent() ? 0 : 1;
    } else if (cost->parsed()) {
      cfg.stop_after = PipelineStage::cost;
      auto r = run(o, cfg);
      const std::string fmt = o.format.empty() ? "json" : o.format;
      if (fmt == "json")
        emit_text(o, dump(to_json(*r.cost)));
      else if (fmt == "csv")
        emit_text(o, cost_csv(*r.cost));
      else
        throw std::invalid_argument("cost supports json or csv");
    } else if (bench->parsed()) {
      auto manifest = parse_manifest(read_text_file(o.input));
      auto base = std::filesystem::path(o.input).parent_path();
      auto table = run_bench(manifest, base, cfg);
      const std::string fmt = o.format.empty() ? "csv" : o.format;
      if (fmt == "csv")
        emit_text(o, bench_csv(table, o.timings));
      else if (fmt == "json")
        emit_text(o, dump(bench_json(table, o.timings)));
      else
        throw std::invalid_argument("bench supports csv or json");
      for (const auto& row : table.rows)
        if (!row.verified) return 1;
    } else if (exp->parsed()) {
      cfg.stop_after = PipelineStage::cost;
      auto r = run(o, cfg);
      emit_text(o, export_qasm(*r.ncv, qasm_options(o)));
    }
  } catch (const PipelineError& e) {
    std::cerr << "error in stage " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
