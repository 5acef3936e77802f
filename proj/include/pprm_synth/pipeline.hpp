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

#pragma once

#include <array>
#include <chrono>
#include <string_view>

#include "factorization.hpp"
#include "mct_synth.hpp"
#include "ncv_lower.hpp"
#include "pprm_text.hpp"
#include "real_io.hpp"
#include "reorder.hpp"

namespace pprm {

enum class PipelineStage : std::uint8_t {
  parse,
  normalize,
  factorize,
  reorder,
  rearrange,
  synth,
  ctr,
  elide,
  decompose,
  simplify,
  lower,
  cost,
  verify
};

inline constexpr std::array<std::string_view, 13> kStageNames = {
    "parse",     "normalize", "factorize", "reorder", "rearrange",
    "synth",     "ctr",       "elide",     "decompose", "simplify",
    "lower",     "cost",      "verify"};

inline std::string to_string(PipelineStage s) {
  return std::string(kStageNames[static_cast<std::size_t>(s)]);
}

inline PipelineStage parse_stage(std::string_view name) {
  for (std::size_t i = 0; i < kStageNames.size(); ++i)
    if (kStageNames[i] == name) return static_cast<PipelineStage>(i);
  throw std::invalid_argument("unknown stage '" + std::string(name) + "'");
}

struct PipelineConfig {
  bool factorize = true;
  bool reorder = true;
  bool rearrange = true;
  bool ctr = true;
  bool elide = true;
  bool simplify = true;
  // Literal len_f - 1 elision at the MCT level instead of suffix stripping.
  bool strict_elision = false;
  VariantPolicy variant_policy;
  CostModel cost_model = CostModel::annotated;
  std::optional<PipelineStage> stop_after;
  std::uint64_t seed = 0;
  std::uint32_t exhaustive_cap = 16;
  bool strict_pprm = false;
  bool verify = true;

  /// Applies the dependency rule: no factorization, no reordering.
  PipelineConfig effective() const {
    PipelineConfig c = *this;
    if (!c.factorize) c.reorder = c.rearrange = false;
    return c;
  }
};

class PipelineError : public std::runtime_error {
 public:
  PipelineError(PipelineStage stage, const std::string& what)
      : std::runtime_error(to_string(stage) + ": " + what), stage_(stage) {}
  PipelineStage stage() const noexcept { return stage_; }

 private:
  PipelineStage stage_;
};

struct PipelineResult {
  PipelineStage reached = PipelineStage::parse;
  // Normalized input function (absent for circuit inputs).
  std::optional<BoolFunction> function;
  // Algebraic form after each executed stage, in order.
  std::vector<std::pair<PipelineStage, BoolFunction>> forms;
  std::optional<MctCircuit> mct;
  std::optional<MctCircuit> reduced;
  std::optional<NcvCircuit> decomposed;
  std::optional<NcvCircuit> simplified;
  std::optional<NcvCircuit> ncv;
  std::optional<CostReport> cost;
  std::optional<EquivalenceReport> verification;
  double runtime_ms = 0.0;

  const BoolFunction* algebraic() const {
    return forms.empty() ? nullptr : &forms.back().second;
  }
};

using PipelineInput = std::variant<BoolFunction, MctCircuit>;

inline PipelineInput load_input(const std::string& path, bool strict_pprm) {
  std::string text = read_text_file(path);
  if (path.size() >= 5 && path.substr(path.size() - 5) == ".real") {
    try {
      return read_real(text);
    } catch (const std::exception& e) {
      throw PipelineError(PipelineStage::parse, e.what());
    }
  }
  try {
    return parse_pprm(text, {strict_pprm});
  } catch (const std::exception& e) {
    throw PipelineError(PipelineStage::parse, e.what());
  }
}

namespace detail {

template <class Fn>
auto run_stage(PipelineStage stage, Fn&& fn) {
  try {
    return fn();
  } catch (const PipelineError&) {
    throw;
  } catch (const std::exception& e) {
    throw PipelineError(stage, e.what());
  }
}

inline bool stop_here(const PipelineConfig& cfg, PipelineResult& r,
                      PipelineStage s) {
  r.reached = s;
  return cfg.stop_after && *cfg.stop_after == s;
}

// Lowering, cost and verification shared by both input kinds.
template <class Reference>
void run_backend(const PipelineConfig& cfg, PipelineResult& r,
                 const Reference& reference) {
  LowerOptions lo;
  lo.policy = cfg.variant_policy;
  lo.simplify = cfg.simplify;
  lo.elision = cfg.elide ? ElisionMode::trailing : ElisionMode::none;
  r.reduced = run_stage(PipelineStage::decompose, [&] {
    return reduce_controls(*r.mct, lo.dr2_order);
  });
  r.decomposed = run_stage(PipelineStage::decompose, [&] {
    return expand_toffolis(*r.reduced, lo.policy);
  });
  if (stop_here(cfg, r, PipelineStage::decompose)) return;
  r.simplified = run_stage(PipelineStage::simplify, [&] {
    return cfg.simplify ? simplify(*r.decomposed, lo.window) : *r.decomposed;
  });
  if (stop_here(cfg, r, PipelineStage::simplify)) return;
  r.ncv = run_stage(PipelineStage::lower, [&] {
    NcvCircuit c = *r.simplified;
    if (cfg.elide) return elide_trailing(std::move(c));
    mark_garbage(c);
    return c;
  });
  if (stop_here(cfg, r, PipelineStage::lower)) return;
  r.cost = run_stage(PipelineStage::cost, [&] {
    CostReport rep = quantum_cost(*r.ncv, cfg.cost_model);
    rep.per_stage["mct"] = r.mct->size();
    rep.per_stage["reduced"] = r.reduced->size();
    rep.per_stage["decomposed"] = r.decomposed->size();
    rep.per_stage["simplified"] = r.simplified->size();
    rep.per_stage["final"] = r.ncv->size();
    return rep;
  });
  if (stop_here(cfg, r, PipelineStage::cost) || !cfg.verify) return;
  r.verification = run_stage(PipelineStage::verify, [&] {
    CheckOptions opt;
    opt.exhaustive_cap = cfg.exhaustive_cap;
    opt.seed = cfg.seed;
    return check_equivalence(*r.ncv, reference, opt);
  });
  r.reached = PipelineStage::verify;
}

}  // namespace detail

/// parse -> normalize -> factorize -> reorder -> rearrange -> synth -> ctr
/// -> elide -> decompose -> simplify -> lower -> cost -> verify.
inline PipelineResult run_pipeline(const BoolFunction& input,
                                   const PipelineConfig& config = {}) {
  using detail::run_stage;
  using detail::stop_here;
  const PipelineConfig cfg = config.effective();
  const auto start = std::chrono::steady_clock::now();
  PipelineResult r;
  auto finish = [&]() -> PipelineResult {
    r.runtime_ms = std::chrono::duration<double, std::milli>(
                       std::chrono::steady_clock::now() - start)
                       .count();
    return std::move(r);
  };
  r.forms.emplace_back(PipelineStage::parse, input);
  if (stop_here(cfg, r, PipelineStage::parse)) return finish();

  const bool prefactored = has_factored_terms(input);
  BoolFunction current = prefactored ? input : run_stage(PipelineStage::normalize, [&] {
    return normalize(input);
  });
  r.function = prefactored ? expand(input) : current;
  r.forms.emplace_back(PipelineStage::normalize, current);
  if (stop_here(cfg, r, PipelineStage::normalize)) return finish();

  if (cfg.factorize && !prefactored) {
    current = run_stage(PipelineStage::factorize, [&] { return factorize(current); });
    r.forms.emplace_back(PipelineStage::factorize, current);
  }
  if (stop_here(cfg, r, PipelineStage::factorize)) return finish();
  if (cfg.reorder) {
    current = run_stage(PipelineStage::reorder, [&] { return reorder_method(current); });
    r.forms.emplace_back(PipelineStage::reorder, current);
  }
  if (stop_here(cfg, r, PipelineStage::reorder)) return finish();
  if (cfg.rearrange) {
    current = run_stage(PipelineStage::rearrange,
                        [&] { return rearrange_max_last(current); });
    r.forms.emplace_back(PipelineStage::rearrange, current);
  }
  if (stop_here(cfg, r, PipelineStage::rearrange)) return finish();

  MctCircuit c = run_stage(PipelineStage::synth, [&] {
    return synth_function(current, {false, ElisionMode::none});
  });
  r.mct = c;
  if (stop_here(cfg, r, PipelineStage::synth)) return finish();
  if (cfg.ctr) {
    c = run_stage(PipelineStage::ctr, [&] { return apply_ctr(c); });
    r.mct = c;
  }
  if (stop_here(cfg, r, PipelineStage::ctr)) return finish();
  c = run_stage(PipelineStage::elide, [&] {
    if (!cfg.elide) return c;
    if (!cfg.strict_elision) return elide_trailing(c);
    MctCircuit e = c;
    if (!current.terms.empty())
      if (const auto* gv = std::get_if<GvTerm>(&current.terms.back()))
        for (std::size_t k = 1; k < gv->len_f() && e.size() > 0; ++k) e.pop_back();
    mark_garbage(e);
    return e;
  });
  r.mct = c;
  if (stop_here(cfg, r, PipelineStage::elide)) return finish();

  detail::run_backend(cfg, r, *r.function);
  return finish();
}

/// Lowering pipeline for an MCT circuit read from a .real file; the input
/// circuit is the verification reference.
inline PipelineResult run_pipeline(const MctCircuit& input,
                                   const PipelineConfig& config = {}) {
  const PipelineConfig cfg = config.effective();
  const auto start = std::chrono::steady_clock::now();
  PipelineResult r;
  r.mct = input;
  r.reached = PipelineStage::elide;
  if (!cfg.stop_after || *cfg.stop_after > PipelineStage::elide)
    detail::run_backend(cfg, r, input);
  r.runtime_ms = std::chrono::duration<double, std::milli>(
                     std::chrono::steady_clock::now() - start)
                     .count();
  return r;
}

inline PipelineResult run_pipeline(const PipelineInput& input,
                                   const PipelineConfig& config = {}) {
  return std::visit([&](const auto& x) { return run_pipeline(x, config); },
                    input);
}

/// Parses .pprm text and runs the pipeline.
inline PipelineResult run_pipeline_text(std::string_view text,
                                        const PipelineConfig& config = {}) {
  BoolFunction f = detail::run_stage(PipelineStage::parse, [&] {
    return parse_pprm(text, {config.strict_pprm});
  });
  return run_pipeline(f, config);
}

}  // namespace pprm
