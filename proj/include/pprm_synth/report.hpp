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

#include <json.hpp>
#include <sstream>

#include "ncv_lower.hpp"
#include "simulate.hpp"

namespace pprm {

inline nlohmann::ordered_json to_json(const CostReport& r) {
  nlohmann::ordered_json j;
  j["cost_model"] = to_string(r.model);
  j["qc_total"] = r.qc_total;
  j["counts"] = r.counts;
  j["per_stage"] = r.per_stage;
  return j;
}

inline std::string cost_csv(const CostReport& r) {
  std::ostringstream out;
  out << "metric,value\n";
  out << "cost_model," << to_string(r.model) << "\n";
  out << "qc_total," << r.qc_total << "\n";
  for (const auto& [k, v] : r.counts) out << "count_" << k << "," << v << "\n";
  for (const auto& [k, v] : r.per_stage) out << "stage_" << k << "," << v << "\n";
  return out.str();
}

inline nlohmann::ordered_json to_json(const EquivalenceReport& r) {
  nlohmann::ordered_json j;
  j["status"] = to_string(r.status);
  j["mode"] = to_string(r.mode);
  j["inputs_checked"] = r.inputs_checked;
  if (r.status != EquivalenceStatus::equivalent) {
    std::string bits;
    for (auto b : r.input) bits += b ? '1' : '0';
    j["input"] = bits;
    j["aux_value"] = r.aux_value;
    j["expected"] = r.expected;
    if (r.status == EquivalenceStatus::counterexample) j["got"] = r.got;
    if (r.gate_index) j["gate_index"] = *r.gate_index;
  }
  return j;
}

template <class Gate>
nlohmann::ordered_json circuit_json(const Circuit<Gate>& c) {
  nlohmann::ordered_json j;
  j["stage"] = Circuit<Gate>::stage == Stage::MCT ? "MCT" : "NCV";
  j["width"] = c.width();
  auto& lines = j["lines"] = nlohmann::ordered_json::array();
  for (const auto& m : c.lines())
    lines.push_back({{"name", m.name}, {"kind", to_string(m.kind)},
                     {"garbage", m.garbage}});
  auto& gates = j["gates"] = nlohmann::ordered_json::array();
  for (const auto& g : c.gates()) gates.push_back(describe(g, c.lines()));
  return j;
}

/// One gate per line, e.g. "CV(x1;f)".
template <class Gate>
std::string gate_listing(const Circuit<Gate>& c) {
  std::ostringstream out;
  out << "# lines:";
  for (const auto& m : c.lines())
    out << " " << m.name << (m.garbage ? "*" : "");
  out << "\n";
  for (const auto& g : c.gates()) out << describe(g, c.lines()) << "\n";
  return out.str();
}

}  // namespace pprm
