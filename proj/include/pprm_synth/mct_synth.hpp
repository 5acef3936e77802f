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

#include "elision.hpp"

namespace pprm {

struct SynthOptions {
  bool ctr = true;
  ElisionMode elision = ElisionMode::trailing;
};

namespace detail {

inline std::vector<LineId> function_inputs(const MctCircuit& c) {
  return c.lines_of(LineKind::input);
}

inline LineId var_line(const std::vector<LineId>& inputs, std::uint32_t var) {
  if (var == 0 || var > inputs.size())
    throw std::out_of_range("term references x" + std::to_string(var) +
                            " but the circuit has " +
                            std::to_string(inputs.size()) + " inputs");
  return inputs[var - 1];
}

inline std::vector<Control> controls_of(const std::vector<LineId>& inputs,
                                        const ProductTerm& t) {
  std::vector<Control> cs;
  for (const auto& l : t.literals())
    cs.push_back({var_line(inputs, l.var), l.polarity});
  std::sort(cs.begin(), cs.end());
  return cs;
}

}  // namespace detail

/// One gate per product term on the result line; the constant 1 is a NOT.
inline MctCircuit synth_direct(std::span<const ProductTerm> terms,
                               MctCircuit c) {
  const LineId out = c.result_line();
  const auto inputs = detail::function_inputs(c);
  for (const auto& t : terms)
    c.append(MctGate(detail::controls_of(inputs, t), out));
  return c;
}

/// XOR chain on the factor variables, group gates, then the mirrored chain.
inline MctCircuit synth_gv(const GvTerm& t, MctCircuit c) {
  if (t.len_f() < 2) throw std::invalid_argument("len_f below 2");
  const LineId out = c.result_line();
  const auto inputs = detail::function_inputs(c);
  std::vector<LineId> vs;
  for (auto v : t.variables()) vs.push_back(detail::var_line(inputs, v));
  const LineId acc = vs.back();

  std::vector<MctGate> compute;
  for (std::size_t i = 0; i + 1 < vs.size(); ++i)
    compute.emplace_back(std::vector<Control>{pc(vs[i])}, vs[i + 1]);
  if (t.has_constant()) compute.emplace_back(std::vector<Control>{}, acc);

  for (const auto& g : compute) c.append(g);
  if (t.form() == FormTag::F5) {
    std::vector<LineId> gs;
    for (const auto& p : t.group().terms)
      gs.push_back(detail::var_line(inputs, p.literals()[0].var));
    for (std::size_t i = 0; i + 1 < gs.size(); ++i)
      c.append(MctGate({pc(gs[i])}, gs[i + 1]));
    std::vector<Control> cs{pc(gs.back()), pc(acc)};
    std::sort(cs.begin(), cs.end());
    c.append(MctGate(std::move(cs), out));
    for (std::size_t i = gs.size() - 1; i > 0; --i)
      c.append(MctGate({pc(gs[i - 1])}, gs[i]));
  } else {
    for (const auto& p : t.group().terms) {
      auto cs = detail::controls_of(inputs, p);
      cs.push_back(pc(acc));
      std::sort(cs.begin(), cs.end());
      c.append(MctGate(std::move(cs), out));
    }
  }
  for (auto it = compute.rbegin(); it != compute.rend(); ++it) c.append(*it);
  return c;
}

namespace detail {

inline bool disjoint_support(const MctGate& a, const MctGate& b) {
  auto sa = a.support();
  auto sb = b.support();
  std::vector<LineId> common;
  std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(),
                        std::back_inserter(common));
  return common.empty();
}

// C1 and C2 all positive, same target, C1 a subset of C2 with one extra line.
inline std::optional<MctGate> ctr_merge(const MctGate& a, const MctGate& b) {
  if (a.target != b.target || !a.all_positive() || !b.all_positive())
    return std::nullopt;
  const MctGate& small = a.num_controls() < b.num_controls() ? a : b;
  const MctGate& big = a.num_controls() < b.num_controls() ? b : a;
  if (big.num_controls() != small.num_controls() + 1) return std::nullopt;
  for (const auto& k : small.controls)
    if (!big.has_control(k.line)) return std::nullopt;
  std::vector<Control> cs;
  for (const auto& k : big.controls)
    cs.push_back(small.has_control(k.line) ? k : nc(k.line));
  return MctGate(std::move(cs), big.target);
}

}  // namespace detail

/// Common-target rule: T(C+a;t) T(C;t) -> T(C+~a;t), one left-to-right pass.
inline MctCircuit apply_ctr(const MctCircuit& c) {
  std::vector<MctGate> gs = c.gates();
  for (std::size_t i = 0; i < gs.size(); ++i) {
    for (std::size_t j = i + 1; j < gs.size(); ++j) {
      if (auto merged = detail::ctr_merge(gs[i], gs[j])) {
        gs[j] = *merged;
        gs.erase(gs.begin() + static_cast<std::ptrdiff_t>(i));
        --i;
        break;
      }
      if (!detail::disjoint_support(gs[i], gs[j])) break;
    }
  }
  MctCircuit out = c.with_lines<MctGate>();
  out.append(gs.begin(), gs.end());
  return out;
}

inline MctCircuit synth_function(const BoolFunction& f,
                                 const SynthOptions& opt = {}) {
  MctCircuit c = make_function_circuit(f.n);
  for (const auto& t : f.terms) {
    if (const auto* gv = std::get_if<GvTerm>(&t))
      c = synth_gv(*gv, std::move(c));
    else
      c = synth_direct(std::span(&std::get<ProductTerm>(t), 1), std::move(c));
  }
  if (opt.ctr) c = apply_ctr(c);
  switch (opt.elision) {
    case ElisionMode::none:
      mark_garbage(c);
      break;
    case ElisionMode::trailing:
      c = elide_trailing(std::move(c));
      break;
    case ElisionMode::strict_len_f:
      if (!f.terms.empty())
        if (const auto* gv = std::get_if<GvTerm>(&f.terms.back()))
          for (std::size_t k = 1; k < gv->len_f() && c.size() > 0; ++k)
            c.pop_back();
      mark_garbage(c);
      break;
  }
  return c;
}

}  // namespace pprm
