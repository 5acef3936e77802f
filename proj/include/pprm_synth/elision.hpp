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

#include "simulate.hpp"

namespace pprm {

enum class ElisionMode : std::uint8_t {
  none,
  // Drop suffix gates that do not target the result line.
  trailing,
  // Drop exactly the len_f - 1 un-compute gates of a final factored term.
  strict_len_f
};

namespace detail {

template <class Gate>
Assignment final_lines(const Circuit<Gate>& c, const Assignment& bits,
                       bool& classical) {
  if constexpr (std::is_same_v<Gate, MctGate>) {
    classical = true;
    return simulate_mct(c, bits);
  } else {
    auto r = simulate_ncv_semiclassical(c, bits);
    classical = !r.nonclassical_control;
    Assignment out(c.width(), 0);
    for (std::size_t l = 0; l < c.width(); ++l)
      out[l] = r.lines[l] == QState::one ? 1 : (is_classical(r.lines[l]) ? 0 : 2);
    return out;
  }
}

}  // namespace detail

/// Flags every non-result line whose final value can differ from its
/// initial value.
template <class Gate>
void mark_garbage(Circuit<Gate>& c, std::uint32_t exhaustive_cap = 16) {
  std::vector<LineId> free;
  for (std::size_t l = 0; l < c.width(); ++l) {
    c.set_garbage(static_cast<LineId>(l), false);
    auto k = c.line(static_cast<LineId>(l)).kind;
    if (k == LineKind::input || k == LineKind::auxiliary)
      free.push_back(static_cast<LineId>(l));
  }
  std::vector<bool> garbage(c.width(), false);
  auto visit = [&](std::uint64_t x) {
    Assignment bits(c.width(), 0);
    for (std::size_t i = 0; i < free.size(); ++i)
      bits[free[i]] = (x >> i) & 1U;
    bool classical = true;
    auto out = detail::final_lines(c, bits, classical);
    if (!classical) {
      for (const auto& g : c.gates()) garbage[g.target] = true;
      return;
    }
    for (std::size_t l = 0; l < c.width(); ++l)
      if (out[l] != bits[l]) garbage[l] = true;
  };
  if (free.size() <= exhaustive_cap) {
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << free.size()); ++x)
      visit(x);
  } else {
    std::mt19937_64 rng(0);
    for (int s = 0; s < 4096; ++s) visit(rng());
  }
  for (std::size_t l = 0; l < c.width(); ++l) {
    auto id = static_cast<LineId>(l);
    if (c.line(id).kind != LineKind::result && garbage[l])
      c.set_garbage(id, true);
  }
}

/// Strips trailing gates that only restore non-result lines.
template <class Gate>
Circuit<Gate> elide_trailing(Circuit<Gate> c) {
  auto out = c.result_line();
  while (c.size() > 0 && c.gates().back().target != out) c.pop_back();
  mark_garbage(c);
  return c;
}

}  // namespace pprm
