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
#include <map>

#include "elision.hpp"

namespace pprm {

class LoweringError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// One of the four five-gate realizations per polarity class.
struct ToffoliVariant {
  int index = 1;
  Polarity polarity = Polarity::positive;

  friend bool operator==(const ToffoliVariant&, const ToffoliVariant&) = default;
};

inline std::array<ToffoliVariant, 8> all_toffoli_variants() {
  std::array<ToffoliVariant, 8> out;
  for (int i = 0; i < 4; ++i) {
    out[i] = {i + 1, Polarity::positive};
    out[i + 4] = {i + 1, Polarity::negative};
  }
  return out;
}

/// Controls c1 < c2 by line. Gates on c2 after CNOT(c1;c2) see c1 xor c2.
/// Mixed-polarity gates use the same shapes with per-control polarity.
inline std::vector<NcvGate> decompose_toffoli(const MctGate& g,
                                              ToffoliVariant v) {
  if (g.num_controls() != 2)
    throw LoweringError("Toffoli decomposition needs exactly two controls");
  if (v.index < 1 || v.index > 4)
    throw LoweringError("Toffoli variant index must be 1..4");
  const Control a = g.controls[0];
  const Control b = g.controls[1];
  if (a.polarity == b.polarity && a.polarity != v.polarity)
    throw LoweringError("variant polarity does not match the gate");
  const LineId t = g.target;
  const NcvGate x = NcvGate::cnot(a, b.line);
  switch (v.index) {
    case 1:
      return {NcvGate::cv(b, t), x, NcvGate::cvdag(b, t), x, NcvGate::cv(a, t)};
    case 2:
      return {NcvGate::cvdag(b, t), x, NcvGate::cv(b, t), x,
              NcvGate::cvdag(a, t)};
    case 3:
      return {NcvGate::cvdag(a, t), x, NcvGate::cv(b, t), x,
              NcvGate::cvdag(b, t)};
    default:
      return {NcvGate::cv(a, t), x, NcvGate::cvdag(b, t), x, NcvGate::cv(b, t)};
  }
}

inline std::size_t half_width(std::size_t w) { return (w + 1) / 2; }

namespace detail {

inline std::vector<LineId> free_lines(const MctGate& g, std::size_t width) {
  std::vector<LineId> out;
  for (std::size_t l = 0; l < width; ++l) {
    auto id = static_cast<LineId>(l);
    if (id != g.target && !g.has_control(id)) out.push_back(id);
  }
  return out;
}

}  // namespace detail

/// Ladder with |C|-2 borrowed work lines (lowest free lines first), target
/// gate first; emits 4(|C|-2) two-control gates.
inline std::vector<MctGate> apply_dr1(const MctGate& g, std::size_t width) {
  const std::size_t k = g.num_controls();
  if (width < 5 || k < 3 || k > half_width(width))
    throw LoweringError("DR1 needs w >= 5 and 3 <= |C| <= ceil(w/2)");
  auto free = detail::free_lines(g, width);
  if (free.size() < k - 2) throw LoweringError("DR1: not enough free lines");
  const auto& c = g.controls;
  std::vector<MctGate> top;
  for (std::size_t i = k - 1; i >= 2; --i) {
    LineId target = i == k - 1 ? g.target : free[i - 1];
    top.emplace_back(std::vector<Control>{c[i], pc(free[i - 2])}, target);
  }
  const MctGate base({c[0], c[1]}, free[0]);
  std::vector<MctGate> seq = top;
  auto down = [&] {
    for (std::size_t i = top.size(); i-- > 1;) seq.push_back(top[i]);
  };
  seq.push_back(base);
  down();
  seq.insert(seq.end(), top.begin(), top.end());
  seq.push_back(base);
  down();
  return seq;
}

enum class Dr2Order : std::uint8_t {
  // B A B A: relay computed first.
  relay_first,
  // A B A B: target gate first, relay restored last.
  target_first
};

/// Splits into B = T(first controls; relay) and A = T(rest + relay; t).
inline std::vector<MctGate> apply_dr2(const MctGate& g, std::size_t width,
                                      Dr2Order order = Dr2Order::relay_first) {
  const std::size_t k = g.num_controls();
  if (width < 5 || k < 3) throw LoweringError("DR2 needs w >= 5 and |C| >= 3");
  auto free = detail::free_lines(g, width);
  if (free.empty())
    throw LoweringError("DR2: no free line for the relay (use DR3)");
  const LineId relay = free[0];
  const std::size_t nb = std::min(half_width(width), k - 1);
  std::vector<Control> bc(g.controls.begin(), g.controls.begin() + nb);
  std::vector<Control> ac(g.controls.begin() + nb, g.controls.end());
  ac.push_back(pc(relay));
  MctGate b(std::move(bc), relay);
  MctGate a(std::move(ac), g.target);
  if (order == Dr2Order::relay_first) return {b, a, b, a};
  return {a, b, a, b};
}

struct Dr3Result {
  MctCircuit circuit;
  LineId aux = 0;
  std::vector<MctGate> gates;
};

/// Adds one auxiliary line and applies DR2 on the widened circuit.
inline Dr3Result apply_dr3(const MctGate& g, const MctCircuit& c,
                           Dr2Order order = Dr2Order::relay_first) {
  if (g.num_controls() <= 2 || g.num_controls() != c.width() - 1)
    throw LoweringError("DR3 needs |C| > 2 and |C| = w - 1");
  Dr3Result r{c, 0, {}};
  auto n_aux = c.lines_of(LineKind::auxiliary).size();
  r.aux = r.circuit.add_line(
      {LineKind::auxiliary, "L" + std::to_string(n_aux + 1), false});
  r.gates = apply_dr2(g, r.circuit.width(), order);
  return r;
}

/// Recursive DR1/DR2 routing of one gate down to at most two controls.
inline std::vector<MctGate> lower_gate(const MctGate& g, std::size_t width,
                                       Dr2Order order) {
  const std::size_t k = g.num_controls();
  if (k <= 2) return {g};
  if (k == width - 1)
    throw LoweringError("gate needs an auxiliary line (DR3)");
  std::vector<MctGate> parts;
  if (width >= 5 && k <= half_width(width))
    parts = apply_dr1(g, width);
  else if (width >= 5)
    parts = apply_dr2(g, width, order);
  else
    throw LoweringError("no decomposition rule applies");
  std::vector<MctGate> out;
  for (const auto& p : parts) {
    auto sub = lower_gate(p, width, order);
    out.insert(out.end(), sub.begin(), sub.end());
  }
  return out;
}

/// MCT circuit whose gates all have at most two controls.
inline MctCircuit reduce_controls(const MctCircuit& c,
                                  Dr2Order order = Dr2Order::target_first) {
  MctCircuit out = c.with_lines<MctGate>();
  for (const auto& g : c.gates()) {
    const std::size_t k = g.num_controls();
    std::vector<MctGate> parts;
    if (k > 2 && k == out.width() - 1) {
      auto r = apply_dr3(g, out, order);
      out = std::move(r.circuit);
      for (const auto& p : r.gates) {
        auto sub = lower_gate(p, out.width(), order);
        parts.insert(parts.end(), sub.begin(), sub.end());
      }
    } else {
      parts = lower_gate(g, out.width(), order);
    }
    out.append(parts.begin(), parts.end());
  }
  return out;
}

namespace detail {

inline bool is_x(NcvKind k) { return k == NcvKind::NOT || k == NcvKind::CNOT; }

// Product of two gates with the same control and target, if expressible.
// Returns nullopt when no rule applies; an engaged empty optional inside
// means the pair cancels.
inline std::optional<std::optional<NcvKind>> merge_kinds(NcvKind first,
                                                          NcvKind second) {
  using K = NcvKind;
  const bool x1 = is_x(first), x2 = is_x(second);
  const K xk = first == K::NOT || second == K::NOT ? K::NOT : K::CNOT;
  if (x1 && x2) return std::optional<K>{};
  if (first == K::CV && second == K::CV) return std::optional<K>{xk};
  if (first == K::CVdag && second == K::CVdag) return std::optional<K>{xk};
  if ((first == K::CV && second == K::CVdag) ||
      (first == K::CVdag && second == K::CV))
    return std::optional<K>{};
  if ((first == K::CV && x2) || (x1 && second == K::CV))
    return std::optional<K>{K::CVdag};
  if ((first == K::CVdag && x2) || (x1 && second == K::CVdag))
    return std::optional<K>{K::CV};
  return std::nullopt;
}

inline bool commute(const NcvGate& a, const NcvGate& b) {
  return !b.has_control(a.target) && !a.has_control(b.target);
}

}  // namespace detail

/// Merge/cancel rules with commutation lookahead, to a fixpoint.
inline std::vector<NcvGate> simplify_gates(std::vector<NcvGate> gs,
                                           std::size_t window = 32) {
  const std::size_t cap = 10 * gs.size() + 1;
  bool changed = true;
  for (std::size_t pass = 0; changed && pass < cap; ++pass) {
    changed = false;
    for (std::size_t i = 0; i < gs.size();) {
      bool fired = false;
      for (std::size_t j = i + 1; j < gs.size() && j - i <= window; ++j) {
        const NcvGate& a = gs[i];
        const NcvGate& b = gs[j];
        if (a.control == b.control && a.target == b.target) {
          if (auto m = detail::merge_kinds(a.kind, b.kind)) {
            gs.erase(gs.begin() + static_cast<std::ptrdiff_t>(j));
            if (*m)
              gs[i] = NcvGate(**m, gs[i].control, gs[i].target);
            else
              gs.erase(gs.begin() + static_cast<std::ptrdiff_t>(i));
            fired = changed = true;
            break;
          }
        }
        if (!detail::commute(a, b)) break;
      }
      if (!fired) ++i;
    }
  }
  return gs;
}

inline NcvCircuit simplify(const NcvCircuit& c, std::size_t window = 32) {
  NcvCircuit out = c.with_lines<NcvGate>();
  auto gs = simplify_gates(c.gates(), window);
  out.append(gs.begin(), gs.end());
  return out;
}

struct VariantPolicy {
  enum class Kind : std::uint8_t { greedy, fixed } kind = Kind::greedy;
  int fixed_index = 1;
  // Trailing raw gates scored against each candidate.
  std::size_t window = 32;

  static VariantPolicy parse(const std::string& s) {
    if (s == "greedy") return {};
    if (s.rfind("fixed:", 0) == 0) {
      int k = 0;
      try {
        k = std::stoi(s.substr(6));
      } catch (const std::exception&) {
        k = 0;
      }
      if (k < 1 || k > 4)
        throw std::invalid_argument("variant index must be 1..4 in '" + s + "'");
      return {Kind::fixed, k, 32};
    }
    throw std::invalid_argument("unknown variant policy '" + s + "'");
  }
  std::string name() const {
    return kind == Kind::greedy ? "greedy"
                                : "fixed:" + std::to_string(fixed_index);
  }
};

inline ToffoliVariant variant_for(const MctGate& g, int index) {
  const auto& cs = g.controls;
  bool negative = cs.size() == 2 && !cs[0].positive() && !cs[1].positive();
  return {index, negative ? Polarity::negative : Polarity::positive};
}

/// NCV gate list before simplification.
inline NcvCircuit expand_toffolis(const MctCircuit& reduced,
                                  const VariantPolicy& policy = {}) {
  NcvCircuit out = reduced.with_lines<NcvGate>();
  std::vector<NcvGate> emitted;
  for (const auto& g : reduced.gates()) {
    switch (g.num_controls()) {
      case 0:
        emitted.push_back(NcvGate::not_gate(g.target));
        break;
      case 1:
        emitted.push_back(NcvGate::cnot(g.controls[0], g.target));
        break;
      case 2: {
        int pick = policy.fixed_index;
        if (policy.kind == VariantPolicy::Kind::greedy) {
          const std::size_t from =
              emitted.size() > policy.window ? emitted.size() - policy.window : 0;
          std::size_t best = std::numeric_limits<std::size_t>::max();
          for (int v = 1; v <= 4; ++v) {
            std::vector<NcvGate> trial(emitted.begin() + static_cast<std::ptrdiff_t>(from),
                                       emitted.end());
            auto seq = decompose_toffoli(g, variant_for(g, v));
            trial.insert(trial.end(), seq.begin(), seq.end());
            auto score = simplify_gates(std::move(trial), policy.window).size();
            if (score < best) {
              best = score;
              pick = v;
            }
          }
        }
        auto seq = decompose_toffoli(g, variant_for(g, pick));
        emitted.insert(emitted.end(), seq.begin(), seq.end());
        break;
      }
      default:
        throw LoweringError("gate with more than two controls left after "
                            "control reduction");
    }
  }
  out.append(emitted.begin(), emitted.end());
  return out;
}

struct LowerOptions {
  VariantPolicy policy;
  bool simplify = true;
  ElisionMode elision = ElisionMode::trailing;
  Dr2Order dr2_order = Dr2Order::target_first;
  std::size_t window = 32;
};

/// Intermediate circuits of one lowering run.
struct Lowering {
  MctCircuit reduced;
  NcvCircuit decomposed;
  NcvCircuit simplified;
  NcvCircuit lowered;
};

inline Lowering lower_circuit_staged(const MctCircuit& c,
                                     const LowerOptions& opt = {}) {
  Lowering r;
  r.reduced = reduce_controls(c, opt.dr2_order);
  r.decomposed = expand_toffolis(r.reduced, opt.policy);
  r.simplified = opt.simplify ? simplify(r.decomposed, opt.window) : r.decomposed;
  r.lowered = r.simplified;
  if (opt.elision == ElisionMode::none)
    mark_garbage(r.lowered);
  else
    r.lowered = elide_trailing(std::move(r.lowered));
  return r;
}

inline NcvCircuit lower_circuit(const MctCircuit& c,
                                const LowerOptions& opt = {}) {
  return lower_circuit_staged(c, opt).lowered;
}

enum class CostModel : std::uint8_t { annotated, strict_export };

inline std::string to_string(CostModel m) {
  return m == CostModel::annotated ? "annotated" : "strict-export";
}
inline CostModel parse_cost_model(const std::string& s) {
  if (s == "annotated") return CostModel::annotated;
  if (s == "strict-export") return CostModel::strict_export;
  throw std::invalid_argument("unknown cost model '" + s + "'");
}

enum class CvDagLowering : std::uint8_t { cv_then_cnot, cnot_then_cv };

/// Gate list with negative controls NOT-wrapped and CV-dagger replaced by
/// CV plus CNOT.
inline std::vector<NcvGate> strict_export_gates(
    const NcvCircuit& c, CvDagLowering order = CvDagLowering::cv_then_cnot) {
  std::vector<NcvGate> out;
  for (const auto& g : c.gates()) {
    std::optional<Control> ctl = g.control;
    const bool wrap = ctl && !ctl->positive();
    if (wrap) {
      out.push_back(NcvGate::not_gate(ctl->line));
      ctl = pc(ctl->line);
    }
    if (g.kind == NcvKind::CVdag) {
      if (order == CvDagLowering::cv_then_cnot) {
        out.push_back(NcvGate::cv(*ctl, g.target));
        out.push_back(NcvGate::cnot(*ctl, g.target));
      } else {
        out.push_back(NcvGate::cnot(*ctl, g.target));
        out.push_back(NcvGate::cv(*ctl, g.target));
      }
    } else {
      out.emplace_back(g.kind, ctl, g.target);
    }
    if (wrap) out.push_back(NcvGate::not_gate(ctl->line));
  }
  return out;
}

struct CostReport {
  CostModel model = CostModel::annotated;
  std::map<std::string, std::size_t> counts;
  std::size_t qc_total = 0;
  std::map<std::string, std::size_t> per_stage;
};

inline CostReport quantum_cost(const NcvCircuit& c,
                               CostModel model = CostModel::annotated) {
  CostReport r;
  r.model = model;
  for (auto k : {NcvKind::NOT, NcvKind::CNOT, NcvKind::CV, NcvKind::CVdag})
    r.counts[to_string(k)] = 0;
  const auto gates =
      model == CostModel::annotated ? c.gates() : strict_export_gates(c);
  for (const auto& g : gates) ++r.counts[to_string(g.kind)];
  r.qc_total = gates.size();
  return r;
}

/// Cost of the default lowering of an MCT circuit.
inline CostReport quantum_cost(const MctCircuit& c,
                               CostModel model = CostModel::annotated) {
  return quantum_cost(lower_circuit(c), model);
}

}  // namespace pprm
