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
#include <cmath>
#include <limits>
#include <complex>
#include <random>

#include "circuit.hpp"

namespace pprm {

using Amplitude = std::complex<double>;
using StateVector = std::vector<Amplitude>;

class SimulationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Square root of NOT: V = (1/2)[[1+i, 1-i], [1-i, 1+i]].
inline std::array<Amplitude, 4> v_matrix(bool dagger) {
  const Amplitude p{0.5, dagger ? -0.5 : 0.5};
  const Amplitude m{0.5, dagger ? 0.5 : -0.5};
  return {p, m, m, p};
}

/// Classical run of an MCT circuit; input has one bit per line.
inline Assignment simulate_mct(const MctCircuit& c,
                               std::span<const std::uint8_t> input) {
  if (input.size() != c.width())
    throw std::invalid_argument("input width mismatch");
  Assignment s(input.begin(), input.end());
  for (std::size_t l = 0; l < c.width(); ++l)
    if (c.line(static_cast<LineId>(l)).kind == LineKind::ancilla_zero ||
        c.line(static_cast<LineId>(l)).kind == LineKind::result)
      s[l] = 0;
  for (const auto& g : c.gates()) {
    bool fire = std::all_of(g.controls.begin(), g.controls.end(),
                            [&](const Control& k) { return k.fires(s[k.line]); });
    if (fire) s[g.target] ^= 1U;
  }
  return s;
}

/// Line state under NOT/V/V-dagger applied to basis inputs.
enum class QState : std::uint8_t { zero, one, v_zero, v_one };

inline bool is_classical(QState q) noexcept {
  return q == QState::zero || q == QState::one;
}

inline QState apply_kind(NcvKind k, QState q) noexcept {
  // V: zero -> v_zero -> one -> v_one -> zero.
  static constexpr QState v_next[] = {QState::v_zero, QState::v_one,
                                      QState::one, QState::zero};
  static constexpr QState v_prev[] = {QState::v_one, QState::v_zero,
                                      QState::zero, QState::one};
  static constexpr QState x_next[] = {QState::one, QState::zero,
                                      QState::v_one, QState::v_zero};
  auto i = static_cast<std::size_t>(q);
  switch (k) {
    case NcvKind::NOT:
    case NcvKind::CNOT:
      return x_next[i];
    case NcvKind::CV:
      return v_next[i];
    case NcvKind::CVdag:
      return v_prev[i];
  }
  return q;
}

struct SemiClassicalResult {
  std::vector<QState> lines;
  // Index of the first fired gate whose control was not classical.
  std::optional<std::size_t> nonclassical_control;

  bool classical() const {
    return !nonclassical_control &&
           std::all_of(lines.begin(), lines.end(), is_classical);
  }
  Assignment bits() const {
    if (!classical()) throw SimulationError("state is not classical");
    Assignment a;
    for (auto q : lines) a.push_back(q == QState::one ? 1 : 0);
    return a;
  }
};

inline SemiClassicalResult simulate_ncv_semiclassical(
    const NcvCircuit& c, std::span<const std::uint8_t> input) {
  if (input.size() != c.width())
    throw std::invalid_argument("input width mismatch");
  SemiClassicalResult r;
  for (std::size_t l = 0; l < c.width(); ++l) {
    auto kind = c.line(static_cast<LineId>(l)).kind;
    bool forced = kind == LineKind::ancilla_zero || kind == LineKind::result;
    r.lines.push_back(!forced && input[l] ? QState::one : QState::zero);
  }
  const auto& gates = c.gates();
  for (std::size_t i = 0; i < gates.size(); ++i) {
    const auto& g = gates[i];
    if (g.control) {
      QState cs = r.lines[g.control->line];
      if (!is_classical(cs)) {
        r.nonclassical_control = i;
        return r;
      }
      if (!g.control->fires(cs == QState::one)) continue;
    }
    r.lines[g.target] = apply_kind(g.kind, r.lines[g.target]);
  }
  return r;
}

namespace detail {

inline bool fires(const std::vector<Control>& cs, std::size_t basis) {
  return std::all_of(cs.begin(), cs.end(), [&](const Control& k) {
    return k.fires(((basis >> k.line) & 1U) != 0);
  });
}

inline void apply(const MctGate& g, StateVector& psi) {
  const std::size_t tb = std::size_t{1} << g.target;
  for (std::size_t i = 0; i < psi.size(); ++i)
    if (!(i & tb) && fires(g.controls, i)) std::swap(psi[i], psi[i | tb]);
}

inline void apply(const NcvGate& g, StateVector& psi) {
  const std::size_t tb = std::size_t{1} << g.target;
  const auto v = v_matrix(g.kind == NcvKind::CVdag);
  for (std::size_t i = 0; i < psi.size(); ++i) {
    if (i & tb) continue;
    if (g.control && !g.control->fires(((i >> g.control->line) & 1U) != 0))
      continue;
    if (g.kind == NcvKind::NOT || g.kind == NcvKind::CNOT) {
      std::swap(psi[i], psi[i | tb]);
    } else {
      Amplitude a0 = psi[i], a1 = psi[i | tb];
      psi[i] = v[0] * a0 + v[1] * a1;
      psi[i | tb] = v[2] * a0 + v[3] * a1;
    }
  }
}

}  // namespace detail

inline std::size_t basis_index(std::span<const std::uint8_t> bits) {
  std::size_t x = 0;
  for (std::size_t l = 0; l < bits.size(); ++l)
    if (bits[l]) x |= std::size_t{1} << l;
  return x;
}

/// Dense simulation; basis bit l holds line l. No line forcing is applied.
template <class Gate>
StateVector simulate_statevector(const Circuit<Gate>& c,
                                 std::span<const std::uint8_t> input,
                                 std::size_t cap = 14) {
  if (c.width() > cap)
    throw SimulationError("width " + std::to_string(c.width()) +
                          " exceeds state-vector cap " + std::to_string(cap));
  if (input.size() != c.width())
    throw std::invalid_argument("input width mismatch");
  StateVector psi(std::size_t{1} << c.width());
  psi[basis_index(input)] = 1.0;
  for (const auto& g : c.gates()) detail::apply(g, psi);
  return psi;
}

/// Column-major dense unitary: entry [col][row].
template <class Gate>
std::vector<StateVector> dense_unitary(const Circuit<Gate>& c,
                                       std::size_t cap = 10) {
  if (c.width() > cap)
    throw SimulationError("width " + std::to_string(c.width()) +
                          " exceeds unitary cap " + std::to_string(cap));
  const std::size_t dim = std::size_t{1} << c.width();
  std::vector<StateVector> cols;
  cols.reserve(dim);
  for (std::size_t x = 0; x < dim; ++x) {
    StateVector psi(dim);
    psi[x] = 1.0;
    for (const auto& g : c.gates()) detail::apply(g, psi);
    cols.push_back(std::move(psi));
  }
  return cols;
}

/// Largest |u2 - phase*u1| with phase taken from (U1^dagger U2)[0][0].
inline double unitary_distance(const std::vector<StateVector>& u1,
                               const std::vector<StateVector>& u2) {
  if (u1.size() != u2.size()) throw std::invalid_argument("dimension mismatch");
  Amplitude phase = 0.0;
  for (std::size_t r = 0; r < u1[0].size(); ++r)
    phase += std::conj(u1[0][r]) * u2[0][r];
  if (std::abs(phase) < 1e-6) return std::numeric_limits<double>::infinity();
  phase /= std::abs(phase);
  double worst = 0.0;
  for (std::size_t col = 0; col < u1.size(); ++col)
    for (std::size_t r = 0; r < u1[col].size(); ++r)
      worst = std::max(worst, std::abs(u2[col][r] - phase * u1[col][r]));
  return worst;
}

template <class G1, class G2>
bool check_unitary_equiv(const Circuit<G1>& c1, const Circuit<G2>& c2,
                         double tol) {
  if (c1.width() != c2.width())
    throw std::invalid_argument("circuit widths differ");
  return unitary_distance(dense_unitary(c1), dense_unitary(c2)) < tol;
}

enum class EquivalenceStatus : std::uint8_t {
  equivalent,
  counterexample,
  non_classical
};
enum class CheckMode : std::uint8_t { exhaustive, sampled };

inline std::string to_string(EquivalenceStatus s) {
  switch (s) {
    case EquivalenceStatus::equivalent:
      return "equivalent";
    case EquivalenceStatus::counterexample:
      return "counterexample";
    case EquivalenceStatus::non_classical:
      return "non_classical";
  }
  return "?";
}
inline std::string to_string(CheckMode m) {
  return m == CheckMode::exhaustive ? "exhaustive" : "sampled";
}

struct EquivalenceReport {
  EquivalenceStatus status = EquivalenceStatus::equivalent;
  Assignment input;
  std::uint8_t aux_value = 0;
  bool expected = false;
  bool got = false;
  std::optional<std::size_t> gate_index;
  std::uint64_t inputs_checked = 0;
  CheckMode mode = CheckMode::exhaustive;

  bool equivalent() const noexcept {
    return status == EquivalenceStatus::equivalent;
  }
};

struct CheckOptions {
  std::uint32_t exhaustive_cap = 16;
  std::uint64_t samples = 10000;
  std::uint64_t seed = 0;
  std::size_t statevector_cap = 14;
};

/// Full line vector for a function input; auxiliary lines take aux_value.
template <class Gate>
Assignment line_values(const Circuit<Gate>& c,
                       std::span<const std::uint8_t> inputs,
                       std::uint8_t aux_value = 0) {
  Assignment bits(c.width(), 0);
  std::size_t k = 0;
  for (std::size_t l = 0; l < c.width(); ++l) {
    switch (c.line(static_cast<LineId>(l)).kind) {
      case LineKind::input:
        if (k >= inputs.size())
          throw std::invalid_argument("too few input values for circuit");
        bits[l] = inputs[k++];
        break;
      case LineKind::auxiliary:
        bits[l] = aux_value;
        break;
      default:
        break;
    }
  }
  if (k != inputs.size())
    throw std::invalid_argument("too many input values for circuit");
  return bits;
}

/// Outcome of reading one line after a run.
struct Probe {
  enum class Kind : std::uint8_t { value, non_classical } kind = Kind::value;
  bool value = false;
  std::optional<std::size_t> gate_index;
};

inline Probe probe_line(const MctCircuit& c, std::span<const std::uint8_t> bits,
                        LineId line, std::size_t) {
  return {Probe::Kind::value, simulate_mct(c, bits)[line] != 0, std::nullopt};
}

inline Probe probe_line(const NcvCircuit& c, std::span<const std::uint8_t> bits,
                        LineId line, std::size_t sv_cap) {
  auto sc = simulate_ncv_semiclassical(c, bits);
  if (!sc.nonclassical_control && is_classical(sc.lines[line]))
    return {Probe::Kind::value, sc.lines[line] == QState::one, std::nullopt};
  if (c.width() > sv_cap)
    return {Probe::Kind::non_classical, false, sc.nonclassical_control};
  Assignment forced(bits.begin(), bits.end());
  for (std::size_t l = 0; l < c.width(); ++l) {
    auto kind = c.line(static_cast<LineId>(l)).kind;
    if (kind == LineKind::ancilla_zero || kind == LineKind::result) forced[l] = 0;
  }
  auto psi = simulate_statevector(c, forced, sv_cap);
  double p1 = 0.0;
  for (std::size_t i = 0; i < psi.size(); ++i)
    if ((i >> line) & 1U) p1 += std::norm(psi[i]);
  if (p1 < 1e-9) return {Probe::Kind::value, false, std::nullopt};
  if (p1 > 1.0 - 1e-9) return {Probe::Kind::value, true, std::nullopt};
  return {Probe::Kind::non_classical, false, sc.nonclassical_control};
}

namespace detail {

template <class Body>
void for_each_input(std::uint32_t n, const CheckOptions& opt,
                    EquivalenceReport& rep, Body&& body) {
  if (n <= opt.exhaustive_cap) {
    rep.mode = CheckMode::exhaustive;
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x)
      if (!body(assignment_from_index(x, n))) return;
  } else {
    rep.mode = CheckMode::sampled;
    std::mt19937_64 rng(opt.seed);
    for (std::uint64_t s = 0; s < opt.samples; ++s) {
      Assignment a(n);
      for (auto& b : a) b = static_cast<std::uint8_t>(rng() & 1U);
      if (!body(a)) return;
    }
  }
}

template <class Gate, class Expected>
EquivalenceReport check_result_line(const Circuit<Gate>& c, std::uint32_t n,
                                    const CheckOptions& opt,
                                    Expected&& expected) {
  EquivalenceReport rep;
  const LineId out = c.result_line();
  const bool has_aux = !c.lines_of(LineKind::auxiliary).empty();
  for_each_input(n, opt, rep, [&](const Assignment& a) {
    ++rep.inputs_checked;
    const bool want = expected(a);
    for (std::uint8_t aux = 0; aux <= (has_aux ? 1 : 0); ++aux) {
      auto bits = line_values(c, a, aux);
      Probe p = probe_line(c, bits, out, opt.statevector_cap);
      if (p.kind == Probe::Kind::non_classical) {
        rep.status = EquivalenceStatus::non_classical;
        rep.input = a;
        rep.aux_value = aux;
        rep.expected = want;
        rep.gate_index = p.gate_index;
        return false;
      }
      if (p.value != want) {
        rep.status = EquivalenceStatus::counterexample;
        rep.input = a;
        rep.aux_value = aux;
        rep.expected = want;
        rep.got = p.value;
        return false;
      }
    }
    return true;
  });
  return rep;
}

}  // namespace detail

/// Compares the result line against f on every (or sampled) input.
template <class Gate>
EquivalenceReport check_equivalence(const Circuit<Gate>& c,
                                    const BoolFunction& f,
                                    const CheckOptions& opt = {}) {
  if (c.lines_of(LineKind::input).size() != f.n)
    throw std::invalid_argument("circuit inputs do not match function width");
  return detail::check_result_line(
      c, f.n, opt, [&](const Assignment& a) { return evaluate(f, a); });
}

/// Compares result lines of two circuits with the same input lines.
template <class G1, class G2>
EquivalenceReport check_equivalence(const Circuit<G1>& c,
                                    const Circuit<G2>& reference,
                                    const CheckOptions& opt = {}) {
  const auto n = static_cast<std::uint32_t>(c.lines_of(LineKind::input).size());
  if (reference.lines_of(LineKind::input).size() != n)
    throw std::invalid_argument("circuits have different input counts");
  const LineId ref_out = reference.result_line();
  return detail::check_result_line(c, n, opt, [&](const Assignment& a) {
    auto bits = line_values(reference, a, 0);
    Probe p = probe_line(reference, bits, ref_out, opt.statevector_cap);
    if (p.kind != Probe::Kind::value)
      throw SimulationError("reference circuit is not classical");
    return p.value;
  });
}

}  // namespace pprm
