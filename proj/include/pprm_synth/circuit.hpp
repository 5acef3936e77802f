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

#include <optional>
#include <string>
#include <utility>

#include "core.hpp"

namespace pprm {

using LineId = std::uint32_t;

enum class LineKind : std::uint8_t { input, ancilla_zero, auxiliary, result };

inline std::string to_string(LineKind k) {
  switch (k) {
    case LineKind::input:
      return "input";
    case LineKind::ancilla_zero:
      return "ancilla_zero";
    case LineKind::auxiliary:
      return "auxiliary";
    case LineKind::result:
      return "result";
  }
  return "?";
}

struct LineMeta {
  LineKind kind = LineKind::input;
  std::string name;
  bool garbage = false;

  friend bool operator==(const LineMeta&, const LineMeta&) = default;
};

struct Control {
  LineId line = 0;
  Polarity polarity = Polarity::positive;

  bool positive() const noexcept { return polarity == Polarity::positive; }
  bool fires(bool value) const noexcept { return value == positive(); }
  friend auto operator<=>(const Control&, const Control&) = default;
};

inline Control pc(LineId l) { return {l, Polarity::positive}; }
inline Control nc(LineId l) { return {l, Polarity::negative}; }

/// Multiple-control Toffoli gate. Control order is kept as given; it fixes
/// which control plays c1 and c2 in the Toffoli realizations.
struct MctGate {
  std::vector<Control> controls;
  LineId target = 0;

  MctGate() = default;
  MctGate(std::vector<Control> cs, LineId t) : controls(std::move(cs)), target(t) {
    std::vector<LineId> ls;
    for (const auto& c : controls) {
      if (c.line == target)
        throw std::invalid_argument("gate target is also a control");
      ls.push_back(c.line);
    }
    std::sort(ls.begin(), ls.end());
    if (std::adjacent_find(ls.begin(), ls.end()) != ls.end())
      throw std::invalid_argument("repeated control line");
  }

  std::size_t num_controls() const noexcept { return controls.size(); }
  bool all_positive() const noexcept {
    return std::all_of(controls.begin(), controls.end(),
                       [](const Control& c) { return c.positive(); });
  }
  bool has_control(LineId l) const noexcept {
    return std::any_of(controls.begin(), controls.end(),
                       [l](const Control& c) { return c.line == l; });
  }
  std::vector<LineId> support() const {
    std::vector<LineId> s;
    for (const auto& c : controls) s.push_back(c.line);
    s.push_back(target);
    std::sort(s.begin(), s.end());
    return s;
  }
  LineId max_line() const noexcept {
    LineId m = target;
    for (const auto& c : controls) m = std::max(m, c.line);
    return m;
  }

  friend bool operator==(const MctGate&, const MctGate&) = default;
};

enum class NcvKind : std::uint8_t { NOT, CNOT, CV, CVdag };

inline std::string to_string(NcvKind k) {
  switch (k) {
    case NcvKind::NOT:
      return "NOT";
    case NcvKind::CNOT:
      return "CNOT";
    case NcvKind::CV:
      return "CV";
    case NcvKind::CVdag:
      return "CVdag";
  }
  return "?";
}

/// NOT, CNOT, controlled-V or controlled-V-dagger.
struct NcvGate {
  NcvKind kind = NcvKind::NOT;
  std::optional<Control> control;
  LineId target = 0;

  NcvGate() = default;
  NcvGate(NcvKind k, std::optional<Control> c, LineId t)
      : kind(k), control(c), target(t) {
    if (k == NcvKind::NOT && c)
      throw std::invalid_argument("NOT takes no control");
    if (k != NcvKind::NOT && !c)
      throw std::invalid_argument(to_string(k) + " needs one control");
    if (c && c->line == t)
      throw std::invalid_argument("gate target is also its control");
  }

  static NcvGate not_gate(LineId t) { return {NcvKind::NOT, std::nullopt, t}; }
  static NcvGate cnot(Control c, LineId t) { return {NcvKind::CNOT, c, t}; }
  static NcvGate cv(Control c, LineId t) { return {NcvKind::CV, c, t}; }
  static NcvGate cvdag(Control c, LineId t) { return {NcvKind::CVdag, c, t}; }

  bool has_control(LineId l) const noexcept {
    return control && control->line == l;
  }
  LineId max_line() const noexcept {
    return control ? std::max(target, control->line) : target;
  }

  friend bool operator==(const NcvGate&, const NcvGate&) = default;
};

enum class Stage : std::uint8_t { MCT, NCV };

template <class Gate>
constexpr Stage stage_of() {
  return std::is_same_v<Gate, MctGate> ? Stage::MCT : Stage::NCV;
}

/// Fixed-width line list plus a gate sequence of one library.
template <class Gate>
class Circuit {
 public:
  static constexpr Stage stage = stage_of<Gate>();

  std::size_t width() const noexcept { return lines_.size(); }
  const std::vector<LineMeta>& lines() const noexcept { return lines_; }
  const LineMeta& line(LineId l) const { return lines_.at(l); }
  const std::vector<Gate>& gates() const noexcept { return gates_; }
  std::size_t size() const noexcept { return gates_.size(); }

  LineId add_line(LineMeta meta) {
    if (meta.kind == LineKind::result &&
        std::any_of(lines_.begin(), lines_.end(), [](const LineMeta& m) {
          return m.kind == LineKind::result;
        }))
      throw std::invalid_argument("circuit already has a result line");
    lines_.push_back(std::move(meta));
    return static_cast<LineId>(lines_.size() - 1);
  }

  void set_garbage(LineId l, bool g) { lines_.at(l).garbage = g; }

  void append(Gate g) {
    if (g.max_line() >= width())
      throw std::out_of_range("gate references line " +
                              std::to_string(g.max_line()) +
                              " beyond width " + std::to_string(width()));
    gates_.push_back(std::move(g));
  }
  template <class It>
  void append(It first, It last) {
    for (; first != last; ++first) append(*first);
  }
  void clear_gates() { gates_.clear(); }
  void pop_back() { gates_.pop_back(); }

  std::optional<LineId> find_result() const {
    for (std::size_t i = 0; i < lines_.size(); ++i)
      if (lines_[i].kind == LineKind::result) return static_cast<LineId>(i);
    return std::nullopt;
  }
  LineId result_line() const {
    auto r = find_result();
    if (!r) throw std::logic_error("circuit has no result line");
    return *r;
  }
  std::vector<LineId> lines_of(LineKind k) const {
    std::vector<LineId> out;
    for (std::size_t i = 0; i < lines_.size(); ++i)
      if (lines_[i].kind == k) out.push_back(static_cast<LineId>(i));
    return out;
  }

  /// Same lines, no gates.
  template <class Other>
  Circuit<Other> with_lines() const {
    Circuit<Other> c;
    for (const auto& m : lines_) c.add_line(m);
    return c;
  }

  friend bool operator==(const Circuit&, const Circuit&) = default;

 private:
  std::vector<LineMeta> lines_;
  std::vector<Gate> gates_;
};

using MctCircuit = Circuit<MctGate>;
using NcvCircuit = Circuit<NcvGate>;

/// n input lines x1..xn followed by the result line f.
inline MctCircuit make_function_circuit(std::uint32_t n) {
  MctCircuit c;
  for (std::uint32_t k = 1; k <= n; ++k)
    c.add_line({LineKind::input, "x" + std::to_string(k), false});
  c.add_line({LineKind::result, "f", false});
  return c;
}

inline std::string describe(const MctGate& g, const std::vector<LineMeta>& ls) {
  std::string s = "T" + std::to_string(g.controls.size() + 1) + "(";
  for (std::size_t i = 0; i < g.controls.size(); ++i) {
    if (i) s += ",";
    s += (g.controls[i].positive() ? "" : "~") + ls.at(g.controls[i].line).name;
  }
  return s + ";" + ls.at(g.target).name + ")";
}

inline std::string describe(const NcvGate& g, const std::vector<LineMeta>& ls) {
  std::string s = to_string(g.kind) + "(";
  if (g.control)
    s += (g.control->positive() ? "" : "~") + ls.at(g.control->line).name + ";";
  return s + ls.at(g.target).name + ")";
}

}  // namespace pprm
