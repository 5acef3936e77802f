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

#include <fstream>
#include <map>
#include <sstream>
#include <string_view>

#include "circuit.hpp"

namespace pprm {

class RealFormatError : public std::runtime_error {
 public:
  RealFormatError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

namespace detail {

inline constexpr std::string_view kKindsTag = "# line-kinds:";

inline std::string_view kind_word(LineKind k) {
  switch (k) {
    case LineKind::input:
      return "input";
    case LineKind::ancilla_zero:
      return "ancilla";
    case LineKind::auxiliary:
      return "auxiliary";
    case LineKind::result:
      return "result";
  }
  return "input";
}

inline std::optional<LineKind> kind_from_word(std::string_view w) {
  if (w == "input") return LineKind::input;
  if (w == "ancilla") return LineKind::ancilla_zero;
  if (w == "auxiliary") return LineKind::auxiliary;
  if (w == "result") return LineKind::result;
  return std::nullopt;
}

inline std::vector<std::string> split_words(std::string_view s) {
  std::istringstream in{std::string(s)};
  std::vector<std::string> out;
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

}  // namespace detail

/// RevLib .real text; line kinds are kept in a comment for lossless reads.
inline std::string write_real(const MctCircuit& c) {
  std::ostringstream out;
  const auto& ls = c.lines();
  auto names = [&] {
    std::string s;
    for (const auto& l : ls) s += " " + l.name;
    return s;
  };
  out << ".version 1.0\n";
  out << ".numvars " << ls.size() << "\n";
  out << ".variables" << names() << "\n";
  out << ".inputs" << names() << "\n";
  out << ".outputs" << names() << "\n";
  out << ".constants ";
  for (const auto& l : ls)
    out << (l.kind == LineKind::ancilla_zero || l.kind == LineKind::result ? '0'
                                                                           : '-');
  out << "\n.garbage ";
  for (const auto& l : ls) out << (l.garbage ? '1' : '-');
  out << "\n" << detail::kKindsTag;
  for (const auto& l : ls) out << " " << detail::kind_word(l.kind);
  out << "\n.begin\n";
  for (const auto& g : c.gates()) {
    out << "t" << g.controls.size() + 1;
    for (const auto& k : g.controls)
      out << " " << (k.positive() ? "" : "-") << ls[k.line].name;
    out << " " << ls[g.target].name << "\n";
  }
  out << ".end\n";
  return out.str();
}

inline MctCircuit read_real(std::string_view text) {
  std::vector<std::string> vars;
  std::optional<std::size_t> numvars;
  std::string constants, garbage;
  std::vector<LineKind> kinds;
  std::vector<std::pair<std::size_t, std::vector<std::string>>> gate_lines;
  bool begun = false, ended = false;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' ||
                             line.back() == '\t'))
      line.remove_suffix(1);
    auto first = line.find_first_not_of(" \t");
    if (first == std::string_view::npos) continue;
    line.remove_prefix(first);
    if (line.rfind(detail::kKindsTag, 0) == 0) {
      for (const auto& w : detail::split_words(line.substr(detail::kKindsTag.size()))) {
        auto k = detail::kind_from_word(w);
        if (!k) throw RealFormatError(line_no, "unknown line kind '" + w + "'");
        kinds.push_back(*k);
      }
      continue;
    }
    if (line[0] == '#') continue;
    if (ended) throw RealFormatError(line_no, "content after .end");
    auto words = detail::split_words(line);
    const std::string& head = words[0];
    if (head[0] == '.') {
      if (begun && head != ".end")
        throw RealFormatError(line_no, "directive inside .begin/.end");
      if (head == ".version" || head == ".inputs" || head == ".outputs" ||
          head == ".model" || head == ".inputbus" || head == ".outputbus") {
        continue;
      } else if (head == ".numvars") {
        if (words.size() != 2)
          throw RealFormatError(line_no, ".numvars expects one number");
        try {
          numvars = std::stoul(words[1]);
        } catch (const std::exception&) {
          throw RealFormatError(line_no, "bad .numvars value");
        }
      } else if (head == ".variables") {
        vars.assign(words.begin() + 1, words.end());
      } else if (head == ".constants") {
        constants = words.size() > 1 ? words[1] : "";
      } else if (head == ".garbage") {
        garbage = words.size() > 1 ? words[1] : "";
      } else if (head == ".begin") {
        begun = true;
      } else if (head == ".end") {
        if (!begun) throw RealFormatError(line_no, ".end without .begin");
        ended = true;
      } else {
        throw RealFormatError(line_no, "unsupported directive " + head);
      }
      continue;
    }
    if (!begun) throw RealFormatError(line_no, "gate before .begin");
    gate_lines.emplace_back(line_no, std::move(words));
  }
  if (!begun || !ended) throw RealFormatError(line_no, "missing .begin/.end");
  if (!numvars) throw RealFormatError(line_no, "missing .numvars");
  if (vars.size() != *numvars)
    throw RealFormatError(line_no, ".variables count does not match .numvars");
  if (constants.empty()) constants.assign(vars.size(), '-');
  if (garbage.empty()) garbage.assign(vars.size(), '-');
  if (constants.size() != vars.size() || garbage.size() != vars.size())
    throw RealFormatError(line_no, ".constants/.garbage length mismatch");
  if (!kinds.empty() && kinds.size() != vars.size())
    throw RealFormatError(line_no, "line-kinds count mismatch");

  std::map<std::string, LineId> index;
  for (std::size_t i = 0; i < vars.size(); ++i)
    if (!index.emplace(vars[i], static_cast<LineId>(i)).second)
      throw RealFormatError(line_no, "duplicate variable " + vars[i]);
  if (kinds.empty()) {
    for (std::size_t i = 0; i < vars.size(); ++i) {
      if (constants[i] == '1')
        throw RealFormatError(line_no, "constant-1 lines are not supported");
      kinds.push_back(constants[i] == '0' ? LineKind::ancilla_zero
                                          : LineKind::input);
    }
    std::optional<std::size_t> out;
    for (std::size_t i = vars.size(); i-- > 0 && !out;)
      if (kinds[i] == LineKind::ancilla_zero && garbage[i] != '1') out = i;
    for (std::size_t i = vars.size(); i-- > 0 && !out;)
      if (garbage[i] != '1') out = i;
    if (out) kinds[*out] = LineKind::result;
  }
  MctCircuit c;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    try {
      c.add_line({kinds[i], vars[i], garbage[i] == '1'});
    } catch (const std::invalid_argument& e) {
      throw RealFormatError(line_no, e.what());
    }
  }
  for (const auto& [at, words] : gate_lines) {
    const std::string& g = words[0];
    if (g.size() < 2 || g[0] != 't')
      throw RealFormatError(at, "unsupported gate '" + g + "'");
    std::size_t arity = 0;
    try {
      arity = std::stoul(g.substr(1));
    } catch (const std::exception&) {
      throw RealFormatError(at, "bad gate arity in '" + g + "'");
    }
    if (arity == 0 || words.size() - 1 != arity)
      throw RealFormatError(at, "gate " + g + " lists " +
                                    std::to_string(words.size() - 1) + " lines");
    std::vector<Control> cs;
    LineId target = 0;
    for (std::size_t i = 1; i < words.size(); ++i) {
      std::string name = words[i];
      bool negative = name[0] == '-';
      if (negative) name = name.substr(1);
      auto it = index.find(name);
      if (it == index.end()) throw RealFormatError(at, "unknown line " + name);
      if (i + 1 == words.size()) {
        if (negative) throw RealFormatError(at, "negative target");
        target = it->second;
      } else {
        cs.push_back({it->second, negative ? Polarity::negative : Polarity::positive});
      }
    }
    try {
      c.append(MctGate(std::move(cs), target));
    } catch (const std::exception& e) {
      throw RealFormatError(at, e.what());
    }
  }
  return c;
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_text_file(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path);
}

}  // namespace pprm
