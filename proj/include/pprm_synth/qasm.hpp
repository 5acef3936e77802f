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

#include <regex>
#include <sstream>

#include "ncv_lower.hpp"

namespace pprm {

struct QasmOptions {
  CvDagLowering cvdag = CvDagLowering::cv_then_cnot;
};

/// OpenQASM 2.0 text. CV is the controlled square root of X built from
/// H and a controlled S phase.
inline std::string export_qasm(const NcvCircuit& c, const QasmOptions& opt = {}) {
  const auto gates = strict_export_gates(c, opt.cvdag);
  std::ostringstream out;
  out << "OPENQASM 2.0;\n";
  out << "include \"qelib1.inc\";\n";
  out << "// qc_annotated " << c.size() << "\n";
  out << "// qc_strict_export " << gates.size() << "\n";
  out << "// lines";
  for (std::size_t l = 0; l < c.width(); ++l) {
    const auto& m = c.line(static_cast<LineId>(l));
    out << " q[" << l << "]=" << m.name << (m.garbage ? "(garbage)" : "");
  }
  out << "\ngate cv a,b { h b; cu1(pi/2) a,b; h b; }\n";
  out << "qreg q[" << c.width() << "];\n";
  for (const auto& g : gates) {
    switch (g.kind) {
      case NcvKind::NOT:
        out << "x q[" << g.target << "];\n";
        break;
      case NcvKind::CNOT:
        out << "cx q[" << g.control->line << "],q[" << g.target << "];\n";
        break;
      case NcvKind::CV:
        out << "cv q[" << g.control->line << "],q[" << g.target << "];\n";
        break;
      case NcvKind::CVdag:
        throw std::logic_error("CVdag left after export lowering");
    }
  }
  return out.str();
}

/// Reads back the x/cx/cv subset written by export_qasm.
inline NcvCircuit import_qasm(std::string_view text) {
  static const std::regex qreg(R"(^qreg\s+q\[(\d+)\];$)");
  static const std::regex one(R"(^x\s+q\[(\d+)\];$)");
  static const std::regex two(R"(^(cx|cv)\s+q\[(\d+)\]\s*,\s*q\[(\d+)\];$)");
  NcvCircuit c;
  bool have_reg = false;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' '))
      line.pop_back();
    auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    line = line.substr(first);
    if (line.rfind("//", 0) == 0 || line.rfind("OPENQASM", 0) == 0 ||
        line.rfind("include", 0) == 0 || line.rfind("gate ", 0) == 0)
      continue;
    std::smatch m;
    auto fail = [&](const std::string& what) {
      throw std::runtime_error("qasm line " + std::to_string(line_no) + ": " +
                               what);
    };
    if (std::regex_match(line, m, qreg)) {
      if (have_reg) fail("second qreg");
      have_reg = true;
      auto w = std::stoul(m[1]);
      for (std::size_t l = 0; l < w; ++l)
        c.add_line({LineKind::input, "q" + std::to_string(l), false});
    } else if (std::regex_match(line, m, one)) {
      if (!have_reg) fail("gate before qreg");
      c.append(NcvGate::not_gate(static_cast<LineId>(std::stoul(m[1]))));
    } else if (std::regex_match(line, m, two)) {
      if (!have_reg) fail("gate before qreg");
      auto ctl = pc(static_cast<LineId>(std::stoul(m[2])));
      auto t = static_cast<LineId>(std::stoul(m[3]));
      c.append(m[1] == "cx" ? NcvGate::cnot(ctl, t) : NcvGate::cv(ctl, t));
    } else {
      fail("unsupported statement '" + line + "'");
    }
  }
  return c;
}

}  // namespace pprm
