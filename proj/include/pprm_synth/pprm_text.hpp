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

#include <cctype>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>

#include "core.hpp"

namespace pprm {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) +
                           ": " + what),
        line_(line),
        column_(column) {}
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

struct ParseOptions {
  // Reject negative literals.
  bool strict_pprm = false;
};

inline std::string to_string(const Literal& l) {
  return (l.positive() ? "x" : "~x") + std::to_string(l.var);
}

inline std::string to_string(const ProductTerm& t) {
  if (t.is_constant()) return "1";
  std::string s;
  for (const auto& l : t.literals()) s += to_string(l);
  return s;
}

inline std::string to_string(const XorExpr& e) {
  std::string s;
  for (std::size_t i = 0; i < e.terms.size(); ++i) {
    if (i) s += "+";
    s += to_string(e.terms[i]);
  }
  return s;
}

inline std::string group_to_string(const XorExpr& g) {
  if (classify_form(g) != FormTag::F4) return to_string(g);
  Literal outer = f4_outer_literal(g);
  std::string s = to_string(outer) + "(";
  for (std::size_t i = 0; i < g.terms.size(); ++i) {
    if (i) s += "+";
    s += to_string(g.terms[i].without(outer.var));
  }
  return s + ")";
}

inline std::string to_string(const GvTerm& t) {
  return "(" + group_to_string(t.group()) + ")(" + to_string(t.factor_vars()) +
         ")";
}

inline std::string to_string(const Term& t) {
  return std::visit([](const auto& x) { return to_string(x); }, t);
}

inline std::uint32_t referenced_vars(const BoolFunction& f) {
  std::uint32_t m = 0;
  for (const auto& t : f.terms) m = std::max(m, max_var(t));
  return m;
}

/// Expression text only, "0" for the zero function.
inline std::string expression_string(const BoolFunction& f) {
  if (f.terms.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < f.terms.size(); ++i) {
    if (i) s += " + ";
    s += to_string(f.terms[i]);
  }
  return s;
}

/// Full .pprm text; emits a `.n` header when n exceeds the referenced range.
inline std::string to_pprm(const BoolFunction& f) {
  std::string s;
  if (f.n != referenced_vars(f)) s += ".n " + std::to_string(f.n) + "\n";
  return s + expression_string(f) + "\n";
}

namespace detail {

struct Located {
  char c;
  std::size_t line;
  std::size_t column;
};

class PprmParser {
 public:
  PprmParser(std::vector<Located> chars, std::size_t eof_line,
             ParseOptions opts)
      : s_(std::move(chars)), eof_line_(eof_line), opts_(opts) {}

  std::vector<Term> parse_expression() {
    std::vector<Term> terms;
    if (s_.empty()) return terms;
    if (s_.size() == 1 && s_[0].c == '0') return terms;
    terms.push_back(parse_term());
    while (!at_end()) {
      expect('+');
      terms.push_back(parse_term());
    }
    return terms;
  }

 private:
  bool at_end() const { return i_ >= s_.size(); }
  char peek() const { return at_end() ? '\0' : s_[i_].c; }

  [[noreturn]] void fail(const std::string& what) const {
    if (at_end()) {
      std::size_t col = s_.empty() ? 1 : s_.back().column + 1;
      std::size_t line = s_.empty() ? eof_line_ : s_.back().line;
      throw ParseError(line, col, what + " at end of input");
    }
    throw ParseError(s_[i_].line, s_[i_].column, what);
  }

  void expect(char c) {
    if (peek() != c) {
      if (at_end()) fail(std::string("expected '") + c + "'");
      fail(std::string("expected '") + c + "', found '" + peek() + "'");
    }
    ++i_;
  }

  Literal parse_literal() {
    Polarity p = Polarity::positive;
    if (peek() == '~') {
      ++i_;
      p = Polarity::negative;
    }
    if (peek() != 'x') fail("expected variable 'xK'");
    ++i_;
    if (!std::isdigit(static_cast<unsigned char>(peek())))
      fail("expected variable index after 'x'");
    std::size_t start = i_;
    std::uint64_t v = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      v = v * 10 + static_cast<std::uint64_t>(peek() - '0');
      if (v > 1000000) fail("variable index too large");
      ++i_;
    }
    if (v == 0) {
      i_ = start;
      fail("variable index 0 is not allowed");
    }
    if (p == Polarity::negative && opts_.strict_pprm) {
      i_ = start;
      fail("negative literal rejected in strict PPRM mode");
    }
    return {static_cast<std::uint32_t>(v), p};
  }

  bool literal_ahead() const { return peek() == 'x' || peek() == '~'; }

  ProductTerm make_product(std::vector<Literal> lits, std::size_t at) {
    try {
      return ProductTerm(std::move(lits));
    } catch (const std::invalid_argument& e) {
      i_ = at;
      fail(e.what());
    }
  }

  ProductTerm parse_product() {
    std::size_t start = i_;
    if (peek() == '1') {
      ++i_;
      if (literal_ahead()) fail("constant 1 cannot be multiplied");
      return ProductTerm();
    }
    std::vector<Literal> lits;
    if (!literal_ahead()) fail("expected a product term");
    while (literal_ahead()) lits.push_back(parse_literal());
    return make_product(std::move(lits), start);
  }

  // product | product '(' literal ('+' literal)* ')'
  std::vector<ProductTerm> parse_group_entry() {
    std::size_t start = i_;
    std::vector<Literal> prefix;
    if (!literal_ahead()) fail("expected a literal in factor group");
    while (literal_ahead()) prefix.push_back(parse_literal());
    if (peek() != '(') return {make_product(std::move(prefix), start)};
    ++i_;
    std::vector<ProductTerm> out;
    while (true) {
      std::size_t at = i_;
      Literal inner = parse_literal();
      auto lits = prefix;
      lits.push_back(inner);
      out.push_back(make_product(std::move(lits), at));
      if (peek() == ')') break;
      expect('+');
    }
    expect(')');
    return out;
  }

  Term parse_term() {
    if (peek() != '(') return parse_product();
    std::size_t start = i_;
    ++i_;
    XorExpr group;
    while (true) {
      for (auto& p : parse_group_entry()) group.terms.push_back(std::move(p));
      if (peek() == ')') break;
      expect('+');
    }
    expect(')');
    expect('(');
    XorExpr vars;
    while (true) {
      if (peek() == '1') {
        ++i_;
        vars.terms.emplace_back();
      } else {
        std::size_t at = i_;
        Literal l = parse_literal();
        vars.terms.push_back(make_product({l}, at));
      }
      if (peek() == ')') break;
      expect('+');
    }
    expect(')');
    try {
      return GvTerm(std::move(group), std::move(vars));
    } catch (const std::invalid_argument& e) {
      i_ = start;
      fail(e.what());
    }
  }

  std::vector<Located> s_;
  std::size_t eof_line_;
  ParseOptions opts_;
  std::size_t i_ = 0;
};

}  // namespace detail

inline BoolFunction parse_pprm(std::string_view text, ParseOptions opts = {}) {
  std::vector<detail::Located> chars;
  std::optional<std::uint32_t> declared_n;
  std::size_t declared_line = 0;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    std::size_t first = line.find_first_not_of(" \t\r");
    if (first != std::string_view::npos && line[first] == '.') {
      std::istringstream in{std::string(line.substr(first))};
      std::string directive;
      long long k = -1;
      in >> directive;
      if (directive != ".n")
        throw ParseError(line_no, first + 1,
                         "unknown directive '" + directive + "'");
      if (!(in >> k) || k < 0)
        throw ParseError(line_no, first + 1, "'.n' expects a variable count");
      std::string rest;
      if (in >> rest)
        throw ParseError(line_no, first + 1, "trailing text after '.n K'");
      declared_n = static_cast<std::uint32_t>(k);
      declared_line = line_no;
    } else {
      for (std::size_t c = 0; c < line.size(); ++c) {
        if (std::isspace(static_cast<unsigned char>(line[c]))) continue;
        chars.push_back({line[c], line_no, c + 1});
      }
    }
    if (end == text.size()) break;
    pos = end + 1;
  }
  detail::PprmParser parser(std::move(chars), line_no, opts);
  BoolFunction f;
  f.terms = parser.parse_expression();
  std::uint32_t used = referenced_vars(f);
  if (declared_n) {
    if (*declared_n < used)
      throw ParseError(declared_line, 1,
                       "'.n " + std::to_string(*declared_n) +
                           "' is smaller than referenced variable x" +
                           std::to_string(used));
    f.n = *declared_n;
  } else {
    f.n = used;
  }
  return f;
}

}  // namespace pprm
