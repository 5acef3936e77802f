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

#include <algorithm>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace pprm {

enum class Polarity : std::uint8_t { negative = 0, positive = 1 };

/// Input assignment; entry k-1 holds the value of x_k.
using Assignment = std::vector<std::uint8_t>;

struct Literal {
  std::uint32_t var = 1;
  Polarity polarity = Polarity::positive;

  bool positive() const noexcept { return polarity == Polarity::positive; }
  bool holds(std::span<const std::uint8_t> a) const {
    return (a[var - 1] != 0) == positive();
  }
  friend auto operator<=>(const Literal&, const Literal&) = default;
};

inline Literal pos(std::uint32_t var) { return {var, Polarity::positive}; }
inline Literal neg(std::uint32_t var) { return {var, Polarity::negative}; }

/// Conjunction of literals; the empty conjunction is the constant 1.
class ProductTerm {
 public:
  ProductTerm() = default;
  explicit ProductTerm(std::vector<Literal> literals)
      : literals_(std::move(literals)) {
    std::sort(literals_.begin(), literals_.end());
    for (std::size_t i = 0; i < literals_.size(); ++i) {
      if (literals_[i].var == 0)
        throw std::invalid_argument("variable index must be at least 1");
      if (i > 0 && literals_[i].var == literals_[i - 1].var)
        throw std::invalid_argument(
            "variable x" + std::to_string(literals_[i].var) +
            " repeated in a product term");
    }
  }
  ProductTerm(std::initializer_list<Literal> literals)
      : ProductTerm(std::vector<Literal>(literals)) {}

  static ProductTerm of_vars(std::initializer_list<std::uint32_t> vars) {
    std::vector<Literal> lits;
    for (auto v : vars) lits.push_back(pos(v));
    return ProductTerm(std::move(lits));
  }

  const std::vector<Literal>& literals() const noexcept { return literals_; }
  std::size_t degree() const noexcept { return literals_.size(); }
  bool is_constant() const noexcept { return literals_.empty(); }
  bool all_positive() const noexcept {
    return std::all_of(literals_.begin(), literals_.end(),
                       [](const Literal& l) { return l.positive(); });
  }
  bool contains(std::uint32_t var) const noexcept {
    return std::any_of(literals_.begin(), literals_.end(),
                       [var](const Literal& l) { return l.var == var; });
  }
  std::uint32_t max_var() const noexcept {
    return literals_.empty() ? 0 : literals_.back().var;
  }
  std::vector<std::uint32_t> vars() const {
    std::vector<std::uint32_t> out;
    for (const auto& l : literals_) out.push_back(l.var);
    return out;
  }

  bool evaluate(std::span<const std::uint8_t> a) const {
    return std::all_of(literals_.begin(), literals_.end(),
                       [&](const Literal& l) { return l.holds(a); });
  }

  ProductTerm without(std::uint32_t var) const {
    std::vector<Literal> lits;
    for (const auto& l : literals_)
      if (l.var != var) lits.push_back(l);
    return ProductTerm(std::move(lits));
  }

  /// Conjunction of two terms over disjoint variables.
  ProductTerm times(const ProductTerm& other) const {
    std::vector<Literal> lits = literals_;
    lits.insert(lits.end(), other.literals_.begin(), other.literals_.end());
    return ProductTerm(std::move(lits));
  }

  friend bool operator==(const ProductTerm&, const ProductTerm&) = default;
  friend auto operator<=>(const ProductTerm& a, const ProductTerm& b) {
    return a.literals_ <=> b.literals_;
  }

 private:
  std::vector<Literal> literals_;
};

struct XorExpr {
  std::vector<ProductTerm> terms;

  bool evaluate(std::span<const std::uint8_t> a) const {
    bool v = false;
    for (const auto& t : terms) v ^= t.evaluate(a);
    return v;
  }
  std::size_t size() const noexcept { return terms.size(); }
  friend bool operator==(const XorExpr&, const XorExpr&) = default;
};

enum class FormTag : std::uint8_t { F1 = 1, F2, F3, F4, F5 };

inline std::string to_string(FormTag f) {
  return "F" + std::to_string(static_cast<int>(f));
}

/// Syntactic class of a factor group.
inline FormTag classify_form(const XorExpr& g) {
  if (g.terms.empty())
    throw std::invalid_argument("cannot classify an empty factor group");
  for (const auto& t : g.terms)
    if (t.is_constant())
      throw std::invalid_argument("factor group contains a constant term");
  if (g.terms.size() == 1)
    return g.terms[0].degree() == 1 ? FormTag::F3 : FormTag::F2;
  bool all_single = std::all_of(g.terms.begin(), g.terms.end(),
                                [](const auto& t) { return t.degree() == 1; });
  if (all_single) return FormTag::F5;
  bool all_pairs = std::all_of(g.terms.begin(), g.terms.end(),
                               [](const auto& t) { return t.degree() == 2; });
  if (all_pairs) {
    for (const Literal& outer : g.terms[0].literals()) {
      std::vector<Literal> inner;
      bool shared = true;
      for (const auto& t : g.terms) {
        const auto& ls = t.literals();
        if (ls[0] == outer)
          inner.push_back(ls[1]);
        else if (ls[1] == outer)
          inner.push_back(ls[0]);
        else
          shared = false;
      }
      if (!shared) continue;
      std::sort(inner.begin(), inner.end());
      auto dup = std::adjacent_find(
          inner.begin(), inner.end(),
          [](const Literal& a, const Literal& b) { return a.var == b.var; });
      if (dup == inner.end()) return FormTag::F4;
    }
  }
  return FormTag::F1;
}

/// Literal shared by every product of an F4 group.
inline Literal f4_outer_literal(const XorExpr& g) {
  const auto& first = g.terms.at(0).literals();
  for (const Literal& cand : first) {
    bool shared = std::all_of(g.terms.begin(), g.terms.end(),
                              [&](const ProductTerm& t) {
                                return t.contains(cand.var);
                              });
    if (shared) return cand;
  }
  throw std::invalid_argument("group has no shared literal");
}

/// Factored term (g)(v1 + v2 + ... [+ 1]).
class GvTerm {
 public:
  GvTerm(XorExpr group, XorExpr factor_vars)
      : group_(std::move(group)), factor_vars_(std::move(factor_vars)) {
    form_ = classify_form(group_);
    if (factor_vars_.size() < 2)
      throw std::invalid_argument("factored term needs at least two factor "
                                  "entries");
    int constants = 0;
    std::vector<std::uint32_t> seen;
    for (const auto& t : factor_vars_.terms) {
      if (t.is_constant()) {
        ++constants;
        continue;
      }
      if (t.degree() != 1 || !t.literals()[0].positive())
        throw std::invalid_argument(
            "factor variables must be single positive literals");
      seen.push_back(t.literals()[0].var);
    }
    if (constants > 1)
      throw std::invalid_argument("at most one constant factor entry");
    if (seen.empty())
      throw std::invalid_argument("factor variables contain no variable");
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
      throw std::invalid_argument("repeated factor variable");
    for (const auto& t : group_.terms) {
      if (!t.all_positive())
        throw std::invalid_argument("factor group must be positive polarity");
      for (auto v : t.vars())
        if (std::binary_search(seen.begin(), seen.end(), v))
          throw std::invalid_argument(
              "factor group and factor variables overlap on x" +
              std::to_string(v));
    }
  }

  const XorExpr& group() const noexcept { return group_; }
  const XorExpr& factor_vars() const noexcept { return factor_vars_; }
  FormTag form() const noexcept { return form_; }
  std::size_t len_f() const noexcept { return factor_vars_.size(); }

  bool has_constant() const noexcept {
    return std::any_of(factor_vars_.terms.begin(), factor_vars_.terms.end(),
                       [](const ProductTerm& t) { return t.is_constant(); });
  }
  /// Factor variables in stored order, constant entry skipped.
  std::vector<std::uint32_t> variables() const {
    std::vector<std::uint32_t> out;
    for (const auto& t : factor_vars_.terms)
      if (!t.is_constant()) out.push_back(t.literals()[0].var);
    return out;
  }
  /// Distinct variables of the factor group, ascending.
  std::vector<std::uint32_t> group_variables() const {
    std::vector<std::uint32_t> out;
    for (const auto& t : group_.terms)
      for (auto v : t.vars()) out.push_back(v);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }
  std::uint32_t max_var() const noexcept {
    std::uint32_t m = 0;
    for (const auto& t : group_.terms) m = std::max(m, t.max_var());
    for (const auto& t : factor_vars_.terms) m = std::max(m, t.max_var());
    return m;
  }

  bool evaluate(std::span<const std::uint8_t> a) const {
    return group_.evaluate(a) && factor_vars_.evaluate(a);
  }

  /// Distributed product terms g*v1, g*v2, ...
  std::vector<ProductTerm> distribute() const {
    std::vector<ProductTerm> out;
    for (const auto& v : factor_vars_.terms)
      for (const auto& g : group_.terms) out.push_back(g.times(v));
    return out;
  }

  friend bool operator==(const GvTerm& a, const GvTerm& b) {
    return a.group_ == b.group_ && a.factor_vars_ == b.factor_vars_;
  }

 private:
  XorExpr group_;
  XorExpr factor_vars_;
  FormTag form_;
};

using Term = std::variant<ProductTerm, GvTerm>;

inline bool evaluate(const Term& t, std::span<const std::uint8_t> a) {
  return std::visit([&](const auto& x) { return x.evaluate(a); }, t);
}

inline std::uint32_t max_var(const Term& t) {
  return std::visit([](const auto& x) { return x.max_var(); }, t);
}

struct BoolFunction {
  std::uint32_t n = 0;
  std::vector<Term> terms;

  friend bool operator==(const BoolFunction&, const BoolFunction&) = default;
};

inline bool has_factored_terms(const BoolFunction& f) {
  return std::any_of(f.terms.begin(), f.terms.end(),
                     [](const Term& t) { return std::holds_alternative<GvTerm>(t); });
}

inline std::vector<ProductTerm> product_terms(const BoolFunction& f) {
  std::vector<ProductTerm> out;
  for (const auto& t : f.terms) {
    if (!std::holds_alternative<ProductTerm>(t))
      throw std::invalid_argument("function contains factored terms");
    out.push_back(std::get<ProductTerm>(t));
  }
  return out;
}

inline bool evaluate(const BoolFunction& f, std::span<const std::uint8_t> a) {
  if (a.size() != f.n)
    throw std::invalid_argument("assignment has " + std::to_string(a.size()) +
                                " bits, function has " + std::to_string(f.n) +
                                " variables");
  bool v = false;
  for (const auto& t : f.terms) v ^= evaluate(t, a);
  return v;
}

/// Bits of `index` as an assignment of length n; bit k-1 of index is x_k.
inline Assignment assignment_from_index(std::uint64_t index, std::size_t n) {
  Assignment a(n);
  for (std::size_t k = 0; k < n; ++k) a[k] = (index >> k) & 1U;
  return a;
}

/// Truth table with entry i = f(assignment_from_index(i)); n must be small.
inline std::vector<std::uint8_t> truth_table(const BoolFunction& f) {
  if (f.n > 24) throw std::invalid_argument("truth table too large");
  std::vector<std::uint8_t> tt(std::size_t{1} << f.n);
  for (std::size_t i = 0; i < tt.size(); ++i)
    tt[i] = evaluate(f, assignment_from_index(i, f.n));
  return tt;
}

/// Positive-polarity Reed-Muller expansion of a truth table (Moebius
/// transform); terms come out by ascending degree.
inline BoolFunction from_truth_table(std::span<const std::uint8_t> tt,
                                     std::uint32_t n) {
  if (n > 24 || tt.size() != (std::size_t{1} << n))
    throw std::invalid_argument("truth table size must be 2^n");
  std::vector<std::uint8_t> c(tt.begin(), tt.end());
  for (std::uint32_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < c.size(); ++i)
      if ((i >> k) & 1U) c[i] ^= c[i ^ (std::size_t{1} << k)];
  std::vector<std::size_t> masks;
  for (std::size_t i = 0; i < c.size(); ++i)
    if (c[i] & 1U) masks.push_back(i);
  std::stable_sort(masks.begin(), masks.end(), [](std::size_t a, std::size_t b) {
    return std::popcount(a) < std::popcount(b);
  });
  BoolFunction f{n, {}};
  for (auto m : masks) {
    std::vector<Literal> lits;
    for (std::uint32_t k = 0; k < n; ++k)
      if ((m >> k) & 1U) lits.push_back(pos(k + 1));
    f.terms.emplace_back(ProductTerm(std::move(lits)));
  }
  return f;
}

/// Removes identical product pairs; survivors keep their first position.
inline BoolFunction normalize(const BoolFunction& f) {
  auto terms = product_terms(f);
  BoolFunction out{f.n, {}};
  std::vector<bool> used(terms.size(), false);
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (used[i]) continue;
    std::size_t count = 0;
    for (std::size_t j = i; j < terms.size(); ++j)
      if (!used[j] && terms[j] == terms[i]) {
        used[j] = true;
        ++count;
      }
    if (count % 2 == 1) out.terms.emplace_back(terms[i]);
  }
  return out;
}

inline BoolFunction expand(const BoolFunction& f) {
  BoolFunction flat{f.n, {}};
  for (const auto& t : f.terms) {
    if (const auto* gv = std::get_if<GvTerm>(&t)) {
      for (auto& p : gv->distribute()) flat.terms.emplace_back(std::move(p));
    } else {
      flat.terms.push_back(t);
    }
  }
  return normalize(flat);
}

}  // namespace pprm
