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

#include <iterator>
#include <map>
#include <optional>
#include <set>

#include "core.hpp"

namespace pprm {

class FactorizationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Occurrence matrix of one degree group: rows are terms, columns variables.
struct FactTable {
  std::size_t group_degree = 0;
  std::vector<ProductTerm> rows;
  std::vector<std::uint32_t> cols;
  std::vector<std::vector<std::uint8_t>> cells;

  bool empty() const noexcept { return rows.empty(); }

  std::vector<std::size_t> column_sums() const {
    std::vector<std::size_t> sums(cols.size(), 0);
    for (const auto& row : cells)
      for (std::size_t c = 0; c < cols.size(); ++c) sums[c] += row[c];
    return sums;
  }

  void remove_row(std::size_t r) {
    rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(r));
    cells.erase(cells.begin() + static_cast<std::ptrdiff_t>(r));
  }
};

struct FactorExtraction {
  std::uint32_t factor_var = 0;
  std::vector<ProductTerm> factor_groups;

  friend bool operator==(const FactorExtraction&,
                         const FactorExtraction&) = default;
};

inline FactTable build_fact_table(std::span<const ProductTerm> group) {
  if (group.size() < 2)
    throw FactorizationError("a degree group needs at least two terms");
  FactTable t;
  t.group_degree = group[0].degree();
  if (t.group_degree < 2)
    throw FactorizationError("degree groups below 2 are not factorized");
  std::set<std::uint32_t> vars;
  for (const auto& term : group) {
    if (term.degree() != t.group_degree)
      throw FactorizationError("mixed degrees in one group");
    if (!term.all_positive())
      throw FactorizationError("negative literal in a factorization group");
    for (auto v : term.vars()) vars.insert(v);
  }
  t.cols.assign(vars.begin(), vars.end());
  for (const auto& term : group) {
    t.rows.push_back(term);
    std::vector<std::uint8_t> row(t.cols.size(), 0);
    for (std::size_t c = 0; c < t.cols.size(); ++c)
      row[c] = term.contains(t.cols[c]) ? 1 : 0;
    t.cells.push_back(std::move(row));
  }
  return t;
}

/// Lowest-indexed variable among the maximal column sums.
inline std::uint32_t select_factor(const FactTable& table) {
  if (table.empty()) throw FactorizationError("empty factorization table");
  auto sums = table.column_sums();
  std::size_t best = 0;
  for (std::size_t c = 1; c < sums.size(); ++c)
    if (sums[c] > sums[best]) best = c;
  return table.cols[best];
}

inline std::vector<FactorExtraction> extract_all(FactTable table) {
  std::vector<FactorExtraction> out;
  while (!table.empty()) {
    FactorExtraction ex;
    ex.factor_var = select_factor(table);
    for (std::size_t r = 0; r < table.rows.size();) {
      if (table.rows[r].contains(ex.factor_var)) {
        ex.factor_groups.push_back(table.rows[r].without(ex.factor_var));
        table.remove_row(r);
      } else {
        ++r;
      }
    }
    out.push_back(std::move(ex));
  }
  return out;
}

namespace detail {

inline ProductTerm common_part(const std::vector<ProductTerm>& terms) {
  std::vector<Literal> common = terms[0].literals();
  for (const auto& t : terms) {
    std::vector<Literal> next;
    std::set_intersection(common.begin(), common.end(), t.literals().begin(),
                          t.literals().end(), std::back_inserter(next));
    common = std::move(next);
  }
  return ProductTerm(std::move(common));
}

inline ProductTerm minus(const ProductTerm& t, const ProductTerm& part) {
  ProductTerm r = t;
  for (const auto& l : part.literals()) r = r.without(l.var);
  return r;
}

struct Rectangle {
  std::vector<ProductTerm> u;
  std::vector<std::uint32_t> v;
};

// Finds remainders = {u*v : u in U, v in V} with single-literal V.
inline std::optional<Rectangle> find_rectangle(
    const std::vector<ProductTerm>& rem) {
  std::set<ProductTerm> all(rem.begin(), rem.end());
  if (all.size() != rem.size() || rem.size() < 4) return std::nullopt;
  for (const Literal& v0 : rem[0].literals()) {
    ProductTerm u0 = rem[0].without(v0.var);
    Rectangle r;
    for (const auto& t : rem) {
      if (t.degree() != u0.degree() + 1) continue;
      ProductTerm left = minus(t, u0);
      if (left.degree() == 1 && !u0.contains(left.literals()[0].var) &&
          minus(t, left).literals() == u0.literals())
        r.v.push_back(left.literals()[0].var);
    }
    for (const auto& t : rem)
      if (t.contains(v0.var)) r.u.push_back(t.without(v0.var));
    if (r.u.size() < 2 || r.v.size() < 2 ||
        r.u.size() * r.v.size() != rem.size())
      continue;
    bool ok = true;
    std::set<ProductTerm> built;
    for (const auto& u : r.u) {
      for (auto v : r.v) {
        if (u.contains(v)) {
          ok = false;
          break;
        }
        built.insert(u.times(ProductTerm{pos(v)}));
      }
      if (!ok) break;
    }
    if (ok && built == all) {
      std::sort(r.v.begin(), r.v.end());
      return r;
    }
  }
  return std::nullopt;
}

inline XorExpr vars_expr(const std::vector<std::uint32_t>& vars) {
  XorExpr e;
  for (auto v : vars) e.terms.push_back(ProductTerm{pos(v)});
  return e;
}

}  // namespace detail

/// Merges each extraction into a factored term where the remainder allows.
inline std::vector<Term> analyze_common_factor(
    std::span<const FactorExtraction> extractions) {
  std::vector<Term> out;
  for (const auto& ex : extractions) {
    const ProductTerm xs{pos(ex.factor_var)};
    auto emit_plain = [&] {
      for (const auto& q : ex.factor_groups) out.emplace_back(xs.times(q));
    };
    if (ex.factor_groups.size() < 2) {
      emit_plain();
      continue;
    }
    ProductTerm fg = detail::common_part(ex.factor_groups);
    std::vector<ProductTerm> rem;
    for (const auto& q : ex.factor_groups) rem.push_back(detail::minus(q, fg));
    bool singles = std::all_of(rem.begin(), rem.end(), [](const auto& r) {
      return r.degree() == 1;
    });
    ProductTerm head = xs.times(fg);
    if (singles) {
      std::vector<std::uint32_t> vars;
      for (const auto& r : rem) vars.push_back(r.literals()[0].var);
      std::sort(vars.begin(), vars.end());
      out.emplace_back(GvTerm(XorExpr{{head}}, detail::vars_expr(vars)));
      continue;
    }
    if (auto rect = detail::find_rectangle(rem)) {
      XorExpr group;
      for (const auto& u : rect->u) group.terms.push_back(head.times(u));
      out.emplace_back(GvTerm(std::move(group), detail::vars_expr(rect->v)));
      continue;
    }
    emit_plain();
  }
  return out;
}

/// Factors positive terms of degree >= 2, degree group by degree group.
inline BoolFunction factorize(const BoolFunction& f) {
  BoolFunction g = normalize(f);
  std::map<std::size_t, std::vector<ProductTerm>> groups;
  std::vector<Term> passthrough;
  for (const auto& t : g.terms) {
    const auto& p = std::get<ProductTerm>(t);
    if (p.degree() <= 1 || !p.all_positive())
      passthrough.push_back(p);
    else
      groups[p.degree()].push_back(p);
  }
  BoolFunction out{f.n, {}};
  for (auto& [degree, terms] : groups) {
    if (terms.size() == 1) {
      out.terms.emplace_back(terms[0]);
      continue;
    }
    auto ex = extract_all(build_fact_table(terms));
    for (auto& t : analyze_common_factor(ex)) out.terms.push_back(std::move(t));
  }
  for (auto& t : passthrough) out.terms.push_back(std::move(t));
  return out;
}

}  // namespace pprm
