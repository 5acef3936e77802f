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

#include "core.hpp"

namespace pprm {

/// Factored terms sharing inclusion-related factor variables.
struct TermGroup {
  std::vector<std::uint32_t> common_v;
  std::vector<GvTerm> members;
  std::size_t max_len_f = 0;
};

namespace detail {

inline std::vector<ProductTerm> sorted_products(const Term& t) {
  std::vector<ProductTerm> ps;
  if (const auto* gv = std::get_if<GvTerm>(&t))
    ps = gv->distribute();
  else
    ps.push_back(std::get<ProductTerm>(t));
  std::sort(ps.begin(), ps.end());
  return ps;
}

inline bool includes_either(const std::vector<std::uint32_t>& a,
                            const std::vector<std::uint32_t>& b) {
  return std::includes(a.begin(), a.end(), b.begin(), b.end()) ||
         std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace detail

/// Merges T and (T)(v...) into (T)(v... + 1) until no pair is left.
inline BoolFunction apply_r1(const BoolFunction& f) {
  BoolFunction out = f;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < out.terms.size() && !changed; ++i) {
      auto lhs = detail::sorted_products(out.terms[i]);
      for (std::size_t j = 0; j < out.terms.size(); ++j) {
        if (j == i) continue;
        const auto* gv = std::get_if<GvTerm>(&out.terms[j]);
        if (!gv || gv->has_constant()) continue;
        auto g = gv->group().terms;
        std::sort(g.begin(), g.end());
        if (g != lhs) continue;
        XorExpr vars = gv->factor_vars();
        vars.terms.emplace_back();
        out.terms[j] = GvTerm(gv->group(), std::move(vars));
        out.terms.erase(out.terms.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        break;
      }
    }
    // The bare group may also appear spelled out as separate products.
    for (std::size_t j = 0; j < out.terms.size() && !changed; ++j) {
      const auto* gv = std::get_if<GvTerm>(&out.terms[j]);
      if (!gv || gv->has_constant() || gv->group().size() < 2) continue;
      std::vector<std::size_t> hits;
      for (const auto& p : gv->group().terms) {
        for (std::size_t i = 0; i < out.terms.size(); ++i) {
          const auto* q = std::get_if<ProductTerm>(&out.terms[i]);
          if (q && *q == p &&
              std::find(hits.begin(), hits.end(), i) == hits.end()) {
            hits.push_back(i);
            break;
          }
        }
      }
      if (hits.size() != gv->group().size()) continue;
      XorExpr vars = gv->factor_vars();
      vars.terms.emplace_back();
      out.terms[j] = GvTerm(gv->group(), std::move(vars));
      std::sort(hits.rbegin(), hits.rend());
      for (auto i : hits)
        out.terms.erase(out.terms.begin() + static_cast<std::ptrdiff_t>(i));
      changed = true;
    }
  }
  return out;
}

/// Exchanges group and factor variables of an F4/F5 term when the group is
/// the larger side.
inline GvTerm apply_r2(const GvTerm& t) {
  if (t.form() != FormTag::F4 && t.form() != FormTag::F5) return t;
  if (t.has_constant()) return t;
  if (t.group_variables().size() <= t.len_f()) return t;
  XorExpr new_vars;
  XorExpr new_group;
  if (t.form() == FormTag::F5) {
    std::vector<std::uint32_t> gv;
    for (const auto& p : t.group().terms) gv.push_back(p.literals()[0].var);
    for (auto v : gv) new_vars.terms.push_back(ProductTerm{pos(v)});
    new_group = t.factor_vars();
  } else {
    Literal outer = f4_outer_literal(t.group());
    for (const auto& p : t.group().terms)
      new_vars.terms.push_back(p.without(outer.var));
    for (auto v : t.variables())
      new_group.terms.push_back(ProductTerm{outer, pos(v)});
  }
  return GvTerm(std::move(new_group), std::move(new_vars));
}

inline std::vector<TermGroup> group_by_factor_vars(
    std::span<const GvTerm> terms) {
  std::vector<TermGroup> groups;
  for (const auto& t : terms) {
    auto vars = t.variables();
    std::sort(vars.begin(), vars.end());
    TermGroup* home = nullptr;
    for (auto& g : groups)
      if (detail::includes_either(g.common_v, vars)) {
        home = &g;
        break;
      }
    if (!home) {
      groups.push_back({vars, {}, 0});
      home = &groups.back();
    }
    std::vector<std::uint32_t> common;
    std::set_intersection(home->common_v.begin(), home->common_v.end(),
                          vars.begin(), vars.end(), std::back_inserter(common));
    home->common_v = std::move(common);
    home->members.push_back(t);
    home->max_len_f = std::max(home->max_len_f, t.len_f());
  }
  return groups;
}

inline BoolFunction reorder_method(const BoolFunction& f) {
  auto split = [](const BoolFunction& g, std::vector<ProductTerm>& ps,
                  std::vector<GvTerm>& gvs) {
    ps.clear();
    gvs.clear();
    for (const auto& t : g.terms) {
      if (const auto* gv = std::get_if<GvTerm>(&t))
        gvs.push_back(*gv);
      else
        ps.push_back(std::get<ProductTerm>(t));
    }
    std::stable_sort(ps.begin(), ps.end(), [](const auto& a, const auto& b) {
      return a.degree() < b.degree();
    });
  };
  std::vector<ProductTerm> ps;
  std::vector<GvTerm> gvs;
  split(f, ps, gvs);
  std::stable_sort(gvs.begin(), gvs.end(), [](const auto& a, const auto& b) {
    return std::pair(a.len_f(), a.form()) < std::pair(b.len_f(), b.form());
  });
  BoolFunction stage1{f.n, {}};
  for (auto& p : ps) stage1.terms.emplace_back(p);
  for (auto& g : gvs) stage1.terms.emplace_back(g);

  split(apply_r1(stage1), ps, gvs);
  for (auto& g : gvs) g = apply_r2(g);
  auto groups = group_by_factor_vars(gvs);
  for (auto& g : groups)
    std::stable_sort(g.members.begin(), g.members.end(),
                     [](const auto& a, const auto& b) {
                       return std::pair(a.form(), a.len_f()) <
                              std::pair(b.form(), b.len_f());
                     });
  std::stable_sort(groups.begin(), groups.end(),
                   [](const auto& a, const auto& b) {
                     return a.max_len_f < b.max_len_f;
                   });
  BoolFunction out{f.n, {}};
  for (auto& p : ps) out.terms.emplace_back(p);
  for (auto& g : groups)
    for (auto& m : g.members) out.terms.emplace_back(m);
  return out;
}

inline std::size_t d_term(const ProductTerm& t) { return t.degree(); }

inline std::size_t d_term(const GvTerm& t) {
  switch (t.form()) {
    case FormTag::F1: {
      std::size_t m = 0;
      for (const auto& p : t.group().terms) m = std::max(m, p.degree());
      return m;
    }
    case FormTag::F2:
      return t.group().terms[0].degree() + 1;
    case FormTag::F3:
      return 2;
    case FormTag::F4:
      return 3;
    case FormTag::F5:
      return 2;
  }
  return 0;
}

inline std::size_t d_term(const Term& t) {
  return std::visit([](const auto& x) { return d_term(x); }, t);
}

/// Moves one term of maximal d_term (the latest one on ties) to the end.
inline BoolFunction rearrange_max_last(const BoolFunction& f) {
  if (f.terms.size() < 2) return f;
  std::size_t best = 0;
  for (std::size_t i = 1; i < f.terms.size(); ++i)
    if (d_term(f.terms[i]) >= d_term(f.terms[best])) best = i;
  BoolFunction out = f;
  Term moved = out.terms[best];
  out.terms.erase(out.terms.begin() + static_cast<std::ptrdiff_t>(best));
  out.terms.push_back(std::move(moved));
  return out;
}

}  // namespace pprm
