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

#include <gtest/gtest.h>

#include <random>

#include "pprm_synth/pprm_synth.hpp"
#include "test_support.hpp"

using namespace pprm;
using testing_support::oracle_mct;

namespace {

BoolFunction fn(std::string_view s) { return parse_pprm(s); }

std::vector<std::string> listing(const MctCircuit& c) {
  std::vector<std::string> out;
  for (const auto& g : c.gates()) out.push_back(describe(g, c.lines()));
  return out;
}

// Result-line value from the bitmask oracle, lines laid out x1..xn, f.
bool oracle_result(const MctCircuit& c, std::uint64_t x, std::uint32_t n) {
  std::uint64_t s = oracle_mct(c.gates(), x);
  return (s >> n) & 1U;
}

void expect_computes(const MctCircuit& c, const BoolFunction& f) {
  ASSERT_EQ(c.width(), f.n + 1U);
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << f.n); ++x)
    EXPECT_EQ(oracle_result(c, x, f.n), evaluate(f, assignment_from_index(x, f.n)))
        << "input " << x;
}

}  // namespace

TEST(Direct, Eq3FiveGates) {
  auto f = fn("x1x2x3x4 + ~x1x2x4 + ~x2x3x4 + x3x4 + 1");
  auto ps = product_terms(f);
  auto c = synth_direct(ps, make_function_circuit(4));
  EXPECT_EQ(listing(c), (std::vector<std::string>{
                            "T5(x1,x2,x3,x4;f)", "T4(~x1,x2,x4;f)",
                            "T4(~x2,x3,x4;f)", "T3(x3,x4;f)", "T1(;f)"}));
  expect_computes(c, f);
}

TEST(Direct, TrivialFunctions) {
  auto one = fn("1");
  auto c = synth_direct(product_terms(one), make_function_circuit(0));
  ASSERT_EQ(c.size(), 1U);
  EXPECT_TRUE(c.gates()[0].controls.empty());
  EXPECT_EQ(synth_direct(product_terms(fn("")), make_function_circuit(0)).size(), 0U);
}

TEST(Gv, ThreeFactorVariables) {
  auto f = fn("(x1x2)(x3+x5+x7)");
  auto c = synth_gv(std::get<GvTerm>(f.terms[0]), make_function_circuit(7));
  EXPECT_EQ(listing(c), (std::vector<std::string>{
                            "T2(x3;x5)", "T2(x5;x7)", "T4(x1,x2,x7;f)",
                            "T2(x5;x7)", "T2(x3;x5)"}));
  expect_computes(c, f);
}

TEST(Gv, WorkedExampleTerms) {
  auto a = fn(".n 4\n(x2)(x3+x4)");
  auto ca = synth_gv(std::get<GvTerm>(a.terms[0]), make_function_circuit(4));
  EXPECT_EQ(listing(ca), (std::vector<std::string>{"T2(x3;x4)", "T3(x2,x4;f)",
                                                   "T2(x3;x4)"}));
  expect_computes(ca, a);
  auto b = fn("(x2x4)(x1+x3)");
  auto cb = synth_gv(std::get<GvTerm>(b.terms[0]), make_function_circuit(4));
  EXPECT_EQ(listing(cb), (std::vector<std::string>{"T2(x1;x3)", "T4(x2,x3,x4;f)",
                                                   "T2(x1;x3)"}));
  expect_computes(cb, b);
}

TEST(Gv, AllFormsComputeTheirExpansion) {
  for (auto s : {"(x1x2)(x3+x4+1)", "(x1(x2+x3))(x6+x7)", "(x1+x2)(x3+x4)",
                 "(x1x2 + x3x4x5)(x6+x7)", "(x1+x2+x5)(x3+x4+1)"}) {
    auto f = fn(s);
    f.n = 7;
    auto c = synth_gv(std::get<GvTerm>(f.terms[0]), make_function_circuit(7));
    expect_computes(c, f);
    // Every factor and group line is restored.
    for (std::uint64_t x = 0; x < 128; ++x)
      EXPECT_EQ(oracle_mct(c.gates(), x) & 127U, x) << s;
  }
}

TEST(Ctr, MergesGoldenPair) {
  auto c = make_function_circuit(4);
  c.append(MctGate({pc(0), pc(1), pc(2), pc(3)}, 4));
  c.append(MctGate({pc(1), pc(2), pc(3)}, 4));
  auto m = apply_ctr(c);
  ASSERT_EQ(m.size(), 1U);
  EXPECT_EQ(m.gates()[0], MctGate({nc(0), pc(1), pc(2), pc(3)}, 4));
  // x = (0,1,1,1), t = 0 gives t' = 1.
  EXPECT_EQ((oracle_mct(m.gates(), 0b01110) >> 4) & 1U, 1U);
  for (std::uint64_t x = 0; x < 32; ++x)
    EXPECT_EQ(oracle_mct(m.gates(), x), oracle_mct(c.gates(), x));
}

TEST(Ctr, LeavesNonQualifyingPairs) {
  auto c = make_function_circuit(4);
  c.append(MctGate({pc(0), pc(1)}, 4));
  c.append(MctGate({pc(2), pc(3)}, 4));
  c.append(MctGate({nc(0), pc(1)}, 4));
  EXPECT_EQ(apply_ctr(c), c);
  auto blocked = make_function_circuit(4);
  blocked.append(MctGate({pc(0), pc(1)}, 4));
  blocked.append(MctGate({pc(0)}, 1));
  blocked.append(MctGate({pc(1)}, 4));
  EXPECT_EQ(apply_ctr(blocked), blocked);
}

TEST(Ctr, PreservesRandomCircuits) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t w = 3 + rng() % 6;
    auto c = testing_support::plain_circuit(w);
    std::size_t len = 1 + rng() % 12;
    for (std::size_t i = 0; i < len; ++i) {
      auto t = static_cast<LineId>(rng() % w);
      std::vector<Control> cs;
      for (LineId l = 0; l < w; ++l)
        if (l != t && rng() % 2) cs.push_back(pc(l));
      c.append(MctGate(cs, t));
      if (rng() % 2 && !cs.empty()) {
        cs.erase(cs.begin() + static_cast<std::ptrdiff_t>(rng() % cs.size()));
        c.append(MctGate(cs, t));
      }
    }
    auto m = apply_ctr(c);
    EXPECT_LE(m.size(), c.size());
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << w); ++x)
      ASSERT_EQ(oracle_mct(m.gates(), x), oracle_mct(c.gates(), x));
  }
}

TEST(Elision, DropsTrailingRestoreGates) {
  auto f = fn("(x2)(x3+x4)");
  auto c = synth_function(f);
  ASSERT_EQ(c.size(), 2U);
  EXPECT_TRUE(c.line(3).garbage);
  EXPECT_FALSE(c.line(0).garbage);
  expect_computes(c, f);
  auto keep = synth_function(fn("x1x2"));
  EXPECT_EQ(elide_trailing(keep).size(), keep.size());
}

TEST(Elision, StrictModeCountsFactorVariables) {
  auto f = fn("(x1x2)(x3+x5+x7)");
  auto c = synth_function(f, {true, ElisionMode::strict_len_f});
  EXPECT_EQ(c.size(), 3U);
  expect_computes(c, f);
}

TEST(Synth, ReferenceFunctions) {
  auto f2 = fn("(x1)(x3+x5) + x1x2x3x4");
  auto c2 = synth_function(f2);
  EXPECT_EQ(listing(c2), (std::vector<std::string>{"T2(x3;x5)", "T3(x1,x5;f)",
                                                   "T2(x3;x5)", "T5(x1,x2,x3,x4;f)"}));
  expect_computes(c2, f2);
  auto w = fn("x1 + (x2x4)(x1+x3) + (x2)(x3+x4) + x1x2x3~x4");
  auto cw = synth_function(w);
  EXPECT_EQ(cw.size(), 8U);
  expect_computes(cw, w);
  EXPECT_EQ(synth_function(fn("")).size(), 0U);
}

TEST(Synth, RandomFunctionsAfterFullChain) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    std::uint32_t n = 2 + static_cast<std::uint32_t>(rng() % 6);
    auto raw = testing_support::random_raw(rng, static_cast<int>(n), 10, true);
    auto f = testing_support::to_function(raw, n);
    auto g = rearrange_max_last(reorder_method(factorize(f)));
    auto c = synth_function(g);
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x)
      ASSERT_EQ(oracle_result(c, x, n), testing_support::oracle_eval(raw, x))
          << testing_support::render(raw);
  }
}
