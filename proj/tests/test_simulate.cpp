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

namespace {

const char* kEq3 = "x1x2x3x4 + ~x1x2x4 + ~x2x3x4 + x3x4 + 1";

}  // namespace

TEST(SemiClassical, VCyclesThroughStates) {
  auto c = testing_support::plain_ncv(2);
  c.append(NcvGate::cv(pc(0), 1));
  auto r = simulate_ncv_semiclassical(c, Assignment{1, 0});
  EXPECT_EQ(r.lines[1], QState::v_zero);
  EXPECT_FALSE(r.classical());
  EXPECT_THROW(r.bits(), SimulationError);
  c.append(NcvGate::cv(pc(0), 1));
  EXPECT_EQ(simulate_ncv_semiclassical(c, Assignment{1, 0}).lines[1], QState::one);
  c.append(NcvGate::cv(pc(0), 1));
  EXPECT_EQ(simulate_ncv_semiclassical(c, Assignment{1, 0}).lines[1], QState::v_one);
  c.append(NcvGate::cv(pc(0), 1));
  EXPECT_EQ(simulate_ncv_semiclassical(c, Assignment{1, 0}).lines[1], QState::zero);
}

TEST(SemiClassical, ReportsNonClassicalControl) {
  auto c = testing_support::plain_ncv(3);
  c.append(NcvGate::cv(pc(0), 1));
  c.append(NcvGate::cnot(pc(1), 2));
  auto r = simulate_ncv_semiclassical(c, Assignment{1, 0, 0});
  ASSERT_TRUE(r.nonclassical_control.has_value());
  EXPECT_EQ(*r.nonclassical_control, 1U);
}

TEST(SemiClassical, AgreesWithStateVector) {
  std::mt19937_64 rng(17);
  int compared = 0;
  for (int trial = 0; trial < 200; ++trial) {
    auto c = testing_support::random_ncv(rng, 4, 12);
    for (std::uint64_t x = 0; x < 16; ++x) {
      auto in = assignment_from_index(x, 4);
      auto r = simulate_ncv_semiclassical(c, in);
      if (!r.classical()) continue;
      auto psi = simulate_statevector(c, in);
      auto bits = r.bits();
      EXPECT_NEAR(std::abs(psi[basis_index(bits)]), 1.0, 1e-9);
      ++compared;
    }
  }
  EXPECT_GT(compared, 100);
}

TEST(StateVector, IdentityAndMerge) {
  auto id = testing_support::plain_ncv(3);
  auto psi = simulate_statevector(id, Assignment{1, 0, 1});
  EXPECT_EQ(psi[5], Amplitude(1.0));
  auto vv = testing_support::plain_ncv(2);
  vv.append(NcvGate::cv(pc(0), 1));
  vv.append(NcvGate::cv(pc(0), 1));
  auto x = testing_support::plain_ncv(2);
  x.append(NcvGate::cnot(pc(0), 1));
  for (std::uint64_t i = 0; i < 4; ++i) {
    auto a = simulate_statevector(vv, assignment_from_index(i, 2));
    auto b = simulate_statevector(x, assignment_from_index(i, 2));
    for (std::size_t k = 0; k < 4; ++k) EXPECT_NEAR(std::abs(a[k] - b[k]), 0.0, 1e-12);
  }
  EXPECT_TRUE(check_unitary_equiv(vv, x, 1e-9));
  EXPECT_TRUE(check_unitary_equiv(x, x, 1e-12));
}

TEST(StateVector, RespectsCaps) {
  auto wide = testing_support::plain_ncv(15);
  EXPECT_THROW(simulate_statevector(wide, Assignment(15, 0)), SimulationError);
  EXPECT_THROW(dense_unitary(testing_support::plain_ncv(11)), SimulationError);
}

TEST(Equivalence, DirectMethodOnEq3) {
  auto f = parse_pprm(kEq3);
  auto c = synth_direct(product_terms(f), make_function_circuit(4));
  auto rep = check_equivalence(c, f);
  EXPECT_TRUE(rep.equivalent());
  EXPECT_EQ(rep.inputs_checked, 16U);
  EXPECT_EQ(rep.mode, CheckMode::exhaustive);
}

TEST(Equivalence, MutationIsCaught) {
  auto f = parse_pprm(kEq3);
  auto c = synth_direct(product_terms(f), make_function_circuit(4));
  MctCircuit cut = c.with_lines<MctGate>();
  cut.append(c.gates().begin() + 1, c.gates().end());
  auto rep = check_equivalence(cut, f);
  EXPECT_EQ(rep.status, EquivalenceStatus::counterexample);
  EXPECT_NE(rep.expected, rep.got);
  EXPECT_EQ(evaluate(f, rep.input), rep.expected);
}

TEST(Equivalence, ZeroFunctionAndEmptyCircuit) {
  BoolFunction zero{3, {}};
  EXPECT_TRUE(check_equivalence(make_function_circuit(3), zero).equivalent());
}

TEST(Equivalence, NcvWorkedExampleBothEngines) {
  auto f = parse_pprm("x1 + (x2x4)(x1+x3) + (x2)(x3+x4) + x1x2x3~x4");
  auto ncv = lower_circuit(synth_function(f));
  auto flat = expand(f);
  EXPECT_TRUE(check_equivalence(ncv, flat).equivalent());
  const LineId out = ncv.result_line();
  for (std::uint64_t x = 0; x < 16; ++x) {
    auto in = assignment_from_index(x, 4);
    for (std::uint8_t aux = 0; aux <= 1; ++aux) {
      auto bits = line_values(ncv, in, aux);
      bits[out] = 0;
      auto psi = simulate_statevector(ncv, bits);
      double p1 = 0;
      for (std::size_t i = 0; i < psi.size(); ++i)
        if ((i >> out) & 1U) p1 += std::norm(psi[i]);
      EXPECT_NEAR(p1, evaluate(flat, in) ? 1.0 : 0.0, 1e-9);
    }
  }
}

TEST(Equivalence, SampledModeForWideFunctions) {
  auto f = parse_pprm("x1x2 + x17");
  auto c = synth_function(f);
  CheckOptions opt;
  opt.samples = 500;
  auto rep = check_equivalence(c, f, opt);
  EXPECT_TRUE(rep.equivalent());
  EXPECT_EQ(rep.mode, CheckMode::sampled);
  EXPECT_EQ(rep.inputs_checked, 500U);
}

TEST(Equivalence, CircuitAgainstCircuit) {
  auto f = parse_pprm("(x1)(x3+x5) + x1x2x3x4");
  auto m = synth_function(f);
  auto n = lower_circuit(m);
  EXPECT_TRUE(check_equivalence(n, m).equivalent());
}

TEST(Garbage, MarksChangedLines) {
  auto c = make_function_circuit(2);
  c.append(MctGate({pc(0)}, 1));
  c.append(MctGate({pc(1)}, 2));
  mark_garbage(c);
  EXPECT_FALSE(c.line(0).garbage);
  EXPECT_TRUE(c.line(1).garbage);
  EXPECT_FALSE(c.line(2).garbage);
}
