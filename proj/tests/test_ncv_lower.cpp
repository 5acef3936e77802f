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

#include <complex>
#include <random>

#include "pprm_synth/pprm_synth.hpp"
#include "test_support.hpp"

using namespace pprm;
using testing_support::oracle_mct;

namespace {

using Cplx = std::complex<double>;
using Matrix = std::vector<std::vector<Cplx>>;  // [col][row]

// Exact Toffoli on lines a=0, b=1, t=2 as a permutation matrix.
Matrix toffoli_matrix(bool positive) {
  Matrix m(8, std::vector<Cplx>(8, 0.0));
  for (std::size_t x = 0; x < 8; ++x) {
    bool a = x & 1U, b = (x >> 1) & 1U;
    bool fire = positive ? (a && b) : (!a && !b);
    m[x][fire ? x ^ 4U : x] = 1.0;
  }
  return m;
}

double distance_up_to_phase(const Matrix& want, const std::vector<StateVector>& got) {
  Cplx phase = 0.0;
  for (std::size_t c = 0; c < want.size(); ++c)
    for (std::size_t r = 0; r < want.size(); ++r)
      phase += std::conj(want[c][r]) * got[c][r];
  phase /= std::abs(phase);
  double worst = 0.0;
  for (std::size_t c = 0; c < want.size(); ++c)
    for (std::size_t r = 0; r < want.size(); ++r)
      worst = std::max(worst, std::abs(got[c][r] - phase * want[c][r]));
  return worst;
}

MctGate gate(std::size_t k, LineId target) {
  std::vector<Control> cs;
  for (LineId l = 0; l < k; ++l) cs.push_back(pc(l));
  return MctGate(cs, target);
}

void expect_same_permutation(const std::vector<MctGate>& got,
                             const MctGate& want, std::size_t w) {
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << w); ++x)
    ASSERT_EQ(oracle_mct(got, x), oracle_mct({want}, x)) << "input " << x;
}

std::vector<std::size_t> control_counts(const std::vector<MctGate>& gs) {
  std::vector<std::size_t> out;
  for (const auto& g : gs) out.push_back(g.num_controls());
  return out;
}

}  // namespace

TEST(Toffoli, AllVariantsMatchExactMatrix) {
  for (auto v : all_toffoli_variants()) {
    bool positive = v.polarity == Polarity::positive;
    MctGate g(positive ? std::vector<Control>{pc(0), pc(1)}
                       : std::vector<Control>{nc(0), nc(1)},
              2);
    auto seq = decompose_toffoli(g, v);
    ASSERT_EQ(seq.size(), 5U);
    auto c = testing_support::plain_ncv(3);
    c.append(seq.begin(), seq.end());
    EXPECT_LT(distance_up_to_phase(toffoli_matrix(positive), dense_unitary(c)), 1e-9)
        << "variant " << v.index << (positive ? "+" : "-");
  }
}

TEST(Toffoli, FirstVariantShape) {
  auto seq = decompose_toffoli(MctGate({pc(0), pc(1)}, 2), {1, Polarity::positive});
  std::vector<NcvGate> want{NcvGate::cv(pc(1), 2), NcvGate::cnot(pc(0), 1),
                            NcvGate::cvdag(pc(1), 2), NcvGate::cnot(pc(0), 1),
                            NcvGate::cv(pc(0), 2)};
  EXPECT_EQ(seq, want);
}

TEST(Toffoli, MixedPolarityIsExact) {
  for (int v = 1; v <= 4; ++v) {
    for (auto [ca, cb] : {std::pair{nc(0), pc(1)}, std::pair{pc(0), nc(1)}}) {
      MctGate g({ca, cb}, 2);
      auto c = testing_support::plain_ncv(3);
      auto seq = decompose_toffoli(g, variant_for(g, v));
      c.append(seq.begin(), seq.end());
      auto m = testing_support::plain_circuit(3);
      m.append(g);
      EXPECT_LT(unitary_distance(dense_unitary(m), dense_unitary(c)), 1e-9);
    }
  }
}

TEST(Toffoli, RejectsWrongShapes) {
  EXPECT_THROW(decompose_toffoli(MctGate({pc(0)}, 2), {1, Polarity::positive}),
               LoweringError);
  EXPECT_THROW(decompose_toffoli(MctGate({pc(0), pc(1)}, 2), {5, Polarity::positive}),
               LoweringError);
  EXPECT_THROW(decompose_toffoli(MctGate({pc(0), pc(1)}, 2), {1, Polarity::negative}),
               LoweringError);
}

TEST(Toffoli, SemiClassicalMatchesGate) {
  for (auto v : all_toffoli_variants()) {
    bool positive = v.polarity == Polarity::positive;
    MctGate g(positive ? std::vector<Control>{pc(0), pc(1)}
                       : std::vector<Control>{nc(0), nc(1)},
              2);
    auto c = testing_support::plain_ncv(3);
    auto seq = decompose_toffoli(g, v);
    c.append(seq.begin(), seq.end());
    for (std::uint64_t x = 0; x < 8; ++x) {
      auto r = simulate_ncv_semiclassical(c, assignment_from_index(x, 3));
      ASSERT_TRUE(r.classical());
      auto bits = r.bits();
      std::uint64_t y = bits[0] | (bits[1] << 1) | (bits[2] << 2);
      EXPECT_EQ(y, oracle_mct({g}, x));
    }
  }
}

TEST(Rules, Dr1Counts) {
  auto a = apply_dr1(gate(3, 3), 6);
  EXPECT_EQ(a.size(), 4U);
  for (const auto& g : a) EXPECT_EQ(g.num_controls(), 2U);
  expect_same_permutation(a, gate(3, 3), 6);
  auto b = apply_dr1(gate(5, 5), 9);
  EXPECT_EQ(b.size(), 12U);
  for (const auto& g : b) EXPECT_EQ(g.num_controls(), 2U);
  expect_same_permutation(b, gate(5, 5), 9);
  for (std::size_t k = 3; k <= 5; ++k)
    EXPECT_EQ(apply_dr1(gate(k, 9), 10).size(), 4 * (k - 2));
  EXPECT_THROW(apply_dr1(gate(3, 3), 4), LoweringError);
  EXPECT_THROW(apply_dr1(gate(6, 6), 9), LoweringError);
}

TEST(Rules, Dr2Counts) {
  auto g = gate(7, 7);
  auto parts = apply_dr2(g, 9);
  EXPECT_EQ(control_counts(parts), (std::vector<std::size_t>{5, 3, 5, 3}));
  expect_same_permutation(parts, g, 9);
  auto alt = apply_dr2(g, 9, Dr2Order::target_first);
  EXPECT_EQ(control_counts(alt), (std::vector<std::size_t>{3, 5, 3, 5}));
  expect_same_permutation(alt, g, 9);
  EXPECT_THROW(apply_dr2(gate(8, 8), 9), LoweringError);
}

TEST(Rules, Dr3AddsOneLine) {
  auto c = testing_support::plain_circuit(4);
  auto g = gate(3, 3);
  auto r = apply_dr3(g, c);
  EXPECT_EQ(r.circuit.width(), 5U);
  EXPECT_EQ(r.circuit.line(r.aux).kind, LineKind::auxiliary);
  EXPECT_EQ(r.circuit.line(r.aux).name, "L1");
  EXPECT_EQ(control_counts(r.gates), (std::vector<std::size_t>{2, 2, 2, 2}));
  expect_same_permutation(r.gates, g, 5);
  EXPECT_THROW(apply_dr3(gate(2, 3), c), LoweringError);
}

TEST(Rules, ReduceControlsIsExact) {
  for (std::size_t w = 3; w <= 9; ++w) {
    for (std::size_t k = 0; k < w; ++k) {
      auto c = testing_support::plain_circuit(w);
      c.append(gate(k, static_cast<LineId>(w - 1)));
      auto r = reduce_controls(c);
      for (const auto& g : r.gates()) EXPECT_LE(g.num_controls(), 2U);
      // Widened lines start at 0 in this check; the original bits pass through.
      const std::uint64_t mask = (std::uint64_t{1} << w) - 1;
      for (std::uint64_t x = 0; x < (std::uint64_t{1} << w); ++x)
        ASSERT_EQ(oracle_mct(r.gates(), x), oracle_mct(c.gates(), x) & mask)
            << "w=" << w << " k=" << k;
    }
  }
}

TEST(Simplify, MergeAndDeleteRules) {
  std::vector<NcvGate> vv{NcvGate::cv(pc(0), 1), NcvGate::cv(pc(0), 1)};
  EXPECT_EQ(simplify_gates(vv), std::vector<NcvGate>{NcvGate::cnot(pc(0), 1)});
  std::vector<NcvGate> xx{NcvGate::cnot(pc(0), 1), NcvGate::cnot(pc(0), 1)};
  EXPECT_TRUE(simplify_gates(xx).empty());
  std::vector<NcvGate> vx{NcvGate::cv(pc(0), 1), NcvGate::cnot(pc(0), 1)};
  EXPECT_EQ(simplify_gates(vx), std::vector<NcvGate>{NcvGate::cvdag(pc(0), 1)});
  std::vector<NcvGate> vd{NcvGate::cv(pc(0), 1), NcvGate::cvdag(pc(0), 1)};
  EXPECT_TRUE(simplify_gates(vd).empty());
  // A gate on unrelated lines does not block the merge.
  std::vector<NcvGate> far{NcvGate::cv(pc(0), 1), NcvGate::cnot(pc(2), 3),
                           NcvGate::cv(pc(0), 1)};
  EXPECT_EQ(simplify_gates(far).size(), 2U);
  // A gate writing the control does.
  std::vector<NcvGate> blocked{NcvGate::cv(pc(0), 1), NcvGate::not_gate(0),
                               NcvGate::cv(pc(0), 1)};
  EXPECT_EQ(simplify_gates(blocked).size(), 3U);
}

TEST(Simplify, RandomCircuitsKeepUnitary) {
  std::mt19937_64 rng(1234);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t w = 2 + rng() % 5;
    auto c = testing_support::random_ncv(rng, w, rng() % 41);
    auto s = simplify(c);
    EXPECT_LE(s.size(), c.size());
    EXPECT_LT(unitary_distance(dense_unitary(c), dense_unitary(s)), 1e-9)
        << "trial " << trial;
  }
}

TEST(Lowering, ReferenceCosts) {
  auto qc = [](std::string_view text) {
    return quantum_cost(synth_function(parse_pprm(text))).qc_total;
  };
  EXPECT_EQ(qc("(x1)(x3+x5) + x1x2x3x4"), 30U);
  EXPECT_EQ(qc("x1x2x3x4 + (x1)(x3+x5)"), 42U);
  EXPECT_EQ(qc("x1 + (x2x4)(x1+x3) + (x2)(x3+x4) + x1x2x3~x4"), 47U);
  EXPECT_EQ(quantum_cost(NcvCircuit{}).qc_total, 0U);
  auto one = testing_support::plain_circuit(3);
  one.append(MctGate({pc(0), pc(1)}, 2));
  EXPECT_EQ(quantum_cost(expand_toffolis(one)).qc_total, 5U);
}

TEST(Lowering, WorkedExampleAddsLineL1) {
  auto c = synth_function(parse_pprm("x1 + (x2x4)(x1+x3) + (x2)(x3+x4) + x1x2x3~x4"));
  auto r = reduce_controls(c);
  EXPECT_EQ(r.width(), 6U);
  EXPECT_EQ(r.lines().back().name, "L1");
  EXPECT_EQ(r.lines().back().kind, LineKind::auxiliary);
}

TEST(Lowering, StrictExportWrapsAndSplits) {
  auto c = testing_support::plain_ncv(2);
  c.append(NcvGate::cvdag(pc(0), 1));
  auto s = strict_export_gates(c);
  EXPECT_EQ(s, (std::vector<NcvGate>{NcvGate::cv(pc(0), 1), NcvGate::cnot(pc(0), 1)}));
  EXPECT_EQ(strict_export_gates(c, CvDagLowering::cnot_then_cv),
            (std::vector<NcvGate>{NcvGate::cnot(pc(0), 1), NcvGate::cv(pc(0), 1)}));
  auto n = testing_support::plain_ncv(2);
  n.append(NcvGate::cnot(nc(0), 1));
  EXPECT_EQ(strict_export_gates(n),
            (std::vector<NcvGate>{NcvGate::not_gate(0), NcvGate::cnot(pc(0), 1),
                                  NcvGate::not_gate(0)}));
  EXPECT_EQ(quantum_cost(n, CostModel::strict_export).qc_total, 3U);
}

TEST(Lowering, VariantPolicyParsing) {
  EXPECT_EQ(VariantPolicy::parse("greedy").name(), "greedy");
  EXPECT_EQ(VariantPolicy::parse("fixed:3").fixed_index, 3);
  EXPECT_THROW(VariantPolicy::parse("fixed:9"), std::invalid_argument);
  EXPECT_THROW(VariantPolicy::parse("best"), std::invalid_argument);
}
