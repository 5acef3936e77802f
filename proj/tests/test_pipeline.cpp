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

PipelineConfig no_rearrange() {
  PipelineConfig c;
  c.rearrange = false;
  return c;
}

}  // namespace

TEST(Pipeline, RearrangementEffect) {
  const char* f1 = "x1x2x3x4 + x1x3 + x1x5";
  auto a = run_pipeline_text(f1, no_rearrange());
  auto b = run_pipeline_text(f1);
  EXPECT_EQ(a.cost->qc_total, 42U);
  EXPECT_EQ(b.cost->qc_total, 30U);
  EXPECT_TRUE(a.verification->equivalent());
  EXPECT_TRUE(b.verification->equivalent());
  EXPECT_EQ(expression_string(*a.algebraic()), "x1x2x3x4 + (x1)(x3+x5)");
  EXPECT_EQ(expression_string(*b.algebraic()), "(x1)(x3+x5) + x1x2x3x4");
}

TEST(Pipeline, WorkedExample) {
  auto r = run_pipeline_text("x1x2x4 + x2x3x4 + x2x3 + x2x4 + x1 + x1x2x3~x4");
  EXPECT_EQ(expression_string(*r.algebraic()),
            "x1 + (x2x4)(x1+x3) + (x2)(x3+x4) + x1x2x3~x4");
  EXPECT_EQ(r.mct->size(), 8U);
  EXPECT_TRUE(r.verification->equivalent());
  EXPECT_GE(r.cost->qc_total, 45U);
  EXPECT_LE(r.cost->qc_total, 47U);
  EXPECT_EQ(r.cost->per_stage.at("final"), r.cost->qc_total);
  EXPECT_LE(r.cost->qc_total, r.cost->per_stage.at("decomposed"));
}

TEST(Pipeline, ZeroFunction) {
  auto r = run_pipeline_text("");
  EXPECT_EQ(r.cost->qc_total, 0U);
  EXPECT_TRUE(r.verification->equivalent());
  EXPECT_EQ(r.ncv->size(), 0U);
}

TEST(Pipeline, StopAfterLeavesLaterStagesEmpty) {
  PipelineConfig cfg;
  cfg.stop_after = PipelineStage::factorize;
  auto r = run_pipeline_text("x1x2x3 + x1x2x5", cfg);
  EXPECT_EQ(r.reached, PipelineStage::factorize);
  EXPECT_FALSE(r.mct.has_value());
  EXPECT_FALSE(r.cost.has_value());
  EXPECT_EQ(expression_string(*r.algebraic()), "(x1x2)(x3+x5)");
  cfg.stop_after = PipelineStage::synth;
  auto s = run_pipeline_text("x1x2x3 + x1x2x5", cfg);
  EXPECT_TRUE(s.mct.has_value());
  EXPECT_FALSE(s.ncv.has_value());
}

TEST(Pipeline, DependencyRule) {
  PipelineConfig cfg;
  cfg.factorize = false;
  auto e = cfg.effective();
  EXPECT_FALSE(e.reorder);
  EXPECT_FALSE(e.rearrange);
  auto r = run_pipeline_text("x1x2x3 + x1x2x5", cfg);
  EXPECT_EQ(expression_string(*r.algebraic()), "x1x2x3 + x1x2x5");
  EXPECT_TRUE(r.verification->equivalent());
}

TEST(Pipeline, ParseErrorsCarryStage) {
  try {
    run_pipeline_text("x1 + + x2");
    FAIL();
  } catch (const PipelineError& e) {
    EXPECT_EQ(e.stage(), PipelineStage::parse);
  }
  PipelineConfig strict;
  strict.strict_pprm = true;
  EXPECT_THROW(run_pipeline_text("~x1", strict), PipelineError);
}

TEST(Pipeline, DeterministicForFixedConfig) {
  std::mt19937_64 rng(50);
  for (int trial = 0; trial < 20; ++trial) {
    auto raw = testing_support::random_raw(rng, 6, 10, true);
    auto f = testing_support::to_function(raw, 6);
    auto a = run_pipeline(f);
    auto b = run_pipeline(f);
    EXPECT_EQ(a.ncv, b.ncv);
  }
}

TEST(Pipeline, CircuitInput) {
  auto c = read_real(read_text_file(std::string(SAMPLES_DIR) + "/4gt4_20_mct.real"));
  auto r = run_pipeline(PipelineInput{c});
  EXPECT_TRUE(r.verification->equivalent());
  EXPECT_GE(r.cost->qc_total, 45U);
  EXPECT_LE(r.cost->qc_total, 47U);
}

TEST(Pipeline, StrictExportNeverCheaper) {
  std::mt19937_64 rng(60);
  for (int trial = 0; trial < 50; ++trial) {
    auto raw = testing_support::random_raw(rng, 5, 8, true);
    auto f = testing_support::to_function(raw, 5);
    PipelineConfig strict;
    strict.cost_model = CostModel::strict_export;
    auto a = run_pipeline(f);
    auto b = run_pipeline(f, strict);
    EXPECT_GE(b.cost->qc_total, a.cost->qc_total);
  }
}

TEST(Pipeline, ElisionOffRestoresInputs) {
  std::mt19937_64 rng(70);
  for (int trial = 0; trial < 60; ++trial) {
    std::uint32_t n = 2 + static_cast<std::uint32_t>(rng() % 5);
    auto raw = testing_support::random_raw(rng, static_cast<int>(n), 10, true);
    auto f = testing_support::to_function(raw, n);
    PipelineConfig cfg;
    cfg.elide = false;
    auto r = run_pipeline(f, cfg);
    ASSERT_TRUE(r.verification->equivalent());
    const auto& c = *r.ncv;
    auto inputs = c.lines_of(LineKind::input);
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
      auto bits = line_values(c, assignment_from_index(x, n), 0);
      auto s = simulate_ncv_semiclassical(c, bits);
      ASSERT_FALSE(s.nonclassical_control.has_value());
      for (auto l : inputs)
        EXPECT_EQ(s.lines[l], bits[l] ? QState::one : QState::zero);
    }
  }
}
