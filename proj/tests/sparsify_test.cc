// Copyright 2026 The itable Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "itable/sparsify.h"

#include <cmath>
#include <random>

#include "gtest/gtest.h"
#include "itable/errors.h"
#include "oracles.h"

namespace itable {
namespace {

MaskedOutputTable Table(int n, std::vector<double> v) {
  return {"t", SubsetTable(n, std::move(v))};
}

MaskedOutputTable PureAnd(int n, Mask t, double c) {
  SubsetTable v(n);
  for (Mask s = 0; s < v.size(); ++s) v[s] = IsSubset(t, s) ? c : 0.0;
  return {"pure", v};
}

double L1(const SubsetTable& t) {
  double s = 0.0;
  for (double x : t.values()) s += std::abs(x);
  return s;
}

TEST(DeltaBoundTest, Examples) {
  EXPECT_DOUBLE_EQ(DeltaBound(Table(1, {0, 10})), 0.2);
  EXPECT_DOUBLE_EQ(DeltaBound(Table(1, {4, 4})), 0.0);
  EXPECT_DOUBLE_EQ(DeltaBound(Table(1, {2, -3})), 0.1);
}

TEST(SparsifyLossTest, Examples) {
  EXPECT_EQ(SparsifyLoss(EvenSplit(2, 0.0), Table(2, {0, 0, 0, 0})), 0.0);

  const MaskedOutputTable v = PureAnd(2, 3, 4.0);
  Decomposition all_and = EvenSplit(2, 0.0);
  for (Mask m = 0; m < 4; ++m) all_and.gamma[m] = 0.5 * v.v[m];
  EXPECT_DOUBLE_EQ(SparsifyLoss(all_and, v), 4.0);

  const double even = SparsifyLoss(EvenSplit(2, 0.0), v);
  EXPECT_GE(even, 4.0);
  EXPECT_DOUBLE_EQ(even, oracle::SparsityLoss({0, 0, 0, 4}, {0, 0, 0, 0}));
}

TEST(SparsifyLossTest, ContractViolations) {
  const MaskedOutputTable v = Table(2, {0, 1, 2, 3});
  EXPECT_THROW(SparsifyLoss(EvenSplit(3, 0.0), v), DimensionError);
  Decomposition d = EvenSplit(2, 0.01);
  d.delta[1] = 0.02;
  EXPECT_THROW(SparsifyLoss(d, v), InvariantError);
}

TEST(DecompositionTest, ViewsSumToDenoisedOutput) {
  std::mt19937_64 gen(2);
  const int n = 4;
  const SubsetTable v(n, oracle::RandomValues(16, gen));
  Decomposition d{SubsetTable(n, oracle::RandomValues(16, gen)),
                  SubsetTable(n, oracle::RandomValues(16, gen, 0.01)), 1.0};
  const SubsetTable a = d.VAnd(v), o = d.VOr(v);
  for (Mask m = 0; m < 16; ++m) {
    EXPECT_NEAR(a[m] + o[m] + d.delta[m], v[m], 1e-14);
  }
}

TEST(OptimizeDecompositionTest, ZeroFunction) {
  const SparsifyResult r = OptimizeDecomposition(Table(2, {0, 0, 0, 0}));
  EXPECT_TRUE(r.converged);
  EXPECT_EQ(r.final_loss(), 0.0);
  for (double x : r.decomposition.gamma.values()) EXPECT_EQ(x, 0.0);
  for (double x : r.decomposition.delta.values()) EXPECT_EQ(x, 0.0);
}

TEST(OptimizeDecompositionTest, PureAndFunctionGoesToAnd) {
  const MaskedOutputTable v = PureAnd(2, 3, 4.0);
  const SparsifyResult r = OptimizeDecomposition(v);
  EXPECT_LE(std::abs(r.final_loss() - 4.0), 0.05 * 4.0);
  const AndOrInteractions e = ExtractInteractions(r.decomposition, v);
  const double and_mass = L1(e.and_effects.effects);
  const double or_mass = L1(e.or_effects.effects);
  EXPECT_GE(and_mass / (and_mass + or_mass), 0.95);
}

TEST(OptimizeDecompositionTest, AdditiveFunction) {
  const SparsifyResult r = OptimizeDecomposition(Table(2, {0, 1, 2, 3}));
  EXPECT_LE(std::abs(r.final_loss() - 3.0), 0.05 * 3.0);
}

TEST(OptimizeDecompositionTest, MatchesGridSearchOracle) {
  std::mt19937_64 gen(19);
  for (int n = 1; n <= 2; ++n) {
    for (int trial = 0; trial < 3; ++trial) {
      const auto raw = oracle::RandomValues(TableSize(n), gen);
      const double grid = oracle::GridSparsityOptimum(raw);
      const SparsifyResult r = OptimizeDecomposition(Table(n, raw));
      EXPECT_LE(r.final_loss(), 1.05 * grid) << "n=" << n;
    }
  }
}

TEST(OptimizeDecompositionTest, MatchesExactOracleWithoutNoiseTerm) {
  // With zeta = 0 the problem is exactly the oracle's.
  std::mt19937_64 gen(53);
  SparsifyConfig config;
  config.zeta_factor = 0.0;
  for (int n = 1; n <= 3; ++n) {
    for (int trial = 0; trial < 5; ++trial) {
      const auto raw = oracle::RandomValues(TableSize(n), gen);
      const double exact = oracle::ExactSparsityOptimum(raw);
      const SparsifyResult r = OptimizeDecomposition(Table(n, raw), config);
      EXPECT_LE(r.final_loss(), exact * (1.0 + 1e-6) + 1e-12) << "n=" << n;
      EXPECT_GE(r.final_loss(), exact * (1.0 - 1e-9) - 1e-12) << "n=" << n;
    }
  }
}

TEST(OptimizeDecompositionTest, Invariants) {
  std::mt19937_64 gen(59);
  for (int n = 1; n <= 6; ++n) {
    const MaskedOutputTable v = Table(n, oracle::RandomValues(TableSize(n), gen));
    const SparsifyResult r = OptimizeDecomposition(v);
    const Decomposition& d = r.decomposition;
    const double zeta = DeltaBound(v);
    EXPECT_EQ(d.zeta_bound, zeta);
    for (double x : d.delta.values()) EXPECT_LE(std::abs(x), zeta);
    for (std::size_t i = 1; i < r.loss_history.size(); ++i) {
      EXPECT_LE(r.loss_history[i], r.loss_history[i - 1]);
    }
    EXPECT_LE(r.final_loss(), r.initial_loss());
    EXPECT_DOUBLE_EQ(r.final_loss(), SparsifyLoss(d, v));

    // Universal matching against v - delta.
    const AndOrInteractions e = ExtractInteractions(d, v);
    const SubsetTable rebuilt =
        ReconstructAll(e.and_effects, e.or_effects, e.v_empty);
    for (Mask m = 0; m < v.v.size(); ++m) {
      EXPECT_NEAR(rebuilt[m], v.v[m] - d.delta[m], 1e-9);
    }
  }
}

TEST(OptimizeDecompositionTest, BudgetExhaustionIsNotAnError) {
  SparsifyConfig config;
  config.max_iters = 3;
  config.convergence_tol = 0.0;
  const SparsifyResult r = OptimizeDecomposition(Table(2, {0, 1, 2, 7}), config);
  EXPECT_FALSE(r.converged);
  EXPECT_EQ(r.iterations, 3);
  EXPECT_EQ(r.loss_history.size(), 4u);
}

TEST(OptimizeDecompositionTest, IsDeterministic) {
  const MaskedOutputTable v = Table(3, {0.3, -1, 2, 0.5, 1, 4, -2, 6});
  const SparsifyResult a = OptimizeDecomposition(v);
  const SparsifyResult b = OptimizeDecomposition(v);
  EXPECT_EQ(a.decomposition.gamma, b.decomposition.gamma);
  EXPECT_EQ(a.decomposition.delta, b.decomposition.delta);
  EXPECT_EQ(a.loss_history, b.loss_history);
}

TEST(SparsifyConfigTest, Validation) {
  SparsifyConfig c;
  c.max_iters = 0;
  EXPECT_THROW(c.Validate(), ConfigError);
  c = {};
  c.learning_rate = 0.0;
  EXPECT_THROW(c.Validate(), ConfigError);
  c = {};
  c.zeta_factor = -1.0;
  EXPECT_THROW(OptimizeDecomposition(Table(1, {0, 1}), c), ConfigError);
}

}  // namespace
}  // namespace itable
