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

#ifndef ITABLE_METRICS_H_
#define ITABLE_METRICS_H_

#include <span>
#include <vector>

#include "itable/interactions.h"
#include "itable/subsets.h"

namespace itable {

inline constexpr double kDefaultTauFactor = 0.03;

// Normalized strength of salient interactions per order k = 1..n. The
// normalizer z is the mean over orders of the unnormalized strengths, so a
// non-empty distribution averages to 1 over orders.
struct OrderDistribution {
  int n = 0;
  // strength[k - 1] for order k.
  std::vector<double> strength;
  double tau = 0.0;
  double z = 0.0;
  // No interaction reached tau (z == 0); strengths are all zero.
  bool empty = true;

  double at(int order) const { return strength[order - 1]; }
};

// factor * mean over samples of |v(x_N) - v(x_0)|. Throws ConfigError on an
// empty list.
double SalienceThreshold(std::span<const MaskedOutputTable> samples,
                         double factor = kDefaultTauFactor);

// Each sample contributes the vectors listed for it (AND and OR, or AND
// only). Inner sums run over effects with |I| >= tau, the outer mean over
// samples. Throws DimensionError on mixed n.
OrderDistribution ComputeOrderDistribution(
    std::span<const std::vector<InteractionVector>> samples, double tau);

// Convenience over AndOrInteractions; include_or = false gives the AND-only
// variant.
OrderDistribution ComputeOrderDistribution(
    std::span<const AndOrInteractions> samples, double tau,
    bool include_or = true);

// tau_theo = factor * |sum_S w_hat_S - w_hat_0|, then the distribution of
// w_hat treated as a single AND vector.
OrderDistribution TheoDistribution(const SubsetTable& w_hat,
                                   double factor = kDefaultTauFactor);

// Euclidean distance between strength arrays. Throws DimensionError.
double DistributionDistance(const OrderDistribution& a,
                            const OrderDistribution& b);

// sum_k k * s_k / sum_k s_k; 0 for an empty distribution.
double MeanOrder(const OrderDistribution& distribution);

struct SigmaFit {
  double sigma2_star = 0.0;
  double distance = 0.0;
  std::vector<double> grid;
  // distance per grid point, aligned with grid.
  std::vector<double> curve;
};

// Grid search for the sigma2 whose predicted distribution best matches real.
// Ties go to the smaller sigma2. Throws ConfigError on an empty grid.
SigmaFit FitSigma(const OrderDistribution& real,
                  const GroundTruthWeights& truth,
                  std::span<const double> grid,
                  double tau_factor = kDefaultTauFactor);

}  // namespace itable

#endif  // ITABLE_METRICS_H_
