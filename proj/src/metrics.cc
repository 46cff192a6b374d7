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

#include "itable/metrics.h"

#include <cmath>
#include <string>

#include "itable/dynamics.h"
#include "itable/errors.h"

namespace itable {

double SalienceThreshold(std::span<const MaskedOutputTable> samples,
                         double factor) {
  if (samples.empty()) throw ConfigError("salience threshold needs samples");
  if (!(factor >= 0.0)) throw ConfigError("tau factor must be >= 0");
  double sum = 0.0;
  for (const auto& s : samples) sum += std::abs(s.v_full() - s.v_empty());
  return factor * sum / static_cast<double>(samples.size());
}

OrderDistribution ComputeOrderDistribution(
    std::span<const std::vector<InteractionVector>> samples, double tau) {
  if (!(tau >= 0.0)) throw ConfigError("tau must be >= 0");
  int n = 0;
  for (const auto& sample : samples) {
    for (const auto& v : sample) {
      if (n == 0) n = v.n();
      if (v.n() != n) {
        throw DimensionError("interaction vectors disagree on n: " +
                             std::to_string(n) + " vs " +
                             std::to_string(v.n()));
      }
    }
  }
  if (n == 0) throw ConfigError("order distribution needs interactions");

  OrderDistribution out{n, std::vector<double>(n, 0.0), tau, 0.0, true};
  for (const auto& sample : samples) {
    for (const auto& v : sample) {
      for (Mask m = 1; m < v.effects.size(); ++m) {
        const double e = std::abs(v.effects[m]);
        if (e >= tau) out.strength[Order(m) - 1] += e;
      }
    }
  }
  double z = 0.0;
  for (double& s : out.strength) {
    s /= static_cast<double>(samples.size());
    z += s;
  }
  out.z = z / n;
  if (out.z > 0.0) {
    out.empty = false;
    for (double& s : out.strength) s /= out.z;
  }
  return out;
}

OrderDistribution ComputeOrderDistribution(
    std::span<const AndOrInteractions> samples, double tau, bool include_or) {
  std::vector<std::vector<InteractionVector>> grouped;
  grouped.reserve(samples.size());
  for (const auto& s : samples) {
    if (include_or) {
      grouped.push_back({s.and_effects, s.or_effects});
    } else {
      grouped.push_back({s.and_effects});
    }
  }
  return ComputeOrderDistribution(grouped, tau);
}

OrderDistribution TheoDistribution(const SubsetTable& w_hat, double factor) {
  double v_theo = 0.0;
  for (double w : w_hat.values()) v_theo += w;
  const double tau = factor * std::abs(v_theo - w_hat[0]);
  std::vector<std::vector<InteractionVector>> single{
      {InteractionVector{InteractionKind::kAnd, w_hat}}};
  single[0][0].effects[0] = 0.0;
  return ComputeOrderDistribution(single, tau);
}

double DistributionDistance(const OrderDistribution& a,
                            const OrderDistribution& b) {
  if (a.n != b.n || a.strength.size() != b.strength.size()) {
    throw DimensionError("distributions disagree on n: " +
                         std::to_string(a.n) + " vs " + std::to_string(b.n));
  }
  double sum = 0.0;
  for (std::size_t k = 0; k < a.strength.size(); ++k) {
    const double d = a.strength[k] - b.strength[k];
    sum += d * d;
  }
  return std::sqrt(sum);
}

double MeanOrder(const OrderDistribution& distribution) {
  double mass = 0.0, moment = 0.0;
  for (int k = 1; k <= distribution.n; ++k) {
    mass += distribution.at(k);
    moment += k * distribution.at(k);
  }
  return mass > 0.0 ? moment / mass : 0.0;
}

SigmaFit FitSigma(const OrderDistribution& real,
                  const GroundTruthWeights& truth,
                  std::span<const double> grid, double tau_factor) {
  if (grid.empty()) throw ConfigError("sigma2 grid is empty");
  if (real.n != truth.n()) {
    throw DimensionError("real distribution and weights disagree on n");
  }
  SigmaFit fit{0.0, INFINITY, {grid.begin(), grid.end()}, {}};
  for (double sigma2 : grid) {
    const double d = DistributionDistance(
        real, TheoDistribution(SolveOptimalWeights(truth, sigma2), tau_factor));
    fit.curve.push_back(d);
    if (d < fit.distance || (d == fit.distance && sigma2 < fit.sigma2_star)) {
      fit.distance = d;
      fit.sigma2_star = sigma2;
    }
  }
  return fit;
}

}  // namespace itable
