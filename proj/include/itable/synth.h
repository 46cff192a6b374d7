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

#ifndef ITABLE_SYNTH_H_
#define ITABLE_SYNTH_H_

#include <cstdint>
#include <vector>

#include "itable/interactions.h"
#include "itable/subsets.h"

namespace itable {

enum class SignPolicy { kRandom, kPositive };

// Support and magnitudes for one order of a synthetic ground truth.
struct OrderSupport {
  int order = 1;
  int count = 0;
  // Magnitudes are drawn uniformly from [min_magnitude, max_magnitude).
  double min_magnitude = 1.0;
  double max_magnitude = 1.0;
};

struct GroundTruthSpec {
  int n = 0;
  std::vector<OrderSupport> orders;
  SignPolicy sign = SignPolicy::kRandom;
  // Value of w_0, i.e. the empty-sample output.
  double empty_value = 0.0;
  std::uint64_t seed = 0;

  // Throws ConfigError when a count exceeds C(n, k) or an order repeats.
  void Validate() const;
};

std::uint64_t Binomial(int n, int k);

// Exactly spec.orders[i].count nonzero weights of each listed order, chosen
// uniformly without replacement among the masks of that order.
GroundTruthWeights GenerateGroundTruth(const GroundTruthSpec& spec);

// y_S = w_0 + sum_{0 != T subset S} w_T, the zeta transform of w_star.
MaskedOutputTable ConvergedOutputs(const GroundTruthWeights& truth,
                                   const std::string& sample_id = "synthetic");

// Adds i.i.d. N(0, sigma^2) to every masked output. Throws ConfigError on
// sigma < 0.
MaskedOutputTable AddOutputNoise(const MaskedOutputTable& table, double sigma,
                                 std::uint64_t seed);

// Every weight, including w_0, drawn i.i.d. N(0, 1): the randomly initialized
// starting point whose per-order mass follows the binomial counts.
SubsetTable SpindleInitialization(int n, std::uint64_t seed);

}  // namespace itable

#endif  // ITABLE_SYNTH_H_
