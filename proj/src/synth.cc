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

#include "itable/synth.h"

#include <cmath>
#include <string>
#include <utility>

#include "itable/errors.h"
#include "itable/random.h"

namespace itable {

std::uint64_t Binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t out = 1;
  for (int i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

void GroundTruthSpec::Validate() const {
  CheckVariableCount(n);
  std::vector<bool> seen(n + 1, false);
  for (const OrderSupport& o : orders) {
    if (o.order < 1 || o.order > n) {
      throw ConfigError("order " + std::to_string(o.order) +
                        " outside [1, " + std::to_string(n) + "]");
    }
    if (seen[o.order]) {
      throw ConfigError("order " + std::to_string(o.order) + " listed twice");
    }
    seen[o.order] = true;
    if (o.count < 0 ||
        static_cast<std::uint64_t>(o.count) > Binomial(n, o.order)) {
      throw ConfigError("order " + std::to_string(o.order) + " asks for " +
                        std::to_string(o.count) + " effects but only " +
                        std::to_string(Binomial(n, o.order)) + " exist");
    }
    if (!std::isfinite(o.min_magnitude) || !std::isfinite(o.max_magnitude) ||
        o.min_magnitude > o.max_magnitude) {
      throw ConfigError("invalid magnitude range for order " +
                        std::to_string(o.order));
    }
  }
  if (!std::isfinite(empty_value)) throw ConfigError("empty value not finite");
}

GroundTruthWeights GenerateGroundTruth(const GroundTruthSpec& spec) {
  spec.Validate();
  Rng rng(spec.seed);
  SubsetTable w(spec.n);
  w[0] = spec.empty_value;
  for (const OrderSupport& o : spec.orders) {
    std::vector<Mask> candidates;
    for (Mask m = 0; m < w.size(); ++m) {
      if (Order(m) == o.order) candidates.push_back(m);
    }
    // Partial Fisher-Yates: the first count entries are a uniform sample.
    for (int i = 0; i < o.count; ++i) {
      const auto j = i + rng.UniformIndex(candidates.size() - i);
      std::swap(candidates[i], candidates[j]);
      double magnitude = rng.Uniform(o.min_magnitude, o.max_magnitude);
      if (spec.sign == SignPolicy::kRandom && (rng.NextBits() & 1u)) {
        magnitude = -magnitude;
      }
      w[candidates[i]] = magnitude;
    }
  }
  return {std::move(w)};
}

MaskedOutputTable ConvergedOutputs(const GroundTruthWeights& truth,
                                   const std::string& sample_id) {
  return {sample_id, ZetaTransform(truth.w_star)};
}

MaskedOutputTable AddOutputNoise(const MaskedOutputTable& table, double sigma,
                                 std::uint64_t seed) {
  if (!(sigma >= 0.0)) throw ConfigError("sigma must be >= 0");
  MaskedOutputTable out = table;
  if (sigma == 0.0) return out;
  Rng rng(seed);
  for (double& x : out.v.mutable_values()) x += sigma * rng.Normal();
  return out;
}

SubsetTable SpindleInitialization(int n, std::uint64_t seed) {
  SubsetTable w(n);
  Rng rng(seed);
  for (double& x : w.mutable_values()) x = rng.Normal();
  return w;
}

}  // namespace itable
