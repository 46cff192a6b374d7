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

#include "itable/subsets.h"

#include <cmath>
#include <string>
#include <utility>

#include "itable/errors.h"

namespace itable {
namespace {

enum class Direction { kSubsets, kSupersets };

// In-place sweep over the n bit dimensions. For kSubsets every mask with bit
// i set receives sign * value of the mask without it; kSupersets is the
// transposed sweep.
SubsetTable Sweep(const SubsetTable& input, Direction direction, double sign) {
  input.CheckFinite();
  SubsetTable out = input;
  const std::size_t size = out.size();
  std::span<double> v = out.mutable_values();
  for (int i = 0; i < out.n(); ++i) {
    const Mask bit = Mask{1} << i;
    for (Mask m = 0; m < size; ++m) {
      if (m & bit) continue;
      if (direction == Direction::kSubsets) {
        v[m | bit] += sign * v[m];
      } else {
        v[m] += sign * v[m | bit];
      }
    }
  }
  for (double x : v) {
    if (!std::isfinite(x)) throw NumericError("transform overflowed");
  }
  return out;
}

}  // namespace

void CheckVariableCount(int n) {
  if (n < 1 || n > kMaxVariables) {
    throw ConfigError("number of variables must be in [1, " +
                      std::to_string(kMaxVariables) + "], got " +
                      std::to_string(n));
  }
}

VariableSet::VariableSet(int n, Mask bits) : n_(n), bits_(bits) {
  CheckVariableCount(n);
  if (bits >= TableSize(n)) {
    throw ConfigError("mask " + std::to_string(bits) + " out of range for n=" +
                      std::to_string(n));
  }
}

std::string VariableSet::ToString() const {
  std::string out = "{";
  bool first = true;
  for (int i = 0; i < n_; ++i) {
    if (!contains(i)) continue;
    if (!first) out += ",";
    out += std::to_string(i);
    first = false;
  }
  return out + "}";
}

std::vector<VariableSet> EnumerateSubsets(int n) {
  CheckVariableCount(n);
  std::vector<VariableSet> out;
  out.reserve(TableSize(n));
  for (Mask m = 0; m < TableSize(n); ++m) out.emplace_back(n, m);
  return out;
}

SubsetTable::SubsetTable(int n) : n_(n) {
  CheckVariableCount(n);
  values_.assign(TableSize(n), 0.0);
}

SubsetTable::SubsetTable(int n, std::vector<double> values)
    : n_(n), values_(std::move(values)) {
  CheckVariableCount(n);
  if (values_.size() != TableSize(n)) {
    throw ConfigError("subset table for n=" + std::to_string(n) + " needs " +
                      std::to_string(TableSize(n)) + " entries, got " +
                      std::to_string(values_.size()));
  }
  CheckFinite();
}

void SubsetTable::CheckFinite() const {
  for (std::size_t m = 0; m < values_.size(); ++m) {
    if (!std::isfinite(values_[m])) {
      throw DataError("non-finite value at mask " + std::to_string(m));
    }
  }
}

SubsetTable LinearCombination(double a, const SubsetTable& x, double b,
                              const SubsetTable& y) {
  if (x.n() != y.n()) {
    throw DimensionError("tables disagree on n: " + std::to_string(x.n()) +
                         " vs " + std::to_string(y.n()));
  }
  SubsetTable out(x.n());
  for (Mask m = 0; m < out.size(); ++m) out[m] = a * x[m] + b * y[m];
  return out;
}

SubsetTable ZetaTransform(const SubsetTable& f) {
  return Sweep(f, Direction::kSubsets, 1.0);
}

SubsetTable MobiusTransform(const SubsetTable& g) {
  return Sweep(g, Direction::kSubsets, -1.0);
}

SubsetTable SupersetSumTransform(const SubsetTable& u) {
  return Sweep(u, Direction::kSupersets, 1.0);
}

SubsetTable SupersetMobiusTransform(const SubsetTable& u) {
  return Sweep(u, Direction::kSupersets, -1.0);
}

SubsetTable FlipComplement(const SubsetTable& f) {
  f.CheckFinite();
  SubsetTable out(f.n());
  const Mask full = FullMask(f.n());
  for (Mask m = 0; m < f.size(); ++m) out[m] = f[full & ~m];
  return out;
}

}  // namespace itable
