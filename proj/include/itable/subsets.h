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

#ifndef ITABLE_SUBSETS_H_
#define ITABLE_SUBSETS_H_

#include <bit>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace itable {

// Largest supported number of input variables for dense subset tables.
inline constexpr int kMaxVariables = 16;

using Mask = std::uint32_t;

// Throws ConfigError unless 1 <= n <= kMaxVariables.
void CheckVariableCount(int n);

inline constexpr std::size_t TableSize(int n) { return std::size_t{1} << n; }
inline constexpr Mask FullMask(int n) { return static_cast<Mask>(TableSize(n) - 1); }
inline int Order(Mask mask) { return std::popcount(mask); }
inline constexpr bool IsSubset(Mask sub, Mask super) { return (sub & super) == sub; }

// A subset S of N = {0, ..., n-1}. Bit i is set iff variable i is in S.
class VariableSet {
 public:
  VariableSet(int n, Mask bits);

  int n() const { return n_; }
  Mask bits() const { return bits_; }
  int order() const { return Order(bits_); }
  bool contains(int variable) const { return (bits_ >> variable) & 1u; }
  VariableSet complement() const { return VariableSet(n_, FullMask(n_) & ~bits_); }

  // "{0,2}" style rendering; "{}" for the empty set.
  std::string ToString() const;

  friend bool operator==(const VariableSet&, const VariableSet&) = default;

 private:
  int n_;
  Mask bits_;
};

// All 2^n subsets in ascending bitmask order. This is the canonical order
// for matrix rows/columns and for every file format.
std::vector<VariableSet> EnumerateSubsets(int n);

// Dense map from subsets of N to scalars, indexed by bitmask.
class SubsetTable {
 public:
  // Zero-filled table.
  explicit SubsetTable(int n);
  // Takes ownership of values. Throws ConfigError on a length other than 2^n
  // and DataError on non-finite entries.
  SubsetTable(int n, std::vector<double> values);

  int n() const { return n_; }
  std::size_t size() const { return values_.size(); }

  double operator[](Mask mask) const { return values_[mask]; }
  double& operator[](Mask mask) { return values_[mask]; }

  std::span<const double> values() const { return values_; }
  std::span<double> mutable_values() { return values_; }

  // Throws DataError naming the first non-finite entry.
  void CheckFinite() const;

  friend bool operator==(const SubsetTable&, const SubsetTable&) = default;

 private:
  int n_;
  std::vector<double> values_;
};

// Elementwise a*x + b*y for tables of equal n.
SubsetTable LinearCombination(double a, const SubsetTable& x, double b,
                              const SubsetTable& y);

// g(S) = sum over T subset of S of f(T). O(n 2^n) lattice sweep.
SubsetTable ZetaTransform(const SubsetTable& f);

// f(S) = sum over T subset of S of (-1)^{|S|-|T|} g(T). Inverse of
// ZetaTransform.
SubsetTable MobiusTransform(const SubsetTable& g);

// h(T) = sum over S superset of T of u(S). Transpose of ZetaTransform when
// the zeta transform is viewed as the matrix J[S,T] = 1(T subset of S).
SubsetTable SupersetSumTransform(const SubsetTable& u);

// h(T) = sum over S superset of T of (-1)^{|S|-|T|} u(S). Transpose of
// MobiusTransform; used for gradients of L1 objectives on Mobius outputs.
SubsetTable SupersetMobiusTransform(const SubsetTable& u);

// g(S) = f(N \ S). Pure reindexing, involutive.
SubsetTable FlipComplement(const SubsetTable& f);

}  // namespace itable

#endif  // ITABLE_SUBSETS_H_
