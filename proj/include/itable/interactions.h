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

#ifndef ITABLE_INTERACTIONS_H_
#define ITABLE_INTERACTIONS_H_

#include <cstddef>
#include <string>
#include <vector>

#include "itable/subsets.h"

namespace itable {

// Model outputs v(x_S) on all 2^n masked versions of one sample.
struct MaskedOutputTable {
  std::string sample_id;
  SubsetTable v;

  int n() const { return v.n(); }
  // Output on the fully masked sample x_emptyset.
  double v_empty() const { return v[0]; }
  // Output on the unmasked sample x = x_N.
  double v_full() const { return v[FullMask(v.n())]; }
};

enum class InteractionKind { kAnd, kOr };

const char* KindName(InteractionKind kind);

// Per-subset interaction effects I(S|x). The entry at the empty set is
// always 0; the empty-sample output travels separately as v_empty.
struct InteractionVector {
  InteractionKind kind;
  SubsetTable effects;

  int n() const { return effects.n(); }
};

// AND and OR effects that jointly explain one output table.
struct AndOrInteractions {
  InteractionVector and_effects;
  InteractionVector or_effects;
  double v_empty = 0.0;
};

// Interactions the converged model must represent. The empty-set entry is the
// empty-sample output v(x_0).
struct GroundTruthWeights {
  SubsetTable w_star;

  int n() const { return w_star.n(); }
};

// I_and(S) = sum_{T subset S} (-1)^{|S|-|T|} v_and(x_T), with I_and(empty)=0.
InteractionVector AndInteractions(const SubsetTable& v_and);

// I_or(S) = -sum_{T subset S} (-1)^{|S|-|T|} v_or(x_{N\T}), with
// I_or(empty)=0.
InteractionVector OrInteractions(const SubsetTable& v_or);

// Both kinds from a split v = v_and + v_or. v_empty = v_and(x_0) + v_or(x_0).
AndOrInteractions ExtractAndOr(const SubsetTable& v_and,
                               const SubsetTable& v_or);

// v_empty + sum_{0 != T subset S} I_and(T) + sum_{T cap S != 0} I_or(T).
double ReconstructOutput(const InteractionVector& and_effects,
                         const InteractionVector& or_effects, double v_empty,
                         const VariableSet& subset);

// ReconstructOutput for every S at once, in O(n 2^n).
SubsetTable ReconstructAll(const InteractionVector& and_effects,
                           const InteractionVector& or_effects,
                           double v_empty);

struct SalientMember {
  VariableSet subset;
  InteractionKind kind;
  double effect;
};

// Omega = {S : |I(S)| >= tau}.
struct SalientSet {
  double threshold = 0.0;
  std::vector<SalientMember> members;
  // count_per_order[k] = number of members with |S| = k, k = 0..n.
  std::vector<std::size_t> count_per_order;

  std::size_t size() const { return members.size(); }
};

// Members of one vector whose magnitude reaches tau. The empty set never
// qualifies since its effect is defined as zero. Throws ConfigError on
// tau < 0 or NaN.
SalientSet FindSalient(const InteractionVector& effects, double tau);

// Union of the salient AND and OR effects under one shared threshold.
SalientSet FindSalient(const AndOrInteractions& effects, double tau);

}  // namespace itable

#endif  // ITABLE_INTERACTIONS_H_
