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

#include "itable/interactions.h"

#include <cmath>
#include <string>

#include "itable/errors.h"

namespace itable {
namespace {

void CheckSameN(const InteractionVector& a, const InteractionVector& b) {
  if (a.n() != b.n()) {
    throw DimensionError("AND/OR vectors disagree on n: " +
                         std::to_string(a.n()) + " vs " +
                         std::to_string(b.n()));
  }
}

void AppendSalient(const InteractionVector& v, double tau, SalientSet& out) {
  for (Mask m = 1; m < v.effects.size(); ++m) {
    const double effect = v.effects[m];
    if (std::abs(effect) >= tau) {
      out.members.push_back({VariableSet(v.n(), m), v.kind, effect});
      ++out.count_per_order[Order(m)];
    }
  }
}

void CheckTau(double tau) {
  if (!(tau >= 0.0)) {
    throw ConfigError("salience threshold must be >= 0, got " +
                      std::to_string(tau));
  }
}

}  // namespace

const char* KindName(InteractionKind kind) {
  return kind == InteractionKind::kAnd ? "and" : "or";
}

InteractionVector AndInteractions(const SubsetTable& v_and) {
  InteractionVector out{InteractionKind::kAnd, MobiusTransform(v_and)};
  out.effects[0] = 0.0;
  return out;
}

InteractionVector OrInteractions(const SubsetTable& v_or) {
  InteractionVector out{InteractionKind::kOr,
                        MobiusTransform(FlipComplement(v_or))};
  for (double& e : out.effects.mutable_values()) e = -e;
  out.effects[0] = 0.0;
  return out;
}

AndOrInteractions ExtractAndOr(const SubsetTable& v_and,
                               const SubsetTable& v_or) {
  if (v_and.n() != v_or.n()) {
    throw DimensionError("v_and and v_or disagree on n");
  }
  return {AndInteractions(v_and), OrInteractions(v_or), v_and[0] + v_or[0]};
}

double ReconstructOutput(const InteractionVector& and_effects,
                         const InteractionVector& or_effects, double v_empty,
                         const VariableSet& subset) {
  CheckSameN(and_effects, or_effects);
  if (subset.n() != and_effects.n()) {
    throw DimensionError("subset and interaction vectors disagree on n");
  }
  const Mask s = subset.bits();
  double out = v_empty;
  for (Mask t = 1; t < and_effects.effects.size(); ++t) {
    if (IsSubset(t, s)) out += and_effects.effects[t];
    if (t & s) out += or_effects.effects[t];
  }
  return out;
}

SubsetTable ReconstructAll(const InteractionVector& and_effects,
                           const InteractionVector& or_effects,
                           double v_empty) {
  CheckSameN(and_effects, or_effects);
  const int n = and_effects.n();
  // Sum over T intersecting S equals the total minus the sum over
  // T subset of N\S.
  SubsetTable and_part = ZetaTransform(and_effects.effects);
  SubsetTable or_within = ZetaTransform(or_effects.effects);
  const Mask full = FullMask(n);
  const double or_total = or_within[full];
  SubsetTable out(n);
  for (Mask s = 0; s < out.size(); ++s) {
    out[s] = v_empty + and_part[s] + (or_total - or_within[full & ~s]);
  }
  return out;
}

SalientSet FindSalient(const InteractionVector& effects, double tau) {
  CheckTau(tau);
  SalientSet out;
  out.threshold = tau;
  out.count_per_order.assign(effects.n() + 1, 0);
  AppendSalient(effects, tau, out);
  return out;
}

SalientSet FindSalient(const AndOrInteractions& effects, double tau) {
  CheckSameN(effects.and_effects, effects.or_effects);
  SalientSet out = FindSalient(effects.and_effects, tau);
  AppendSalient(effects.or_effects, tau, out);
  return out;
}

}  // namespace itable
