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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include "itable/errors.h"

namespace itable {
namespace {

// The objective is || A x + b ||_1 over x = (gamma, delta), where the rows of
// A x + b are the nonempty entries of the AND and OR interaction vectors.
struct Residual {
  SubsetTable and_part;
  SubsetTable or_part;
};

// Linear part: (Mobius(gamma - delta/2), Mobius(Flip(gamma + delta/2))).
Residual ApplyOperator(const SubsetTable& gamma, const SubsetTable& delta) {
  Residual r{MobiusTransform(LinearCombination(1.0, gamma, -0.5, delta)),
             MobiusTransform(
                 FlipComplement(LinearCombination(1.0, gamma, 0.5, delta)))};
  r.and_part[0] = 0.0;
  r.or_part[0] = 0.0;
  return r;
}

// Adjoint of ApplyOperator, returning (d/dgamma, d/ddelta).
std::pair<SubsetTable, SubsetTable> ApplyAdjoint(const Residual& y) {
  SubsetTable a = y.and_part;
  SubsetTable o = y.or_part;
  a[0] = 0.0;
  o[0] = 0.0;
  const SubsetTable sa = SupersetMobiusTransform(a);
  const SubsetTable so = FlipComplement(SupersetMobiusTransform(o));
  return {LinearCombination(1.0, sa, 1.0, so),
          LinearCombination(-0.5, sa, 0.5, so)};
}

double L1(const SubsetTable& t) {
  double s = 0.0;
  for (double x : t.values()) s += std::abs(x);
  return s;
}

// Largest singular value of the operator by power iteration on A^T A.
double OperatorNorm(int n) {
  SubsetTable g(n), d(n);
  for (Mask m = 0; m < g.size(); ++m) {
    // Deterministic start with components along every basis direction.
    g[m] = 1.0 + 0.01 * m;
    d[m] = 1.0 - 0.005 * m;
  }
  double norm = 0.0;
  for (int it = 0; it < 100; ++it) {
    const double len = std::sqrt(
        std::inner_product(g.values().begin(), g.values().end(),
                           g.values().begin(), 0.0) +
        std::inner_product(d.values().begin(), d.values().end(),
                           d.values().begin(), 0.0));
    for (double& x : g.mutable_values()) x /= len;
    for (double& x : d.mutable_values()) x /= len;
    auto [ng, nd] = ApplyAdjoint(ApplyOperator(g, d));
    double next = 0.0;
    for (Mask m = 0; m < g.size(); ++m) {
      next += ng[m] * g[m] + nd[m] * d[m];
    }
    g = std::move(ng);
    d = std::move(nd);
    if (std::abs(next - norm) <= 1e-12 * next) {
      norm = next;
      break;
    }
    norm = next;
  }
  // Small margin over the Rayleigh quotient, which approaches from below.
  return std::sqrt(norm) * 1.01;
}

}  // namespace

SubsetTable Decomposition::VAnd(const SubsetTable& v) const {
  SubsetTable out(v.n());
  for (Mask m = 0; m < out.size(); ++m) {
    out[m] = 0.5 * (v[m] - delta[m]) + gamma[m];
  }
  return out;
}

SubsetTable Decomposition::VOr(const SubsetTable& v) const {
  SubsetTable out(v.n());
  for (Mask m = 0; m < out.size(); ++m) {
    out[m] = 0.5 * (v[m] - delta[m]) - gamma[m];
  }
  return out;
}

Decomposition EvenSplit(int n, double zeta_bound) {
  return {SubsetTable(n), SubsetTable(n), zeta_bound};
}

double DeltaBound(const MaskedOutputTable& table, double factor) {
  return factor * std::abs(table.v_full() - table.v_empty());
}

AndOrInteractions ExtractInteractions(const Decomposition& dec,
                                      const MaskedOutputTable& table) {
  if (dec.n() != table.n() || dec.delta.n() != table.n()) {
    throw DimensionError("decomposition has n=" + std::to_string(dec.n()) +
                         " but table has n=" + std::to_string(table.n()));
  }
  return ExtractAndOr(dec.VAnd(table.v), dec.VOr(table.v));
}

double SparsifyLoss(const Decomposition& dec, const MaskedOutputTable& table) {
  for (double d : dec.delta.values()) {
    if (std::abs(d) > dec.zeta_bound) {
      throw InvariantError("noise term " + std::to_string(d) +
                           " exceeds bound " + std::to_string(dec.zeta_bound));
    }
  }
  const AndOrInteractions effects = ExtractInteractions(dec, table);
  return L1(effects.and_effects.effects) + L1(effects.or_effects.effects);
}

void SparsifyConfig::Validate() const {
  if (max_iters < 1) throw ConfigError("max_iters must be >= 1");
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
    throw ConfigError("learning_rate must be positive");
  }
  if (!(convergence_tol >= 0.0)) {
    throw ConfigError("convergence_tol must be >= 0");
  }
  if (!(zeta_factor >= 0.0)) throw ConfigError("zeta_factor must be >= 0");
}

SparsifyResult OptimizeDecomposition(const MaskedOutputTable& table,
                                     const SparsifyConfig& config) {
  config.Validate();
  table.v.CheckFinite();
  const int n = table.n();
  const double zeta = DeltaBound(table, config.zeta_factor);

  SparsifyResult result{EvenSplit(n, zeta), {}, 0, false};
  double best = SparsifyLoss(result.decomposition, table);
  result.loss_history.push_back(best);

  double scale = 0.0;
  for (double x : table.v.values()) scale = std::max(scale, std::abs(x));
  if (best == 0.0 || scale == 0.0) {
    result.converged = true;
    return result;
  }

  // Offset b of the affine residual A x + b: the interactions of the even
  // split.
  const AndOrInteractions base =
      ExtractInteractions(result.decomposition, table);
  const Residual offset{base.and_effects.effects, base.or_effects.effects};

  const double op_norm = OperatorNorm(n);
  const double tau = config.learning_rate * scale / op_norm;
  const double sigma = 0.99 / (tau * op_norm * op_norm);

  SubsetTable gamma(n), delta(n);
  SubsetTable gamma_bar(n), delta_bar(n);
  Residual dual{SubsetTable(n), SubsetTable(n)};

  for (int it = 1; it <= config.max_iters; ++it) {
    // Dual ascent followed by projection onto the unit infinity ball, which
    // is the prox of the conjugate of |.|.
    const Residual ax = ApplyOperator(gamma_bar, delta_bar);
    double dual_move = 0.0;
    auto ascend = [&](double& y, double a, double b) {
      const double next = std::clamp(y + sigma * (a + b), -1.0, 1.0);
      dual_move = std::max(dual_move, std::abs(next - y));
      y = next;
    };
    for (Mask m = 1; m < gamma.size(); ++m) {
      ascend(dual.and_part[m], ax.and_part[m], offset.and_part[m]);
      ascend(dual.or_part[m], ax.or_part[m], offset.or_part[m]);
    }

    // Primal descent; delta is projected onto its box.
    const auto [grad_gamma, grad_delta] = ApplyAdjoint(dual);
    double primal_move = 0.0;
    for (Mask m = 0; m < gamma.size(); ++m) {
      const double g = gamma[m] - tau * grad_gamma[m];
      const double d = std::clamp(delta[m] - tau * grad_delta[m], -zeta, zeta);
      if (!std::isfinite(g) || !std::isfinite(d)) {
        throw NumericError("non-finite iterate at iteration " +
                           std::to_string(it) + ", mask " + std::to_string(m));
      }
      primal_move = std::max(
          {primal_move, std::abs(g - gamma[m]), std::abs(d - delta[m])});
      gamma_bar[m] = 2.0 * g - gamma[m];
      delta_bar[m] = 2.0 * d - delta[m];
      gamma[m] = g;
      delta[m] = d;
    }

    const Decomposition candidate{gamma, delta, zeta};
    const double loss = SparsifyLoss(candidate, table);
    if (!std::isfinite(loss)) {
      throw NumericError("non-finite loss at iteration " + std::to_string(it));
    }
    if (loss < best) {
      best = loss;
      result.decomposition = candidate;
    }
    result.loss_history.push_back(best);
    result.iterations = it;
    if (primal_move <= config.convergence_tol * scale &&
        dual_move <= config.convergence_tol) {
      result.converged = true;
      break;
    }
  }
  return result;
}

}  // namespace itable
