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

#ifndef ITABLE_SPARSIFY_H_
#define ITABLE_SPARSIFY_H_

#include <cstdint>
#include <vector>

#include "itable/interactions.h"
#include "itable/subsets.h"

namespace itable {

// Split of one output table into an AND part and an OR part:
//   v_and(x_T) = 0.5 (v(x_T) - delta_T) + gamma_T
//   v_or(x_T)  = 0.5 (v(x_T) - delta_T) - gamma_T
// with the noise term bounded by |delta_T| <= zeta_bound.
struct Decomposition {
  SubsetTable gamma;
  SubsetTable delta;
  double zeta_bound = 0.0;

  int n() const { return gamma.n(); }
  SubsetTable VAnd(const SubsetTable& v) const;
  SubsetTable VOr(const SubsetTable& v) const;
};

// gamma = delta = 0, i.e. v_and = v_or = v / 2.
Decomposition EvenSplit(int n, double zeta_bound);

inline constexpr double kDefaultZetaFactor = 0.02;

// factor * |v(x_N) - v(x_0)|.
double DeltaBound(const MaskedOutputTable& table,
                  double factor = kDefaultZetaFactor);

// Interactions of the derived v_and / v_or views. v_empty is v(x_0) - delta_0.
AndOrInteractions ExtractInteractions(const Decomposition& dec,
                                      const MaskedOutputTable& table);

// sum_S |I_and(S)| + |I_or(S)|. Throws DimensionError on mismatched n and
// InvariantError if any |delta_T| exceeds the bound.
double SparsifyLoss(const Decomposition& dec, const MaskedOutputTable& table);

struct SparsifyConfig {
  int max_iters = 5000;
  // Primal step relative to the table's output scale; the dual step is
  // chosen so that the pair stays inside the stability region.
  double learning_rate = 1.0;
  // Stop once successive primal and dual iterates move less than this
  // (primal measured relative to the output scale).
  double convergence_tol = 1e-7;
  double zeta_factor = kDefaultZetaFactor;
  // Unused by the deterministic initialization.
  std::uint64_t seed = 0;

  // Throws ConfigError.
  void Validate() const;
};

struct SparsifyResult {
  Decomposition decomposition;
  // Best loss seen after each iteration, starting with the loss of the even
  // split; non-increasing.
  std::vector<double> loss_history;
  int iterations = 0;
  bool converged = false;

  double initial_loss() const { return loss_history.front(); }
  double final_loss() const { return loss_history.back(); }
};

// Minimizes SparsifyLoss over (gamma, delta) subject to |delta| <= zeta with a
// primal-dual proximal iteration, starting from the even split. Returns the
// best iterate. Throws NumericError if the iteration produces non-finite
// values.
SparsifyResult OptimizeDecomposition(const MaskedOutputTable& table,
                                     const SparsifyConfig& config = {});

}  // namespace itable

#endif  // ITABLE_SPARSIFY_H_
