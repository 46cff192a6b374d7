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

#ifndef ITABLE_DYNAMICS_H_
#define ITABLE_DYNAMICS_H_

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "itable/interactions.h"
#include "itable/metrics.h"
#include "itable/subsets.h"

namespace itable {

// Largest n for which 2^n x 2^n dense matrices are built.
inline constexpr int kMaxDenseVariables = 12;

// Throws NumericError (capacity) unless 1 <= n <= kMaxDenseVariables.
void CheckDenseCapacity(int n);

// J[S, T] = 1 iff T is a subset of S, rows and columns in canonical mask
// order. The same matrix for every model and every sample.
class TriggeringMatrix {
 public:
  explicit TriggeringMatrix(int n);

  int n() const { return n_; }
  bool operator()(Mask row, Mask col) const { return IsSubset(col, row); }

  // Throws NumericError when n exceeds kMaxDenseVariables.
  Eigen::MatrixXd Dense() const;
  // J^T J, whose (T, T') entry is 2^{n - |T u T'|}.
  Eigen::MatrixXd Gram() const;

  // J w (the zeta transform) and J^T r (the superset sum), matrix-free.
  SubsetTable Apply(const SubsetTable& w) const;
  SubsetTable ApplyTranspose(const SubsetTable& r) const;

 private:
  int n_;
};

// Per-interaction triggering-noise variances c_T = 2^|T| sigma^2.
struct NoiseSpec {
  double sigma2 = 0.0;
  SubsetTable c;
};

// Throws ConfigError on sigma2 < 0.
NoiseSpec NoiseVarianceVector(int n, double sigma2);

// M = (J^T J + 2^n diag(c))^{-1} J^T J together with its row norms.
struct SolutionMatrix {
  int n = 0;
  double sigma2 = 0.0;
  Eigen::MatrixXd m;
  // ||m_T||_2 per mask.
  std::vector<double> row_norms;
};

// Dense M via a Cholesky factorization of the system matrix, computed as
// I - A^{-1} 2^n diag(c). Throws NumericError if the factorization fails.
SolutionMatrix ComputeSolutionMatrix(int n, double sigma2);

// w_hat = M w_star without materializing M.
SubsetTable SolveOptimalWeights(const GroundTruthWeights& truth, double sigma2);

// Closed-form expectation of the noisy regression loss:
// (1/2^n) ||J w_star - J w||^2 + w^T diag(c) w.
double NoisyLoss(const SubsetTable& w, const GroundTruthWeights& truth,
                 double sigma2);

// (2/2^n) J^T (J w - J w_star) + 2 diag(c) w.
SubsetTable NoisyLossGradient(const SubsetTable& w,
                              const GroundTruthWeights& truth, double sigma2);

// Relative spread (max - min) / mean of row norms within each order 0..n.
std::vector<double> SameOrderSpread(const SolutionMatrix& solution);

// One row norm per order 0..n (the mean over the order). Throws
// InvariantError if some order's relative spread exceeds rel_tol.
std::vector<double> RowNormsByOrder(const SolutionMatrix& solution,
                                    double rel_tol = 1e-8);

// r^(k)(sigma2) = ||m_T|| / ||m_T'|| with |T| = k, |T'| = k + 1.
struct OrderRatioCurve {
  int n = 0;
  std::vector<double> sigma2;
  // ratio[g][k - 1] for grid point g and k = 1..n-1.
  std::vector<std::vector<double>> ratio;
};

// Throws ConfigError for an empty grid, negative values, or n < 2.
OrderRatioCurve ComputeOrderRatioCurve(int n, std::span<const double> grid);

// count points, log-spaced on [lo, hi].
std::vector<double> LogSpacedGrid(double lo, double hi, int count);
// 11 points on [1e-3, 1e2].
std::vector<double> DefaultSigma2Grid();

// Monte-Carlo statistics of the interaction noise caused by i.i.d. output
// noise N(0, sigma^2) on every masked sample.
struct NoisyInteractionStats {
  double sigma = 0.0;
  int trials = 0;
  SubsetTable mean;
  // Unbiased sample variance.
  SubsetTable variance;
};

// The Mobius transform of the output noise, including the empty set. Throws
// ConfigError on trials < 2 or sigma < 0.
NoisyInteractionStats SimulateNoisyInteraction(const MaskedOutputTable& table,
                                               double sigma, int trials,
                                               std::uint64_t seed);

struct ScheduleSegment {
  double sigma2 = 0.0;
  int steps = 0;
  double learning_rate = 0.0;
};

// Largest step for which gradient descent on NoisyLoss is monotone: one over
// the gradient's Lipschitz constant (2/2^n)(phi^{2n} + 2^n max c).
double StableLearningRate(int n, double sigma2);

struct TrajectoryCheckpoint {
  int segment = 0;
  double sigma2 = 0.0;
  SubsetTable weights;
  OrderDistribution distribution;
  double loss = 0.0;
};

struct TrajectoryRecord {
  std::vector<ScheduleSegment> schedule;
  SubsetTable initial_weights;
  OrderDistribution initial_distribution;
  // One checkpoint at the end of every segment.
  std::vector<TrajectoryCheckpoint> checkpoints;
  // losses[s] holds the loss before the first step of segment s and after
  // each of its steps.
  std::vector<std::vector<double>> losses;
};

// Gradient descent on NoisyLoss under a piecewise-constant sigma2 schedule.
// A step that would increase the loss is retried with half the learning rate.
// Throws ConfigError if the sigma2 values increase along the schedule.
TrajectoryRecord SimulateTrainingTrajectory(const SubsetTable& w_init,
                                            const GroundTruthWeights& truth,
                                            std::span<const ScheduleSegment>
                                                schedule);

}  // namespace itable

#endif  // ITABLE_DYNAMICS_H_
