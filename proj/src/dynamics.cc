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

#include "itable/dynamics.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "itable/errors.h"
#include "itable/random.h"

namespace itable {
namespace {

void CheckSigma2(double sigma2) {
  if (!(sigma2 >= 0.0) || !std::isfinite(sigma2)) {
    throw ConfigError("sigma2 must be finite and >= 0, got " +
                      std::to_string(sigma2));
  }
}

Eigen::VectorXd ToVector(const SubsetTable& t) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(t.size()));
  for (Mask m = 0; m < t.size(); ++m) out[m] = t[m];
  return out;
}

SubsetTable FromVector(int n, const Eigen::VectorXd& v) {
  return SubsetTable(n, std::vector<double>(v.data(), v.data() + v.size()));
}

// Cholesky factor of J^T J + 2^n diag(c).
Eigen::LLT<Eigen::MatrixXd> FactorSystem(int n, const NoiseSpec& noise) {
  Eigen::MatrixXd a = TriggeringMatrix(n).Gram();
  const double scale = static_cast<double>(TableSize(n));
  for (Mask m = 0; m < TableSize(n); ++m) a(m, m) += scale * noise.c[m];
  Eigen::LLT<Eigen::MatrixXd> llt(a);
  if (llt.info() != Eigen::Success) {
    throw NumericError("Cholesky factorization failed for n=" +
                       std::to_string(n) +
                       ", sigma2=" + std::to_string(noise.sigma2));
  }
  return llt;
}

double Dot(const SubsetTable& a, const SubsetTable& b) {
  return std::inner_product(a.values().begin(), a.values().end(),
                            b.values().begin(), 0.0);
}

}  // namespace

void CheckDenseCapacity(int n) {
  if (n < 1 || n > kMaxDenseVariables) {
    throw NumericError("dense matrices support 1 <= n <= " +
                       std::to_string(kMaxDenseVariables) + ", got n=" +
                       std::to_string(n));
  }
}

TriggeringMatrix::TriggeringMatrix(int n) : n_(n) { CheckVariableCount(n); }

Eigen::MatrixXd TriggeringMatrix::Dense() const {
  CheckDenseCapacity(n_);
  const auto size = static_cast<Eigen::Index>(TableSize(n_));
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(size, size);
  for (Mask s = 0; s < TableSize(n_); ++s) {
    for (Mask t = 0; t < TableSize(n_); ++t) {
      if ((*this)(s, t)) j(s, t) = 1.0;
    }
  }
  return j;
}

Eigen::MatrixXd TriggeringMatrix::Gram() const {
  CheckDenseCapacity(n_);
  const auto size = static_cast<Eigen::Index>(TableSize(n_));
  Eigen::MatrixXd g(size, size);
  for (Mask s = 0; s < TableSize(n_); ++s) {
    for (Mask t = 0; t < TableSize(n_); ++t) {
      g(s, t) = std::ldexp(1.0, n_ - Order(s | t));
    }
  }
  return g;
}

SubsetTable TriggeringMatrix::Apply(const SubsetTable& w) const {
  if (w.n() != n_) throw DimensionError("weights do not match J");
  return ZetaTransform(w);
}

SubsetTable TriggeringMatrix::ApplyTranspose(const SubsetTable& r) const {
  if (r.n() != n_) throw DimensionError("residual does not match J");
  return SupersetSumTransform(r);
}

NoiseSpec NoiseVarianceVector(int n, double sigma2) {
  CheckSigma2(sigma2);
  NoiseSpec spec{sigma2, SubsetTable(n)};
  for (Mask m = 0; m < spec.c.size(); ++m) {
    spec.c[m] = std::ldexp(sigma2, Order(m));
  }
  return spec;
}

SolutionMatrix ComputeSolutionMatrix(int n, double sigma2) {
  CheckDenseCapacity(n);
  const NoiseSpec noise = NoiseVarianceVector(n, sigma2);
  const auto llt = FactorSystem(n, noise);
  const auto size = static_cast<Eigen::Index>(TableSize(n));
  // A^{-1} J^T J = I - A^{-1} D with D = 2^n diag(c); exact at sigma2 = 0.
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(size, size);
  for (Mask m = 0; m < TableSize(n); ++m) {
    d(m, m) = static_cast<double>(TableSize(n)) * noise.c[m];
  }
  SolutionMatrix out{n, sigma2,
                     Eigen::MatrixXd::Identity(size, size) - llt.solve(d),
                     {}};
  if (!out.m.allFinite()) {
    throw NumericError("solution matrix has non-finite entries");
  }
  out.row_norms.resize(TableSize(n));
  for (Eigen::Index r = 0; r < size; ++r) out.row_norms[r] = out.m.row(r).norm();
  return out;
}

SubsetTable SolveOptimalWeights(const GroundTruthWeights& truth,
                                double sigma2) {
  const int n = truth.n();
  CheckDenseCapacity(n);
  const NoiseSpec noise = NoiseVarianceVector(n, sigma2);
  const auto llt = FactorSystem(n, noise);
  Eigen::VectorXd rhs = ToVector(truth.w_star);
  const double scale = static_cast<double>(TableSize(n));
  for (Mask m = 0; m < TableSize(n); ++m) rhs[m] *= scale * noise.c[m];
  const Eigen::VectorXd w_hat = ToVector(truth.w_star) - llt.solve(rhs);
  if (!w_hat.allFinite()) throw NumericError("non-finite optimal weights");
  return FromVector(n, w_hat);
}

double NoisyLoss(const SubsetTable& w, const GroundTruthWeights& truth,
                 double sigma2) {
  if (w.n() != truth.n()) throw DimensionError("weights and truth disagree on n");
  const NoiseSpec noise = NoiseVarianceVector(w.n(), sigma2);
  const SubsetTable residual =
      ZetaTransform(LinearCombination(1.0, truth.w_star, -1.0, w));
  double fit = Dot(residual, residual) / static_cast<double>(w.size());
  double penalty = 0.0;
  for (Mask m = 0; m < w.size(); ++m) penalty += noise.c[m] * w[m] * w[m];
  return fit + penalty;
}

SubsetTable NoisyLossGradient(const SubsetTable& w,
                              const GroundTruthWeights& truth, double sigma2) {
  if (w.n() != truth.n()) throw DimensionError("weights and truth disagree on n");
  const NoiseSpec noise = NoiseVarianceVector(w.n(), sigma2);
  SubsetTable grad = SupersetSumTransform(
      ZetaTransform(LinearCombination(1.0, w, -1.0, truth.w_star)));
  const double scale = 2.0 / static_cast<double>(w.size());
  for (Mask m = 0; m < w.size(); ++m) {
    grad[m] = scale * grad[m] + 2.0 * noise.c[m] * w[m];
  }
  return grad;
}

std::vector<double> SameOrderSpread(const SolutionMatrix& solution) {
  const int n = solution.n;
  std::vector<double> lo(n + 1, INFINITY), hi(n + 1, 0.0), sum(n + 1, 0.0);
  std::vector<int> count(n + 1, 0);
  for (Mask m = 0; m < solution.row_norms.size(); ++m) {
    const int k = Order(m);
    const double r = solution.row_norms[m];
    lo[k] = std::min(lo[k], r);
    hi[k] = std::max(hi[k], r);
    sum[k] += r;
    ++count[k];
  }
  std::vector<double> spread(n + 1);
  for (int k = 0; k <= n; ++k) {
    const double mean = sum[k] / count[k];
    spread[k] = mean > 0.0 ? (hi[k] - lo[k]) / mean : 0.0;
  }
  return spread;
}

std::vector<double> RowNormsByOrder(const SolutionMatrix& solution,
                                    double rel_tol) {
  const std::vector<double> spread = SameOrderSpread(solution);
  std::vector<double> sum(solution.n + 1, 0.0);
  std::vector<int> count(solution.n + 1, 0);
  for (Mask m = 0; m < solution.row_norms.size(); ++m) {
    sum[Order(m)] += solution.row_norms[m];
    ++count[Order(m)];
  }
  std::vector<double> out(solution.n + 1);
  for (int k = 0; k <= solution.n; ++k) {
    if (spread[k] > rel_tol) {
      throw InvariantError("row norms of order " + std::to_string(k) +
                           " disagree: relative spread " +
                           std::to_string(spread[k]));
    }
    out[k] = sum[k] / count[k];
  }
  return out;
}

OrderRatioCurve ComputeOrderRatioCurve(int n, std::span<const double> grid) {
  if (n < 2) throw ConfigError("order ratios need n >= 2");
  if (grid.empty()) throw ConfigError("sigma2 grid is empty");
  for (double s : grid) CheckSigma2(s);
  OrderRatioCurve curve{n, {grid.begin(), grid.end()}, {}};
  for (double sigma2 : grid) {
    const std::vector<double> norms =
        RowNormsByOrder(ComputeSolutionMatrix(n, sigma2));
    std::vector<double> row(n - 1);
    for (int k = 1; k < n; ++k) row[k - 1] = norms[k] / norms[k + 1];
    curve.ratio.push_back(std::move(row));
  }
  return curve;
}

std::vector<double> LogSpacedGrid(double lo, double hi, int count) {
  if (!(lo > 0.0) || !(hi >= lo) || count < 1) {
    throw ConfigError("log grid needs 0 < lo <= hi and count >= 1");
  }
  std::vector<double> out(count);
  const double a = std::log10(lo), b = std::log10(hi);
  for (int i = 0; i < count; ++i) {
    out[i] = count == 1 ? lo : std::pow(10.0, a + (b - a) * i / (count - 1));
  }
  return out;
}

std::vector<double> DefaultSigma2Grid() { return LogSpacedGrid(1e-3, 1e2, 11); }

NoisyInteractionStats SimulateNoisyInteraction(const MaskedOutputTable& table,
                                               double sigma, int trials,
                                               std::uint64_t seed) {
  if (trials < 2) throw ConfigError("need at least 2 trials");
  if (!(sigma >= 0.0)) throw ConfigError("sigma must be >= 0");
  table.v.CheckFinite();
  const int n = table.n();
  const SubsetTable clean = MobiusTransform(table.v);
  Rng rng(seed);
  // Welford accumulation of I(noisy) - I(clean).
  SubsetTable mean(n), m2(n), noisy(n);
  for (int t = 1; t <= trials; ++t) {
    for (Mask m = 0; m < noisy.size(); ++m) {
      noisy[m] = table.v[m] + sigma * rng.Normal();
    }
    const SubsetTable effect = MobiusTransform(noisy);
    for (Mask m = 0; m < noisy.size(); ++m) {
      const double x = effect[m] - clean[m];
      const double d = x - mean[m];
      mean[m] += d / t;
      m2[m] += d * (x - mean[m]);
    }
  }
  for (double& x : m2.mutable_values()) x /= (trials - 1);
  return {sigma, trials, std::move(mean), std::move(m2)};
}

double StableLearningRate(int n, double sigma2) {
  CheckSigma2(sigma2);
  const double size = std::ldexp(1.0, n);
  const double gram_max = std::pow((3.0 + std::sqrt(5.0)) / 2.0, n);
  const double lipschitz =
      2.0 / size * (gram_max + size * std::ldexp(sigma2, n));
  return 1.0 / lipschitz;
}

TrajectoryRecord SimulateTrainingTrajectory(
    const SubsetTable& w_init, const GroundTruthWeights& truth,
    std::span<const ScheduleSegment> schedule) {
  const int n = truth.n();
  if (w_init.n() != n) throw DimensionError("w_init and truth disagree on n");
  CheckDenseCapacity(n);
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    CheckSigma2(schedule[i].sigma2);
    if (schedule[i].steps < 0 || !(schedule[i].learning_rate > 0.0)) {
      throw ConfigError("segment " + std::to_string(i) +
                        " needs steps >= 0 and learning_rate > 0");
    }
    if (i > 0 && schedule[i].sigma2 > schedule[i - 1].sigma2) {
      throw ConfigError("sigma2 schedule must be non-increasing");
    }
  }

  TrajectoryRecord record{{schedule.begin(), schedule.end()},
                          w_init,
                          TheoDistribution(w_init),
                          {},
                          {}};
  SubsetTable w = w_init;
  for (std::size_t s = 0; s < schedule.size(); ++s) {
    const ScheduleSegment& seg = schedule[s];
    double lr = seg.learning_rate;
    double loss = NoisyLoss(w, truth, seg.sigma2);
    std::vector<double> losses{loss};
    losses.reserve(seg.steps + 1);
    for (int step = 0; step < seg.steps; ++step) {
      const SubsetTable grad = NoisyLossGradient(w, truth, seg.sigma2);
      SubsetTable next = LinearCombination(1.0, w, -lr, grad);
      double next_loss = NoisyLoss(next, truth, seg.sigma2);
      while (next_loss > loss && lr > 1e-300) {
        lr *= 0.5;
        next = LinearCombination(1.0, w, -lr, grad);
        next_loss = NoisyLoss(next, truth, seg.sigma2);
      }
      if (!std::isfinite(next_loss)) {
        throw NumericError("non-finite loss in segment " + std::to_string(s));
      }
      if (next_loss <= loss) {
        w = std::move(next);
        loss = next_loss;
      }
      losses.push_back(loss);
    }
    record.checkpoints.push_back({static_cast<int>(s) + 1, seg.sigma2, w,
                                  TheoDistribution(w), loss});
    record.losses.push_back(std::move(losses));
  }
  return record;
}

}  // namespace itable
