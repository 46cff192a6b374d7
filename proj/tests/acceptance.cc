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

// Acceptance suite: one line per criterion, nonzero exit on any failure.
// Pass criterion names as arguments to run a subset.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "itable/dynamics.h"
#include "itable/errors.h"
#include "itable/interactions.h"
#include "itable/metrics.h"
#include "itable/sparsify.h"
#include "itable/subsets.h"
#include "itable/synth.h"
#include "oracles.h"

namespace itable {
namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void Require(bool ok, const std::string& what) {
    if (!ok && pass) detail = "first failure: " + what + "; " + detail;
    pass &= ok;
  }
};

std::string Fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", x);
  return buf;
}

double MaxAbsDiff(const SubsetTable& a, const std::vector<double>& b) {
  double out = 0.0;
  for (std::size_t i = 0; i < b.size(); ++i) {
    out = std::max(out, std::fabs(a.values()[i] - b[i]));
  }
  return out;
}

double MaxAbs(const std::vector<double>& v) {
  double out = 0.0;
  for (double x : v) out = std::max(out, std::fabs(x));
  return out;
}

// Dense w* with every entry N(0, 1).
GroundTruthWeights RandomTruth(int n, std::mt19937_64& gen) {
  return {SubsetTable(n, oracle::RandomValues(TableSize(n), gen))};
}

// One positive effect per order 1..n.
GroundTruthWeights LadderTruth(int n, std::uint64_t seed) {
  GroundTruthSpec spec{n, {}, SignPolicy::kPositive, 0.0, seed};
  for (int k = 1; k <= n; ++k) spec.orders.push_back({k, 1, 0.5, 1.5});
  return GenerateGroundTruth(spec);
}

Outcome NoiseFreeRecovery() {
  Outcome out;
  const int n = 10;
  std::mt19937_64 gen(101);
  double worst = 0.0, gradient = 0.0, direct = 0.0;
  const Eigen::MatrixXd direct_m = oracle::DirectSolutionMatrix(n, 0.0);
  for (int trial = 0; trial < 20; ++trial) {
    const GroundTruthWeights truth = RandomTruth(n, gen);
    const std::vector<double> w_star(truth.w_star.values().begin(),
                                     truth.w_star.values().end());
    const SubsetTable w_hat = SolveOptimalWeights(truth, 0.0);
    worst = std::max(worst, MaxAbsDiff(w_hat, w_star));
    const SubsetTable g = NoisyLossGradient(w_hat, truth, 0.0);
    gradient = std::max(gradient, MaxAbs({g.values().begin(), g.values().end()}));
    const Eigen::VectorXd x =
        direct_m * Eigen::Map<const Eigen::VectorXd>(w_star.data(), w_star.size());
    direct = std::max(direct, MaxAbsDiff(SubsetTable(n, {x.data(), x.data() + x.size()}),
                                         w_star));
  }
  out.Require(worst < 1e-8, "max |w_hat - w*| = " + Fmt(worst));
  out.Require(gradient < 1e-8, "gradient at w_hat = " + Fmt(gradient));
  out.detail += "n=10 trials=20 max|w_hat-w*|=" + Fmt(worst) +
                " max|grad|=" + Fmt(gradient) +
                " (info: dense LU solve error " + Fmt(direct) + ")";
  return out;
}

std::vector<double> RowNorms(const Eigen::MatrixXd& m) {
  std::vector<double> out(m.rows());
  for (Eigen::Index r = 0; r < m.rows(); ++r) out[r] = m.row(r).norm();
  return out;
}

double Spread(const std::vector<double>& norms, int n) {
  double worst = 0.0;
  for (int k = 0; k <= n; ++k) {
    double lo = INFINITY, hi = 0.0, sum = 0.0;
    int count = 0;
    for (Mask m = 0; m < norms.size(); ++m) {
      if (Order(m) != k) continue;
      lo = std::min(lo, norms[m]);
      hi = std::max(hi, norms[m]);
      sum += norms[m];
      ++count;
    }
    const double mean = sum / count;
    if (mean > 0.0) worst = std::max(worst, (hi - lo) / mean);
  }
  return worst;
}

Outcome SameOrderRowNorms() {
  Outcome out;
  const int n = 8;
  for (double sigma2 : {0.01, 1.0, 100.0}) {
    const SolutionMatrix sol = ComputeSolutionMatrix(n, sigma2);
    const std::vector<double> spread = SameOrderSpread(sol);
    const double lib = *std::max_element(spread.begin(), spread.end());
    const double ref = Spread(RowNorms(oracle::DirectSolutionMatrix(n, sigma2)), n);
    const double gap = (sol.m - oracle::DirectSolutionMatrix(n, sigma2))
                           .cwiseAbs()
                           .maxCoeff();
    out.Require(lib < 1e-8 && ref < 1e-8,
                "spread at sigma2=" + Fmt(sigma2) + " is " + Fmt(lib));
    out.Require(gap < 1e-9, "matrix differs from direct solve by " + Fmt(gap));
    out.detail += "sigma2=" + Fmt(sigma2) + " spread=" + Fmt(lib) +
                  " direct=" + Fmt(ref) + "  ";
  }
  return out;
}

Outcome OrderRatioCurves() {
  Outcome out;
  const std::vector<double> grid = DefaultSigma2Grid();
  for (int n : {4, 6, 8, 10}) {
    const OrderRatioCurve curve = ComputeOrderRatioCurve(n, grid);
    double min_ratio = INFINITY, worst_gap = 0.0;
    bool monotone = true;
    for (std::size_t g = 0; g < grid.size(); ++g) {
      // Cross-check against row norms of the directly solved matrix.
      std::vector<double> by_order(n + 1, 0.0);
      const std::vector<double> norms =
          RowNorms(oracle::DirectSolutionMatrix(n, grid[g]));
      for (Mask m = 0; m < norms.size(); ++m) by_order[Order(m)] = norms[m];
      for (int k = 1; k < n; ++k) {
        const double r = curve.ratio[g][k - 1];
        min_ratio = std::min(min_ratio, r);
        worst_gap = std::max(
            worst_gap, std::fabs(r - by_order[k] / by_order[k + 1]) / r);
        if (g > 0) monotone &= r >= curve.ratio[g - 1][k - 1];
      }
    }
    out.Require(min_ratio > 1.0, "n=" + std::to_string(n) + " ratio " +
                                     Fmt(min_ratio) + " <= 1");
    out.Require(monotone, "n=" + std::to_string(n) + " not monotone");
    out.Require(worst_gap < 1e-8,
                "n=" + std::to_string(n) + " differs from direct solve");
    out.detail += "n=" + std::to_string(n) + " min_r=" + Fmt(min_ratio) +
                  (monotone ? " monotone " : " NOT monotone ");
  }
  return out;
}

Outcome NoisyInteractionVariance() {
  Outcome out;
  const int n = 5, trials = 100000;
  const double sigma = 0.1;
  std::mt19937_64 gen(7);
  const MaskedOutputTable table{
      "mc", SubsetTable(n, oracle::RandomValues(TableSize(n), gen))};
  const NoisyInteractionStats stats =
      SimulateNoisyInteraction(table, sigma, trials, 2024);
  double lo = INFINITY, hi = 0.0, worst_z = 0.0;
  for (Mask m = 0; m < stats.mean.size(); ++m) {
    const double expected = std::ldexp(sigma * sigma, Order(m));
    const double ratio = stats.variance[m] / expected;
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
    const double se = std::sqrt(stats.variance[m] / trials);
    worst_z = std::max(worst_z, std::fabs(stats.mean[m]) / se);
  }
  out.Require(lo >= 0.9 && hi <= 1.1, "variance ratio outside [0.9, 1.1]");
  out.Require(worst_z < 5.0, "mean beyond 5 standard errors");
  out.detail += "var/(2^|T| sigma^2) in [" + Fmt(lo) + ", " + Fmt(hi) +
                "] max|mean|/SE=" + Fmt(worst_z);
  return out;
}

Outcome UniversalMatching() {
  Outcome out;
  const int n = 8;
  std::mt19937_64 gen(11);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const auto raw = oracle::RandomValues(TableSize(n), gen);
    const auto gamma = oracle::RandomValues(TableSize(n), gen);
    const MaskedOutputTable table{"m", SubsetTable(n, raw)};
    const Decomposition dec{SubsetTable(n, gamma), SubsetTable(n), 0.0};
    const AndOrInteractions effects = ExtractInteractions(dec, table);
    // Literal sums over AND subsets and OR intersecting sets.
    for (Mask s = 0; s < TableSize(n); ++s) {
      double total = effects.v_empty;
      for (Mask t = 1; t < TableSize(n); ++t) {
        if (IsSubset(t, s)) total += effects.and_effects.effects[t];
        if (t & s) total += effects.or_effects.effects[t];
      }
      worst = std::max(worst, std::fabs(total - raw[s]));
      worst = std::max(
          worst, std::fabs(ReconstructOutput(effects.and_effects,
                                             effects.or_effects,
                                             effects.v_empty,
                                             VariableSet(n, s)) -
                           raw[s]));
    }
  }
  out.Require(worst < 1e-9, "max error " + Fmt(worst));
  out.detail += "tables=50 n=8 max_err=" + Fmt(worst);
  return out;
}

Outcome MobiusAxioms() {
  Outcome out;
  std::mt19937_64 gen(13);
  double round_trip = 0.0, vs_oracle = 0.0, efficiency = 0.0, linearity = 0.0,
         dummy = 0.0, symmetry = 0.0, anonymity = 0.0, recursive = 0.0,
         distribution = 0.0;
  for (int n = 1; n <= 6; ++n) {
    const std::size_t size = TableSize(n);
    for (int trial = 0; trial < 5; ++trial) {
      const auto raw = oracle::RandomValues(size, gen);
      const auto raw2 = oracle::RandomValues(size, gen);
      const SubsetTable v(n, raw), v2(n, raw2);
      round_trip = std::max(round_trip,
                            MaxAbsDiff(MobiusTransform(ZetaTransform(v)), raw));
      round_trip = std::max(round_trip,
                            MaxAbsDiff(ZetaTransform(MobiusTransform(v)), raw));
      vs_oracle = std::max({vs_oracle,
                            MaxAbsDiff(ZetaTransform(v), oracle::Zeta(raw)),
                            MaxAbsDiff(MobiusTransform(v), oracle::Mobius(raw)),
                            MaxAbsDiff(AndInteractions(v).effects,
                                       oracle::AndEffects(raw)),
                            MaxAbsDiff(OrInteractions(v).effects,
                                       oracle::OrEffects(raw))});

      for (auto extract : {&AndInteractions, &OrInteractions}) {
        const InteractionVector e = extract(v);
        const double total = std::accumulate(e.effects.values().begin(),
                                             e.effects.values().end(), 0.0);
        efficiency =
            std::max(efficiency, std::fabs(total - (v[FullMask(n)] - v[0])));

        const SubsetTable mix = LinearCombination(2.5, v, -0.75, v2);
        const SubsetTable expected = LinearCombination(
            2.5, e.effects, -0.75, extract(v2).effects);
        linearity = std::max(
            linearity, MaxAbsDiff(extract(mix).effects,
                                  {expected.values().begin(),
                                   expected.values().end()}));

        if (n < 6) {
          // A variable that never changes the output carries no effect.
          SubsetTable extended(n + 1);
          for (Mask m = 0; m < extended.size(); ++m) {
            extended[m] = v[m & FullMask(n)];
          }
          const InteractionVector big = extract(extended);
          for (Mask m = 1; m < extended.size(); ++m) {
            const double want = (m >> n & 1u) ? 0.0 : e.effects[m];
            dummy = std::max(dummy, std::fabs(big.effects[m] - want));
          }
        }

        std::vector<int> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), gen);
        const auto permute = [&](Mask m) {
          Mask p = 0;
          for (int i = 0; i < n; ++i) {
            if (m >> i & 1u) p |= Mask{1} << perm[i];
          }
          return p;
        };
        SubsetTable relabeled(n);
        for (Mask m = 0; m < size; ++m) relabeled[permute(m)] = v[m];
        const InteractionVector re = extract(relabeled);
        for (Mask m = 0; m < size; ++m) {
          anonymity =
              std::max(anonymity, std::fabs(re.effects[permute(m)] - e.effects[m]));
        }

        if (n >= 2) {
          // Symmetrize variables 0 and 1; their effects then coincide.
          const auto swap01 = [](Mask m) {
            return (m & ~Mask{3}) | ((m & 1u) << 1) | ((m >> 1) & 1u);
          };
          SubsetTable sym(n);
          for (Mask m = 0; m < size; ++m) sym[m] = v[m] + v[swap01(m)];
          const InteractionVector se = extract(sym);
          for (Mask m = 0; m < size; ++m) {
            if ((m & 3u) == 0) {
              symmetry = std::max(
                  symmetry, std::fabs(se.effects[m | 1u] - se.effects[m | 2u]));
            }
          }
        }
      }

      const InteractionVector base = AndInteractions(v);
      for (int i = 0; i < n; ++i) {
        const Mask bit = Mask{1} << i;
        SubsetTable present(n);
        for (Mask m = 0; m < size; ++m) present[m] = v[m | bit];
        const InteractionVector cond = AndInteractions(present);
        for (Mask s = 1; s < size; ++s) {
          if (s & bit) continue;
          recursive = std::max(
              recursive, std::fabs(base.effects[s | bit] -
                                   (cond.effects[s] - base.effects[s])));
        }
      }
    }
    for (Mask t = 1; t < TableSize(n); ++t) {
      SubsetTable unanimity(n);
      for (Mask s = 0; s < unanimity.size(); ++s) {
        unanimity[s] = IsSubset(t, s) ? 2.0 : 0.0;
      }
      const InteractionVector e = AndInteractions(unanimity);
      for (Mask s = 1; s < unanimity.size(); ++s) {
        distribution = std::max(
            distribution, std::fabs(e.effects[s] - (s == t ? 2.0 : 0.0)));
      }
    }
  }
  const auto check = [&](const char* name, double value, double limit) {
    out.Require(value <= limit, std::string(name) + " = " + Fmt(value));
    out.detail += std::string(name) + "=" + Fmt(value) + " ";
  };
  check("round_trip", round_trip, 1e-10);
  check("oracle", vs_oracle, 1e-10);
  check("efficiency", efficiency, 1e-10);
  check("linearity", linearity, 1e-10);
  check("dummy", dummy, 1e-10);
  check("symmetry", symmetry, 1e-10);
  check("anonymity", anonymity, 1e-10);
  check("recursive", recursive, 1e-10);
  check("distribution", distribution, 1e-12);
  return out;
}

Outcome SparsifyOracle() {
  Outcome out;
  std::mt19937_64 gen(17);
  std::uniform_real_distribution<double> magnitude(1.0, 3.0);
  double worst = 0.0;
  int functions = 0;
  bool monotone = true;
  for (int n = 1; n <= 3; ++n) {
    const std::size_t size = TableSize(n);
    // Single AND patterns, then sums of two.
    std::vector<std::vector<double>> cases;
    for (Mask t = 1; t < size; ++t) {
      for (Mask u = t; u < size; ++u) {
        const double a = magnitude(gen) * (gen() & 1 ? 1.0 : -1.0);
        const double b = u == t ? 0.0 : magnitude(gen) * (gen() & 1 ? 1.0 : -1.0);
        std::vector<double> v(size, 0.0);
        for (Mask s = 0; s < size; ++s) {
          v[s] = (IsSubset(t, s) ? a : 0.0) + (IsSubset(u, s) ? b : 0.0);
        }
        cases.push_back(std::move(v));
      }
    }
    for (const auto& v : cases) {
      const double best = n <= 2 ? oracle::GridSparsityOptimum(v)
                                 : oracle::ExactSparsityOptimum(v);
      const SparsifyResult r = OptimizeDecomposition({"f", SubsetTable(n, v)});
      worst = std::max(worst, std::fabs(r.final_loss() - best) / best);
      for (std::size_t i = 1; i < r.loss_history.size(); ++i) {
        monotone &= r.loss_history[i] <= r.loss_history[i - 1];
      }
      ++functions;
    }
  }
  out.Require(worst <= 0.05, "relative gap " + Fmt(worst));
  out.Require(monotone, "loss history increased");
  out.detail += "functions=" + std::to_string(functions) +
                " max_rel_gap=" + Fmt(worst) +
                (monotone ? " loss non-increasing" : " loss INCREASED");
  return out;
}

Outcome TwoPhaseShape() {
  Outcome out;
  const int n = 10;
  std::vector<double> schedule_sigma2 = DefaultSigma2Grid();
  std::sort(schedule_sigma2.rbegin(), schedule_sigma2.rend());

  int monotone_seeds = 0;
  const int seeds = 5;
  for (std::uint64_t seed = 1; seed <= seeds; ++seed) {
    const GroundTruthWeights truth = LadderTruth(n, seed);
    double previous = 0.0;
    bool monotone = true;
    for (double sigma2 : schedule_sigma2) {
      const OrderDistribution d =
          TheoDistribution(SolveOptimalWeights(truth, sigma2));
      if (d.empty) continue;
      monotone &= MeanOrder(d) >= previous - 1e-12;
      previous = MeanOrder(d);
    }
    const double final_mean = MeanOrder(TheoDistribution(truth.w_star));
    monotone &= final_mean >= previous - 1e-12;
    monotone_seeds += monotone;
  }
  out.Require(monotone_seeds == seeds, "mean order decreased");
  out.detail += "mean order monotone for " + std::to_string(monotone_seeds) +
                "/" + std::to_string(seeds) + " ladders; ";

  // Gradient descent through the same schedule. Steps per segment follow the
  // conditioning bound of the noisy quadratic.
  const GroundTruthWeights truth = LadderTruth(n, 1);
  const double phi2n = std::pow((3.0 + std::sqrt(5.0)) / 2.0, n);
  const double size = static_cast<double>(TableSize(n));
  std::vector<ScheduleSegment> schedule;
  for (double sigma2 : schedule_sigma2) {
    const double kappa =
        (phi2n + size * size * sigma2) / (size * sigma2 + 1.0 / phi2n);
    schedule.push_back({sigma2, static_cast<int>(std::ceil(25.0 * kappa)),
                        StableLearningRate(n, sigma2)});
  }
  const TrajectoryRecord record =
      SimulateTrainingTrajectory(SpindleInitialization(n, 5), truth, schedule);
  double worst = 0.0;
  for (const TrajectoryCheckpoint& c : record.checkpoints) {
    const OrderDistribution expected =
        TheoDistribution(SolveOptimalWeights(truth, c.sigma2));
    out.Require(c.distribution.empty == expected.empty,
                "empty flag differs at sigma2=" + Fmt(c.sigma2));
    const double scale = std::max(MaxAbs(expected.strength), 1e-300);
    double gap = 0.0;
    for (int k = 1; k <= n; ++k) {
      gap = std::max(gap, std::fabs(c.distribution.at(k) - expected.at(k)));
    }
    worst = std::max(worst, gap / scale);
  }
  out.Require(worst <= 1e-3, "trajectory distribution gap " + Fmt(worst));
  out.detail += "segments=" + std::to_string(record.checkpoints.size()) +
                " max_rel_gap=" + Fmt(worst);
  return out;
}

struct FitCounts {
  int exact = 0, exact_total = 0, bracketed = 0, bracket_total = 0;
};

FitCounts CountFits(const GroundTruthWeights& truth,
                    const std::vector<double>& grid) {
  FitCounts c;
  // Grid points with identical predicted distributions tie; ties go to the
  // smaller sigma2.
  for (std::size_t g = 0; g < grid.size(); ++g) {
    const SigmaFit fit = FitSigma(
        TheoDistribution(SolveOptimalWeights(truth, grid[g])), truth, grid);
    const auto first_zero =
        std::find(fit.curve.begin(), fit.curve.end(), 0.0) - fit.curve.begin();
    c.exact += fit.curve[g] == 0.0 && fit.sigma2_star == grid[first_zero] &&
               static_cast<std::size_t>(first_zero) <= g;
    ++c.exact_total;
  }
  for (std::size_t g = 0; g + 1 < grid.size(); ++g) {
    const double target = std::sqrt(grid[g] * grid[g + 1]);
    const SigmaFit fit = FitSigma(
        TheoDistribution(SolveOptimalWeights(truth, target)), truth, grid);
    c.bracketed += fit.sigma2_star == grid[g] ||
                   fit.sigma2_star == grid[g + 1] ||
                   fit.distance == std::min(fit.curve[g], fit.curve[g + 1]);
    ++c.bracket_total;
  }
  return c;
}

Outcome SigmaFitRoundTrip() {
  Outcome out;
  const int n = 8;
  const std::vector<double> grid = DefaultSigma2Grid();
  FitCounts ladder;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const FitCounts c = CountFits(LadderTruth(n, seed), grid);
    ladder.exact += c.exact;
    ladder.exact_total += c.exact_total;
    ladder.bracketed += c.bracketed;
    ladder.bracket_total += c.bracket_total;
  }
  out.Require(ladder.exact == ladder.exact_total, "grid point missed");
  out.Require(ladder.bracketed == ladder.bracket_total,
              "off-grid target outside its bracket");
  // Not gated: dense Gaussian w* has effects near the threshold, and the
  // distance curve need not be unimodal.
  std::mt19937_64 gen(23);
  FitCounts dense;
  for (int t = 0; t < 10; ++t) {
    const FitCounts c = CountFits(RandomTruth(n, gen), grid);
    dense.exact += c.exact;
    dense.exact_total += c.exact_total;
    dense.bracketed += c.bracketed;
    dense.bracket_total += c.bracket_total;
  }
  out.detail += "ladders=10 exact " + std::to_string(ladder.exact) + "/" +
                std::to_string(ladder.exact_total) + " bracketed " +
                std::to_string(ladder.bracketed) + "/" +
                std::to_string(ladder.bracket_total) +
                "; info, dense gaussian w*: exact " +
                std::to_string(dense.exact) + "/" +
                std::to_string(dense.exact_total) + " bracketed " +
                std::to_string(dense.bracketed) + "/" +
                std::to_string(dense.bracket_total);
  return out;
}

struct Criterion {
  const char* name;
  double budget_seconds;
  std::function<Outcome()> run;
};

}  // namespace
}  // namespace itable

int main(int argc, char** argv) {
  using itable::Criterion;
  const std::vector<Criterion> criteria{
      {"noise_free_recovery", 30, itable::NoiseFreeRecovery},
      {"same_order_row_norms", 60, itable::SameOrderRowNorms},
      {"order_ratio_curves", 300, itable::OrderRatioCurves},
      {"noisy_interaction_variance", 120, itable::NoisyInteractionVariance},
      {"universal_matching", 10, itable::UniversalMatching},
      {"mobius_axioms", 60, itable::MobiusAxioms},
      {"sparsify_oracle", 60, itable::SparsifyOracle},
      {"two_phase_shape", 300, itable::TwoPhaseShape},
      {"sigma_fit_round_trip", 60, itable::SigmaFitRoundTrip},
  };
  const std::vector<std::string> only(argv + 1, argv + argc);
  int failures = 0;
  for (const Criterion& c : criteria) {
    if (!only.empty() &&
        std::find(only.begin(), only.end(), c.name) == only.end()) {
      continue;
    }
    const auto start = std::chrono::steady_clock::now();
    itable::Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    if (seconds > c.budget_seconds) {
      outcome.pass = false;
      outcome.detail += " (over time budget)";
    }
    failures += !outcome.pass;
    std::printf("%s %-28s %8.2fs / %4.0fs  %s\n",
                outcome.pass ? "PASS" : "FAIL", c.name, seconds,
                c.budget_seconds, outcome.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
