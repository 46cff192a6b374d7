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

#include "cli.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"

#include "itable/dynamics.h"
#include "itable/errors.h"
#include "itable/interactions.h"
#include "itable/io.h"
#include "itable/metrics.h"
#include "itable/random.h"
#include "itable/sparsify.h"
#include "itable/synth.h"

namespace itable::cli {
namespace {

struct GridOptions {
  std::string list;
  double lo = 1e-3;
  double hi = 1e2;
  int count = 11;

  std::vector<double> Build() const {
    if (list.empty()) return LogSpacedGrid(lo, hi, count);
    std::vector<double> out;
    std::stringstream in(list);
    std::string item;
    while (std::getline(in, item, ',')) {
      try {
        std::size_t used = 0;
        out.push_back(std::stod(item, &used));
        if (used != item.size()) throw std::invalid_argument(item);
      } catch (const std::logic_error&) {
        throw ConfigError("bad grid value '" + item + "'");
      }
    }
    if (out.empty()) throw ConfigError("empty sigma2 grid");
    return out;
  }
};

struct Session {
  RunConfig config;
  GridOptions grid;
  std::ostream* out = nullptr;

  std::string Config() const { return config.ToJson(); }

  void Write(const std::string& name,
             const std::function<void(std::ostream&)>& body) const {
    std::filesystem::create_directories(config.output_dir);
    const std::string path =
        (std::filesystem::path(config.output_dir) / name).string();
    std::ofstream file(path, std::ios::binary);
    if (!file) throw DataError("cannot write " + path);
    body(file);
    file.close();
    if (!file) throw DataError("failed writing " + path);
    *out << path << '\n';
  }

  void CheckCap(int n) const {
    if (n > config.n_cap) {
      throw ConfigError("n=" + std::to_string(n) + " exceeds the cap " +
                        std::to_string(config.n_cap));
    }
  }
};

void AddOutDir(CLI::App* sub, Session& s) {
  sub->add_option("--out-dir", s.config.output_dir, "Output directory");
}
void AddSeed(CLI::App* sub, Session& s) {
  sub->add_option("--seed", s.config.seed, "Random seed");
}
void AddTau(CLI::App* sub, Session& s) {
  sub->add_option("--tau-factor", s.config.tau_factor,
                  "Salience threshold factor");
}
void AddSparsify(CLI::App* sub, Session& s) {
  sub->add_option("--zeta-factor", s.config.zeta_factor,
                  "Bound on |delta| relative to |v(N) - v(0)|");
  sub->add_option("--iters", s.config.sparsify_iters, "Iteration budget");
  sub->add_option("--lr", s.config.sparsify_learning_rate, "Step scale");
  sub->add_option("--tol", s.config.sparsify_tol, "Convergence tolerance");
}
void AddGrid(CLI::App* sub, Session& s) {
  sub->add_option("--grid", s.grid.list, "Comma-separated sigma2 values");
  sub->add_option("--grid-lo", s.grid.lo, "Smallest sigma2 of the log grid");
  sub->add_option("--grid-hi", s.grid.hi, "Largest sigma2 of the log grid");
  sub->add_option("--grid-count", s.grid.count, "Points in the log grid");
}
void AddCap(CLI::App* sub, Session& s) {
  sub->add_option("--n-cap", s.config.n_cap, "Largest n for dense solves");
}

AndOrInteractions Split(const MaskedOutputTable& table,
                        const std::string& split, const Session& s) {
  if (split == "and") {
    return ExtractAndOr(table.v, SubsetTable(table.n()));
  }
  if (split == "even") {
    return ExtractInteractions(EvenSplit(table.n(), 0.0), table);
  }
  const SparsifyResult r = OptimizeDecomposition(table, s.config.Sparsify());
  return ExtractInteractions(r.decomposition, table);
}

int Generate(Session& s, int n, int per_order, const std::string& sign,
             double lo, double hi, double empty) {
  GroundTruthSpec spec{n, {},
                       sign == "random" ? SignPolicy::kRandom
                                        : SignPolicy::kPositive,
                       empty, s.config.seed};
  CheckVariableCount(n);
  for (int k = 1; k <= n; ++k) {
    spec.orders.push_back(
        {k,
         static_cast<int>(std::min<std::uint64_t>(per_order, Binomial(n, k))),
         lo, hi});
  }
  const GroundTruthWeights truth = GenerateGroundTruth(spec);
  s.Write("w_star.itable", [&](std::ostream& o) {
    WriteTable(o, {"w_star", truth.w_star}, s.Config());
  });
  s.Write("outputs.itable", [&](std::ostream& o) {
    WriteTable(o, ConvergedOutputs(truth), s.Config());
  });
  return kOk;
}

int Extract(Session& s, const std::string& path, const std::string& split) {
  const MaskedOutputTable table = ReadTable(path);
  const AndOrInteractions effects = Split(table, split, s);
  const double tau =
      SalienceThreshold(std::span(&table, 1), s.config.tau_factor);
  s.Write("interactions.csv", [&](std::ostream& o) {
    WriteInteractions(o, effects, table.sample_id, s.Config());
  });
  s.Write("salient.json", [&](std::ostream& o) {
    WriteSalientReport(o, FindSalient(effects, tau), table.sample_id,
                       s.Config());
  });
  return kOk;
}

int Sparsify(Session& s, const std::string& path) {
  const MaskedOutputTable table = ReadTable(path);
  const SparsifyResult r = OptimizeDecomposition(table, s.config.Sparsify());
  s.Write("decomposition.csv", [&](std::ostream& o) {
    WriteDecomposition(o, r.decomposition, s.Config());
  });
  s.Write("sparsify.json", [&](std::ostream& o) {
    WriteSparsifySummary(o, r, s.Config());
  });
  return kOk;
}

int Predict(Session& s, const std::string& path, double sigma2) {
  const GroundTruthWeights truth = ReadWeights(path);
  s.CheckCap(truth.n());
  const SubsetTable w_hat = SolveOptimalWeights(truth, sigma2);
  s.Write("w_hat.itable", [&](std::ostream& o) {
    WriteTable(o, {"w_hat", w_hat}, s.Config());
  });
  s.Write("distribution.csv", [&](std::ostream& o) {
    WriteDistribution(o, TheoDistribution(w_hat, s.config.tau_factor),
                      s.Config());
  });
  return kOk;
}

int Sweep(Session& s, int n) {
  s.CheckCap(n);
  std::vector<double> grid = s.config.sigma2_grid;
  std::sort(grid.begin(), grid.end());
  const OrderRatioCurve curve = ComputeOrderRatioCurve(n, grid);
  s.Write("ratio.csv",
          [&](std::ostream& o) { WriteRatioCurve(o, curve, s.Config()); });
  return kOk;
}

int Fit(Session& s, const std::string& real_path,
        const std::string& weights_path) {
  const OrderDistribution real = ReadDistribution(real_path);
  const GroundTruthWeights truth = ReadWeights(weights_path);
  s.CheckCap(truth.n());
  const SigmaFit fit =
      FitSigma(real, truth, s.config.sigma2_grid, s.config.tau_factor);
  s.Write("fit.json", [&](std::ostream& o) { WriteFit(o, fit, s.Config()); });
  return kOk;
}

std::vector<ScheduleSegment> ParseSchedule(const std::string& text, int n,
                                           int steps,
                                           const std::vector<double>& grid) {
  std::vector<ScheduleSegment> out;
  if (text.empty()) {
    std::vector<double> descending = grid;
    std::sort(descending.rbegin(), descending.rend());
    descending.push_back(0.0);
    for (double sigma2 : descending) {
      out.push_back({sigma2, steps, StableLearningRate(n, sigma2)});
    }
    return out;
  }
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::stringstream parts(item);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(parts, field, ':')) fields.push_back(field);
    if (fields.size() < 2 || fields.size() > 3) {
      throw ConfigError("schedule entries are sigma2:steps[:lr], got '" +
                        item + "'");
    }
    try {
      ScheduleSegment seg{std::stod(fields[0]), std::stoi(fields[1]), 0.0};
      seg.learning_rate = fields.size() == 3
                              ? std::stod(fields[2])
                              : StableLearningRate(n, seg.sigma2);
      out.push_back(seg);
    } catch (const std::logic_error&) {
      throw ConfigError("bad schedule entry '" + item + "'");
    }
  }
  return out;
}

int Simulate(Session& s, const std::string& weights_path,
             const std::string& init_path, const std::string& schedule,
             int steps) {
  const GroundTruthWeights truth = ReadWeights(weights_path);
  s.CheckCap(truth.n());
  const SubsetTable init = init_path.empty()
                               ? SpindleInitialization(truth.n(), s.config.seed)
                               : ReadTable(init_path).v;
  const std::vector<ScheduleSegment> segments =
      ParseSchedule(schedule, truth.n(), steps, s.config.sigma2_grid);
  const TrajectoryRecord record =
      SimulateTrainingTrajectory(init, truth, segments);
  s.Write("trajectory.csv",
          [&](std::ostream& o) { WriteTrajectory(o, record, s.Config()); });
  return kOk;
}

int McNoise(Session& s, const std::string& path, double sigma, int trials) {
  const MaskedOutputTable table = ReadTable(path);
  const NoisyInteractionStats stats =
      SimulateNoisyInteraction(table, sigma, trials, s.config.seed);
  s.Write("noise.json",
          [&](std::ostream& o) { WriteNoiseStats(o, stats, s.Config()); });
  return kOk;
}

int Distribution(Session& s, const std::vector<std::string>& tables,
                 const std::string& weights, const std::string& split,
                 bool and_only) {
  if (tables.empty() == weights.empty()) {
    throw ConfigError("give either --table or --weights");
  }
  OrderDistribution d;
  if (!weights.empty()) {
    d = TheoDistribution(ReadTable(weights).v, s.config.tau_factor);
  } else {
    std::vector<MaskedOutputTable> samples;
    std::vector<AndOrInteractions> effects;
    for (const std::string& path : tables) {
      samples.push_back(ReadTable(path));
      if (samples.back().n() != samples.front().n()) {
        throw DimensionError(path + " has a different n");
      }
      effects.push_back(Split(samples.back(), split, s));
    }
    d = ComputeOrderDistribution(
        effects, SalienceThreshold(samples, s.config.tau_factor), !and_only);
  }
  s.Write("distribution.csv",
          [&](std::ostream& o) { WriteDistribution(o, d, s.Config()); });
  return kOk;
}

double MaxAbs(const SubsetTable& t) {
  double out = 0.0;
  for (double x : t.values()) out = std::max(out, std::fabs(x));
  return out;
}

double MaxAbsDiff(const SubsetTable& a, const SubsetTable& b) {
  return MaxAbs(LinearCombination(1.0, a, -1.0, b));
}

int Verify(Session& s, int n) {
  CheckVariableCount(n);
  Rng rng(s.config.seed);
  std::vector<double> values(TableSize(n));
  for (double& x : values) x = rng.Normal();
  const MaskedOutputTable table{"verify", SubsetTable(n, values)};
  const double scale = std::max(1.0, MaxAbs(table.v));

  int failures = 0;
  const auto report = [&](const std::string& name, bool pass,
                          const std::string& detail) {
    *s.out << (pass ? "PASS " : "FAIL ") << name << ' ' << detail << '\n';
    failures += !pass;
  };
  const auto check_max = [&](const std::string& name, double value,
                             double limit) {
    report(name, value <= limit,
           "max=" + FormatDouble(value) + " limit=" + FormatDouble(limit));
  };

  check_max("mobius_round_trip",
            MaxAbsDiff(MobiusTransform(ZetaTransform(table.v)), table.v),
            1e-9 * scale);

  // Any gamma matches v exactly; a nonzero delta shifts the match to v - delta.
  Decomposition dec = EvenSplit(n, DeltaBound(table, s.config.zeta_factor));
  for (Mask m = 0; m < table.v.size(); ++m) {
    dec.gamma.mutable_values()[m] = rng.Normal();
  }
  const AndOrInteractions effects = ExtractInteractions(dec, table);
  check_max("universal_matching",
            MaxAbsDiff(ReconstructAll(effects.and_effects,
                                      effects.or_effects, effects.v_empty),
                       table.v),
            1e-9 * scale);

  const OrderDistribution d = ComputeOrderDistribution(
      std::span(&effects, 1),
      SalienceThreshold(std::span(&table, 1), s.config.tau_factor));
  double mean = 0.0;
  for (double x : d.strength) mean += x / n;
  check_max("distribution_mean_is_one", d.empty ? 0.0 : std::fabs(mean - 1.0),
            1e-10);

  if (n > s.config.n_cap) {
    *s.out << "SKIP dense checks: n=" << n << " exceeds the cap "
           << s.config.n_cap << '\n';
  } else {
    GroundTruthSpec spec{n, {}, SignPolicy::kRandom, rng.Normal(),
                         s.config.seed};
    for (int k = 1; k <= n; ++k) spec.orders.push_back({k, 1, 0.5, 1.5});
    const GroundTruthWeights truth = GenerateGroundTruth(spec);
    const double wscale = std::max(1.0, MaxAbs(truth.w_star));
    check_max("noise_free_recovers_truth",
              MaxAbsDiff(SolveOptimalWeights(truth, 0.0), truth.w_star),
              1e-8 * wscale);
    const SubsetTable w_hat = SolveOptimalWeights(truth, 1.0);
    check_max("closed_form_is_stationary",
              MaxAbs(NoisyLossGradient(w_hat, truth, 1.0)), 1e-8 * wscale);
    for (double sigma2 : {0.01, 1.0, 100.0}) {
      const std::vector<double> spread =
          SameOrderSpread(ComputeSolutionMatrix(n, sigma2));
      check_max("same_order_row_norms sigma2=" + FormatDouble(sigma2),
                *std::max_element(spread.begin(), spread.end()), 1e-8);
    }
    if (n >= 2) {
      const OrderRatioCurve curve =
          ComputeOrderRatioCurve(n, DefaultSigma2Grid());
      bool above_one = true;
      bool monotone = true;
      for (std::size_t g = 0; g < curve.sigma2.size(); ++g) {
        for (std::size_t k = 0; k < curve.ratio[g].size(); ++k) {
          above_one &= curve.ratio[g][k] > 1.0;
          if (g > 0) monotone &= curve.ratio[g][k] >= curve.ratio[g - 1][k];
        }
      }
      report("order_ratio_above_one", above_one, "");
      report("order_ratio_monotone", monotone, "");
    }
  }
  return failures == 0 ? kOk : kNumeric;
}

void RecordOptions(const CLI::App& sub, RunConfig& config) {
  config.command = sub.get_name();
  for (const CLI::Option* opt : sub.get_options()) {
    if (opt == sub.get_help_ptr() || opt->get_lnames().empty()) continue;
    std::string value;
    if (opt->count() > 0) {
      for (const std::string& r : opt->results()) {
        value += (value.empty() ? "" : " ") + r;
      }
    } else {
      value = opt->get_default_str();
    }
    config.options.emplace_back(opt->get_lnames().front(), value);
  }
}

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  Session s;
  s.out = &out;
  CLI::App app{"AND-OR interaction toolkit", "itable"};
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();

  std::string table_path, weights_path, init_path, real_path, schedule;
  std::string split = "sparse", sign = "positive";
  std::vector<std::string> tables;
  int n = 0, per_order = 1, steps = 200, trials = 10000;
  double lo = 0.5, hi = 1.5, empty = 0.0, sigma2 = 0.0, sigma = 0.1;
  bool and_only = false;
  std::function<int()> action;

  const auto split_option = [&](CLI::App* sub) {
    sub->add_option("--split", split, "How v is split into v_and and v_or")
        ->check(CLI::IsMember({"sparse", "and", "even"}));
  };

  CLI::App* gen = app.add_subcommand("generate", "Synthetic ground truth w*");
  gen->add_option("--n", n, "Number of variables")->required();
  gen->add_option("--per-order", per_order, "Effects per order")
      ->check(CLI::NonNegativeNumber);
  gen->add_option("--sign", sign, "Sign policy")
      ->check(CLI::IsMember({"positive", "random"}));
  gen->add_option("--min-magnitude", lo, "Smallest |w*|");
  gen->add_option("--max-magnitude", hi, "Largest |w*|");
  gen->add_option("--empty-value", empty, "w* of the empty set");
  AddSeed(gen, s);
  AddOutDir(gen, s);
  gen->callback([&] {
    action = [&] { return Generate(s, n, per_order, sign, lo, hi, empty); };
  });

  CLI::App* ext = app.add_subcommand("extract", "AND and OR interactions");
  ext->add_option("--table", table_path, "Masked output table")->required();
  split_option(ext);
  AddTau(ext, s);
  AddSparsify(ext, s);
  AddOutDir(ext, s);
  ext->callback([&] { action = [&] { return Extract(s, table_path, split); }; });

  CLI::App* spa = app.add_subcommand("sparsify", "Sparsest AND-OR split");
  spa->add_option("--table", table_path, "Masked output table")->required();
  AddSparsify(spa, s);
  AddOutDir(spa, s);
  spa->callback([&] { action = [&] { return Sparsify(s, table_path); }; });

  CLI::App* pre = app.add_subcommand("predict", "Closed-form noisy optimum");
  pre->add_option("--weights", weights_path, "Ground truth w*")->required();
  pre->add_option("--sigma2", sigma2, "Noise variance")
      ->required()
      ->check(CLI::NonNegativeNumber);
  AddTau(pre, s);
  AddCap(pre, s);
  AddOutDir(pre, s);
  pre->callback(
      [&] { action = [&] { return Predict(s, weights_path, sigma2); }; });

  CLI::App* swe = app.add_subcommand("sweep", "Order ratio curves");
  swe->add_option("--n", n, "Number of variables")->required();
  AddGrid(swe, s);
  AddCap(swe, s);
  AddOutDir(swe, s);
  swe->callback([&] { action = [&] { return Sweep(s, n); }; });

  CLI::App* fit = app.add_subcommand("fit", "Fit sigma2 to a distribution");
  fit->add_option("--real", real_path, "Order distribution CSV")->required();
  fit->add_option("--weights", weights_path, "Ground truth w*")->required();
  AddTau(fit, s);
  AddGrid(fit, s);
  AddCap(fit, s);
  AddOutDir(fit, s);
  fit->callback(
      [&] { action = [&] { return Fit(s, real_path, weights_path); }; });

  CLI::App* sim = app.add_subcommand("simulate", "Gradient-descent trajectory");
  sim->add_option("--weights", weights_path, "Ground truth w*")->required();
  sim->add_option("--init", init_path, "Initial weights (default: random)");
  sim->add_option("--schedule", schedule,
                  "sigma2:steps[:lr],... (default: the grid, descending, "
                  "then 0)");
  sim->add_option("--steps", steps, "Steps per default segment")
      ->check(CLI::PositiveNumber);
  AddGrid(sim, s);
  AddSeed(sim, s);
  AddCap(sim, s);
  AddOutDir(sim, s);
  sim->callback([&] {
    action = [&] {
      return Simulate(s, weights_path, init_path, schedule, steps);
    };
  });

  CLI::App* mc = app.add_subcommand("mc-noise", "Noisy interaction moments");
  mc->add_option("--table", table_path, "Masked output table")->required();
  mc->add_option("--sigma", sigma, "Output noise standard deviation");
  mc->add_option("--trials", trials, "Monte-Carlo trials");
  AddSeed(mc, s);
  AddOutDir(mc, s);
  mc->callback(
      [&] { action = [&] { return McNoise(s, table_path, sigma, trials); }; });

  CLI::App* dis = app.add_subcommand("distribution", "Order distribution");
  dis->add_option("--table", tables, "Masked output tables");
  dis->add_option("--weights", weights_path, "Predicted weights w_hat");
  split_option(dis);
  dis->add_flag("--and-only", and_only, "Ignore OR interactions");
  AddTau(dis, s);
  AddSparsify(dis, s);
  AddOutDir(dis, s);
  dis->callback([&] {
    action = [&] {
      return Distribution(s, tables, weights_path, split, and_only);
    };
  });

  CLI::App* ver = app.add_subcommand("verify", "Run the invariant suite");
  n = 6;
  ver->add_option("--n", n, "Number of variables");
  AddSeed(ver, s);
  AddTau(ver, s);
  AddCap(ver, s);
  ver->callback([&] { action = [&] { return Verify(s, n); }; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }
  try {
    RecordOptions(*app.get_subcommands().front(), s.config);
    s.config.sigma2_grid = s.grid.Build();
    s.config.Validate();
    return action();
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const NumericError& e) {
    err << "numeric error: " << e.what() << '\n';
    return kNumeric;
  } catch (const InvariantError& e) {
    err << "invariant violated: " << e.what() << '\n';
    return kNumeric;
  } catch (const Error& e) {
    err << "data error: " << e.what() << '\n';
    return kData;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "data error: " << e.what() << '\n';
    return kData;
  }
}

}  // namespace itable::cli
