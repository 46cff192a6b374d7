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

#ifndef ITABLE_IO_H_
#define ITABLE_IO_H_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "itable/dynamics.h"
#include "itable/interactions.h"
#include "itable/metrics.h"
#include "itable/sparsify.h"

namespace itable {

inline constexpr const char* kTableFormat = "itable.v1";

struct RunConfig {
  double tau_factor = kDefaultTauFactor;
  double zeta_factor = kDefaultZetaFactor;
  std::vector<double> sigma2_grid = DefaultSigma2Grid();
  int sparsify_iters = 5000;
  double sparsify_learning_rate = 1.0;
  double sparsify_tol = 1e-7;
  std::uint64_t seed = 0;
  int n_cap = kMaxDenseVariables;
  std::string output_dir = ".";
  std::string command;
  // Command-specific flags, in the order they were recorded.
  std::vector<std::pair<std::string, std::string>> options;

  // Throws ConfigError.
  void Validate() const;
  SparsifyConfig Sparsify() const;
  // Single-line JSON object.
  std::string ToJson() const;
};

// Shortest decimal that reads back to the same double.
std::string FormatDouble(double x);

// itable.v1 tables. Rows may appear in any order; comment lines start with
// '#'. Throws CompletenessError, DuplicateError, ParseError or DataError.
MaskedOutputTable ParseTable(std::istream& in,
                             const std::string& source = "<input>");
MaskedOutputTable ReadTable(const std::string& path);
GroundTruthWeights ReadWeights(const std::string& path);
void WriteTable(std::ostream& out, const MaskedOutputTable& table,
                const std::string& config_json = "");

struct InteractionFile {
  std::string sample_id;
  AndOrInteractions effects;
};

// Columns mask, order, kind, effect; every mask of both kinds.
void WriteInteractions(std::ostream& out, const AndOrInteractions& effects,
                       const std::string& sample_id,
                       const std::string& config_json);
InteractionFile ParseInteractions(std::istream& in,
                                  const std::string& source = "<input>");

void WriteSalientReport(std::ostream& out, const SalientSet& salient,
                        const std::string& sample_id,
                        const std::string& config_json);

// Columns mask, gamma, delta.
void WriteDecomposition(std::ostream& out, const Decomposition& dec,
                        const std::string& config_json);
Decomposition ParseDecomposition(std::istream& in,
                                 const std::string& source = "<input>");
void WriteSparsifySummary(std::ostream& out, const SparsifyResult& result,
                          const std::string& config_json);

// Columns k, strength.
void WriteDistribution(std::ostream& out, const OrderDistribution& d,
                       const std::string& config_json);
OrderDistribution ParseDistribution(std::istream& in,
                                    const std::string& source = "<input>");
OrderDistribution ReadDistribution(const std::string& path);

// Columns sigma2, k, r.
void WriteRatioCurve(std::ostream& out, const OrderRatioCurve& curve,
                     const std::string& config_json);
OrderRatioCurve ParseRatioCurve(std::istream& in,
                                const std::string& source = "<input>");

struct TrajectoryRow {
  // 0 is the initialization.
  int segment = 0;
  double sigma2 = 0.0;
  std::vector<double> strength;
};

// Columns segment, sigma2, order, strength.
void WriteTrajectory(std::ostream& out, const TrajectoryRecord& record,
                     const std::string& config_json);
std::vector<TrajectoryRow> ParseTrajectory(
    std::istream& in, const std::string& source = "<input>");

void WriteFit(std::ostream& out, const SigmaFit& fit,
              const std::string& config_json);
SigmaFit ParseFit(std::istream& in, const std::string& source = "<input>");

void WriteNoiseStats(std::ostream& out, const NoisyInteractionStats& stats,
                     const std::string& config_json);

}  // namespace itable

#endif  // ITABLE_IO_H_
