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

#include "itable/io.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string_view>

#include "json.hpp"

#include "itable/errors.h"

namespace itable {
namespace {

using Json = nlohmann::ordered_json;

struct Line {
  int number = 0;
  std::string text;
};

std::string_view Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> Split(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = s.find(',', start);
    out.push_back(Trim(s.substr(start, comma - start)));
    if (comma == std::string_view::npos) return out;
    start = comma + 1;
  }
}

std::string Where(const std::string& source, int line) {
  return source + ":" + std::to_string(line) + ": ";
}

std::uint64_t ParseUnsigned(std::string_view field, const std::string& source,
                            int line, const char* what) {
  std::uint64_t value = 0;
  const auto [end, ec] =
      std::from_chars(field.data(), field.data() + field.size(), value);
  if (field.empty() || ec != std::errc() ||
      end != field.data() + field.size()) {
    throw ParseError(Where(source, line) + "bad " + what + " '" +
                     std::string(field) + "'");
  }
  return value;
}

double ParseFinite(std::string_view field, const std::string& source,
                   int line, const char* what) {
  double value = 0.0;
  const auto [end, ec] =
      std::from_chars(field.data(), field.data() + field.size(), value);
  if (field.empty() || ec != std::errc() ||
      end != field.data() + field.size()) {
    throw ParseError(Where(source, line) + "bad " + what + " '" +
                     std::string(field) + "'");
  }
  if (!std::isfinite(value)) {
    throw ParseError(Where(source, line) + what + " is not finite");
  }
  return value;
}

int ParseVariableCount(std::string_view field, const std::string& source,
                       int line) {
  const std::uint64_t n = ParseUnsigned(field, source, line, "n");
  if (n > static_cast<std::uint64_t>(kMaxVariables)) {
    throw DataError(Where(source, line) + "n=" + std::to_string(n) +
                    " exceeds " + std::to_string(kMaxVariables));
  }
  return static_cast<int>(n);
}

std::vector<Line> ReadLines(std::istream& in) {
  std::vector<Line> out;
  std::string text;
  int number = 0;
  while (std::getline(in, text)) {
    ++number;
    if (!text.empty() && text.back() == '\r') text.pop_back();
    out.push_back({number, std::move(text)});
  }
  return out;
}

// Collects (mask, value) rows into a complete table.
class TableBuilder {
 public:
  TableBuilder(int n, std::string source)
      : values_(TableSize(n), 0.0),
        seen_(TableSize(n), false),
        source_(std::move(source)),
        n_(n) {}

  void Add(std::uint64_t mask, double value, int line) {
    if (mask >= values_.size()) {
      throw ParseError(Where(source_, line) + "mask " + std::to_string(mask) +
                       " out of range for n=" + std::to_string(n_));
    }
    if (seen_[mask]) {
      throw DuplicateError(Where(source_, line) + "duplicate mask " +
                           std::to_string(mask));
    }
    seen_[mask] = true;
    values_[mask] = value;
  }

  SubsetTable Finish(const std::string& what = "") const {
    for (std::size_t m = 0; m < seen_.size(); ++m) {
      if (!seen_[m]) {
        throw CompletenessError(source_ + ": " + what + "missing mask " +
                                std::to_string(m));
      }
    }
    return SubsetTable(n_, values_);
  }

 private:
  std::vector<double> values_;
  std::vector<bool> seen_;
  std::string source_;
  int n_;
};

// '# key=value' metadata, one column header, then data rows.
struct CsvDoc {
  std::map<std::string, std::pair<std::string, int>, std::less<>> meta;
  std::vector<std::pair<int, std::vector<std::string_view>>> rows;
  std::vector<Line> lines;
  std::string source;

  const std::pair<std::string, int>& Meta(std::string_view key) const {
    const auto it = meta.find(key);
    if (it == meta.end()) {
      throw DataError(source + ": missing header '" + std::string(key) + "'");
    }
    return it->second;
  }
  int N() const {
    const auto& [value, line] = Meta("n");
    return ParseVariableCount(value, source, line);
  }
  double Number(std::string_view key) const {
    const auto& [value, line] = Meta(key);
    return ParseFinite(value, source, line, std::string(key).c_str());
  }
};

CsvDoc ReadCsv(std::istream& in, const std::string& source,
               std::string_view columns) {
  CsvDoc doc;
  doc.source = source;
  doc.lines = ReadLines(in);
  const std::size_t width = Split(columns).size();
  bool in_body = false;
  for (const Line& line : doc.lines) {
    const std::string_view text = Trim(line.text);
    if (text.empty()) continue;
    if (text.front() == '#') {
      if (in_body) continue;
      const std::string_view body = Trim(text.substr(1));
      const auto eq = body.find('=');
      if (eq == std::string_view::npos) continue;
      doc.meta[std::string(Trim(body.substr(0, eq)))] = {
          std::string(Trim(body.substr(eq + 1))), line.number};
      continue;
    }
    if (!in_body) {
      if (text != columns) {
        throw ParseError(Where(source, line.number) + "expected columns '" +
                         std::string(columns) + "'");
      }
      in_body = true;
      continue;
    }
    auto fields = Split(text);
    if (fields.size() != width) {
      throw ParseError(Where(source, line.number) + "expected " +
                       std::to_string(width) + " fields");
    }
    doc.rows.emplace_back(line.number, std::move(fields));
  }
  if (!in_body) throw DataError(source + ": no column header");
  return doc;
}

void WriteMeta(std::ostream& out, std::string_view key,
               const std::string& value) {
  out << "# " << key << '=' << value << '\n';
}

Json ConfigValue(const std::string& config_json) {
  if (config_json.empty()) return Json::object();
  return Json::parse(config_json);
}

void Dump(std::ostream& out, const Json& doc) { out << doc.dump(2) << '\n'; }

Json ParseJson(std::istream& in, const std::string& source) {
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw ParseError(source + ": " + e.what());
  }
}

std::ifstream OpenInput(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  return in;
}

}  // namespace

void RunConfig::Validate() const {
  if (!(tau_factor >= 0.0) || !std::isfinite(tau_factor)) {
    throw ConfigError("tau factor must be finite and >= 0");
  }
  if (!(zeta_factor >= 0.0) || !std::isfinite(zeta_factor)) {
    throw ConfigError("zeta factor must be finite and >= 0");
  }
  for (double s : sigma2_grid) {
    if (!(s >= 0.0) || !std::isfinite(s)) {
      throw ConfigError("sigma2 grid values must be finite and >= 0");
    }
  }
  if (n_cap < 1 || n_cap > kMaxDenseVariables) {
    throw ConfigError("n cap must lie in [1, " +
                      std::to_string(kMaxDenseVariables) + "]");
  }
  Sparsify().Validate();
}

SparsifyConfig RunConfig::Sparsify() const {
  SparsifyConfig out;
  out.max_iters = sparsify_iters;
  out.learning_rate = sparsify_learning_rate;
  out.convergence_tol = sparsify_tol;
  out.zeta_factor = zeta_factor;
  out.seed = seed;
  return out;
}

std::string RunConfig::ToJson() const {
  Json doc;
  doc["command"] = command;
  doc["tau_factor"] = tau_factor;
  doc["zeta_factor"] = zeta_factor;
  doc["sigma2_grid"] = sigma2_grid;
  doc["sparsify"] = {{"max_iters", sparsify_iters},
                     {"learning_rate", sparsify_learning_rate},
                     {"convergence_tol", sparsify_tol}};
  doc["seed"] = seed;
  doc["n_cap"] = n_cap;
  doc["output_dir"] = output_dir;
  Json opts = Json::object();
  for (const auto& [key, value] : options) opts[key] = value;
  doc["options"] = std::move(opts);
  return doc.dump();
}

std::string FormatDouble(double x) {
  if (!std::isfinite(x)) throw NumericError("refusing to write a non-finite value");
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  if (ec != std::errc()) throw NumericError("cannot format value");
  return std::string(buf, end);
}

MaskedOutputTable ParseTable(std::istream& in, const std::string& source) {
  const std::vector<Line> lines = ReadLines(in);
  std::optional<int> n;
  bool versioned = false;
  std::string sample_id;
  std::size_t i = 0;
  for (; i < lines.size(); ++i) {
    const std::string_view text = Trim(lines[i].text);
    if (text.empty() || text.front() == '#') continue;
    const auto eq = text.find('=');
    if (eq == std::string_view::npos) break;
    const std::string_view key = Trim(text.substr(0, eq));
    const std::string_view value = Trim(text.substr(eq + 1));
    if (key == "format") {
      if (value != kTableFormat) {
        throw DataError(Where(source, lines[i].number) +
                        "unsupported format '" + std::string(value) + "'");
      }
      versioned = true;
    } else if (key == "n") {
      n = ParseVariableCount(value, source, lines[i].number);
    } else if (key == "sample_id") {
      sample_id = std::string(value);
    } else {
      throw ParseError(Where(source, lines[i].number) + "unknown header '" +
                       std::string(key) + "'");
    }
  }
  if (!versioned) {
    throw DataError(source + ": missing format=" + std::string(kTableFormat));
  }
  if (!n) throw DataError(source + ": missing n=");
  TableBuilder builder(*n, source);
  bool column_header_allowed = true;
  for (; i < lines.size(); ++i) {
    const std::string_view text = Trim(lines[i].text);
    if (text.empty() || text.front() == '#') continue;
    if (column_header_allowed && text == "mask,value") {
      column_header_allowed = false;
      continue;
    }
    column_header_allowed = false;
    const auto fields = Split(text);
    if (fields.size() != 2) {
      throw ParseError(Where(source, lines[i].number) +
                       "expected 'mask,value'");
    }
    builder.Add(ParseUnsigned(fields[0], source, lines[i].number, "mask"),
                ParseFinite(fields[1], source, lines[i].number, "value"),
                lines[i].number);
  }
  return {sample_id, builder.Finish()};
}

MaskedOutputTable ReadTable(const std::string& path) {
  std::ifstream in = OpenInput(path);
  return ParseTable(in, path);
}

GroundTruthWeights ReadWeights(const std::string& path) {
  return {ReadTable(path).v};
}

void WriteTable(std::ostream& out, const MaskedOutputTable& table,
                const std::string& config_json) {
  if (table.sample_id.find_first_of("\r\n") != std::string::npos) {
    throw DataError("sample_id must be a single line");
  }
  out << "format=" << kTableFormat << '\n'
      << "n=" << table.n() << '\n'
      << "sample_id=" << table.sample_id << '\n';
  if (!config_json.empty()) WriteMeta(out, "config", config_json);
  out << "mask,value\n";
  for (Mask m = 0; m < table.v.size(); ++m) {
    out << m << ',' << FormatDouble(table.v[m]) << '\n';
  }
}

void WriteInteractions(std::ostream& out, const AndOrInteractions& effects,
                       const std::string& sample_id,
                       const std::string& config_json) {
  const int n = effects.and_effects.n();
  WriteMeta(out, "n", std::to_string(n));
  WriteMeta(out, "sample_id", sample_id);
  WriteMeta(out, "v_empty", FormatDouble(effects.v_empty));
  WriteMeta(out, "config", config_json);
  out << "mask,order,kind,effect\n";
  for (const InteractionVector* iv :
       {&effects.and_effects, &effects.or_effects}) {
    for (Mask m = 0; m < iv->effects.size(); ++m) {
      out << m << ',' << Order(m) << ',' << KindName(iv->kind) << ','
          << FormatDouble(iv->effects[m]) << '\n';
    }
  }
}

InteractionFile ParseInteractions(std::istream& in,
                                  const std::string& source) {
  const CsvDoc doc = ReadCsv(in, source, "mask,order,kind,effect");
  const int n = doc.N();
  TableBuilder and_rows(n, source);
  TableBuilder or_rows(n, source);
  for (const auto& [line, f] : doc.rows) {
    const std::uint64_t mask = ParseUnsigned(f[0], source, line, "mask");
    const std::uint64_t order = ParseUnsigned(f[1], source, line, "order");
    const double effect = ParseFinite(f[3], source, line, "effect");
    if (mask < TableSize(n) && order != static_cast<std::uint64_t>(
                                            Order(static_cast<Mask>(mask)))) {
      throw ParseError(Where(source, line) + "order does not match mask");
    }
    if (f[2] == "and") {
      and_rows.Add(mask, effect, line);
    } else if (f[2] == "or") {
      or_rows.Add(mask, effect, line);
    } else {
      throw ParseError(Where(source, line) + "unknown kind '" +
                       std::string(f[2]) + "'");
    }
  }
  InteractionFile out{
      doc.meta.count("sample_id") ? doc.Meta("sample_id").first : "",
      {{InteractionKind::kAnd, and_rows.Finish("and ")},
       {InteractionKind::kOr, or_rows.Finish("or ")},
       doc.Number("v_empty")}};
  return out;
}

void WriteSalientReport(std::ostream& out, const SalientSet& salient,
                        const std::string& sample_id,
                        const std::string& config_json) {
  Json doc;
  doc["sample_id"] = sample_id;
  doc["threshold"] = salient.threshold;
  doc["size"] = salient.size();
  doc["count_per_order"] = salient.count_per_order;
  Json members = Json::array();
  for (const SalientMember& m : salient.members) {
    members.push_back({{"mask", m.subset.bits()},
                       {"subset", m.subset.ToString()},
                       {"order", m.subset.order()},
                       {"kind", KindName(m.kind)},
                       {"effect", m.effect}});
  }
  doc["members"] = std::move(members);
  doc["config"] = ConfigValue(config_json);
  Dump(out, doc);
}

void WriteDecomposition(std::ostream& out, const Decomposition& dec,
                        const std::string& config_json) {
  WriteMeta(out, "n", std::to_string(dec.n()));
  WriteMeta(out, "zeta", FormatDouble(dec.zeta_bound));
  WriteMeta(out, "config", config_json);
  out << "mask,gamma,delta\n";
  for (Mask m = 0; m < dec.gamma.size(); ++m) {
    out << m << ',' << FormatDouble(dec.gamma[m]) << ','
        << FormatDouble(dec.delta[m]) << '\n';
  }
}

Decomposition ParseDecomposition(std::istream& in, const std::string& source) {
  const CsvDoc doc = ReadCsv(in, source, "mask,gamma,delta");
  const int n = doc.N();
  TableBuilder gamma(n, source);
  TableBuilder delta(n, source);
  for (const auto& [line, f] : doc.rows) {
    const std::uint64_t mask = ParseUnsigned(f[0], source, line, "mask");
    gamma.Add(mask, ParseFinite(f[1], source, line, "gamma"), line);
    delta.Add(mask, ParseFinite(f[2], source, line, "delta"), line);
  }
  return {gamma.Finish(), delta.Finish(), doc.Number("zeta")};
}

void WriteSparsifySummary(std::ostream& out, const SparsifyResult& result,
                          const std::string& config_json) {
  Json doc;
  doc["n"] = result.decomposition.n();
  doc["zeta"] = result.decomposition.zeta_bound;
  doc["initial_loss"] = result.initial_loss();
  doc["loss"] = result.final_loss();
  doc["iterations"] = result.iterations;
  doc["converged"] = result.converged;
  doc["loss_history"] = result.loss_history;
  doc["config"] = ConfigValue(config_json);
  Dump(out, doc);
}

void WriteDistribution(std::ostream& out, const OrderDistribution& d,
                       const std::string& config_json) {
  WriteMeta(out, "n", std::to_string(d.n));
  WriteMeta(out, "tau", FormatDouble(d.tau));
  WriteMeta(out, "Z", FormatDouble(d.z));
  WriteMeta(out, "empty", d.empty ? "1" : "0");
  WriteMeta(out, "config", config_json);
  out << "k,strength\n";
  for (int k = 1; k <= d.n; ++k) {
    out << k << ',' << FormatDouble(d.at(k)) << '\n';
  }
}

OrderDistribution ParseDistribution(std::istream& in,
                                    const std::string& source) {
  const CsvDoc doc = ReadCsv(in, source, "k,strength");
  OrderDistribution d;
  d.n = doc.N();
  d.tau = doc.Number("tau");
  d.z = doc.Number("Z");
  const auto& [empty, empty_line] = doc.Meta("empty");
  if (empty != "0" && empty != "1") {
    throw ParseError(Where(source, empty_line) + "empty must be 0 or 1");
  }
  d.empty = empty == "1";
  d.strength.assign(d.n, 0.0);
  std::vector<bool> seen(d.n, false);
  for (const auto& [line, f] : doc.rows) {
    const std::uint64_t k = ParseUnsigned(f[0], source, line, "k");
    if (k < 1 || k > static_cast<std::uint64_t>(d.n)) {
      throw ParseError(Where(source, line) + "order out of range");
    }
    if (seen[k - 1]) {
      throw DuplicateError(Where(source, line) + "duplicate order " +
                           std::to_string(k));
    }
    seen[k - 1] = true;
    d.strength[k - 1] = ParseFinite(f[1], source, line, "strength");
  }
  for (int k = 1; k <= d.n; ++k) {
    if (!seen[k - 1]) {
      throw CompletenessError(source + ": missing order " + std::to_string(k));
    }
  }
  return d;
}

OrderDistribution ReadDistribution(const std::string& path) {
  std::ifstream in = OpenInput(path);
  return ParseDistribution(in, path);
}

void WriteRatioCurve(std::ostream& out, const OrderRatioCurve& curve,
                     const std::string& config_json) {
  WriteMeta(out, "n", std::to_string(curve.n));
  WriteMeta(out, "config", config_json);
  out << "sigma2,k,r\n";
  for (std::size_t g = 0; g < curve.sigma2.size(); ++g) {
    for (std::size_t k = 0; k < curve.ratio[g].size(); ++k) {
      out << FormatDouble(curve.sigma2[g]) << ',' << k + 1 << ','
          << FormatDouble(curve.ratio[g][k]) << '\n';
    }
  }
}

OrderRatioCurve ParseRatioCurve(std::istream& in, const std::string& source) {
  const CsvDoc doc = ReadCsv(in, source, "sigma2,k,r");
  OrderRatioCurve curve;
  curve.n = doc.N();
  const std::size_t width = curve.n > 0 ? curve.n - 1 : 0;
  for (const auto& [line, f] : doc.rows) {
    const double sigma2 = ParseFinite(f[0], source, line, "sigma2");
    const std::uint64_t k = ParseUnsigned(f[1], source, line, "k");
    if (curve.sigma2.empty() || curve.ratio.back().size() == width) {
      curve.sigma2.push_back(sigma2);
      curve.ratio.emplace_back();
    }
    if (sigma2 != curve.sigma2.back() ||
        k != curve.ratio.back().size() + 1) {
      throw ParseError(Where(source, line) + "rows out of order");
    }
    curve.ratio.back().push_back(ParseFinite(f[2], source, line, "r"));
  }
  if (!curve.ratio.empty() && curve.ratio.back().size() != width) {
    throw CompletenessError(source + ": last grid point is incomplete");
  }
  return curve;
}

void WriteTrajectory(std::ostream& out, const TrajectoryRecord& record,
                     const std::string& config_json) {
  WriteMeta(out, "n", std::to_string(record.initial_weights.n()));
  WriteMeta(out, "segments", std::to_string(record.checkpoints.size()));
  WriteMeta(out, "config", config_json);
  out << "segment,sigma2,order,strength\n";
  const auto rows = [&out](int segment, double sigma2,
                           const OrderDistribution& d) {
    for (int k = 1; k <= d.n; ++k) {
      out << segment << ',' << FormatDouble(sigma2) << ',' << k << ','
          << FormatDouble(d.at(k)) << '\n';
    }
  };
  rows(0, record.schedule.empty() ? 0.0 : record.schedule.front().sigma2,
       record.initial_distribution);
  for (const TrajectoryCheckpoint& c : record.checkpoints) {
    rows(c.segment, c.sigma2, c.distribution);
  }
}

std::vector<TrajectoryRow> ParseTrajectory(std::istream& in,
                                           const std::string& source) {
  const CsvDoc doc = ReadCsv(in, source, "segment,sigma2,order,strength");
  const int n = doc.N();
  std::vector<TrajectoryRow> out;
  for (const auto& [line, f] : doc.rows) {
    const std::uint64_t segment =
        ParseUnsigned(f[0], source, line, "segment");
    const double sigma2 = ParseFinite(f[1], source, line, "sigma2");
    const std::uint64_t k = ParseUnsigned(f[2], source, line, "order");
    if (out.empty() || out.back().strength.size() == static_cast<std::size_t>(n)) {
      out.push_back({static_cast<int>(segment), sigma2, {}});
    }
    TrajectoryRow& row = out.back();
    if (static_cast<int>(segment) != row.segment || sigma2 != row.sigma2 ||
        k != row.strength.size() + 1) {
      throw ParseError(Where(source, line) + "rows out of order");
    }
    row.strength.push_back(ParseFinite(f[3], source, line, "strength"));
  }
  if (!out.empty() && out.back().strength.size() != static_cast<std::size_t>(n)) {
    throw CompletenessError(source + ": last segment is incomplete");
  }
  return out;
}

void WriteFit(std::ostream& out, const SigmaFit& fit,
              const std::string& config_json) {
  Json doc;
  doc["sigma2_star"] = fit.sigma2_star;
  doc["distance"] = fit.distance;
  doc["grid"] = fit.grid;
  doc["curve"] = fit.curve;
  doc["config"] = ConfigValue(config_json);
  Dump(out, doc);
}

SigmaFit ParseFit(std::istream& in, const std::string& source) {
  const Json doc = ParseJson(in, source);
  try {
    SigmaFit fit;
    fit.sigma2_star = doc.at("sigma2_star").get<double>();
    fit.distance = doc.at("distance").get<double>();
    fit.grid = doc.at("grid").get<std::vector<double>>();
    fit.curve = doc.at("curve").get<std::vector<double>>();
    if (fit.grid.size() != fit.curve.size()) {
      throw DataError(source + ": grid and curve lengths differ");
    }
    return fit;
  } catch (const Json::exception& e) {
    throw ParseError(source + ": " + e.what());
  }
}

void WriteNoiseStats(std::ostream& out, const NoisyInteractionStats& stats,
                     const std::string& config_json) {
  Json doc;
  doc["n"] = stats.mean.n();
  doc["sigma"] = stats.sigma;
  doc["trials"] = stats.trials;
  Json rows = Json::array();
  for (Mask m = 0; m < stats.mean.size(); ++m) {
    rows.push_back({{"mask", m},
                    {"order", Order(m)},
                    {"mean", stats.mean[m]},
                    {"variance", stats.variance[m]}});
  }
  doc["effects"] = std::move(rows);
  doc["config"] = ConfigValue(config_json);
  Dump(out, doc);
}

}  // namespace itable
