// Copyright 2026 The edplab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/// \file cli.hpp
/// \brief The `edplab` command line: fig2, scaling, bounds and verify.
///
/// Every command writes one table to <out>/<command>.<csv|json>. Output
/// bytes depend only on the parameters and the seed.

#pragma once

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <utility>
#include <vector>

#include "edplab/bounds.hpp"
#include "edplab/criteria.hpp"
#include "edplab/lemmas.hpp"
#include "edplab/rng.hpp"
#include "edplab/scaling.hpp"
#include "edplab/stats.hpp"
#include "edplab/version.hpp"

namespace edplab::cli {

using Json = nlohmann::ordered_json;

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Bad flags or parameters; nothing is written.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Parsing

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

inline std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    auto piece = trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (!piece.empty()) out.push_back(std::move(piece));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

inline std::uint64_t parse_u64(std::string_view s, std::string_view what) {
  const auto t = trim(s);
  std::uint64_t v = 0;
  const auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || p != t.data() + t.size() || t.empty()) {
    throw UsageError(std::string(what) + ": '" + t + "' is not a non-negative integer");
  }
  return v;
}

inline double parse_real(std::string_view s, std::string_view what) {
  const auto t = trim(s);
  double v = 0.0;
  const auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc() || p != t.data() + t.size() || t.empty()) {
    throw UsageError(std::string(what) + ": '" + t + "' is not a number");
  }
  return v;
}

/// "0.25", "5/6".
inline double parse_ratio(std::string_view s, std::string_view what) {
  const auto slash = s.find('/');
  if (slash == std::string_view::npos) return parse_real(s, what);
  const double num = parse_real(s.substr(0, slash), what);
  const double den = parse_real(s.substr(slash + 1), what);
  if (den == 0.0) throw UsageError(std::string(what) + ": zero denominator");
  return num / den;
}

/// "4,16,64" or ranges "1..8" / "1:8", mixed freely.
inline std::vector<std::uint64_t> parse_u64_list(std::string_view s, std::string_view what) {
  std::vector<std::uint64_t> out;
  for (const auto& item : split(s, ',')) {
    std::size_t dots = item.find("..");
    std::size_t width = 2;
    if (dots == std::string::npos) {
      dots = item.find(':');
      width = 1;
    }
    if (dots == std::string::npos) {
      out.push_back(parse_u64(item, what));
      continue;
    }
    const auto a = parse_u64(item.substr(0, dots), what);
    const auto b = parse_u64(item.substr(dots + width), what);
    if (b < a) throw UsageError(std::string(what) + ": empty range '" + item + "'");
    for (auto v = a; v <= b; ++v) out.push_back(v);
  }
  if (out.empty()) throw UsageError(std::string(what) + ": empty list");
  return out;
}

inline std::vector<ProtocolId> parse_protocol_list(std::string_view s) {
  std::vector<ProtocolId> out;
  for (const auto& item : split(s, ',')) {
    try {
      out.push_back(parse_protocol(item));
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  if (out.empty()) throw UsageError("--protocols: empty list");
  return out;
}

inline const std::vector<std::string>& known_suites() {
  static const std::vector<std::string> suites{"haar-moment", "product-lemma", "twirl",
                                               "swap-moments"};
  return suites;
}

inline std::vector<std::string> parse_suites(std::string_view s) {
  std::vector<std::string> out;
  for (const auto& item : split(s, ',')) {
    if (item == "all") return known_suites();
    if (std::find(known_suites().begin(), known_suites().end(), item) == known_suites().end()) {
      throw UsageError("--suite: unknown suite '" + item + "'");
    }
    out.push_back(item);
  }
  if (out.empty()) throw UsageError("--suite: empty list");
  return out;
}

/// key=value lines; blank lines and '#' comments skipped. Keys may carry a
/// leading "--".
inline std::vector<std::pair<std::string, std::string>> read_config_file(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("--config: cannot open '" + path + "'");
  std::vector<std::pair<std::string, std::string>> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw UsageError("--config: line " + std::to_string(lineno) + " is not key=value");
    }
    auto key = trim(std::string_view(t).substr(0, eq));
    while (!key.empty() && key.front() == '-') key.erase(key.begin());
    if (key.empty()) throw UsageError("--config: empty key on line " + std::to_string(lineno));
    out.emplace_back(std::move(key), trim(std::string_view(t).substr(eq + 1)));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Output

enum class Format { Csv, Json };

struct Table {
  std::vector<std::string> columns;
  std::vector<Json> rows;  // objects keyed by column name

  void add(Json row) { rows.push_back(std::move(row)); }
};

/// Shortest round-trip representation; locale independent.
inline std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  if (ec != std::errc()) throw std::runtime_error("format_double: conversion failed");
  return std::string(buf, p);
}

inline std::string csv_cell(const Json& v) {
  if (v.is_null()) return "";
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_float()) return format_double(v.get<double>());
  if (v.is_number_unsigned()) return std::to_string(v.get<std::uint64_t>());
  if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
  const std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

inline std::string render_csv(const Json& metadata, const Table& t) {
  std::ostringstream out;
  for (const auto& [key, value] : metadata.items()) {
    out << "# " << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump())
        << '\n';
  }
  for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i];
  out << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
      out << (i ? "," : "");
      if (row.contains(t.columns[i])) out << csv_cell(row.at(t.columns[i]));
    }
    out << '\n';
  }
  return out.str();
}

inline std::string render_json(const Json& metadata, const Table& t) {
  Json doc;
  doc["metadata"] = metadata;
  doc["rows"] = Json::array();
  for (const auto& row : t.rows) {
    Json ordered = Json::object();
    for (const auto& c : t.columns) ordered[c] = row.contains(c) ? row.at(c) : Json();
    doc["rows"].push_back(std::move(ordered));
  }
  return doc.dump(2) + "\n";
}

/// Writes `content` to a sibling temporary and renames it over `path`.
inline void write_atomic(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open '" + tmp.string() + "' for writing");
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("write to '" + tmp.string() + "' failed");
  }
  std::filesystem::rename(tmp, path);
}

// ---------------------------------------------------------------------------
// Commands

struct CommonOptions {
  std::uint64_t seed = 0;
  std::string out_dir = ".";
  Format format = Format::Csv;
  std::optional<std::uint64_t> trials;
  std::optional<std::uint64_t> budget_cap;
};

struct CommandResult {
  Table table;
  Json params = Json::object();
  bool passed = true;
};

inline Json base_metadata(std::string_view command, const CommonOptions& common,
                          const Json& params) {
  Json m = Json::object();
  m["command"] = std::string(command);
  m["version"] = std::string(kVersion);
  m["generator"] = std::string(RngStream::kGeneratorId);
  m["seed"] = common.seed;
  m["params"] = params;
  return m;
}

inline std::filesystem::path emit(std::string_view command, const CommonOptions& common,
                                  const CommandResult& result) {
  const auto meta = base_metadata(command, common, result.params);
  const bool json = common.format == Format::Json;
  const auto path = std::filesystem::path(common.out_dir) /
                    (std::string(command) + (json ? ".json" : ".csv"));
  write_atomic(path, json ? render_json(meta, result.table) : render_csv(meta, result.table));
  return path;
}

inline std::size_t require_square(std::uint64_t d, std::string_view what) {
  const auto r = exact_sqrt(d);
  if (d == 0 || !r) {
    throw UsageError(std::string(what) + ": d = " + std::to_string(d) +
                     " is not a positive perfect square");
  }
  return *r;
}

// fig2 ----------------------------------------------------------------------

struct Fig2Params {
  std::vector<std::uint64_t> d{4, 16, 64, 256};
  std::uint64_t samples = 100000;
};

inline CommandResult run_fig2(const Fig2Params& p, const CommonOptions& common) {
  if (p.samples == 0) throw UsageError("--samples must be positive");
  for (auto d : p.d) require_square(d, "--d");
  CommandResult r;
  r.params["d"] = p.d;
  r.params["samples"] = p.samples;
  r.table.columns = {"d_A", "empirical", "ci_lo", "ci_hi", "closed_form"};
  const RngStream root(common.seed, 0);
  for (auto d : p.d) {
    const auto c = sample_detection_frequency(d, p.samples, root.substream(d));
    const auto ci = wilson_interval(c.hits, c.n);
    Json row;
    row["d_A"] = static_cast<std::uint64_t>(*exact_sqrt(d));
    row["empirical"] = static_cast<double>(c.hits) / static_cast<double>(c.n);
    row["ci_lo"] = ci.lo;
    row["ci_hi"] = ci.hi;
    row["closed_form"] = detection_power_closed_form(d);
    r.table.add(std::move(row));
  }
  return r;
}

// scaling -------------------------------------------------------------------

struct ScalingParams {
  std::vector<ProtocolId> protocols{ProtocolId::RandMeas, ProtocolId::Witness,
                                    ProtocolId::SwapTest};
  std::vector<std::uint64_t> d{16, 64, 256, 1024};
  Targets targets;
  std::uint64_t unitaries = kDefaultUnitaries;
};

inline RngStream scaling_stream(std::uint64_t seed, ProtocolId p, std::uint64_t d) {
  return RngStream(seed, 0).substream(static_cast<std::uint64_t>(p)).substream(d);
}

inline CommandResult run_scaling(const ScalingParams& p, const CommonOptions& common) {
  if (p.d.size() < 3) throw UsageError("scaling needs at least 3 values of --d");
  for (auto d : p.d) require_square(d, "--d");
  try {
    p.targets.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  SearchOptions opts;
  opts.trials = common.trials.value_or(2000);
  opts.budget_cap = common.budget_cap.value_or(1'000'000);
  opts.unitaries = p.unitaries;
  if (opts.trials == 0) throw UsageError("--trials must be positive");

  CommandResult r;
  Json protos = Json::array();
  for (auto pr : p.protocols) protos.push_back(std::string(to_string(pr)));
  r.params["protocols"] = protos;
  r.params["d"] = p.d;
  r.params["completeness"] = p.targets.completeness;
  r.params["soundness"] = p.targets.soundness;
  r.params["trials"] = opts.trials;
  r.params["budget_cap"] = opts.budget_cap;
  r.params["unitaries"] = opts.unitaries;
  r.table.columns = {"row",          "protocol", "d",           "attained",  "level",
                     "budget",       "completeness", "completeness_lo", "soundness",
                     "soundness_lo", "probes",   "slope",       "stderr",    "note"};
  for (auto proto : p.protocols) {
    std::vector<ScalingPoint> points;
    for (auto d : p.d) {
      auto pt = find_min_budget({d, 1, 2}, proto, p.targets, scaling_stream(common.seed, proto, d),
                                opts);
      Json row;
      row["row"] = "point";
      row["protocol"] = std::string(to_string(proto));
      row["d"] = d;
      row["attained"] = pt.attained;
      row["probes"] = pt.probes.size();
      if (pt.attained) {
        row["level"] = pt.level;
        row["budget"] = pt.budget;
        row["completeness"] = pt.achieved->completeness.value;
        row["completeness_lo"] = pt.achieved->completeness.ci.lo;
        if (pt.achieved->soundness) {
          row["soundness"] = pt.achieved->soundness->value;
          row["soundness_lo"] = pt.achieved->soundness->ci.lo;
        }
      }
      r.table.add(std::move(row));
      if (!pt.attained) {
        Json warn;
        warn["row"] = "warning";
        warn["protocol"] = std::string(to_string(proto));
        warn["d"] = d;
        warn["note"] = "budget not attained within cap; excluded from fit";
        r.table.add(std::move(warn));
      }
      points.push_back(std::move(pt));
    }
    Json fit_row;
    fit_row["row"] = "fit";
    fit_row["protocol"] = std::string(to_string(proto));
    try {
      const auto fit = fit_scaling_exponent(points);
      fit_row["slope"] = fit.slope;
      fit_row["stderr"] = fit.stderr_slope;
      fit_row["probes"] = fit.n_points;
    } catch (const std::invalid_argument& e) {
      fit_row["note"] = std::string("no fit: ") + e.what();
    }
    r.table.add(std::move(fit_row));
  }
  return r;
}

// bounds --------------------------------------------------------------------

struct BoundsParams {
  BoundKind variant = BoundKind::PureBipartite;
  std::vector<std::uint64_t> d{16, 256, 4096};
  std::uint64_t k = 1;
  std::uint64_t parties = 2;
  std::vector<std::uint64_t> copies{1, 2, 3, 4, 5, 6, 7, 8};
};

inline CommandResult run_bounds(const BoundsParams& p, const CommonOptions&) {
  BoundVariant v{p.variant, p.k, p.parties};
  try {
    v.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  for (auto d : p.d) {
    if (d < 2) throw UsageError("--d: bounds need d >= 2");
  }
  for (auto t : p.copies) {
    if (t < 1) throw UsageError("--T: copies must be >= 1");
  }
  CommandResult r;
  r.params["variant"] = std::string(to_string(p.variant));
  r.params["d"] = p.d;
  r.params["k"] = p.k;
  r.params["K"] = p.parties;
  r.params["T"] = p.copies;
  r.params["log_base"] = "e";
  r.table.columns = {"variant", "d", "k", "K", "T", "tv_upper", "le_cam_success", "min_copies"};
  for (auto d : p.d) {
    for (auto t : p.copies) {
      const auto b = tv_upper_bound(d, t, v);
      Json row;
      row["variant"] = std::string(to_string(p.variant));
      row["d"] = d;
      row["k"] = b.k;
      row["K"] = b.parties;
      row["T"] = t;
      row["tv_upper"] = b.tv_upper;
      row["le_cam_success"] = b.le_cam_success;
      row["min_copies"] = b.min_copies;
      r.table.add(std::move(row));
    }
  }
  return r;
}

// verify --------------------------------------------------------------------

struct VerifyParams {
  std::vector<std::string> suites = known_suites();
  std::optional<std::vector<std::uint64_t>> d;
  std::optional<std::vector<std::uint64_t>> copies;
  std::optional<std::uint64_t> samples;
};

inline CommandResult run_verify(const VerifyParams& p, const CommonOptions& common) {
  if (p.samples && *p.samples < 4) throw UsageError("--samples must be at least 4");
  CommandResult r;
  Json suites = Json::array();
  for (const auto& s : p.suites) suites.push_back(s);
  r.params["suite"] = suites;
  if (p.d) r.params["d"] = *p.d;
  if (p.copies) r.params["T"] = *p.copies;
  if (p.samples) r.params["samples"] = *p.samples;
  r.table.columns = {"suite", "case", "observed", "expected", "tolerance", "passed"};
  const RngStream root(common.seed, 0);

  auto add = [&](const std::string& suite, const std::string& label, double observed,
                 double expected, double tol, bool ok) {
    Json row;
    row["suite"] = suite;
    row["case"] = label;
    row["observed"] = observed;
    row["expected"] = expected;
    row["tolerance"] = tol;
    row["passed"] = ok;
    r.table.add(std::move(row));
    r.passed = r.passed && ok;
  };

  for (std::size_t si = 0; si < p.suites.size(); ++si) {
    const auto& suite = p.suites[si];
    auto suite_rng = root.substream(si);
    if (suite == "haar-moment") {
      std::vector<std::pair<std::uint64_t, std::uint64_t>> cases{{2, 2}, {3, 3}};
      if (p.d || p.copies) {
        cases.clear();
        for (auto d : p.d.value_or(std::vector<std::uint64_t>{2})) {
          for (auto t : p.copies.value_or(std::vector<std::uint64_t>{2})) cases.emplace_back(d, t);
        }
      }
      const auto n = p.samples.value_or(100000);
      for (auto [d, t] : cases) {
        if (!checked_pow(d, t, kDefaultOperatorDimCap)) throw UsageError("haar-moment: d^T too large");
        const auto rep = check_haar_moment_lemma(d, t, n, suite_rng);
        const double tol = haar_moment_tolerance(t, n);
        add(suite, "d=" + std::to_string(d) + ",T=" + std::to_string(t), rep.max_deviation, 0.0,
            tol, rep.max_deviation < tol);
      }
    } else if (suite == "product-lemma") {
      struct Case {
        std::uint64_t d, t, k;
        ProductLemmaVariant v;
      };
      std::vector<Case> cases{{4, 2, 1, ProductLemmaVariant::Pure},
                              {4, 3, 1, ProductLemmaVariant::Pure},
                              {4, 2, 2, ProductLemmaVariant::MixedSingle}};
      if (p.d || p.copies) {
        cases.clear();
        for (auto d : p.d.value_or(std::vector<std::uint64_t>{4})) {
          require_square(d, "product-lemma --d");
          for (auto t : p.copies.value_or(std::vector<std::uint64_t>{2})) {
            cases.push_back({d, t, 1, ProductLemmaVariant::Pure});
          }
        }
      }
      const auto n = p.samples.value_or(1000);
      for (const auto& c : cases) {
        if (!checked_pow(c.d, c.t, kDefaultOperatorDimCap)) {
          throw UsageError("product-lemma: d^T too large");
        }
        ProductLemmaOptions o;
        o.variant = c.v;
        o.k = c.k;
        const auto rep = check_product_state_lemma(c.d, c.t, n, suite_rng, o);
        add(suite,
            std::string(to_string(c.v)) + ":d=" + std::to_string(c.d) + ",T=" +
                std::to_string(c.t) + ",k=" + std::to_string(c.k),
            rep.min_value, rep.bound, 1e-8, rep.passed());
      }
    } else if (suite == "twirl") {
      const auto dims = p.d.value_or(std::vector<std::uint64_t>{2, 3});
      const auto n = p.samples.value_or(100000);
      for (auto da : dims) {
        if (da < 2 || da > 16) throw UsageError("twirl: d_A must lie in [2, 16]");
        const auto rep = check_twirl_identities(da, n, suite_rng);
        const std::string tag = "d_A=" + std::to_string(da);
        add(suite, tag + ":swap", rep.swap_max_deviation, 0.0, 0.05,
            rep.swap_max_deviation < 0.05);
        add(suite, tag + ":second_moment", rep.second_moment.mean, rep.second_moment_expected,
            4.0 * rep.second_moment.stderr_mean,
            rep.second_moment.agrees_with(rep.second_moment_expected));
        add(suite, tag + ":estimator", rep.estimator.mean, rep.purity,
            4.0 * rep.estimator.stderr_mean, rep.estimator.agrees_with(rep.purity));
      }
    } else if (suite == "swap-moments") {
      const auto dims = p.d.value_or(std::vector<std::uint64_t>{4, 16, 64});
      const auto n = p.samples.value_or(100000);
      for (auto d : dims) {
        require_square(d, "swap-moments --d");
        const auto rep = check_swap_moments(d, n, suite_rng);
        const std::string tag = "d=" + std::to_string(d);
        add(suite, tag + ":mean", rep.mean.observed, rep.mean.expected,
            4.0 * rep.mean.stderr_observed, rep.mean.passed());
        add(suite, tag + ":variance", rep.variance.observed, rep.variance.expected,
            4.0 * rep.variance.stderr_observed, rep.variance.passed());
      }
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Entry point

namespace detail {

inline bool is_subcommand(std::string_view s) {
  return s == "fig2" || s == "scaling" || s == "bounds" || s == "verify";
}

/// Expands --config into flags placed right after the subcommand, so that
/// later command-line occurrences win.
inline std::vector<std::string> expand_config(std::vector<std::string> args) {
  std::optional<std::string> config;
  std::vector<std::string> kept;
  kept.reserve(args.size());
  for (std::size_t i = 0; i < args.size(); ++i) {
    const auto& a = args[i];
    if (a == "--config") {
      if (i + 1 >= args.size()) throw UsageError("--config needs a file argument");
      config = args[++i];
    } else if (a.rfind("--config=", 0) == 0) {
      config = a.substr(9);
    } else {
      kept.push_back(a);
    }
  }
  if (!config) return kept;
  std::vector<std::string> injected;
  for (const auto& [k, v] : read_config_file(*config)) injected.push_back("--" + k + "=" + v);
  auto it = std::find_if(kept.begin(), kept.end(), [](const std::string& s) {
    return is_subcommand(s);
  });
  if (it == kept.end()) throw UsageError("--config given without a subcommand");
  kept.insert(it + 1, injected.begin(), injected.end());
  return kept;
}

}  // namespace detail

/// Runs the command line; returns the process exit status.
inline int main(int argc, const char* const* argv, std::ostream& out = std::cout,
                std::ostream& err = std::cerr) {
  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    args = detail::expand_config(std::move(args));
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  CLI::App app{"Entanglement detection sample-complexity lab", "edplab"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  CommonOptions common;
  std::string format = "csv";
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", common.seed, "Random seed");
    sub->add_option("--out", common.out_dir, "Output directory");
    sub->add_option("--format", format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--trials", common.trials, "Trials per probe or samples per point");
    sub->add_option("--budget-cap", common.budget_cap, "Largest total budget searched");
  };

  std::string fig2_d = "4,16,64,256";
  std::optional<std::uint64_t> fig2_samples;
  auto* fig2 = app.add_subcommand("fig2", "Witness detection power on pi*_{d,1}");
  add_common(fig2);
  fig2->add_option("--d", fig2_d, "Comma list of d (perfect squares)");
  fig2->add_option("--samples", fig2_samples, "Samples per d");

  std::string sc_protocols = "RAND_MEAS,WITNESS,SWAP_TEST";
  std::string sc_d = "16,64,256,1024";
  std::string sc_completeness = "1/4";
  std::string sc_soundness = "5/6";
  std::uint64_t sc_unitaries = kDefaultUnitaries;
  auto* scaling = app.add_subcommand("scaling", "Minimal budgets and log-log slopes");
  add_common(scaling);
  scaling->add_option("--protocols", sc_protocols, "Comma list of protocols");
  scaling->add_option("--d", sc_d, "Comma list of d (at least 3)");
  scaling->add_option("--completeness", sc_completeness, "Completeness target");
  scaling->add_option("--soundness", sc_soundness, "Soundness target");
  scaling->add_option("--unitaries", sc_unitaries, "N_U for RAND_MEAS");

  std::string b_variant = "PURE_BIPARTITE";
  std::string b_d = "16,256,4096";
  std::uint64_t b_k = 1;
  std::uint64_t b_K = 2;
  std::string b_T = "1..8";
  auto* bounds = app.add_subcommand("bounds", "TV upper bounds and minimum copies");
  add_common(bounds);
  bounds->add_option("--variant", b_variant, "PURE_BIPARTITE, MIXED or MULTIPARTITE");
  bounds->add_option("--d", b_d, "Comma list of d");
  bounds->add_option("--k", b_k, "Environment dimension (MIXED)");
  bounds->add_option("--K", b_K, "Number of parties (MULTIPARTITE)");
  bounds->add_option("--T", b_T, "Copies, e.g. 1..8");

  std::string v_suite = "all";
  std::optional<std::string> v_d;
  std::optional<std::string> v_T;
  std::optional<std::uint64_t> v_samples;
  auto* verify = app.add_subcommand("verify", "Oracle checks of the underlying identities");
  add_common(verify);
  verify->add_option("--suite", v_suite, "all or comma list of suites");
  verify->add_option("--d", v_d, "Dimensions for the selected suites");
  verify->add_option("--T", v_T, "Copies for haar-moment / product-lemma");
  verify->add_option("--samples", v_samples, "Samples per check");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }
  common.format = format == "json" ? Format::Json : Format::Csv;

  try {
    CommandResult result;
    std::string name;
    if (fig2->parsed()) {
      name = "fig2";
      Fig2Params p;
      p.d = parse_u64_list(fig2_d, "--d");
      p.samples = fig2_samples.value_or(common.trials.value_or(p.samples));
      result = run_fig2(p, common);
    } else if (scaling->parsed()) {
      name = "scaling";
      ScalingParams p;
      p.protocols = parse_protocol_list(sc_protocols);
      p.d = parse_u64_list(sc_d, "--d");
      p.targets.completeness = parse_ratio(sc_completeness, "--completeness");
      p.targets.soundness = parse_ratio(sc_soundness, "--soundness");
      p.unitaries = sc_unitaries;
      if (p.unitaries < 1) throw UsageError("--unitaries must be positive");
      result = run_scaling(p, common);
    } else if (bounds->parsed()) {
      name = "bounds";
      BoundsParams p;
      try {
        p.variant = parse_bound_kind(b_variant);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      p.d = parse_u64_list(b_d, "--d");
      p.k = b_k;
      p.parties = b_K;
      p.copies = parse_u64_list(b_T, "--T");
      result = run_bounds(p, common);
    } else {
      name = "verify";
      VerifyParams p;
      p.suites = parse_suites(v_suite);
      if (v_d) p.d = parse_u64_list(*v_d, "--d");
      if (v_T) p.copies = parse_u64_list(*v_T, "--T");
      p.samples = v_samples ? v_samples : common.trials;
      result = run_verify(p, common);
    }
    const auto path = emit(name, common, result);
    out << path.string() << '\n';
    if (!result.passed) {
      err << name << ": one or more checks failed\n";
      return kExitFailure;
    }
    return kExitOk;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace edplab::cli
