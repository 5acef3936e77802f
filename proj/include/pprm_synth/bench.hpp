// Copyright 2026 The pprm-synth Authors
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

#pragma once

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <mutex>
#include <thread>

#include "pipeline.hpp"
#include "report.hpp"

namespace pprm {

struct ManifestEntry {
  std::string path;
  std::optional<std::size_t> reference_qc;
  std::string source;
};

/// One entry per line: path[,reference_qc,source]; '#' starts a comment.
inline std::vector<ManifestEntry> parse_manifest(std::string_view text) {
  std::vector<ManifestEntry> out;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  auto trim = [](std::string s) {
    auto a = s.find_first_not_of(" \t\r");
    auto b = s.find_last_not_of(" \t\r");
    return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    line = trim(line);
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::istringstream ls(line);
    std::string f;
    while (std::getline(ls, f, ',')) fields.push_back(trim(f));
    if (fields.empty() || fields.size() > 3 || fields[0].empty())
      throw std::runtime_error("manifest line " + std::to_string(line_no) +
                               ": expected path[,reference_qc,source]");
    ManifestEntry e{fields[0], std::nullopt, ""};
    if (fields.size() >= 2 && !fields[1].empty()) {
      try {
        std::size_t used = 0;
        e.reference_qc = std::stoul(fields[1], &used);
        if (used != fields[1].size()) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        throw std::runtime_error("manifest line " + std::to_string(line_no) +
                                 ": bad reference cost '" + fields[1] + "'");
      }
    }
    if (fields.size() == 3) e.source = fields[2];
    out.push_back(std::move(e));
  }
  return out;
}

struct BenchRow {
  std::string name;
  std::optional<std::size_t> qc_ours;
  std::optional<std::size_t> qc_reference;
  std::string reference_source;
  bool verified = false;
  double runtime_ms = 0.0;
  std::string error;
};

struct BenchTable {
  std::vector<BenchRow> rows;
  std::optional<double> average_ours;
  std::optional<double> average_reference;
};

/// Worker count: PPRM_SYNTH_THREADS if set, else the hardware concurrency.
inline unsigned bench_threads() {
  unsigned n = std::max(1U, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("PPRM_SYNTH_THREADS")) {
    try {
      n = std::max(1, std::stoi(env));
    } catch (const std::exception&) {
    }
  }
  return n;
}

inline BenchTable run_bench(const std::vector<ManifestEntry>& manifest,
                            const std::filesystem::path& base_dir,
                            const PipelineConfig& config,
                            unsigned threads = bench_threads()) {
  PipelineConfig cfg = config;
  cfg.stop_after.reset();
  cfg.verify = true;
  std::vector<std::string> paths;
  for (const auto& e : manifest)
    if (std::find(paths.begin(), paths.end(), e.path) == paths.end())
      paths.push_back(e.path);

  std::vector<BenchRow> results(paths.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < paths.size(); i = next++) {
      BenchRow& row = results[i];
      std::filesystem::path p = paths[i];
      if (p.is_relative()) p = base_dir / p;
      row.name = p.stem().string();
      try {
        auto r = run_pipeline(load_input(p.string(), cfg.strict_pprm), cfg);
        row.qc_ours = r.cost->qc_total;
        row.verified = r.verification && r.verification->equivalent();
        row.runtime_ms = r.runtime_ms;
        if (!row.verified) row.error = "verification failed";
      } catch (const std::exception& e) {
        row.error = e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  const unsigned n = std::max(1U, std::min<unsigned>(threads, paths.size()));
  for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  BenchTable table;
  for (const auto& e : manifest) {
    auto at = std::find(paths.begin(), paths.end(), e.path) - paths.begin();
    BenchRow row = results[static_cast<std::size_t>(at)];
    row.qc_reference = e.reference_qc;
    row.reference_source = e.source;
    table.rows.push_back(std::move(row));
  }
  std::stable_sort(table.rows.begin(), table.rows.end(),
                   [](const BenchRow& a, const BenchRow& b) {
                     return std::tie(a.name, a.reference_source) <
                            std::tie(b.name, b.reference_source);
                   });
  double sum_ours = 0, sum_ref = 0;
  std::size_t n_ours = 0, n_ref = 0;
  for (const auto& r : table.rows) {
    if (r.qc_ours) {
      sum_ours += static_cast<double>(*r.qc_ours);
      ++n_ours;
    }
    if (r.qc_reference) {
      sum_ref += static_cast<double>(*r.qc_reference);
      ++n_ref;
    }
  }
  if (n_ours) table.average_ours = sum_ours / static_cast<double>(n_ours);
  if (n_ref) table.average_reference = sum_ref / static_cast<double>(n_ref);
  return table;
}

namespace detail {

inline std::string fixed2(double v) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(2) << v;
  return s.str();
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

}  // namespace detail

inline std::string bench_csv(const BenchTable& t, bool timings = false) {
  std::ostringstream out;
  out << "function,qc_ours,qc_reference,reference_source,verified";
  if (timings) out << ",runtime_ms";
  out << ",error\n";
  for (const auto& r : t.rows) {
    out << detail::csv_field(r.name) << ","
        << (r.qc_ours ? std::to_string(*r.qc_ours) : "") << ","
        << (r.qc_reference ? std::to_string(*r.qc_reference) : "") << ","
        << detail::csv_field(r.reference_source) << ","
        << (r.verified ? "true" : "false");
    if (timings) out << "," << detail::fixed2(r.runtime_ms);
    out << "," << detail::csv_field(r.error) << "\n";
  }
  out << "Average," << (t.average_ours ? detail::fixed2(*t.average_ours) : "")
      << ","
      << (t.average_reference ? detail::fixed2(*t.average_reference) : "")
      << ",,";
  if (timings) out << ",";
  out << ",\n";
  return out.str();
}

inline nlohmann::ordered_json bench_json(const BenchTable& t,
                                         bool timings = false) {
  nlohmann::ordered_json j;
  auto& rows = j["rows"] = nlohmann::ordered_json::array();
  for (const auto& r : t.rows) {
    nlohmann::ordered_json row;
    row["function"] = r.name;
    row["qc_ours"] = r.qc_ours ? nlohmann::ordered_json(*r.qc_ours) : nullptr;
    row["qc_reference"] =
        r.qc_reference ? nlohmann::ordered_json(*r.qc_reference) : nullptr;
    row["reference_source"] = r.reference_source;
    row["verified"] = r.verified;
    if (timings) row["runtime_ms"] = r.runtime_ms;
    if (!r.error.empty()) row["error"] = r.error;
    rows.push_back(std::move(row));
  }
  j["average"] = {
      {"qc_ours", t.average_ours ? nlohmann::ordered_json(detail::fixed2(*t.average_ours))
                                 : nullptr},
      {"qc_reference", t.average_reference
                           ? nlohmann::ordered_json(detail::fixed2(*t.average_reference))
                           : nullptr}};
  return j;
}

}  // namespace pprm
