// Copyright 2026 The phv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "phv/sweep.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <stdexcept>

namespace phv {
namespace {

template <typename T>
std::vector<T> axis(const Json& config, const char* key, T fallback) {
  if (!config.contains(key)) return {fallback};
  const Json& v = config.at(key);
  if (!v.is_array() || v.empty()) {
    throw std::invalid_argument(std::string("sweep config: '") + key +
                                "' must be a non-empty array");
  }
  return v.get<std::vector<T>>();
}

std::string number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string optional_number(const std::optional<double>& v) { return v ? number(*v) : ""; }

std::string quote(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

std::vector<SweepCell> expand_sweep(const Json& config, const std::string& base_dir) {
  if (!config.is_object() || !config.contains("circuits")) {
    throw std::invalid_argument("sweep config: missing 'circuits'");
  }
  const auto variants = axis<std::string>(config, "variants", "fv");
  const auto strategies = axis<std::string>(config, "strategies", "honest");
  const auto rounds = axis<std::size_t>(config, "rounds", 1000);
  const auto seeds = axis<std::uint64_t>(config, "seeds", 1);
  const auto reps = axis<int>(config, "N", VerificationParams{}.n_reps);
  const auto deltas = axis<double>(config, "delta", VerificationParams{}.delta);
  const auto gammas = axis<double>(config, "gamma", VerificationParams{}.gamma);

  std::vector<SweepCell> cells;
  int index = 0;
  for (const Json& entry : config.at("circuits")) {
    const std::string label = entry.value("label", "circuit" + std::to_string(index++));
    std::optional<Circuit> circuit;
    if (entry.contains("text")) {
      circuit = parse_circuit(entry.at("text").get<std::string>());
    } else if (entry.contains("path")) {
      std::filesystem::path p = entry.at("path").get<std::string>();
      if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
      circuit = load_circuit(p.string());
    } else {
      throw std::invalid_argument("sweep config: circuit '" + label + "' needs 'path' or 'text'");
    }
    const std::string claimed = entry.value("S", "");
    for (const auto& variant : variants) {
      for (const auto& strategy : strategies) {
        for (std::size_t r : rounds) {
          for (std::uint64_t seed : seeds) {
            for (int n : reps) {
              for (double d : deltas) {
                for (double g : gammas) {
                  ProtocolRun run(*circuit);
                  run.claimed = claimed;
                  run.variant = parse_variant(variant);
                  run.strategy = strategy;
                  run.rounds = r;
                  run.seed = seed;
                  run.params.n_reps = n;
                  run.params.delta = d;
                  run.params.gamma = g;
                  cells.push_back({label, std::move(run)});
                }
              }
            }
          }
        }
      }
    }
  }
  return cells;
}

std::vector<SweepRow> run_sweep(const std::vector<SweepCell>& cells) {
  std::vector<SweepRow> rows;
  for (const auto& cell : cells) {
    SweepRow row;
    row.label = cell.label;
    row.claimed = cell.run.claimed;
    row.n_reps = cell.run.params.n_reps;
    row.delta = cell.run.params.delta;
    row.gamma = cell.run.params.gamma;
    row.variant = variant_name(cell.run.variant);
    row.strategy = cell.run.strategy;
    row.rounds = cell.run.rounds == 0 ? default_rounds(cell.run.variant) : cell.run.rounds;
    row.seed = cell.run.seed;
    const auto start = std::chrono::steady_clock::now();
    try {
      const PosthocResult res = run_posthoc(cell.run);
      const Json& rep = res.report;
      row.claimed = rep.at("claim").at("S").get<std::string>();
      row.frequency = rep.at("game").at("frequency").get<double>();
      if (!rep.at("game").at("exhaustive").is_null()) {
        row.exhaustive = rep.at("game").at("exhaustive").get<double>();
      }
      if (!rep.at("energies").at("ground").is_null()) {
        row.ground_energy = rep.at("energies").at("ground").get<double>();
      }
      row.a = rep.at("instance").at("a").get<double>();
      row.b = rep.at("instance").at("b").get<double>();
      row.accept = res.accept;
    } catch (const std::exception& e) {
      row.error = e.what();
    }
    row.runtime_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    rows.push_back(std::move(row));
  }
  return rows;
}

const std::vector<std::string>& sweep_columns() {
  static const std::vector<std::string> cols = {
      "circuit", "S",          "N",             "delta", "gamma", "variant",
      "strategy", "rounds",    "seed",          "frequency", "exhaustive",
      "ground_energy", "a",    "b",             "accept", "runtime_s", "error"};
  return cols;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out;
  const auto& cols = sweep_columns();
  for (size_t i = 0; i < cols.size(); ++i) {
    out += (i ? "," : "") + cols[i];
  }
  out += '\n';
  for (const auto& r : rows) {
    const std::vector<std::string> cells = {
        quote(r.label),
        quote(r.claimed),
        std::to_string(r.n_reps),
        number(r.delta),
        number(r.gamma),
        r.variant,
        quote(r.strategy),
        std::to_string(r.rounds),
        std::to_string(r.seed),
        optional_number(r.frequency),
        optional_number(r.exhaustive),
        optional_number(r.ground_energy),
        optional_number(r.a),
        optional_number(r.b),
        r.accept ? (*r.accept ? "1" : "0") : "",
        number(r.runtime_s),
        quote(r.error)};
    for (size_t i = 0; i < cells.size(); ++i) {
      out += (i ? "," : "") + cells[i];
    }
    out += '\n';
  }
  return out;
}

std::vector<std::map<std::string, std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  bool any = false;
  for (size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"' && i + 1 < text.size() && text[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
      continue;
    }
    if (c == '"') {
      quoted = true;
      any = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
      any = true;
    } else if (c == '\n' || c == '\r') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      if (any || !cur.empty()) {
        fields.push_back(std::move(cur));
        records.push_back(std::move(fields));
      }
      fields.clear();
      cur.clear();
      any = false;
    } else {
      cur += c;
      any = true;
    }
  }
  if (quoted) throw std::invalid_argument("parse_csv: unterminated quote");
  if (any || !cur.empty()) {
    fields.push_back(std::move(cur));
    records.push_back(std::move(fields));
  }
  std::vector<std::map<std::string, std::string>> rows;
  if (records.empty()) return rows;
  const auto& header = records.front();
  for (size_t r = 1; r < records.size(); ++r) {
    if (records[r].size() != header.size()) {
      throw std::invalid_argument("parse_csv: row " + std::to_string(r) + " has " +
                                  std::to_string(records[r].size()) + " fields, expected " +
                                  std::to_string(header.size()));
    }
    std::map<std::string, std::string> row;
    for (size_t i = 0; i < header.size(); ++i) row[header[i]] = records[r][i];
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace phv
