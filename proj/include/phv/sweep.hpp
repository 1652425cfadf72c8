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

#ifndef PHV_SWEEP_HPP
#define PHV_SWEEP_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "phv/environment.hpp"
#include "phv/protocol.hpp"

namespace phv {

struct SweepCell {
  std::string label;
  ProtocolRun run;
};

// Grid config:
//   {"circuits": [{"label": .., "path": .. | "text": .., "S": ..}],
//    "variants": ["fv", "ji"], "strategies": ["honest"], "rounds": [1000],
//    "seeds": [1], "N": [6], "delta": [0.1], "gamma": [0.8]}
// Every key but "circuits" is optional. Relative paths resolve against
// `base_dir`.
std::vector<SweepCell> expand_sweep(const Json& config, const std::string& base_dir = ".");

struct SweepRow {
  std::string label;
  std::string claimed;
  int n_reps = 0;
  double delta = 0.0;
  double gamma = 0.0;
  std::string variant;
  std::string strategy;
  std::size_t rounds = 0;
  std::uint64_t seed = 0;
  std::optional<double> frequency;
  std::optional<double> exhaustive;
  std::optional<double> ground_energy;
  std::optional<double> a;
  std::optional<double> b;
  std::optional<bool> accept;
  double runtime_s = 0.0;
  std::string error;
};

// Runs every cell; a failing cell fills the error column and the sweep
// continues.
std::vector<SweepRow> run_sweep(const std::vector<SweepCell>& cells);

const std::vector<std::string>& sweep_columns();
std::string sweep_csv(const std::vector<SweepRow>& rows);
// Parses CSV written by sweep_csv into one column -> value map per row.
std::vector<std::map<std::string, std::string>> parse_csv(const std::string& text);

}  // namespace phv

#endif  // PHV_SWEEP_HPP
