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

#ifndef PHV_STATS_HPP
#define PHV_STATS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>

namespace phv {

struct Interval {
  double low;
  double high;
};

// Wilson score interval for k successes in n trials.
inline Interval wilson_interval(std::size_t k, std::size_t n, double z = 1.96) {
  if (n == 0) return {0.0, 1.0};
  const double nn = static_cast<double>(n);
  const double p = static_cast<double>(k) / nn;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nn;
  const double center = (p + z2 / (2 * nn)) / denom;
  const double half = z * std::sqrt(p * (1 - p) / nn + z2 / (4 * nn * nn)) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

// Standard deviation of a frequency over n Bernoulli(p) trials.
inline double binomial_sigma(double p, std::size_t n) {
  return n == 0 ? 0.0 : std::sqrt(std::max(p * (1 - p), 0.0) / static_cast<double>(n));
}

struct Tally {
  std::size_t rounds = 0;
  std::size_t accepted = 0;
  double frequency() const {
    return rounds == 0 ? 0.0 : static_cast<double>(accepted) / static_cast<double>(rounds);
  }
};

// Outcome of a batch of independent game rounds.
struct GameStats {
  std::string strategy;
  std::size_t rounds = 0;
  std::size_t accepted = 0;
  double frequency = 0.0;
  Interval wilson{0.0, 1.0};
  std::map<std::string, Tally> per_test;
  std::uint64_t transcript_digest = 0;

  void finish();
};

inline void GameStats::finish() {
  frequency = rounds == 0 ? 0.0 : static_cast<double>(accepted) / static_cast<double>(rounds);
  wilson = wilson_interval(accepted, rounds);
}

}  // namespace phv

#endif  // PHV_STATS_HPP
