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

#include "phv/report.hpp"

#include "phv/hash.hpp"

namespace phv {

std::string digest_string(std::uint64_t digest) { return "0x" + hex64(digest); }

Json stats_to_json(const GameStats& s) {
  Json j;
  j["strategy"] = s.strategy;
  j["rounds"] = s.rounds;
  j["accepted"] = s.accepted;
  j["frequency"] = s.frequency;
  j["wilson_95"] = {s.wilson.low, s.wilson.high};
  j["sigma"] = binomial_sigma(s.frequency, s.rounds);
  Json per = Json::object();
  for (const auto& [name, t] : s.per_test) {
    per[name] = {{"rounds", t.rounds}, {"accepted", t.accepted}, {"frequency", t.frequency()}};
  }
  j["per_test"] = per;
  j["transcript_hash"] = digest_string(s.transcript_digest);
  return j;
}

Json ji_report_to_json(const JiReport& r) {
  Json j = stats_to_json(r.stats);
  j["chsh_win_rate"] = r.chsh.frequency();
  j["energy_accept_rate"] = r.energy.frequency();
  j["energy_estimate"] = r.energy_estimate;
  j["energy_standard_error"] = r.energy_standard_error;
  return j;
}

}  // namespace phv
