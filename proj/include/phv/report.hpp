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

#ifndef PHV_REPORT_HPP
#define PHV_REPORT_HPP

#include <string>

#include "phv/environment.hpp"
#include "phv/game_chsh.hpp"
#include "phv/stats.hpp"

namespace phv {

Json stats_to_json(const GameStats& s);
Json ji_report_to_json(const JiReport& r);
// "0x" followed by 16 hex digits.
std::string digest_string(std::uint64_t digest);

}  // namespace phv

#endif  // PHV_REPORT_HPP
