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

#ifndef PHV_LOG_HPP
#define PHV_LOG_HPP

#include <functional>
#include <string>

namespace phv {

using LogSink = std::function<void(const std::string&)>;

// Replaces the warning sink (stderr by default); returns the previous one.
LogSink set_log_sink(LogSink sink);
void log_warning(const std::string& message);

}  // namespace phv

#endif  // PHV_LOG_HPP
