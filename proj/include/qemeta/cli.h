// Copyright 2026 The qemeta Authors.
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

#ifndef QEMETA_CLI_H_
#define QEMETA_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "qemeta/types.h"

namespace qemeta {

inline constexpr const char* kToolVersion = "0.1.0";

// Runs one CLI invocation; args excludes the program name. Reports go to
// `out` (or the --out file), a single-line JSON error to `err`. Returns the
// process exit code: 0 on success, otherwise the ErrorKind value.
int RunPipeline(const std::vector<std::string>& args, std::ostream& out,
                std::ostream& err);

// Flattened "path = value" rendering of a report, one line per leaf.
std::string RenderText(const nlohmann::json& report);

enum class InputRole { kHuman, kMetric };

// Loads an annotation (JSON Lines) or score (CSV) file. For kHuman the
// human-kind scorers are kept if there are any, otherwise every scorer is
// taken as human; likewise for kMetric with metric and baseline kinds.
ScoreTable LoadScorers(const std::string& path, InputRole role);

// Merges a metric table into a human table, renaming metric scorers whose
// ids collide with a human scorer to "<id>@metric".
ScoreTable MergeRoles(const ScoreTable& humans, const ScoreTable& metrics,
                      std::vector<std::string>* metric_ids);

}  // namespace qemeta

#endif  // QEMETA_CLI_H_
