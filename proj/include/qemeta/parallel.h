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

#ifndef QEMETA_PARALLEL_H_
#define QEMETA_PARALLEL_H_

#include <cstddef>
#include <functional>

namespace qemeta {

// Environment variable consulted for the default worker count.
inline constexpr const char* kThreadsEnvVar = "QEMETA_THREADS";

// Process-wide worker count used by ParallelFor. Defaults to $QEMETA_THREADS
// or 1. Values < 1 are clamped to 1.
int ThreadCount();
void SetThreadCount(int threads);

// Runs body(i) for i in [0, n). Work items must write only to their own
// output slots; the first exception thrown by any item is rethrown.
void ParallelFor(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace qemeta

#endif  // QEMETA_PARALLEL_H_
