// Copyright 2026 The akmeter Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <functional>

namespace akmeter {

/// Worker count: AKMETER_THREADS if set (>= 1), otherwise hardware concurrency.
std::size_t thread_limit();

/// Calls body(begin, end) on disjoint chunks covering [0, count), possibly concurrently.
/// Exceptions from workers are rethrown on the calling thread. Callers must not
/// depend on chunk boundaries for their results.
void parallel_for(std::size_t count, const std::function<void(std::size_t, std::size_t)> &body);

}  // namespace akmeter
