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

#include <filesystem>
#include <string>

namespace akmeter {

/// 17 significant digits, enough to round-trip any double.
std::string format_double(double value);

/// Writes to a sibling temporary file and renames it over `path`.
void write_file_atomically(const std::filesystem::path &path, const std::string &content);

}  // namespace akmeter
