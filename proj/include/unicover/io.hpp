// Copyright 2026 The unicover Authors
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

#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "unicover/metric_core.hpp"

namespace unicover {

/// Malformed document or schema mismatch. Contract violations on otherwise
/// well-formed input (asymmetric matrix, negative distance) are reported as
/// ValidationError instead.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// {"name": str, "basepoint": int, "points": [[x, y, ...], ...]} or
/// {"name": str, "basepoint": int, "matrix": [[...], ...]}.
MetricSpace load_space_json(std::string_view text);

/// One point per row of comma-separated coordinates; basepoint is row 0.
MetricSpace load_space_csv(std::string_view text, std::string name = "csv");

/// Dispatches on extension: .csv is CSV, anything else JSON.
MetricSpace load_space_file(const std::filesystem::path& path);

/// Inverse of load_space_json. Emits "points" when coordinates are present.
std::string space_to_json(const MetricSpace& space);

}  // namespace unicover
