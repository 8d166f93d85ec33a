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

#include "unicover/io.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace unicover {

namespace {

using nlohmann::json;

std::vector<std::vector<double>> read_rows(const json& rows, const char* field) {
  if (!rows.is_array()) throw ParseError(std::string("\"") + field + "\" must be an array");
  std::vector<std::vector<double>> out;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const json& row = rows[i];
    if (!row.is_array()) {
      throw ParseError(std::string(field) + "[" + std::to_string(i) + "] must be an array");
    }
    std::vector<double> values;
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (!row[j].is_number()) {
        throw ParseError(std::string(field) + "[" + std::to_string(i) + "][" +
                         std::to_string(j) + "] is not a number");
      }
      values.push_back(row[j].get<double>());
    }
    out.push_back(std::move(values));
  }
  return out;
}

}  // namespace

MetricSpace load_space_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("space document must be a JSON object");
  const std::string name = doc.value("name", std::string("space"));
  if (!doc.contains("basepoint")) throw ValidationError("missing basepoint");
  if (!doc["basepoint"].is_number_integer()) throw ParseError("\"basepoint\" must be an integer");
  const int basepoint = doc["basepoint"].get<int>();
  const bool has_points = doc.contains("points");
  const bool has_matrix = doc.contains("matrix");
  if (has_points == has_matrix) {
    throw ParseError("space document needs exactly one of \"points\" or \"matrix\"");
  }
  if (has_points) {
    return MetricSpace::from_points(name, read_rows(doc["points"], "points"), basepoint);
  }
  return MetricSpace(name, read_rows(doc["matrix"], "matrix"), basepoint);
}

MetricSpace load_space_csv(std::string_view text, std::string name) {
  std::vector<std::vector<double>> points;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::vector<double> row;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(cell, &used));
        if (cell.find_first_not_of(" \t\r", used) != std::string::npos) throw std::invalid_argument(cell);
      } catch (const std::exception&) {
        throw ParseError("line " + std::to_string(line_number) + ": cannot parse \"" + cell + "\"");
      }
    }
    if (!points.empty() && row.size() != points.front().size()) {
      throw ParseError("line " + std::to_string(line_number) + ": expected " +
                       std::to_string(points.front().size()) + " coordinates");
    }
    points.push_back(std::move(row));
  }
  if (points.empty()) throw ParseError("CSV space has no rows");
  return MetricSpace::from_points(std::move(name), std::move(points), 0);
}

MetricSpace load_space_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  if (path.extension() == ".csv") return load_space_csv(buffer.str(), path.stem().string());
  return load_space_json(buffer.str());
}

std::string space_to_json(const MetricSpace& space) {
  nlohmann::ordered_json doc;
  doc["name"] = space.name();
  doc["basepoint"] = space.basepoint();
  if (!space.coordinates().empty()) {
    doc["points"] = space.coordinates();
  } else {
    doc["matrix"] = space.matrix();
  }
  return doc.dump();
}

}  // namespace unicover
