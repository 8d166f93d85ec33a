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

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "unicover/metric_core.hpp"

namespace unicover {

/// A chain of points whose consecutive entries are within `scale`: the
/// discrete path. Consecutive duplicates are collapsed on construction, so a
/// constant chain is a single vertex.
class Chain {
 public:
  /// Throws std::out_of_range for bad indices and ValidationError when a
  /// consecutive pair is farther apart than the scale.
  Chain(const MetricSpace& space, Scale scale, std::vector<Vertex> vertices);

  const std::vector<Vertex>& vertices() const { return vertices_; }
  Scale scale() const { return scale_; }
  Vertex front() const { return vertices_.front(); }
  Vertex back() const { return vertices_.back(); }
  std::size_t size() const { return vertices_.size(); }
  bool is_loop() const { return front() == back(); }

  bool operator==(const Chain& other) const {
    return vertices_ == other.vertices_;
  }

 private:
  friend Chain concat(const Chain&, const Chain&);
  friend Chain reverse(const Chain&);
  Chain(Scale scale, std::vector<Vertex> vertices);

  Scale scale_;
  std::vector<Vertex> vertices_;
};

/// Removes consecutive duplicates; a nonempty input stays nonempty.
std::vector<Vertex> collapse_repeats(std::vector<Vertex> vertices);

/// True iff all consecutive distances are within s. Throws std::out_of_range
/// on an index outside the space and std::invalid_argument on empty input.
bool is_chain(const MetricSpace& space, Scale s, std::span<const Vertex> seq);

/// A point p whose s-ball contains every vertex of c. The chain's own
/// vertices are tried first (in order), then all points ascending.
std::optional<Vertex> is_bounded(const MetricSpace& space, Scale s,
                                 const Chain& c);
std::optional<Vertex> is_bounded(const MetricSpace& space, Scale s,
                                 std::span<const Vertex> vertices);

/// Requires a.back() == b.front() and equal scales; the junction vertex is
/// kept once.
Chain concat(const Chain& a, const Chain& b);
Chain reverse(const Chain& a);

/// Insert places `point` at index `position` (between the neighbours at
/// position-1 and position); on a single-vertex chain position 1 expands the
/// implicit stutter into [v, point, v]. Delete removes the vertex at
/// `position`. Endpoints are never touched.
struct HomotopyMove {
  enum class Kind { Insert, Delete };
  Kind kind = Kind::Delete;
  std::size_t position = 0;
  Vertex point = -1;

  static HomotopyMove insert(std::size_t position, Vertex point) {
    return {Kind::Insert, position, point};
  }
  static HomotopyMove remove(std::size_t position) {
    return {Kind::Delete, position, -1};
  }
};

class MoveRejected : public std::runtime_error {
 public:
  MoveRejected(const std::string& what, Vertex a, Vertex b)
      : std::runtime_error(what), first(a), second(b) {}
  Vertex first;
  Vertex second;
};

/// Applies a triangle move at the chain's scale. Throws MoveRejected naming
/// the pair that would violate the chain condition, or std::out_of_range for
/// an endpoint position.
Chain apply_move(const MetricSpace& space, const Chain& c,
                 const HomotopyMove& m);

}  // namespace unicover
