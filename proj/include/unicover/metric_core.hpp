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

#include <compare>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace unicover {

/// Index of a point in a MetricSpace.
using Vertex = int;

class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A closeness threshold. The entourage at scale epsilon is the set of
/// pairs at distance <= epsilon (closed convention).
struct Scale {
  double epsilon = 0.0;

  constexpr Scale() = default;
  constexpr explicit Scale(double e) : epsilon(e) {}

  constexpr Scale times(double k) const { return Scale(epsilon * k); }
  constexpr auto operator<=>(const Scale&) const = default;
};

/// Absolute slack applied when comparing a stored distance against a scale.
/// Generated spaces are exact only up to rounding of sin/cos/sqrt, so a chord
/// that is mathematically equal to epsilon may be stored one ulp above it.
inline constexpr double kDistanceSlack = 1e-12;

constexpr bool within(double distance, Scale s) {
  return distance <= s.epsilon + kDistanceSlack;
}

/// Finite set of points with a symmetric, nonnegative, zero-diagonal
/// distance matrix and a base point. Immutable after construction.
class MetricSpace {
 public:
  /// Validates the matrix; throws ValidationError naming the offending entry.
  MetricSpace(std::string name, std::vector<std::vector<double>> matrix,
              Vertex basepoint,
              std::vector<std::vector<double>> coordinates = {});

  /// Euclidean distance matrix of the given coordinates.
  static MetricSpace from_points(std::string name,
                                 std::vector<std::vector<double>> points,
                                 Vertex basepoint = 0);

  std::size_t size() const { return n_; }
  double dist(Vertex i, Vertex j) const { return dist_[index(i, j)]; }
  Vertex basepoint() const { return basepoint_; }
  const std::string& name() const { return name_; }
  const std::vector<std::vector<double>>& coordinates() const {
    return coordinates_;
  }
  bool contains(Vertex v) const {
    return v >= 0 && static_cast<std::size_t>(v) < n_;
  }

  bool close(Vertex i, Vertex j, Scale s) const { return within(dist(i, j), s); }
  double diameter() const;

  /// Not required anywhere; reported by the loaders as a warning.
  bool satisfies_triangle_inequality(double tolerance = 1e-12) const;

  std::vector<std::vector<double>> matrix() const;

 private:
  std::size_t index(Vertex i, Vertex j) const {
    return static_cast<std::size_t>(i) * n_ + static_cast<std::size_t>(j);
  }

  std::string name_;
  std::size_t n_ = 0;
  std::vector<double> dist_;
  Vertex basepoint_ = 0;
  std::vector<std::vector<double>> coordinates_;
};

/// Undirected simple graph; adjacency lists are sorted ascending.
struct Graph {
  std::vector<std::vector<Vertex>> adjacency;

  std::size_t vertex_count() const { return adjacency.size(); }
  std::size_t edge_count() const;
  bool has_edge(Vertex a, Vertex b) const;
};

/// Labels numbered in order of each block's smallest member.
struct Partition {
  std::vector<int> label;
  int block_count = 0;

  std::vector<std::vector<Vertex>> blocks() const;
  bool refines(const Partition& coarser) const;
};

/// Explicit symmetric reflexive relation on point indices.
class EntourageRelation {
 public:
  explicit EntourageRelation(std::size_t n) : n_(n), pairs_(n * n, false) {
    for (std::size_t i = 0; i < n; ++i) pairs_[i * n + i] = true;
  }

  std::size_t size() const { return n_; }
  bool contains(Vertex a, Vertex b) const { return pairs_[at(a, b)]; }
  void insert(Vertex a, Vertex b) {
    pairs_[at(a, b)] = true;
    pairs_[at(b, a)] = true;
  }

  /// Pairs (a, c) with some b such that (a, b) in this and (b, c) in other.
  EntourageRelation compose(const EntourageRelation& other) const;
  bool is_subset_of(const EntourageRelation& other) const;
  bool operator==(const EntourageRelation&) const = default;

 private:
  std::size_t at(Vertex a, Vertex b) const {
    return static_cast<std::size_t>(a) * n_ + static_cast<std::size_t>(b);
  }

  std::size_t n_;
  std::vector<bool> pairs_;
};

/// functions[s][x] is the weight of function s at point x.
struct PartitionOfUnity {
  std::vector<std::vector<double>> functions;

  /// Throws ValidationError unless every weight lies in [0, 1] and the
  /// weights at each point sum to 1 within `tolerance`.
  void validate(std::size_t point_count, double tolerance = 1e-9) const;
};

struct PartitionDerivative {
  PartitionOfUnity partition;
  /// subsets[i] is the index set T that produced partition.functions[i].
  std::vector<std::vector<std::size_t>> subsets;
};

/// Ascending distinct nonzero pairwise distances (deduplicated at 1e-12).
std::vector<Scale> critical_scales(const MetricSpace& space);

Graph entourage_graph(const MetricSpace& space, Scale s);

/// Subgraph of the entourage graph induced on `members` (global indices kept;
/// vertices outside `members` are isolated).
Graph induced_entourage_graph(const MetricSpace& space, Scale s,
                              std::span<const Vertex> members);

Partition connected_components(const Graph& graph);
Partition pc_components(const MetricSpace& space, Scale s);

/// Points within distance `radius` of `center`, ascending.
std::vector<Vertex> ball(const MetricSpace& space, Vertex center, Scale radius);

EntourageRelation pu_entourage(const MetricSpace& space,
                               const PartitionOfUnity& f);

/// The derivative partition {f'_T}, restricted to the index sets T for which
/// f'_T is not identically zero.
PartitionDerivative pu_derivative_with_subsets(const PartitionOfUnity& f);
PartitionOfUnity pu_derivative(const PartitionOfUnity& f);

}  // namespace unicover
