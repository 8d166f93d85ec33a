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

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "unicover/metric_core.hpp"
#include "unicover/rips_pi1.hpp"

namespace unicover {

/// k points on a planar circle of radius r centred at the origin; point 0 at
/// angle 0 is the base point.
MetricSpace circle(int k, double r);

/// Circles of diameter 1/i (i = 1..n) in the plane, all tangent at the
/// origin, each sampled at k equally spaced points starting from the origin.
/// Odd circles lie on the +x side and even ones on the -x side, so circles on
/// the same side differ by two in index. Index 0 is the origin; sample j >= 1
/// of circle i has index 1 + (i-1)(k-1) + (j-1).
MetricSpace hawaiian(int n, int k);

/// Circles of the given radii joined at the origin, each in its own pair of
/// coordinate axes so distinct circles meet only at the base point.
MetricSpace wedge_circles(const std::vector<double>& radii, int k);

/// m x n grid with unit spacing and the flat wrap-around metric.
MetricSpace torus_grid(int m, int n);

/// `count` points uniform in [0,1]^dim; identical for identical seeds on
/// every platform.
MetricSpace random_cloud(int count, int dim, std::uint64_t seed);

/// A generated space written as text, matching the generated names:
///   circle:K,R   hawaiian:N,K   wedge:NxK | wedge:R1,R2,...xK
///   torus:M,N    random:COUNT,DIM,SEED
/// `wedge:NxK` means N unit circles.
struct SpaceRecipe {
  enum class Kind { Circle, Hawaiian, Wedge, Torus, Random };
  Kind kind = Kind::Circle;
  std::vector<int> counts;
  std::vector<double> radii;
  std::uint64_t seed = 0;

  /// Throws ParseError on malformed text.
  static SpaceRecipe parse(std::string_view text);
  MetricSpace build() const;
  std::string to_string() const;
};

/// Index of sample j (0..k-1) of circle i (1..n) in hawaiian(n, k).
Vertex hawaiian_index(int k, int circle, int sample);

/// Base-point preserving vertex map. `slack` is the additive error allowed
/// in the nonexpanding check: d(f x, f y) <= d(x, y) + slack.
struct ShortMap {
  std::vector<Vertex> vertex_map;
  double slack = 0.0;

  Vertex operator()(Vertex v) const { return vertex_map[static_cast<std::size_t>(v)]; }
};

/// Throws ValidationError if the map is not base-point preserving or
/// expands some distance by more than f.slack.
void check_short_map(const MetricSpace& source, const MetricSpace& target, const ShortMap& f);

/// Map of hawaiian(n, k) onto itself sending circles 2..m onto circle m by
/// angle and circles beyond m to the origin; circle 1 is fixed. The slack is
/// the largest measured expansion.
ShortMap hawaiian_retraction(const MetricSpace& space, int n, int k, int m);

/// Smallest t >= 0 such that f sends every s-close pair to an (s+t)-close
/// pair, so s-chains map to (s+t)-chains.
double chain_slack(const MetricSpace& source, const MetricSpace& target, const ShortMap& f, Scale s);

/// Induced homomorphism from the presentation at scale s to the target's
/// presentation at s + chain_slack(f, s).
ScaleMap map_pi1(const MetricSpace& source, const MetricSpace& target, const ShortMap& f, Scale s);

}  // namespace unicover
