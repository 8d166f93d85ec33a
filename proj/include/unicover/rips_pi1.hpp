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
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "unicover/chains.hpp"
#include "unicover/metric_core.hpp"
#include "unicover/presentation.hpp"

namespace unicover {

/// Edge-path presentation of the fundamental group of the scale-s Rips flag
/// complex, restricted to the component of the root. Generators are the
/// non-tree edges (i < j) of a BFS tree, in lexicographic order; relators are
/// the boundaries of triangles with all sides within s.
class EdgePathPresentation {
 public:
  const GroupPresentation& group() const { return group_; }
  Scale scale() const { return scale_; }
  Vertex root() const { return root_; }
  std::size_t point_count() const { return parent_.size(); }
  int generator_count() const { return group_.generators; }
  /// generator_edges()[g - 1] is the edge (i, j), i < j, of generator g.
  const std::vector<std::pair<Vertex, Vertex>>& generator_edges() const { return edges_; }
  /// BFS parent; -1 for the root and for points outside the component.
  const std::vector<Vertex>& tree_parent() const { return parent_; }
  bool in_component(Vertex v) const {
    return v >= 0 && static_cast<std::size_t>(v) < in_component_.size() &&
           in_component_[static_cast<std::size_t>(v)];
  }
  const std::vector<Vertex>& component() const { return component_; }

  /// Letter for traversing a -> b: 0 for a tree edge, +g for generator g
  /// traversed from its lower endpoint, -g the other way. Throws
  /// ValidationError when (a, b) is not an edge of the component.
  Letter edge_letter(Vertex a, Vertex b) const;
  /// Product of edge letters along a vertex sequence (equal neighbours skipped).
  Word path_word(std::span<const Vertex> vertices) const;
  /// Vertices of the tree path from the root to v.
  std::vector<Vertex> tree_path(Vertex v) const;
  /// Vertices of a closed edge path at the root realizing the word.
  std::vector<Vertex> realize(const Word& w) const;

  friend EdgePathPresentation presentation_on(const MetricSpace&, Scale, Vertex,
                                              std::span<const Vertex>);

 private:
  EdgePathPresentation() = default;
  bool is_edge(Vertex a, Vertex b) const;

  Scale scale_;
  Vertex root_ = 0;
  GroupPresentation group_;
  std::vector<std::pair<Vertex, Vertex>> edges_;
  std::vector<Vertex> parent_;
  std::vector<bool> in_component_;
  std::vector<Vertex> component_;
  Graph graph_;
  std::unordered_map<long long, int> generator_of_;
};

/// Presentation of the whole space at scale s, rooted at the basepoint.
EdgePathPresentation presentation(const MetricSpace& space, Scale s);

/// Presentation of the subgraph induced on `members` (which must contain
/// `root`), rooted at `root`. Throws std::invalid_argument otherwise.
EdgePathPresentation presentation_on(const MetricSpace& space, Scale s, Vertex root,
                                     std::span<const Vertex> members);

/// A based chain as (endpoint, freely reduced edge word). Two chains are
/// homotopic iff the endpoints agree and the words are equal in the group;
/// equal words are sufficient, not necessary.
struct ChainClass {
  Vertex end = 0;
  Word word;

  auto operator<=>(const ChainClass&) const = default;
  bool operator==(const ChainClass&) const = default;
};

/// Throws ValidationError if the chain does not start at the root or uses a
/// step longer than the presentation's scale.
ChainClass chain_class(const EdgePathPresentation& p, const Chain& c);
ChainClass chain_class(const EdgePathPresentation& p, std::span<const Vertex> vertices);

/// A chain at the presentation's scale realizing the class.
Chain representative(const MetricSpace& space, const EdgePathPresentation& p,
                     const ChainClass& cls);

/// Homomorphism induced by inclusion of the s1 complex into the s2 complex.
struct ScaleMap {
  Scale from;
  Scale to;
  /// images[g - 1] is the class of source generator g, as a word over the
  /// target generators.
  std::vector<Word> images;

  Word apply(const Word& w) const;
};

/// Throws std::invalid_argument if s1 > s2 or the roots differ.
ScaleMap scale_map(const EdgePathPresentation& source, const EdgePathPresentation& target);
ScaleMap scale_map(const MetricSpace& space, Scale s1, Scale s2);

}  // namespace unicover
