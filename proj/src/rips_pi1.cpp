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

#include "unicover/rips_pi1.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <string>

namespace unicover {

namespace {

long long edge_key(Vertex a, Vertex b, std::size_t n) {
  return static_cast<long long>(a) * static_cast<long long>(n) + b;
}

}  // namespace

EdgePathPresentation presentation(const MetricSpace& space, Scale s) {
  std::vector<Vertex> all(space.size());
  std::iota(all.begin(), all.end(), 0);
  return presentation_on(space, s, space.basepoint(), all);
}

EdgePathPresentation presentation_on(const MetricSpace& space, Scale s, Vertex root,
                                     std::span<const Vertex> members) {
  if (!space.contains(root)) throw std::invalid_argument("root outside the space");
  if (std::find(members.begin(), members.end(), root) == members.end()) {
    throw std::invalid_argument("root is not among the members");
  }
  const std::size_t n = space.size();
  EdgePathPresentation p;
  p.scale_ = s;
  p.root_ = root;
  p.graph_ = induced_entourage_graph(space, s, members);
  p.parent_.assign(n, -1);
  p.in_component_.assign(n, false);

  p.in_component_[static_cast<std::size_t>(root)] = true;
  p.component_.push_back(root);
  for (std::size_t k = 0; k < p.component_.size(); ++k) {
    const Vertex v = p.component_[k];
    for (Vertex w : p.graph_.adjacency[static_cast<std::size_t>(v)]) {
      if (p.in_component_[static_cast<std::size_t>(w)]) continue;
      p.in_component_[static_cast<std::size_t>(w)] = true;
      p.parent_[static_cast<std::size_t>(w)] = v;
      p.component_.push_back(w);
    }
  }
  std::vector<Vertex> sorted = p.component_;
  std::sort(sorted.begin(), sorted.end());

  for (Vertex a : sorted) {
    for (Vertex b : p.graph_.adjacency[static_cast<std::size_t>(a)]) {
      if (b <= a) continue;
      if (p.parent_[static_cast<std::size_t>(b)] == a || p.parent_[static_cast<std::size_t>(a)] == b) {
        continue;
      }
      p.edges_.emplace_back(a, b);
      p.generator_of_.emplace(edge_key(a, b, n), static_cast<int>(p.edges_.size()));
    }
  }
  p.group_.generators = static_cast<int>(p.edges_.size());

  for (Vertex a : sorted) {
    const auto& na = p.graph_.adjacency[static_cast<std::size_t>(a)];
    for (Vertex b : na) {
      if (b <= a) continue;
      for (Vertex c : p.graph_.adjacency[static_cast<std::size_t>(b)]) {
        if (c <= b || !std::binary_search(na.begin(), na.end(), c)) continue;
        const Vertex loop[] = {a, b, c, a};
        Word r = p.path_word(loop);
        if (!r.empty()) p.group_.relators.push_back(std::move(r));
      }
    }
  }
  return p;
}

bool EdgePathPresentation::is_edge(Vertex a, Vertex b) const {
  return in_component(a) && in_component(b) && graph_.has_edge(a, b);
}

Letter EdgePathPresentation::edge_letter(Vertex a, Vertex b) const {
  if (!is_edge(a, b)) {
    throw ValidationError("(" + std::to_string(a) + "," + std::to_string(b) +
                          ") is not an edge of the presented component");
  }
  const Vertex lo = std::min(a, b);
  const Vertex hi = std::max(a, b);
  const auto it = generator_of_.find(edge_key(lo, hi, parent_.size()));
  if (it == generator_of_.end()) return 0;
  return a == lo ? it->second : -it->second;
}

Word EdgePathPresentation::path_word(std::span<const Vertex> vertices) const {
  std::vector<Letter> letters;
  for (std::size_t i = 1; i < vertices.size(); ++i) {
    if (vertices[i] == vertices[i - 1]) continue;
    const Letter x = edge_letter(vertices[i - 1], vertices[i]);
    if (x != 0) letters.push_back(x);
  }
  return Word(std::move(letters));
}

std::vector<Vertex> EdgePathPresentation::tree_path(Vertex v) const {
  if (!in_component(v)) {
    throw ValidationError("point " + std::to_string(v) + " is outside the presented component");
  }
  std::vector<Vertex> out;
  for (Vertex x = v; x != -1; x = parent_[static_cast<std::size_t>(x)]) out.push_back(x);
  std::reverse(out.begin(), out.end());
  return out;
}

std::vector<Vertex> EdgePathPresentation::realize(const Word& w) const {
  std::vector<Vertex> out{root_};
  auto go = [&](const std::vector<Vertex>& path) {
    for (std::size_t i = 1; i < path.size(); ++i) out.push_back(path[i]);
  };
  for (Letter x : w.letters()) {
    if (x == 0 || std::abs(x) > generator_count()) throw std::invalid_argument("letter out of range");
    const auto [lo, hi] = edges_[static_cast<std::size_t>(std::abs(x) - 1)];
    const Vertex from = x > 0 ? lo : hi;
    const Vertex to = x > 0 ? hi : lo;
    const std::vector<Vertex> up = tree_path(from);
    go(up);
    out.push_back(to);
    std::vector<Vertex> down = tree_path(to);
    std::reverse(down.begin(), down.end());
    go(down);
  }
  return collapse_repeats(std::move(out));
}

ChainClass chain_class(const EdgePathPresentation& p, std::span<const Vertex> vertices) {
  if (vertices.empty()) throw std::invalid_argument("empty chain");
  if (vertices.front() != p.root()) {
    throw ValidationError("chain starts at " + std::to_string(vertices.front()) +
                          ", not at the base point " + std::to_string(p.root()));
  }
  return ChainClass{vertices.back(), p.path_word(vertices)};
}

ChainClass chain_class(const EdgePathPresentation& p, const Chain& c) {
  return chain_class(p, std::span<const Vertex>(c.vertices()));
}

Chain representative(const MetricSpace& space, const EdgePathPresentation& p,
                     const ChainClass& cls) {
  std::vector<Vertex> out = p.realize(cls.word);
  const std::vector<Vertex> tail = p.tree_path(cls.end);
  out.insert(out.end(), tail.begin() + 1, tail.end());
  return Chain(space, p.scale(), std::move(out));
}

Word ScaleMap::apply(const Word& w) const {
  std::vector<Letter> out;
  for (Letter x : w.letters()) {
    if (std::abs(x) > static_cast<int>(images.size())) throw std::invalid_argument("letter out of range");
    const Word& image = images[static_cast<std::size_t>(std::abs(x) - 1)];
    const Word piece = x > 0 ? image : image.inverse();
    out.insert(out.end(), piece.letters().begin(), piece.letters().end());
  }
  return Word(std::move(out));
}

ScaleMap scale_map(const EdgePathPresentation& source, const EdgePathPresentation& target) {
  if (source.scale() > target.scale()) throw std::invalid_argument("scale map must not decrease the scale");
  if (source.root() != target.root()) throw std::invalid_argument("presentations have different roots");
  ScaleMap m{source.scale(), target.scale(), {}};
  for (int g = 1; g <= source.generator_count(); ++g) {
    const std::vector<Vertex> loop = source.realize(Word::generator(g));
    m.images.push_back(target.path_word(loop));
  }
  return m;
}

ScaleMap scale_map(const MetricSpace& space, Scale s1, Scale s2) {
  return scale_map(presentation(space, s1), presentation(space, s2));
}

}  // namespace unicover
