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

#include "unicover/chains.hpp"

#include <algorithm>

namespace unicover {

std::vector<Vertex> collapse_repeats(std::vector<Vertex> vertices) {
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  return vertices;
}

bool is_chain(const MetricSpace& space, Scale s, std::span<const Vertex> seq) {
  if (seq.empty()) throw std::invalid_argument("chain must be nonempty");
  for (Vertex v : seq) {
    if (!space.contains(v)) {
      throw std::out_of_range("point index " + std::to_string(v) + " out of range");
    }
  }
  for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
    if (!space.close(seq[i], seq[i + 1], s)) return false;
  }
  return true;
}

Chain::Chain(Scale scale, std::vector<Vertex> vertices)
    : scale_(scale), vertices_(collapse_repeats(std::move(vertices))) {}

Chain::Chain(const MetricSpace& space, Scale scale, std::vector<Vertex> vertices)
    : scale_(scale) {
  if (!is_chain(space, scale, vertices)) {
    for (std::size_t i = 0; i + 1 < vertices.size(); ++i) {
      if (!space.close(vertices[i], vertices[i + 1], scale)) {
        throw ValidationError("not a chain: points " + std::to_string(vertices[i]) +
                              " and " + std::to_string(vertices[i + 1]) +
                              " are farther apart than the scale");
      }
    }
  }
  vertices_ = collapse_repeats(std::move(vertices));
}

std::optional<Vertex> is_bounded(const MetricSpace& space, Scale s,
                                 std::span<const Vertex> vertices) {
  auto covers = [&](Vertex p) {
    return std::all_of(vertices.begin(), vertices.end(),
                       [&](Vertex v) { return space.close(p, v, s); });
  };
  for (Vertex v : vertices)
    if (covers(v)) return v;
  const auto n = static_cast<Vertex>(space.size());
  for (Vertex p = 0; p < n; ++p)
    if (covers(p)) return p;
  return std::nullopt;
}

std::optional<Vertex> is_bounded(const MetricSpace& space, Scale s, const Chain& c) {
  return is_bounded(space, s, std::span<const Vertex>(c.vertices()));
}

Chain concat(const Chain& a, const Chain& b) {
  if (a.back() != b.front()) {
    throw std::invalid_argument("concat: chain ends at " + std::to_string(a.back()) +
                                " but next starts at " + std::to_string(b.front()));
  }
  if (a.scale() != b.scale()) throw std::invalid_argument("concat: scale mismatch");
  std::vector<Vertex> out = a.vertices();
  out.insert(out.end(), b.vertices().begin() + 1, b.vertices().end());
  return Chain(a.scale(), std::move(out));
}

Chain reverse(const Chain& a) {
  std::vector<Vertex> out(a.vertices().rbegin(), a.vertices().rend());
  return Chain(a.scale(), std::move(out));
}

Chain apply_move(const MetricSpace& space, const Chain& c, const HomotopyMove& m) {
  std::vector<Vertex> v = c.vertices();
  const Scale s = c.scale();
  if (m.kind == HomotopyMove::Kind::Insert) {
    if (!space.contains(m.point)) {
      throw std::out_of_range("point index " + std::to_string(m.point) + " out of range");
    }
    if (v.size() == 1 && m.position == 1) v.push_back(v.front());
    if (m.position == 0 || m.position >= v.size()) {
      throw std::out_of_range("insert position must be strictly inside the chain");
    }
    const Vertex before = v[m.position - 1];
    const Vertex after = v[m.position];
    if (!space.close(before, m.point, s)) {
      throw MoveRejected("insert breaks the chain condition", before, m.point);
    }
    if (!space.close(m.point, after, s)) {
      throw MoveRejected("insert breaks the chain condition", m.point, after);
    }
    v.insert(v.begin() + static_cast<long>(m.position), m.point);
  } else {
    if (m.position == 0 || m.position + 1 >= v.size()) {
      throw std::out_of_range("delete position must be strictly inside the chain");
    }
    const Vertex before = v[m.position - 1];
    const Vertex after = v[m.position + 1];
    if (!space.close(before, after, s)) {
      throw MoveRejected("delete breaks the chain condition", before, after);
    }
    v.erase(v.begin() + static_cast<long>(m.position));
  }
  return Chain(space, s, std::move(v));
}

}  // namespace unicover
