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

#include "unicover/metric_core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

namespace unicover {

namespace {

std::string entry_name(std::size_t i, std::size_t j) {
  std::ostringstream out;
  out << "(" << i << "," << j << ")";
  return out.str();
}

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a < b) std::swap(a, b);
    parent_[a] = b;
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace

MetricSpace::MetricSpace(std::string name,
                         std::vector<std::vector<double>> matrix,
                         Vertex basepoint,
                         std::vector<std::vector<double>> coordinates)
    : name_(std::move(name)),
      n_(matrix.size()),
      basepoint_(basepoint),
      coordinates_(std::move(coordinates)) {
  if (n_ == 0) throw ValidationError("empty space: at least one point required");
  if (basepoint < 0 || static_cast<std::size_t>(basepoint) >= n_) {
    throw ValidationError("basepoint " + std::to_string(basepoint) +
                          " out of range for " + std::to_string(n_) +
                          " points");
  }
  dist_.resize(n_ * n_);
  for (std::size_t i = 0; i < n_; ++i) {
    if (matrix[i].size() != n_) {
      throw ValidationError("matrix row " + std::to_string(i) + " has " +
                            std::to_string(matrix[i].size()) +
                            " entries, expected " + std::to_string(n_));
    }
    for (std::size_t j = 0; j < n_; ++j) {
      const double d = matrix[i][j];
      if (!std::isfinite(d)) {
        throw ValidationError("non-finite distance at " + entry_name(i, j));
      }
      if (d < 0) throw ValidationError("negative distance at " + entry_name(i, j));
      dist_[i * n_ + j] = d;
    }
  }
  for (std::size_t i = 0; i < n_; ++i) {
    if (dist_[i * n_ + i] != 0.0) {
      throw ValidationError("nonzero diagonal at " + entry_name(i, i));
    }
    for (std::size_t j = i + 1; j < n_; ++j) {
      if (dist_[i * n_ + j] != dist_[j * n_ + i]) {
        throw ValidationError("asymmetric matrix at " + entry_name(i, j));
      }
    }
  }
}

MetricSpace MetricSpace::from_points(std::string name,
                                     std::vector<std::vector<double>> points,
                                     Vertex basepoint) {
  const std::size_t n = points.size();
  if (n == 0) throw ValidationError("empty space: at least one point required");
  const std::size_t dim = points.front().size();
  for (std::size_t i = 0; i < n; ++i) {
    if (points[i].size() != dim) {
      throw ValidationError("point " + std::to_string(i) + " has dimension " +
                            std::to_string(points[i].size()) + ", expected " +
                            std::to_string(dim));
    }
  }
  std::vector<std::vector<double>> matrix(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double sum = 0.0;
      for (std::size_t k = 0; k < dim; ++k) {
        const double delta = points[i][k] - points[j][k];
        sum += delta * delta;
      }
      matrix[i][j] = matrix[j][i] = std::sqrt(sum);
    }
  }
  return MetricSpace(std::move(name), std::move(matrix), basepoint,
                     std::move(points));
}

double MetricSpace::diameter() const {
  return dist_.empty() ? 0.0 : *std::max_element(dist_.begin(), dist_.end());
}

bool MetricSpace::satisfies_triangle_inequality(double tolerance) const {
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      for (std::size_t k = 0; k < n_; ++k)
        if (dist_[i * n_ + k] > dist_[i * n_ + j] + dist_[j * n_ + k] + tolerance)
          return false;
  return true;
}

std::vector<std::vector<double>> MetricSpace::matrix() const {
  std::vector<std::vector<double>> out(n_, std::vector<double>(n_));
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) out[i][j] = dist_[i * n_ + j];
  return out;
}

std::size_t Graph::edge_count() const {
  std::size_t twice = 0;
  for (const auto& row : adjacency) twice += row.size();
  return twice / 2;
}

bool Graph::has_edge(Vertex a, Vertex b) const {
  const auto& row = adjacency[static_cast<std::size_t>(a)];
  return std::binary_search(row.begin(), row.end(), b);
}

std::vector<std::vector<Vertex>> Partition::blocks() const {
  std::vector<std::vector<Vertex>> out(static_cast<std::size_t>(block_count));
  for (std::size_t v = 0; v < label.size(); ++v) {
    out[static_cast<std::size_t>(label[v])].push_back(static_cast<Vertex>(v));
  }
  return out;
}

bool Partition::refines(const Partition& coarser) const {
  if (label.size() != coarser.label.size()) return false;
  std::vector<int> image(static_cast<std::size_t>(block_count), -1);
  for (std::size_t v = 0; v < label.size(); ++v) {
    int& target = image[static_cast<std::size_t>(label[v])];
    if (target == -1) target = coarser.label[v];
    if (target != coarser.label[v]) return false;
  }
  return true;
}

EntourageRelation EntourageRelation::compose(const EntourageRelation& other) const {
  if (other.n_ != n_) throw std::invalid_argument("relation size mismatch");
  EntourageRelation out(n_);
  for (std::size_t a = 0; a < n_; ++a)
    for (std::size_t b = 0; b < n_; ++b) {
      if (!pairs_[a * n_ + b]) continue;
      for (std::size_t c = 0; c < n_; ++c)
        if (other.pairs_[b * n_ + c]) out.pairs_[a * n_ + c] = true;
    }
  return out;
}

bool EntourageRelation::is_subset_of(const EntourageRelation& other) const {
  if (other.n_ != n_) return false;
  for (std::size_t i = 0; i < pairs_.size(); ++i)
    if (pairs_[i] && !other.pairs_[i]) return false;
  return true;
}

void PartitionOfUnity::validate(std::size_t point_count, double tolerance) const {
  if (functions.empty()) throw ValidationError("partition of unity has no functions");
  for (std::size_t s = 0; s < functions.size(); ++s) {
    if (functions[s].size() != point_count) {
      throw ValidationError("function " + std::to_string(s) + " has " +
                            std::to_string(functions[s].size()) +
                            " values, expected " + std::to_string(point_count));
    }
    for (std::size_t x = 0; x < point_count; ++x) {
      const double w = functions[s][x];
      if (!(w >= 0.0 && w <= 1.0)) {
        throw ValidationError("weight outside [0,1] at function " +
                              std::to_string(s) + ", point " + std::to_string(x));
      }
    }
  }
  for (std::size_t x = 0; x < point_count; ++x) {
    double sum = 0.0;
    for (const auto& fn : functions) sum += fn[x];
    if (std::abs(sum - 1.0) > tolerance) {
      throw ValidationError("weights at point " + std::to_string(x) +
                            " sum to " + std::to_string(sum) + ", not 1");
    }
  }
}

std::vector<Scale> critical_scales(const MetricSpace& space) {
  std::vector<double> values;
  const auto n = static_cast<Vertex>(space.size());
  for (Vertex i = 0; i < n; ++i)
    for (Vertex j = i + 1; j < n; ++j)
      if (space.dist(i, j) > 0.0) values.push_back(space.dist(i, j));
  std::sort(values.begin(), values.end());
  std::vector<Scale> out;
  for (double v : values) {
    if (out.empty() || v - out.back().epsilon > 1e-12) out.emplace_back(v);
  }
  return out;
}

Graph entourage_graph(const MetricSpace& space, Scale s) {
  Graph g;
  const auto n = static_cast<Vertex>(space.size());
  g.adjacency.resize(space.size());
  for (Vertex i = 0; i < n; ++i)
    for (Vertex j = 0; j < n; ++j)
      if (i != j && space.close(i, j, s))
        g.adjacency[static_cast<std::size_t>(i)].push_back(j);
  return g;
}

Graph induced_entourage_graph(const MetricSpace& space, Scale s,
                              std::span<const Vertex> members) {
  Graph g;
  g.adjacency.resize(space.size());
  std::vector<Vertex> sorted(members.begin(), members.end());
  std::sort(sorted.begin(), sorted.end());
  for (Vertex i : sorted)
    for (Vertex j : sorted)
      if (i != j && space.close(i, j, s))
        g.adjacency[static_cast<std::size_t>(i)].push_back(j);
  return g;
}

Partition connected_components(const Graph& graph) {
  const std::size_t n = graph.vertex_count();
  UnionFind uf(n);
  for (std::size_t v = 0; v < n; ++v)
    for (Vertex w : graph.adjacency[v]) uf.unite(v, static_cast<std::size_t>(w));
  Partition p;
  p.label.assign(n, -1);
  std::vector<int> root_label(n, -1);
  for (std::size_t v = 0; v < n; ++v) {
    const std::size_t r = uf.find(v);
    if (root_label[r] == -1) root_label[r] = p.block_count++;
    p.label[v] = root_label[r];
  }
  return p;
}

Partition pc_components(const MetricSpace& space, Scale s) {
  return connected_components(entourage_graph(space, s));
}

std::vector<Vertex> ball(const MetricSpace& space, Vertex center, Scale radius) {
  std::vector<Vertex> out;
  const auto n = static_cast<Vertex>(space.size());
  for (Vertex v = 0; v < n; ++v)
    if (space.close(center, v, radius)) out.push_back(v);
  return out;
}

EntourageRelation pu_entourage(const MetricSpace& space,
                               const PartitionOfUnity& f) {
  f.validate(space.size());
  const std::size_t n = space.size();
  EntourageRelation rel(n);
  for (const auto& fn : f.functions) {
    std::vector<Vertex> support;
    for (std::size_t x = 0; x < n; ++x)
      if (fn[x] > 0.0) support.push_back(static_cast<Vertex>(x));
    for (Vertex a : support)
      for (Vertex b : support) rel.insert(a, b);
  }
  return rel;
}

PartitionDerivative pu_derivative_with_subsets(const PartitionOfUnity& f) {
  if (f.functions.empty()) throw ValidationError("partition of unity has no functions");
  const std::size_t m = f.functions.size();
  const std::size_t n = f.functions.front().size();
  f.validate(n);

  // f'_T(x) > 0 exactly when T is a nonempty top set at x: every weight in T
  // strictly exceeds every weight outside T, and all weights in T are
  // positive. Those sets are prefixes of the descending weight order at x.
  std::set<std::vector<std::size_t>> candidates;
  for (std::size_t x = 0; x < n; ++x) {
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return f.functions[a][x] > f.functions[b][x];
    });
    for (std::size_t k = 1; k <= m; ++k) {
      const double last_in = f.functions[order[k - 1]][x];
      const double first_out = k < m ? f.functions[order[k]][x] : 0.0;
      if (last_in > first_out) {
        std::vector<std::size_t> subset(order.begin(), order.begin() + static_cast<long>(k));
        std::sort(subset.begin(), subset.end());
        candidates.insert(std::move(subset));
      }
    }
  }

  PartitionDerivative out;
  for (const auto& subset : candidates) {
    std::vector<bool> in(m, false);
    for (std::size_t t : subset) in[t] = true;
    std::vector<double> values(n, 0.0);
    bool nonzero = false;
    for (std::size_t x = 0; x < n; ++x) {
      double min_in = 1.0;
      double max_out = 0.0;
      for (std::size_t s = 0; s < m; ++s) {
        if (in[s]) min_in = std::min(min_in, f.functions[s][x]);
        else max_out = std::max(max_out, f.functions[s][x]);
      }
      const double g = min_in - max_out;
      values[x] = g > 0.0 ? static_cast<double>(subset.size()) * g : 0.0;
      nonzero = nonzero || values[x] > 0.0;
    }
    if (!nonzero) continue;
    out.partition.functions.push_back(std::move(values));
    out.subsets.push_back(subset);
  }
  return out;
}

PartitionOfUnity pu_derivative(const PartitionOfUnity& f) {
  return pu_derivative_with_subsets(f).partition;
}

}  // namespace unicover
