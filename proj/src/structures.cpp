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

#include "unicover/structures.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <queue>
#include <set>
#include <stdexcept>
#include <unordered_map>

namespace unicover {

namespace {

struct VertexSeqHash {
  std::size_t operator()(const std::vector<Vertex>& v) const {
    std::size_t h = v.size();
    for (Vertex x : v) h ^= std::hash<Vertex>{}(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

std::vector<Vertex> join(std::vector<Vertex> a, std::span<const Vertex> b) {
  if (!a.empty() && !b.empty() && a.back() == b.front()) b = b.subspan(1);
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

std::vector<Vertex> reversed(std::span<const Vertex> v) { return {v.rbegin(), v.rend()}; }

// Members of the ball that lie in the presentation's component.
std::vector<Vertex> component_ball(const ChainGroupoid& g, Vertex center, Scale radius) {
  std::vector<Vertex> out;
  for (Vertex v : ball(g.space(), center, radius)) {
    if (g.presentation().in_component(v)) out.push_back(v);
  }
  return out;
}

// Components of the fine graph induced on `members` (sorted), each sorted.
std::vector<std::vector<Vertex>> induced_components(const MetricSpace& space, Scale fine,
                                                    const std::vector<Vertex>& members) {
  std::vector<bool> seen(members.size(), false);
  std::vector<std::vector<Vertex>> out;
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (seen[i]) continue;
    std::vector<std::size_t> order{i};
    seen[i] = true;
    for (std::size_t k = 0; k < order.size(); ++k) {
      for (std::size_t j = 0; j < members.size(); ++j) {
        if (!seen[j] && space.close(members[order[k]], members[j], fine)) {
          seen[j] = true;
          order.push_back(j);
        }
      }
    }
    std::vector<Vertex> comp;
    for (std::size_t k : order) comp.push_back(members[k]);
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

// Shortest chain inside `members` from u to v, neighbours in ascending order.
std::optional<std::vector<Vertex>> shortest_inside(const MetricSpace& space, Scale fine,
                                                   const std::vector<Vertex>& members, Vertex u,
                                                   Vertex v) {
  std::unordered_map<Vertex, Vertex> parent{{u, u}};
  std::deque<Vertex> queue{u};
  while (!queue.empty()) {
    const Vertex x = queue.front();
    queue.pop_front();
    if (x == v) break;
    for (Vertex y : members) {
      if (parent.count(y) || !space.close(x, y, fine)) continue;
      parent[y] = x;
      queue.push_back(y);
    }
  }
  if (!parent.count(v)) return std::nullopt;
  std::vector<Vertex> path{v};
  while (path.back() != u) path.push_back(parent[path.back()]);
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace

// ---------------------------------------------------------------------------
// ChainGroupoid.

ChainGroupoid::ChainGroupoid(MetricSpace space, Scale fine, std::size_t cap)
    : space_(std::move(space)),
      fine_(fine),
      cap_(cap),
      presentation_(unicover::presentation(space_, fine_)),
      oracle_(std::make_unique<GroupOracle>(presentation_.group(), cap)) {}

Verdict ChainGroupoid::same_class(const ChainClass& a, const ChainClass& b) const {
  if (a.end != b.end) return Verdict::no("different endpoints");
  if (a.word == b.word) return Verdict::yes("identical words");
  return oracle_->are_equal(a.word, b.word);
}

std::vector<std::vector<Vertex>> ChainGroupoid::ball_loop_chains(Vertex center, Scale radius,
                                                                 Vertex root) const {
  const std::vector<Vertex> members = component_ball(*this, center, radius);
  if (!std::binary_search(members.begin(), members.end(), root)) return {};
  const EdgePathPresentation sub = presentation_on(space_, fine_, root, members);
  const Simplification s = simplify_with_map(sub.group());
  std::vector<std::vector<Vertex>> out;
  for (int i = 1; i <= s.group.generators; ++i) {
    out.push_back(sub.realize(s.backward(Word::generator(i))));
  }
  return out;
}

const std::vector<Word>& ChainGroupoid::ball_loops(Vertex center, Scale radius, Vertex root) const {
  const auto key = std::make_tuple(center, radius.epsilon, root);
  auto it = loops_.find(key);
  if (it != loops_.end()) return it->second;
  std::vector<Word> words;
  for (const auto& loop : ball_loop_chains(center, radius, root)) {
    Word w = presentation_.path_word(loop);
    if (!w.empty()) words.push_back(std::move(w));
  }
  return loops_.emplace(key, std::move(words)).first->second;
}

const std::vector<Word>& ChainGroupoid::lasso_generators(Scale coarse) const {
  auto it = lasso_generators_.find(coarse.epsilon);
  if (it != lasso_generators_.end()) return it->second;
  std::vector<Word> out;
  std::set<Word> seen;
  for (Vertex center : presentation_.component()) {
    for (const auto& comp : induced_components(space_, fine_, component_ball(*this, center, coarse))) {
      for (const Word& w : ball_loops(center, coarse, comp.front())) {
        if (seen.insert(w).second) out.push_back(w);
      }
    }
  }
  return lasso_generators_.emplace(coarse.epsilon, std::move(out)).first->second;
}

const GroupOracle& ChainGroupoid::lasso_quotient(Scale coarse) const {
  auto it = quotients_.find(coarse.epsilon);
  if (it != quotients_.end()) return *it->second;
  auto q = std::make_unique<GroupOracle>(oracle_->quotient(lasso_generators(coarse)));
  return *quotients_.emplace(coarse.epsilon, std::move(q)).first->second;
}

std::optional<std::vector<Vertex>> ChainGroupoid::ball_path(Vertex center, Scale radius, Vertex u,
                                                            Vertex v) const {
  if (!space_.close(center, u, radius) || !space_.close(center, v, radius)) return std::nullopt;
  return shortest_inside(space_, fine_, ball(space_, center, radius), u, v);
}

// ---------------------------------------------------------------------------
// Ball subgroups.

BallSubgroup ball_subgroup(const ChainGroupoid& g, Scale ball, Vertex center) {
  return BallSubgroup{center, ball, g.fine(),
                      g.ball_loops(center, ball, g.presentation().root())};
}

BallSubgroup ball_subgroup(const MetricSpace& space, Scale fine, Scale ball, Vertex center) {
  return ball_subgroup(ChainGroupoid(space, fine), ball, center);
}

std::string to_string(Relation r) {
  switch (r) {
    case Relation::BP: return "bp";
    case Relation::Lasso: return "lasso";
    case Relation::James: return "james";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Relations.

namespace {

StructureWitness equal_witness() { return StructureWitness{}; }

// Tries every coarse ball containing both endpoints; `decide` answers whether
// the residual loop word is allowed for the ball (center, endpoint).
StructureVerdict via_connectors(const ChainGroupoid& g, const ChainClass& a, const ChainClass& b,
                                Scale coarse, Relation relation,
                                const std::function<Verdict(const Word&, Vertex)>& decide) {
  StructureVerdict out{relation, g.fine(), coarse, Verdict::unknown(""), std::nullopt};
  const auto& p = g.presentation();
  if (!p.in_component(a.end) || !p.in_component(b.end)) {
    out.verdict = Verdict::no("not chain-connected");
    return out;
  }
  if (a == b) {
    out.verdict = Verdict::yes("equal classes");
    out.witness = equal_witness();
    return out;
  }
  bool connected = false;
  std::optional<Verdict> unknown;
  const auto n = static_cast<Vertex>(g.space().size());
  for (Vertex center = 0; center < n; ++center) {
    const auto connector = g.ball_path(center, coarse, a.end, b.end);
    if (!connector) continue;
    connected = true;
    const Word residual = (a.word * p.path_word(*connector)).inverse() * b.word;
    Verdict v = decide(residual, center);
    if (v.is_yes()) {
      StructureWitness w;
      w.kind = StructureWitness::Kind::BoundedConnector;
      w.center = center;
      w.connector = *connector;
      w.residual = residual;
      out.verdict = Verdict::yes("difference fits in the ball at " + std::to_string(center) + ": " +
                                 v.reason);
      out.witness = std::move(w);
      return out;
    }
    if (v.is_unknown() && !unknown) unknown = std::move(v);
  }
  if (unknown) {
    out.verdict = Verdict::unknown(unknown->reason);
  } else if (connected) {
    out.verdict = Verdict::no("no coarse ball absorbs the difference");
  } else {
    out.verdict = Verdict::no("no coarse ball connects the endpoints");
  }
  return out;
}

}  // namespace

StructureVerdict bp_close(const ChainGroupoid& g, const ChainClass& a, const ChainClass& b,
                          Scale coarse) {
  return via_connectors(g, a, b, coarse, Relation::BP, [&](const Word& residual, Vertex center) {
    return g.oracle().in_subgroup(g.ball_loops(center, coarse, b.end), residual);
  });
}

StructureVerdict lasso_close(const ChainGroupoid& g, const ChainClass& a, const ChainClass& b,
                             Scale coarse) {
  return via_connectors(g, a, b, coarse, Relation::Lasso, [&](const Word& residual, Vertex) {
    return g.lasso_quotient(coarse).is_trivial(residual);
  });
}

StructureVerdict james_close(const ChainGroupoid& g, const ChainClass& a, const ChainClass& b,
                             Scale coarse, std::size_t budget) {
  StructureVerdict out{Relation::James, g.fine(), coarse, Verdict::unknown(""), std::nullopt};
  const auto& p = g.presentation();
  if (!p.in_component(a.end) || !p.in_component(b.end)) {
    out.verdict = Verdict::no("not chain-connected");
    return out;
  }
  if (a == b || g.same_class(a, b).is_yes()) {
    out.verdict = Verdict::yes("equal classes");
    out.witness = equal_witness();
    return out;
  }
  if (auto pair = uc_witness_search(g, a, b, coarse, budget)) {
    StructureWitness w;
    w.kind = StructureWitness::Kind::PointwisePair;
    w.first = std::move(pair->first);
    w.second = std::move(pair->second);
    out.verdict = Verdict::yes("pointwise close representatives");
    out.witness = std::move(w);
    return out;
  }
  if (coarse <= g.fine()) {
    // Rungs of a pointwise pair are then fine edges, so its ladder squares
    // fit in balls of radius fine + coarse.
    const Scale wide(g.fine().epsilon + coarse.epsilon);
    const StructureVerdict lasso = lasso_close(g, a, b, wide);
    if (lasso.verdict.is_no()) {
      out.verdict = Verdict::no("lasso relation fails at " + std::to_string(wide.epsilon));
      return out;
    }
  }
  StructureVerdict lasso = lasso_close(g, a, b, coarse);
  if (lasso.verdict.is_yes()) {
    out.verdict = Verdict::yes("lasso relation holds; pointwise closeness at twice the scale");
    out.witness = std::move(lasso.witness);
    if (out.witness) out.witness->guaranteed_at = coarse.times(2.0);
    return out;
  }
  out.verdict = Verdict::unknown("sandwich gap");
  return out;
}

// ---------------------------------------------------------------------------
// Punctured homotopies.

std::size_t PuncturedHomotopy::puncture_count() const {
  return static_cast<std::size_t>(std::count_if(steps.begin(), steps.end(), [](const PuncturedStep& s) {
    return s.kind == PuncturedStep::Kind::Puncture;
  }));
}

namespace {

// Applies a step; returns the removed piece for punctures.
std::optional<LassoPiece> apply_step(std::vector<Vertex>& chain, const PuncturedStep& step) {
  std::optional<LassoPiece> piece;
  switch (step.kind) {
    case PuncturedStep::Kind::Insert:
      chain.insert(chain.begin() + static_cast<long>(step.position), step.point);
      break;
    case PuncturedStep::Kind::Delete:
      chain.erase(chain.begin() + static_cast<long>(step.position));
      break;
    case PuncturedStep::Kind::Puncture: {
      const auto first = chain.begin() + static_cast<long>(step.position);
      const auto last = chain.begin() + static_cast<long>(step.end) + 1;
      LassoPiece out;
      out.tail.assign(chain.begin(), first + 1);
      out.loop = join(std::vector<Vertex>(first, last), reversed(step.replacement));
      out.center = step.point;
      piece = std::move(out);
      std::vector<Vertex> next(chain.begin(), first);
      next.insert(next.end(), step.replacement.begin(), step.replacement.end());
      next.insert(next.end(), last, chain.end());
      chain = std::move(next);
      break;
    }
  }
  chain = collapse_repeats(std::move(chain));
  return piece;
}

}  // namespace

std::vector<LassoPiece> PuncturedHomotopy::pieces() const {
  std::vector<Vertex> chain = start;
  std::vector<LassoPiece> out;
  for (const PuncturedStep& s : steps) {
    if (auto piece = apply_step(chain, s)) out.push_back(std::move(*piece));
  }
  return out;
}

namespace {

class PuncturedSearch {
 public:
  PuncturedSearch(const MetricSpace& space, Scale fine, Scale s)
      : space_(space), fine_(fine), n_(static_cast<Vertex>(space.size())) {
    members_.resize(static_cast<std::size_t>(n_));
    for (Vertex p = 0; p < n_; ++p) members_[static_cast<std::size_t>(p)] = ball(space, p, s);
  }

  PuncturedSearchResult run(std::vector<Vertex> start, std::size_t budget) {
    PuncturedSearchResult result;
    start_ = collapse_repeats(std::move(start));
    std::vector<Vertex> chain = start_;
    std::vector<PuncturedStep> steps;
    normalize(chain, steps);
    add(std::move(chain), -1, std::move(steps), 0);
    // Shortest chain first, then fewest punctures, then oldest.
    using Item = std::tuple<std::size_t, std::size_t, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
    queue.emplace(nodes_[0].chain.size(), 0, 0);
    while (!queue.empty()) {
      const int id = std::get<2>(queue.top());
      queue.pop();
      const Node& node = nodes_[static_cast<std::size_t>(id)];
      if (auto c = bounded(node.chain)) return finish(id, *c, result);
      const std::vector<Vertex> current = node.chain;
      const std::size_t punctures = node.punctures;
      for (auto& [child, child_steps, punctured] : children(current)) {
        if (index_.count(child)) continue;
        if (nodes_.size() >= budget) {
          result.states = nodes_.size();
          result.budget_exhausted = true;
          return result;
        }
        const std::size_t count = punctures + (punctured ? 1 : 0);
        const std::size_t length = child.size();
        const int child_id = add(std::move(child), id, std::move(child_steps), count);
        queue.emplace(length, count, child_id);
      }
    }
    result.states = nodes_.size();
    return result;
  }

 private:
  struct Node {
    std::vector<Vertex> chain;
    int parent;
    std::vector<PuncturedStep> steps;
    std::size_t punctures;
  };
  struct Child {
    std::vector<Vertex> chain;
    std::vector<PuncturedStep> steps;
    bool punctured;
  };

  int add(std::vector<Vertex> chain, int parent, std::vector<PuncturedStep> steps, std::size_t punctures) {
    const int id = static_cast<int>(nodes_.size());
    index_.emplace(chain, id);
    nodes_.push_back(Node{std::move(chain), parent, std::move(steps), punctures});
    return id;
  }

  bool close(Vertex a, Vertex b) const { return space_.close(a, b, fine_); }

  bool in_ball(Vertex p, Vertex v) const {
    const auto& m = members_[static_cast<std::size_t>(p)];
    return std::binary_search(m.begin(), m.end(), v);
  }

  std::optional<Vertex> bounded(const std::vector<Vertex>& chain) const {
    for (Vertex p = 0; p < n_; ++p) {
      if (std::all_of(chain.begin(), chain.end(), [&](Vertex v) { return in_ball(p, v); })) return p;
    }
    return std::nullopt;
  }

  // Deletes, leftmost first, every vertex whose neighbours are close.
  void normalize(std::vector<Vertex>& chain, std::vector<PuncturedStep>& steps) const {
    std::size_t k = 1;
    while (k + 1 < chain.size()) {
      if (close(chain[k - 1], chain[k + 1])) {
        PuncturedStep step;
        step.kind = PuncturedStep::Kind::Delete;
        step.position = k;
        apply_step(chain, step);
        steps.push_back(std::move(step));
        if (k > 1) --k;
      } else {
        ++k;
      }
    }
  }

  const std::vector<Vertex>* inside_path(Vertex p, Vertex u, Vertex v) {
    const auto key = std::make_tuple(p, u, v);
    auto it = paths_.find(key);
    if (it == paths_.end()) {
      it = paths_.emplace(key, shortest_inside(space_, fine_, members_[static_cast<std::size_t>(p)], u, v))
               .first;
    }
    return it->second ? &*it->second : nullptr;
  }

  std::vector<Child> children(const std::vector<Vertex>& c) {
    std::vector<Child> out;
    auto emit = [&](std::vector<PuncturedStep> steps, bool punctured) {
      std::vector<Vertex> next = c;
      for (const PuncturedStep& step : steps) apply_step(next, step);
      normalize(next, steps);
      out.push_back(Child{std::move(next), std::move(steps), punctured});
    };
    // Punctures that shorten a maximal in-ball segment.
    for (std::size_t i = 0; i + 2 < c.size(); ++i) {
      for (Vertex p = 0; p < n_; ++p) {
        if (!in_ball(p, c[i])) continue;
        std::size_t j = i;
        while (j + 1 < c.size() && in_ball(p, c[j + 1])) ++j;
        if (j < i + 2) continue;
        const auto* path = inside_path(p, c[i], c[j]);
        if (!path || path->size() >= j - i + 1) continue;
        PuncturedStep step;
        step.kind = PuncturedStep::Kind::Puncture;
        step.position = i;
        step.end = j;
        step.point = p;
        step.replacement = *path;
        emit({std::move(step)}, true);
      }
    }
    // Slides: replace an interior vertex by a point close to it and to both
    // of its neighbours (two triangle moves).
    for (std::size_t k = 1; k + 1 < c.size(); ++k) {
      for (Vertex q = 0; q < n_; ++q) {
        if (q == c[k - 1] || q == c[k] || q == c[k + 1]) continue;
        if (!close(q, c[k - 1]) || !close(q, c[k]) || !close(q, c[k + 1])) continue;
        PuncturedStep insert;
        insert.kind = PuncturedStep::Kind::Insert;
        insert.position = k;
        insert.point = q;
        PuncturedStep remove;
        remove.kind = PuncturedStep::Kind::Delete;
        remove.position = k + 1;
        emit({std::move(insert), std::move(remove)}, false);
      }
    }
    return out;
  }

  PuncturedSearchResult& finish(int id, Vertex center, PuncturedSearchResult& result) {
    PuncturedHomotopy h;
    h.center = center;
    h.bounded = nodes_[static_cast<std::size_t>(id)].chain;
    std::vector<int> path;
    for (int k = id; k >= 0; k = nodes_[static_cast<std::size_t>(k)].parent) path.push_back(k);
    std::reverse(path.begin(), path.end());
    for (int k : path) {
      const auto& steps = nodes_[static_cast<std::size_t>(k)].steps;
      h.steps.insert(h.steps.end(), steps.begin(), steps.end());
    }
    h.start = start_;
    result.witness = std::move(h);
    result.states = nodes_.size();
    return result;
  }

  const MetricSpace& space_;
  Scale fine_;
  Vertex n_;
  std::vector<std::vector<Vertex>> members_;
  std::vector<Vertex> start_;
  std::vector<Node> nodes_;
  std::unordered_map<std::vector<Vertex>, int, VertexSeqHash> index_;
  std::map<std::tuple<Vertex, Vertex, Vertex>, std::optional<std::vector<Vertex>>> paths_;
};

}  // namespace

PuncturedSearchResult punctured_homotopy_search(const MetricSpace& space, const Chain& a,
                                                const Chain& b, Scale s, std::size_t budget) {
  if (a.front() != b.front()) throw std::invalid_argument("chains must share a start point");
  if (a.scale() != b.scale()) throw std::invalid_argument("chains must share a scale");
  if (budget < 1) throw std::invalid_argument("search budget must be positive");
  PuncturedSearch search(space, a.scale(), s);
  return search.run(join(reversed(a.vertices()), b.vertices()), budget);
}

Verdict check_punctured_homotopy(const MetricSpace& space, Scale fine, Scale s,
                                 const PuncturedHomotopy& h) {
  auto inside = [&](Vertex p, std::span<const Vertex> vs) {
    return std::all_of(vs.begin(), vs.end(), [&](Vertex v) { return space.close(p, v, s); });
  };
  if (h.start.empty() || !is_chain(space, fine, h.start)) return Verdict::no("start is not a chain");
  std::vector<Vertex> chain = h.start;
  for (std::size_t k = 0; k < h.steps.size(); ++k) {
    const PuncturedStep& step = h.steps[k];
    const std::string where = "step " + std::to_string(k) + ": ";
    switch (step.kind) {
      case PuncturedStep::Kind::Insert:
      case PuncturedStep::Kind::Delete: {
        if (step.position == 0 || step.position >= chain.size()) return Verdict::no(where + "bad position");
        const bool insert = step.kind == PuncturedStep::Kind::Insert;
        if (!insert && step.position + 1 >= chain.size()) return Verdict::no(where + "bad position");
        const Vertex before = chain[step.position - 1];
        const Vertex after = chain[insert ? step.position : step.position + 1];
        const Vertex middle = insert ? step.point : chain[step.position];
        if (!space.contains(middle) || !space.close(before, middle, fine) ||
            !space.close(middle, after, fine) || !space.close(before, after, fine)) {
          return Verdict::no(where + "not a triangle move");
        }
        break;
      }
      case PuncturedStep::Kind::Puncture: {
        if (step.position >= step.end || step.end >= chain.size()) return Verdict::no(where + "bad segment");
        const auto& r = step.replacement;
        if (r.empty() || r.front() != chain[step.position] || r.back() != chain[step.end]) {
          return Verdict::no(where + "replacement has the wrong ends");
        }
        if (!space.contains(step.point) || !is_chain(space, fine, r)) {
          return Verdict::no(where + "replacement is not a chain");
        }
        const std::span<const Vertex> segment(chain.data() + step.position, step.end - step.position + 1);
        if (!inside(step.point, segment) || !inside(step.point, r)) {
          return Verdict::no(where + "leaves the ball");
        }
        break;
      }
    }
    apply_step(chain, step);
  }
  if (chain != h.bounded) return Verdict::no("replay does not end at the bounded chain");
  if (!space.contains(h.center) || !inside(h.center, chain)) return Verdict::no("final chain leaves the ball");
  return Verdict::yes("replayed " + std::to_string(h.steps.size()) + " steps");
}

// ---------------------------------------------------------------------------
// Pointwise pairs.

Verdict check_pointwise_pair(const ChainGroupoid& g, const ChainClass& a, const ChainClass& b,
                             std::span<const Vertex> first, std::span<const Vertex> second,
                             Scale coarse) {
  if (first.empty() || first.size() != second.size()) return Verdict::no("lengths differ");
  const Vertex root = g.presentation().root();
  if (first.front() != root || second.front() != root) return Verdict::no("not based");
  for (std::size_t i = 0; i < first.size(); ++i) {
    if (!g.space().close(first[i], second[i], coarse)) {
      return Verdict::no("apart at index " + std::to_string(i));
    }
  }
  if (!is_chain(g.space(), g.fine(), first) || !is_chain(g.space(), g.fine(), second)) {
    return Verdict::no("not fine chains");
  }
  const Verdict va = g.same_class(g.class_of(first), a);
  if (!va.is_yes()) return va;
  return g.same_class(g.class_of(second), b);
}

std::pair<std::vector<Vertex>, std::vector<Vertex>> shadow_pair(const Chain& a,
                                                                const PuncturedHomotopy& h) {
  std::vector<Vertex> first = a.vertices();
  std::vector<Vertex> second = a.vertices();
  auto walk_both = [&](std::span<const Vertex> path) {
    for (std::size_t i = 1; i < path.size(); ++i) {
      first.push_back(path[i]);
      second.push_back(path[i]);
    }
  };
  auto walk_second = [&](std::span<const Vertex> path) {
    for (std::size_t i = 1; i < path.size(); ++i) {
      first.push_back(first.back());
      second.push_back(path[i]);
    }
  };
  for (const LassoPiece& piece : h.pieces()) {
    walk_both(piece.tail);
    walk_second(piece.loop);
    walk_both(reversed(piece.tail));
  }
  walk_second(h.bounded);
  return {std::move(first), std::move(second)};
}

namespace {

using Pair = std::pair<std::vector<Vertex>, std::vector<Vertex>>;

// Monotone alignment of two vertex sequences keeping aligned entries close.
std::optional<Pair> align(const MetricSpace& space, const std::vector<Vertex>& x,
                          const std::vector<Vertex>& y, Scale coarse) {
  const std::size_t m = x.size();
  const std::size_t n = y.size();
  if (!space.close(x[0], y[0], coarse)) return std::nullopt;
  std::vector<int> from(m * n, -1);
  std::deque<std::size_t> queue{0};
  from[0] = 0;
  while (!queue.empty()) {
    const std::size_t cell = queue.front();
    queue.pop_front();
    const std::size_t i = cell / n;
    const std::size_t j = cell % n;
    for (auto [di, dj] : {std::pair{1, 1}, std::pair{1, 0}, std::pair{0, 1}}) {
      const std::size_t ni = i + static_cast<std::size_t>(di);
      const std::size_t nj = j + static_cast<std::size_t>(dj);
      if (ni >= m || nj >= n) continue;
      const std::size_t next = ni * n + nj;
      if (from[next] >= 0 || !space.close(x[ni], y[nj], coarse)) continue;
      from[next] = static_cast<int>(cell);
      queue.push_back(next);
    }
  }
  if (from[m * n - 1] < 0) return std::nullopt;
  Pair out;
  for (std::size_t cell = m * n - 1;; cell = static_cast<std::size_t>(from[cell])) {
    out.first.push_back(x[cell / n]);
    out.second.push_back(y[cell % n]);
    if (cell == 0) break;
  }
  std::reverse(out.first.begin(), out.first.end());
  std::reverse(out.second.begin(), out.second.end());
  return out;
}

// Breadth-first search over pairs of walks, tracking both edge words.
std::optional<Pair> walk_pairs(const ChainGroupoid& g, const ChainClass& a, const ChainClass& b,
                               Scale coarse, std::size_t budget) {
  const auto& p = g.presentation();
  const MetricSpace& space = g.space();
  const std::size_t max_a = a.word.length() + 2;
  const std::size_t max_b = b.word.length() + 2;
  auto step = [&](const Word& w, Vertex from, Vertex to) {
    const Letter x = from == to ? 0 : p.edge_letter(from, to);
    return x == 0 ? w : w * Word({x});
  };
  struct State {
    Vertex x, y;
    Word wa, wb;
    int parent;
  };
  std::vector<State> states{{p.root(), p.root(), Word(), Word(), -1}};
  std::set<std::tuple<Vertex, Vertex, Word, Word>> seen{{p.root(), p.root(), Word(), Word()}};
  std::vector<Vertex> neighbours_of_x, neighbours_of_y;
  auto around = [&](Vertex v) {
    std::vector<Vertex> out{v};
    for (Vertex u : p.component()) {
      if (u != v && space.close(u, v, g.fine())) out.push_back(u);
    }
    return out;
  };
  for (std::size_t k = 0; k < states.size() && states.size() < budget; ++k) {
    const State s = states[k];
    if (s.x == a.end && s.y == b.end && g.same_class(ChainClass{s.x, s.wa}, a).is_yes() &&
        g.same_class(ChainClass{s.y, s.wb}, b).is_yes()) {
      Pair out;
      for (int at = static_cast<int>(k); at >= 0; at = states[static_cast<std::size_t>(at)].parent) {
        out.first.push_back(states[static_cast<std::size_t>(at)].x);
        out.second.push_back(states[static_cast<std::size_t>(at)].y);
      }
      std::reverse(out.first.begin(), out.first.end());
      std::reverse(out.second.begin(), out.second.end());
      return out;
    }
    for (Vertex x : around(s.x)) {
      const Word wa = step(s.wa, s.x, x);
      if (wa.length() > max_a) continue;
      for (Vertex y : around(s.y)) {
        if (x == s.x && y == s.y) continue;
        if (!space.close(x, y, coarse)) continue;
        const Word wb = step(s.wb, s.y, y);
        if (wb.length() > max_b) continue;
        if (!seen.emplace(x, y, wa, wb).second) continue;
        states.push_back(State{x, y, wa, wb, static_cast<int>(k)});
      }
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<std::pair<std::vector<Vertex>, std::vector<Vertex>>> uc_witness_search(
    const ChainGroupoid& g, const ChainClass& a, const ChainClass& b, Scale coarse,
    std::size_t budget) {
  const Chain ra = g.representative(a);
  const Chain rb = g.representative(b);
  auto accept = [&](const std::optional<Pair>& pair) {
    return pair && check_pointwise_pair(g, a, b, pair->first, pair->second, coarse).is_yes();
  };
  if (auto pair = align(g.space(), ra.vertices(), rb.vertices(), coarse); accept(pair)) return pair;
  const auto punctured = punctured_homotopy_search(g.space(), ra, rb, coarse.times(0.5), budget);
  if (punctured.witness) {
    std::optional<Pair> pair = shadow_pair(ra, *punctured.witness);
    if (accept(pair)) return pair;
  }
  if (auto pair = walk_pairs(g, a, b, coarse, budget); accept(pair)) return pair;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Small loop transfer.

std::string to_string(SltMode m) { return m == SltMode::Uniform ? "uniform" : "per-point"; }

std::size_t SltReport::count(Answer a) const {
  return static_cast<std::size_t>(
      std::count_if(rows.begin(), rows.end(), [&](const SltRow& r) { return r.verdict.value == a; }));
}

namespace {

// Radii at which the base point ball gains points, ascending.
std::vector<Scale> base_ball_radii(const ChainGroupoid& g) {
  std::vector<double> d;
  const Vertex root = g.presentation().root();
  for (Vertex v : g.presentation().component()) d.push_back(g.space().dist(root, v));
  std::sort(d.begin(), d.end());
  d.erase(std::unique(d.begin(), d.end()), d.end());
  std::vector<Scale> out;
  for (double x : d) out.emplace_back(x);
  return out;
}

}  // namespace

SltReport slt_check(const ChainGroupoid& g, Scale ball_radius, Scale target, SltMode mode) {
  if (ball_radius < g.fine() || target < g.fine()) {
    throw std::invalid_argument("slt_check needs fine <= ball and fine <= target");
  }
  SltReport report{g.fine(), ball_radius, target, mode, {}};
  const auto& p = g.presentation();
  const GroupOracle& oracle = g.oracle();
  const Vertex root = p.root();
  auto decide = [&](Scale t, const Word& w, Word* conj) {
    const auto& h = g.ball_loops(root, t, root);
    return mode == SltMode::Uniform ? oracle.in_core(h, w, conj) : oracle.in_subgroup(h, w);
  };
  const std::vector<Scale> radii = base_ball_radii(g);
  for (Vertex center : p.component()) {
    const auto loops = g.ball_loop_chains(center, ball_radius, center);
    for (std::size_t i = 0; i < loops.size(); ++i) {
      SltRow row;
      row.center = center;
      row.loop = static_cast<int>(i) + 1;
      const Word w = p.path_word(loops[i]);
      row.word = oracle.to_simplified(w);
      Word conj;
      row.verdict = decide(target, w, &conj);
      if (row.verdict.is_no() && mode == SltMode::Uniform) row.conjugator = oracle.to_simplified(conj);
      if (!row.verdict.is_yes()) {
        for (Scale t : radii) {
          if (t <= target) continue;
          if (decide(t, w, nullptr).is_yes()) {
            row.passing_target = t;
            break;
          }
        }
      }
      report.rows.push_back(std::move(row));
    }
  }
  return report;
}

SltReport slt_check(const MetricSpace& space, Scale fine, Scale ball_radius, Scale target,
                    SltMode mode, std::size_t cap) {
  return slt_check(ChainGroupoid(space, fine, cap), ball_radius, target, mode);
}

// ---------------------------------------------------------------------------
// Local triviality and small loops.

LocalTriviality semilocal_simply_connected(const ChainGroupoid& g, Scale min_scale) {
  LocalTriviality out;
  const MetricSpace& space = g.space();
  if (space.size() == 1) {
    out.radius = Scale(0.0);
    return out;
  }
  const double diameter = space.diameter();
  const Vertex root = g.presentation().root();
  std::map<std::vector<Vertex>, Verdict> by_ball;
  for (Scale r : critical_scales(space)) {
    if (r < min_scale) continue;
    if (r.epsilon >= diameter) break;
    const std::vector<Vertex> members = ball(space, root, r);
    auto it = by_ball.find(members);
    if (it == by_ball.end()) {
      Verdict all = Verdict::yes("no loops in the ball");
      for (const Word& w : g.ball_loops(root, r, root)) {
        const Verdict v = g.oracle().is_trivial(w);
        if (v.is_no()) {
          all = v;
          break;
        }
        if (v.is_unknown()) all = v;
      }
      it = by_ball.emplace(members, all).first;
    }
    if (it->second.is_yes()) {
      out.radius = r;
      return out;
    }
    if (it->second.is_unknown()) out.gaps.push_back(r);
  }
  return out;
}

LocalTriviality semilocal_simply_connected(const MetricSpace& space, Scale fine, Scale min_scale) {
  return semilocal_simply_connected(ChainGroupoid(space, fine), min_scale);
}

SmallLoopReport small_loop_subgroup(const ChainGroupoid& g, std::span<const Scale> scales) {
  if (scales.empty()) throw std::invalid_argument("no scales given");
  for (std::size_t i = 1; i < scales.size(); ++i) {
    if (scales[i - 1] < scales[i]) throw std::invalid_argument("scales must be descending");
  }
  const GroupOracle& oracle = g.oracle();
  const Vertex root = g.presentation().root();
  std::vector<Word> gens;
  if (oracle.is_free()) {
    const int rank = oracle.simplification().group.generators;
    auto graph_at = [&](Scale s) {
      std::vector<Word> words;
      for (const Word& w : g.ball_loops(root, s, root)) words.push_back(oracle.to_simplified(w));
      return StallingsGraph(rank, words);
    };
    StallingsGraph meet = graph_at(scales.front());
    for (std::size_t i = 1; i < scales.size(); ++i) meet = meet.intersect(graph_at(scales[i]));
    for (const Word& w : meet.basis()) gens.push_back(oracle.simplification().backward(w));
  } else {
    // Balls at the base point are nested, so the smallest radius wins.
    gens = g.ball_loops(root, scales.back(), root);
  }
  SmallLoopReport out{{}, Verdict::yes("every generator is trivial")};
  for (const Word& w : gens) {
    const Verdict v = oracle.is_trivial(w);
    if (v.is_yes()) continue;
    out.gens.push_back(w);
    if (v.is_no()) {
      out.trivial = Verdict::no("nontrivial small loop: " + v.reason);
    } else if (!out.trivial.is_no()) {
      out.trivial = v;
    }
  }
  return out;
}

}  // namespace unicover
