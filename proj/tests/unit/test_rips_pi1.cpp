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

#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "unicover/group_engine.hpp"
#include "unicover/rips_pi1.hpp"
#include "unicover/spaces.hpp"

using namespace unicover;

namespace {

// Independent rank oracle for triangle-free graphs: E - V + 1 on the
// component of the root.
int cycle_rank(const MetricSpace& space, Scale s) {
  const Graph g = entourage_graph(space, s);
  const Partition p = connected_components(g);
  const int block = p.label[static_cast<std::size_t>(space.basepoint())];
  int vertices = 0;
  int edges = 0;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    if (p.label[v] != block) continue;
    ++vertices;
    edges += static_cast<int>(g.adjacency[v].size());
  }
  return edges / 2 - vertices + 1;
}

bool triangle_free(const MetricSpace& space, Scale s) {
  const Graph g = entourage_graph(space, s);
  for (std::size_t a = 0; a < g.vertex_count(); ++a)
    for (Vertex b : g.adjacency[a])
      for (Vertex c : g.adjacency[static_cast<std::size_t>(b)])
        if (g.has_edge(static_cast<Vertex>(a), c) && c != static_cast<Vertex>(a)) return false;
  return true;
}

}  // namespace

TEST_SUITE("rips_pi1") {

TEST_CASE("presentation examples") {
  const auto c12 = circle(12, 1.0);
  SUBCASE("cycle graph") {
    const auto p = presentation(c12, Scale(0.6));
    CHECK(p.generator_count() == 1);
    CHECK(p.group().relators.empty());
    CHECK(p.generator_edges()[0] == std::make_pair(6, 7));
  }
  SUBCASE("complete graph") {
    const auto p = presentation(c12, Scale(2.0));
    const auto s = simplify(p.group());
    CHECK(s.generators == 0);
    CHECK(todd_coxeter(p.group(), {}).index() == 1);
  }
  SUBCASE("annulus") {
    const auto s = simplify(presentation(c12, Scale(1.0)).group());
    CHECK(s.generators == 1);
    CHECK(s.relators.empty());
    // Cross-check: the raw presentation maps onto Z/5 with the loop nontrivial.
    const auto p = presentation(c12, Scale(1.0));
    GroupPresentation q = p.group();
    const Word loop = p.path_word(std::vector<Vertex>{0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 0});
    q.relators.push_back(loop.power(5));
    const auto t = todd_coxeter(q, {});
    REQUIRE(t.complete());
    CHECK(t.index() == 5);
  }
  SUBCASE("wedge of three circles") {
    const auto w = wedge_circles({1.0, 1.0, 1.0}, 16);
    const Scale nearest = critical_scales(w).front();
    const auto p = presentation(w, nearest);
    CHECK(triangle_free(w, nearest));
    CHECK(p.generator_count() == cycle_rank(w, nearest));
    CHECK(simplify(p.group()).generators == 3);
  }
  SUBCASE("torus") {
    const auto t = torus_grid(4, 4);
    CHECK(triangle_free(t, Scale(1.0)));
    CHECK(presentation(t, Scale(1.0)).generator_count() == 17);
    const auto filled = presentation(t, Scale(std::numbers::sqrt2));
    CHECK(abelian_invariants(filled.group())->to_string() == "Z^2");
    CHECK(simplify(filled.group()).generators == 2);
  }
}

TEST_CASE("rank formula on triangle-free random graphs") {
  std::mt19937_64 rng(99);
  int checked = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const auto space = random_cloud(14, 2, rng());
    for (const Scale s : critical_scales(space)) {
      if (!triangle_free(space, s)) break;
      const auto p = presentation(space, s);
      const auto simple = simplify(p.group());
      CHECK(p.group().relators.empty());
      CHECK(simple.generators == cycle_rank(space, s));
      ++checked;
    }
  }
  CHECK(checked > 100);
}

TEST_CASE("chain classes") {
  const auto c12 = circle(12, 1.0);
  const auto p = presentation(c12, Scale(0.6));
  CHECK(chain_class(p, Chain(c12, Scale(0.6), {0})) == ChainClass{0, Word()});
  for (Vertex v = 0; v < 12; ++v) {
    const auto path = p.tree_path(v);
    CHECK(chain_class(p, path) == ChainClass{v, Word()});
  }
  const Chain loop(c12, Scale(0.6), {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 0});
  CHECK(chain_class(p, loop) == ChainClass{0, Word({1})});
  CHECK(chain_class(p, reverse(loop)) == ChainClass{0, Word({-1})});
  CHECK_THROWS_AS(chain_class(p, Chain(c12, Scale(0.6), {1, 0})), ValidationError);
  CHECK_THROWS_AS(chain_class(p, std::vector<Vertex>{0, 2}), ValidationError);
}

TEST_CASE("groupoid laws") {
  const auto space = hawaiian(2, 10);
  const Scale s = critical_scales(space)[3];
  const auto p = presentation(space, s);
  std::mt19937_64 rng(4);
  auto walk = [&](Vertex from, int steps) {
    std::vector<Vertex> out{from};
    for (int i = 0; i < steps; ++i) {
      std::vector<Vertex> next;
      for (Vertex v = 0; v < static_cast<Vertex>(space.size()); ++v)
        if (v != out.back() && p.in_component(v) && space.close(out.back(), v, s)) next.push_back(v);
      if (next.empty()) break;
      out.push_back(next[rng() % next.size()]);
    }
    return Chain(space, s, out);
  };
  for (int i = 0; i < 200; ++i) {
    const Chain a = walk(space.basepoint(), 12);
    const Chain b = walk(a.back(), 12);
    const ChainClass ca = chain_class(p, a);
    // Junction-translated word of b: conjugate by the tree path to its start.
    std::vector<Vertex> translated = p.tree_path(b.front());
    translated.insert(translated.end(), b.vertices().begin() + 1, b.vertices().end());
    const ChainClass cb = chain_class(p, translated);
    CHECK(chain_class(p, concat(a, b)) == ChainClass{b.back(), ca.word * cb.word});
    // Reversal of a based loop inverts its word.
    std::vector<Vertex> back_home = a.vertices();
    const auto home = p.tree_path(a.back());
    back_home.insert(back_home.end(), home.rbegin() + 1, home.rend());
    const Chain loop(space, s, back_home);
    CHECK(chain_class(p, reverse(loop)).word == chain_class(p, loop).word.inverse());
    // Representatives realize their class.
    CHECK(chain_class(p, representative(space, p, ca)) == ca);
  }
}

TEST_CASE("chain classes are invariant under homotopy moves") {
  struct Case {
    MetricSpace space;
    Scale scale;
  };
  std::vector<Case> cases;
  cases.push_back({circle(12, 1.0), Scale(1.0)});
  cases.push_back({hawaiian(3, 16), Scale(std::sin(std::numbers::pi / 16))});
  cases.push_back({torus_grid(4, 4), Scale(std::numbers::sqrt2)});
  cases.push_back({random_cloud(10, 2, 5), critical_scales(random_cloud(10, 2, 5))[14]});
  std::mt19937_64 rng(12345);
  for (const auto& [space, s] : cases) {
    CAPTURE(space.name());
    const auto p = presentation(space, s);
    const GroupOracle group(p.group());
    const auto n = static_cast<Vertex>(space.size());
    Chain c(space, s, {space.basepoint()});
    ChainClass start = chain_class(p, c);
    int applied = 0;
    int attempts = 0;
    while (applied < 10000 && attempts < 2000000) {
      ++attempts;
      HomotopyMove m;
      if (rng() % 5 < 3 || c.size() <= 2) {
        m = HomotopyMove::insert(1 + rng() % std::max<std::size_t>(c.size() - 1, 1),
                                 static_cast<Vertex>(rng() % static_cast<std::size_t>(n)));
      } else {
        m = HomotopyMove::remove(1 + rng() % (c.size() - 2));
      }
      try {
        c = apply_move(space, c, m);
      } catch (const MoveRejected&) {
        continue;
      }
      ++applied;
      if (c.size() > 40) {
        // Keep chains short by a run of deletions.
        for (std::size_t k = 1; k + 1 < c.size() && c.size() > 10;) {
          try {
            c = apply_move(space, c, HomotopyMove::remove(k));
            ++applied;
          } catch (const MoveRejected&) {
            ++k;
          }
        }
      }
      const ChainClass now = chain_class(p, c);
      REQUIRE(now.end == start.end);
      REQUIRE(group.are_equal(now.word, start.word).is_yes());
    }
    CHECK(applied >= 10000);
  }
}

TEST_CASE("scale maps") {
  const auto c12 = circle(12, 1.0);
  SUBCASE("identity") {
    const auto m = scale_map(c12, Scale(1.0), Scale(1.0));
    for (int g = 1; g <= static_cast<int>(m.images.size()); ++g) CHECK(m.images[g - 1] == Word::generator(g));
  }
  SUBCASE("to the complete graph") {
    const auto target = presentation(c12, Scale(2.0));
    const auto m = scale_map(presentation(c12, Scale(0.6)), target);
    for (const Word& w : m.images) CHECK(in_normal_closure(target.group(), {}, w).is_yes());
  }
  SUBCASE("into the annulus") {
    const auto target = presentation(c12, Scale(1.0));
    const auto m = scale_map(presentation(c12, Scale(0.6)), target);
    REQUIRE(m.images.size() == 1);
    const Word loop = target.path_word(std::vector<Vertex>{0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 0});
    CHECK(in_normal_closure(target.group(), {}, m.images[0].inverse() * loop).is_yes());
    CHECK(GroupOracle(target.group()).is_trivial(m.images[0]).is_no());
  }
  SUBCASE("composition") {
    const auto space = hawaiian(3, 12);
    const auto scales = critical_scales(space);
    const auto p1 = presentation(space, scales[2]);
    const auto p2 = presentation(space, scales[6]);
    const auto p3 = presentation(space, scales[12]);
    const auto direct = scale_map(p1, p3);
    const auto two = scale_map(p2, p3);
    const auto one = scale_map(p1, p2);
    const GroupOracle target(p3.group());
    for (int g = 1; g <= p1.generator_count(); ++g) {
      CHECK(target.are_equal(direct.images[g - 1], two.apply(one.images[g - 1])).is_yes());
    }
  }
  SUBCASE("scale must not decrease") {
    CHECK_THROWS_AS(scale_map(c12, Scale(1.0), Scale(0.6)), std::invalid_argument);
  }
}

}  // TEST_SUITE
