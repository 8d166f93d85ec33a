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
#include "unicover/spaces.hpp"
#include "unicover/structures.hpp"

using namespace unicover;

namespace {

constexpr std::size_t kPairBudget = 1000;

const Scale kHawaiianFine(std::sin(std::numbers::pi / 16) + 1e-9);

// Loop around circle i of hawaiian(n, k) or wedge_circles, from the origin.
std::vector<Vertex> around(int k, int circle) {
  std::vector<Vertex> out{0};
  for (int j = 1; j < k; ++j) out.push_back(hawaiian_index(k, circle, j));
  out.push_back(0);
  return out;
}

std::vector<Vertex> concat_loops(std::initializer_list<std::vector<Vertex>> loops) {
  std::vector<Vertex> out{0};
  for (const auto& l : loops) out.insert(out.end(), l.begin() + 1, l.end());
  return out;
}

std::vector<Vertex> backwards(std::vector<Vertex> v) {
  std::reverse(v.begin(), v.end());
  return v;
}

// Reduced words of length at most `len` over the simplified generators,
// pulled back to the presentation's generators.
std::vector<Word> short_classes(const ChainGroupoid& g, int len) {
  const int gens = g.oracle().simplification().group.generators;
  std::vector<Word> words{Word()};
  for (std::size_t k = 0; k < words.size(); ++k) {
    if (static_cast<int>(words[k].length()) >= len) continue;
    for (int x = 1; x <= gens; ++x) {
      for (Letter l : {x, -x}) {
        if (!words[k].empty() && words[k][words[k].length() - 1] == -l) continue;
        words.push_back(words[k] * Word({l}));
      }
    }
  }
  std::vector<Word> out;
  for (const Word& w : words) out.push_back(g.oracle().simplification().backward(w));
  return out;
}

MetricSpace jittered_octagon(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> jitter(-0.08, 0.08);
  std::vector<std::vector<double>> pts;
  for (int i = 0; i < 8; ++i) {
    const double t = 2 * std::numbers::pi * i / 8;
    pts.push_back({std::cos(t) + jitter(rng), std::sin(t) + jitter(rng)});
  }
  return MetricSpace::from_points("octagon", pts);
}

// Classes (u, empty word) against (v, w): by left invariance these cover
// every pair up to a common prefix.
struct PairCase {
  ChainClass a;
  ChainClass b;
};

std::vector<PairCase> pair_cases(const ChainGroupoid& g, int len) {
  std::vector<PairCase> out;
  const auto n = static_cast<Vertex>(g.space().size());
  const auto words = short_classes(g, len);
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = 0; v < n; ++v) {
      for (const Word& w : words) out.push_back({ChainClass{u, Word()}, ChainClass{v, w}});
    }
  }
  return out;
}

bool subgroups_equal(const GroupOracle& o, const std::vector<Word>& x, const std::vector<Word>& y) {
  for (const Word& w : x) {
    if (!o.in_subgroup(y, w).is_yes()) return false;
  }
  for (const Word& w : y) {
    if (!o.in_subgroup(x, w).is_yes()) return false;
  }
  return true;
}

}  // namespace

TEST_SUITE("structures") {

TEST_CASE("ball subgroups") {
  SUBCASE("whole space and empty ball") {
    const auto c = circle(12, 1.0);
    const ChainGroupoid g(c, Scale(0.6));
    const auto whole = ball_subgroup(g, Scale(2.0), 0);
    CHECK(g.oracle().in_subgroup(whole.gens, Word::generator(1)).is_yes());
    const auto tiny = ball_subgroup(g, Scale(0.1), 0);
    CHECK(tiny.gens.empty());
    CHECK(ball_subgroup(g, Scale(0.6), 6).gens.empty());
  }
  SUBCASE("hawaiian earring small circles") {
    const auto h = hawaiian(3, 16);
    const ChainGroupoid g(h, kHawaiianFine);
    REQUIRE(g.oracle().is_free());
    REQUIRE(g.oracle().simplification().group.generators == 3);
    const auto b = ball_subgroup(g, Scale(0.6), 0);
    const std::vector<Word> small{g.class_of(around(16, 2)).word, g.class_of(around(16, 3)).word};
    CHECK(subgroups_equal(g.oracle(), b.gens, small));
    CHECK(g.oracle().in_subgroup(b.gens, g.class_of(around(16, 1)).word).is_no());
    CHECK(b.fine_scale == kHawaiianFine);
  }
}

TEST_CASE("closeness relation examples") {
  const auto c = circle(12, 1.0);
  const ChainGroupoid g(c, Scale(0.6));
  const ChainClass up = g.class_of(std::vector<Vertex>{0, 1, 2, 3, 4, 5, 6});
  const ChainClass down = g.class_of(std::vector<Vertex>{0, 11, 10, 9, 8, 7, 6});
  SUBCASE("bp") {
    const auto same = bp_close(g, up, up, Scale(0.6));
    CHECK(same.verdict.is_yes());
    REQUIRE(same.witness);
    CHECK(same.witness->kind == StructureWitness::Kind::Equal);
    CHECK(bp_close(g, up, down, Scale(0.6)).verdict.is_no());
    const auto wide = bp_close(g, up, down, Scale(2.0));
    CHECK(wide.verdict.is_yes());
    REQUIRE(wide.witness);
    CHECK(wide.witness->kind == StructureWitness::Kind::BoundedConnector);
    CHECK(wide.relation == Relation::BP);
  }
  SUBCASE("lasso") {
    CHECK(lasso_close(g, up, down, Scale(0.6)).verdict.is_no());
    CHECK(lasso_close(g, up, down, Scale(2.0)).verdict.is_yes());
    CHECK(lasso_close(g, up, up, Scale(0.6)).verdict.is_yes());
  }
  SUBCASE("james") {
    CHECK(james_close(g, up, up, Scale(0.6)).verdict.is_yes());
    const auto no = james_close(g, up, down, Scale(0.6));
    CHECK(no.verdict.is_no());
    // Neighbouring endpoints, same direction: a direct pair exists.
    const ChainClass shorter = g.class_of(std::vector<Vertex>{0, 1, 2, 3, 4, 5});
    const auto near = james_close(g, shorter, up, Scale(0.6));
    CHECK(near.verdict.is_yes());
    REQUIRE(near.witness);
    REQUIRE(near.witness->kind == StructureWitness::Kind::PointwisePair);
    CHECK(check_pointwise_pair(g, shorter, up, near.witness->first, near.witness->second, Scale(0.6))
              .is_yes());
  }
  SUBCASE("endpoints outside the component") {
    const auto two = MetricSpace::from_points("two", {{0.0}, {5.0}});
    const ChainGroupoid apart(two, Scale(1.0));
    const ChainClass home{0, Word()};
    const ChainClass away{1, Word()};
    CHECK(bp_close(apart, home, away, Scale(10.0)).verdict.reason == "not chain-connected");
    CHECK(lasso_close(apart, home, away, Scale(10.0)).verdict.is_no());
    CHECK(james_close(apart, home, away, Scale(10.0)).verdict.is_no());
  }
}

TEST_CASE("figure eight conjugate is a lasso") {
  const auto w = wedge_circles({1.0, 0.5}, 16);
  const Scale fine(2 * std::sin(std::numbers::pi / 16) + 1e-9);
  const ChainGroupoid g(w, fine);
  const auto big = around(16, 1);
  const auto loop = concat_loops({big, around(16, 2), backwards(big)});
  const ChainClass a = g.class_of(loop);
  const ChainClass b{0, Word()};
  // The ball of radius 1 at the base point holds circle 2 and an arc of circle 1.
  const Scale coarse(1.0);
  CHECK(bp_close(g, a, b, coarse).verdict.is_no());
  CHECK(lasso_close(g, a, b, coarse).verdict.is_yes());
  CHECK(lasso_close(g, a, b, Scale(0.6)).verdict.is_no());

  const auto found = punctured_homotopy_search(w, Chain(w, fine, loop), Chain(w, fine, {0}), coarse);
  REQUIRE(found.witness);
  CHECK(found.witness->puncture_count() == 1);
  CHECK(check_punctured_homotopy(w, fine, coarse, *found.witness).is_yes());
  const auto pieces = found.witness->pieces();
  REQUIRE(pieces.size() == 1);
  // The removed loop is essential and sits in the ball at its center.
  const auto& piece = pieces[0];
  CHECK_FALSE(g.same_class(g.class_of(concat_loops({piece.tail, piece.loop, backwards(piece.tail)})), b)
                  .is_yes());
  for (Vertex v : piece.loop) CHECK(w.close(v, piece.center, coarse));

  const auto none = punctured_homotopy_search(w, Chain(w, fine, loop), Chain(w, fine, {0}), Scale(0.6));
  CHECK_FALSE(none.witness);
  CHECK_FALSE(none.budget_exhausted);
}

TEST_CASE("punctured homotopy search") {
  const auto c = circle(12, 1.0);
  const Scale fine(0.6);
  const Chain up(c, fine, {0, 1, 2, 3, 4, 5, 6});
  const Chain down(c, fine, {0, 11, 10, 9, 8, 7, 6});
  SUBCASE("equal chains need no punctures") {
    const auto r = punctured_homotopy_search(c, up, up, fine);
    REQUIRE(r.witness);
    CHECK(r.witness->puncture_count() == 0);
    CHECK(check_punctured_homotopy(c, fine, fine, *r.witness).is_yes());
  }
  SUBCASE("the full loop is never bounded") {
    for (std::size_t budget : {1u, 10u, 1000u, 100000u}) {
      const auto r = punctured_homotopy_search(c, up, down, fine, budget);
      CHECK_FALSE(r.witness);
    }
  }
  SUBCASE("tampered witnesses are rejected") {
    const auto r = punctured_homotopy_search(c, up, Chain(c, fine, {0, 1, 2, 3, 4}), Scale(1.2));
    REQUIRE(r.witness);
    REQUIRE(check_punctured_homotopy(c, fine, Scale(1.2), *r.witness).is_yes());
    PuncturedHomotopy bad = *r.witness;
    bad.center = 9;
    CHECK(check_punctured_homotopy(c, fine, Scale(1.2), bad).is_no());
    bad = *r.witness;
    bad.start.push_back(7);
    CHECK(check_punctured_homotopy(c, fine, Scale(1.2), bad).is_no());
    CHECK(check_punctured_homotopy(c, fine, Scale(0.3), *r.witness).is_no());
  }
  SUBCASE("preconditions") {
    CHECK_THROWS_AS(punctured_homotopy_search(c, up, Chain(c, fine, {3, 4}), fine), std::invalid_argument);
    CHECK_THROWS_AS(punctured_homotopy_search(c, up, Chain(c, Scale(1.0), {0, 1}), fine),
                    std::invalid_argument);
    CHECK_THROWS_AS(punctured_homotopy_search(c, up, up, fine, 0), std::invalid_argument);
  }
}

TEST_CASE("relation laws on small spaces") {
  for (std::uint64_t seed : {1u, 3u}) {
    const auto space = jittered_octagon(seed);
    for (const Scale s : {Scale(0.9), Scale(1.45)}) {
      CAPTURE(seed);
      CAPTURE(s.epsilon);
      const ChainGroupoid g(space, s);
      REQUIRE(g.oracle().simplification().group.generators == 1);
      const auto cases = pair_cases(g, 2);
      for (const auto& [a, b] : cases) {
        const auto bp = bp_close(g, a, b, s).verdict;
        const auto lasso = lasso_close(g, a, b, s).verdict;
        REQUIRE_FALSE(bp.is_unknown());
        REQUIRE_FALSE(lasso.is_unknown());
        // Symmetry.
        CHECK(bp_close(g, b, a, s).verdict.value == bp.value);
        CHECK(lasso_close(g, b, a, s).verdict.value == lasso.value);
        // bp is finer than lasso; both are monotone in the coarse scale.
        if (bp.is_yes()) CHECK(lasso.is_yes());
        if (bp.is_yes()) CHECK(bp_close(g, a, b, s.times(1.5)).verdict.is_yes());
        if (lasso.is_yes()) CHECK(lasso_close(g, a, b, s.times(1.5)).verdict.is_yes());
        // Lasso closeness and punctured homotopies agree.
        const auto search = punctured_homotopy_search(space, g.representative(a), g.representative(b), s);
        CHECK(search.witness.has_value() == lasso.is_yes());
        if (search.witness) CHECK(check_punctured_homotopy(space, s, s, *search.witness).is_yes());
        // James sandwich.
        if (lasso.is_yes()) {
          const auto pair = uc_witness_search(g, a, b, s.times(2.0), kPairBudget);
          REQUIRE(pair);
          CHECK(check_pointwise_pair(g, a, b, pair->first, pair->second, s.times(2.0)).is_yes());
        }
        if (uc_witness_search(g, a, b, s, kPairBudget)) CHECK(lasso_close(g, a, b, s.times(2.0)).verdict.is_yes());
        const auto james = james_close(g, a, b, s, kPairBudget).verdict;
        if (lasso.is_yes()) CHECK(james.is_yes());
        if (james.is_no()) CHECK(lasso_close(g, a, b, s.times(2.0)).verdict.is_no());
      }
      // Reflexivity.
      for (const auto& [a, b] : cases) {
        CHECK(bp_close(g, b, b, s).verdict.is_yes());
        CHECK(james_close(g, b, b, s, kPairBudget).verdict.is_yes());
      }
    }
  }
}

TEST_CASE("filter law") {
  const auto space = jittered_octagon(5);
  const Scale s(0.9);
  const ChainGroupoid g(space, s);
  REQUIRE(g.oracle().simplification().group.generators == 1);
  struct Close {
    Vertex u;
    Vertex v;
    Word w;
  };
  std::vector<Close> yes;
  for (const auto& [a, b] : pair_cases(g, 4)) {
    if (bp_close(g, a, b, s).verdict.is_yes()) yes.push_back({a.end, b.end, b.word});
  }
  REQUIRE(!yes.empty());
  int triples = 0;
  for (const auto& x : yes) {
    for (const auto& y : yes) {
      if (x.v != y.u) continue;
      ++triples;
      // (u, 1) ~ (v, w1) and (v, 1) ~ (t, w2) give (v, w1) ~ (t, w1 w2).
      CHECK(bp_close(g, ChainClass{x.u, Word()}, ChainClass{y.v, x.w * y.w}, s.times(4.0)).verdict.is_yes());
    }
  }
  CHECK(triples > 0);
}

TEST_CASE("lasso classes of loops form a normal subgroup") {
  const auto w = wedge_circles({1.0, 0.5}, 16);
  const ChainGroupoid g(w, Scale(2 * std::sin(std::numbers::pi / 16) + 1e-9));
  const Scale coarse(1.0);
  const ChainClass base{0, Word()};
  const auto words = short_classes(g, 3);
  std::vector<Word> yes;
  for (const Word& x : words) {
    if (lasso_close(g, base, ChainClass{0, x}, coarse).verdict.is_yes()) yes.push_back(x);
  }
  REQUIRE(yes.size() > 1);
  for (const Word& x : yes) {
    CHECK(lasso_close(g, base, ChainClass{0, x.inverse()}, coarse).verdict.is_yes());
    for (const Word& y : yes) CHECK(lasso_close(g, base, ChainClass{0, x * y}, coarse).verdict.is_yes());
    for (const Word& u : words) {
      CHECK(lasso_close(g, base, ChainClass{0, x.conjugated_by(u)}, coarse).verdict.is_yes());
    }
  }
}

TEST_CASE("shadow pairs") {
  const auto w = wedge_circles({1.0, 0.5}, 16);
  const Scale fine(2 * std::sin(std::numbers::pi / 16) + 1e-9);
  const ChainGroupoid g(w, fine);
  const auto big = around(16, 1);
  const Chain a(w, fine, big);
  const Chain b(w, fine, concat_loops({big, around(16, 2)}));
  const auto found = punctured_homotopy_search(w, a, b, Scale(1.0));
  REQUIRE(found.witness);
  const auto [first, second] = shadow_pair(a, *found.witness);
  CHECK(check_pointwise_pair(g, g.class_of(a), g.class_of(b), first, second, Scale(2.0)).is_yes());
  CHECK(check_pointwise_pair(g, g.class_of(a), g.class_of(b), first, second, Scale(0.5)).is_no());
}

TEST_CASE("small loop transfer") {
  SUBCASE("hawaiian earring fails uniformly") {
    const ChainGroupoid g(hawaiian(3, 16), kHawaiianFine);
    const auto report = slt_check(g, Scale(0.6), Scale(0.6), SltMode::Uniform);
    const Word g2 = g.oracle().to_simplified(g.class_of(around(16, 2)).word);
    const Word g1 = g.oracle().to_simplified(g.class_of(around(16, 1)).word);
    bool found = false;
    for (const SltRow& row : report.rows) {
      CHECK(row.verdict.is_no());
      if (row.center != 0 || row.word != g2) continue;
      found = true;
      REQUIRE(row.conjugator);
      CHECK(g.oracle().simplification().group.generators == 3);
      // The witness conjugates along the big circle.
      CHECK((*row.conjugator == g1 || *row.conjugator == g1.inverse()));
      REQUIRE(row.passing_target);
      CHECK(row.passing_target->epsilon == doctest::Approx(1.0));
    }
    CHECK(found);
    const auto per_point = slt_check(g, Scale(0.6), Scale(0.6), SltMode::PerPoint);
    CHECK(per_point.count(Answer::No) < report.count(Answer::No));
  }
  SUBCASE("simply connected scale") {
    const auto report = slt_check(circle(12, 1.0), Scale(2.0), Scale(2.0), Scale(2.0), SltMode::Uniform);
    CHECK(report.count(Answer::Yes) == report.rows.size());
  }
  SUBCASE("torus") {
    const auto report = slt_check(torus_grid(4, 4), Scale(std::numbers::sqrt2), Scale(1.5), Scale(1.5),
                                  SltMode::Uniform);
    CHECK(report.count(Answer::Yes) == report.rows.size());
  }
  SUBCASE("circle below its filling scale") {
    const auto report = slt_check(circle(12, 1.0), Scale(0.6), Scale(0.6), Scale(0.6), SltMode::Uniform);
    CHECK(report.rows.empty());
  }
  SUBCASE("preconditions") {
    const ChainGroupoid g(circle(12, 1.0), Scale(0.6));
    CHECK_THROWS_AS(slt_check(g, Scale(0.5), Scale(0.6), SltMode::Uniform), std::invalid_argument);
    CHECK_THROWS_AS(slt_check(g, Scale(0.6), Scale(0.5), SltMode::Uniform), std::invalid_argument);
  }
}

TEST_CASE("semilocal simple connectivity") {
  const auto c = circle(12, 1.0);
  const auto r = semilocal_simply_connected(c, Scale(0.6));
  REQUIRE(r.radius);
  CHECK(r.radius->epsilon == doctest::Approx(2 * std::sin(std::numbers::pi / 12)));
  CHECK(r.gaps.empty());

  const auto h = hawaiian(3, 16);
  const auto small = semilocal_simply_connected(h, kHawaiianFine);
  REQUIRE(small.radius);
  CHECK(small.radius->epsilon < 1.0 / 3);
  CHECK_FALSE(semilocal_simply_connected(h, kHawaiianFine, Scale(1.0 / 3 + 1e-6)).radius);

  const auto point = MetricSpace::from_points("point", {{0.0, 0.0}});
  const auto p = semilocal_simply_connected(point, Scale(1.0));
  REQUIRE(p.radius);
  CHECK(p.radius->epsilon == 0.0);
}

TEST_CASE("small loop subgroups") {
  const auto w = wedge_circles({1.0, 0.5}, 16);
  const ChainGroupoid g(w, Scale(2 * std::sin(std::numbers::pi / 16) + 1e-9));
  const std::vector<Scale> small{Scale(0.3), Scale(0.2)};
  const auto none = small_loop_subgroup(g, small);
  CHECK(none.gens.empty());
  CHECK(none.trivial.is_yes());

  const std::vector<Scale> with_whole{Scale(5.0), Scale(1.0)};
  const std::vector<Scale> alone{Scale(1.0)};
  const auto a = small_loop_subgroup(g, with_whole);
  const auto b = small_loop_subgroup(g, alone);
  CHECK(a.trivial.is_no());
  CHECK(subgroups_equal(g.oracle(), a.gens, b.gens));
  CHECK(subgroups_equal(g.oracle(), b.gens, ball_subgroup(g, Scale(1.0), 0).gens));

  const std::vector<Scale> rising{Scale(0.2), Scale(0.3)};
  CHECK_THROWS_AS(small_loop_subgroup(g, rising), std::invalid_argument);
  CHECK_THROWS_AS(small_loop_subgroup(g, std::vector<Scale>{}), std::invalid_argument);

  const ChainGroupoid point(MetricSpace::from_points("point", {{0.0}}), Scale(1.0));
  CHECK(small_loop_subgroup(point, alone).gens.empty());
}

}  // TEST_SUITE
