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

#include "doctest.h"
#include "unicover/chains.hpp"
#include "unicover/spaces.hpp"

using namespace unicover;

TEST_SUITE("chains") {

TEST_CASE("construction") {
  const auto c12 = circle(12, 1.0);
  const Chain c(c12, Scale(0.6), {0, 1, 1, 2, 2, 2, 3});
  CHECK(c.vertices() == std::vector<Vertex>{0, 1, 2, 3});
  CHECK(Chain(c12, Scale(0.6), {4, 4}).size() == 1);
  CHECK_THROWS_WITH_AS(Chain(c12, Scale(0.6), {0, 2}), doctest::Contains("0 and 2"), ValidationError);
  CHECK_THROWS_AS(Chain(c12, Scale(0.6), {0, 12}), std::out_of_range);
  CHECK_THROWS_AS(is_chain(c12, Scale(0.6), std::vector<Vertex>{}), std::invalid_argument);
  CHECK(is_chain(c12, Scale(1.0), std::vector<Vertex>{0, 2, 4}));
}

TEST_CASE("concatenation and reversal") {
  const auto c12 = circle(12, 1.0);
  const Chain a(c12, Scale(0.6), {0, 1, 2});
  const Chain b(c12, Scale(0.6), {2, 3});
  CHECK(concat(a, b).vertices() == std::vector<Vertex>{0, 1, 2, 3});
  CHECK(reverse(a).vertices() == std::vector<Vertex>{2, 1, 0});
  CHECK(concat(a, reverse(a)).vertices() == std::vector<Vertex>{0, 1, 2, 1, 0});
  CHECK_THROWS_AS(concat(b, a), std::invalid_argument);
  CHECK_THROWS_AS(concat(a, Chain(c12, Scale(1.0), {2, 4})), std::invalid_argument);
}

TEST_CASE("boundedness") {
  const auto c12 = circle(12, 1.0);
  CHECK(is_bounded(c12, Scale(0.6), Chain(c12, Scale(0.6), {0, 1, 2})) == 1);
  CHECK_FALSE(is_bounded(c12, Scale(0.6), Chain(c12, Scale(0.6), {0, 1, 2, 3})));
  CHECK(is_bounded(c12, Scale(2.0), Chain(c12, Scale(0.6), {0, 1, 2, 3})) == 0);
}

TEST_CASE("moves") {
  const auto c12 = circle(12, 1.0);
  const Chain c(c12, Scale(1.0), {0, 1, 2});
  CHECK(apply_move(c12, c, HomotopyMove::remove(1)).vertices() == std::vector<Vertex>{0, 2});
  CHECK(apply_move(c12, Chain(c12, Scale(1.0), {0, 2}), HomotopyMove::insert(1, 1)).vertices() ==
        std::vector<Vertex>{0, 1, 2});
  CHECK(apply_move(c12, Chain(c12, Scale(1.0), {5}), HomotopyMove::insert(1, 6)).vertices() ==
        std::vector<Vertex>{5, 6, 5});
  CHECK_THROWS_AS(apply_move(c12, c, HomotopyMove::remove(0)), std::out_of_range);
  CHECK_THROWS_AS(apply_move(c12, c, HomotopyMove::remove(2)), std::out_of_range);
  CHECK_THROWS_AS(apply_move(c12, c, HomotopyMove::insert(0, 1)), std::out_of_range);
  try {
    apply_move(c12, Chain(c12, Scale(1.0), {0, 2, 4}), HomotopyMove::remove(1));
    FAIL("expected rejection");
  } catch (const MoveRejected& e) {
    CHECK(e.first == 0);
    CHECK(e.second == 4);
  }
  CHECK_THROWS_AS(apply_move(c12, c, HomotopyMove::insert(1, 6)), MoveRejected);
}

}  // TEST_SUITE
