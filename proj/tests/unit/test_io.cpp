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
#include "unicover/io.hpp"
#include "unicover/spaces.hpp"

using namespace unicover;

TEST_SUITE("io") {

TEST_CASE("json spaces") {
  const auto one = load_space_json(R"({"name": "p", "basepoint": 0, "points": [[1.5, 2.0]]})");
  CHECK(one.size() == 1);
  CHECK(one.dist(0, 0) == 0.0);

  const auto pair = load_space_json(R"({"name": "p", "basepoint": 1, "points": [[0, 0], [3, 4]]})");
  CHECK(pair.dist(0, 1) == 5.0);
  CHECK(pair.basepoint() == 1);

  const auto m = load_space_json(R"({"name": "m", "basepoint": 0, "matrix": [[0, 2], [2, 0]]})");
  CHECK(m.dist(1, 0) == 2.0);
  CHECK(m.coordinates().empty());
}

TEST_CASE("json errors") {
  CHECK_THROWS_WITH_AS(load_space_json(R"({"basepoint": 0, "matrix": [[0, 1], [2, 0]]})"),
                       doctest::Contains("asymmetric"), ValidationError);
  CHECK_THROWS_WITH_AS(load_space_json(R"({"basepoint": 0, "matrix": [[0, -1], [-1, 0]]})"),
                       doctest::Contains("negative"), ValidationError);
  CHECK_THROWS_WITH_AS(load_space_json(R"({"points": [[0]]})"), doctest::Contains("basepoint"),
                       ValidationError);
  CHECK_THROWS_AS(load_space_json("not json"), ParseError);
  CHECK_THROWS_AS(load_space_json(R"({"basepoint": 0})"), ParseError);
  CHECK_THROWS_AS(load_space_json(R"({"basepoint": 0, "points": [[0]], "matrix": [[0]]})"), ParseError);
  CHECK_THROWS_AS(load_space_json(R"({"basepoint": 0, "points": [[0, "x"]]})"), ParseError);
}

TEST_CASE("csv spaces") {
  const auto s = load_space_csv("0,0\n3,4\n\n", "two");
  CHECK(s.size() == 2);
  CHECK(s.dist(0, 1) == 5.0);
  CHECK(s.basepoint() == 0);
  CHECK_THROWS_AS(load_space_csv("0,0\n1\n"), ParseError);
  CHECK_THROWS_AS(load_space_csv("a,b\n"), ParseError);
}

TEST_CASE("round trip") {
  const auto c = circle(5, 2.0);
  const auto back = load_space_json(space_to_json(c));
  CHECK(back.name() == c.name());
  CHECK(back.size() == c.size());
  for (Vertex i = 0; i < 5; ++i)
    for (Vertex j = 0; j < 5; ++j) CHECK(back.dist(i, j) == doctest::Approx(c.dist(i, j)).epsilon(1e-15));
  const auto t = torus_grid(2, 3);
  const auto tb = load_space_json(space_to_json(t));
  CHECK(tb.matrix() == t.matrix());
}

}  // TEST_SUITE
