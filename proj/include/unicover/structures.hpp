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

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "unicover/chains.hpp"
#include "unicover/group_engine.hpp"
#include "unicover/metric_core.hpp"
#include "unicover/presentation.hpp"
#include "unicover/rips_pi1.hpp"

namespace unicover {

/// Default state budget for the chain searches.
inline constexpr std::size_t kDefaultSearchBudget = 100000;

/// Chain classes of one space at a fixed fine scale, with the group oracle and
/// the per-ball loop data the closeness relations need. Queries cache their
/// intermediate results, so an instance is not thread-safe.
class ChainGroupoid {
 public:
  ChainGroupoid(MetricSpace space, Scale fine, std::size_t cap = kDefaultCosetCap);

  const MetricSpace& space() const { return space_; }
  Scale fine() const { return fine_; }
  std::size_t cap() const { return cap_; }
  const EdgePathPresentation& presentation() const { return presentation_; }
  const GroupOracle& oracle() const { return *oracle_; }

  ChainClass class_of(const Chain& c) const { return chain_class(presentation_, c); }
  ChainClass class_of(std::span<const Vertex> vertices) const {
    return chain_class(presentation_, vertices);
  }
  Chain representative(const ChainClass& cls) const {
    return unicover::representative(space_, presentation_, cls);
  }
  /// Same endpoint and equal words in the group.
  Verdict same_class(const ChainClass& a, const ChainClass& b) const;

  /// Loops at `root` inside B(center, radius), one per generator of the
  /// simplified ball group, as words of the ambient group (carried to the
  /// base point along the tree path to `root`). Empty when root is outside
  /// the ball.
  const std::vector<Word>& ball_loops(Vertex center, Scale radius, Vertex root) const;
  /// The same loops as vertex sequences at `root`.
  std::vector<std::vector<Vertex>> ball_loop_chains(Vertex center, Scale radius, Vertex root) const;

  /// Every ball loop at radius `coarse`, over all centers and all components
  /// of each ball.
  const std::vector<Word>& lasso_generators(Scale coarse) const;
  /// The group with every coarse ball loop killed.
  const GroupOracle& lasso_quotient(Scale coarse) const;

  /// Shortest fine chain from u to v inside B(center, radius), visiting
  /// neighbours in ascending order; nullopt if the ball does not connect them.
  std::optional<std::vector<Vertex>> ball_path(Vertex center, Scale radius, Vertex u, Vertex v) const;

 private:
  MetricSpace space_;
  Scale fine_;
  std::size_t cap_;
  EdgePathPresentation presentation_;
  std::unique_ptr<GroupOracle> oracle_;
  mutable std::map<std::tuple<Vertex, double, Vertex>, std::vector<Word>> loops_;
  mutable std::map<double, std::vector<Word>> lasso_generators_;
  mutable std::map<double, std::unique_ptr<GroupOracle>> quotients_;
};

/// Image of the loops at the base point that stay inside one ball.
struct BallSubgroup {
  Vertex center = 0;
  Scale ball_scale;
  Scale fine_scale;
  std::vector<Word> gens;
};

/// Empty when the base point is not in the ball.
BallSubgroup ball_subgroup(const ChainGroupoid& g, Scale ball, Vertex center);
BallSubgroup ball_subgroup(const MetricSpace& space, Scale fine, Scale ball, Vertex center);

enum class Relation { BP, Lasso, James };
std::string to_string(Relation r);

/// Evidence attached to a verdict. Only the fields relevant to `kind` are set.
struct StructureWitness {
  enum class Kind {
    /// The two classes coincide.
    Equal,
    /// `connector` runs between the endpoints inside B(center, coarse) and
    /// a^-1 b connector^-1 (as `residual`) lies in the named subgroup.
    BoundedConnector,
    /// Equal-length representatives `first`, `second` that stay within the
    /// coarse scale of each other at every index.
    PointwisePair,
  };
  Kind kind = Kind::Equal;
  Vertex center = -1;
  std::vector<Vertex> connector;
  Word residual;
  std::vector<Vertex> first;
  std::vector<Vertex> second;
  /// For James verdicts derived from the lasso relation: the scale at which
  /// pointwise closeness is then guaranteed.
  std::optional<Scale> guaranteed_at;
};

struct StructureVerdict {
  Relation relation = Relation::BP;
  Scale fine;
  Scale coarse;
  Verdict verdict;
  std::optional<StructureWitness> witness;
};

/// b is a followed by a chain inside a single coarse ball. Every ball
/// containing both endpoints is tried in ascending order of center.
StructureVerdict bp_close(const ChainGroupoid& g, const ChainClass& a, const ChainClass& b,
                          Scale coarse);

/// As bp_close, after killing every loop that fits in a coarse ball.
StructureVerdict lasso_close(const ChainGroupoid& g, const ChainClass& a, const ChainClass& b,
                             Scale coarse);

/// Pointwise closeness of representatives, decided where possible through the
/// lasso relation: Yes on a direct pair or when lasso_close holds at
/// `coarse`; No when coarse <= fine and lasso_close fails at fine + coarse;
/// otherwise Unknown.
StructureVerdict james_close(const ChainGroupoid& g, const ChainClass& a, const ChainClass& b,
                             Scale coarse, std::size_t budget = kDefaultSearchBudget);

/// One step of a punctured homotopy on a chain.
struct PuncturedStep {
  enum class Kind { Insert, Delete, Puncture };
  Kind kind = Kind::Delete;
  /// Insert/Delete: vertex position. Puncture: first index of the segment.
  std::size_t position = 0;
  /// Puncture: last index of the replaced segment.
  std::size_t end = 0;
  /// Insert: the new vertex. Puncture: the ball center.
  Vertex point = -1;
  /// Puncture: the chain put in place of the segment.
  std::vector<Vertex> replacement;
};

/// A conjugate tail * loop * tail^-1 removed by one puncture.
struct LassoPiece {
  std::vector<Vertex> tail;
  std::vector<Vertex> loop;
  Vertex center = -1;
};

/// Steps turning reverse(a) * b into a chain inside one ball. Replaying the
/// steps in order (each followed by dropping repeated vertices) reproduces
/// the search.
struct PuncturedHomotopy {
  std::vector<Vertex> start;
  std::vector<PuncturedStep> steps;
  std::vector<Vertex> bounded;
  Vertex center = -1;

  std::size_t puncture_count() const;
  /// Replays the steps; pieces are in the order the punctures were made.
  std::vector<LassoPiece> pieces() const;
};

struct PuncturedSearchResult {
  std::optional<PuncturedHomotopy> witness;
  std::size_t states = 0;
  /// True when the search stopped on the budget rather than running out of
  /// chains to try.
  bool budget_exhausted = false;
};

/// Best-first search (shortest chain, then fewest punctures) for a punctured
/// homotopy. Chains are kept normal: every vertex whose neighbours are close
/// is deleted, leftmost first. The moves are punctures, which replace a
/// maximal segment inside some ball B(p, s) by a strictly shorter chain
/// inside that ball, and slides, which swap an interior vertex for a point
/// close to it and to both of its neighbours. Both chains must start at the
/// same point and share a scale.
PuncturedSearchResult punctured_homotopy_search(const MetricSpace& space, const Chain& a,
                                                const Chain& b, Scale s,
                                                std::size_t budget = kDefaultSearchBudget);

/// Replays a punctured homotopy, checking that every insert and delete is a
/// triangle move at `fine`, every puncture swaps a segment for a fine chain
/// with the same ends inside B(point, s), and the result is `bounded`, inside
/// B(center, s). Returns the first failure as a No.
Verdict check_punctured_homotopy(const MetricSpace& space, Scale fine, Scale s,
                                 const PuncturedHomotopy& h);

/// True when first/second are equal-length fine chains from the base point,
/// pointwise within `coarse`, and represent a and b.
Verdict check_pointwise_pair(const ChainGroupoid& g, const ChainClass& a, const ChainClass& b,
                             std::span<const Vertex> first, std::span<const Vertex> second,
                             Scale coarse);

/// Equal-length representatives of a and b, pointwise within `coarse`. Tries
/// aligning the canonical representatives, then shadowing a punctured
/// homotopy found at half the scale, then a bounded search over pairs of
/// walks. Every candidate is checked before it is returned.
std::optional<std::pair<std::vector<Vertex>, std::vector<Vertex>>> uc_witness_search(
    const ChainGroupoid& g, const ChainClass& a, const ChainClass& b, Scale coarse,
    std::size_t budget = kDefaultSearchBudget);

/// Builds the pointwise pair from a punctured homotopy between chains a and
/// b: the second walk runs each lasso loop and the final bounded chain while
/// the first waits at their start, so the pair stays within twice the
/// puncture scale.
std::pair<std::vector<Vertex>, std::vector<Vertex>> shadow_pair(const Chain& a,
                                                                const PuncturedHomotopy& h);

enum class SltMode { PerPoint, Uniform };
std::string to_string(SltMode m);

struct SltRow {
  Vertex center = 0;
  /// Index of the loop among the ball generators at `center`.
  int loop = 0;
  /// The loop carried to the base point, in the simplified group.
  Word word;
  Verdict verdict;
  /// For a No in Uniform mode: u with u word u^-1 outside the target subgroup.
  std::optional<Word> conjugator;
  /// For failures: the smallest target radius that makes the row pass.
  std::optional<Scale> passing_target;
};

struct SltReport {
  Scale fine;
  Scale ball;
  Scale target;
  SltMode mode = SltMode::Uniform;
  std::vector<SltRow> rows;

  std::size_t count(Answer a) const;
};

/// For each center y and each loop generator of the ball B(y, ball), carried
/// to the base point along the tree path: Uniform mode asks whether the loop
/// lies in the normal core of the target ball subgroup at the base point,
/// PerPoint mode asks plain membership. Throws std::invalid_argument unless
/// fine <= ball and fine <= target.
SltReport slt_check(const ChainGroupoid& g, Scale ball, Scale target, SltMode mode);
SltReport slt_check(const MetricSpace& space, Scale fine, Scale ball, Scale target, SltMode mode,
                    std::size_t cap = kDefaultCosetCap);

struct LocalTriviality {
  /// Smallest qualifying radius, if any.
  std::optional<Scale> radius;
  /// Radii skipped because membership was Unknown.
  std::vector<Scale> gaps;
};

/// Smallest radius r >= min_scale among the distances from the base point
/// (below the diameter) whose base point ball has only trivial loops.
LocalTriviality semilocal_simply_connected(const ChainGroupoid& g, Scale min_scale = Scale(0.0));
LocalTriviality semilocal_simply_connected(const MetricSpace& space, Scale fine,
                                           Scale min_scale = Scale(0.0));

struct SmallLoopReport {
  /// Generators of the intersection that are not certified trivial.
  std::vector<Word> gens;
  /// Yes when the intersection is certified trivial.
  Verdict trivial;
};

/// Intersection of the base point ball subgroups at the given radii (which
/// must be descending). Throws std::invalid_argument on an empty or
/// unsorted list.
SmallLoopReport small_loop_subgroup(const ChainGroupoid& g, std::span<const Scale> scales);

}  // namespace unicover
