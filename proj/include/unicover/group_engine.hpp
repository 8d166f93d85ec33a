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
#include <span>
#include <string>
#include <vector>

#include "unicover/presentation.hpp"

namespace unicover {

inline constexpr std::size_t kDefaultCosetCap = 200000;

enum class Answer { Yes, No, Unknown };

/// Three-valued decision. Yes and No are backed by a proof (a completed
/// table, a folded graph, a lattice computation or an explicit trace) named
/// in `reason`; Unknown names the exhausted resource.
struct Verdict {
  Answer value = Answer::Unknown;
  std::string reason;

  static Verdict yes(std::string why) { return {Answer::Yes, std::move(why)}; }
  static Verdict no(std::string why) { return {Answer::No, std::move(why)}; }
  static Verdict unknown(std::string why) { return {Answer::Unknown, std::move(why)}; }

  bool is_yes() const { return value == Answer::Yes; }
  bool is_no() const { return value == Answer::No; }
  bool is_unknown() const { return value == Answer::Unknown; }
};

std::string to_string(Answer a);

enum class EnumerationStatus { Complete, Exhausted };

/// Coset action table. Column 2(g-1) is generator g, column 2(g-1)+1 its
/// inverse; -1 marks an undefined entry. Cosets are numbered in order of
/// first definition (standardized when complete); coset 0 is the subgroup.
class CosetTable {
 public:
  CosetTable(int generators, std::vector<int> entries, EnumerationStatus status,
             std::size_t cap);

  int generator_count() const { return generators_; }
  std::size_t row_count() const { return rows_; }
  EnumerationStatus status() const { return status_; }
  bool complete() const { return status_ == EnumerationStatus::Complete; }
  std::size_t cap() const { return cap_; }
  /// Number of cosets; meaningful only when complete.
  std::size_t index() const { return rows_; }

  static int column(Letter x) { return x > 0 ? 2 * (x - 1) : 2 * (-x - 1) + 1; }
  std::optional<int> act(int coset, Letter x) const;
  /// Image of `coset` under w, or nullopt if the trace leaves the table.
  std::optional<int> trace(int coset, const Word& w) const;

  /// Rows as tab-separated values, one column per generator and inverse.
  std::string to_tsv() const;

 private:
  int generators_;
  std::size_t rows_;
  std::vector<int> entries_;
  EnumerationStatus status_;
  std::size_t cap_;
};

/// HLT coset enumeration with lookahead compaction. Throws
/// std::invalid_argument when cap < 1.
CosetTable todd_coxeter(const GroupPresentation& p,
                        std::span<const Word> subgroup_generators,
                        std::size_t cap = kDefaultCosetCap);

/// Complete table: Yes iff w fixes coset 0. Exhausted table: Yes if w traces
/// from coset 0 back to 0 through defined entries, otherwise Unknown.
Verdict is_in_subgroup(const Word& w, const CosetTable& table);

/// Schreier generators of the kernel of the coset action. Throws
/// std::domain_error for an exhausted table. For index 1 the kernel is the
/// whole group and all generators are returned.
std::vector<Word> normal_core(const CosetTable& table,
                              std::size_t max_image_order = 100000);

/// True iff w acts trivially on every coset of a complete table.
bool acts_trivially(const Word& w, const CosetTable& table);

/// No if the exponent vector of w lies outside the integer lattice spanned by
/// the relators and normal generators; never Yes.
Verdict abelianized_exponent_check(const GroupPresentation& p,
                                   std::span<const Word> normal_generators,
                                   const Word& w);

/// Is w trivial in <gens | relators, normal_generators>? Decided by free
/// reduction, abelianization, Tietze simplification to a free or abelian
/// group, and coset enumeration of the trivial subgroup under `cap`.
Verdict in_normal_closure(const GroupPresentation& p,
                          std::span<const Word> normal_generators,
                          const Word& w, std::size_t cap = kDefaultCosetCap);

/// Invariant factors of the abelianization: free rank plus torsion
/// coefficients (each > 1, each dividing the next).
struct AbelianInvariants {
  int free_rank = 0;
  std::vector<long long> torsion;

  /// "0", "Z", "Z^2", "Z/2 x Z", ...
  std::string to_string() const;
};

/// nullopt if an intermediate value overflows 64 bits.
std::optional<AbelianInvariants> abelian_invariants(const GroupPresentation& p);

/// Subgroup of a free group as a folded labelled graph.
class StallingsGraph {
 public:
  StallingsGraph(int generators, std::span<const Word> subgroup_generators);

  int generator_count() const { return generators_; }
  std::size_t vertex_count() const { return out_.size(); }
  /// End of the path labelled w from `from`, or nullopt if it leaves the graph.
  std::optional<int> read(int from, const Word& w) const;
  bool contains(const Word& w) const;
  /// Every vertex has all 2n labels: the graph is a finite cover.
  bool is_finite_index() const;
  /// Free basis read off a spanning tree rooted at the base vertex.
  std::vector<Word> basis() const;
  /// Fold of the pullback; represents the intersection of the subgroups.
  StallingsGraph intersect(const StallingsGraph& other) const;

 private:
  StallingsGraph() = default;
  int generators_ = 0;
  std::vector<std::vector<int>> out_;
};

/// Decision procedures bound to one presentation. Simplification is computed
/// once; queries are rewritten into the simplified group and answered by the
/// strongest applicable method: free-group folding, abelian lattice algebra,
/// or coset enumeration under the cap. Not thread-safe (caches coset tables).
class GroupOracle {
 public:
  explicit GroupOracle(GroupPresentation p, std::size_t cap = kDefaultCosetCap);

  const GroupPresentation& presentation() const { return original_; }
  const Simplification& simplification() const { return simplified_; }
  std::size_t cap() const { return cap_; }
  bool is_free() const { return simplified_.is_free(); }
  /// Detected abelian: at most one generator, or every pair of generators
  /// commutes by a relator.
  bool is_abelian() const { return abelian_; }

  Word to_simplified(const Word& w) const { return simplified_.forward(w); }

  Verdict is_trivial(const Word& w) const;
  Verdict are_equal(const Word& a, const Word& b) const {
    return is_trivial(a.inverse() * b);
  }
  Verdict in_subgroup(std::span<const Word> subgroup, const Word& w) const;
  /// Is every conjugate of w in the subgroup (w in its normal core)? On No,
  /// `conjugator` (if given) receives some u with u w u^-1 outside it.
  Verdict in_core(std::span<const Word> subgroup, const Word& w,
                  Word* conjugator = nullptr) const;
  /// Oracle for the quotient by the normal closure of `normal_generators`.
  GroupOracle quotient(std::span<const Word> normal_generators) const;

  /// Complete coset table of the subgroup in the simplified group, or
  /// nullopt when enumeration exhausts the cap.
  std::shared_ptr<const CosetTable> finite_index_table(std::span<const Word> subgroup) const;

 private:
  std::vector<Word> simplified_words(std::span<const Word> words) const;
  std::shared_ptr<const CosetTable> table_for(const std::vector<Word>& simplified_subgroup) const;

  GroupPresentation original_;
  Simplification simplified_;
  std::size_t cap_;
  bool abelian_ = false;
  mutable std::map<std::vector<Word>, std::shared_ptr<const CosetTable>> tables_;
};

/// Integer lattice membership: is `v` an integer combination of `rows`?
/// nullopt on 64-bit overflow.
std::optional<bool> lattice_contains(std::vector<std::vector<long long>> rows,
                                     std::vector<long long> v);

}  // namespace unicover
