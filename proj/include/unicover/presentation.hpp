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

#include <compare>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

namespace unicover {

/// A signed generator index: +g for generator g (1-based), -g for its inverse.
using Letter = int;

/// Element of a free group, always stored freely reduced.
class Word {
 public:
  Word() = default;
  Word(std::initializer_list<Letter> letters);
  explicit Word(std::vector<Letter> letters);

  static Word generator(int g) { return Word({g}); }

  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t length() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }

  Word inverse() const;
  Word power(int k) const;
  /// u * this * u^-1
  Word conjugated_by(const Word& u) const;
  /// Removes letters that cancel cyclically (w = x v x^-1 becomes v).
  Word cyclically_reduced() const;
  /// Lexicographically least rotation of this word or of its inverse, taken
  /// after cyclic reduction. Equal keys mean equal relators up to conjugation
  /// and inversion.
  Word relator_key() const;

  /// Largest generator index occurring (0 for the empty word).
  int max_generator() const;
  std::vector<long long> exponent_vector(int generator_count) const;

  /// "g3 G1 g2" with capitals for inverses; the empty word prints as "1".
  std::string to_string() const;
  /// Accepts the to_string format; "1" and "" are the empty word.
  static Word parse(std::string_view text);

  Word operator*(const Word& other) const;
  Word& operator*=(const Word& other);
  auto operator<=>(const Word&) const = default;
  bool operator==(const Word&) const = default;

 private:
  std::vector<Letter> letters_;
};

/// Finitely presented group <g1..gn | relators>.
struct GroupPresentation {
  int generators = 0;
  std::vector<Word> relators;

  /// Throws std::invalid_argument if a relator uses an undeclared generator.
  void validate() const;
  std::size_t total_relator_length() const;

  /// "gens: n" then one "rel: <word>" line per relator.
  std::string to_text() const;
  static GroupPresentation parse_text(std::string_view text);
  bool operator==(const GroupPresentation&) const = default;
};

/// Result of Tietze simplification together with the isomorphism it
/// realizes. Simplification only eliminates generators, so every surviving
/// generator is an original one.
struct Simplification {
  GroupPresentation group;
  /// images[g - 1] expresses original generator g over the new generators.
  std::vector<Word> images;
  /// kept[i] is the original index of new generator i + 1.
  std::vector<int> kept;

  Word forward(const Word& original) const;
  Word backward(const Word& simplified) const;
  bool is_free() const { return group.relators.empty(); }
  bool operator==(const Simplification&) const = default;
};

/// Free and cyclic reduction, removal of trivial and duplicate relators, and
/// elimination of generators that occur exactly once in some relator, taking
/// the shortest such relator first. Never lets the total relator length grow
/// past its starting value. Deterministic given input order.
Simplification simplify_with_map(const GroupPresentation& p);
GroupPresentation simplify(const GroupPresentation& p);

}  // namespace unicover
