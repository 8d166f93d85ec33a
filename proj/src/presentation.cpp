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

#include "unicover/presentation.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace unicover {

namespace {

void push_reduced(std::vector<Letter>& out, Letter x) {
  if (!out.empty() && out.back() == -x) {
    out.pop_back();
  } else {
    out.push_back(x);
  }
}

std::vector<Letter> reduce(const std::vector<Letter>& in) {
  std::vector<Letter> out;
  out.reserve(in.size());
  for (Letter x : in) {
    if (x == 0) throw std::invalid_argument("letter 0 is not a generator");
    push_reduced(out, x);
  }
  return out;
}

}  // namespace

Word::Word(std::initializer_list<Letter> letters)
    : letters_(reduce(std::vector<Letter>(letters))) {}

Word::Word(std::vector<Letter> letters) : letters_(reduce(letters)) {}

Word Word::inverse() const {
  Word out;
  out.letters_.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) out.letters_.push_back(-*it);
  return out;
}

Word Word::power(int k) const {
  const Word base = k >= 0 ? *this : inverse();
  Word out;
  for (int i = 0; i < std::abs(k); ++i) out *= base;
  return out;
}

Word Word::conjugated_by(const Word& u) const { return u * *this * u.inverse(); }

Word Word::cyclically_reduced() const {
  std::size_t lo = 0;
  std::size_t hi = letters_.size();
  while (hi - lo >= 2 && letters_[lo] == -letters_[hi - 1]) {
    ++lo;
    --hi;
  }
  Word out;
  out.letters_.assign(letters_.begin() + static_cast<long>(lo),
                      letters_.begin() + static_cast<long>(hi));
  return out;
}

Word Word::relator_key() const {
  const Word base = cyclically_reduced();
  if (base.empty()) return base;
  std::vector<Letter> best;
  for (const Word& w : {base, base.inverse()}) {
    const auto& l = w.letters_;
    for (std::size_t r = 0; r < l.size(); ++r) {
      std::vector<Letter> rot(l.begin() + static_cast<long>(r), l.end());
      rot.insert(rot.end(), l.begin(), l.begin() + static_cast<long>(r));
      if (best.empty() || rot < best) best = std::move(rot);
    }
  }
  Word out;
  out.letters_ = std::move(best);
  return out;
}

int Word::max_generator() const {
  int m = 0;
  for (Letter x : letters_) m = std::max(m, std::abs(x));
  return m;
}

std::vector<long long> Word::exponent_vector(int generator_count) const {
  std::vector<long long> v(static_cast<std::size_t>(generator_count), 0);
  for (Letter x : letters_) {
    const int g = std::abs(x);
    if (g > generator_count) throw std::invalid_argument("generator out of range");
    v[static_cast<std::size_t>(g - 1)] += x > 0 ? 1 : -1;
  }
  return v;
}

std::string Word::to_string() const {
  if (letters_.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    if (i) out += ' ';
    out += letters_[i] > 0 ? 'g' : 'G';
    out += std::to_string(std::abs(letters_[i]));
  }
  return out;
}

Word Word::parse(std::string_view text) {
  std::vector<Letter> letters;
  std::istringstream in{std::string(text)};
  std::string token;
  while (in >> token) {
    if (token == "1") continue;
    if (token.size() < 2 || (token[0] != 'g' && token[0] != 'G')) {
      throw std::invalid_argument("bad letter \"" + token + "\"");
    }
    int g = 0;
    try {
      std::size_t used = 0;
      g = std::stoi(token.substr(1), &used);
      if (used != token.size() - 1) throw std::invalid_argument(token);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad letter \"" + token + "\"");
    }
    if (g <= 0) throw std::invalid_argument("bad letter \"" + token + "\"");
    letters.push_back(token[0] == 'g' ? g : -g);
  }
  return Word(std::move(letters));
}

Word Word::operator*(const Word& other) const {
  Word out = *this;
  out *= other;
  return out;
}

Word& Word::operator*=(const Word& other) {
  for (Letter x : other.letters_) push_reduced(letters_, x);
  return *this;
}

void GroupPresentation::validate() const {
  if (generators < 0) throw std::invalid_argument("negative generator count");
  for (const Word& r : relators) {
    if (r.max_generator() > generators) {
      throw std::invalid_argument("relator " + r.to_string() +
                                  " uses an undeclared generator");
    }
  }
}

std::size_t GroupPresentation::total_relator_length() const {
  std::size_t total = 0;
  for (const Word& r : relators) total += r.length();
  return total;
}

std::string GroupPresentation::to_text() const {
  std::string out = "gens: " + std::to_string(generators) + "\n";
  for (const Word& r : relators) out += "rel: " + r.to_string() + "\n";
  return out;
}

GroupPresentation GroupPresentation::parse_text(std::string_view text) {
  GroupPresentation p;
  std::istringstream in{std::string(text)};
  std::string line;
  bool saw_gens = false;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (line.rfind("gens:", 0) == 0) {
      p.generators = std::stoi(line.substr(5));
      saw_gens = true;
    } else if (line.rfind("rel:", 0) == 0) {
      p.relators.push_back(Word::parse(line.substr(4)));
    } else {
      throw std::invalid_argument("unrecognized presentation line: " + line);
    }
  }
  if (!saw_gens) throw std::invalid_argument("presentation text lacks a \"gens:\" line");
  p.validate();
  return p;
}

Word Simplification::forward(const Word& original) const {
  std::vector<Letter> out;
  for (Letter x : original.letters()) {
    const int g = std::abs(x);
    if (g > static_cast<int>(images.size())) throw std::invalid_argument("generator out of range");
    const Word& image = images[static_cast<std::size_t>(g - 1)];
    const Word piece = x > 0 ? image : image.inverse();
    out.insert(out.end(), piece.letters().begin(), piece.letters().end());
  }
  return Word(std::move(out));
}

Word Simplification::backward(const Word& simplified) const {
  std::vector<Letter> out;
  for (Letter x : simplified.letters()) {
    const int g = std::abs(x);
    if (g > static_cast<int>(kept.size())) throw std::invalid_argument("generator out of range");
    const int original = kept[static_cast<std::size_t>(g - 1)];
    out.push_back(x > 0 ? original : -original);
  }
  return Word(std::move(out));
}

namespace {

Word substitute(const Word& w, int g, const Word& value) {
  bool touched = false;
  for (Letter x : w.letters()) touched = touched || std::abs(x) == g;
  if (!touched) return w;
  const Word value_inv = value.inverse();
  std::vector<Letter> out;
  for (Letter x : w.letters()) {
    if (x == g) {
      out.insert(out.end(), value.letters().begin(), value.letters().end());
    } else if (x == -g) {
      out.insert(out.end(), value_inv.letters().begin(), value_inv.letters().end());
    } else {
      out.push_back(x);
    }
  }
  return Word(std::move(out));
}

std::vector<Word> normalize_relators(const std::vector<Word>& relators) {
  std::vector<Word> out;
  std::set<Word> seen;
  for (const Word& r : relators) {
    Word key = r.relator_key();
    if (key.empty()) continue;
    if (seen.insert(key).second) out.push_back(std::move(key));
  }
  return out;
}

}  // namespace

namespace {

// Relators indexed by generator occurrence so that eliminating a generator
// only rewrites the relators containing it.
class Simplifier {
 public:
  explicit Simplifier(const GroupPresentation& p)
      : generators_(p.generators), occurrences_(static_cast<std::size_t>(p.generators) + 1),
        eliminated_(static_cast<std::size_t>(p.generators) + 1) {
    for (const Word& r : normalize_relators(p.relators)) add(r);
    budget_ = std::max<std::size_t>(total_, 1);
  }

  void run() {
    std::vector<int> deferred;
    while (true) {
      while (!queue_.empty()) {
        const int idx = queue_.begin()->second;
        queue_.erase(queue_.begin());
        if (!try_eliminate(idx)) deferred.push_back(idx);
      }
      // Retry rejected relators once other eliminations have changed the
      // length balance; stop when a full retry pass makes no progress.
      bool progress = false;
      std::vector<int> retry;
      retry.swap(deferred);
      std::sort(retry.begin(), retry.end(), [&](int a, int b) {
        return std::make_pair(length(a), a) < std::make_pair(length(b), b);
      });
      for (int idx : retry) {
        if (!alive(idx)) continue;
        if (try_eliminate(idx)) {
          progress = true;
        } else {
          deferred.push_back(idx);
        }
        while (!queue_.empty()) {
          const int next = queue_.begin()->second;
          queue_.erase(queue_.begin());
          if (!try_eliminate(next)) deferred.push_back(next);
        }
      }
      if (!progress) break;
    }
  }

  Simplification result() {
    Simplification out;
    std::vector<int> renumber(static_cast<std::size_t>(generators_) + 1, 0);
    for (int g = 1; g <= generators_; ++g) {
      if (!eliminated_[static_cast<std::size_t>(g)]) {
        out.kept.push_back(g);
        renumber[static_cast<std::size_t>(g)] = static_cast<int>(out.kept.size());
      }
    }
    auto rename = [&](const Word& w) {
      std::vector<Letter> letters;
      letters.reserve(w.length());
      for (Letter x : w.letters()) {
        const int g = renumber[static_cast<std::size_t>(std::abs(x))];
        letters.push_back(x > 0 ? g : -g);
      }
      return Word(std::move(letters));
    };
    out.group.generators = static_cast<int>(out.kept.size());
    std::vector<std::pair<Word, std::size_t>> survivors;
    for (std::size_t i = 0; i < relators_.size(); ++i) {
      if (alive(static_cast<int>(i))) survivors.emplace_back(relators_[i], order_[i]);
    }
    std::sort(survivors.begin(), survivors.end(),
              [](const auto& a, const auto& b) { return a.second < b.second; });
    for (const auto& [r, unused] : survivors) out.group.relators.push_back(rename(r));
    for (int g = 1; g <= generators_; ++g) out.images.push_back(rename(image(g)));
    return out;
  }

 private:
  bool alive(int idx) const { return !relators_[static_cast<std::size_t>(idx)].empty(); }
  std::size_t length(int idx) const { return relators_[static_cast<std::size_t>(idx)].length(); }

  void index(int idx) {
    const Word& r = relators_[static_cast<std::size_t>(idx)];
    for (Letter x : r.letters()) occurrences_[static_cast<std::size_t>(std::abs(x))].push_back(idx);
    queue_.emplace(r.length(), idx);
  }

  void add(const Word& key) {
    const int idx = static_cast<int>(relators_.size());
    relators_.push_back(key);
    order_.push_back(next_order_++);
    keys_.emplace(key, idx);
    total_ += key.length();
    index(idx);
  }

  void remove(int idx) {
    Word& r = relators_[static_cast<std::size_t>(idx)];
    queue_.erase({r.length(), idx});
    keys_.erase(r);
    total_ -= r.length();
    r = Word();
  }

  void replace(int idx, const Word& updated) {
    remove(idx);
    const Word key = updated.relator_key();
    if (key.empty() || keys_.count(key)) return;
    relators_[static_cast<std::size_t>(idx)] = key;
    order_[static_cast<std::size_t>(idx)] = next_order_++;
    keys_.emplace(key, idx);
    total_ += key.length();
    index(idx);
  }

  std::vector<int> containing(int g, int skip) {
    auto& list = occurrences_[static_cast<std::size_t>(g)];
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
    std::vector<int> out;
    std::vector<int> still;
    for (int idx : list) {
      if (!alive(idx)) continue;
      const auto& letters = relators_[static_cast<std::size_t>(idx)].letters();
      if (std::none_of(letters.begin(), letters.end(), [g](Letter x) { return std::abs(x) == g; })) {
        continue;
      }
      still.push_back(idx);
      if (idx != skip) out.push_back(idx);
    }
    list = std::move(still);
    return out;
  }

  bool try_eliminate(int idx) {
    if (!alive(idx)) return true;
    const Word r = relators_[static_cast<std::size_t>(idx)];
    std::map<int, int> counts;
    for (Letter x : r.letters()) ++counts[std::abs(x)];
    // Candidates: generators occurring once in r, fewest global occurrences
    // first, then smallest index.
    std::vector<std::pair<std::size_t, int>> candidates;
    for (const auto& [g, c] : counts) {
      if (c == 1) candidates.emplace_back(containing(g, -1).size(), g);
    }
    std::sort(candidates.begin(), candidates.end());
    for (const auto& [unused, g] : candidates) {
      std::size_t pos = 0;
      while (std::abs(r[pos]) != g) ++pos;
      const Letter x = r[pos];
      std::vector<Letter> rest(r.letters().begin() + static_cast<long>(pos) + 1, r.letters().end());
      rest.insert(rest.end(), r.letters().begin(), r.letters().begin() + static_cast<long>(pos));
      const Word rest_word(std::move(rest));
      const Word value = x > 0 ? rest_word.inverse() : rest_word;

      const std::vector<int> touched = containing(g, idx);
      std::vector<Word> rewritten;
      rewritten.reserve(touched.size());
      std::size_t after = total_ - r.length();
      for (int j : touched) {
        rewritten.push_back(substitute(relators_[static_cast<std::size_t>(j)], g, value).cyclically_reduced());
        after = after - length(j) + rewritten.back().length();
      }
      if (after > std::max(budget_, total_)) continue;

      remove(idx);
      for (std::size_t k = 0; k < touched.size(); ++k) replace(touched[k], rewritten[k]);
      eliminated_[static_cast<std::size_t>(g)] = true;
      values_.emplace(g, value);
      occurrences_[static_cast<std::size_t>(g)].clear();
      return true;
    }
    return false;
  }

  Word image(int g) {
    if (!eliminated_[static_cast<std::size_t>(g)]) return Word::generator(g);
    auto cached = images_.find(g);
    if (cached != images_.end()) return cached->second;
    std::vector<Letter> out;
    for (Letter x : values_.at(g).letters()) {
      const Word piece = x > 0 ? image(x) : image(-x).inverse();
      out.insert(out.end(), piece.letters().begin(), piece.letters().end());
    }
    Word w(std::move(out));
    images_.emplace(g, w);
    return w;
  }

  int generators_;
  std::vector<Word> relators_;
  std::vector<std::size_t> order_;
  std::size_t next_order_ = 0;
  std::vector<std::vector<int>> occurrences_;
  std::vector<bool> eliminated_;
  std::map<Word, int> keys_;
  std::set<std::pair<std::size_t, int>> queue_;
  std::size_t total_ = 0;
  std::size_t budget_ = 1;
  std::map<int, Word> values_;
  std::map<int, Word> images_;
};

}  // namespace

Simplification simplify_with_map(const GroupPresentation& p) {
  p.validate();
  Simplifier s(p);
  s.run();
  return s.result();
}

GroupPresentation simplify(const GroupPresentation& p) {
  return simplify_with_map(p).group;
}

}  // namespace unicover
