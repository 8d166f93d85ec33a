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

#include "unicover/group_engine.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace unicover {

std::string to_string(Answer a) {
  switch (a) {
    case Answer::Yes: return "yes";
    case Answer::No: return "no";
    case Answer::Unknown: return "unknown";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// Integer lattices.

namespace {

using Matrix = std::vector<std::vector<long long>>;

struct Overflow {};

long long checked(__int128 v) {
  if (v > std::numeric_limits<long long>::max() || v < std::numeric_limits<long long>::min()) {
    throw Overflow{};
  }
  return static_cast<long long>(v);
}

// row_a -= q * row_b
void row_sub(std::vector<long long>& a, const std::vector<long long>& b, long long q) {
  if (q == 0) return;
  for (std::size_t k = 0; k < a.size(); ++k) {
    a[k] = checked(static_cast<__int128>(a[k]) - static_cast<__int128>(q) * b[k]);
  }
}

// Row echelon form by Euclidean row operations; returns (row, column) pivots.
std::vector<std::pair<std::size_t, std::size_t>> echelon(Matrix& m, std::size_t cols) {
  std::vector<std::pair<std::size_t, std::size_t>> pivots;
  std::size_t top = 0;
  for (std::size_t c = 0; c < cols && top < m.size(); ++c) {
    while (true) {
      std::size_t best = m.size();
      for (std::size_t i = top; i < m.size(); ++i) {
        if (m[i][c] != 0 && (best == m.size() || std::llabs(m[i][c]) < std::llabs(m[best][c]))) {
          best = i;
        }
      }
      if (best == m.size()) break;
      std::swap(m[top], m[best]);
      bool clean = true;
      for (std::size_t i = top + 1; i < m.size(); ++i) {
        if (m[i][c] == 0) continue;
        row_sub(m[i], m[top], m[i][c] / m[top][c]);
        if (m[i][c] != 0) clean = false;
      }
      if (clean) {
        pivots.emplace_back(top, c);
        ++top;
        break;
      }
    }
  }
  return pivots;
}

std::optional<bool> lattice_contains_impl(Matrix rows, std::vector<long long> v) {
  const std::size_t n = v.size();
  for (const auto& r : rows) {
    if (r.size() != n) throw std::invalid_argument("lattice row length mismatch");
  }
  try {
    const auto pivots = echelon(rows, n);
    for (const auto& [r, c] : pivots) {
      if (v[c] % rows[r][c] != 0) return false;
      row_sub(v, rows[r], v[c] / rows[r][c]);
    }
  } catch (const Overflow&) {
    return std::nullopt;
  }
  return std::all_of(v.begin(), v.end(), [](long long x) { return x == 0; });
}

Matrix exponent_rows(int generators, std::span<const Word> a, std::span<const Word> b = {}) {
  Matrix m;
  for (const Word& w : a) m.push_back(w.exponent_vector(generators));
  for (const Word& w : b) m.push_back(w.exponent_vector(generators));
  return m;
}

}  // namespace

std::optional<bool> lattice_contains(std::vector<std::vector<long long>> rows,
                                     std::vector<long long> v) {
  return lattice_contains_impl(std::move(rows), std::move(v));
}

std::string AbelianInvariants::to_string() const {
  std::vector<std::string> parts;
  for (long long t : torsion) parts.push_back("Z/" + std::to_string(t));
  if (free_rank == 1) parts.push_back("Z");
  if (free_rank > 1) parts.push_back("Z^" + std::to_string(free_rank));
  if (parts.empty()) return "0";
  std::string out = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) out += " x " + parts[i];
  return out;
}

std::optional<AbelianInvariants> abelian_invariants(const GroupPresentation& p) {
  p.validate();
  Matrix a = exponent_rows(p.generators, p.relators);
  const std::size_t rows = a.size();
  const std::size_t cols = static_cast<std::size_t>(p.generators);
  std::vector<long long> diagonal;
  try {
    for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
      auto move_min_to_pivot = [&](bool whole_block) {
        std::size_t bi = rows, bj = cols;
        for (std::size_t i = t; i < rows; ++i) {
          for (std::size_t j = t; j < cols; ++j) {
            if (!whole_block && i != t && j != t) continue;
            if (a[i][j] != 0 && (bi == rows || std::llabs(a[i][j]) < std::llabs(a[bi][bj]))) {
              bi = i;
              bj = j;
            }
          }
        }
        if (bi == rows) return false;
        std::swap(a[t], a[bi]);
        for (auto& row : a) std::swap(row[t], row[bj]);
        return true;
      };
      if (!move_min_to_pivot(true)) break;
      while (true) {
        bool clean = true;
        for (std::size_t i = t + 1; i < rows; ++i) {
          if (a[i][t] == 0) continue;
          row_sub(a[i], a[t], a[i][t] / a[t][t]);
          if (a[i][t] != 0) clean = false;
        }
        for (std::size_t j = t + 1; j < cols; ++j) {
          if (a[t][j] == 0) continue;
          const long long q = a[t][j] / a[t][t];
          for (std::size_t i = 0; i < rows; ++i) {
            a[i][j] = checked(static_cast<__int128>(a[i][j]) - static_cast<__int128>(q) * a[i][t]);
          }
          if (a[t][j] != 0) clean = false;
        }
        if (!clean) {
          move_min_to_pivot(false);
          continue;
        }
        bool divides = true;
        for (std::size_t i = t + 1; i < rows && divides; ++i) {
          for (std::size_t j = t + 1; j < cols; ++j) {
            if (a[i][j] % a[t][t] != 0) {
              for (std::size_t k = 0; k < cols; ++k) {
                a[t][k] = checked(static_cast<__int128>(a[t][k]) + a[i][k]);
              }
              divides = false;
              break;
            }
          }
        }
        if (divides) break;
      }
      diagonal.push_back(std::llabs(a[t][t]));
    }
  } catch (const Overflow&) {
    return std::nullopt;
  }
  AbelianInvariants out;
  out.free_rank = static_cast<int>(cols - diagonal.size());
  for (long long d : diagonal) {
    if (d > 1) out.torsion.push_back(d);
  }
  std::sort(out.torsion.begin(), out.torsion.end());
  return out;
}

// ---------------------------------------------------------------------------
// Coset tables.

CosetTable::CosetTable(int generators, std::vector<int> entries, EnumerationStatus status,
                       std::size_t cap)
    : generators_(generators),
      rows_(generators == 0 ? 1 : entries.size() / (2 * static_cast<std::size_t>(generators))),
      entries_(std::move(entries)),
      status_(status),
      cap_(cap) {}

std::optional<int> CosetTable::act(int coset, Letter x) const {
  if (coset < 0 || static_cast<std::size_t>(coset) >= rows_) return std::nullopt;
  if (x == 0 || std::abs(x) > generators_) throw std::invalid_argument("letter out of range");
  const int v = entries_[static_cast<std::size_t>(coset) * 2 * generators_ + column(x)];
  if (v < 0) return std::nullopt;
  return v;
}

std::optional<int> CosetTable::trace(int coset, const Word& w) const {
  std::optional<int> c = coset;
  for (Letter x : w.letters()) {
    c = act(*c, x);
    if (!c) return std::nullopt;
  }
  return c;
}

std::string CosetTable::to_tsv() const {
  std::ostringstream out;
  out << "coset";
  for (int g = 1; g <= generators_; ++g) out << "\tg" << g << "\tG" << g;
  out << "\n";
  for (std::size_t r = 0; r < rows_; ++r) {
    out << r;
    for (int c = 0; c < 2 * generators_; ++c) {
      const int v = entries_[r * 2 * generators_ + static_cast<std::size_t>(c)];
      out << '\t';
      if (v < 0) {
        out << '-';
      } else {
        out << v;
      }
    }
    out << "\n";
  }
  return out.str();
}

namespace {

std::vector<int> to_columns(const Word& w) {
  std::vector<int> out;
  out.reserve(w.length());
  for (Letter x : w.letters()) out.push_back(CosetTable::column(x));
  return out;
}

// HLT enumeration with coincidence processing and lookahead compaction when
// the row budget runs out.
class Enumerator {
 public:
  Enumerator(int generators, std::vector<std::vector<int>> relators,
             std::vector<std::vector<int>> subgroup, std::size_t cap)
      : cols_(2 * generators),
        relators_(std::move(relators)),
        subgroup_(std::move(subgroup)),
        cap_(cap) {
    add_row();
  }

  CosetTable run() {
    int alpha = 0;
    auto with_room = [&](auto&& step) {
      while (!step()) {
        if (!make_room(alpha)) return false;
      }
      return true;
    };
    for (const auto& w : subgroup_) {
      if (!with_room([&] { return scan(0, w, true); })) return finish(false);
    }
    while (static_cast<std::size_t>(alpha) < rows()) {
      if (live(alpha)) {
        bool ok = with_room([&] {
          for (const auto& r : relators_) {
            if (!live(alpha)) return true;
            if (!scan(alpha, r, true)) return false;
          }
          if (!live(alpha)) return true;
          for (int c = 0; c < cols_; ++c) {
            if (at(alpha, c) < 0 && !define(alpha, c)) return false;
          }
          return true;
        });
        if (!ok) return finish(false);
      }
      ++alpha;
    }
    return finish(true);
  }

 private:
  std::size_t rows() const { return parent_.size(); }
  bool live(int c) const { return parent_[static_cast<std::size_t>(c)] == c; }
  int& at(int c, int col) {
    return table_[static_cast<std::size_t>(c) * static_cast<std::size_t>(cols_) +
                  static_cast<std::size_t>(col)];
  }

  void add_row() {
    parent_.push_back(static_cast<int>(parent_.size()));
    table_.resize(table_.size() + static_cast<std::size_t>(cols_), -1);
  }

  bool define(int c, int col) {
    if (rows() >= cap_) return false;
    const int fresh = static_cast<int>(rows());
    add_row();
    at(c, col) = fresh;
    at(fresh, col ^ 1) = c;
    return true;
  }

  int rep(int c) {
    int r = c;
    while (parent_[static_cast<std::size_t>(r)] != r) r = parent_[static_cast<std::size_t>(r)];
    while (parent_[static_cast<std::size_t>(c)] != r) {
      const int next = parent_[static_cast<std::size_t>(c)];
      parent_[static_cast<std::size_t>(c)] = r;
      c = next;
    }
    return r;
  }

  void merge(int a, int b, std::vector<int>& queue) {
    a = rep(a);
    b = rep(b);
    if (a == b) return;
    const int keep = std::min(a, b);
    const int gone = std::max(a, b);
    parent_[static_cast<std::size_t>(gone)] = keep;
    queue.push_back(gone);
  }

  void coincidence(int a, int b) {
    std::vector<int> queue;
    merge(a, b, queue);
    for (std::size_t k = 0; k < queue.size(); ++k) {
      const int g = queue[k];
      for (int col = 0; col < cols_; ++col) {
        const int d = at(g, col);
        if (d < 0) continue;
        at(d, col ^ 1) = -1;
        const int mu = rep(g);
        const int nu = rep(d);
        if (at(mu, col) >= 0) {
          merge(nu, at(mu, col), queue);
        } else if (at(nu, col ^ 1) >= 0) {
          merge(mu, at(nu, col ^ 1), queue);
        } else {
          at(mu, col) = nu;
          at(nu, col ^ 1) = mu;
        }
      }
    }
  }

  // Scan coset `a` under w, defining new cosets if `fill`. False when a
  // definition was needed but the row budget is spent.
  bool scan(int a, const std::vector<int>& w, bool fill) {
    if (w.empty()) return true;
    int f = a;
    int b = a;
    long i = 0;
    long j = static_cast<long>(w.size()) - 1;
    while (true) {
      while (i <= j && at(f, w[static_cast<std::size_t>(i)]) >= 0) {
        f = at(f, w[static_cast<std::size_t>(i)]);
        ++i;
      }
      if (i > j) {
        if (f != b) coincidence(f, b);
        return true;
      }
      while (j >= i && at(b, w[static_cast<std::size_t>(j)] ^ 1) >= 0) {
        b = at(b, w[static_cast<std::size_t>(j)] ^ 1);
        --j;
      }
      if (j < i) {
        coincidence(f, b);
        return true;
      }
      if (i == j) {
        at(f, w[static_cast<std::size_t>(i)]) = b;
        at(b, w[static_cast<std::size_t>(i)] ^ 1) = f;
        return true;
      }
      if (!fill) return true;
      if (!define(f, w[static_cast<std::size_t>(i)])) return false;
    }
  }

  // Lookahead over all live cosets, then order-preserving compaction.
  // Returns false if too little space was recovered to continue.
  bool make_room(int& alpha) {
    for (const auto& w : subgroup_) scan(0, w, false);
    for (std::size_t c = 0; c < rows(); ++c) {
      for (const auto& r : relators_) {
        if (!live(static_cast<int>(c))) break;
        scan(static_cast<int>(c), r, false);
      }
    }
    const std::size_t before = rows();
    alpha = compact(alpha);
    const std::size_t freed = before - rows();
    return freed >= std::max<std::size_t>(1, cap_ / 100);
  }

  // Renumbers live cosets in order; returns the new index of `alpha` (the
  // next live coset if alpha itself died).
  int compact(int alpha) {
    std::vector<int> renumber(rows(), -1);
    int next = 0;
    int new_alpha = -1;
    for (std::size_t c = 0; c < rows(); ++c) {
      if (new_alpha < 0 && static_cast<int>(c) >= alpha && live(static_cast<int>(c))) new_alpha = next;
      if (live(static_cast<int>(c))) renumber[c] = next++;
    }
    if (new_alpha < 0) new_alpha = next;
    std::vector<int> table(static_cast<std::size_t>(next) * static_cast<std::size_t>(cols_), -1);
    for (std::size_t c = 0; c < rows(); ++c) {
      if (renumber[c] < 0) continue;
      for (int col = 0; col < cols_; ++col) {
        const int d = at(static_cast<int>(c), col);
        table[static_cast<std::size_t>(renumber[c]) * static_cast<std::size_t>(cols_) +
              static_cast<std::size_t>(col)] = d < 0 ? -1 : renumber[static_cast<std::size_t>(rep(d))];
      }
    }
    table_ = std::move(table);
    parent_.resize(static_cast<std::size_t>(next));
    for (int c = 0; c < next; ++c) parent_[static_cast<std::size_t>(c)] = c;
    return new_alpha;
  }

  // Relabel cosets in the order they are first reached scanning rows and
  // columns from coset 0.
  void standardize() {
    const std::size_t n = rows();
    std::vector<int> renumber(n, -1);
    std::vector<int> order{0};
    renumber[0] = 0;
    for (std::size_t k = 0; k < order.size(); ++k) {
      for (int col = 0; col < cols_; ++col) {
        const int d = at(order[k], col);
        if (d >= 0 && renumber[static_cast<std::size_t>(d)] < 0) {
          renumber[static_cast<std::size_t>(d)] = static_cast<int>(order.size());
          order.push_back(d);
        }
      }
    }
    std::vector<int> table(n * static_cast<std::size_t>(cols_), -1);
    for (std::size_t c = 0; c < n; ++c) {
      for (int col = 0; col < cols_; ++col) {
        table[static_cast<std::size_t>(renumber[c]) * static_cast<std::size_t>(cols_) +
              static_cast<std::size_t>(col)] =
            renumber[static_cast<std::size_t>(at(static_cast<int>(c), col))];
      }
    }
    table_ = std::move(table);
  }

  CosetTable finish(bool complete) {
    compact(0);
    if (complete) standardize();
    return CosetTable(cols_ / 2, std::move(table_),
                      complete ? EnumerationStatus::Complete : EnumerationStatus::Exhausted, cap_);
  }

  int cols_;
  std::vector<std::vector<int>> relators_;
  std::vector<std::vector<int>> subgroup_;
  std::size_t cap_;
  std::vector<int> table_;
  std::vector<int> parent_;
};

}  // namespace

CosetTable todd_coxeter(const GroupPresentation& p, std::span<const Word> subgroup_generators,
                        std::size_t cap) {
  if (cap < 1) throw std::invalid_argument("coset cap must be positive");
  p.validate();
  if (p.generators == 0) {
    return CosetTable(0, {}, EnumerationStatus::Complete, cap);
  }
  std::vector<std::vector<int>> relators;
  for (const Word& r : p.relators) {
    const Word c = r.cyclically_reduced();
    if (!c.empty()) relators.push_back(to_columns(c));
  }
  std::vector<std::vector<int>> subgroup;
  for (const Word& h : subgroup_generators) {
    if (h.max_generator() > p.generators) {
      throw std::invalid_argument("subgroup generator " + h.to_string() +
                                  " uses an undeclared generator");
    }
    if (!h.empty()) subgroup.push_back(to_columns(h));
  }
  return Enumerator(p.generators, std::move(relators), std::move(subgroup), cap).run();
}

Verdict is_in_subgroup(const Word& w, const CosetTable& table) {
  if (w.empty()) return Verdict::yes("empty word");
  const auto end = table.trace(0, w);
  if (table.complete()) {
    if (end && *end == 0) return Verdict::yes("fixes the subgroup coset");
    return Verdict::no("moves the subgroup coset (index " + std::to_string(table.index()) + ")");
  }
  if (end && *end == 0) return Verdict::yes("traces back to the subgroup coset");
  return Verdict::unknown("coset enumeration exhausted cap " + std::to_string(table.cap()));
}

bool acts_trivially(const Word& w, const CosetTable& table) {
  if (!table.complete()) throw std::domain_error("action requires a complete coset table");
  for (std::size_t c = 0; c < table.row_count(); ++c) {
    const auto end = table.trace(static_cast<int>(c), w);
    if (!end || *end != static_cast<int>(c)) return false;
  }
  return true;
}

std::vector<Word> normal_core(const CosetTable& table, std::size_t max_image_order) {
  if (!table.complete()) throw std::domain_error("core requires finite index");
  const int n = table.generator_count();
  const std::size_t rows = table.row_count();
  std::vector<std::vector<int>> perms(static_cast<std::size_t>(n), std::vector<int>(rows));
  for (int g = 1; g <= n; ++g) {
    for (std::size_t c = 0; c < rows; ++c) {
      perms[static_cast<std::size_t>(g - 1)][c] = *table.act(static_cast<int>(c), g);
    }
  }
  std::vector<int> identity(rows);
  for (std::size_t c = 0; c < rows; ++c) identity[c] = static_cast<int>(c);
  std::map<std::vector<int>, std::size_t> index{{identity, 0}};
  std::vector<std::vector<int>> elements{identity};
  std::vector<Word> words{Word()};
  std::vector<Word> out;
  std::set<Word> seen;
  for (std::size_t e = 0; e < elements.size(); ++e) {
    for (int g = 1; g <= n; ++g) {
      std::vector<int> next(rows);
      for (std::size_t c = 0; c < rows; ++c) {
        next[c] = perms[static_cast<std::size_t>(g - 1)][static_cast<std::size_t>(elements[e][c])];
      }
      auto it = index.find(next);
      if (it == index.end()) {
        if (elements.size() >= max_image_order) {
          throw std::length_error("permutation image exceeds " + std::to_string(max_image_order) +
                                  " elements");
        }
        index.emplace(next, elements.size());
        elements.push_back(std::move(next));
        words.push_back(words[e] * Word::generator(g));
        continue;
      }
      Word s = words[e] * Word::generator(g) * words[it->second].inverse();
      if (!s.empty() && seen.insert(s).second) out.push_back(std::move(s));
    }
  }
  return out;
}

Verdict abelianized_exponent_check(const GroupPresentation& p,
                                   std::span<const Word> normal_generators, const Word& w) {
  const int n = std::max({p.generators, w.max_generator()});
  const auto inside = lattice_contains(exponent_rows(n, p.relators, normal_generators),
                                       w.exponent_vector(n));
  if (!inside) return Verdict::unknown("exponent lattice overflow");
  if (!*inside) return Verdict::no("exponent vector outside the relator lattice");
  return Verdict::unknown("abelianization inconclusive");
}

Verdict in_normal_closure(const GroupPresentation& p, std::span<const Word> normal_generators,
                          const Word& w, std::size_t cap) {
  GroupPresentation q = p;
  for (const Word& r : normal_generators) q.relators.push_back(r);
  q.validate();
  if (w.max_generator() > q.generators) throw std::invalid_argument("word uses an undeclared generator");
  return GroupOracle(std::move(q), cap).is_trivial(w);
}

// ---------------------------------------------------------------------------
// Stallings graphs.

namespace {

class Folder {
 public:
  explicit Folder(int generators) : cols_(2 * generators) { add_vertex(); }

  int add_vertex() {
    parent_.push_back(static_cast<int>(out_.size()));
    out_.emplace_back(static_cast<std::size_t>(cols_), -1);
    return static_cast<int>(out_.size()) - 1;
  }

  void add_loop(const Word& w) {
    if (w.empty()) return;
    int at = 0;
    for (std::size_t i = 0; i < w.length(); ++i) {
      const int to = i + 1 == w.length() ? 0 : add_vertex();
      connect(at, CosetTable::column(w[i]), to);
      at = to;
    }
    drain();
  }

  // Folded graph with vertices renumbered in order.
  std::vector<std::vector<int>> result() {
    std::vector<int> renumber(out_.size(), -1);
    int next = 0;
    for (std::size_t v = 0; v < out_.size(); ++v) {
      if (find(static_cast<int>(v)) == static_cast<int>(v)) renumber[v] = next++;
    }
    std::vector<std::vector<int>> graph(static_cast<std::size_t>(next));
    for (std::size_t v = 0; v < out_.size(); ++v) {
      if (renumber[v] < 0) continue;
      auto& row = graph[static_cast<std::size_t>(renumber[v])];
      row.assign(static_cast<std::size_t>(cols_), -1);
      for (int c = 0; c < cols_; ++c) {
        const int t = out_[v][static_cast<std::size_t>(c)];
        if (t >= 0) row[static_cast<std::size_t>(c)] = renumber[static_cast<std::size_t>(find(t))];
      }
    }
    return graph;
  }

 private:
  int find(int v) {
    while (parent_[static_cast<std::size_t>(v)] != v) {
      parent_[static_cast<std::size_t>(v)] =
          parent_[static_cast<std::size_t>(parent_[static_cast<std::size_t>(v)])];
      v = parent_[static_cast<std::size_t>(v)];
    }
    return v;
  }

  void connect(int u, int col, int v) {
    u = find(u);
    v = find(v);
    int& fwd = out_[static_cast<std::size_t>(u)][static_cast<std::size_t>(col)];
    if (fwd >= 0) {
      pending_.emplace_back(fwd, v);
    } else {
      fwd = v;
    }
    int& back = out_[static_cast<std::size_t>(v)][static_cast<std::size_t>(col ^ 1)];
    if (back >= 0) {
      pending_.emplace_back(back, u);
    } else {
      back = u;
    }
  }

  void drain() {
    while (!pending_.empty()) {
      auto [a, b] = pending_.front();
      pending_.pop_front();
      a = find(a);
      b = find(b);
      if (a == b) continue;
      const int keep = std::min(a, b);
      const int gone = std::max(a, b);
      parent_[static_cast<std::size_t>(gone)] = keep;
      for (int c = 0; c < cols_; ++c) {
        const int t = out_[static_cast<std::size_t>(gone)][static_cast<std::size_t>(c)];
        if (t < 0) continue;
        out_[static_cast<std::size_t>(gone)][static_cast<std::size_t>(c)] = -1;
        // The reverse edge at t still points at gone; it resolves to keep.
        const int ft = find(t);
        int& fwd = out_[static_cast<std::size_t>(keep)][static_cast<std::size_t>(c)];
        if (fwd >= 0 && find(fwd) != ft) {
          pending_.emplace_back(fwd, ft);
        } else if (fwd < 0) {
          fwd = ft;
        }
        int& back = out_[static_cast<std::size_t>(ft)][static_cast<std::size_t>(c ^ 1)];
        if (back >= 0 && find(back) != keep) {
          pending_.emplace_back(back, keep);
        } else {
          back = keep;
        }
      }
    }
  }

  int cols_;
  std::vector<int> parent_;
  std::vector<std::vector<int>> out_;
  std::deque<std::pair<int, int>> pending_;
};

}  // namespace

StallingsGraph::StallingsGraph(int generators, std::span<const Word> subgroup_generators)
    : generators_(generators) {
  if (generators < 0) throw std::invalid_argument("negative generator count");
  Folder folder(generators);
  for (const Word& h : subgroup_generators) {
    if (h.max_generator() > generators) {
      throw std::invalid_argument("subgroup generator " + h.to_string() +
                                  " uses an undeclared generator");
    }
    folder.add_loop(h);
  }
  out_ = folder.result();
}

std::optional<int> StallingsGraph::read(int from, const Word& w) const {
  int v = from;
  for (Letter x : w.letters()) {
    if (std::abs(x) > generators_) return std::nullopt;
    v = out_[static_cast<std::size_t>(v)][static_cast<std::size_t>(CosetTable::column(x))];
    if (v < 0) return std::nullopt;
  }
  return v;
}

bool StallingsGraph::contains(const Word& w) const {
  const auto end = read(0, w);
  return end && *end == 0;
}

bool StallingsGraph::is_finite_index() const {
  for (const auto& row : out_) {
    for (int t : row) {
      if (t < 0) return false;
    }
  }
  return true;
}

std::vector<Word> StallingsGraph::basis() const {
  const std::size_t n = out_.size();
  std::vector<Word> path(n);
  std::vector<bool> reached(n, false);
  std::set<std::pair<int, int>> tree;  // (vertex, column) of tree edges
  std::vector<int> order{0};
  reached[0] = true;
  for (std::size_t k = 0; k < order.size(); ++k) {
    const int v = order[k];
    for (int c = 0; c < 2 * generators_; ++c) {
      const int t = out_[static_cast<std::size_t>(v)][static_cast<std::size_t>(c)];
      if (t < 0 || reached[static_cast<std::size_t>(t)]) continue;
      reached[static_cast<std::size_t>(t)] = true;
      const Letter x = c % 2 == 0 ? c / 2 + 1 : -(c / 2 + 1);
      path[static_cast<std::size_t>(t)] = path[static_cast<std::size_t>(v)] * Word({x});
      tree.emplace(v, c);
      tree.emplace(t, c ^ 1);
      order.push_back(t);
    }
  }
  std::vector<Word> out;
  for (int v : order) {
    for (int g = 1; g <= generators_; ++g) {
      const int c = 2 * (g - 1);
      const int t = out_[static_cast<std::size_t>(v)][static_cast<std::size_t>(c)];
      if (t < 0 || tree.count({v, c})) continue;
      out.push_back(path[static_cast<std::size_t>(v)] * Word::generator(g) *
                    path[static_cast<std::size_t>(t)].inverse());
    }
  }
  return out;
}

StallingsGraph StallingsGraph::intersect(const StallingsGraph& other) const {
  if (other.generators_ != generators_) throw std::invalid_argument("generator count mismatch");
  StallingsGraph out;
  out.generators_ = generators_;
  std::map<std::pair<int, int>, int> index{{{0, 0}, 0}};
  std::vector<std::pair<int, int>> order{{0, 0}};
  out.out_.emplace_back(static_cast<std::size_t>(2 * generators_), -1);
  for (std::size_t k = 0; k < order.size(); ++k) {
    const auto [a, b] = order[k];
    for (int c = 0; c < 2 * generators_; ++c) {
      const int ta = out_[static_cast<std::size_t>(a)][static_cast<std::size_t>(c)];
      const int tb = other.out_[static_cast<std::size_t>(b)][static_cast<std::size_t>(c)];
      if (ta < 0 || tb < 0) continue;
      auto [it, fresh] = index.emplace(std::make_pair(ta, tb), static_cast<int>(order.size()));
      if (fresh) {
        order.emplace_back(ta, tb);
        out.out_.emplace_back(static_cast<std::size_t>(2 * generators_), -1);
      }
      out.out_[k][static_cast<std::size_t>(c)] = it->second;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Oracle.

namespace {

bool detect_abelian(const GroupPresentation& p) {
  if (p.generators <= 1) return true;
  std::set<Word> keys;
  for (const Word& r : p.relators) keys.insert(r.relator_key());
  for (int a = 1; a <= p.generators; ++a) {
    for (int b = a + 1; b <= p.generators; ++b) {
      if (!keys.count(Word({a, b, -a, -b}).relator_key())) return false;
    }
  }
  return true;
}

// Reduced words in breadth-first order, shortest first, at most `limit` of them.
std::vector<Word> short_words(int generators, std::size_t limit) {
  std::vector<Word> out{Word()};
  for (std::size_t k = 0; k < out.size() && out.size() < limit; ++k) {
    for (int g = 1; g <= generators && out.size() < limit; ++g) {
      for (Letter x : {g, -g}) {
        const Word& base = out[k];
        if (!base.empty() && base[base.length() - 1] == -x) continue;
        out.push_back(base * Word({x}));
        if (out.size() >= limit) break;
      }
    }
  }
  return out;
}

constexpr std::size_t kConjugatorSearch = 400;

// Orders of the factors when every relator is a power of one generator, so
// the group is a free product of cyclic groups (0 = infinite cyclic factor).
std::optional<std::vector<long long>> cyclic_factor_orders(const GroupPresentation& p) {
  std::vector<long long> orders(static_cast<std::size_t>(p.generators) + 1, 0);
  for (const Word& r : p.relators) {
    if (r.empty()) continue;
    const int g = std::abs(r[0]);
    for (Letter x : r.letters()) {
      if (x != r[0]) return std::nullopt;
    }
    orders[static_cast<std::size_t>(g)] =
        std::gcd(orders[static_cast<std::size_t>(g)], static_cast<long long>(r.length()));
  }
  return orders;
}

// Normal form in a free product of cyclic groups: merge adjacent syllables,
// reduce exponents modulo the factor order, drop trivial syllables.
bool trivial_in_free_product(const Word& w, const std::vector<long long>& orders) {
  std::vector<std::pair<int, long long>> syllables;
  for (Letter x : w.letters()) {
    const int g = std::abs(x);
    const long long step = x > 0 ? 1 : -1;
    const long long order = orders[static_cast<std::size_t>(g)];
    if (!syllables.empty() && syllables.back().first == g) {
      long long& e = syllables.back().second;
      e += step;
      if (order > 0) e %= order;
      if (e == 0) syllables.pop_back();
    } else if (order != 1) {
      syllables.emplace_back(g, step);
    }
  }
  return syllables.empty();
}

}  // namespace

GroupOracle::GroupOracle(GroupPresentation p, std::size_t cap)
    : original_(std::move(p)), simplified_(simplify_with_map(original_)), cap_(cap) {
  if (cap < 1) throw std::invalid_argument("coset cap must be positive");
  abelian_ = detect_abelian(simplified_.group);
}

std::vector<Word> GroupOracle::simplified_words(std::span<const Word> words) const {
  std::vector<Word> out;
  for (const Word& w : words) {
    Word s = simplified_.forward(w);
    if (!s.empty()) out.push_back(std::move(s));
  }
  return out;
}

std::shared_ptr<const CosetTable> GroupOracle::table_for(
    const std::vector<Word>& simplified_subgroup) const {
  auto it = tables_.find(simplified_subgroup);
  if (it != tables_.end()) return it->second;
  auto table = std::make_shared<const CosetTable>(
      todd_coxeter(simplified_.group, simplified_subgroup, cap_));
  tables_.emplace(simplified_subgroup, table);
  return table;
}

std::shared_ptr<const CosetTable> GroupOracle::finite_index_table(std::span<const Word> subgroup) const {
  auto table = table_for(simplified_words(subgroup));
  if (!table->complete()) return nullptr;
  return table;
}

Verdict GroupOracle::is_trivial(const Word& w) const {
  return in_subgroup({}, w);
}

Verdict GroupOracle::in_subgroup(std::span<const Word> subgroup, const Word& w) const {
  const Word target = simplified_.forward(w);
  if (target.empty()) return Verdict::yes("reduces to the empty word");
  const std::vector<Word> gens = simplified_words(subgroup);
  const GroupPresentation& g = simplified_.group;
  if (is_free()) {
    if (StallingsGraph(g.generators, gens).contains(target)) {
      return Verdict::yes("accepted by the folded subgroup graph");
    }
    return Verdict::no("rejected by the folded subgroup graph in a free group");
  }
  const auto inside = lattice_contains(exponent_rows(g.generators, g.relators, gens),
                                       target.exponent_vector(g.generators));
  if (abelian_ && inside) {
    return *inside ? Verdict::yes("exponent vector in the abelian subgroup lattice")
                   : Verdict::no("exponent vector outside the abelian subgroup lattice");
  }
  if (inside && !*inside) return Verdict::no("exponent vector outside the relator lattice");
  if (gens.empty()) {
    if (const auto orders = cyclic_factor_orders(g)) {
      return trivial_in_free_product(target, *orders)
                 ? Verdict::yes("trivial in the free product of cyclic factors")
                 : Verdict::no("nontrivial normal form in a free product of cyclic factors");
    }
  }
  return is_in_subgroup(target, *table_for(gens));
}

Verdict GroupOracle::in_core(std::span<const Word> subgroup, const Word& w, Word* conjugator) const {
  const Word target = simplified_.forward(w);
  if (target.empty()) return Verdict::yes("reduces to the empty word");
  const std::vector<Word> gens = simplified_words(subgroup);
  const GroupPresentation& g = simplified_.group;
  auto report_conjugator = [&](const Word& u) {
    if (conjugator) *conjugator = simplified_.backward(u);
  };

  if (is_free()) {
    const StallingsGraph graph(g.generators, gens);
    if (graph.is_finite_index()) {
      // Every vertex is a coset; find one that target moves.
      std::vector<Word> path(graph.vertex_count());
      std::vector<bool> reached(graph.vertex_count(), false);
      std::vector<int> order{0};
      reached[0] = true;
      for (std::size_t k = 0; k < order.size(); ++k) {
        const int v = order[k];
        const auto end = graph.read(v, target);
        if (!end || *end != v) {
          report_conjugator(path[static_cast<std::size_t>(v)]);
          return Verdict::no("moves a coset of the finite-index subgroup");
        }
        for (int x = 1; x <= g.generators; ++x) {
          for (Letter l : {x, -x}) {
            const int t = *graph.read(v, Word({l}));
            if (reached[static_cast<std::size_t>(t)]) continue;
            reached[static_cast<std::size_t>(t)] = true;
            path[static_cast<std::size_t>(t)] = path[static_cast<std::size_t>(v)] * Word({l});
            order.push_back(t);
          }
        }
      }
      return Verdict::yes("fixes every coset of the finite-index subgroup");
    }
    // Infinite index in a free group: the core is trivial.
    for (const Word& u : short_words(g.generators, kConjugatorSearch)) {
      if (!graph.contains(target.conjugated_by(u))) {
        report_conjugator(u);
        break;
      }
    }
    return Verdict::no("nontrivial element; core of an infinite-index free subgroup is trivial");
  }

  if (abelian_) {
    const Verdict v = in_subgroup(subgroup, w);
    if (v.is_no()) report_conjugator(Word());
    return v;
  }

  const Verdict direct = in_subgroup(subgroup, w);
  if (direct.is_no()) {
    report_conjugator(Word());
    return direct;
  }
  const auto table = table_for(gens);
  if (table->complete()) {
    std::vector<Word> path(table->row_count());
    std::vector<bool> reached(table->row_count(), false);
    std::vector<int> order{0};
    reached[0] = true;
    for (std::size_t k = 0; k < order.size(); ++k) {
      const int c = order[k];
      const auto end = table->trace(c, target);
      if (!end || *end != c) {
        report_conjugator(path[static_cast<std::size_t>(c)]);
        return Verdict::no("moves a coset of the finite-index subgroup");
      }
      for (int x = 1; x <= g.generators; ++x) {
        for (Letter l : {x, -x}) {
          const int t = *table->act(c, l);
          if (reached[static_cast<std::size_t>(t)]) continue;
          reached[static_cast<std::size_t>(t)] = true;
          path[static_cast<std::size_t>(t)] = path[static_cast<std::size_t>(c)] * Word({l});
          order.push_back(t);
        }
      }
    }
    return Verdict::yes("fixes every coset of the finite-index subgroup");
  }
  for (const Word& u : short_words(g.generators, kConjugatorSearch)) {
    const Word conj = simplified_.backward(target.conjugated_by(u));
    if (in_subgroup(subgroup, conj).is_no()) {
      report_conjugator(u);
      return Verdict::no("a conjugate leaves the subgroup");
    }
  }
  return Verdict::unknown("core membership undecided: enumeration exhausted cap " +
                          std::to_string(cap_));
}

GroupOracle GroupOracle::quotient(std::span<const Word> normal_generators) const {
  GroupPresentation q = original_;
  for (const Word& r : normal_generators) q.relators.push_back(r);
  q.validate();
  return GroupOracle(std::move(q), cap_);
}

}  // namespace unicover
