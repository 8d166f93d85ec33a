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

#include "unicover/spaces.hpp"

#include "unicover/io.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>

namespace unicover {

namespace {

std::string fmt(double v) {
  std::string s = std::to_string(v);
  s.erase(s.find_last_not_of('0') + 1);
  if (!s.empty() && s.back() == '.') s.pop_back();
  return s;
}

}  // namespace

MetricSpace circle(int k, double r) {
  if (k < 3) throw ValidationError("a circle needs at least 3 samples");
  if (!(r > 0)) throw ValidationError("circle radius must be positive");
  std::vector<std::vector<double>> pts;
  for (int j = 0; j < k; ++j) {
    const double t = 2.0 * std::numbers::pi * j / k;
    pts.push_back({r * std::cos(t), r * std::sin(t)});
  }
  return MetricSpace::from_points("circle:" + std::to_string(k) + "," + fmt(r), std::move(pts));
}

Vertex hawaiian_index(int k, int circle_index, int sample) {
  if (sample == 0) return 0;
  return 1 + (circle_index - 1) * (k - 1) + (sample - 1);
}

MetricSpace hawaiian(int n, int k) {
  if (n < 1) throw ValidationError("hawaiian needs at least one circle");
  if (k < 3) throw ValidationError("hawaiian needs at least 3 samples per circle");
  std::vector<std::vector<double>> pts{{0.0, 0.0}};
  for (int i = 1; i <= n; ++i) {
    const double radius = 1.0 / (2.0 * i);
    const double side = i % 2 == 1 ? 1.0 : -1.0;
    for (int j = 1; j < k; ++j) {
      const double t = std::numbers::pi + 2.0 * std::numbers::pi * j / k;
      pts.push_back({side * (radius + radius * std::cos(t)), radius * std::sin(t)});
    }
  }
  return MetricSpace::from_points("hawaiian:" + std::to_string(n) + "," + std::to_string(k),
                                  std::move(pts));
}

MetricSpace wedge_circles(const std::vector<double>& radii, int k) {
  if (radii.empty()) throw ValidationError("wedge needs at least one circle");
  if (k < 3) throw ValidationError("wedge needs at least 3 samples per circle");
  const std::size_t dim = 2 * radii.size();
  std::vector<std::vector<double>> pts{std::vector<double>(dim, 0.0)};
  for (std::size_t c = 0; c < radii.size(); ++c) {
    const double r = radii[c];
    if (!(r > 0)) throw ValidationError("wedge radii must be positive");
    for (int j = 1; j < k; ++j) {
      const double t = 2.0 * std::numbers::pi * j / k;
      std::vector<double> p(dim, 0.0);
      p[2 * c] = r - r * std::cos(t);
      p[2 * c + 1] = r * std::sin(t);
      pts.push_back(std::move(p));
    }
  }
  std::string name = "wedge:";
  for (std::size_t c = 0; c < radii.size(); ++c) name += (c ? "," : "") + fmt(radii[c]);
  name += "x" + std::to_string(k);
  return MetricSpace::from_points(name, std::move(pts));
}

MetricSpace torus_grid(int m, int n) {
  if (m < 1 || n < 1) throw ValidationError("torus grid dimensions must be positive");
  const int count = m * n;
  std::vector<std::vector<double>> d(static_cast<std::size_t>(count),
                                     std::vector<double>(static_cast<std::size_t>(count), 0.0));
  for (int a = 0; a < count; ++a) {
    for (int b = 0; b < count; ++b) {
      const int di = std::abs(a / n - b / n);
      const int dj = std::abs(a % n - b % n);
      const double x = std::min(di, m - di);
      const double y = std::min(dj, n - dj);
      d[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = std::sqrt(x * x + y * y);
    }
  }
  return MetricSpace("torus:" + std::to_string(m) + "," + std::to_string(n), std::move(d), 0);
}

MetricSpace random_cloud(int count, int dim, std::uint64_t seed) {
  if (count < 1 || dim < 1) throw ValidationError("random cloud needs positive count and dimension");
  std::mt19937_64 rng(seed);
  std::vector<std::vector<double>> pts(static_cast<std::size_t>(count));
  for (auto& p : pts) {
    for (int c = 0; c < dim; ++c) p.push_back(static_cast<double>(rng() >> 11) * 0x1.0p-53);
  }
  return MetricSpace::from_points("random:" + std::to_string(count) + "," + std::to_string(dim) +
                                      "," + std::to_string(seed),
                                  std::move(pts));
}

namespace {

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::string part;
  std::istringstream in{std::string(text)};
  while (std::getline(in, part, sep)) out.push_back(part);
  if (!text.empty() && text.back() == sep) out.emplace_back();
  return out;
}

template <class T>
T number(const std::string& field, std::string_view recipe) {
  std::istringstream in(field);
  T value{};
  in >> value;
  if (field.empty() || !in || !in.eof()) {
    throw ParseError("bad number \"" + field + "\" in recipe \"" + std::string(recipe) + "\"");
  }
  return value;
}

std::vector<int> ints(const std::vector<std::string>& fields, std::size_t want,
                      std::string_view recipe) {
  if (fields.size() != want) {
    throw ParseError("recipe \"" + std::string(recipe) + "\" needs " + std::to_string(want) +
                     " numbers");
  }
  std::vector<int> out;
  for (const auto& f : fields) out.push_back(number<int>(f, recipe));
  return out;
}

}  // namespace

SpaceRecipe SpaceRecipe::parse(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw ParseError("recipe \"" + std::string(text) + "\" has no kind prefix");
  }
  const std::string kind(text.substr(0, colon));
  const std::string_view args = text.substr(colon + 1);
  SpaceRecipe r;
  if (kind == "circle") {
    const auto fields = split(args, ',');
    if (fields.size() != 2) throw ParseError("circle recipe is circle:K,R");
    r.kind = Kind::Circle;
    r.counts = {number<int>(fields[0], text)};
    r.radii = {number<double>(fields[1], text)};
  } else if (kind == "hawaiian") {
    r.kind = Kind::Hawaiian;
    r.counts = ints(split(args, ','), 2, text);
  } else if (kind == "torus") {
    r.kind = Kind::Torus;
    r.counts = ints(split(args, ','), 2, text);
  } else if (kind == "random") {
    const auto fields = split(args, ',');
    if (fields.size() != 3) throw ParseError("random recipe is random:COUNT,DIM,SEED");
    r.kind = Kind::Random;
    r.counts = {number<int>(fields[0], text), number<int>(fields[1], text)};
    r.seed = number<std::uint64_t>(fields[2], text);
  } else if (kind == "wedge") {
    const auto x = args.rfind('x');
    if (x == std::string_view::npos) throw ParseError("wedge recipe is wedge:NxK or wedge:R1,...xK");
    r.kind = Kind::Wedge;
    const std::string left(args.substr(0, x));
    r.counts = {number<int>(std::string(args.substr(x + 1)), text)};
    if (left.find_first_of(",.") == std::string::npos) {
      const int n = number<int>(left, text);
      if (n < 1) throw ParseError("wedge needs at least one circle");
      r.radii.assign(static_cast<std::size_t>(n), 1.0);
    } else {
      for (const auto& f : split(left, ',')) r.radii.push_back(number<double>(f, text));
    }
  } else {
    throw ParseError("unknown recipe kind \"" + kind + "\"");
  }
  return r;
}

MetricSpace SpaceRecipe::build() const {
  switch (kind) {
    case Kind::Circle: return circle(counts.at(0), radii.at(0));
    case Kind::Hawaiian: return hawaiian(counts.at(0), counts.at(1));
    case Kind::Wedge: return wedge_circles(radii, counts.at(0));
    case Kind::Torus: return torus_grid(counts.at(0), counts.at(1));
    case Kind::Random: return random_cloud(counts.at(0), counts.at(1), seed);
  }
  throw std::logic_error("unhandled recipe kind");
}

std::string SpaceRecipe::to_string() const { return build().name(); }

void check_short_map(const MetricSpace& source, const MetricSpace& target, const ShortMap& f) {
  if (f.vertex_map.size() != source.size()) throw ValidationError("map size differs from the source");
  for (Vertex v : f.vertex_map) {
    if (!target.contains(v)) throw ValidationError("map value outside the target");
  }
  if (f(source.basepoint()) != target.basepoint()) throw ValidationError("map moves the base point");
  const auto n = static_cast<Vertex>(source.size());
  for (Vertex x = 0; x < n; ++x) {
    for (Vertex y = x + 1; y < n; ++y) {
      if (target.dist(f(x), f(y)) > source.dist(x, y) + f.slack + kDistanceSlack) {
        throw ValidationError("map expands (" + std::to_string(x) + "," + std::to_string(y) +
                              ") beyond the slack");
      }
    }
  }
}

ShortMap hawaiian_retraction(const MetricSpace& space, int n, int k, int m) {
  if (m <= 1 || m > n) throw std::invalid_argument("retraction index must satisfy 1 < m <= n");
  if (space.size() != static_cast<std::size_t>(n * (k - 1) + 1)) {
    throw ValidationError("space does not have the point count of hawaiian(n, k)");
  }
  ShortMap f;
  f.vertex_map.assign(space.size(), 0);
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j < k; ++j) {
      Vertex image = 0;
      if (i == 1) {
        image = hawaiian_index(k, 1, j);
      } else if (i <= m) {
        image = hawaiian_index(k, m, j);
      }
      f.vertex_map[static_cast<std::size_t>(hawaiian_index(k, i, j))] = image;
    }
  }
  const auto count = static_cast<Vertex>(space.size());
  for (Vertex x = 0; x < count; ++x) {
    for (Vertex y = x + 1; y < count; ++y) {
      f.slack = std::max(f.slack, space.dist(f(x), f(y)) - space.dist(x, y));
    }
  }
  check_short_map(space, space, f);
  return f;
}

double chain_slack(const MetricSpace& source, const MetricSpace& target, const ShortMap& f, Scale s) {
  if (f.vertex_map.size() != source.size()) throw ValidationError("map size differs from the source");
  double worst = 0.0;
  const auto n = static_cast<Vertex>(source.size());
  for (Vertex x = 0; x < n; ++x) {
    for (Vertex y = x + 1; y < n; ++y) {
      if (source.close(x, y, s)) worst = std::max(worst, target.dist(f(x), f(y)) - s.epsilon);
    }
  }
  return worst;
}

ScaleMap map_pi1(const MetricSpace& source, const MetricSpace& target, const ShortMap& f, Scale s) {
  check_short_map(source, target, f);
  const EdgePathPresentation from = presentation(source, s);
  const EdgePathPresentation to =
      presentation(target, Scale(s.epsilon + chain_slack(source, target, f, s)));
  ScaleMap out{s, to.scale(), {}};
  for (int g = 1; g <= from.generator_count(); ++g) {
    std::vector<Vertex> loop = from.realize(Word::generator(g));
    for (Vertex& v : loop) v = f(v);
    out.images.push_back(to.path_word(loop));
  }
  return out;
}

}  // namespace unicover
