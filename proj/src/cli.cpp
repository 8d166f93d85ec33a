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

#include "unicover/cli.hpp"

#include <CLI11.hpp>
#include <Eigen/Dense>
#include <algorithm>
#include <atomic>
#include <exception>
#include <fstream>
#include <iomanip>
#include <functional>
#include <iostream>
#include <mutex>
#include <nlohmann/json.hpp>
#include <optional>
#include <random>
#include <sstream>
#include <thread>

#include "unicover/group_engine.hpp"
#include "unicover/io.hpp"
#include "unicover/rips_pi1.hpp"
#include "unicover/spaces.hpp"
#include "unicover/structures.hpp"

namespace unicover::cli {

namespace {

using Json = nlohmann::ordered_json;

struct RunConfig {
  std::string command;
  std::string recipe;
  std::string space_file;
  std::string scale;
  std::string fine = "connect";
  std::string coarse;
  std::string target;
  std::string mode = "uniform";
  std::vector<std::string> chains;
  std::vector<std::string> subgroup;
  int samples = 4;
  std::size_t cap = kDefaultCosetCap;
  std::size_t budget = kDefaultSearchBudget;
  std::string format = "text";
  std::string out;
  std::uint64_t seed = 0;
};

/// Report text, and whether any requested verdict came back Unknown.
struct Outcome {
  std::string text;
  bool unknown = false;
};

std::string num(double v) {
  std::ostringstream s;
  s << std::setprecision(6) << v;
  return s.str();
}

std::string join(const std::vector<Vertex>& v, const char* sep = ",") {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + std::to_string(v[i]);
  return out;
}

std::string table(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& r : rows) {
    width.resize(std::max(width.size(), r.size()), 0);
    for (std::size_t c = 0; c < r.size(); ++c) width[c] = std::max(width[c], r[c].size());
  }
  std::ostringstream s;
  for (const auto& r : rows) {
    std::string line;
    for (std::size_t c = 0; c < r.size(); ++c) {
      line += r[c];
      if (c + 1 < r.size()) line += std::string(width[c] - r[c].size() + 2, ' ');
    }
    s << line << '\n';
  }
  return s.str();
}

Json verdict_json(const Verdict& v) {
  return Json{{"answer", to_string(v.value)}, {"reason", v.reason}};
}

// ---------------------------------------------------------------------------
// Scale selection

std::size_t group_rank(const MetricSpace& space, Scale s) {
  return static_cast<std::size_t>(simplify(presentation(space, s).group()).generators);
}

class ScaleResolver {
 public:
  explicit ScaleResolver(const MetricSpace& space) : space_(space), critical_(critical_scales(space)) {}

  const std::vector<Scale>& critical() const { return critical_; }

  std::vector<Scale> resolve(const std::string& spec, std::optional<Scale> fine = std::nullopt) {
    std::vector<Scale> out;
    std::stringstream in(spec);
    std::string item;
    while (std::getline(in, item, ',')) {
      if (item == "all") {
        out.insert(out.end(), critical_.begin(), critical_.end());
      } else if (item == "fine") {
        if (!fine) throw ParseError("the keyword 'fine' is only valid for --coarse");
        out.push_back(*fine);
      } else if (std::count(item.begin(), item.end(), ':') == 2) {
        const auto a = item.find(':');
        const auto b = item.find(':', a + 1);
        const double lo = number(item.substr(0, a));
        const double hi = number(item.substr(a + 1, b - a - 1));
        const double step = number(item.substr(b + 1));
        if (!(step > 0) || hi < lo) throw ValidationError("scale range needs lo <= hi and step > 0");
        for (long k = 0; lo + static_cast<double>(k) * step <= hi + 1e-12; ++k) {
          out.emplace_back(lo + static_cast<double>(k) * step);
        }
      } else {
        out.push_back(single(item));
      }
    }
    if (out.empty()) throw ParseError("empty scale list");
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  Scale one(const std::string& spec, std::optional<Scale> fine = std::nullopt) {
    const auto all = resolve(spec, fine);
    if (all.size() != 1) throw ValidationError("expected a single scale, got \"" + spec + "\"");
    return all.front();
  }

 private:
  static double number(const std::string& text) {
    std::istringstream s(text);
    double v = 0;
    s >> v;
    if (text.empty() || !s || !s.eof()) throw ParseError("bad scale \"" + text + "\"");
    if (!(v >= 0)) throw ValidationError("scales must be nonnegative");
    return v;
  }

  void need_critical() const {
    if (critical_.empty()) throw ValidationError("the space has no critical scales");
  }

  Scale single(const std::string& item) {
    if (item == "nearest") {
      need_critical();
      return critical_.front();
    }
    if (item == "connect") {
      need_critical();
      for (Scale s : critical_) {
        if (pc_components(space_, s).block_count == 1) return s;
      }
      return critical_.back();
    }
    if (item == "half") return Scale(space_.diameter() / 2);
    if (item == "fill") {
      need_critical();
      for (std::size_t i = critical_.size(); i-- > 0;) {
        if (group_rank(space_, critical_[i]) > 0) {
          if (i + 1 == critical_.size()) throw ValidationError("no filling scale among critical scales");
          return critical_[i + 1];
        }
      }
      return critical_.front();
    }
    return Scale(number(item));
  }

  const MetricSpace& space_;
  std::vector<Scale> critical_;
};

// ---------------------------------------------------------------------------
// Commands

struct Context {
  const RunConfig& config;
  const MetricSpace& space;
  ScaleResolver& scales;
  Json provenance;
};

Json provenance(const RunConfig& c, const MetricSpace& space) {
  Json config{{"command", c.command}};
  if (!c.recipe.empty()) config["recipe"] = c.recipe;
  if (!c.space_file.empty()) config["space"] = c.space_file;
  config["space_name"] = space.name();
  config["points"] = space.size();
  if (!c.scale.empty()) config["scale"] = c.scale;
  if (c.command == "slt" || c.command == "compare") config["fine"] = c.fine;
  if (!c.coarse.empty()) config["coarse"] = c.coarse;
  if (!c.target.empty()) config["target"] = c.target;
  if (c.command == "slt") config["mode"] = c.mode;
  if (!c.chains.empty()) config["chains"] = c.chains;
  if (!c.subgroup.empty()) config["subgroup"] = c.subgroup;
  if (c.command == "compare") config["samples"] = c.samples;
  config["cap"] = c.cap;
  config["budget"] = c.budget;
  config["seed"] = c.seed;
  return Json{{"tool", "unicover"}, {"version", kVersion}, {"config", config}};
}

Json presentation_json(const Simplification& simp) {
  Json rels = Json::array();
  for (const Word& r : simp.group.relators) rels.push_back(r.to_string());
  return Json{{"generators", simp.group.generators}, {"relators", rels}};
}

Outcome cmd_pi1(Context& ctx) {
  const auto scales = ctx.scales.resolve(ctx.config.scale.empty() ? "nearest" : ctx.config.scale);
  Json rows = Json::array();
  std::vector<std::vector<std::string>> lines;
  bool unknown = false;
  for (Scale s : scales) {
    const auto p = presentation(ctx.space, s);
    const auto simp = simplify_with_map(p.group());
    const auto ab = abelian_invariants(simp.group);
    unknown = unknown || !ab;
    const std::string ab_text = ab ? ab->to_string() : "unknown";
    Json row{{"scale", s.epsilon},
             {"components", pc_components(ctx.space, s).block_count},
             {"edge_generators", p.generator_count()},
             {"edge_relators", p.group().relators.size()},
             {"presentation", presentation_json(simp)},
             {"abelianization", ab_text},
             {"free", simp.is_free()},
             {"trivial", simp.group.generators == 0}};
    rows.push_back(row);
    std::string line = "gens: " + std::to_string(simp.group.generators) +
                       ", rels: " + std::to_string(simp.group.relators.size()) +
                       ", abelianization: " + ab_text;
    if (simp.group.generators == 0) line += " (trivial group)";
    lines.push_back({"scale " + num(s.epsilon), line});
    for (const Word& r : simp.group.relators) lines.push_back({"", "  " + r.to_string()});
  }
  if (ctx.config.format == "json") {
    Json doc{{"provenance", ctx.provenance}, {"scales", rows}};
    return {doc.dump(2) + "\n", unknown};
  }
  return {table(lines), unknown};
}

/// Rational rank of the image of H1 at one scale inside H1 at the next.
int image_rank(const EdgePathPresentation& from, const Simplification& from_simp,
               const EdgePathPresentation& to, const Simplification& to_simp) {
  const int cols = to_simp.group.generators;
  if (cols == 0 || from_simp.group.generators == 0) return 0;
  const ScaleMap map = scale_map(from, to);
  std::vector<std::vector<long long>> relations;
  for (const Word& r : to_simp.group.relators) relations.push_back(r.exponent_vector(cols));
  std::vector<std::vector<long long>> images;
  for (int g = 1; g <= from_simp.group.generators; ++g) {
    const Word image = to_simp.forward(map.apply(from_simp.backward(Word::generator(g))));
    images.push_back(image.exponent_vector(cols));
  }
  auto rank = [&](const std::vector<std::vector<long long>>& rows) {
    if (rows.empty()) return 0L;
    Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      for (int j = 0; j < cols; ++j) {
        m(static_cast<Eigen::Index>(i), j) = static_cast<double>(rows[i][static_cast<std::size_t>(j)]);
      }
    }
    return static_cast<long>(Eigen::FullPivLU<Eigen::MatrixXd>(m).rank());
  };
  auto both = relations;
  both.insert(both.end(), images.begin(), images.end());
  return static_cast<int>(rank(both) - rank(relations));
}

/// Runs fn(0..n-1) on worker threads; rethrows the first failure.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers = std::min<std::size_t>(n, std::max(1u, std::thread::hardware_concurrency()));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_lock;
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) {
          try {
            fn(i);
          } catch (...) {
            const std::lock_guard lock(failure_lock);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

Outcome cmd_filtration(Context& ctx) {
  const auto scales = ctx.config.scale.empty() ? ctx.scales.critical() : ctx.scales.resolve(ctx.config.scale);
  const std::size_t n = scales.size();
  std::vector<std::optional<EdgePathPresentation>> presentations(n);
  std::vector<Simplification> simplified(n);
  std::vector<std::optional<AbelianInvariants>> abelian(n);
  std::vector<int> components(n, 0);
  std::vector<std::optional<int>> image(n);
  parallel_for(n, [&](std::size_t i) {
    presentations[i] = presentation(ctx.space, scales[i]);
    simplified[i] = simplify_with_map(presentations[i]->group());
    abelian[i] = abelian_invariants(simplified[i].group);
    components[i] = pc_components(ctx.space, scales[i]).block_count;
  });
  parallel_for(n, [&](std::size_t i) {
    if (i > 0) image[i] = image_rank(*presentations[i - 1], simplified[i - 1], *presentations[i], simplified[i]);
  });

  Json rows = Json::array();
  std::vector<std::vector<std::string>> lines{
      {"scale", "components", "gens", "rels", "abelianization", "rank", "image_rank"}};
  bool unknown = false;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& ab = abelian[i];
    const auto& group = simplified[i].group;
    unknown = unknown || !ab;
    const int rank = ab ? ab->free_rank : -1;
    Json row{{"scale", scales[i].epsilon},
             {"components", components[i]},
             {"generators", group.generators},
             {"relators", group.relators.size()},
             {"abelianization", ab ? ab->to_string() : "unknown"},
             {"rank", rank}};
    row["image_rank_from_previous"] = image[i] ? Json(*image[i]) : Json(nullptr);
    rows.push_back(row);
    lines.push_back({num(scales[i].epsilon), std::to_string(components[i]), std::to_string(group.generators),
                     std::to_string(group.relators.size()), ab ? ab->to_string() : "unknown",
                     ab ? std::to_string(rank) : "?", image[i] ? std::to_string(*image[i]) : "-"});
  }
  if (ctx.config.format == "json") {
    Json doc{{"provenance", ctx.provenance}, {"rows", rows}};
    return {doc.dump(2) + "\n", unknown};
  }
  if (rows.empty()) return {"no critical scales\n", unknown};
  return {table(lines), unknown};
}

SltMode parse_mode(const std::string& text) {
  if (text == "uniform") return SltMode::Uniform;
  if (text == "per-point") return SltMode::PerPoint;
  throw ParseError("mode must be uniform or per-point");
}

Outcome cmd_slt(Context& ctx) {
  const Scale fine = ctx.scales.one(ctx.config.fine);
  const Scale ball = ctx.scales.one(ctx.config.coarse.empty() ? "half" : ctx.config.coarse);
  const Scale target = ctx.config.target.empty() ? ball : ctx.scales.one(ctx.config.target);
  if (fine > ball || fine > target) throw ValidationError("slt needs fine <= coarse and fine <= target");
  const ChainGroupoid g(ctx.space, fine, ctx.config.cap);
  const auto report = slt_check(g, ball, target, parse_mode(ctx.config.mode));
  const auto& simp = g.oracle().simplification();
  Json rows = Json::array();
  std::vector<std::vector<std::string>> lines{{"center", "loop", "word", "verdict", "conjugator", "passes_at"}};
  for (const SltRow& r : report.rows) {
    Json row{{"center", r.center}, {"loop", r.loop}, {"word", r.word.to_string()},
             {"verdict", verdict_json(r.verdict)}};
    row["conjugator"] = r.conjugator ? Json(r.conjugator->to_string()) : Json(nullptr);
    row["passing_target"] = r.passing_target ? Json(r.passing_target->epsilon) : Json(nullptr);
    rows.push_back(row);
    lines.push_back({std::to_string(r.center), std::to_string(r.loop), r.word.to_string(),
                     to_string(r.verdict.value), r.conjugator ? r.conjugator->to_string() : "-",
                     r.passing_target ? num(r.passing_target->epsilon) : "-"});
  }
  const std::size_t yes = report.count(Answer::Yes);
  const std::size_t no = report.count(Answer::No);
  const std::size_t unknown = report.count(Answer::Unknown);
  if (ctx.config.format == "json") {
    Json doc{{"provenance", ctx.provenance},
             {"fine", fine.epsilon},
             {"ball", ball.epsilon},
             {"target", target.epsilon},
             {"mode", to_string(report.mode)},
             {"group", presentation_json(simp)},
             {"summary", {{"yes", yes}, {"no", no}, {"unknown", unknown}}},
             {"rows", rows}};
    return {doc.dump(2) + "\n", unknown > 0};
  }
  std::ostringstream s;
  s << "fine " << num(fine.epsilon) << ", ball " << num(ball.epsilon) << ", target " << num(target.epsilon)
    << ", mode " << to_string(report.mode) << ", group generators " << simp.group.generators << '\n';
  s << "rows: " << report.rows.size() << ", yes: " << yes << ", no: " << no << ", unknown: " << unknown
    << '\n';
  if (!report.rows.empty()) s << table(lines);
  return {s.str(), unknown > 0};
}

std::vector<Vertex> parse_vertices(const std::string& text) {
  std::vector<Vertex> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ParseError("bad vertex \"" + item + "\" in chain \"" + text + "\"");
    }
  }
  if (out.empty()) throw ParseError("empty chain");
  return out;
}

std::vector<ChainClass> compare_classes(const Context& ctx, const ChainGroupoid& g) {
  std::vector<ChainClass> out;
  if (!ctx.config.chains.empty()) {
    for (const auto& text : ctx.config.chains) {
      const auto vertices = parse_vertices(text);
      for (Vertex v : vertices) {
        if (!ctx.space.contains(v)) throw ValidationError("chain vertex " + std::to_string(v) + " out of range");
      }
      out.push_back(g.class_of(vertices));
    }
    return out;
  }
  const auto& simp = g.oracle().simplification();
  const Vertex root = g.presentation().root();
  out.push_back(ChainClass{root, Word()});
  for (int x = 1; x <= simp.group.generators; ++x) {
    out.push_back(ChainClass{root, simp.backward(Word::generator(x))});
  }
  std::mt19937_64 rng(ctx.config.seed);
  const auto& members = g.presentation().component();
  for (int k = 0; k < ctx.config.samples; ++k) {
    const Vertex end = members[static_cast<std::size_t>(rng() % members.size())];
    Word w;
    if (simp.group.generators > 0) {
      const int length = static_cast<int>(rng() % 3);
      for (int i = 0; i < length; ++i) {
        const int x = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(simp.group.generators));
        w *= Word::generator(rng() % 2 == 0 ? x : -x);
      }
    }
    out.push_back(ChainClass{end, simp.backward(w)});
  }
  return out;
}

Json witness_json(const StructureWitness& w) {
  Json out;
  switch (w.kind) {
    case StructureWitness::Kind::Equal: out["kind"] = "equal"; break;
    case StructureWitness::Kind::BoundedConnector:
      out["kind"] = "bounded_connector";
      out["center"] = w.center;
      out["connector"] = w.connector;
      out["residual"] = w.residual.to_string();
      break;
    case StructureWitness::Kind::PointwisePair:
      out["kind"] = "pointwise_pair";
      out["first"] = w.first;
      out["second"] = w.second;
      break;
  }
  if (w.guaranteed_at) out["guaranteed_at"] = w.guaranteed_at->epsilon;
  return out;
}

Outcome cmd_compare(Context& ctx) {
  const Scale fine = ctx.scales.one(ctx.config.fine);
  const auto coarse = ctx.scales.resolve(ctx.config.coarse.empty() ? "fine,fill" : ctx.config.coarse, fine);
  const ChainGroupoid g(ctx.space, fine, ctx.config.cap);
  const auto classes = compare_classes(ctx, g);
  Json class_rows = Json::array();
  for (std::size_t i = 0; i < classes.size(); ++i) {
    class_rows.push_back(Json{{"index", i},
                              {"end", classes[i].end},
                              {"word", g.oracle().to_simplified(classes[i].word).to_string()},
                              {"representative", g.representative(classes[i]).vertices()}});
  }
  Json rows = Json::array();
  std::vector<std::vector<std::string>> lines{{"coarse", "a", "b", "bp", "lasso", "james"}};
  bool unknown = false;
  for (Scale s : coarse) {
    for (std::size_t i = 0; i < classes.size(); ++i) {
      for (std::size_t j = i + 1; j < classes.size(); ++j) {
        const StructureVerdict verdicts[] = {bp_close(g, classes[i], classes[j], s),
                                             lasso_close(g, classes[i], classes[j], s),
                                             james_close(g, classes[i], classes[j], s, ctx.config.budget)};
        Json row{{"coarse", s.epsilon}, {"a", i}, {"b", j}};
        std::vector<std::string> line{num(s.epsilon), std::to_string(i), std::to_string(j)};
        for (const auto& v : verdicts) {
          Json entry = verdict_json(v.verdict);
          if (v.witness) entry["witness"] = witness_json(*v.witness);
          row[to_string(v.relation)] = entry;
          line.push_back(to_string(v.verdict.value));
          unknown = unknown || v.verdict.is_unknown();
        }
        rows.push_back(row);
        lines.push_back(line);
      }
    }
  }
  if (ctx.config.format == "json") {
    Json doc{{"provenance", ctx.provenance},
             {"fine", fine.epsilon},
             {"classes", class_rows},
             {"rows", rows}};
    return {doc.dump(2) + "\n", unknown};
  }
  std::ostringstream s;
  s << "fine " << num(fine.epsilon) << '\n';
  for (std::size_t i = 0; i < classes.size(); ++i) {
    s << "class " << i << ": " << join(g.representative(classes[i]).vertices()) << '\n';
  }
  s << table(lines);
  return {s.str(), unknown};
}

Outcome cmd_export(Context& ctx) {
  const Scale s = ctx.scales.one(ctx.config.scale.empty() ? "connect" : ctx.config.scale);
  const auto p = presentation(ctx.space, s);
  const auto& members = p.component();
  struct Edge {
    Vertex a;
    Vertex b;
    Letter letter;
  };
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t j = i + 1; j < members.size(); ++j) {
      const Vertex a = std::min(members[i], members[j]);
      const Vertex b = std::max(members[i], members[j]);
      if (ctx.space.close(a, b, s)) edges.push_back({a, b, p.edge_letter(a, b)});
    }
  }
  std::sort(edges.begin(), edges.end(), [](const Edge& x, const Edge& y) {
    return std::pair(x.a, x.b) < std::pair(y.a, y.b);
  });

  std::vector<std::string> labels;
  std::vector<std::pair<std::string, std::string>> links;
  Json cover = nullptr;
  if (ctx.config.subgroup.empty()) {
    std::vector<Vertex> sorted = members;
    std::sort(sorted.begin(), sorted.end());
    for (Vertex v : sorted) labels.push_back(std::to_string(v));
    for (const Edge& e : edges) links.emplace_back(std::to_string(e.a), std::to_string(e.b));
  } else {
    const auto simp = simplify_with_map(p.group());
    std::vector<Word> subgroup;
    for (const auto& text : ctx.config.subgroup) {
      Word w;
      try {
        w = Word::parse(text);
      } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
      }
      if (w.max_generator() > simp.group.generators) {
        throw ValidationError("subgroup word " + text + " uses a generator beyond g" +
                              std::to_string(simp.group.generators));
      }
      subgroup.push_back(w);
    }
    const CosetTable table = todd_coxeter(simp.group, subgroup, ctx.config.cap);
    if (!table.complete()) {
      return {"coset enumeration exhausted its cap of " + std::to_string(ctx.config.cap) + " cosets\n", true};
    }
    const int index = static_cast<int>(table.index());
    std::vector<Vertex> sorted = members;
    std::sort(sorted.begin(), sorted.end());
    auto label = [](int c, Vertex v) { return std::to_string(c) + ":" + std::to_string(v); };
    for (int c = 0; c < index; ++c) {
      for (Vertex v : sorted) labels.push_back(label(c, v));
    }
    for (int c = 0; c < index; ++c) {
      for (const Edge& e : edges) {
        const Word w = e.letter == 0 ? Word() : simp.forward(Word::generator(e.letter));
        const auto to = table.trace(c, w);
        if (!to) throw std::logic_error("incomplete coset table");
        links.emplace_back(label(c, e.a), label(*to, e.b));
      }
    }
    Json words = Json::array();
    for (const Word& w : subgroup) words.push_back(w.to_string());
    cover = Json{{"index", index}, {"subgroup", words}, {"group", presentation_json(simp)}};
  }

  if (ctx.config.format == "json") {
    Json doc{{"provenance", ctx.provenance}, {"scale", s.epsilon}, {"cover", cover},
             {"vertices", labels}};
    Json e = Json::array();
    for (const auto& [a, b] : links) e.push_back(Json::array({a, b}));
    doc["edges"] = e;
    return {doc.dump(2) + "\n", false};
  }
  std::ostringstream out;
  if (ctx.config.format == "dot") {
    out << "graph \"" << ctx.space.name() << "\" {\n";
    for (const auto& l : labels) out << "  \"" << l << "\";\n";
    for (const auto& [a, b] : links) out << "  \"" << a << "\" -- \"" << b << "\";\n";
    out << "}\n";
  } else {
    out << "scale " << num(s.epsilon) << ", vertices " << labels.size() << ", edges " << links.size() << '\n';
    for (const auto& [a, b] : links) out << a << " " << b << '\n';
  }
  return {out.str(), false};
}

void add_common(CLI::App& sub, RunConfig& c) {
  auto* source = sub.add_option_group("source");
  source->add_option("--recipe", c.recipe, "generated space, e.g. circle:12,1 or hawaiian:3,16");
  source->add_option("--space", c.space_file, "space file (.json or .csv)");
  source->require_option(1);
  sub.add_option("--cap", c.cap, "coset enumeration cap")->check(CLI::PositiveNumber);
  sub.add_option("--budget", c.budget, "search budget in states")->check(CLI::PositiveNumber);
  sub.add_option("--format", c.format, "text, json or dot")
      ->check(CLI::IsMember({"text", "json", "dot"}));
  sub.add_option("--out", c.out, "write the report here instead of stdout");
  sub.add_option("--seed", c.seed, "seed for sampled classes");
}

const char* kScaleHelp =
    "comma list of numbers, ranges lo:hi:step, or keywords all, nearest, connect, fill, half";

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app("Discrete fundamental groups of finite metric spaces", "unicover");
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  auto* pi1 = app.add_subcommand("pi1", "simplified presentation at each scale");
  add_common(*pi1, c);
  pi1->add_option("--scale", c.scale, kScaleHelp);

  auto* filtration = app.add_subcommand("filtration", "presentation data across critical scales");
  add_common(*filtration, c);
  filtration->add_option("--scale", c.scale, kScaleHelp);

  auto* slt = app.add_subcommand("slt", "small loop transfer report");
  add_common(*slt, c);
  slt->add_option("--fine", c.fine, "chain scale");
  slt->add_option("--coarse", c.coarse, "ball radius (default: half the diameter)");
  slt->add_option("--target", c.target, "target ball radius at the base point (default: --coarse)");
  slt->add_option("--mode", c.mode, "uniform or per-point")->check(CLI::IsMember({"uniform", "per-point"}));

  auto* compare = app.add_subcommand("compare", "bp, lasso and James relations over class pairs");
  add_common(*compare, c);
  compare->add_option("--fine", c.fine, "chain scale");
  compare->add_option("--coarse", c.coarse, std::string(kScaleHelp) + ", fine (default: fine,fill)");
  compare->add_option("--chain", c.chains, "chain from the base point as comma-separated vertices");
  compare->add_option("--samples", c.samples, "random classes added when no --chain is given")
      ->check(CLI::NonNegativeNumber);

  auto* exporter = app.add_subcommand("export", "chain graph or finite cover as DOT/JSON");
  add_common(*exporter, c);
  exporter->add_option("--scale", c.scale, "single scale (default: connect)");
  exporter->add_option("--subgroup", c.subgroup, "subgroup generator word, e.g. \"g1 g1\"");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsageError;
  }
  c.command = app.get_subcommands().front()->get_name();
  if (c.format == "dot" && c.command != "export") {
    err << "error: --format dot is only available for export\n";
    return kUsageError;
  }

  try {
    const MetricSpace space =
        c.recipe.empty() ? load_space_file(c.space_file) : SpaceRecipe::parse(c.recipe).build();
    ScaleResolver scales(space);
    Context ctx{c, space, scales, provenance(c, space)};
    Outcome result;
    if (c.command == "pi1") result = cmd_pi1(ctx);
    if (c.command == "filtration") result = cmd_filtration(ctx);
    if (c.command == "slt") result = cmd_slt(ctx);
    if (c.command == "compare") result = cmd_compare(ctx);
    if (c.command == "export") result = cmd_export(ctx);
    if (c.out.empty()) {
      out << result.text;
    } else {
      std::ofstream file(c.out, std::ios::binary);
      if (!file) {
        err << "error: cannot write " << c.out << '\n';
        return kUsageError;
      }
      file << result.text;
    }
    if (result.unknown) {
      err << "warning: some results are Unknown\n";
      return kUnknownResult;
    }
    return kSuccess;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kValidationError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kValidationError;
  }
}

}  // namespace unicover::cli
