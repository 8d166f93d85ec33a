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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "unicover/cli.hpp"
#include "unicover/group_engine.hpp"
#include "unicover/io.hpp"
#include "unicover/metric_core.hpp"
#include "unicover/rips_pi1.hpp"
#include "unicover/spaces.hpp"
#include "unicover/structures.hpp"

namespace py = pybind11;
using namespace unicover;

namespace {

py::dict verdict_dict(const Verdict& v) {
  py::dict d;
  d["answer"] = to_string(v.value);
  d["reason"] = v.reason;
  return d;
}

py::dict witness_dict(const StructureWitness& w) {
  py::dict d;
  switch (w.kind) {
    case StructureWitness::Kind::Equal: d["kind"] = "equal"; break;
    case StructureWitness::Kind::BoundedConnector:
      d["kind"] = "bounded_connector";
      d["center"] = w.center;
      d["connector"] = w.connector;
      d["residual"] = w.residual.to_string();
      break;
    case StructureWitness::Kind::PointwisePair:
      d["kind"] = "pointwise_pair";
      d["first"] = w.first;
      d["second"] = w.second;
      break;
  }
  if (w.guaranteed_at) d["guaranteed_at"] = w.guaranteed_at->epsilon;
  return d;
}

py::dict structure_dict(const StructureVerdict& v) {
  py::dict d = verdict_dict(v.verdict);
  d["relation"] = to_string(v.relation);
  d["fine"] = v.fine.epsilon;
  d["coarse"] = v.coarse.epsilon;
  d["witness"] = v.witness ? py::object(witness_dict(*v.witness)) : py::object(py::none());
  return d;
}

py::dict pi1_summary(const MetricSpace& space, double scale) {
  const auto p = presentation(space, Scale(scale));
  const auto simp = simplify_with_map(p.group());
  const auto ab = abelian_invariants(simp.group);
  std::vector<std::string> relators;
  for (const Word& r : simp.group.relators) relators.push_back(r.to_string());
  py::dict d;
  d["scale"] = scale;
  d["edge_generators"] = p.generator_count();
  d["generators"] = simp.group.generators;
  d["relators"] = relators;
  d["free"] = simp.is_free();
  d["abelianization"] = ab ? py::object(py::str(ab->to_string())) : py::object(py::none());
  return d;
}

std::vector<Word> parse_words(const std::vector<std::string>& texts) {
  std::vector<Word> out;
  for (const auto& t : texts) out.push_back(Word::parse(t));
  return out;
}

SltMode parse_mode(const std::string& mode) {
  if (mode == "uniform") return SltMode::Uniform;
  if (mode == "per-point") return SltMode::PerPoint;
  throw std::invalid_argument("mode must be 'uniform' or 'per-point'");
}

}  // namespace

PYBIND11_MODULE(_unicover, m) {
  m.doc() = "Discrete fundamental groups and closeness structures on finite metric spaces";
  m.attr("__version__") = cli::kVersion;

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

  py::class_<MetricSpace>(m, "MetricSpace")
      .def(py::init<std::string, std::vector<std::vector<double>>, Vertex>(), py::arg("name"),
           py::arg("matrix"), py::arg("basepoint") = 0)
      .def_static("from_points", &MetricSpace::from_points, py::arg("name"), py::arg("points"),
                  py::arg("basepoint") = 0)
      .def("__len__", &MetricSpace::size)
      .def_property_readonly("name", &MetricSpace::name)
      .def_property_readonly("basepoint", &MetricSpace::basepoint)
      .def_property_readonly("coordinates", &MetricSpace::coordinates)
      .def("dist", &MetricSpace::dist)
      .def("diameter", &MetricSpace::diameter)
      .def("matrix", &MetricSpace::matrix)
      .def("to_json", [](const MetricSpace& s) { return space_to_json(s); })
      .def("__repr__", [](const MetricSpace& s) {
        return "<MetricSpace " + s.name() + " with " + std::to_string(s.size()) + " points>";
      });

  m.def("load_space", [](const std::string& path) { return load_space_file(path); }, py::arg("path"));
  m.def("space_from_json", &load_space_json, py::arg("text"));
  m.def("space_from_recipe", [](const std::string& r) { return SpaceRecipe::parse(r).build(); },
        py::arg("recipe"), "Build a space from text such as 'circle:12,1' or 'hawaiian:3,16'.");
  m.def("circle", &circle, py::arg("samples"), py::arg("radius") = 1.0);
  m.def("hawaiian", &hawaiian, py::arg("circles"), py::arg("samples"));
  m.def("wedge_circles", &wedge_circles, py::arg("radii"), py::arg("samples"));
  m.def("torus_grid", &torus_grid, py::arg("m"), py::arg("n"));
  m.def("random_cloud", &random_cloud, py::arg("count"), py::arg("dim"), py::arg("seed"));

  m.def("critical_scales", [](const MetricSpace& s) {
    std::vector<double> out;
    for (Scale x : critical_scales(s)) out.push_back(x.epsilon);
    return out;
  });
  m.def("components", [](const MetricSpace& s, double scale) { return pc_components(s, Scale(scale)).blocks(); },
        py::arg("space"), py::arg("scale"));
  m.def("pi1", &pi1_summary, py::arg("space"), py::arg("scale"),
        "Simplified presentation of the chain group at the base point.");

  py::class_<GroupOracle>(m, "Group")
      .def(py::init([](int generators, const std::vector<std::string>& relators, std::size_t cap) {
             return GroupOracle(GroupPresentation{generators, parse_words(relators)}, cap);
           }),
           py::arg("generators"), py::arg("relators"), py::arg("cap") = kDefaultCosetCap)
      .def("is_trivial", [](const GroupOracle& g, const std::string& w) { return verdict_dict(g.is_trivial(Word::parse(w))); })
      .def("in_subgroup",
           [](const GroupOracle& g, const std::vector<std::string>& gens, const std::string& w) {
             const auto words = parse_words(gens);
             return verdict_dict(g.in_subgroup(words, Word::parse(w)));
           })
      .def("in_normal_closure",
           [](const GroupOracle& g, const std::vector<std::string>& gens, const std::string& w) {
             const auto words = parse_words(gens);
             return verdict_dict(in_normal_closure(g.presentation(), words, Word::parse(w), g.cap()));
           })
      .def("abelianization", [](const GroupOracle& g) -> py::object {
        const auto ab = abelian_invariants(g.presentation());
        return ab ? py::object(py::str(ab->to_string())) : py::object(py::none());
      });

  py::class_<ChainGroupoid>(m, "ChainGroupoid")
      .def(py::init([](const MetricSpace& s, double fine, std::size_t cap) { return new ChainGroupoid(s, Scale(fine), cap); }),
           py::arg("space"), py::arg("fine"), py::arg("cap") = kDefaultCosetCap)
      .def_property_readonly("fine", [](const ChainGroupoid& g) { return g.fine().epsilon; })
      .def_property_readonly("generators",
                             [](const ChainGroupoid& g) { return g.oracle().simplification().group.generators; })
      .def("word", [](const ChainGroupoid& g, const std::vector<Vertex>& chain) {
             return g.oracle().to_simplified(g.class_of(chain).word).to_string();
           }, py::arg("chain"), "Class of a chain from the base point, as a simplified word.")
      .def("bp_close", [](const ChainGroupoid& g, const std::vector<Vertex>& a, const std::vector<Vertex>& b, double coarse) {
             return structure_dict(bp_close(g, g.class_of(a), g.class_of(b), Scale(coarse)));
           }, py::arg("a"), py::arg("b"), py::arg("coarse"))
      .def("lasso_close", [](const ChainGroupoid& g, const std::vector<Vertex>& a, const std::vector<Vertex>& b, double coarse) {
             return structure_dict(lasso_close(g, g.class_of(a), g.class_of(b), Scale(coarse)));
           }, py::arg("a"), py::arg("b"), py::arg("coarse"))
      .def("james_close", [](const ChainGroupoid& g, const std::vector<Vertex>& a, const std::vector<Vertex>& b, double coarse,
                             std::size_t budget) {
             return structure_dict(james_close(g, g.class_of(a), g.class_of(b), Scale(coarse), budget));
           }, py::arg("a"), py::arg("b"), py::arg("coarse"), py::arg("budget") = kDefaultSearchBudget)
      .def("slt_check", [](const ChainGroupoid& g, double ball, double target, const std::string& mode) {
             const auto report = slt_check(g, Scale(ball), Scale(target), parse_mode(mode));
             py::list rows;
             for (const SltRow& r : report.rows) {
               py::dict d = verdict_dict(r.verdict);
               d["center"] = r.center;
               d["loop"] = r.loop;
               d["word"] = r.word.to_string();
               d["conjugator"] = r.conjugator ? py::object(py::str(r.conjugator->to_string())) : py::object(py::none());
               d["passing_target"] = r.passing_target ? py::object(py::float_(r.passing_target->epsilon)) : py::object(py::none());
               rows.append(d);
             }
             return rows;
           }, py::arg("ball"), py::arg("target"), py::arg("mode") = "uniform")
      .def("semilocal_simply_connected", [](const ChainGroupoid& g, double min_scale) -> py::object {
             const auto r = semilocal_simply_connected(g, Scale(min_scale));
             return r.radius ? py::object(py::float_(r.radius->epsilon)) : py::object(py::none());
           }, py::arg("min_scale"));

  m.def("punctured_homotopy_search",
        [](const MetricSpace& s, double fine, const std::vector<Vertex>& a, const std::vector<Vertex>& b, double scale,
           std::size_t budget) {
          const auto r = punctured_homotopy_search(s, Chain(s, Scale(fine), a), Chain(s, Scale(fine), b), Scale(scale), budget);
          py::dict d;
          d["found"] = r.witness.has_value();
          d["punctures"] = r.witness ? py::object(py::int_(r.witness->puncture_count())) : py::object(py::none());
          d["states"] = r.states;
          d["budget_exhausted"] = r.budget_exhausted;
          return d;
        },
        py::arg("space"), py::arg("fine"), py::arg("a"), py::arg("b"), py::arg("scale"),
        py::arg("budget") = kDefaultSearchBudget);

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
  }, py::arg("args"), "Run a command-line invocation in process; returns (exit code, stdout, stderr).");
}
