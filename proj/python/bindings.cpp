//
// Copyright 2026 The prunevc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "prunevc/matcher.hpp"
#include "prunevc/oracle.hpp"
#include "prunevc/pruner.hpp"
#include "prunevc/term.hpp"
#include "prunevc/vcgen.hpp"

namespace py = pybind11;
using namespace prunevc;

namespace {

// Python-side term: keeps its session alive.
struct PyTerm {
  std::shared_ptr<Session> session;
  Term term;
};

struct PySession {
  std::shared_ptr<Session> session = std::make_shared<Session>();

  PyTerm wrap(Term t) const { return PyTerm{session, t}; }

  Term own(const PyTerm& t) const {
    if (t.session != session) throw py::value_error("term belongs to a different Session");
    return t.term;
  }
};

CommutativityRegistry registry_of(const std::vector<std::string>& extra) {
  CommutativityRegistry reg;
  for (const std::string& s : extra) reg.add(s);
  return reg;
}

Substitution substitution_of(const std::map<std::string, std::string>& mapping) {
  Substitution s;
  for (const auto& [from, to] : mapping) s.add(from, to);
  return s;
}

std::map<std::string, std::string> mapping_of(const Substitution& s) {
  return {s.mapping().begin(), s.mapping().end()};
}

}  // namespace

PYBIND11_MODULE(_prunevc, m) {
  m.doc() = "Hash-consed formulas, constant matching and VC pruning";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<GraphError>(m, "GraphError", PyExc_ValueError);
  py::register_exception<EvalError>(m, "EvalError", PyExc_ValueError);
  py::register_exception<UniverseTooLarge>(m, "UniverseTooLarge", PyExc_RuntimeError);

  py::class_<PyTerm>(m, "Term")
      .def_property_readonly("head", [](const PyTerm& t) { return t.term.head(); })
      .def_property_readonly("kind", [](const PyTerm& t) { return std::string(to_string(t.term.kind())); })
      .def_property_readonly("children",
                             [](const PyTerm& t) {
                               std::vector<PyTerm> out;
                               for (Term c : t.term.children()) out.push_back({t.session, c});
                               return out;
                             })
      .def_property_readonly("id", [](const PyTerm& t) { return t.term.id(); })
      .def("__eq__", [](const PyTerm& a, const PyTerm& b) {
        return a.session == b.session && a.term == b.term;
      })
      .def("__hash__", [](const PyTerm& t) { return std::hash<Term>{}(t.term); })
      .def("__str__", [](const PyTerm& t) { return print_term(t.term); })
      .def("__repr__", [](const PyTerm& t) { return "Term('" + print_term(t.term) + "')"; });

  py::class_<PySession>(m, "Session")
      .def(py::init<>())
      .def("parse", [](const PySession& s, const std::string& text) {
        return s.wrap(parse_term(*s.session, text));
      })
      .def("normalize",
           [](const PySession& s, const PyTerm& t, const std::vector<std::string>& commutative) {
             return s.wrap(normalize(*s.session, s.own(t), registry_of(commutative)));
           },
           py::arg("term"), py::arg("commutative") = std::vector<std::string>{})
      .def("simplify", [](const PySession& s, const PyTerm& t) {
        return s.wrap(simplify(*s.session, s.own(t)));
      })
      .def("substitute",
           [](const PySession& s, const PyTerm& t, const std::map<std::string, std::string>& m) {
             return s.wrap(apply_substitution(*s.session, s.own(t), substitution_of(m)));
           })
      .def("constants", [](const PySession& s, const PyTerm& t) {
        return collect_constants(s.own(t));
      })
      .def("build_substitution",
           [](const PySession& s, const PyTerm& old_vc, const PyTerm& new_vc,
              std::int64_t w_env, std::int64_t w_lcs) {
             MatchOptions opts;
             opts.weights = {w_env, w_lcs};
             Session& ses = *s.session;
             const Term a = normalize(ses, s.own(old_vc), opts.registry);
             const Term b = normalize(ses, s.own(new_vc), opts.registry);
             return mapping_of(build_substitution(a, b, opts));
           },
           py::arg("old"), py::arg("new"), py::arg("w_env") = 10, py::arg("w_lcs") = 1)
      .def("prune",
           [](const PySession& s, const PyTerm& old_vc, const PyTerm& new_vc, bool match,
              std::int64_t w_env, std::int64_t w_lcs,
              const std::vector<std::string>& commutative) {
             PruneOptions opts;
             opts.match_constants = match;
             opts.match.weights = {w_env, w_lcs};
             opts.match.registry = registry_of(commutative);
             const PruneResult r =
                 prune_with_details(*s.session, s.own(old_vc), s.own(new_vc), opts);
             return std::make_pair(s.wrap(r.pruned), mapping_of(r.substitution));
           },
           py::arg("old"), py::arg("new"), py::arg("match") = true, py::arg("w_env") = 10,
           py::arg("w_lcs") = 1, py::arg("commutative") = std::vector<std::string>{})
      .def("prune_simple", [](const PySession& s, const PyTerm& p1, const PyTerm& p2) {
        return s.wrap(prune_simple(*s.session, s.own(p1), s.own(p2)));
      })
      .def("implies", [](const PySession& s, const PyTerm& a, const PyTerm& b) {
        return implies(s.own(a), s.own(b));
      })
      .def("vc", [](const PySession& s, const std::string& graph_text) {
        return s.wrap(vc(*s.session, parse_graph(*s.session, graph_text)));
      })
      .def("behaviors", [](const PySession& s, const std::string& graph_text) {
        std::map<NodeId, std::tuple<PyTerm, PyTerm, PyTerm>> out;
        for (const auto& [id, b] : behaviors(*s.session, parse_graph(*s.session, graph_text))) {
          out.emplace(id, std::make_tuple(s.wrap(b.alpha), s.wrap(b.beta), s.wrap(b.gamma)));
        }
        return out;
      })
      .def("is_unsat",
           [](const PySession& s, const PyTerm& t, std::int64_t lo, std::int64_t hi) {
             return is_unsat(s.own(t), Universe{lo, hi});
           },
           py::arg("term"), py::arg("lo") = -4, py::arg("hi") = 7)
      .def("check",
           [](const PySession& s, const PyTerm& p1, const PyTerm& p2) {
             const PruneCheck c = check_prune_correct(*s.session, s.own(p1), s.own(p2));
             std::optional<std::string> cex;
             if (c.counterexample) cex = c.counterexample->to_string();
             return std::make_pair(std::string(to_string(c.verdict)), cex);
           });

  m.def("lcs_length", [](const std::string& a, const std::string& b) { return lcs_length(a, b); });
  m.def("max_weight_matching", [](const std::vector<std::vector<std::int64_t>>& rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r == 0 ? 0 : rows.front().size();
    SimilarityMatrix mat(r, c);
    for (std::size_t i = 0; i < r; ++i) {
      if (rows[i].size() != c) throw py::value_error("ragged weight matrix");
      for (std::size_t j = 0; j < c; ++j) mat.at(i, j) = rows[i][j];
    }
    return max_weight_matching(mat);
  });
  m.def("fuzz",
        [](std::uint64_t seed, std::size_t count, std::size_t max_atoms) {
          GeneratorParams params;
          params.max_atoms = max_atoms;
          params.max_depth = 3;
          std::vector<std::string> lines;
          for (const FuzzCase& c : run_fuzz(seed, count, params, Universe{})) {
            lines.push_back(format_report_line(c));
          }
          return lines;
        },
        py::arg("seed") = 0, py::arg("count") = 10, py::arg("max_atoms") = 8);
}
