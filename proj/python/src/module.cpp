#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "omlkit/checker.hpp"
#include "omlkit/generator.hpp"
#include "omlkit/known.hpp"
#include "omlkit/lattice.hpp"
#include "omlkit/states.hpp"
#include "omlkit/terms.hpp"

namespace py = pybind11;
using namespace omlkit;

namespace {

Statement resolve(const std::string& eq) {
  if (const RegistryEntry* e = find_entry(eq)) return e->statement;
  return parse_statement(eq);
}

int element(const FiniteOrthoLattice& L, const py::handle& h) {
  if (py::isinstance<py::int_>(h)) {
    int x = h.cast<int>();
    if (x < 0 || x >= L.size()) throw py::index_error("element index out of range");
    return x;
  }
  auto name = h.cast<std::string>();
  auto x = L.element_by_name(name);
  if (!x) throw py::key_error("no element named " + name);
  return *x;
}

py::dict report_dict(const FiniteOrthoLattice& L, const CheckReport& r) {
  py::dict d;
  d["verdict"] = std::string(to_string(r.verdict));
  d["holds"] = r.verdict == Verdict::holds;
  py::object w = py::none();
  if (r.witness) {
    py::dict wd;
    for (std::size_t i = 0; i < r.witness->vars.size(); ++i) {
      wd[py::str(r.witness->vars[i])] = L.element_name(r.witness->values[i]);
    }
    w = wd;
  }
  d["witness"] = w;
  d["examined"] = r.examined;
  d["pruned"] = r.pruned;
  d["ms"] = r.elapsed.count();
  return d;
}

CheckOptions options(int workers, double timeout, bool prune, const std::string& order) {
  CheckOptions o;
  o.workers = workers;
  o.timeout_seconds = timeout;
  o.prune = prune;
  if (order == "depth") o.order = VarOrder::depth;
  else if (order != "planned") throw py::value_error("order must be 'planned' or 'depth'");
  return o;
}

py::dict state_dict(const FiniteOrthoLattice& L, const State& s) {
  py::dict d;
  for (int e = 0; e < L.size(); ++e) d[py::str(L.element_name(e))] = s.value[e].get_str();
  return d;
}

StateModel model_of(const std::string& m) {
  if (m == "auto") return StateModel::automatic;
  if (m == "atoms") return StateModel::atoms;
  if (m == "elements") return StateModel::elements;
  throw py::value_error("model must be 'auto', 'atoms' or 'elements'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Finite orthomodular lattice toolkit";

  py::class_<FiniteOrthoLattice>(m, "Lattice")
      .def_property_readonly("size", &FiniteOrthoLattice::size)
      .def_readonly("name", &FiniteOrthoLattice::name)
      .def_property_readonly("elements",
                             [](const FiniteOrthoLattice& L) {
                               std::vector<std::string> out;
                               for (int e = 0; e < L.size(); ++e) out.push_back(L.element_name(e));
                               return out;
                             })
      .def_property_readonly("block_count", &FiniteOrthoLattice::block_count)
      .def("comp", [](const FiniteOrthoLattice& L, py::handle x) { return L.element_name(L.comp(element(L, x))); })
      .def("meet", [](const FiniteOrthoLattice& L, py::handle x, py::handle y) {
        return L.element_name(L.meet(element(L, x), element(L, y)));
      })
      .def("join", [](const FiniteOrthoLattice& L, py::handle x, py::handle y) {
        return L.element_name(L.join(element(L, x), element(L, y)));
      })
      .def("leq", [](const FiniteOrthoLattice& L, py::handle x, py::handle y) {
        return L.leq(element(L, x), element(L, y));
      })
      .def("is_orthomodular", [](const FiniteOrthoLattice& L) { return is_orthomodular(L).holds; })
      .def("is_distributive", [](const FiniteOrthoLattice& L) { return is_distributive(L); })
      .def("__len__", &FiniteOrthoLattice::size)
      .def("__repr__", [](const FiniteOrthoLattice& L) {
        return "<Lattice " + L.name + " with " + std::to_string(L.size()) + " elements>";
      });

  m.def("fixture_names", &fixture_names);
  m.def("fixture", [](const std::string& name) { return fixture(name); }, py::arg("name"));
  m.def("load_lattice", [](const std::string& spec) { return load_lattice(spec); }, py::arg("spec"),
        "Fixture name, one-line GDF diagram, or path to a table or GDF file.");
  m.def("wagon_wheel", &wagon_wheel, py::arg("n"));
  m.def("known_verdicts", [](const std::string& name) {
    std::vector<std::tuple<std::string, bool, std::string>> out;
    for (const auto& k : known_verdicts(name)) out.emplace_back(k.statement, k.holds, k.source);
    return out;
  });

  m.def("parse_statement", [](const std::string& text) { return to_string(parse_statement(text)); }, py::arg("text"),
        "Canonical text of a statement; raises ValueError on syntax errors.");
  m.def("registry_ids", [] {
    std::vector<std::string> ids;
    for (const auto& e : registry()) ids.push_back(e.id);
    return ids;
  });
  m.def("registry_entry", [](const std::string& id) {
    const RegistryEntry* e = find_entry(id);
    if (!e) throw py::key_error("unknown registry id: " + id);
    py::dict d;
    d["id"] = e->id;
    d["text"] = e->text;
    d["variables"] = e->statement.variables;
    d["provenance"] = e->provenance;
    d["note"] = e->note;
    return d;
  });

  m.def("check",
        [](const FiniteOrthoLattice& L, const std::string& eq, int workers, double timeout, bool prune,
           const std::string& order) {
          Statement s = resolve(eq);
          CheckReport r;
          {
            py::gil_scoped_release release;
            r = check(L, s, options(workers, timeout, prune, order));
          }
          return report_dict(L, r);
        },
        py::arg("lattice"), py::arg("eq"), py::arg("workers") = 1, py::arg("timeout") = 0.0,
        py::arg("prune") = true, py::arg("order") = "planned",
        "Check a registry id or statement text on a lattice.");
  m.def("check_ngo_dp",
        [](const FiniteOrthoLattice& L, int n) { return report_dict(L, check_ngo_dp(L, n)); },
        py::arg("lattice"), py::arg("n"));
  m.def("check_noa", [](const FiniteOrthoLattice& L, int n) { return report_dict(L, check_noa(L, n)); },
        py::arg("lattice"), py::arg("n"));
  m.def("evaluate",
        [](const FiniteOrthoLattice& L, const std::string& term, const std::map<std::string, py::object>& values) {
          Assignment a;
          for (const auto& [k, v] : values) {
            a.vars.push_back(k);
            a.values.push_back(element(L, v));
          }
          return L.element_name(evaluate(L, parse_term(term), a));
        },
        py::arg("lattice"), py::arg("term"), py::arg("values"));

  m.def("scan",
        [](const std::vector<std::string>& corpus, const std::string& eq, bool first_violator, int workers) {
          std::vector<GreechieDiagram> ds;
          for (const auto& line : corpus) ds.push_back(parse_diagram(line));
          ScanOptions so;
          so.first_violator = first_violator;
          so.workers = workers;
          ScanResult r = scan(ds, resolve(eq), so);
          py::dict d;
          std::vector<std::pair<std::string, std::string>> items;
          for (const auto& it : r.items) {
            items.emplace_back(it.gdf, it.error ? "ERROR" : std::string(to_string(it.report.verdict)));
          }
          d["items"] = items;
          d["violating"] = r.violating;
          d["satisfying"] = r.satisfying;
          d["errored"] = r.errored;
          d["inconclusive"] = r.inconclusive;
          return d;
        },
        py::arg("corpus"), py::arg("eq"), py::arg("first_violator") = false, py::arg("workers") = 1);

  m.def("generate",
        [](int min_blocks, int max_blocks, std::optional<int> atoms, bool legless, int workers) {
          GenSpec spec;
          spec.min_blocks = min_blocks;
          spec.max_blocks = max_blocks < 0 ? min_blocks : max_blocks;
          spec.atoms = atoms;
          spec.legless = legless;
          spec.workers = workers;
          std::vector<std::string> out;
          generate(spec, [&](const GreechieDiagram& d) { out.push_back(serialize_diagram(d)); });
          return out;
        },
        py::arg("min_blocks"), py::arg("max_blocks") = -1, py::arg("atoms") = py::none(), py::arg("legless") = false,
        py::arg("workers") = 1);
  m.def("count",
        [](int min_blocks, int max_blocks, std::optional<int> atoms, bool legless, int workers) {
          GenSpec spec;
          spec.min_blocks = min_blocks;
          spec.max_blocks = max_blocks < 0 ? min_blocks : max_blocks;
          spec.atoms = atoms;
          spec.legless = legless;
          spec.workers = workers;
          py::gil_scoped_release release;
          return count(spec).total();
        },
        py::arg("min_blocks"), py::arg("max_blocks") = -1, py::arg("atoms") = py::none(), py::arg("legless") = false,
        py::arg("workers") = 1);
  m.def("canonical_gdf", [](const std::string& gdf) {
    return serialize_diagram(from_canonical_form(canonical_form(parse_diagram(gdf))));
  });
  m.def("is_legless", [](const std::string& gdf) { return is_legless(parse_diagram(gdf)); });

  m.def("admits_strong_set",
        [](const FiniteOrthoLattice& L, const std::string& model) {
          StrongSetReport r = admits_strong_set(L, model_of(model));
          py::dict d;
          d["strong"] = r.strong;
          d["failing_pair"] = r.failing_pair
                                  ? py::object(py::make_tuple(L.element_name(r.failing_pair->first),
                                                              L.element_name(r.failing_pair->second)))
                                  : py::object(py::none());
          d["failing_optimum"] = r.failing_optimum ? py::object(py::str(r.failing_optimum->get_str())) : py::object(py::none());
          d["no_state_for_p"] = r.no_state_for_p;
          d["lp_solves"] = r.lp_solves;
          d["model"] = r.model == StateModel::atoms ? "atoms" : "elements";
          return d;
        },
        py::arg("lattice"), py::arg("model") = "auto");
  m.def("admits_classical_strong",
        [](const FiniteOrthoLattice& L) {
          ClassicalStrongReport r = admits_classical_strong(L);
          py::dict d;
          d["holds"] = r.holds;
          d["infeasible"] = r.infeasible;
          d["note"] = r.note;
          d["witness"] = r.witness ? py::object(state_dict(L, *r.witness)) : py::object(py::none());
          return d;
        },
        py::arg("lattice"));
  m.def("find_state",
        [](const FiniteOrthoLattice& L, const std::map<std::string, std::string>& fixed, const std::string& q,
           bool maximize, const std::string& model) {
          std::vector<std::pair<int, Rational>> fx;
          for (const auto& [k, v] : fixed) fx.emplace_back(element(L, py::str(k)), Rational(v));
          StateResult r = find_state(L, fx, element(L, py::str(q)), maximize ? Objective::maximize : Objective::minimize,
                                     model_of(model));
          if (!r.feasible) return py::object(py::none());
          return py::object(py::make_tuple(r.optimum.get_str(), state_dict(L, r.state)));
        },
        py::arg("lattice"), py::arg("fixed"), py::arg("q"), py::arg("maximize") = false, py::arg("model") = "auto",
        "Exact optimum of m(q) over states with the fixed values (fractions as strings), or None.");

  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ParseError& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    } catch (const DiagramError& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    } catch (const LatticeError& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });
}
