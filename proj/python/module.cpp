#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "avasskit/decide.hpp"
#include "avasskit/errors.hpp"
#include "avasskit/frontend.hpp"
#include "avasskit/generators.hpp"
#include "avasskit/omega.hpp"
#include "avasskit/presburger.hpp"
#include "avasskit/prestar.hpp"
#include "avasskit/render.hpp"
#include "avasskit/simulator.hpp"

namespace py = pybind11;
using namespace avasskit;

namespace {

// Counters cross the boundary as Python ints of any size.
py::object toPy(const Integer& v) {
  return py::reinterpret_steal<py::object>(PyLong_FromString(v.str().c_str(), nullptr, 10));
}

Integer fromPy(const py::handle& v) { return Integer(py::str(v).cast<std::string>()); }

py::list toPy(const std::vector<Integer>& v) {
  py::list out;
  for (const Integer& x : v) {
    out.append(toPy(x));
  }
  return out;
}

py::tuple toPy(const Machine& m, const Configuration& c) {
  return py::make_tuple(m.states[c.state], toPy(c.counters));
}

Configuration config(const Machine& m, const std::string& text) {
  return parseConfiguration(m, text);
}

py::dict verdictDict(const Machine& m, const TransitionVerdict& v) {
  py::dict out;
  out["holds"] = v.holds;
  out["transition"] = v.transition ? py::object(py::str(describe(m, *v.transition)))
                                   : py::object(py::none());
  out["counterexample"] = v.counterexample ? toPy(*v.counterexample) : py::object(py::none());
  return out;
}

py::object fromJson(const nlohmann::json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

}  // namespace

PYBIND11_MODULE(_avasskit, m) {
  m.doc() = "Pre*, reachability and well-structuredness analyses for affine counter machines";

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", PyExc_RuntimeError);

  py::class_<SemilinearSet>(m, "SemilinearSet")
      .def(py::init([](const std::vector<std::tuple<py::object, py::object, py::object,
                                                    py::object>>& clauses) {
             std::vector<Clause> out;
             for (const auto& [lo, hi, mod, res] : clauses) {
               std::optional<Integer> upper;
               if (!hi.is_none()) {
                 upper = fromPy(hi);
               }
               if (auto c = Clause::make(fromPy(lo), upper, fromPy(mod), fromPy(res))) {
                 out.push_back(*c);
               }
             }
             return SemilinearSet(std::move(out));
           }),
           py::arg("clauses"),
           "Union of clauses (lo, hi or None, modulus, residue).")
      .def("__contains__", [](const SemilinearSet& s, py::object n) { return s.contains(fromPy(n)); })
      .def("equals", &SemilinearSet::equals)
      .def("__eq__", &SemilinearSet::equals)
      .def("subset_of", &SemilinearSet::subsetOf)
      .def("union", &SemilinearSet::unite)
      .def("intersection", &SemilinearSet::intersect)
      .def("complement", &SemilinearSet::complement)
      .def("simplified", &SemilinearSet::simplified)
      .def_property_readonly("is_empty", &SemilinearSet::isEmpty)
      .def_property_readonly("is_full", &SemilinearSet::isFullN)
      .def("min_element", [](const SemilinearSet& s) {
        auto v = s.minElement();
        return v ? toPy(*v) : py::object(py::none());
      })
      .def("clauses", [](const SemilinearSet& s) {
        py::list out;
        for (const Clause& c : s.clauses()) {
          out.append(py::make_tuple(toPy(c.lo()), c.hi() ? toPy(*c.hi()) : py::object(py::none()),
                                    toPy(c.modulus()), toPy(c.residue())));
        }
        return out;
      })
      .def("__str__", &SemilinearSet::str)
      .def("__repr__", [](const SemilinearSet& s) { return "SemilinearSet(" + s.str() + ")"; });

  py::class_<Machine>(m, "Machine")
      .def_readonly("name", &Machine::name)
      .def_readonly("dim", &Machine::dim)
      .def_readonly("states", &Machine::states)
      .def_property_readonly("flavor", [](const Machine& mm) { return str(mm.flavor); })
      .def_property_readonly("transitions", [](const Machine& mm) {
        std::vector<std::string> out;
        for (std::size_t i = 0; i < mm.transitions.size(); ++i) {
          out.push_back(describe(mm, i));
        }
        return out;
      })
      .def("text", &serializeMachine)
      .def("__repr__", [](const Machine& mm) {
        return "<Machine " + mm.name + ": " + std::to_string(mm.states.size()) + " states, " +
               std::to_string(mm.transitions.size()) + " transitions>";
      });

  m.def("parse_machine", [](const std::string& text) { return parseMachine(text); },
        py::arg("text"));
  m.def("classify", [](const Machine& mm) { return fromJson(toJson(classify(mm))); });

  m.def(
      "prestar",
      [](const Machine& mm, const std::string& target, bool upward) {
        const Configuration t = config(mm, target);
        PreStarResult r = upward ? computePreStarUpward(mm, t) : computePreStar(mm, t);
        py::dict out;
        for (std::size_t q = 0; q < mm.states.size(); ++q) {
          out[py::str(mm.states[q])] = r.sets[q];
        }
        return out;
      },
      py::arg("machine"), py::arg("target"), py::arg("upward") = false,
      "Pre* of a configuration such as 'q1:19', one set per state.");

  m.def("reachable", [](const Machine& mm, const std::string& from, const std::string& to) {
    return reachable(mm, config(mm, from), config(mm, to));
  });
  m.def("coverable", [](const Machine& mm, const std::string& from, const std::string& to) {
    return coverable(mm, config(mm, from), config(mm, to));
  });
  m.def("coverable_via_reduction",
        [](const Machine& mm, const std::string& from, const std::string& to) {
          return coverableViaReduction(mm, config(mm, from), config(mm, to));
        });
  m.def("control_state_reachable",
        [](const Machine& mm, const std::string& from, const std::string& state) {
          return controlStateReachable(mm, config(mm, from), mm.requireState(state));
        });
  m.def("reachable_total_positive",
        [](const Machine& mm, const std::string& from, const std::string& to) {
          return reachableTotallyPositive(mm, config(mm, from), config(mm, to));
        });

  m.def("is_well_structured",
        [](const Machine& mm) { return verdictDict(mm, isWellStructured(mm)); });
  m.def("is_strongly_monotone",
        [](const Machine& mm) { return verdictDict(mm, isStronglyMonotone(mm)); });
  m.def("is_functional", [](const Machine& mm) {
    std::vector<bool> out;
    for (const auto& v : isFunctional(mm)) {
      out.push_back(v.functional);
    }
    return out;
  });

  m.def(
      "is_wqo",
      [](const std::string& formula) {
        const WqoVerdict v = isWqo(parseFormula(formula, {"x", "y"}));
        py::dict out;
        out["result"] = str(v.kind);
        out["witness"] = toPy(v.witness);
        out["bad_residue"] = v.badResidue ? toPy(*v.badResidue) : py::object(py::none());
        return out;
      },
      py::arg("formula"), "Well quasi ordering check for a formula over x, y.");

  m.def(
      "post_star",
      [](const Machine& mm, const std::string& from, py::object maxValue) {
        SimBudget budget;
        budget.maxValue = fromPy(maxValue);
        const Exploration e = postStar(mm, config(mm, from), budget);
        py::list configs;
        for (const Configuration& c : e.configs) {
          configs.append(toPy(mm, c));
        }
        configs.attr("sort")();
        return py::make_tuple(configs, e.truncated);
      },
      py::arg("machine"), py::arg("source"), py::arg("max_value") = 1000,
      "Bounded forward closure: (sorted configurations, truncated).");

  m.def("build_n1", [](const Machine& mm, const std::string& q1) {
    return buildN1(mm, mm.requireState(q1));
  });
  m.def("build_n2", [](const Machine& mm, const std::string& q1) {
    return buildN2(mm, mm.requireState(q1));
  });
  m.def("build_pcp_machine", [](const std::vector<std::pair<std::string, std::string>>& tiles) {
    PcpInstance p{tiles};
    p.validate();
    return buildPcpMachine(p);
  });
  m.def("builtin_examples", &builtinExamples);
}
