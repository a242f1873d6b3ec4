#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <stdexcept>
#include <string>

#include "doctheory/analysis.hpp"
#include "doctheory/chase.hpp"
#include "doctheory/dsl.hpp"
#include "doctheory/reductions.hpp"
#include "doctheory/report.hpp"

namespace py = pybind11;
using namespace pybind11::literals;
using namespace doctheory;

namespace {

Theory load_theory(const std::string& text) {
  auto th = parse_theory(text);
  if (th) return std::move(th).value();
  std::string msg;
  for (const auto& d : th.error()) msg += format_diagnostic(d) + "\n";
  throw py::value_error(msg);
}

Value load_values(const std::string& text, const Theory& th) {
  auto v = parse_value_sequence(text, th.precision);
  if (!v) throw py::value_error(format_diagnostic(v.error()));
  return std::move(v).value();
}

py::dict run(const Theory& th, const std::string& queue, const std::string& model, std::size_t fuel, bool elide) {
  ChaseOptions opts;
  opts.fuel = fuel;
  opts.elide_situations = elide;
  ChaseRun r;
  {
    py::gil_scoped_release release;
    r = run_chase(load_values(model, th), load_values(queue, th), th, opts);
  }
  return py::dict("status"_a = to_string(r.state.status), "reason"_a = to_string(r.state.reason),
                  "steps"_a = r.state.steps, "model_size"_a = r.state.model.size(),
                  "model"_a = print_value_lines(r.state.model), "queue"_a = print_value_lines(r.state.queue));
}

std::string analyze_json(const Theory& th, const std::string& queue, const std::string& model) {
  std::optional<Value> q, m;
  if (!queue.empty()) q = load_values(queue, th);
  if (!model.empty() || q) m = load_values(model, th);
  return verdict_json(analyze(th, m, q), th).dump();
}

py::tuple encoded(const Encoded& e) { return py::make_tuple(e.theory, print_value_lines(e.queue)); }

}  // namespace

PYBIND11_MODULE(_doctheory, m) {
  m.doc() = "Document theories: chase engine, static analysis and reductions.";

  py::class_<Theory>(m, "Theory")
      .def_static("parse", &load_theory, "text"_a)
      .def_readonly("name", &Theory::name)
      .def_property_readonly("forms", [](const Theory& th) {
        std::vector<std::string> out;
        for (const auto& f : th.forms) out.push_back(f.name);
        return out;
      })
      .def_property_readonly("fields", [](const Theory& th) {
        std::vector<std::string> out;
        for (const auto& f : th.fields) out.push_back(f.name);
        return out;
      })
      .def_readonly("transactions", &Theory::transactions)
      .def("print", &print_theory)
      .def("__eq__", [](const Theory& a, const Theory& b) { return a == b; })
      .def("__repr__", [](const Theory& th) { return "<Theory " + th.name + ">"; });

  m.def("run", &run, "theory"_a, "queue"_a, "model"_a = "", "fuel"_a = std::size_t{1'000'000},
        "elide_situations"_a = false);
  m.def("_analyze", &analyze_json, "theory"_a, "queue"_a = "", "model"_a = "");
  m.def("normalize_value", [](const std::string& text) {
    auto v = parse_value(text);
    if (!v) throw py::value_error(format_diagnostic(v.error()));
    return to_string(*v);
  });
  m.def("encode_tm", [](const std::string& text) {
    auto tm = parse_tm(text);
    if (!tm) throw py::value_error(format_diagnostic(tm.error()));
    auto e = encode_tm(*tm);
    if (!e) throw py::value_error(e.error().message);
    return encoded(*e);
  });
  m.def("exp_theory", [](std::size_t k, std::size_t n) { return encoded(exp_theory({k, n})); }, "k"_a, "n"_a);
  m.def("expected_counts", [](std::size_t k, std::size_t n) {
    auto c = expected_counts({k, n});
    if (!c) throw py::value_error(c.error().message);
    return py::make_tuple(c->model_size, c->steps);
  }, "k"_a, "n"_a);
}
