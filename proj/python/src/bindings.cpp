/* Copyright 2026 The improvelearn Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

// Python bindings. Structured values cross the boundary as JSON text; the
// package wrapper turns them into dicts.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "improvelearn/errors.hpp"
#include "improvelearn/graph.hpp"
#include "improvelearn/graph_model.hpp"
#include "improvelearn/hypothesis.hpp"
#include "improvelearn/loss.hpp"
#include "improvelearn/rng.hpp"
#include "improvelearn/scenarios.hpp"
#include "improvelearn/trainer.hpp"

namespace py = pybind11;
namespace il = improvelearn;

namespace {

std::string run_json(const std::string& id, const std::string& params_json, std::uint64_t seed,
                     unsigned jobs) {
  il::Json params = params_json.empty() ? il::Json::object() : il::Json::parse(params_json);
  il::Json resolved = il::resolve_parameters(id, params);
  il::ScenarioResult r;
  {
    py::gil_scoped_release release;
    r = il::run_scenario(id, resolved, seed, jobs);
  }
  il::Json checks = il::Json::array();
  bool pass = true;
  for (const auto& c : il::check_expectations(id, resolved, r.metrics)) {
    pass = pass && c.pass;
    checks.push_back({{"metric", c.metric}, {"op", c.op}, {"threshold", c.threshold},
                      {"actual", c.actual}, {"pass", c.pass}});
  }
  il::Json out = {{"scenario", id},       {"seed", seed},     {"parameters", resolved},
                  {"columns", r.columns}, {"rows", r.rows},   {"metrics", r.metrics},
                  {"expectations", checks}, {"pass", pass}};
  return out.dump();
}

double threshold_loss(double h_t, double f_t, double r, const std::string& kind) {
  il::Hypothesis h = il::Hypothesis::threshold(h_t), f = il::Hypothesis::threshold(f_t);
  il::ImprovementMap d = il::ImprovementMap::interval_ball(r);
  il::InstanceSpace sp = il::InstanceSpace::line();
  il::LossSetting s{h, f, d, sp};
  return il::population_loss_uniform_line(s, il::parse_loss_kind(kind));
}

std::vector<il::NodeId> teach(std::size_t n, const std::vector<il::Edge>& edges,
                              const std::vector<il::Label>& labels) {
  il::GraphInstance inst(il::Graph(n, edges), labels);
  return il::teach_risk_averse_student(inst).teaching_set;
}

}  // namespace

PYBIND11_MODULE(_improvelearn, m) {
  m.doc() = "improvelearn native core";

  py::register_exception<il::Error>(m, "ImprovelearnError", PyExc_RuntimeError);
  py::register_exception<il::ArgumentError>(m, "ArgumentError", PyExc_ValueError);

  m.def("scenario_ids", &il::scenario_ids);
  m.def("catalogue_json", &il::catalogue_json);
  m.def("run_scenario_json", &run_json, py::arg("id"), py::arg("params_json") = "",
        py::arg("seed") = 0, py::arg("jobs") = 1);
  m.def("threshold_population_loss", &threshold_loss, py::arg("h_t"), py::arg("f_t"), py::arg("r"),
        py::arg("kind") = "improvement",
        "Exact loss of Threshold(h_t) against Threshold(f_t) on uniform [0, 1] with an interval ball.");
  m.def("zero_error_sample_size", &il::zero_error_sample_size, py::arg("n"), py::arg("d_min_plus"),
        py::arg("delta"), py::arg("c") = 1.0);
  m.def("teach", &teach, py::arg("n"), py::arg("edges"), py::arg("labels"),
        "Verified teaching set for the risk-averse student.");
  m.def("wbce_loss", &il::wbce_loss, py::arg("y_hat"), py::arg("y"), py::arg("w_fp"), py::arg("w_fn"));
  m.def("derive_seed", &il::derive_seed, py::arg("root_seed"), py::arg("stream_index"));
}
