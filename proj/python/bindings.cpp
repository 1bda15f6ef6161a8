#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "safetysim/engine.hpp"
#include "safetysim/metrics.hpp"
#include "safetysim/policies.hpp"
#include "safetysim/scenario.hpp"

namespace py = pybind11;
using namespace safetysim;

namespace {

py::dict metrics_dict(const DayMetrics& m) {
  py::list per_area;
  for (const auto& a : m.per_area) {
    py::dict d;
    d["expected_loss"] = a.expected_loss;
    d["tail_prob"] = a.tail_prob;
    per_area.append(d);
  }
  py::dict out;
  out["expected_loss"] = m.expected_loss;
  out["tail_prob"] = m.tail_prob;
  out["per_area"] = per_area;
  return out;
}

// [area] -> list of (ahl, phl)
std::vector<std::vector<std::pair<int, int>>> incidents_of(const DayRecord& day) {
  std::vector<std::vector<std::pair<int, int>>> out;
  for (const auto& e : day.events) {
    auto& area = out.emplace_back();
    for (const auto& inc : e.incidents) area.emplace_back(inc.ahl, inc.phl);
  }
  return out;
}

// [area] -> (incidents, unsafe, safe)
std::vector<std::tuple<std::uint64_t, std::uint64_t, std::uint64_t>> counts_of(
    const DayRecord& day) {
  std::vector<std::tuple<std::uint64_t, std::uint64_t, std::uint64_t>> out;
  for (const auto& e : day.events) {
    out.emplace_back(e.counts.incidents, e.counts.unsafe, e.counts.safe);
  }
  return out;
}

// [type][area] -> (safe, unsafe)
std::vector<std::vector<std::pair<std::uint64_t, std::uint64_t>>> observations_of(
    const DayRecord& day, const Scenario& s) {
  std::vector<std::vector<std::pair<std::uint64_t, std::uint64_t>>> out(
      s.obs_type_count());
  for (std::size_t t = 0; t < s.obs_type_count(); ++t) {
    for (std::size_t a = 0; a < s.area_count(); ++a) {
      const auto& o = day.observations.at(t, a);
      out[t].emplace_back(o.safe, o.unsafe);
    }
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Discrete-time simulator of safety areas, observers and feedback";

  py::register_exception<ScenarioParseError>(m, "ScenarioParseError", PyExc_ValueError);
  py::register_exception<ScenarioValidationError>(m, "ScenarioValidationError",
                                                  PyExc_ValueError);
  py::register_exception<UnknownPolicyError>(m, "UnknownPolicyError", PyExc_ValueError);

  py::class_<SafetyAreaConfig>(m, "SafetyArea")
      .def_readonly("id", &SafetyAreaConfig::id)
      .def_readonly("lambda_star", &SafetyAreaConfig::lambda_star)
      .def_readonly("xi_base", &SafetyAreaConfig::xi_base)
      .def_readonly("alpha", &SafetyAreaConfig::alpha)
      .def_readonly("k_decay", &SafetyAreaConfig::k_decay)
      .def_readonly("theta0", &SafetyAreaConfig::theta0)
      .def_readonly("hl_probs", &SafetyAreaConfig::hl_probs);

  py::class_<ObservationTypeConfig>(m, "ObservationType")
      .def_readonly("id", &ObservationTypeConfig::id)
      .def_readonly("m", &ObservationTypeConfig::m)
      .def_readonly("rho", &ObservationTypeConfig::rho)
      .def_readonly("delta_neg", &ObservationTypeConfig::delta_neg)
      .def_readonly("eta_pos", &ObservationTypeConfig::eta_pos)
      .def_readonly("eta_neg", &ObservationTypeConfig::eta_neg);

  py::class_<Scenario>(m, "Scenario")
      .def_readonly("areas", &Scenario::areas)
      .def_readonly("obs_types", &Scenario::obs_types)
      .def_readwrite("delta_e", &Scenario::delta_e)
      .def_readonly("loss_vector", &Scenario::loss_vector)
      .def_readwrite("horizon_days", &Scenario::horizon_days)
      .def("__eq__", [](const Scenario& a, const Scenario& b) { return a == b; });

  m.def("load_scenario", &load_scenario, py::arg("text"),
        "Parse and validate a scenario from JSON text.");
  m.def("load_scenario_file", &load_scenario_file, py::arg("path"));
  m.def("serialize_scenario", &serialize_scenario, py::arg("scenario"));
  m.def("validate_scenario", &validate_scenario, py::arg("scenario"),
        "List of invariant violations; empty when the scenario is valid.");

  m.def("xi_of_theta", &xi_of_theta, py::arg("theta"), py::arg("xi_base"));
  m.def("decay_theta", &decay_theta, py::arg("theta"), py::arg("k_decay"));
  m.def("expected_hl_count", &expected_hl_count, py::arg("lambda_star"),
        py::arg("xi"), py::arg("alpha"), py::arg("p_j"));
  m.def("worst_case_metrics",
        [](const Scenario& s) { return metrics_dict(worst_case_metrics(s)); },
        py::arg("scenario"));

  py::class_<Policy>(m, "Policy").def_property_readonly("name", &Policy::name);
  m.def("make_policy", &make_policy, py::arg("spec"),
        "Build a policy from 'name' or 'name:args', e.g. 'weighted:0.5,0.5'.");
  m.def("policy_names", [] { return PolicyRegistry::global().names(); });

  py::class_<DayRecord>(m, "DayRecord")
      .def_readonly("day", &DayRecord::day)
      .def_readonly("theta", &DayRecord::theta)
      .def_readonly("xi", &DayRecord::xi)
      .def_property_readonly("expected_loss",
                             [](const DayRecord& d) { return d.metrics.expected_loss; })
      .def_property_readonly("tail_prob",
                             [](const DayRecord& d) { return d.metrics.tail_prob; })
      .def_property_readonly("metrics",
                             [](const DayRecord& d) { return metrics_dict(d.metrics); })
      .def_property_readonly("counts", &counts_of)
      .def_property_readonly("incidents", &incidents_of)
      .def_property_readonly("shares", [](const DayRecord& d) {
        std::vector<std::vector<double>> out;
        for (const auto& p : d.decision.per_type) out.push_back(p.shares);
        return out;
      });

  py::class_<Trajectory>(m, "Trajectory")
      .def_readonly("policy_name", &Trajectory::policy_name)
      .def_readonly("seed", &Trajectory::seed)
      .def_readonly("days", &Trajectory::days)
      .def("observations",
           [](const Trajectory& t, std::size_t i) {
             return observations_of(t.days.at(i), *t.scenario);
           },
           py::arg("index"), "[type][area] (safe, unsafe) recorded on days[index].")
      .def("incident_totals", [](const Trajectory& t) { return incident_totals(t); });

  py::class_<CountPercentiles>(m, "CountPercentiles")
      .def_readonly("p05", &CountPercentiles::p05)
      .def_readonly("p50", &CountPercentiles::p50)
      .def_readonly("p95", &CountPercentiles::p95)
      .def("__repr__", [](const CountPercentiles& p) {
        return std::to_string(p.p50) + " (" + std::to_string(p.p05) + "-" +
               std::to_string(p.p95) + ")";
      });

  py::class_<EnsembleSummary>(m, "EnsembleSummary")
      .def_readonly("policy_name", &EnsembleSummary::policy_name)
      .def_readonly("base_seed", &EnsembleSummary::base_seed)
      .def_readonly("replications", &EnsembleSummary::replications)
      .def_readonly("expected_loss_mean", &EnsembleSummary::expected_loss_mean)
      .def_readonly("expected_loss_std", &EnsembleSummary::expected_loss_std)
      .def_readonly("tail_prob_mean", &EnsembleSummary::tail_prob_mean)
      .def_readonly("tail_prob_std", &EnsembleSummary::tail_prob_std)
      .def_readonly("incident_totals", &EnsembleSummary::incident_totals)
      .def_readonly("incident_percentiles", &EnsembleSummary::incident_percentiles);

  m.def(
      "run_simulation",
      [](const Scenario& s, const Policy& policy, std::uint64_t seed, int horizon) {
        py::gil_scoped_release release;
        return run_simulation(s, policy, seed, horizon);
      },
      py::arg("scenario"), py::arg("policy"), py::arg("seed"), py::arg("horizon") = 0,
      "One replication; horizon 0 uses the scenario's horizon_days.");

  m.def(
      "run_ensemble",
      [](const Scenario& s, const Policy& policy, std::size_t reps,
         std::uint64_t base_seed, int horizon, unsigned threads) {
        py::gil_scoped_release release;
        return run_ensemble(s, policy, reps, base_seed, {horizon, threads});
      },
      py::arg("scenario"), py::arg("policy"), py::arg("replications"),
      py::arg("base_seed") = 42, py::arg("horizon") = 0, py::arg("threads") = 0,
      "Replications with seeds base_seed + i; threads 0 uses every core.");
}
