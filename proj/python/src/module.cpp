#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sr/ctmn.hpp"
#include "sr/errors.hpp"
#include "sr/harness.hpp"
#include "sr/propagation.hpp"
#include "sr/scenario.hpp"

namespace py = pybind11;
using namespace sr;

namespace {

// Canonical name, file path or inline JSON text.
Scenario scenario_arg(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && s[first] == '{') return scenario_from_json_text(s);
  return resolve_scenario(s);
}

template <class E>
E parse_enum(const std::string& v, std::initializer_list<std::pair<const char*, E>> options, const char* what) {
  for (const auto& [name, e] : options)
    if (v == name) return e;
  throw ConfigError(std::string("unknown ") + what + " '" + v + "'");
}

py::dict named(const Scenario& sc, const std::vector<double>& x) {
  py::dict d;
  for (std::size_t i = 0; i < x.size(); ++i) d[py::str(sc.deployment.wlans[i].id)] = x[i];
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Spatial-reuse WLAN simulator core";

  auto base = py::register_exception<Error>(m, "Error");
  py::register_exception<DomainError>(m, "DomainError", base);
  py::register_exception<InfeasibleLink>(m, "InfeasibleLink", base);
  py::register_exception<ExplosionError>(m, "ExplosionError", base);
  py::register_exception<NumericalError>(m, "NumericalError", base);
  py::register_exception<ConfigError>(m, "ConfigError", base);
  py::register_exception<IoError>(m, "IoError", base);

  m.def(
      "path_loss",
      [](double d, double wall_frequency, double floor_frequency, double carrier_frequency_ghz) {
        RadioEnvironment env;
        env.wall_frequency = wall_frequency;
        env.floor_frequency = floor_frequency;
        env.carrier_frequency_ghz = carrier_frequency_ghz;
        env.validate();
        return path_loss(d, env);
      },
      py::arg("d"), py::arg("wall_frequency") = 0.0, py::arg("floor_frequency") = 0.0,
      py::arg("carrier_frequency_ghz") = 5.0, "Path loss in dB at distance d meters.");

  m.def("canonical_names", &canonical_names, "Names of the built-in scenarios.");
  m.def(
      "scenario_json", [](const std::string& s) { return scenario_to_json_text(scenario_arg(s)); },
      py::arg("scenario"), "Scenario as JSON text.");
  m.def(
      "random_scenario_json",
      [](std::size_t n, std::uint64_t seed) { return scenario_to_json_text(random_scenario(n, RandomParams{}, seed)); },
      py::arg("n_wlans"), py::arg("seed"));

  m.def(
      "solve",
      [](const std::string& s, std::optional<std::vector<int>> arms) {
        const auto sc = scenario_arg(s);
        const auto cfg = arms ? configs_from_arms(sc.deployment, *arms) : initial_configs(sc.deployment);
        std::vector<double> thr;
        {
          py::gil_scoped_release release;
          thr = solve(sc.deployment, cfg, sc.env, sc.phy).throughput;
        }
        return named(sc, thr);
      },
      py::arg("scenario"), py::arg("arms") = py::none(),
      "Per-WLAN throughput in bits/s for the initial or the given arms (-1 = inactive).");

  m.def(
      "isolation_bounds", [](const std::string& s) {
        const auto sc = scenario_arg(s);
        return named(sc, isolation_bounds(sc));
      },
      py::arg("scenario"));

  m.def(
      "run",
      [](const std::string& s, std::uint64_t iterations, const std::string& policy, const std::string& reward,
         const std::string& clustering, std::uint64_t seed, const std::string& ubound, bool static_config) {
        ExperimentConfig c;
        c.scenario = scenario_arg(s);
        c.iterations = iterations;
        c.seed = seed;
        c.static_config = static_config;
        c.policy = parse_enum<Policy>(policy, {{"ts", Policy::ThompsonSampling}, {"egreedy", Policy::EpsilonGreedy}},
                                      "policy");
        c.reward = parse_enum<RewardMode>(
            reward, {{"selfish", RewardMode::Selfish}, {"env", RewardMode::EnvironmentAware}}, "reward");
        c.clustering = parse_enum<ClusterPolicy>(
            clustering, {{"short", ClusterPolicy::ShortRange}, {"long", ClusterPolicy::LongRange}}, "clustering");
        c.ubound = parse_enum<UpperBound>(
            ubound, {{"isolation", UpperBound::Isolation}, {"ceiling", UpperBound::FixedCeiling}}, "ubound");
        c.validate();
        std::string summary, csv;
        {
          py::gil_scoped_release release;
          const auto r = run(c);
          summary = summary_json(r, c);
          csv = trajectory_csv(r);
        }
        py::dict out;
        out["summary"] = py::module_::import("json").attr("loads")(summary);
        out["trajectory_csv"] = csv;
        return out;
      },
      py::arg("scenario"), py::arg("iterations") = 1000, py::arg("policy") = "ts", py::arg("reward") = "selfish",
      py::arg("clustering") = "short", py::arg("seed") = 0, py::arg("ubound") = "isolation",
      py::arg("static") = false, "Run the learning loop; returns the summary dict and the trajectory CSV text.");

  m.def("jain_index", &jain_index, py::arg("x"));
  m.def("max_min", &max_min, py::arg("x"));
}
