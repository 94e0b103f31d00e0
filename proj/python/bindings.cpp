#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <chrono>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "mga/coverage.hpp"
#include "mga/errors.hpp"
#include "mga/integer.hpp"
#include "mga/json_io.hpp"
#include "mga/sampler.hpp"
#include "mga/smtlib.hpp"
#include "mga/strengthen.hpp"

namespace py = pybind11;
using nlohmann::json;

namespace {

// Integers cross the boundary as decimal strings.
mga::Int to_int(const std::string& s) {
  auto v = mga::parse_int(s);
  if (!v) throw py::value_error("not an integer: " + s);
  return *v;
}

std::string floor_div(const std::string& a, const std::string& b) {
  return mga::to_string(mga::signed_floor_div(to_int(a), to_int(b)));
}

std::string portion(const std::string& n, const std::string& k, const std::string& i) {
  return mga::to_string(mga::portion(to_int(n), to_int(k), to_int(i)));
}

bool holds(const std::string& problem, const std::string& model) {
  mga::ParsedProblem p = mga::parse_problem(problem);
  mga::Model m = mga::model_from_json(json::parse(model), p.declarations);
  return mga::eval_formula(p.assertion, m);
}

std::string approximate(const std::string& problem, const std::string& seed, std::uint64_t rng_seed) {
  mga::Problem p = mga::make_problem(mga::parse_problem(problem));
  mga::Model m = mga::model_from_json(json::parse(seed), p.declarations);
  if (!mga::eval_formula(p.assertion, m)) throw py::value_error("seed does not satisfy the problem");
  mga::Rng rng(rng_seed);
  mga::Approximation a = mga::approximate(p, m, rng);
  json out{{"intervals", mga::to_json(a.intervals)}};
  json lits = json::array();
  for (const auto& l : a.implicant.literals) lits.push_back(mga::print_formula(l));
  out["implicant"] = lits;
  return out.dump();
}

std::string sample(const std::string& problem, const std::string& solver_cmd, double solver_timeout,
                   std::uint64_t max_samples, std::uint64_t max_epochs, double time_limit,
                   std::uint64_t rng_seed, const std::string& strategy,
                   const std::optional<std::string>& seed) {
  mga::Problem p = mga::make_problem(mga::parse_problem(problem));
  mga::SamplerConfig cfg;
  cfg.max_samples = max_samples;
  cfg.max_epochs = max_epochs;
  cfg.total_time_limit = time_limit;
  cfg.rng_seed = rng_seed;
  if (strategy == "blocking") cfg.strategy = mga::SamplerConfig::Strategy::Blocking;
  else if (strategy != "random") throw py::value_error("strategy must be 'random' or 'blocking'");
  cfg.validate();
  std::optional<mga::Model> first;
  if (seed) first = mga::model_from_json(json::parse(*seed), p.declarations);
  mga::ProcessSolver solver(solver_cmd, std::chrono::milliseconds(static_cast<long>(solver_timeout * 1000)));
  json samples = json::array();
  mga::SamplerSinks sinks;
  sinks.sample = [&](const mga::Sample& s) { samples.push_back(json::parse(s.canonical)); };
  mga::RunStats stats;
  {
    py::gil_scoped_release release;
    stats = mga::mega_sample(p, cfg, solver, sinks, first);
  }
  return json{{"samples", samples}, {"stats", stats.to_json()}}.dump();
}

std::string coverage(const std::string& problem, const std::vector<std::string>& samples) {
  mga::ParsedProblem p = mga::parse_problem(problem);
  mga::CoverageLayout layout(p.assertion);
  mga::CoverageBitmap bm = layout.empty_bitmap();
  for (const auto& s : samples) layout.record(bm, mga::model_from_json(json::parse(s), p.declarations));
  return json{{"covered", bm.covered_bits()}, {"total", bm.total_bits()}, {"raw", mga::raw_coverage(bm)}}
      .dump();
}

}  // namespace

PYBIND11_MODULE(_megasample, m) {
  m.doc() = "Low-level bindings; use the megasample package instead.";

  py::register_exception<mga::SyntaxError>(m, "SyntaxError_");
  py::register_exception<mga::Unsat>(m, "Unsat");
  py::register_exception<mga::UnsupportedFeature>(m, "UnsupportedFeature");
  py::register_exception<mga::Error>(m, "Error");

  m.def("signed_floor_div", &floor_div);
  m.def("portion", &portion);
  m.def("holds", &holds);
  m.def("approximate", &approximate);
  m.def("sample", &sample);
  m.def("coverage", &coverage);
}
