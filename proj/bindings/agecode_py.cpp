#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>

#include "agecode/age.hpp"
#include "agecode/lambert.hpp"
#include "agecode/optimizer.hpp"
#include "agecode/pmf.hpp"
#include "agecode/simulator.hpp"
#include "agecode/sweep.hpp"

namespace py = pybind11;
using namespace agecode;

namespace {

SimConfig make_config(const SourcePmf& pmf, std::size_t k, double alpha, double lambda,
                      std::vector<double> lengths, std::uint64_t cycles, std::uint64_t seed,
                      const std::string& mode) {
  SimMode m = SimMode::kCycle;
  if (mode == "event")
    m = SimMode::kEvent;
  else if (mode != "cycle")
    throw std::invalid_argument("mode must be 'cycle' or 'event'");
  return SimConfig{pmf, {k, alpha}, {lambda}, std::move(lengths), cycles, seed, m};
}

}  // namespace

PYBIND11_MODULE(_agecode, m) {
  m.doc() = "Age-optimal codeword design for selective encoding";

  py::register_exception<SolveError>(m, "SolveError", PyExc_RuntimeError);

  py::class_<SourcePmf>(m, "SourcePmf")
      .def(py::init<std::vector<double>>(), py::arg("probs"))
      .def_static("zipf", &SourcePmf::zipf, py::arg("n"), py::arg("s"))
      .def_static("normalized", &SourcePmf::normalized, py::arg("weights"))
      .def_static("load", &SourcePmf::load, py::arg("path"))
      .def("__len__", &SourcePmf::size)
      .def("__getitem__",
           [](const SourcePmf& p, std::size_t i) {
             if (i >= p.size()) throw py::index_error();
             return p[i];
           })
      .def_property_readonly("probs", &SourcePmf::probs)
      .def("head_mass", &SourcePmf::head_mass, py::arg("k"));

  py::class_<EncodingPolicy>(m, "EncodingPolicy")
      .def(py::init([](std::size_t k, double alpha) {
             return EncodingPolicy{k, alpha};
           }),
           py::arg("k"), py::arg("alpha") = 0.0)
      .def_readwrite("k", &EncodingPolicy::k)
      .def_readwrite("alpha", &EncodingPolicy::alpha);

  py::class_<SystemParams>(m, "SystemParams")
      .def(py::init([](double lambda) { return SystemParams{lambda}; }), py::arg("lambda_"))
      .def_readwrite("lambda_", &SystemParams::lambda);

  py::class_<ConditionalPmf>(m, "ConditionalPmf")
      .def(py::init<std::vector<double>, double, double>(), py::arg("probs"), py::arg("q"),
           py::arg("a"))
      .def("__len__", &ConditionalPmf::size)
      .def_property_readonly("probs", &ConditionalPmf::probs)
      .def_property_readonly("q", &ConditionalPmf::q)
      .def_property_readonly("a", &ConditionalPmf::a);

  m.def(
      "conditional_pmf",
      [](const SourcePmf& pmf, std::size_t k, double alpha, double lambda) {
        return conditional_pmf(pmf, {k, alpha}, {lambda});
      },
      py::arg("pmf"), py::arg("k"), py::arg("alpha"), py::arg("lambda_"));

  py::class_<CodeMoments>(m, "CodeMoments")
      .def_readonly("mean_len", &CodeMoments::mean_len)
      .def_readonly("second_moment", &CodeMoments::second_moment);

  py::class_<CycleMoments>(m, "CycleMoments")
      .def_readonly("mean_cycle", &CycleMoments::mean_cycle)
      .def_readonly("second_moment_cycle", &CycleMoments::second_moment_cycle);

  py::class_<AgeReport>(m, "AgeReport")
      .def_readonly("delta", &AgeReport::delta)
      .def_readonly("code_moments", &AgeReport::code_moments)
      .def_readonly("q", &AgeReport::q)
      .def_readonly("a", &AgeReport::a);

  m.def("moments_of_m", &moments_of_m, py::arg("q"));
  m.def(
      "code_moments",
      [](const ConditionalPmf& cond, const std::vector<double>& lengths) {
        return code_moments(cond, lengths);
      },
      py::arg("cond"), py::arg("lengths"));
  m.def("cycle_moments", &cycle_moments, py::arg("code"), py::arg("q"), py::arg("lambda_"));
  m.def("age_from_moments", &age_from_moments, py::arg("code"), py::arg("a"));
  m.def(
      "average_age",
      [](const ConditionalPmf& cond, const std::vector<double>& lengths) {
        return average_age(cond, lengths);
      },
      py::arg("cond"), py::arg("lengths"));
  m.def("average_age_via_cycles", &average_age_via_cycles, py::arg("cycle"), py::arg("code"));

  m.def("lambert_w0", &lambert_w0, py::arg("y"));
  m.def("lambert_w0_from_log", &lambert_w0_from_log, py::arg("log_y"));

  py::class_<SolverOptions>(m, "SolverOptions")
      .def(py::init<>())
      .def_readwrite("tol", &SolverOptions::tol)
      .def_readwrite("max_outer", &SolverOptions::max_outer)
      .def_readwrite("max_inner", &SolverOptions::max_inner);

  py::class_<CodeDesign>(m, "CodeDesign")
      .def_readonly("lengths", &CodeDesign::lengths)
      .def_readonly("optimal_age", &CodeDesign::optimal_age)
      .def_readonly("beta_star", &CodeDesign::beta_star)
      .def_readonly("kraft_sum", &CodeDesign::kraft_sum)
      .def_readonly("mean_len", &CodeDesign::mean_len)
      .def_readonly("rounded_lengths", &CodeDesign::rounded_lengths)
      .def_readonly("rounded_age", &CodeDesign::rounded_age);

  m.def("lengths_for", &lengths_for, py::arg("theta"), py::arg("beta"), py::arg("cond"));
  m.def(
      "p_theta",
      [](double theta, const std::vector<double>& lengths, const ConditionalPmf& cond) {
        return p_theta(theta, lengths, cond);
      },
      py::arg("theta"), py::arg("lengths"), py::arg("cond"));
  m.def("p_theta_min", &p_theta_min, py::arg("theta"), py::arg("cond"),
        py::arg("options") = SolverOptions{}, py::call_guard<py::gil_scoped_release>());
  m.def("solve", &solve, py::arg("cond"), py::arg("options") = SolverOptions{},
        py::call_guard<py::gil_scoped_release>());
  m.def("round_lengths", &round_lengths, py::arg("design"), py::arg("cond"));

  py::class_<SweepPoint>(m, "SweepPoint")
      .def_readonly("k", &SweepPoint::k)
      .def_readonly("alpha", &SweepPoint::alpha)
      .def_readonly("optimal_age", &SweepPoint::optimal_age)
      .def_readonly("design", &SweepPoint::design)
      .def_readonly("converged", &SweepPoint::converged)
      .def_readonly("error", &SweepPoint::error);

  py::class_<SweepResult>(m, "SweepResult")
      .def_readonly("points", &SweepResult::points)
      .def_readonly("argmin_k", &SweepResult::argmin_k)
      .def_readonly("argmin_alpha", &SweepResult::argmin_alpha)
      .def_readonly("min_age", &SweepResult::min_age);

  m.def(
      "sweep_k",
      [](const SourcePmf& pmf, double lambda, double alpha, unsigned threads) {
        return sweep_k(pmf, {lambda}, alpha, threads);
      },
      py::arg("pmf"), py::arg("lambda_"), py::arg("alpha") = 0.0, py::arg("threads") = 0,
      py::call_guard<py::gil_scoped_release>());
  m.def(
      "sweep_alpha",
      [](const SourcePmf& pmf, double lambda, std::size_t k,
         std::optional<std::vector<double>> alphas, unsigned threads) {
        const std::vector<double> grid = alphas ? *alphas : default_alpha_grid();
        return sweep_alpha(pmf, {lambda}, k, grid, threads);
      },
      py::arg("pmf"), py::arg("lambda_"), py::arg("k"), py::arg("alphas") = py::none(),
      py::arg("threads") = 0, py::call_guard<py::gil_scoped_release>());
  m.def("default_alpha_grid", &default_alpha_grid);

  py::class_<SimResult>(m, "SimResult")
      .def_readonly("empirical_age", &SimResult::empirical_age)
      .def_readonly("stderr", &SimResult::stderr_age)
      .def_readonly("num_cycles", &SimResult::num_cycles)
      .def_readonly("mean_cycle", &SimResult::mean_cycle)
      .def_readonly("mean_service", &SimResult::mean_service)
      .def_readonly("idle_arrivals", &SimResult::idle_arrivals)
      .def_readonly("discarded_arrivals", &SimResult::discarded_arrivals)
      .def_readonly("blocked_arrivals", &SimResult::blocked_arrivals);

  py::class_<ValidationReport>(m, "ValidationReport")
      .def_readonly("analytic_age", &ValidationReport::analytic_age)
      .def_readonly("cycle_mode", &ValidationReport::cycle_mode)
      .def_readonly("event_mode", &ValidationReport::event_mode)
      .def_readonly("rel_err_cycle", &ValidationReport::rel_err_cycle)
      .def_readonly("rel_err_event", &ValidationReport::rel_err_event)
      .def_readonly("pass_", &ValidationReport::pass);

  m.def(
      "simulate",
      [](const SourcePmf& pmf, std::size_t k, double alpha, double lambda,
         std::vector<double> lengths, std::uint64_t cycles, std::uint64_t seed,
         const std::string& mode) {
        return simulate(make_config(pmf, k, alpha, lambda, std::move(lengths), cycles, seed, mode));
      },
      py::arg("pmf"), py::arg("k"), py::arg("alpha"), py::arg("lambda_"), py::arg("lengths"),
      py::arg("cycles"), py::arg("seed"), py::arg("mode") = "cycle",
      py::call_guard<py::gil_scoped_release>());
  m.def(
      "validate",
      [](const SourcePmf& pmf, std::size_t k, double alpha, double lambda,
         std::vector<double> lengths, std::uint64_t cycles, std::uint64_t seed) {
        return validate(make_config(pmf, k, alpha, lambda, std::move(lengths), cycles, seed,
                                    "cycle"));
      },
      py::arg("pmf"), py::arg("k"), py::arg("alpha"), py::arg("lambda_"), py::arg("lengths"),
      py::arg("cycles"), py::arg("seed"), py::call_guard<py::gil_scoped_release>());
}
