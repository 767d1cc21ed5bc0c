#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "ipsnet/estimator.hpp"
#include "ipsnet/exact_moments.hpp"
#include "ipsnet/experiments.hpp"
#include "ipsnet/io.hpp"
#include "ipsnet/simulator.hpp"

namespace py = pybind11;
using namespace ipsnet;

PYBIND11_MODULE(_ipsnet, mod) {
  mod.doc() = "Interacting particle system on a dynamic random network";

  py::register_exception<ValidationError>(mod, "ValidationError",
                                          PyExc_ValueError);
  py::register_exception<SeriesTooShort>(mod, "SeriesTooShortError",
                                         PyExc_ValueError);
  py::register_exception<EmptySample>(mod, "EmptySampleError", PyExc_ValueError);
  py::register_exception<ReducibleChain>(mod, "ReducibleChainError",
                                         PyExc_RuntimeError);
  py::register_exception<ChainTooLarge>(mod, "ChainTooLargeError",
                                        PyExc_RuntimeError);
  py::register_exception<IoFailure>(mod, "IoFailureError", PyExc_OSError);

  py::enum_<Link>(mod, "Link")
      .value("MEAN", Link::Mean)
      .value("HARMONIC", Link::Harmonic);

  py::class_<ModelParams>(mod, "ModelParams")
      .def(py::init([](int n, double alpha, double pi_plus, double pi_minus,
                       const std::string& link) {
             return validate_params(n, alpha, pi_plus, pi_minus,
                                    parse_link(link));
           }),
           py::arg("n"), py::arg("alpha"), py::arg("pi_plus"),
           py::arg("pi_minus"), py::arg("link") = "mean")
      .def_readonly("n", &ModelParams::n)
      .def_readonly("alpha", &ModelParams::alpha)
      .def_readonly("pi_plus", &ModelParams::pi_plus)
      .def_readonly("pi_minus", &ModelParams::pi_minus)
      .def_property_readonly(
          "link", [](const ModelParams& p) { return link_name(p.link); })
      .def_property_readonly("f", &ModelParams::f)
      .def_property_readonly("edge_slots", &ModelParams::edge_slots)
      .def("__repr__", [](const ModelParams& p) {
        return "ModelParams(n=" + std::to_string(p.n) +
               ", alpha=" + format_double(p.alpha) +
               ", pi_plus=" + format_double(p.pi_plus) +
               ", pi_minus=" + format_double(p.pi_minus) + ", link='" +
               link_name(p.link) + "')";
      });

  py::class_<ObservationSeries>(mod, "ObservationSeries")
      .def_readonly("s", &ObservationSeries::s)
      .def_readonly("n_plus", &ObservationSeries::n_plus)
      .def_readonly("seed", &ObservationSeries::seed_record)
      .def("__len__", &ObservationSeries::size);

  mod.def("default_burn_in", &default_burn_in, py::arg("params"));
  mod.def(
      "simulate",
      [](const ModelParams& params, long k, std::uint64_t seed, long burn_in,
         bool record_n) {
        if (burn_in < 0) burn_in = default_burn_in(params);
        return simulate_seeded(params, k, burn_in, seed, record_n);
      },
      py::arg("params"), py::arg("k"), py::arg("seed"), py::arg("burn_in") = -1,
      py::arg("record_n") = true,
      py::call_guard<py::gil_scoped_release>());
  mod.def("write_trajectory",
          py::overload_cast<const std::filesystem::path&,
                            const ObservationSeries&>(&write_trajectory),
          py::arg("path"), py::arg("series"));
  mod.def("read_trajectory", &read_trajectory, py::arg("path"));

  py::class_<MomentSet>(mod, "MomentSet")
      .def_readonly("m1", &MomentSet::m1)
      .def_readonly("m2", &MomentSet::m2)
      .def_readonly("m3", &MomentSet::m3)
      .def_readonly("cross1", &MomentSet::cross1);

  mod.def("exact_moments", &exact_moments, py::arg("params"),
          py::call_guard<py::gil_scoped_release>());
  mod.def("mean_s", &mean_S, py::arg("params"));
  mod.def("second_moment_s", &second_moment_S, py::arg("params"));
  mod.def("expected_squared_increment", &expected_squared_increment,
          py::arg("params"), py::call_guard<py::gil_scoped_release>());
  mod.def(
      "joint_chain_matrix",
      [](const ModelParams& params) {
        const JointChain chain = build_joint_chain(params);
        std::vector<std::vector<double>> rows(chain.dim());
        for (int r = 0; r < chain.dim(); ++r)
          rows[r].assign(chain.transition.begin() + r * chain.dim(),
                         chain.transition.begin() + (r + 1) * chain.dim());
        return rows;
      },
      py::arg("params"));

  py::class_<EmpiricalMoments>(mod, "EmpiricalMoments")
      .def(py::init([](double m1k, double m2k, double m3k, long k) {
             return EmpiricalMoments{m1k, m2k, m3k, k};
           }),
           py::arg("m1k"), py::arg("m2k"), py::arg("m3k"), py::arg("k"))
      .def_readonly("m1k", &EmpiricalMoments::m1k)
      .def_readonly("m2k", &EmpiricalMoments::m2k)
      .def_readonly("m3k", &EmpiricalMoments::m3k)
      .def_readonly("k", &EmpiricalMoments::k);

  mod.def("empirical_moments", &empirical_moments, py::arg("series"));

  py::class_<EstimationResult>(mod, "EstimationResult")
      .def_readonly("pi_plus_hat", &EstimationResult::pi_plus_hat)
      .def_readonly("pi_minus_hat", &EstimationResult::pi_minus_hat)
      .def_readonly("alpha_hat", &EstimationResult::alpha_hat)
      .def_readonly("residual_stage1", &EstimationResult::residual_stage1)
      .def_readonly("residual_stage2", &EstimationResult::residual_stage2)
      .def_readonly("flags", &EstimationResult::flags);

  mod.def(
      "estimate_from_moments",
      [](const EmpiricalMoments& m, int n, const std::string& link,
         double grid_step, double tol) {
        return estimate_from_moments(m, n, parse_link(link), grid_step, tol);
      },
      py::arg("moments"), py::arg("n"), py::arg("link"),
      py::arg("grid_step") = 0.02, py::arg("tol") = 1e-6,
      py::call_guard<py::gil_scoped_release>());
  mod.def(
      "estimate",
      [](const ObservationSeries& series, int n, const std::string& link,
         double grid_step, double tol) {
        return estimate_all(series, n, parse_link(link), grid_step, tol);
      },
      py::arg("series"), py::arg("n"), py::arg("link"),
      py::arg("grid_step") = 0.02, py::arg("tol") = 1e-6,
      py::call_guard<py::gil_scoped_release>());

  py::class_<KsResult>(mod, "KsResult")
      .def_readonly("d_statistic", &KsResult::d_statistic)
      .def_readonly("p_value", &KsResult::p_value)
      .def_readonly("n1", &KsResult::n1)
      .def_readonly("n2", &KsResult::n2)
      .def_readonly("reject_at_005", &KsResult::reject_at_005);

  mod.def("ks_two_sample", &ks_two_sample, py::arg("a"), py::arg("b"));

  py::class_<RunRecord>(mod, "RunRecord")
      .def_readonly("run", &RunRecord::run)
      .def_readonly("pi_plus_hat", &RunRecord::pi_plus_hat)
      .def_readonly("pi_minus_hat", &RunRecord::pi_minus_hat)
      .def_readonly("alpha_hat", &RunRecord::alpha_hat)
      .def_readonly("flags", &RunRecord::flags)
      .def_readonly("failed", &RunRecord::failed)
      .def_readonly("failure_code", &RunRecord::failure_code);

  py::class_<ReplicationSummary>(mod, "ReplicationSummary")
      .def_readonly("runs", &ReplicationSummary::runs)
      .def_readonly("mean_pi_plus", &ReplicationSummary::mean_pi_plus)
      .def_readonly("var_pi_plus", &ReplicationSummary::var_pi_plus)
      .def_readonly("mean_pi_minus", &ReplicationSummary::mean_pi_minus)
      .def_readonly("var_pi_minus", &ReplicationSummary::var_pi_minus)
      .def_readonly("mean_alpha", &ReplicationSummary::mean_alpha)
      .def_readonly("var_alpha", &ReplicationSummary::var_alpha)
      .def_readonly("failed_runs", &ReplicationSummary::failed_runs);

  mod.def("run_replications", &run_replications, py::arg("true_params"),
          py::arg("k"), py::arg("l"), py::arg("seed"), py::arg("threads") = 0,
          py::arg("burn_in") = -1, py::call_guard<py::gil_scoped_release>());
  mod.def("export_summary", &export_summary, py::arg("summary"),
          py::arg("out_dir"));
}
