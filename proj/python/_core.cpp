#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dac/bounds.hpp"
#include "dac/commands.hpp"
#include "dac/config.hpp"
#include "dac/errors.hpp"
#include "dac/graph.hpp"
#include "dac/lambert.hpp"
#include "dac/report.hpp"
#include "dac/sim.hpp"
#include "dac/spectral.hpp"
#include "dac/verify.hpp"

namespace py = pybind11;

namespace {

py::dict structure_dict(const dac::StructureReport& s) {
  py::dict d;
  d["strongly_connected"] = s.strongly_connected;
  d["weight_balanced"] = s.weight_balanced;
  d["undirected"] = s.undirected;
  d["scwb"] = s.scwb();
  d["in_degrees"] = s.in_degrees;
  d["out_degrees"] = s.out_degrees;
  d["d_max"] = s.d_max;
  return d;
}

// The bounds assume an SCWB digraph.
dac::Spectrum spectrum_of(const Eigen::MatrixXd& adjacency) {
  const dac::Digraph g(adjacency);
  if (!dac::validate(g).scwb()) throw dac::ModelError("graph is not strongly connected and weight-balanced");
  return dac::compute_spectrum(dac::laplacian(g));
}

py::dict trajectory_dict(const dac::Trajectory& t) {
  py::dict d;
  d["times"] = t.times;
  d["x"] = t.x;
  d["errors"] = t.errors;
  d["classification"] = dac::to_string(t.classification);
  d["steady_error"] = t.steady_error;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Delay bounds and simulation for dynamic average consensus";

  static py::exception<dac::Error> base(m, "DacError", PyExc_RuntimeError);
  static py::exception<dac::InputError> input(m, "InputError", base.ptr());
  static py::exception<dac::ModelError> model(m, "ModelError", base.ptr());
  static py::exception<dac::InadmissibleError> inadmissible(m, "InadmissibleError", base.ptr());
  static py::exception<dac::NumericalError> numerical(m, "NumericalError", base.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const dac::InputError& e) {
      py::set_error(input, e.what());
    } catch (const dac::ModelError& e) {
      py::set_error(model, e.what());
    } catch (const dac::InadmissibleError& e) {
      py::set_error(inadmissible, e.what());
    } catch (const dac::NumericalError& e) {
      py::set_error(numerical, e.what());
    } catch (const dac::Error& e) {
      py::set_error(base, e.what());
    }
  });

  m.def("read_graph", [](const std::string& path) { return dac::read_edge_list_file(path).adjacency(); },
        py::arg("path"), "Adjacency matrix of an edge-list file.");
  m.def("validate", [](const Eigen::MatrixXd& a) { return structure_dict(dac::validate(dac::Digraph(a))); },
        py::arg("adjacency"));
  m.def("laplacian", [](const Eigen::MatrixXd& a) { return dac::laplacian(dac::Digraph(a)); }, py::arg("adjacency"));
  m.def("disagreement_basis", [](int n) { return dac::disagreement_basis(n).R; }, py::arg("n"));
  m.def("eigenvalues", [](const Eigen::MatrixXd& a) { return spectrum_of(a).laplacian_eigs; },
        py::arg("adjacency"));

  m.def("lambert_w", &dac::lambert_w, py::arg("k"), py::arg("z"));

  m.def(
      "ct_admissible_delay",
      [](const Eigen::MatrixXd& a, double beta) {
        const auto r = dac::ct_admissible_delay(spectrum_of(a), beta);
        return py::make_tuple(r.tau_bar, r.per_eigenvalue_taus);
      },
      py::arg("adjacency"), py::arg("beta") = 1.0, "(tau_bar, per-eigenvalue delays)");
  m.def(
      "ct_decay_rate",
      [](const Eigen::MatrixXd& a, double beta, double tau) { return dac::ct_decay_rate(spectrum_of(a), beta, tau); },
      py::arg("adjacency"), py::arg("beta"), py::arg("tau"));
  m.def(
      "ct_envelope",
      [](const Eigen::MatrixXd& a, double beta, double tau) {
        const auto e = dac::ct_envelope(dac::Digraph(a), beta, tau);
        return py::make_tuple(e.k_tau, e.rho_tau);
      },
      py::arg("adjacency"), py::arg("beta"), py::arg("tau"), "(k_tau, rho_tau)");
  m.def(
      "dt_admissible_delay",
      [](const Eigen::MatrixXd& a, double beta, double delta) {
        const auto r = dac::dt_admissible_delay(spectrum_of(a), beta, delta);
        py::dict d;
        d["d_hat"] = r.d_hat;
        d["d_hat_min"] = r.d_hat_min;
        d["d_bar"] = r.d_bar;
        d["max_admissible_d"] = r.max_admissible_d;
        return d;
      },
      py::arg("adjacency"), py::arg("beta"), py::arg("delta"));
  m.def(
      "dt_envelope",
      [](const Eigen::MatrixXd& a, double beta, double delta, int d) {
        spectrum_of(a);
        const Eigen::MatrixXd hs = delta * dac::disagreement_matrix(dac::laplacian(dac::Digraph(a)), beta);
        const auto e = dac::dt_envelope(hs, d);
        return py::make_tuple(e.k_bar, e.omega_bar, e.spectral_radius);
      },
      py::arg("adjacency"), py::arg("beta"), py::arg("delta"), py::arg("d"), "(k_bar, omega_bar, spectral radius)");
  m.def("delayed_exponential", &dac::delayed_exponential, py::arg("a"), py::arg("d"), py::arg("k"));

  m.def(
      "analyze", [](const std::string& config_json) { return dac::analyze(dac::parse_config(config_json)); },
      py::arg("config_json"), "Analysis report (JSON text) for a configuration given as JSON text.");
  m.def(
      "simulate",
      [](const std::string& config_json) {
        const auto out = dac::simulate(dac::parse_config(config_json));
        py::dict d = trajectory_dict(out.trajectory);
        d["summary"] = dac::summary_json(out.summary);
        return d;
      },
      py::arg("config_json"));

  m.def(
      "verify",
      [](const std::vector<std::string>& suites, std::uint64_t seed) {
        dac::VerifyOptions opts;
        opts.suites = suites;
        opts.seed = seed;
        py::list out;
        for (const auto& r : dac::run_verify(opts)) out.append(py::make_tuple(r.suite + "." + r.name, r.passed));
        return out;
      },
      py::arg("suites") = std::vector<std::string>{}, py::arg("seed") = 20240601);
}
