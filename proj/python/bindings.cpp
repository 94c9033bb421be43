#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "xyzchain/analysis.hpp"
#include "xyzchain/cli.hpp"
#include "xyzchain/concurrence.hpp"
#include "xyzchain/core.hpp"
#include "xyzchain/oracle.hpp"

namespace py = pybind11;
using namespace xyzchain;

namespace {

std::optional<double> opt(const py::object& o) {
  if (o.is_none()) return std::nullopt;
  return o.cast<double>();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Thermal entanglement of the two-qubit Heisenberg XYZ chain";

  py::register_exception<Error>(m, "XyzChainError", PyExc_ValueError);

  py::class_<Couplings>(m, "Couplings")
      .def(py::init<>())
      .def(py::init([](double jx, double jy, double jz) { return Couplings{jx, jy, jz}; }),
           py::arg("jx"), py::arg("jy"), py::arg("jz"))
      .def_static("from_delta_sigma", &Couplings::from_delta_sigma, py::arg("delta"),
                  py::arg("sigma"), py::arg("jz"))
      .def_readwrite("jx", &Couplings::jx)
      .def_readwrite("jy", &Couplings::jy)
      .def_readwrite("jz", &Couplings::jz)
      .def_property_readonly("delta", &Couplings::delta)
      .def_property_readonly("sigma", &Couplings::sigma)
      .def("__repr__", [](const Couplings& c) {
        std::ostringstream os;
        os << "Couplings(jx=" << c.jx << ", jy=" << c.jy << ", jz=" << c.jz << ")";
        return os.str();
      });

  py::class_<ThermalParams>(m, "ThermalParams")
      .def_readonly("delta", &ThermalParams::delta)
      .def_readonly("sigma", &ThermalParams::sigma)
      .def_readonly("anisotropy", &ThermalParams::anisotropy)
      .def_readonly("alpha", &ThermalParams::alpha)
      .def_readonly("beta", &ThermalParams::beta)
      .def_readonly("gamma", &ThermalParams::gamma)
      .def_readonly("z", &ThermalParams::z)
      .def_readonly("log_z", &ThermalParams::log_z)
      .def_readonly("kt", &ThermalParams::kt);

  py::enum_<BellState>(m, "BellState")
      .value("PhiPlus", BellState::PhiPlus)
      .value("PhiMinus", BellState::PhiMinus)
      .value("PsiPlus", BellState::PsiPlus)
      .value("PsiMinus", BellState::PsiMinus);

  py::class_<SpectralDecomp>(m, "SpectralDecomp")
      .def_readonly("lambda_phi_plus", &SpectralDecomp::lambda_phi_plus)
      .def_readonly("lambda_phi_minus", &SpectralDecomp::lambda_phi_minus)
      .def_readonly("lambda_psi_plus", &SpectralDecomp::lambda_psi_plus)
      .def_readonly("lambda_psi_minus", &SpectralDecomp::lambda_psi_minus)
      .def_readonly("ascending", &SpectralDecomp::ascending)
      .def("ground_states", &SpectralDecomp::ground_states);

  py::class_<BellProbabilities>(m, "BellProbabilities")
      .def_readonly("phi_plus", &BellProbabilities::phi_plus)
      .def_readonly("phi_minus", &BellProbabilities::phi_minus)
      .def_readonly("psi_plus", &BellProbabilities::psi_plus)
      .def_readonly("psi_minus", &BellProbabilities::psi_minus);

  py::enum_<Branch>(m, "Branch").value("C1", Branch::C1).value("C2", Branch::C2);

  py::class_<ConcurrenceResult>(m, "ConcurrenceResult")
      .def_readonly("value", &ConcurrenceResult::value)
      .def_readonly("branch", &ConcurrenceResult::branch)
      .def_readonly("raw", &ConcurrenceResult::raw);

  py::class_<SqrtEigenvalues>(m, "SqrtEigenvalues")
      .def_readonly("li_plus", &SqrtEigenvalues::li_plus)
      .def_readonly("li_minus", &SqrtEigenvalues::li_minus)
      .def_readonly("lii_plus", &SqrtEigenvalues::lii_plus)
      .def_readonly("lii_minus", &SqrtEigenvalues::lii_minus)
      .def_readonly("sorted", &SqrtEigenvalues::sorted);

  m.def("derive_params", &derive_params, py::arg("couplings"), py::arg("kt"));
  m.def("spectral", &spectral, py::arg("couplings"));
  m.def("hamiltonian_matrix", &hamiltonian_matrix, py::arg("couplings"));
  m.def(
      "thermal_state",
      [](const Couplings& c, double kt) { return thermal_state(c, kt).entries; },
      py::arg("couplings"), py::arg("kt"));
  m.def("bell_probabilities", &bell_probabilities, py::arg("couplings"), py::arg("kt"));

  m.def("sqrt_eigenvalues", &sqrt_eigenvalues, py::arg("couplings"), py::arg("kt"));
  m.def("concurrence", &concurrence, py::arg("couplings"), py::arg("kt"));
  m.def("concurrence_xy_isotropic", &concurrence_xy_isotropic, py::arg("j"), py::arg("kt"));
  m.def("concurrence_xy_anisotropic", &concurrence_xy_anisotropic, py::arg("jx"),
        py::arg("jy"), py::arg("kt"));
  m.def("concurrence_xxx", &concurrence_xxx, py::arg("j"), py::arg("kt"));
  m.def("concurrence_xxz", &concurrence_xxz, py::arg("j"), py::arg("jz"), py::arg("kt"));

  py::module_ orc = m.def_submodule("oracle", "brute-force Wootters reference path");
  orc.def(
      "gibbs_state_numeric",
      [](const Couplings& c, double kt) { return oracle::gibbs_state_numeric(c, kt).entries; },
      py::arg("couplings"), py::arg("kt"));
  orc.def(
      "wootters", [](const Mat4& rho) { return oracle::wootters(DensityMatrix4{rho}); },
      py::arg("rho"));
  orc.def(
      "spin_flip", [](const Mat4& rho) { return oracle::spin_flip(DensityMatrix4{rho}).entries; },
      py::arg("rho"));
  orc.def(
      "symmetric_eigen",
      [](const Mat4& a) {
        const auto es = oracle::symmetric_eigen(a);
        return py::make_tuple(es.eigenvalues, es.eigenvectors);
      },
      py::arg("a"));

  py::enum_<analysis::TcStatus>(m, "TcStatus")
      .value("Found", analysis::TcStatus::Found)
      .value("NeverEntangled", analysis::TcStatus::NeverEntangled)
      .value("AboveBracket", analysis::TcStatus::AboveBracket);

  py::class_<analysis::CriticalTemperature>(m, "CriticalTemperature")
      .def_readonly("status", &analysis::CriticalTemperature::status)
      .def_readonly("kt", &analysis::CriticalTemperature::kt)
      .def("value", &analysis::CriticalTemperature::value);

  m.def("critical_temperature", &analysis::critical_temperature, py::arg("couplings"),
        py::arg("kt_lo") = 0.01, py::arg("kt_hi") = 5.0);
  m.def("concurrence_zero_t", &analysis::concurrence_zero_t, py::arg("couplings"));
  m.def("zero_manifold_distance", &analysis::zero_manifold_distance, py::arg("couplings"));
  m.def("temperature_derivative", &analysis::temperature_derivative, py::arg("couplings"),
        py::arg("kt"), py::arg("h") = 1e-4);

  m.def(
      "sweep",
      [](const std::string& variable, double start, double stop, int steps, py::object jx,
         py::object jy, py::object jz, py::object delta, py::object sigma,
         py::object anisotropy, py::object kt, unsigned threads) {
        const auto var = analysis::parse_sweep_variable(variable);
        if (!var) throw Error(ErrorCode::InvalidSpec, "unknown sweep variable " + variable);
        analysis::SweepSpec spec;
        spec.variable = *var;
        spec.start = start;
        spec.stop = stop;
        spec.steps = steps;
        spec.fixed = {opt(jx), opt(jy), opt(jz), opt(delta), opt(sigma), opt(anisotropy), opt(kt)};
        const auto table = analysis::sweep(spec, threads);
        py::list rows;
        for (const auto& r : table.records) {
          rows.append(py::dict(py::arg("value") = r.value, py::arg("C") = r.concurrence.value,
                               py::arg("branch") = to_string(r.concurrence.branch),
                               py::arg("p_phi_plus") = r.probabilities.phi_plus,
                               py::arg("p_phi_minus") = r.probabilities.phi_minus,
                               py::arg("p_psi_plus") = r.probabilities.psi_plus,
                               py::arg("p_psi_minus") = r.probabilities.psi_minus));
        }
        return rows;
      },
      py::arg("variable"), py::arg("start"), py::arg("stop"), py::arg("steps"),
      py::kw_only(), py::arg("jx") = py::none(), py::arg("jy") = py::none(),
      py::arg("jz") = py::none(), py::arg("delta") = py::none(), py::arg("sigma") = py::none(),
      py::arg("anisotropy") = py::none(), py::arg("kt") = py::none(), py::arg("threads") = 1u);

  m.def(
      "monotonicity_scan",
      [](double range, double step, std::vector<double> kts, double h, double threshold,
         unsigned threads) {
        analysis::ScanSpec spec;
        spec.range_lo = -range;
        spec.range_hi = range;
        spec.step = step;
        spec.kt_samples = std::move(kts);
        spec.h = h;
        spec.threshold = threshold;
        analysis::ScanReport r;
        {
          py::gil_scoped_release release;
          r = analysis::monotonicity_scan(spec, threads);
        }
        return py::dict(py::arg("total_points") = r.total_points,
                        py::arg("violations") = r.violations.size(),
                        py::arg("max_derivative") = r.max_derivative);
      },
      py::arg("range") = 2.0, py::arg("step") = 0.05,
      py::arg("kts") = std::vector<double>{0.1, 0.3, 0.6, 1.0, 2.0}, py::arg("h") = 1e-4,
      py::arg("threshold") = 1e-7, py::arg("threads") = 1u);

  m.def(
      "verify",
      [](std::uint64_t n, std::uint64_t seed) {
        const auto r = cli::verify_against_oracle(n, seed);
        return py::dict(py::arg("samples") = r.samples,
                        py::arg("max_deviation") = r.max_deviation);
      },
      py::arg("n") = 10000, py::arg("seed") = 42);

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = cli::run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs the command-line tool in-process; returns (exit, stdout, stderr).");
}
