#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cwscat/dynamics.hpp"
#include "cwscat/exact.hpp"
#include "cwscat/spectra.hpp"

namespace py = pybind11;
using namespace cws;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact three-body scattering on a line: Calogero-Wolfes potential "
            "families, transfer matrices, classical trajectories, and "
            "finite-difference spectra.";

  py::register_exception<validation_error>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<numerical_error>(m, "NumericalError", PyExc_RuntimeError);

  py::enum_<Family>(m, "Family")
      .value("calogero", Family::calogero)
      .value("wolfes", Family::wolfes)
      .value("A", Family::family_a)
      .value("B", Family::family_b);

  py::enum_<FamilyBVariant>(m, "FamilyBVariant")
      .value("polar_consistent", FamilyBVariant::polar_consistent)
      .value("as_printed", FamilyBVariant::as_printed);

  py::class_<PotentialSpec>(m, "PotentialSpec")
      .def(py::init([](Family family, double g, double f, double delta, double omega,
                       double mass, double hbar, FamilyBVariant variant) {
             PotentialSpec s;
             s.family = family;
             s.g = g;
             s.f = f;
             s.delta = delta;
             s.omega = omega;
             s.m = mass;
             s.hbar = hbar;
             s.b_variant = variant;
             return s;
           }),
           py::arg("family") = Family::family_a, py::arg("g") = 1.0, py::arg("f") = 0.0,
           py::arg("delta") = 0.0, py::arg("omega") = 0.0, py::arg("m") = 1.0,
           py::arg("hbar") = 1.0, py::arg("variant") = FamilyBVariant::polar_consistent)
      .def_readwrite("family", &PotentialSpec::family)
      .def_readwrite("g", &PotentialSpec::g)
      .def_readwrite("f", &PotentialSpec::f)
      .def_readwrite("delta", &PotentialSpec::delta)
      .def_readwrite("omega", &PotentialSpec::omega)
      .def_readwrite("m", &PotentialSpec::m)
      .def_readwrite("hbar", &PotentialSpec::hbar)
      .def_readwrite("variant", &PotentialSpec::b_variant);

  py::class_<ParticleState>(m, "ParticleState")
      .def(py::init([](Vec3 x, Vec3 p, double t) {
             return ParticleState{x, p, t};
           }),
           py::arg("x"), py::arg("p"), py::arg("t") = 0.0)
      .def_readwrite("x", &ParticleState::x)
      .def_readwrite("p", &ParticleState::p)
      .def_readwrite("t", &ParticleState::t);

  py::class_<JacobiState>(m, "JacobiState")
      .def_readonly("R", &JacobiState::R)
      .def_readonly("x", &JacobiState::x)
      .def_readonly("y", &JacobiState::y)
      .def_readonly("P_R", &JacobiState::P_R)
      .def_readonly("P_x", &JacobiState::P_x)
      .def_readonly("P_y", &JacobiState::P_y);

  py::class_<PolarState>(m, "PolarState")
      .def(py::init([](double r, double phi, double p_r, double p_phi) {
             return PolarState{r, phi, p_r, p_phi};
           }),
           py::arg("r"), py::arg("phi"), py::arg("p_r") = 0.0, py::arg("p_phi") = 0.0)
      .def_readwrite("r", &PolarState::r)
      .def_readwrite("phi", &PolarState::phi)
      .def_readwrite("p_r", &PolarState::p_r)
      .def_readwrite("p_phi", &PolarState::p_phi);

  m.def("to_cm_frame", &to_cm_frame);
  m.def("jacobi_from_cartesian", &jacobi_from_cartesian);
  m.def("polar_from_jacobi", &polar_from_jacobi);
  m.def("cartesian_from_polar", &cartesian_from_polar, py::arg("r"), py::arg("phi"));
  m.def("sector_of", &sector_of, py::arg("phi"), py::arg("delta"), py::arg("tol") = 1e-12);
  m.def("incoming_angle", &incoming_angle);
  m.def("outgoing_angle", &outgoing_angle);

  m.def("potential_energy", &potential_energy);
  m.def("potential_polar", &potential_polar);
  m.def("forces", &forces);
  m.def("conserved_quantities", [](const PotentialSpec& s, const PolarState& ps) {
    const Conserved c = conserved_quantities(s, ps);
    return py::make_tuple(c.E, c.B2);
  });

  py::class_<TransferMatrix>(m, "TransferMatrix")
      .def_readonly("entries", &TransferMatrix::entries)
      .def_readonly("a", &TransferMatrix::a)
      .def_readonly("b", &TransferMatrix::b)
      .def_readonly("delta", &TransferMatrix::delta)
      .def("apply", &TransferMatrix::apply);

  m.def("canonicalize_delta", [](double d) {
    const CanonicalDelta cd = canonicalize_delta(d);
    return py::make_tuple(cd.delta_star, cd.mirrored, cd.q);
  });
  m.def("transfer_matrix", &transfer_matrix);
  m.def("transfer_matrix_any", &transfer_matrix_any);
  m.def("predict_outgoing", &predict_outgoing, py::arg("v"), py::arg("delta"),
        py::arg("family"));
  m.def("angle_out", &angle_out, py::arg("phi_in"), py::arg("delta"));

  py::class_<OrbitConstants>(m, "OrbitConstants")
      .def_readonly("E", &OrbitConstants::E)
      .def_readonly("B", &OrbitConstants::B)
      .def_readonly("t0", &OrbitConstants::t0)
      .def_readonly("tau", &OrbitConstants::tau)
      .def_readonly("gamma", &OrbitConstants::gamma)
      .def_readonly("k", &OrbitConstants::k);

  m.def("orbit_constants", &orbit_constants);
  m.def("analytic_state", [](const OrbitConstants& c, const PotentialSpec& s, double t) {
    const RPhi rp = analytic_state(c, s, t);
    return py::make_tuple(rp.r, rp.phi);
  });

  py::class_<IntegratorControls>(m, "IntegratorControls")
      .def(py::init<>())
      .def_readwrite("rel_tol", &IntegratorControls::rel_tol)
      .def_readwrite("abs_tol", &IntegratorControls::abs_tol)
      .def_readwrite("max_step", &IntegratorControls::max_step)
      .def_readwrite("r_stop_factor", &IntegratorControls::r_stop_factor)
      .def_readwrite("max_time", &IntegratorControls::max_time)
      .def_readwrite("sample_stride", &IntegratorControls::sample_stride);

  py::class_<Sample>(m, "Sample")
      .def_readonly("t", &Sample::t)
      .def_readonly("state", &Sample::state)
      .def_readonly("polar", &Sample::polar)
      .def_readonly("E", &Sample::E)
      .def_readonly("B2", &Sample::B2);

  py::class_<TrajectoryRecord>(m, "TrajectoryRecord")
      .def_readonly("samples", &TrajectoryRecord::samples)
      .def_readonly("E_drift", &TrajectoryRecord::E_drift)
      .def_readonly("B2_drift", &TrajectoryRecord::B2_drift)
      .def_readonly("t_closest", &TrajectoryRecord::t_closest)
      .def_readonly("r_min", &TrajectoryRecord::r_min);

  py::class_<ScatterReport>(m, "ScatterReport")
      .def_readonly("p_in", &ScatterReport::p_in)
      .def_readonly("a_in", &ScatterReport::a_in)
      .def_readonly("p_out_numeric", &ScatterReport::p_out_numeric)
      .def_readonly("p_out_predicted", &ScatterReport::p_out_predicted)
      .def_readonly("a_out_numeric", &ScatterReport::a_out_numeric)
      .def_readonly("a_out_predicted", &ScatterReport::a_out_predicted)
      .def_readonly("max_p_error", &ScatterReport::max_p_error)
      .def_readonly("max_a_error", &ScatterReport::max_a_error)
      .def_readonly("phi_in", &ScatterReport::phi_in)
      .def_readonly("phi_out_numeric", &ScatterReport::phi_out_numeric)
      .def_readonly("phi_out_predicted", &ScatterReport::phi_out_predicted)
      .def_readonly("E_drift", &ScatterReport::E_drift)
      .def_readonly("B2_drift", &ScatterReport::B2_drift);

  m.def("incoming_momenta", &incoming_momenta, py::arg("phi_in"), py::arg("energy"),
        py::arg("m") = 1.0);
  m.def("default_r0", &default_r0);
  m.def("prepare_scattering_state", &prepare_scattering_state, py::arg("spec"),
        py::arg("phi_in"), py::arg("energy"), py::arg("a_in") = Vec3{0, 0, 0},
        py::arg("r0") = 0.0);
  m.def("integrate", &integrate, py::arg("spec"), py::arg("initial"),
        py::arg("controls") = IntegratorControls{});
  m.def("extract_asymptotics", [](const TrajectoryRecord& tr, const PotentialSpec& s) {
    const Asymptotics a = extract_asymptotics(tr, s);
    return py::make_tuple(a.p_out, a.a_out);
  });
  m.def("scatter_experiment", &scatter_experiment, py::arg("spec"), py::arg("phi_in"),
        py::arg("energy"), py::arg("a_in") = Vec3{0, 0, 0}, py::arg("r0") = 0.0,
        py::arg("controls") = IntegratorControls{});

  py::class_<SpectrumResult>(m, "SpectrumResult")
      .def_readonly("eigenvalues", &SpectrumResult::eigenvalues)
      .def_readonly("convergence", &SpectrumResult::convergence)
      .def_readonly("parities", &SpectrumResult::parities)
      .def_readonly("residuals", &SpectrumResult::residuals)
      .def_readonly("n", &SpectrumResult::n)
      .def_readonly("extent", &SpectrumResult::extent)
      .def_readonly("delta", &SpectrumResult::delta);

  m.def("angular_spectrum",
        py::overload_cast<const PotentialSpec&, int, int>(&angular_spectrum),
        py::arg("spec"), py::arg("n"), py::arg("k"));
  m.def("confined_spectrum_2d", &confined_spectrum_2d, py::arg("spec"), py::arg("grid_n"),
        py::arg("extent") = 0.0, py::arg("k") = 6);
  m.def("default_extent", &default_extent);

#ifdef VERSION_INFO
#define CWSCAT_STR(x) #x
#define CWSCAT_XSTR(x) CWSCAT_STR(x)
  m.attr("__version__") = CWSCAT_XSTR(VERSION_INFO);
#else
  m.attr("__version__") = "dev";
#endif
}
