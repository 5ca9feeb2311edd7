#include "cwscat/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace cws {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string family_name(Family f) {
  switch (f) {
    case Family::calogero: return "calogero";
    case Family::wolfes: return "wolfes";
    case Family::family_a: return "A";
    case Family::family_b: return "B";
  }
  return "?";
}

Family family_from_name(const std::string& name) {
  if (name == "calogero") return Family::calogero;
  if (name == "wolfes") return Family::wolfes;
  if (name == "A" || name == "a") return Family::family_a;
  if (name == "B" || name == "b") return Family::family_b;
  throw validation_error("unknown family: " + name);
}

namespace {

std::string vec_json(const Vec3& v) {
  return "[" + fmt17(v[0]) + ", " + fmt17(v[1]) + ", " + fmt17(v[2]) + "]";
}

std::string list_json(const std::vector<double>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += fmt17(v[i]);
  }
  return s + "]";
}

std::string list_json(const std::vector<int>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += std::to_string(v[i]);
  }
  return s + "]";
}

} // namespace

std::string matrix_json(const TransferMatrix& tm, const CanonicalDelta& cd) {
  std::ostringstream os;
  os << "{\n"
     << "  \"delta\": " << fmt17(tm.delta) << ",\n"
     << "  \"delta_star\": " << fmt17(cd.delta_star) << ",\n"
     << "  \"mirrored\": " << (cd.mirrored ? "true" : "false") << ",\n"
     << "  \"q\": " << cd.q << ",\n"
     << "  \"a\": " << fmt17(tm.a) << ",\n"
     << "  \"b\": " << fmt17(tm.b) << ",\n"
     << "  \"rows\": [" << vec_json(tm.entries[0]) << ", " << vec_json(tm.entries[1]) << ", "
     << vec_json(tm.entries[2]) << "]\n}\n";
  return os.str();
}

std::string scatter_report_json(const ScatterReport& rep) {
  std::ostringstream os;
  os << "{\n"
     << "  \"family\": \"" << family_name(rep.spec.family) << "\",\n"
     << "  \"delta\": " << fmt17(rep.spec.delta) << ",\n"
     << "  \"g\": " << fmt17(rep.spec.g) << ",\n"
     << "  \"f\": " << fmt17(rep.spec.f) << ",\n"
     << "  \"p_in\": " << vec_json(rep.p_in) << ",\n"
     << "  \"a_in\": " << vec_json(rep.a_in) << ",\n"
     << "  \"p_out_numeric\": " << vec_json(rep.p_out_numeric) << ",\n"
     << "  \"p_out_predicted\": " << vec_json(rep.p_out_predicted) << ",\n"
     << "  \"a_out_numeric\": " << vec_json(rep.a_out_numeric) << ",\n"
     << "  \"a_out_predicted\": " << vec_json(rep.a_out_predicted) << ",\n"
     << "  \"max_p_error\": " << fmt17(rep.max_p_error) << ",\n"
     << "  \"max_a_error\": " << fmt17(rep.max_a_error) << ",\n"
     << "  \"phi_in\": " << fmt17(rep.phi_in) << ",\n"
     << "  \"phi_out_numeric\": " << fmt17(rep.phi_out_numeric) << ",\n"
     << "  \"phi_out_predicted\": " << fmt17(rep.phi_out_predicted) << ",\n"
     << "  \"e_drift\": " << fmt17(rep.E_drift) << ",\n"
     << "  \"b2_drift\": " << fmt17(rep.B2_drift) << "\n}\n";
  return os.str();
}

std::string angular_spectrum_json(const SpectrumResult& res, const PotentialSpec& spec) {
  std::ostringstream os;
  os << "{\n"
     << "  \"mode\": \"angular\",\n"
     << "  \"family\": \"" << family_name(spec.family) << "\",\n"
     << "  \"delta\": " << fmt17(spec.delta) << ",\n"
     << "  \"g\": " << fmt17(spec.g) << ",\n"
     << "  \"f\": " << fmt17(spec.f) << ",\n"
     << "  \"n\": " << res.n << ",\n"
     << "  \"eigenvalues\": " << list_json(res.eigenvalues) << ",\n"
     << "  \"convergence\": " << list_json(res.convergence) << ",\n"
     << "  \"parities\": " << list_json(res.parities) << ",\n"
     << "  \"residuals\": " << list_json(res.residuals) << "\n}\n";
  return os.str();
}

std::string confined_spectrum_json(const SpectrumResult& res, const SpectrumResult& coarse,
                                   const PotentialSpec& spec) {
  std::vector<double> conv;
  for (std::size_t i = 0; i < res.eigenvalues.size() && i < coarse.eigenvalues.size(); ++i)
    conv.push_back(std::abs(res.eigenvalues[i] - coarse.eigenvalues[i]));
  std::ostringstream os;
  os << "{\n"
     << "  \"mode\": \"confined2d\",\n"
     << "  \"family\": \"" << family_name(spec.family) << "\",\n"
     << "  \"delta\": " << fmt17(spec.delta) << ",\n"
     << "  \"g\": " << fmt17(spec.g) << ",\n"
     << "  \"f\": " << fmt17(spec.f) << ",\n"
     << "  \"omega\": " << fmt17(spec.omega) << ",\n"
     << "  \"n\": " << res.n << ",\n"
     << "  \"extent\": " << fmt17(res.extent) << ",\n"
     << "  \"eigenvalues\": " << list_json(res.eigenvalues) << ",\n"
     << "  \"convergence\": " << list_json(conv) << ",\n"
     << "  \"residuals\": " << list_json(res.residuals) << "\n}\n";
  return os.str();
}

std::string isospectrality_json(const IsospectralityReport& rep, const PotentialSpec& spec) {
  std::ostringstream os;
  os << "{\n"
     << "  \"mode\": \"isospectrality\",\n"
     << "  \"family\": \"" << family_name(spec.family) << "\",\n"
     << "  \"g\": " << fmt17(spec.g) << ",\n"
     << "  \"f\": " << fmt17(spec.f) << ",\n"
     << "  \"omega\": " << fmt17(spec.omega) << ",\n"
     << "  \"deltas\": " << list_json(rep.deltas) << ",\n"
     << "  \"grids\": " << list_json(std::vector<int>(rep.grids.begin(), rep.grids.end()))
     << ",\n  \"eigenvalues\": [";
  for (std::size_t gi = 0; gi < rep.eigenvalues.size(); ++gi) {
    if (gi) os << ", ";
    os << "[";
    for (std::size_t di = 0; di < rep.eigenvalues[gi].size(); ++di) {
      if (di) os << ", ";
      os << list_json(rep.eigenvalues[gi][di]);
    }
    os << "]";
  }
  os << "],\n  \"max_rel_dev\": [";
  for (std::size_t gi = 0; gi < rep.max_rel_dev.size(); ++gi) {
    if (gi) os << ", ";
    os << list_json(rep.max_rel_dev[gi]);
  }
  os << "],\n  \"convergence\": " << list_json(rep.convergence) << ",\n"
     << "  \"within_tolerance\": [";
  for (std::size_t l = 0; l < rep.within_tolerance.size(); ++l) {
    if (l) os << ", ";
    os << (rep.within_tolerance[l] ? "true" : "false");
  }
  os << "]\n}\n";
  return os.str();
}

std::string trajectory_csv(const TrajectoryRecord& traj) {
  std::string s = "t,x1,x2,x3,p1,p2,p3,r,phi,E,B2\n";
  for (const auto& smp : traj.samples) {
    s += fmt17(smp.t);
    for (int i = 0; i < 3; ++i) s += "," + fmt17(smp.state.x[i]);
    for (int i = 0; i < 3; ++i) s += "," + fmt17(smp.state.p[i]);
    s += "," + fmt17(smp.polar.r) + "," + fmt17(smp.polar.phi);
    s += "," + fmt17(smp.E) + "," + fmt17(smp.B2) + "\n";
  }
  return s;
}

std::string sweep_csv_header() {
  return "delta,trial,seed,phi_in,energy,max_p_error,max_a_error,e_drift,b2_drift,status\n";
}

std::string sweep_csv_row(double delta, std::uint64_t trial, std::uint64_t seed,
                          const InitialCondition& ic, const ScatterReport* rep,
                          const std::string& status) {
  std::string s = fmt17(delta) + "," + std::to_string(trial) + "," + std::to_string(seed) +
                  "," + fmt17(ic.phi_in) + "," + fmt17(ic.energy) + ",";
  if (rep) {
    s += fmt17(rep->max_p_error) + "," + fmt17(rep->max_a_error) + "," +
         fmt17(rep->E_drift) + "," + fmt17(rep->B2_drift);
  } else {
    s += ",,,"; // failed runs carry no numbers
  }
  return s + "," + status + "\n";
}

} // namespace cws
