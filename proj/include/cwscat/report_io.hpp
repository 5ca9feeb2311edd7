#pragma once
#include <string>

#include "cwscat/dynamics.hpp"
#include "cwscat/exact.hpp"
#include "cwscat/spectra.hpp"

namespace cws {

/// Fixed 17-significant-digit formatting ("%.17g"); all emitted numbers go
/// through this so identical inputs produce byte-identical output.
std::string fmt17(double v);

std::string family_name(Family f);
Family family_from_name(const std::string& name);

std::string matrix_json(const TransferMatrix& tm, const CanonicalDelta& cd);
std::string scatter_report_json(const ScatterReport& rep);
std::string angular_spectrum_json(const SpectrumResult& res, const PotentialSpec& spec);
std::string confined_spectrum_json(const SpectrumResult& res, const SpectrumResult& coarse,
                                   const PotentialSpec& spec);
std::string isospectrality_json(const IsospectralityReport& rep, const PotentialSpec& spec);

/// Header: t,x1,x2,x3,p1,p2,p3,r,phi,E,B2
std::string trajectory_csv(const TrajectoryRecord& traj);

/// Header: delta,trial,seed,phi_in,energy,max_p_error,max_a_error,e_drift,b2_drift,status
std::string sweep_csv_header();
std::string sweep_csv_row(double delta, std::uint64_t trial, std::uint64_t seed,
                          const InitialCondition& ic, const ScatterReport* rep,
                          const std::string& status);

} // namespace cws
