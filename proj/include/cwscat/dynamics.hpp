#pragma once
#include <cstdint>
#include <vector>

#include "cwscat/coords.hpp"
#include "cwscat/exact.hpp"
#include "cwscat/potentials.hpp"

namespace cws {

struct IntegratorControls {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  double max_step = 0;        // 0: no cap
  double r_stop_factor = 1e-12; // stop once V < r_stop_factor * E (and receding)
  double max_time = 0;        // 0: derived from the stop condition
  int sample_stride = 1;      // record every n-th accepted step
};

struct Sample {
  double t;
  ParticleState state;
  PolarState polar;
  double E;
  double B2;
};

struct TrajectoryRecord {
  std::vector<Sample> samples; // strictly increasing in t
  double E_drift = 0;          // max relative deviation from the initial value
  double B2_drift = 0;
  double t_closest = 0;
  double r_min = 0;            // refined from the r^2(t) parabola
};

struct Asymptotics {
  Vec3 p_out{};
  Vec3 a_out{};
  double p_err_est = 0; // extrapolation-based uncertainty estimates
  double a_err_est = 0;
};

struct ScatterReport {
  PotentialSpec spec;
  Vec3 p_in{}, a_in{};
  Vec3 p_out_numeric{}, p_out_predicted{};
  Vec3 a_out_numeric{}, a_out_predicted{};
  double max_p_error = 0; // max |component deviation| / momentum scale
  double max_a_error = 0;
  double phi_in = 0;
  double phi_out_numeric = 0;
  double phi_out_predicted = 0;
  double E_drift = 0;
  double B2_drift = 0;
};

/// Momenta of a CM-frame state coming in from direction phi_in with total
/// energy E: (P_x, P_y) = -sqrt(2mE)(sin phi_in, cos phi_in), mapped back
/// through the inverse Jacobi transform.
Vec3 incoming_momenta(double phi_in, double energy, double m);

/// Default release radius: 1e4 times the interaction length sqrt(g/E).
double default_r0(const PotentialSpec& spec, double energy);

/// Default side half-length heuristics live in spectra; this is the dynamics
/// starting state.  Places the system on the incoming asymptote
/// x_i = p_i t/m + a_i at t_start = -r0 m / sqrt(2mE), with the second-order
/// tail correction (closed-form time integrals of the line-evaluated forces)
/// applied so that (p, a) are the true asymptotic data of the returned state
/// up to O(r0^-3).  phi_in must be strictly inside the first sector; the
/// offsets must sum to zero.
ParticleState prepare_scattering_state(const PotentialSpec& spec, double phi_in,
                                       double energy, const Vec3& a_in, double r0);

/// Integrate Hamilton's equations in Cartesian coordinates with an adaptive
/// embedded Runge-Kutta pair until the outgoing asymptotic regime (receding
/// and V < r_stop_factor * E) or max_time.  Records per-step samples, E and
/// B^2 drifts, and the closest approach.  The trajectory must stay inside
/// its initial sector.
TrajectoryRecord integrate(const PotentialSpec& spec, const ParticleState& initial,
                           const IntegratorControls& controls = {});

/// Integrate to a fixed final time; no asymptotic stopping conditions.
ParticleState integrate_to_time(const PotentialSpec& spec, const ParticleState& initial,
                                double t_end, const IntegratorControls& controls = {});

/// Outgoing momenta and offsets from the trajectory tail, Richardson-refined:
/// p(t) converges as O(t^-2) and a(t) = x(t) - p t/m as O(t^-1), so two
/// well-separated tail samples cancel the leading terms.
Asymptotics extract_asymptotics(const TrajectoryRecord& traj, const PotentialSpec& spec);

/// prepare -> integrate -> extract, with exact-map predictions filled in.
ScatterReport scatter_experiment(const PotentialSpec& spec, double phi_in, double energy,
                                 const Vec3& a_in, double r0 = 0,
                                 const IntegratorControls& controls = {});

struct InitialCondition {
  double phi_in;
  double energy;
  Vec3 a;
};

/// Per-trial RNG seed derived from the master seed (splitmix64 mixing).
std::uint64_t run_seed_for(std::uint64_t master_seed, std::uint64_t trial);

/// Deterministic random valid initial condition for sweeps: phi_in inside
/// the sector with a wall margin, E in [0.5, 2], Jacobi-plane offsets in
/// [-0.4, 0.4].  Reproducible for fixed (master_seed, trial).
InitialCondition sample_initial_condition(const PotentialSpec& spec,
                                          std::uint64_t master_seed, std::uint64_t trial);

} // namespace cws
