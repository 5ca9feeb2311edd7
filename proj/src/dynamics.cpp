#include "cwscat/dynamics.hpp"

#include <algorithm>
#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <random>

namespace cws {

namespace {

namespace od = boost::numeric::odeint;
constexpr double kPi = 3.14159265358979323846;
const double kSqrt2 = std::sqrt(2.0);
const double kSqrt6 = std::sqrt(6.0);

using State6 = std::array<double, 6>; // x1,x2,x3,p1,p2,p3

struct Rhs {
  const std::vector<PotentialTerm>& terms;
  double m;

  void operator()(const State6& y, State6& dydt, double) const {
    dydt[0] = y[3] / m;
    dydt[1] = y[4] / m;
    dydt[2] = y[5] / m;
    dydt[3] = dydt[4] = dydt[5] = 0.0;
    for (const auto& term : terms) {
      const double u = term.n[0] * y[0] + term.n[1] * y[1] + term.n[2] * y[2];
      const double f = 2.0 * term.c / (u * u * u);
      dydt[3] += f * term.n[0];
      dydt[4] += f * term.n[1];
      dydt[5] += f * term.n[2];
    }
  }
};

double terms_energy(const std::vector<PotentialTerm>& terms, const double* x) {
  double v = 0.0;
  for (const auto& term : terms) {
    const double u = term.n[0] * x[0] + term.n[1] * x[1] + term.n[2] * x[2];
    v += term.c / (u * u);
  }
  return v;
}

uint64_t splitmix64(uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

int sector_index(double phi, double delta_r, double width) {
  double psi = std::fmod(phi + delta_r, 2.0 * kPi);
  if (psi < 0.0) psi += 2.0 * kPi;
  return static_cast<int>(std::floor(psi / width));
}

Sample make_sample(const PotentialSpec& spec, const std::vector<PotentialTerm>& terms,
                   const State6& y, double t) {
  Sample s;
  s.t = t;
  s.state.x = {y[0], y[1], y[2]};
  s.state.p = {y[3], y[4], y[5]};
  s.state.t = t;
  s.polar = polar_from_jacobi(jacobi_from_cartesian(s.state));
  const double v = terms_energy(terms, y.data());
  const double kin =
      (y[3] * y[3] + y[4] * y[4] + y[5] * y[5]) / (2.0 * spec.m);
  s.E = kin + v;
  // B^2 = p_phi^2/2m + W(phi), and W = V r^2 for the pure inverse-square part
  s.B2 = s.polar.p_phi * s.polar.p_phi / (2.0 * spec.m) + v * s.polar.r * s.polar.r;
  return s;
}

} // namespace

Vec3 incoming_momenta(double phi_in, double energy, double m) {
  if (energy <= 0.0) throw validation_error("energy must be positive");
  const double Pmag = std::sqrt(2.0 * m * energy);
  const double Px = -Pmag * std::sin(phi_in);
  const double Py = -Pmag * std::cos(phi_in);
  return {Px / kSqrt2 + Py / kSqrt6, -Px / kSqrt2 + Py / kSqrt6, -2.0 * Py / kSqrt6};
}

double default_r0(const PotentialSpec& spec, double energy) {
  const double gscale = spec.family == Family::family_b ? std::max(spec.g, spec.f) : spec.g;
  return 1e4 * std::sqrt(gscale / energy);
}

ParticleState prepare_scattering_state(const PotentialSpec& spec, double phi_in,
                                       double energy, const Vec3& a_in, double r0) {
  validate_classical(spec);
  if (energy <= 0.0) throw validation_error("energy must be positive");

  const auto [lo, hi] = canonical_sector(spec);
  if (!(phi_in > lo + 1e-12 && phi_in < hi - 1e-12))
    throw validation_error("incoming angle not strictly inside the sector");

  const double a_scale = std::max({std::abs(a_in[0]), std::abs(a_in[1]), std::abs(a_in[2]), 1.0});
  if (std::abs(a_in[0] + a_in[1] + a_in[2]) > 1e-12 * a_scale)
    throw validation_error("offsets must sum to zero");

  if (r0 <= 0.0) r0 = default_r0(spec, energy);
  if (angular_strength(spec, phi_in) / (r0 * r0) > 1e-6 * energy)
    throw validation_error("r0 too small for the asymptotic regime");

  const double m = spec.m;
  const double v = std::sqrt(2.0 * energy / m);
  const double t_start = -r0 / v;
  const Vec3 p = incoming_momenta(phi_in, energy, m);

  ParticleState st;
  st.t = t_start;
  for (int i = 0; i < 3; ++i) {
    st.x[i] = p[i] * t_start / m + a_in[i];
    st.p[i] = p[i];
  }

  // Second-order tail placement: add the closed-form position and momentum
  // deviations accumulated along the incoming free line,
  //   eps_i(t) = integral (t-s) F_i(line(s)) ds / m = c n_i / (m alpha^2 w)
  //   dp_i(t)  = integral F_i(line(s)) ds       = -c n_i / (alpha w^2)
  // with u(line(s)) = alpha s + beta per term, so that (p, a_in) are the
  // asymptotic data of the returned state up to O(r0^-3).
  for (const auto& term : potential_terms(spec)) {
    const double alpha = (term.n[0] * p[0] + term.n[1] * p[1] + term.n[2] * p[2]) / m;
    const double beta = term.n[0] * a_in[0] + term.n[1] * a_in[1] + term.n[2] * a_in[2];
    if (std::abs(alpha) < 1e-14 * v)
      throw validation_error("incoming direction parallel to a potential wall");
    const double w = alpha * t_start + beta;
    for (int i = 0; i < 3; ++i) {
      st.x[i] += term.c * term.n[i] / (m * alpha * alpha * w);
      st.p[i] += -term.c * term.n[i] / (alpha * w * w);
    }
  }

  const PolarState ps = polar_from_jacobi(jacobi_from_cartesian(st));
  if (!(ps.phi > lo && ps.phi < hi))
    throw validation_error("r0 too small for the asymptotic regime");
  return st;
}

namespace {

struct StepLoop {
  const PotentialSpec& spec;
  std::vector<PotentialTerm> terms;
  double delta_r;
  double width;

  explicit StepLoop(const PotentialSpec& s)
      : spec(s), terms(potential_terms(s)), delta_r(reduced_delta(s)),
        width(sector_width(s)) {}

  // Advances y from initial.t, recording into traj (if non-null), until
  // stop(t, sample) returns true or t_end is reached.
  template <typename StopFn>
  double run(State6& y, double t, double t_end, const IntegratorControls& ctl,
             TrajectoryRecord* traj, StopFn stop) const {
    using Stepper = od::runge_kutta_fehlberg78<State6>;
    auto stepper = od::make_controlled<Stepper>(ctl.abs_tol, ctl.rel_tol);
    Rhs rhs{terms, spec.m};

    Sample s0 = make_sample(spec, terms, y, t);
    const int sector0 = sector_index(s0.polar.phi, delta_r, width);
    const double E0 = s0.E, B20 = s0.B2;
    if (traj) traj->samples.push_back(s0);

    double dt = std::min(1e-3 * std::max(std::abs(t), 1.0), (t_end - t) * 0.5);
    if (ctl.max_step > 0.0) dt = std::min(dt, ctl.max_step);
    long accepted = 0;

    while (t < t_end) {
      dt = std::min(dt, t_end - t);
      od::controlled_step_result res = stepper.try_step(rhs, y, t, dt);
      if (res == od::fail) {
        if (dt < 1e-14 * std::max(std::abs(t), 1.0))
          throw numerical_error("integration failure");
        continue;
      }
      ++accepted;
      if (ctl.max_step > 0.0) dt = std::min(dt, ctl.max_step);

      Sample s = make_sample(spec, terms, y, t);
      if (sector_index(s.polar.phi, delta_r, width) != sector0)
        throw numerical_error("integration failure: trajectory left its sector");
      if (traj) {
        traj->E_drift = std::max(traj->E_drift, std::abs(s.E - E0) / std::abs(E0));
        traj->B2_drift = std::max(traj->B2_drift, std::abs(s.B2 - B20) / std::abs(B20));
        if (accepted % std::max(ctl.sample_stride, 1) == 0 ||
            stop(t, s) || t >= t_end)
          traj->samples.push_back(s);
      }
      if (stop(t, s)) return t;
    }
    return t;
  }
};

void refine_closest_approach(TrajectoryRecord& traj) {
  const auto& ss = traj.samples;
  std::size_t jmin = 0;
  for (std::size_t j = 1; j < ss.size(); ++j)
    if (ss[j].polar.r < ss[jmin].polar.r) jmin = j;
  traj.t_closest = ss[jmin].t;
  traj.r_min = ss[jmin].polar.r;
  if (jmin == 0 || jmin + 1 >= ss.size()) return;
  // r^2(t) is exactly quadratic along the orbit; take the parabola vertex
  const double t1 = ss[jmin - 1].t, t2 = ss[jmin].t, t3 = ss[jmin + 1].t;
  const double q1 = ss[jmin - 1].polar.r * ss[jmin - 1].polar.r;
  const double q2 = ss[jmin].polar.r * ss[jmin].polar.r;
  const double q3 = ss[jmin + 1].polar.r * ss[jmin + 1].polar.r;
  const double d21 = (q2 - q1) / (t2 - t1);
  const double d32 = (q3 - q2) / (t3 - t2);
  const double curv = (d32 - d21) / (t3 - t1); // = (2E/m), half the 2nd derivative
  if (curv <= 0.0) return;
  const double tv = 0.5 * (t1 + t2) - 0.5 * d21 / curv;
  const double qv = q1 + d21 * (tv - t1) + curv * (tv - t1) * (tv - t2);
  if (qv > 0.0) {
    traj.t_closest = tv;
    traj.r_min = std::sqrt(qv);
  }
}

} // namespace

TrajectoryRecord integrate(const PotentialSpec& spec, const ParticleState& initial,
                           const IntegratorControls& controls) {
  validate_classical(spec);
  if (controls.rel_tol <= 0.0 || controls.abs_tol <= 0.0)
    throw validation_error("tolerances must be positive");
  if (controls.r_stop_factor <= 0.0 || controls.r_stop_factor >= 1.0)
    throw validation_error("r_stop_factor must be in (0, 1)");

  StepLoop loop(spec);
  State6 y{initial.x[0], initial.x[1], initial.x[2],
           initial.p[0], initial.p[1], initial.p[2]};

  Sample s0 = make_sample(spec, loop.terms, y, initial.t);
  const double E0 = s0.E;
  if (E0 <= 0.0) throw validation_error("scattering requires E > 0");
  const double r_init = s0.polar.r;
  const double v = std::sqrt(2.0 * E0 / spec.m);
  double max_time = controls.max_time;
  if (max_time <= 0.0)
    max_time = 100.0 * (std::abs(initial.t) + std::sqrt(s0.B2 / (controls.r_stop_factor * E0)) / v);

  TrajectoryRecord traj;
  const double vstop = controls.r_stop_factor * E0;
  auto stop = [&](double, const Sample& s) {
    const double pot = s.E - (s.state.p[0] * s.state.p[0] + s.state.p[1] * s.state.p[1] +
                              s.state.p[2] * s.state.p[2]) /
                                 (2.0 * spec.m);
    return s.polar.r > r_init && s.polar.p_r > 0.0 && pot < vstop;
  };
  double t_final = loop.run(y, initial.t, max_time, controls, &traj, stop);
  if (t_final >= max_time) {
    Sample last = traj.samples.back();
    if (!stop(t_final, last)) throw numerical_error("did not reach asymptotic regime");
  }
  refine_closest_approach(traj);
  return traj;
}

ParticleState integrate_to_time(const PotentialSpec& spec, const ParticleState& initial,
                                double t_end, const IntegratorControls& controls) {
  validate_classical(spec);
  if (t_end <= initial.t) throw validation_error("t_end must exceed the initial time");
  StepLoop loop(spec);
  State6 y{initial.x[0], initial.x[1], initial.x[2],
           initial.p[0], initial.p[1], initial.p[2]};
  loop.run(y, initial.t, t_end, controls, nullptr, [](double, const Sample&) { return false; });
  return ParticleState{{y[0], y[1], y[2]}, {y[3], y[4], y[5]}, t_end};
}

Asymptotics extract_asymptotics(const TrajectoryRecord& traj, const PotentialSpec& spec) {
  const auto& ss = traj.samples;
  if (ss.size() < 4) throw numerical_error("insufficient asymptotic samples");
  const double tc = traj.t_closest;
  const double t2 = ss.back().t;
  if (t2 <= tc) throw numerical_error("insufficient asymptotic samples");

  // sample nearest to the midpoint of the outgoing tail (in t - t_closest)
  const double s2 = t2 - tc;
  std::size_t j1 = ss.size();
  double best = 1e300;
  for (std::size_t j = 0; j + 1 < ss.size(); ++j) {
    const double s = ss[j].t - tc;
    if (s < 0.25 * s2) continue;
    const double d = std::abs(s - 0.5 * s2);
    if (d < best) {
      best = d;
      j1 = j;
    }
  }
  if (j1 == ss.size()) throw numerical_error("insufficient asymptotic samples");
  const Sample& A = ss[j1];
  const Sample& B = ss.back();
  const double s1 = A.t - tc;

  Asymptotics out;
  const double m = spec.m;
  // p(t) = p_inf + O((t-tc)^-2): cancel the leading tail term
  const double w2 = s2 * s2, w1 = s1 * s1;
  for (int i = 0; i < 3; ++i) {
    out.p_out[i] = (B.state.p[i] * w2 - A.state.p[i] * w1) / (w2 - w1);
    out.p_err_est = std::max(out.p_err_est, std::abs(out.p_out[i] - B.state.p[i]));
  }
  // a(t) = x(t) - p_inf t / m = a_inf + O((t-tc)^-1)
  for (int i = 0; i < 3; ++i) {
    const double a1 = A.state.x[i] - out.p_out[i] * A.t / m;
    const double a2 = B.state.x[i] - out.p_out[i] * B.t / m;
    out.a_out[i] = (a2 * s2 - a1 * s1) / (s2 - s1);
    out.a_err_est = std::max(out.a_err_est, std::abs(out.a_out[i] - a2));
  }
  return out;
}

ScatterReport scatter_experiment(const PotentialSpec& spec, double phi_in, double energy,
                                 const Vec3& a_in, double r0,
                                 const IntegratorControls& controls) {
  ScatterReport rep;
  rep.spec = spec;
  rep.phi_in = phi_in;
  rep.a_in = a_in;
  rep.p_in = incoming_momenta(phi_in, energy, spec.m);

  const ParticleState st = prepare_scattering_state(spec, phi_in, energy, a_in, r0);
  const TrajectoryRecord traj = integrate(spec, st, controls);
  const Asymptotics asym = extract_asymptotics(traj, spec);

  rep.p_out_numeric = asym.p_out;
  rep.a_out_numeric = asym.a_out;
  rep.E_drift = traj.E_drift;
  rep.B2_drift = traj.B2_drift;

  const double delta = effective_delta(spec);
  rep.p_out_predicted = predict_outgoing(rep.p_in, delta, spec.family);
  rep.a_out_predicted = predict_outgoing(rep.a_in, delta, spec.family);
  rep.phi_out_numeric = outgoing_angle(rep.p_out_numeric);
  rep.phi_out_predicted =
      spec.family == Family::family_b ? phi_in : angle_out(phi_in, delta);

  const double p_scale =
      std::max({std::abs(rep.p_in[0]), std::abs(rep.p_in[1]), std::abs(rep.p_in[2])});
  const double a_scale = std::max({std::abs(a_in[0]), std::abs(a_in[1]), std::abs(a_in[2]), 1.0});
  for (int i = 0; i < 3; ++i) {
    rep.max_p_error = std::max(
        rep.max_p_error, std::abs(rep.p_out_numeric[i] - rep.p_out_predicted[i]) / p_scale);
    rep.max_a_error = std::max(
        rep.max_a_error, std::abs(rep.a_out_numeric[i] - rep.a_out_predicted[i]) / a_scale);
  }
  return rep;
}

InitialCondition sample_initial_condition(const PotentialSpec& spec,
                                          std::uint64_t master_seed, std::uint64_t trial) {
  std::mt19937_64 rng(splitmix64(master_seed ^ splitmix64(trial + 0x5bd1e995ULL)));
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  const auto [lo, hi] = canonical_sector(spec);
  const double margin = spec.family == Family::family_b ? 0.20 : 0.15;
  InitialCondition ic;
  ic.phi_in = lo + (margin + (1.0 - 2.0 * margin) * uni(rng)) * (hi - lo);
  ic.energy = 0.5 + 1.5 * uni(rng);
  JacobiState j;
  j.x = -0.4 + 0.8 * uni(rng);
  j.y = -0.4 + 0.8 * uni(rng);
  ic.a = cartesian_from_jacobi(j).x;
  return ic;
}

} // namespace cws
