#include "cwscat/exact.hpp"

#include <algorithm>
#include <cmath>

namespace cws {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kPeriod = kPi / 3.0;
const double kTwoOverSqrt3 = 2.0 / std::sqrt(3.0);
} // namespace

Vec3 TransferMatrix::apply(const Vec3& v) const {
  Vec3 out{};
  for (int i = 0; i < 3; ++i)
    out[i] = entries[i][0] * v[0] + entries[i][1] * v[1] + entries[i][2] * v[2];
  return out;
}

CanonicalDelta canonicalize_delta(double delta) {
  if (!std::isfinite(delta)) throw validation_error("non-finite delta");
  double dr = std::fmod(delta, kPeriod);
  if (dr < 0.0) dr += kPeriod;
  long long q = std::llround((delta - dr) / kPeriod) % 6;
  if (q < 0) q += 6;
  CanonicalDelta cd;
  cd.q = static_cast<int>(q);
  if (dr > kPeriod / 2.0) {
    cd.delta_star = kPeriod - dr;
    cd.mirrored = true;
  } else {
    cd.delta_star = dr;
    cd.mirrored = false;
  }
  return cd;
}

TransferMatrix transfer_matrix(double delta) {
  if (!(delta >= 0.0 && delta <= kPi / 6.0 + 1e-15))
    throw validation_error("transfer matrix needs canonical delta in [0, pi/6]");
  TransferMatrix tm;
  tm.delta = delta;
  if (delta == 0.0) { // exact Calogero limit: p1 <-> p3 swap
    tm.a = 0.0;
    tm.b = 1.0;
  } else if (delta == kPi / 6.0) { // exact Wolfes limit
    tm.a = 1.0;
    tm.b = 0.0;
  } else {
    tm.a = kTwoOverSqrt3 * std::sin(2.0 * delta);
    tm.b = kTwoOverSqrt3 * std::sin(kPi / 3.0 - 2.0 * delta);
  }
  tm.entries = {{{0.0, -tm.a, tm.b}, {-tm.a, tm.b, 0.0}, {tm.b, 0.0, -tm.a}}};
  return tm;
}

TransferMatrix transfer_matrix_any(double delta) {
  return transfer_matrix(canonicalize_delta(delta).delta_star);
}

Vec3 predict_outgoing(const Vec3& v, double delta, Family family) {
  const double scale = std::max({std::abs(v[0]), std::abs(v[1]), std::abs(v[2]), 1.0});
  if (std::abs(v[0] + v[1] + v[2]) > 1e-10 * scale)
    throw validation_error("not in CM frame");
  if (family == Family::family_b) return {-v[0], -v[1], -v[2]};
  double d = delta;
  if (family == Family::calogero) d = 0.0;
  if (family == Family::wolfes) d = kPi / 6.0;
  return transfer_matrix_any(d).apply(v);
}

double angle_out(double phi_in, double delta) {
  double dr = std::fmod(delta, kPeriod);
  if (dr < 0.0) dr += kPeriod;
  const double lo = -dr, hi = kPeriod - dr;
  if (!(phi_in > lo + 1e-12 && phi_in < hi - 1e-12))
    throw validation_error("incoming angle not strictly inside the sector");
  return kPeriod - 2.0 * dr - phi_in;
}

OrbitConstants orbit_constants(const PotentialSpec& spec, const PolarState& ps, double t) {
  if (spec.family == Family::family_b)
    throw validation_error("closed-form orbit constants are family-A only");
  if (spec.g <= 0.0) throw validation_error("closed-form orbit requires g > 0");
  validate_classical(spec);

  const Conserved con = conserved_quantities(spec, ps);
  if (con.E <= 0.0) throw validation_error("scattering orbit requires E > 0");

  OrbitConstants oc;
  oc.E = con.E;
  oc.B = std::sqrt(con.B2);
  oc.t0 = t - ps.r * ps.p_r / (2.0 * con.E);
  oc.tau = std::sqrt(spec.m / 2.0) * oc.B / con.E;
  const double k2 = 1.0 - 4.5 * spec.g / con.B2;
  oc.k = std::sqrt(std::max(k2, 0.0));

  // local sector of the anchor: 3(phi + delta) - q*pi in (0, pi)
  const double u_raw = 3.0 * (ps.phi + effective_delta(spec));
  oc.sector = static_cast<int>(std::floor(u_raw / kPi));
  const double u_local = u_raw - oc.sector * kPi;
  const double c = std::cos(u_local);

  double s;
  if (oc.k == 0.0) {
    // B^2 = 9g/2 exactly: the purely radial orbit, phi frozen mid-sector
    s = 0.0;
  } else {
    s = c / oc.k;
    if (std::abs(s) > 1.0 + 1e-9) throw numerical_error("state off the orbit manifold");
    s = std::clamp(s, -1.0, 1.0);
  }
  // sign(dphi/dt) = sign(cos psi); choose the asin branch accordingly
  const double psi0 = ps.p_phi >= 0.0 ? std::asin(s) : kPi - std::asin(s);
  oc.gamma = psi0 + 3.0 * std::atan((t - oc.t0) / oc.tau);
  return oc;
}

RPhi analytic_state(const OrbitConstants& c, const PotentialSpec& spec, double t) {
  const double dt = t - c.t0;
  const double r2 = (2.0 * c.E / spec.m) * dt * dt + c.B * c.B / c.E;
  const double psi = c.gamma - 3.0 * std::atan(dt / c.tau);
  const double cu = std::clamp(c.k * std::sin(psi), -1.0, 1.0);
  const double u_local = std::acos(cu);
  const double phi = (u_local + c.sector * kPi) / 3.0 - effective_delta(spec);
  return {std::sqrt(r2), phi};
}

} // namespace cws
