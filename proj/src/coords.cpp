#include "cwscat/coords.hpp"

#include <cmath>

namespace cws {

namespace {
constexpr double kPi = 3.14159265358979323846;
const double kSqrt2 = std::sqrt(2.0);
const double kSqrt6 = std::sqrt(6.0);
} // namespace

double wrap_angle(double phi) {
  double w = std::remainder(phi, 2.0 * kPi); // (-pi, pi] up to the -pi edge
  if (w <= -kPi) w = kPi;
  return w;
}

ParticleState to_cm_frame(const ParticleState& s) {
  const double xm = (s.x[0] + s.x[1] + s.x[2]) / 3.0;
  const double pm = (s.p[0] + s.p[1] + s.p[2]) / 3.0;
  ParticleState out = s;
  for (int i = 0; i < 3; ++i) {
    out.x[i] -= xm;
    out.p[i] -= pm;
  }
  return out;
}

JacobiState jacobi_from_cartesian(const ParticleState& s) {
  JacobiState j;
  j.R = (s.x[0] + s.x[1] + s.x[2]) / 3.0;
  j.x = (s.x[0] - s.x[1]) / kSqrt2;
  j.y = (s.x[0] + s.x[1] - 2.0 * s.x[2]) / kSqrt6;
  j.P_R = s.p[0] + s.p[1] + s.p[2];
  j.P_x = (s.p[0] - s.p[1]) / kSqrt2;
  j.P_y = (s.p[0] + s.p[1] - 2.0 * s.p[2]) / kSqrt6;
  return j;
}

ParticleState cartesian_from_jacobi(const JacobiState& j, double t) {
  ParticleState s;
  s.t = t;
  s.x[0] = j.R + j.x / kSqrt2 + j.y / kSqrt6;
  s.x[1] = j.R - j.x / kSqrt2 + j.y / kSqrt6;
  s.x[2] = j.R - 2.0 * j.y / kSqrt6;
  s.p[0] = j.P_R / 3.0 + j.P_x / kSqrt2 + j.P_y / kSqrt6;
  s.p[1] = j.P_R / 3.0 - j.P_x / kSqrt2 + j.P_y / kSqrt6;
  s.p[2] = j.P_R / 3.0 - 2.0 * j.P_y / kSqrt6;
  return s;
}

PolarState polar_from_jacobi(const JacobiState& j) {
  const double r = std::hypot(j.x, j.y);
  if (r == 0.0) throw numerical_error("polar singularity");
  PolarState ps;
  ps.r = r;
  ps.phi = std::atan2(j.x, j.y); // measured from the +y axis
  if (ps.phi <= -kPi) ps.phi = kPi;
  ps.p_r = (j.x * j.P_x + j.y * j.P_y) / r;
  // p_phi = m r^2 dphi/dt = y P_x - x P_y for phi = atan2(x, y)
  ps.p_phi = j.y * j.P_x - j.x * j.P_y;
  return ps;
}

Vec3 cartesian_from_polar(double r, double phi) {
  if (r < 0.0) throw validation_error("negative radius");
  const double c = -std::sqrt(2.0 / 3.0) * r;
  Vec3 x;
  for (int i = 0; i < 3; ++i) x[i] = c * std::cos(phi + (i + 1) * (2.0 * kPi / 3.0));
  // remove the O(eps) residual of sum cos(phi + i 2pi/3) = 0
  const double m = (x[0] + x[1] + x[2]) / 3.0;
  for (int i = 0; i < 3; ++i) x[i] -= m;
  return x;
}

std::optional<int> sector_of(double phi, double delta, double tol) {
  if (delta < 0.0 || delta > kPi / 3.0 + 1e-15)
    throw validation_error("delta outside [0, pi/3]");
  const double w = kPi / 3.0;
  double psi = std::fmod(phi + delta, 2.0 * kPi);
  if (psi < 0.0) psi += 2.0 * kPi;
  double k = std::floor(psi / w);
  double dist_lo = psi - k * w;
  double dist_hi = (k + 1.0) * w - psi;
  if (dist_lo <= tol || dist_hi <= tol) return std::nullopt; // on a wall
  int q = static_cast<int>(k) % 6;
  return q;
}

namespace {
void check_cm_momenta(const Vec3& p) {
  double scale = std::max({std::abs(p[0]), std::abs(p[1]), std::abs(p[2]), 1.0});
  if (std::abs(p[0] + p[1] + p[2]) > 1e-9 * scale)
    throw validation_error("not in CM frame");
}
} // namespace

double incoming_angle(const Vec3& p) {
  check_cm_momenta(p);
  const double Px = (p[0] - p[1]) / kSqrt2;
  const double Py = (p[0] + p[1] - 2.0 * p[2]) / kSqrt6;
  if (Px == 0.0 && Py == 0.0) throw numerical_error("no relative motion");
  double phi = std::atan2(-Px, -Py);
  if (phi <= -kPi) phi = kPi;
  return phi;
}

double outgoing_angle(const Vec3& p) {
  check_cm_momenta(p);
  const double Px = (p[0] - p[1]) / kSqrt2;
  const double Py = (p[0] + p[1] - 2.0 * p[2]) / kSqrt6;
  if (Px == 0.0 && Py == 0.0) throw numerical_error("no relative motion");
  double phi = std::atan2(Px, Py);
  if (phi <= -kPi) phi = kPi;
  return phi;
}

bool sector_inequalities(const Vec3& x) {
  const double d12 = std::abs(x[0] - x[1]);
  return x[0] > x[2] && x[2] < 0.0 && x[1] > x[2] && d12 < x[0] - x[2] && d12 < x[1] - x[2];
}

} // namespace cws
