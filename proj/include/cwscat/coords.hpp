#pragma once
#include <array>
#include <optional>

#include "cwscat/errors.hpp"

namespace cws {

using Vec3 = std::array<double, 3>;

/// Three equal-mass particles on a line: Cartesian positions, momenta, time.
struct ParticleState {
  Vec3 x{};
  Vec3 p{};
  double t = 0.0;
};

/// Jacobi coordinates: R = (x1+x2+x3)/3, x = (x1-x2)/sqrt(2),
/// y = (x1+x2-2*x3)/sqrt(6); conjugate momenta P_R = p1+p2+p3,
/// P_x = (p1-p2)/sqrt(2), P_y = (p1+p2-2*p3)/sqrt(6).
struct JacobiState {
  double R = 0, x = 0, y = 0;
  double P_R = 0, P_x = 0, P_y = 0;
};

/// Polar coordinates in the relative (x, y) plane: x = r sin(phi),
/// y = r cos(phi); phi is measured from the +y axis toward +x and reported
/// in (-pi, pi].  p_r = m dr/dt, p_phi = m r^2 dphi/dt.
struct PolarState {
  double r = 0;
  double phi = 0;
  double p_r = 0;
  double p_phi = 0;
};

/// One of the six angular sectors cut out by the potential walls.
/// Sector q spans (-delta + q*pi/3, pi/3 - delta + q*pi/3).
struct SectorSpec {
  double delta = 0; // in [0, pi/3]
  int q = 0;        // 0..5
};

/// Shift to the center-of-mass frame: sum of positions and momenta become 0,
/// relative coordinates unchanged.
ParticleState to_cm_frame(const ParticleState& s);

JacobiState jacobi_from_cartesian(const ParticleState& s);
ParticleState cartesian_from_jacobi(const JacobiState& j, double t = 0.0);

/// Throws numerical_error("polar singularity") at zero radius.
PolarState polar_from_jacobi(const JacobiState& j);

/// Positions from hyper-radius and angle:
/// x_i = -sqrt(2/3) r cos(phi + i*2pi/3), i = 1,2,3.  Sum is zero.
Vec3 cartesian_from_polar(double r, double phi);

/// Sector index q in 0..5 containing phi, or nullopt when phi is within
/// `tol` radians of a sector wall.
std::optional<int> sector_of(double phi, double delta, double tol = 1e-12);

/// Polar angle of the incoming asymptotic direction, phi(-inf): as t -> -inf
/// the relative position vector is antiparallel to the relative momentum,
/// so this is the angle of (-P_x, -P_y).  Requires a CM-frame momentum triple
/// with nonzero relative part.
double incoming_angle(const Vec3& p);

/// Polar angle of (+P_x, +P_y): the direction of the outgoing asymptote.
double outgoing_angle(const Vec3& p);

/// Diagnostic only: the position-ordering inequalities that characterize the
/// first sector at delta = 0 (x1 > x3, x3 < 0, x2 > x3, |x1-x2| < x1-x3,
/// |x1-x2| < x2-x3).  Never used as a validity gate.
bool sector_inequalities(const Vec3& x);

/// Wrap an angle to (-pi, pi].
double wrap_angle(double phi);

} // namespace cws
