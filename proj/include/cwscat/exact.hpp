#pragma once
#include "cwscat/coords.hpp"
#include "cwscat/potentials.hpp"

namespace cws {

/// The exact linear map from incoming to outgoing momenta (and offsets):
///   [[ 0, -a,  b],
///    [-a,  b,  0],
///    [ b,  0, -a]]
/// with a = (2/sqrt 3) sin 2*delta, b = (2/sqrt 3) sin(pi/3 - 2*delta).
/// Rows sum to b - a; on the zero-sum subspace it is an orthogonal involution.
struct TransferMatrix {
  std::array<std::array<double, 3>, 3> entries{};
  double a = 0;
  double b = 0;
  double delta = 0;

  Vec3 apply(const Vec3& v) const;
};

struct CanonicalDelta {
  double delta_star; // in [0, pi/6]
  bool mirrored;     // true when the reduced angle fell in (pi/6, pi/3)
  int q;             // sector shift, 0..5
};

/// Reduce delta mod pi/3 to [0, pi/3), then fold (pi/6, pi/3) onto
/// [0, pi/6) via delta -> pi/3 - delta.
CanonicalDelta canonicalize_delta(double delta);

/// Transfer matrix for canonical delta in [0, pi/6].  The delta = 0 and
/// delta = pi/6 endpoints produce the exact permutation / negation maps.
TransferMatrix transfer_matrix(double delta);

/// Transfer matrix for arbitrary delta (canonicalized internally).
TransferMatrix transfer_matrix_any(double delta);

/// Outgoing momenta (or offsets) from incoming ones.  Families A/Calogero/
/// Wolfes apply the transfer matrix; family B negates.  The input must sum
/// to zero (CM frame).
Vec3 predict_outgoing(const Vec3& v, double delta, Family family);

/// The asymptotic angle relation phi(+inf) = pi/3 - 2*delta - phi(-inf).
/// phi_in must lie strictly inside the sector (-delta, pi/3 - delta); delta
/// is reduced mod pi/3 first.
double angle_out(double phi_in, double delta);

/// Constants parametrizing the closed-form family-A orbit
///   r(t)  = sqrt((2E/m)(t-t0)^2 + B^2/E)
///   cos 3(phi+delta) = k sin(gamma - 3 atan((t-t0)/tau))
/// with tau = sqrt(m/2) B / E and k = sqrt(1 - 9g/2B^2).
struct OrbitConstants {
  double E = 0;
  double B = 0;
  double t0 = 0;
  double tau = 0;
  double gamma = 0;
  double k = 0;
  int sector = 0; // index q with 3(phi+delta) - q*pi in (0, pi) at the anchor
};

/// Reconstruct the orbit constants from one phase-space point at time t.
/// Family A only, g > 0, omega = 0.  The gamma branch is fixed by the sign
/// of dphi/dt at the anchor.
OrbitConstants orbit_constants(const PotentialSpec& spec, const PolarState& ps, double t);

struct RPhi {
  double r;
  double phi;
};

/// Evaluate the closed-form orbit at time t.
RPhi analytic_state(const OrbitConstants& c, const PotentialSpec& spec, double t);

} // namespace cws
