#pragma once
#include <utility>
#include <vector>

#include "cwscat/coords.hpp"
#include "cwscat/errors.hpp"

namespace cws {

enum class Family { calogero, wolfes, family_a, family_b };

/// Which Cartesian form backs the second (f) family-B term.  The polar form
/// 9f/(2 r^2 cos^2 3(phi+delta)) corresponds to the Cartesian denominator
/// (x1+x2-2*x3) cos(delta)/sqrt(3) - (x1-x2) sin(delta); the literal +sin
/// variant is kept for numerical exploration only.
enum class FamilyBVariant { polar_consistent, as_printed };

struct PotentialSpec {
  Family family = Family::family_a;
  double g = 1.0;     // coupling, energy * length^2
  double f = 0.0;     // second coupling, family B only
  double delta = 0.0; // interpolation angle, radians
  double omega = 0.0; // harmonic confinement strength, V += omega^2 sum (xi-xj)^2
  double m = 1.0;     // particle mass
  double hbar = 1.0;
  FamilyBVariant b_variant = FamilyBVariant::polar_consistent;
};

/// The angle the family formulas actually use: 0 for Calogero, pi/6 for
/// Wolfes, spec.delta otherwise.
double effective_delta(const PotentialSpec& spec);

/// effective_delta reduced mod pi/3 into [0, pi/3).
double reduced_delta(const PotentialSpec& spec);

/// Angular wall spacing: pi/3 for the one-coupling families, pi/6 for family B.
double sector_width(const PotentialSpec& spec);

/// Bounds (lo, hi) of the first sector for this potential:
/// (-delta, pi/3 - delta) for family A, (-delta, pi/6 - delta) for family B
/// (delta reduced mod pi/3).
std::pair<double, double> canonical_sector(const PotentialSpec& spec);

/// Basic finiteness / sign checks shared by all uses.
void validate_common(const PotentialSpec& spec);
/// Classical scattering admissibility: g > 0 (family B: also f > 0), omega = 0.
void validate_classical(const PotentialSpec& spec);
/// Quantum admissibility: g > -hbar^2/4m (family B: also f > -hbar^2/4m).
void validate_quantum(const PotentialSpec& spec);

/// One inverse-square term c / u(x)^2 with u(x) = n . x.
struct PotentialTerm {
  double c;
  Vec3 n;
};

/// The inverse-square terms of the chosen family (3 for one-coupling
/// families, 6 for family B).  The harmonic part is not included.
std::vector<PotentialTerm> potential_terms(const PotentialSpec& spec);

/// V(x1,x2,x3).  Throws numerical_error("singular configuration") when a
/// term denominator is below 1e-12 of the configuration scale.
double potential_energy(const PotentialSpec& spec, const Vec3& x);

/// Angular strength W(phi): the r^2-scaled angular part of the potential,
/// 9g / (2 sin^2 3(phi+delta)) for family A (+ 9f / (2 cos^2 3(phi+delta))
/// for family B).  V(r, phi) = W(phi)/r^2 + 3 omega^2 r^2.
double angular_strength(const PotentialSpec& spec, double phi);

/// V in polar coordinates; equals potential_energy(cartesian_from_polar).
double potential_polar(const PotentialSpec& spec, double r, double phi);

/// F_k = -dV/dx_k, closed form.  Sums to zero (translation invariance).
Vec3 forces(const PotentialSpec& spec, const Vec3& x);

struct Conserved {
  double E;  // p_r^2/2m + B^2/r^2
  double B2; // p_phi^2/2m + W(phi)
};

/// The two constants of the scattering motion (omega must be 0).
Conserved conserved_quantities(const PotentialSpec& spec, const PolarState& ps);

} // namespace cws
