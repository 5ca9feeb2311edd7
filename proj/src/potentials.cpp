#include "cwscat/potentials.hpp"

#include <algorithm>
#include <cmath>

namespace cws {

namespace {
constexpr double kPi = 3.14159265358979323846;
const double kSqrt3 = std::sqrt(3.0);

// cyclic index triples (a,b,c): the term built on pair (a,b) against c
constexpr int kCyclic[3][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}};
} // namespace

double effective_delta(const PotentialSpec& spec) {
  switch (spec.family) {
    case Family::calogero: return 0.0;
    case Family::wolfes: return kPi / 6.0;
    default: return spec.delta;
  }
}

double reduced_delta(const PotentialSpec& spec) {
  double d = std::fmod(effective_delta(spec), kPi / 3.0);
  if (d < 0.0) d += kPi / 3.0;
  return d;
}

double sector_width(const PotentialSpec& spec) {
  return spec.family == Family::family_b ? kPi / 6.0 : kPi / 3.0;
}

std::pair<double, double> canonical_sector(const PotentialSpec& spec) {
  const double d = reduced_delta(spec);
  return {-d, sector_width(spec) - d};
}

void validate_common(const PotentialSpec& spec) {
  if (!std::isfinite(spec.g) || !std::isfinite(spec.f) || !std::isfinite(spec.delta) ||
      !std::isfinite(spec.omega))
    throw validation_error("non-finite potential parameter");
  if (spec.m <= 0.0) throw validation_error("mass must be positive");
  if (spec.hbar <= 0.0) throw validation_error("hbar must be positive");
  if (spec.omega < 0.0) throw validation_error("omega must be non-negative");
}

void validate_classical(const PotentialSpec& spec) {
  validate_common(spec);
  if (spec.g <= 0.0) throw validation_error("classical scattering requires g > 0");
  if (spec.family == Family::family_b && spec.f <= 0.0)
    throw validation_error("family B requires f > 0 for classical scattering");
  if (spec.omega != 0.0)
    throw validation_error("scattering requires omega = 0");
}

void validate_quantum(const PotentialSpec& spec) {
  validate_common(spec);
  const double floor = -spec.hbar * spec.hbar / (4.0 * spec.m);
  if (spec.g <= floor) throw validation_error("quantum coupling requires g > -hbar^2/4m");
  if (spec.family == Family::family_b && spec.f <= floor)
    throw validation_error("quantum coupling requires f > -hbar^2/4m");
}

std::vector<PotentialTerm> potential_terms(const PotentialSpec& spec) {
  std::vector<PotentialTerm> terms;
  const double d = effective_delta(spec);
  const double cd = std::cos(d), sd = std::sin(d);
  for (const auto& idx : kCyclic) {
    const int a = idx[0], b = idx[1], c = idx[2];
    Vec3 n{};
    switch (spec.family) {
      case Family::calogero:
        // g / (xa - xb)^2
        n[a] = 1.0;
        n[b] = -1.0;
        break;
      case Family::wolfes:
        // 3g / (xa + xb - 2 xc)^2 written as g / u^2, u = (xa+xb-2xc)/sqrt(3)
        n[a] = 1.0 / kSqrt3;
        n[b] = 1.0 / kSqrt3;
        n[c] = -2.0 / kSqrt3;
        break;
      default:
        // g / [(xa - xb) cos d + (xa + xb - 2 xc) sin d / sqrt(3)]^2
        n[a] = cd + sd / kSqrt3;
        n[b] = -cd + sd / kSqrt3;
        n[c] = -2.0 * sd / kSqrt3;
        break;
    }
    terms.push_back({spec.g, n});
  }
  if (spec.family == Family::family_b) {
    for (const auto& idx : kCyclic) {
      const int a = idx[0], b = idx[1], c = idx[2];
      Vec3 n{};
      if (spec.b_variant == FamilyBVariant::polar_consistent) {
        // f / [(xa + xb - 2 xc) cos d / sqrt(3) - (xa - xb) sin d]^2
        n[a] = cd / kSqrt3 - sd;
        n[b] = cd / kSqrt3 + sd;
        n[c] = -2.0 * cd / kSqrt3;
      } else {
        // literal form: f / [(xa - xb) sin d + (xa + xb - 2 xc) cos d / sqrt(3)]^2
        n[a] = sd + cd / kSqrt3;
        n[b] = -sd + cd / kSqrt3;
        n[c] = -2.0 * cd / kSqrt3;
      }
      terms.push_back({spec.f, n});
    }
  }
  return terms;
}

namespace {

double configuration_scale(const Vec3& x) {
  return std::max({std::abs(x[0] - x[1]), std::abs(x[1] - x[2]), std::abs(x[2] - x[0])});
}

double harmonic_energy(const PotentialSpec& spec, const Vec3& x) {
  if (spec.omega == 0.0) return 0.0;
  const double w2 = spec.omega * spec.omega;
  const double d01 = x[0] - x[1], d12 = x[1] - x[2], d20 = x[2] - x[0];
  return w2 * (d01 * d01 + d12 * d12 + d20 * d20);
}

} // namespace

double potential_energy(const PotentialSpec& spec, const Vec3& x) {
  validate_common(spec);
  const double scale = configuration_scale(x);
  double v = 0.0;
  if (spec.g != 0.0 || spec.family == Family::family_b) {
    if (scale == 0.0) throw numerical_error("singular configuration");
    for (const auto& term : potential_terms(spec)) {
      const double u = term.n[0] * x[0] + term.n[1] * x[1] + term.n[2] * x[2];
      if (std::abs(u) < 1e-12 * scale) throw numerical_error("singular configuration");
      v += term.c / (u * u);
    }
  }
  return v + harmonic_energy(spec, x);
}

double angular_strength(const PotentialSpec& spec, double phi) {
  const double arg = 3.0 * (phi + effective_delta(spec));
  double w = 0.0;
  if (spec.g != 0.0) {
    const double s = std::sin(arg);
    if (std::abs(s) < 1e-12) throw numerical_error("singular configuration");
    w += 4.5 * spec.g / (s * s);
  }
  if (spec.family == Family::family_b && spec.f != 0.0) {
    const double c = std::cos(arg);
    if (std::abs(c) < 1e-12) throw numerical_error("singular configuration");
    w += 4.5 * spec.f / (c * c);
  }
  return w;
}

double potential_polar(const PotentialSpec& spec, double r, double phi) {
  validate_common(spec);
  if (r <= 0.0) throw numerical_error("singular configuration");
  double v = 0.0;
  if (spec.g != 0.0 || spec.family == Family::family_b) v += angular_strength(spec, phi) / (r * r);
  // sum over pairs (xi - xj)^2 = 3 r^2
  return v + 3.0 * spec.omega * spec.omega * r * r;
}

Vec3 forces(const PotentialSpec& spec, const Vec3& x) {
  validate_common(spec);
  Vec3 F{0.0, 0.0, 0.0};
  const double scale = configuration_scale(x);
  if (spec.g != 0.0 || spec.family == Family::family_b) {
    if (scale == 0.0) throw numerical_error("singular configuration");
    for (const auto& term : potential_terms(spec)) {
      const double u = term.n[0] * x[0] + term.n[1] * x[1] + term.n[2] * x[2];
      if (std::abs(u) < 1e-12 * scale) throw numerical_error("singular configuration");
      const double f = 2.0 * term.c / (u * u * u); // -d/dx_k (c/u^2) = 2 c n_k / u^3
      for (int k = 0; k < 3; ++k) F[k] += f * term.n[k];
    }
  }
  if (spec.omega != 0.0) {
    const double w2 = spec.omega * spec.omega;
    for (int k = 0; k < 3; ++k) {
      const double dk = 3.0 * x[k] - (x[0] + x[1] + x[2]);
      F[k] -= 2.0 * w2 * dk;
    }
  }
  return F;
}

Conserved conserved_quantities(const PotentialSpec& spec, const PolarState& ps) {
  validate_common(spec);
  if (spec.omega != 0.0)
    throw validation_error("conserved E, B^2 require omega = 0");
  if (ps.r <= 0.0) throw numerical_error("singular configuration");
  Conserved c;
  c.B2 = ps.p_phi * ps.p_phi / (2.0 * spec.m) + angular_strength(spec, ps.phi);
  c.E = ps.p_r * ps.p_r / (2.0 * spec.m) + c.B2 / (ps.r * ps.r);
  return c;
}

} // namespace cws
