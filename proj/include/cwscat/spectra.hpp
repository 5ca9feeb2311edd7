#pragma once
#include <vector>

#include "cwscat/potentials.hpp"

namespace cws {

/// Uniform grid over one angular sector, excluding the singular endpoints.
struct AngularGrid {
  double delta = 0;
  double lo = 0, hi = 0; // sector walls; hi - lo = pi/3 (family A) or pi/6 (family B)
  int n = 0;             // interior points
  double h = 0;          // (hi - lo) / (n + 1)
};

AngularGrid make_angular_grid(const PotentialSpec& spec, int n);

struct SpectrumResult {
  std::vector<double> eigenvalues; // ascending; Richardson-extrapolated for 1D solves
  std::vector<double> convergence; // per-eigenvalue error estimate
  std::vector<int> parities;       // +-1 under the reflection T (angular mode)
  std::vector<double> residuals;   // ||A v - lambda v|| / ||lambda v||
  int n = 0;
  double extent = 0; // 2D mode only
  double delta = 0;
};

/// k lowest eigenpairs of the angular operator
///   M = -(hbar^2/2m) d^2/dphi^2 + W(phi)
/// on the sector with Dirichlet walls, from the 3-point finite-difference
/// matrix at resolutions n and 2n (Richardson).  Parities are measured under
/// the grid reversal realizing T phi = pi/3 - phi - 2*delta.
SpectrumResult angular_spectrum(const PotentialSpec& spec, const AngularGrid& grid, int k);
SpectrumResult angular_spectrum(const PotentialSpec& spec, int n, int k);

/// Oscillator frequency of the harmonic term: 3 omega^2 r^2 = m Omega^2 r^2 / 2.
double oscillator_frequency(const PotentialSpec& spec);

/// Default half-side of the 2D box: 8 oscillator lengths.
double default_extent(const PotentialSpec& spec);

/// k lowest eigenvalues of H = -(hbar^2/2m) Laplacian + W(phi)/r^2
/// + 3 omega^2 r^2 on the Cartesian (x, y) grid restricted to one sector
/// wedge (5-point stencil, Dirichlet).  omega must be positive.  Solved by
/// shift-invert Lanczos with full reorthogonalization on a sparse
/// factorization.  Fails if eigenfunction mass near the box edge exceeds
/// 1e-8 (extent too small).
SpectrumResult confined_spectrum_2d(const PotentialSpec& spec, int grid_n,
                                    double extent, int k);

struct IsospectralityReport {
  std::vector<double> deltas;
  std::vector<int> grids;
  // eigenvalues[grid_idx][delta_idx][level]
  std::vector<std::vector<std::vector<double>>> eigenvalues;
  // max pairwise relative deviation across deltas, [grid_idx][level]
  std::vector<std::vector<double>> max_rel_dev;
  // |lambda(finest) - lambda(coarsest)| / lambda per level, at the first delta
  std::vector<double> convergence;
  // per level: deviation within 10x the convergence estimate at the finest grid
  std::vector<bool> within_tolerance;
};

/// Confined 2D spectra for each delta (optionally adding the mirror
/// pi/3 - delta and the shift delta + pi/3 of every entry) at each grid
/// resolution, with per-level cross-delta deviations.
IsospectralityReport isospectrality_report(const PotentialSpec& spec,
                                           std::vector<double> deltas,
                                           const std::vector<int>& grids,
                                           double extent, int k,
                                           bool include_equivalents = false);

} // namespace cws
