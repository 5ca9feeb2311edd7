#include "cwscat/spectra.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>
#include <lapacke.h>
#include <random>

namespace cws {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct TridiagonalPairs {
  std::vector<double> values;              // ascending
  std::vector<std::vector<double>> vectors; // one per value
};

// k lowest eigenpairs of the symmetric tridiagonal matrix (diag, off).
TridiagonalPairs lowest_tridiagonal_pairs(std::vector<double> diag, std::vector<double> off,
                                          int k) {
  const int n = static_cast<int>(diag.size());
  std::vector<double> w(n), z(static_cast<std::size_t>(n) * k);
  std::vector<lapack_int> isuppz(2 * std::max(1, k));
  lapack_int m = 0;
  lapack_int info = LAPACKE_dstevr(LAPACK_COL_MAJOR, 'V', 'I', n, diag.data(), off.data(),
                                   0.0, 0.0, 1, k, 0.0, &m, w.data(), z.data(), n,
                                   isuppz.data());
  if (info != 0 || m < k) throw numerical_error("tridiagonal eigensolver failed");
  TridiagonalPairs out;
  out.values.assign(w.begin(), w.begin() + k);
  out.vectors.resize(k);
  for (int j = 0; j < k; ++j)
    out.vectors[j].assign(z.begin() + static_cast<std::size_t>(j) * n,
                          z.begin() + static_cast<std::size_t>(j + 1) * n);
  return out;
}

double tridiagonal_residual(const std::vector<double>& diag, double off,
                            const std::vector<double>& v, double lambda) {
  const int n = static_cast<int>(diag.size());
  double rr = 0.0, vv = 0.0;
  for (int i = 0; i < n; ++i) {
    double av = diag[i] * v[i];
    if (i > 0) av += off * v[i - 1];
    if (i + 1 < n) av += off * v[i + 1];
    const double r = av - lambda * v[i];
    rr += r * r;
    vv += v[i] * v[i];
  }
  return std::sqrt(rr) / (std::abs(lambda) * std::sqrt(vv));
}

struct AngularSolve {
  std::vector<double> values;
  std::vector<int> parities;
  std::vector<double> residuals;
};

AngularSolve solve_angular(const PotentialSpec& spec, const AngularGrid& grid, int k) {
  const double h = (grid.hi - grid.lo) / (grid.n + 1);
  const double kin = spec.hbar * spec.hbar / (2.0 * spec.m * h * h);
  std::vector<double> diag(grid.n), off(grid.n - 1, -kin);
  for (int i = 0; i < grid.n; ++i) {
    const double w = angular_strength(spec, grid.lo + (i + 1) * h);
    if (!std::isfinite(w)) throw numerical_error("non-finite potential at a grid node");
    diag[i] = 2.0 * kin + w;
  }
  const std::vector<double> diag_copy = diag; // dstevr overwrites its input
  auto pairs = lowest_tridiagonal_pairs(std::move(diag), std::move(off), k);

  AngularSolve out;
  out.values = pairs.values;
  for (int j = 0; j < k; ++j) {
    const auto& v = pairs.vectors[j];
    // T phi = pi/3 - phi - 2 delta maps node i to node n+1-i
    double s = 0.0, norm = 0.0;
    for (int i = 0; i < grid.n; ++i) {
      s += v[i] * v[grid.n - 1 - i];
      norm += v[i] * v[i];
    }
    out.parities.push_back(s / norm >= 0.0 ? 1 : -1);
    out.residuals.push_back(tridiagonal_residual(diag_copy, -kin, v, pairs.values[j]));
  }
  return out;
}

} // namespace

AngularGrid make_angular_grid(const PotentialSpec& spec, int n) {
  validate_quantum(spec);
  if (n < 16) throw validation_error("angular grid needs n >= 16");
  AngularGrid g;
  g.delta = reduced_delta(spec);
  std::tie(g.lo, g.hi) = canonical_sector(spec);
  g.n = n;
  g.h = (g.hi - g.lo) / (n + 1);
  return g;
}

SpectrumResult angular_spectrum(const PotentialSpec& spec, const AngularGrid& grid, int k) {
  validate_quantum(spec);
  if (k < 1 || k > grid.n) throw validation_error("need 1 <= k <= n");

  AngularGrid fine = grid;
  fine.n = 2 * grid.n + 1; // doubled resolution: h -> h/2 exactly
  fine.h = (grid.hi - grid.lo) / (fine.n + 1);

  const AngularSolve coarse = solve_angular(spec, grid, k);
  const AngularSolve fine_solve = solve_angular(spec, fine, k);

  SpectrumResult res;
  res.n = grid.n;
  res.delta = grid.delta;
  for (int j = 0; j < k; ++j) {
    const double dl = fine_solve.values[j] - coarse.values[j];
    res.eigenvalues.push_back(fine_solve.values[j] + dl / 3.0);
    res.convergence.push_back(std::abs(dl) / 3.0);
  }
  res.parities = fine_solve.parities;
  res.residuals = fine_solve.residuals;
  return res;
}

SpectrumResult angular_spectrum(const PotentialSpec& spec, int n, int k) {
  return angular_spectrum(spec, make_angular_grid(spec, n), k);
}

double oscillator_frequency(const PotentialSpec& spec) {
  return spec.omega * std::sqrt(6.0 / spec.m);
}

double default_extent(const PotentialSpec& spec) {
  if (spec.omega <= 0.0) throw validation_error("confined spectra require omega > 0");
  const double Omega = oscillator_frequency(spec);
  return 8.0 * std::sqrt(spec.hbar / (spec.m * Omega));
}

namespace {

struct WedgeProblem {
  Eigen::SparseMatrix<double> A;
  std::vector<int> node_ix; // compact index -> grid i
  std::vector<int> node_iy;
  int grid_n = 0;
  double h = 0;
};

WedgeProblem assemble_wedge(const PotentialSpec& spec, int grid_n, double extent) {
  const auto [lo, hi] = canonical_sector(spec);
  const double h = 2.0 * extent / (grid_n + 1);
  const double kin = spec.hbar * spec.hbar / (2.0 * spec.m * h * h);
  const double w2 = spec.omega * spec.omega;
  const double d_eff = effective_delta(spec);
  const double v_cap = 1e12 * std::max(spec.hbar * oscillator_frequency(spec), 1.0);

  std::vector<int> index(static_cast<std::size_t>(grid_n) * grid_n, -1);
  std::vector<double> vpot;
  WedgeProblem wp;
  wp.grid_n = grid_n;
  wp.h = h;

  auto node_value = [&](int i, int j, double& v) {
    const double x = -extent + (i + 1) * h;
    const double y = -extent + (j + 1) * h;
    const double r2 = x * x + y * y;
    if (r2 == 0.0) return false;
    const double phi = std::atan2(x, y);
    if (!(phi > lo && phi < hi)) return false;
    const double arg = 3.0 * (phi + d_eff);
    double w = 0.0;
    const double sn = std::sin(arg);
    if (spec.g != 0.0) {
      if (sn == 0.0) return false;
      w += 4.5 * spec.g / (sn * sn);
    }
    if (spec.family == Family::family_b && spec.f != 0.0) {
      const double cn = std::cos(arg);
      if (cn == 0.0) return false;
      w += 4.5 * spec.f / (cn * cn);
    }
    v = w / r2 + 3.0 * w2 * r2;
    if (!std::isfinite(v) || v > v_cap) return false;
    return true;
  };

  for (int j = 0; j < grid_n; ++j)
    for (int i = 0; i < grid_n; ++i) {
      double v;
      if (node_value(i, j, v)) {
        index[static_cast<std::size_t>(j) * grid_n + i] =
            static_cast<int>(wp.node_ix.size());
        wp.node_ix.push_back(i);
        wp.node_iy.push_back(j);
        vpot.push_back(v);
      }
    }

  const int N = static_cast<int>(wp.node_ix.size());
  if (N < 16) throw validation_error("grid too coarse for the sector wedge");

  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(static_cast<std::size_t>(N) * 5);
  auto at = [&](int i, int j) -> int {
    if (i < 0 || j < 0 || i >= grid_n || j >= grid_n) return -1;
    return index[static_cast<std::size_t>(j) * grid_n + i];
  };
  for (int c = 0; c < N; ++c) {
    const int i = wp.node_ix[c], j = wp.node_iy[c];
    trip.emplace_back(c, c, 4.0 * kin + vpot[c]);
    for (const auto& [di, dj] : std::initializer_list<std::pair<int, int>>{
             {1, 0}, {-1, 0}, {0, 1}, {0, -1}}) {
      const int nb = at(i + di, j + dj);
      if (nb >= 0) trip.emplace_back(c, nb, -kin);
    }
  }
  wp.A.resize(N, N);
  wp.A.setFromTriplets(trip.begin(), trip.end());
  return wp;
}

struct LanczosResult {
  std::vector<double> values; // ascending eigenvalues of A
  std::vector<Eigen::VectorXd> vectors;
};

// Lowest k eigenpairs of SPD sparse A via shift-invert Lanczos (sigma = 0)
// with full reorthogonalization.
LanczosResult lowest_by_shift_invert(const Eigen::SparseMatrix<double>& A, int k) {
  const int N = static_cast<int>(A.rows());
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(A);
  if (ldlt.info() != Eigen::Success)
    throw numerical_error("sparse factorization failed");

  const int m_max = std::min(N, std::max(6 * k + 40, 80));
  std::vector<Eigen::VectorXd> basis;
  std::vector<double> alpha, beta;

  std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  Eigen::VectorXd v(N);
  for (int i = 0; i < N; ++i) v[i] = uni(rng);
  v.normalize();
  basis.push_back(v);

  std::vector<double> theta;      // Ritz values of A^{-1}, descending
  std::vector<std::vector<double>> tvec;

  for (int it = 0; it < m_max; ++it) {
    Eigen::VectorXd w = ldlt.solve(basis[it]);
    const double a = basis[it].dot(w);
    alpha.push_back(a);
    w -= a * basis[it];
    if (it > 0) w -= beta[it - 1] * basis[it - 1];
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& q : basis) w -= q.dot(w) * q;
    const double b = w.norm();

    const int m = it + 1;
    if (m >= std::max(2 * k + 6, 16) || b < 1e-300 || m == m_max) {
      // Ritz pairs of the current tridiagonal T_m
      std::vector<double> d(alpha), e(beta);
      std::vector<double> z(static_cast<std::size_t>(m) * m);
      lapack_int info = LAPACKE_dstev(LAPACK_COL_MAJOR, 'V', m, d.data(),
                                      e.empty() ? nullptr : e.data(), z.data(), m);
      if (info != 0) throw numerical_error("Lanczos tridiagonal solve failed");
      // largest theta = smallest eigenvalues of A
      theta.assign(d.rbegin(), d.rend());
      tvec.clear();
      for (int j = 0; j < m; ++j) {
        const int col = m - 1 - j;
        tvec.emplace_back(z.begin() + static_cast<std::size_t>(col) * m,
                          z.begin() + static_cast<std::size_t>(col + 1) * m);
      }
      bool converged = m > k;
      for (int j = 0; j < k && converged; ++j)
        if (std::abs(b * tvec[j][m - 1]) > 1e-13 * std::abs(theta[j])) converged = false;
      if (converged || b < 1e-300 || m == m_max) {
        if (!converged && b >= 1e-300 && m == m_max)
          throw numerical_error("Lanczos did not converge");
        if (static_cast<int>(theta.size()) < k)
          throw numerical_error("Lanczos did not converge");
        LanczosResult out;
        for (int j = 0; j < k; ++j) {
          if (theta[j] <= 0.0) throw numerical_error("Lanczos did not converge");
          Eigen::VectorXd u = Eigen::VectorXd::Zero(N);
          for (int i = 0; i < m; ++i) u += tvec[j][i] * basis[i];
          u.normalize();
          out.vectors.push_back(u);
          out.values.push_back(1.0 / theta[j]);
        }
        // ascending in A-eigenvalue (theta descending already gives that)
        return out;
      }
    }
    beta.push_back(b);
    basis.push_back(w / b);
  }
  throw numerical_error("Lanczos did not converge");
}

} // namespace

SpectrumResult confined_spectrum_2d(const PotentialSpec& spec, int grid_n, double extent,
                                    int k) {
  validate_quantum(spec);
  if (spec.omega <= 0.0) throw validation_error("confined spectra require omega > 0");
  if (grid_n < 32) throw validation_error("2D grid needs n >= 32");
  if (extent <= 0.0) extent = default_extent(spec);
  if (k < 1) throw validation_error("k must be positive");

  WedgeProblem wp = assemble_wedge(spec, grid_n, extent);
  LanczosResult lr = lowest_by_shift_invert(wp.A, k);

  SpectrumResult res;
  res.n = grid_n;
  res.extent = extent;
  res.delta = reduced_delta(spec);
  res.eigenvalues = lr.values;

  const int N = static_cast<int>(wp.node_ix.size());
  for (int j = 0; j < k; ++j) {
    const Eigen::VectorXd& u = lr.vectors[j];
    const Eigen::VectorXd Au = wp.A * u;
    res.residuals.push_back((Au - lr.values[j] * u).norm() / std::abs(lr.values[j]));
    // boundary-leakage guard: mass within 3 cells of the box edge
    double edge_mass = 0.0;
    for (int c = 0; c < N; ++c) {
      const int i = wp.node_ix[c], jj = wp.node_iy[c];
      if (i < 3 || jj < 3 || i >= grid_n - 3 || jj >= grid_n - 3)
        edge_mass += u[c] * u[c];
    }
    if (edge_mass > 1e-8)
      throw numerical_error("extent too small: eigenfunction mass at the box edge");
  }
  return res;
}

IsospectralityReport isospectrality_report(const PotentialSpec& spec,
                                           std::vector<double> deltas,
                                           const std::vector<int>& grids, double extent,
                                           int k, bool include_equivalents) {
  if (deltas.size() < 2 && !(include_equivalents && !deltas.empty()))
    throw validation_error("isospectrality needs at least two deltas");
  if (grids.empty()) throw validation_error("isospectrality needs at least one grid");
  if (spec.family == Family::calogero || spec.family == Family::wolfes)
    throw validation_error("isospectrality sweeps need a delta-bearing family");

  if (include_equivalents) {
    const std::size_t base = deltas.size();
    for (std::size_t i = 0; i < base; ++i) {
      deltas.push_back(kPi / 3.0 - deltas[i]); // mirror
      deltas.push_back(deltas[i] + kPi / 3.0); // shift
    }
    std::sort(deltas.begin(), deltas.end());
    deltas.erase(std::unique(deltas.begin(), deltas.end(),
                             [](double a, double b) { return std::abs(a - b) < 1e-14; }),
                 deltas.end());
  }

  if (extent <= 0.0) extent = default_extent(spec);

  IsospectralityReport rep;
  rep.deltas = deltas;
  rep.grids = grids;
  for (int n : grids) {
    std::vector<std::vector<double>> per_delta;
    for (double d : deltas) {
      PotentialSpec s = spec;
      s.delta = d;
      per_delta.push_back(confined_spectrum_2d(s, n, extent, k).eigenvalues);
    }
    std::vector<double> dev(k);
    for (int l = 0; l < k; ++l) {
      double mn = per_delta[0][l], mx = per_delta[0][l], mean = 0.0;
      for (const auto& ev : per_delta) {
        mn = std::min(mn, ev[l]);
        mx = std::max(mx, ev[l]);
        mean += ev[l];
      }
      mean /= static_cast<double>(per_delta.size());
      dev[l] = (mx - mn) / std::abs(mean);
    }
    rep.eigenvalues.push_back(std::move(per_delta));
    rep.max_rel_dev.push_back(std::move(dev));
  }

  rep.convergence.resize(k, 0.0);
  rep.within_tolerance.resize(k, true);
  if (rep.eigenvalues.size() > 1) {
    for (int l = 0; l < k; ++l) {
      const double c0 = rep.eigenvalues.front()[0][l];
      const double c1 = rep.eigenvalues.back()[0][l];
      rep.convergence[l] = std::abs(c1 - c0) / std::abs(c1);
      rep.within_tolerance[l] = rep.max_rel_dev.back()[l] <= 10.0 * rep.convergence[l];
    }
  }
  return rep;
}

} // namespace cws
