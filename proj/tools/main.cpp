// cwscat: command-line experiments for exact three-body scattering on a line.
#include <CLI11.hpp>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <thread>

#include "cwscat/dynamics.hpp"
#include "cwscat/report_io.hpp"
#include "cwscat/spectra.hpp"

namespace {

constexpr double kPi = 3.14159265358979323846;

struct PotentialFlags {
  std::string family = "A";
  double g = 1.0;
  double f = 0.0;
  double delta = 0.0;
  double delta_frac = 0.0;
  double omega = 0.0;
  double m = 1.0;
  double hbar = 1.0;
  CLI::Option* delta_opt = nullptr;
  CLI::Option* frac_opt = nullptr;

  void add_to(CLI::App* cmd, bool with_omega = false) {
    cmd->add_option("--family", family, "potential family: calogero|wolfes|A|B")
        ->check(CLI::IsMember({"calogero", "wolfes", "A", "a", "B", "b"}));
    cmd->add_option("--g", g, "coupling g");
    cmd->add_option("--f", f, "coupling f (family B)");
    delta_opt = cmd->add_option("--delta", delta, "interpolation angle in radians");
    frac_opt = cmd->add_option("--delta-frac", delta_frac,
                               "delta as a fraction of pi/3 (exact rational placement)");
    delta_opt->excludes(frac_opt);
    frac_opt->excludes(delta_opt);
    if (with_omega) cmd->add_option("--omega", omega, "harmonic confinement strength");
    cmd->add_option("--m", m, "particle mass");
    cmd->add_option("--hbar", hbar, "reduced Planck constant");
  }

  cws::PotentialSpec spec() const {
    cws::PotentialSpec s;
    s.family = cws::family_from_name(family);
    s.g = g;
    s.f = f;
    s.delta = frac_opt->count() ? delta_frac * kPi / 3.0 : delta;
    if ((s.family == cws::Family::calogero || s.family == cws::Family::wolfes) &&
        (delta_opt->count() || frac_opt->count()))
      throw cws::validation_error("delta is fixed for the calogero/wolfes families");
    s.omega = omega;
    s.m = m;
    s.hbar = hbar;
    return s;
  }
};

cws::Vec3 parse_triple(const std::string& text, const char* what) {
  cws::Vec3 v{};
  if (std::sscanf(text.c_str(), "%lf,%lf,%lf", &v[0], &v[1], &v[2]) != 3)
    throw cws::validation_error(std::string(what) + " needs three comma-separated numbers");
  return v;
}

std::vector<double> parse_list(const std::string& text, const char* what) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t next = text.find(',', pos);
    if (next == std::string::npos) next = text.size();
    try {
      out.push_back(std::stod(text.substr(pos, next - pos)));
    } catch (const std::exception&) {
      throw cws::validation_error(std::string(what) + ": bad number in list");
    }
    pos = next + 1;
  }
  if (out.empty()) throw cws::validation_error(std::string(what) + ": empty list");
  return out;
}

void emit(const std::string& payload, const std::string& path) {
  if (path.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream os(path, std::ios::binary);
  if (!os) throw cws::validation_error("cannot open output path: " + path);
  os << payload;
}

void check_format(const std::string& format, const std::string& expected) {
  if (!format.empty() && format != expected)
    throw cws::validation_error("this command emits " + expected + " only");
}

struct ExperimentFlags {
  double phi_in = 0.0;
  double energy = 1.0;
  std::string p_text, a_text;
  double r0 = 0.0;
  cws::IntegratorControls controls;
  CLI::Option *phi_opt = nullptr, *p_opt = nullptr, *energy_opt = nullptr;

  void add_to(CLI::App* cmd) {
    phi_opt = cmd->add_option("--phi-in", phi_in, "incoming angle phi(-inf), radians");
    p_opt = cmd->add_option("--p", p_text, "incoming momenta p1,p2,p3 (sum 0)");
    energy_opt = cmd->add_option("--energy", energy, "total CM energy (with --phi-in)");
    phi_opt->excludes(p_opt);
    p_opt->excludes(phi_opt);
    cmd->add_option("--a", a_text, "incoming offsets a1,a2,a3 (sum 0)");
    cmd->add_option("--r0", r0, "release radius (0: default 1e4 sqrt(g/E))");
    cmd->add_option("--rel-tol", controls.rel_tol, "integrator relative tolerance");
    cmd->add_option("--abs-tol", controls.abs_tol, "integrator absolute tolerance");
  }

  // resolves (phi_in, energy, a) from either --phi-in/--energy or --p
  std::tuple<double, double, cws::Vec3> resolve(const cws::PotentialSpec& spec) const {
    cws::Vec3 a{0.0, 0.0, 0.0};
    if (!a_text.empty()) a = parse_triple(a_text, "--a");
    if (p_opt->count()) {
      const cws::Vec3 p = parse_triple(p_text, "--p");
      const double e = (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]) / (2.0 * spec.m);
      return {cws::incoming_angle(p), e, a};
    }
    if (!phi_opt->count())
      throw cws::validation_error("need --phi-in or --p");
    if (!energy_opt->count())
      throw cws::validation_error("--phi-in needs --energy");
    return {phi_in, energy, a};
  }
};

int run_sweep(const cws::PotentialSpec& base, const std::vector<double>& deltas,
              std::uint64_t trials, std::uint64_t seed, int jobs,
              const cws::IntegratorControls& controls, const std::string& out_path) {
  struct Job {
    double delta;
    std::uint64_t trial;
  };
  std::vector<Job> grid;
  for (double d : deltas)
    for (std::uint64_t tr = 0; tr < trials; ++tr) grid.push_back({d, tr});

  std::vector<std::string> rows(grid.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= grid.size()) return;
      cws::PotentialSpec spec = base;
      spec.delta = grid[i].delta;
      const std::uint64_t run_seed = cws::run_seed_for(seed, grid[i].trial);
      const cws::InitialCondition ic =
          cws::sample_initial_condition(spec, seed, grid[i].trial);
      std::string status = "ok";
      const cws::ScatterReport* rep_ptr = nullptr;
      cws::ScatterReport rep;
      try {
        rep = cws::scatter_experiment(spec, ic.phi_in, ic.energy, ic.a, 0.0, controls);
        rep_ptr = &rep;
      } catch (const std::exception& e) {
        std::string what = e.what();
        for (char& ch : what)
          if (ch == ',' || ch == '\n') ch = ';';
        status = "error: " + what;
      }
      rows[i] = cws::sweep_csv_row(grid[i].delta, grid[i].trial, run_seed, ic, rep_ptr,
                                   status);
    }
  };
  std::vector<std::thread> pool;
  const int nthreads = std::max(1, jobs);
  for (int t = 1; t < nthreads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  std::string csv = cws::sweep_csv_header();
  for (const auto& r : rows) csv += r;
  emit(csv, out_path);
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact three-body scattering on a line: transfer matrices, classical "
               "scattering experiments, and finite-difference spectra"};
  app.require_subcommand(1);

  std::string out_path, format;

  // ---- matrix ----
  auto* cmd_matrix = app.add_subcommand("matrix", "print the transfer matrix M(delta)");
  double mx_delta = 0.0, mx_frac = 0.0;
  auto* mx_delta_opt = cmd_matrix->add_option("--delta", mx_delta, "angle in radians");
  auto* mx_frac_opt =
      cmd_matrix->add_option("--delta-frac", mx_frac, "angle as a fraction of pi/3");
  mx_delta_opt->excludes(mx_frac_opt);
  mx_frac_opt->excludes(mx_delta_opt);
  cmd_matrix->add_option("--output", out_path, "output path (default stdout)");
  cmd_matrix->add_option("--format", format, "json");

  // ---- scatter ----
  auto* cmd_scatter = app.add_subcommand("scatter", "run one scattering experiment");
  PotentialFlags sc_pot;
  sc_pot.add_to(cmd_scatter);
  ExperimentFlags sc_exp;
  sc_exp.add_to(cmd_scatter);
  cmd_scatter->add_option("--output", out_path, "output path (default stdout)");
  cmd_scatter->add_option("--format", format, "json");

  // ---- sweep ----
  auto* cmd_sweep = app.add_subcommand("sweep", "delta grid x random initial conditions");
  PotentialFlags sw_pot;
  sw_pot.add_to(cmd_sweep);
  std::string sw_deltas = "0";
  std::uint64_t sw_trials = 20, sw_seed = 1;
  int sw_jobs = 1;
  cws::IntegratorControls sw_controls;
  cmd_sweep->add_option("--deltas", sw_deltas, "comma-separated delta values (radians)");
  cmd_sweep->add_option("--trials", sw_trials, "runs per delta");
  cmd_sweep->add_option("--seed", sw_seed, "master seed");
  cmd_sweep->add_option("--jobs", sw_jobs, "worker threads");
  cmd_sweep->add_option("--rel-tol", sw_controls.rel_tol, "integrator relative tolerance");
  cmd_sweep->add_option("--abs-tol", sw_controls.abs_tol, "integrator absolute tolerance");
  cmd_sweep->add_option("--output", out_path, "output path (default stdout)");
  cmd_sweep->add_option("--format", format, "csv");

  // ---- spectrum ----
  auto* cmd_spectrum = app.add_subcommand("spectrum", "finite-difference eigenvalues");
  PotentialFlags sp_pot;
  sp_pot.add_to(cmd_spectrum, /*with_omega=*/true);
  std::string sp_mode = "angular", sp_deltas;
  int sp_grid = 1024, sp_k = 8;
  double sp_extent = 0.0;
  cmd_spectrum->add_option("--mode", sp_mode, "angular|confined|isospec")
      ->check(CLI::IsMember({"angular", "confined", "isospec"}));
  cmd_spectrum->add_option("--grid", sp_grid, "grid resolution");
  cmd_spectrum->add_option("--k", sp_k, "number of eigenvalues");
  cmd_spectrum->add_option("--extent", sp_extent, "2D box half-side (0: default)");
  cmd_spectrum->add_option("--deltas", sp_deltas, "deltas for isospec mode");
  cmd_spectrum->add_option("--output", out_path, "output path (default stdout)");
  cmd_spectrum->add_option("--format", format, "json");

  // ---- trajectory ----
  auto* cmd_traj = app.add_subcommand("trajectory", "time series of one trajectory");
  PotentialFlags tr_pot;
  tr_pot.add_to(cmd_traj);
  ExperimentFlags tr_exp;
  tr_exp.add_to(cmd_traj);
  cmd_traj->add_option("--output", out_path, "output path (default stdout)");
  cmd_traj->add_option("--format", format, "csv");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp")
      return app.exit(e);
    std::cerr << e.what() << "\n";
    return 2;
  }

  try {
    if (*cmd_matrix) {
      check_format(format, "json");
      const double d = mx_frac_opt->count() ? mx_frac * kPi / 3.0 : mx_delta;
      const cws::CanonicalDelta cd = cws::canonicalize_delta(d);
      emit(cws::matrix_json(cws::transfer_matrix(cd.delta_star), cd), out_path);
      return 0;
    }
    if (*cmd_scatter) {
      check_format(format, "json");
      const cws::PotentialSpec spec = sc_pot.spec();
      const auto [phi, energy, a] = sc_exp.resolve(spec);
      const cws::ScatterReport rep =
          cws::scatter_experiment(spec, phi, energy, a, sc_exp.r0, sc_exp.controls);
      emit(cws::scatter_report_json(rep), out_path);
      return 0;
    }
    if (*cmd_sweep) {
      check_format(format, "csv");
      return run_sweep(sw_pot.spec(), parse_list(sw_deltas, "--deltas"), sw_trials,
                       sw_seed, sw_jobs, sw_controls, out_path);
    }
    if (*cmd_spectrum) {
      check_format(format, "json");
      const cws::PotentialSpec spec = sp_pot.spec();
      if (sp_mode == "angular") {
        emit(cws::angular_spectrum_json(cws::angular_spectrum(spec, sp_grid, sp_k), spec),
             out_path);
      } else if (sp_mode == "confined") {
        const double extent = sp_extent > 0.0 ? sp_extent : cws::default_extent(spec);
        const cws::SpectrumResult fine =
            cws::confined_spectrum_2d(spec, sp_grid, extent, sp_k);
        const cws::SpectrumResult coarse =
            cws::confined_spectrum_2d(spec, sp_grid / 2, extent, sp_k);
        emit(cws::confined_spectrum_json(fine, coarse, spec), out_path);
      } else {
        if (sp_deltas.empty())
          throw cws::validation_error("isospec mode needs --deltas");
        const auto rep = cws::isospectrality_report(
            spec, parse_list(sp_deltas, "--deltas"), {sp_grid / 2, sp_grid}, sp_extent,
            sp_k);
        emit(cws::isospectrality_json(rep, spec), out_path);
      }
      return 0;
    }
    if (*cmd_traj) {
      check_format(format, "csv");
      const cws::PotentialSpec spec = tr_pot.spec();
      const auto [phi, energy, a] = tr_exp.resolve(spec);
      const cws::ParticleState st =
          cws::prepare_scattering_state(spec, phi, energy, a, tr_exp.r0);
      emit(cws::trajectory_csv(cws::integrate(spec, st, tr_exp.controls)), out_path);
      return 0;
    }
  } catch (const cws::validation_error& e) {
    std::cerr << "invalid: " << e.what() << "\n";
    return 2;
  } catch (const cws::numerical_error& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
