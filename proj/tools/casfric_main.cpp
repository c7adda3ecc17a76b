// casfric: batch front door for the Casimir friction library. Reads a
// sectioned config, runs force/torque/dissipation/verify computations and
// emits deterministic CSV.

#include <algorithm>
#include <clocale>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "casfric/config.hpp"
#include "casfric/dissipation.hpp"
#include "casfric/friction.hpp"
#include "casfric/oracle.hpp"
#include "casfric/parallel.hpp"
#include "casfric/response.hpp"
#include "casfric/trajectory.hpp"
#include "casfric/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitAccuracy = 3;

using casfric::Config;
using casfric::Dimension;

struct CommonOpts {
  std::string config_path;
  std::string out_path = "-";
  int threads = 1;
  double tolerance = 0.0;  // 0 = use config / defaults
  std::string select;      // verify only
};

struct Inputs {
  Config cfg;
  casfric::DrudeMetal metal;
  casfric::PlateConfig plates;
  casfric::QuadratureSpec quad;
};

casfric::ThermalState thermal_from(const Config& cfg) {
  const bool t0 = cfg.flag_or("plates", "t0", false);
  if (t0) return casfric::ThermalState::zero_temperature();
  if (!cfg.has("plates", "beta")) {
    throw casfric::ParseError(
        "config: [plates] needs either beta or t0 = true", 0);
  }
  return casfric::ThermalState::inverse_temperature(
      cfg.number("plates", "beta", Dimension::inverse_energy));
}

Inputs load_inputs(const CommonOpts& opts) {
  Config cfg = Config::parse_file(opts.config_path);
  casfric::DrudeMetal metal(
      cfg.number("metal", "omega_p", Dimension::frequency),
      cfg.number("metal", "nu", Dimension::frequency),
      cfg.number("metal", "rho", Dimension::number_density));
  // optional direct injection of the dissipation constant: realized by the
  // relaxation frequency that reproduces it
  if (cfg.has("metal", "dissipation_override")) {
    const double d_target =
        cfg.number("metal", "dissipation_override", Dimension::dimensionless);
    const double pw = M_PI * metal.omega_p;
    metal = casfric::DrudeMetal(metal.omega_p, d_target * metal.rho * pw * pw,
                                metal.rho);
  }
  casfric::PlateConfig plates(
      cfg.number("plates", "gap", Dimension::length),
      cfg.number_or("plates", "rho1", Dimension::number_density, metal.rho),
      cfg.number_or("plates", "rho2", Dimension::number_density, metal.rho),
      thermal_from(cfg));
  casfric::QuadratureSpec quad;
  quad.rel_tol = cfg.number_or("quadrature", "rel_tol",
                               Dimension::dimensionless, quad.rel_tol);
  quad.k_max_factor = cfg.number_or("quadrature", "k_max_factor",
                                    Dimension::dimensionless,
                                    quad.k_max_factor);
  quad.m_max =
      cfg.number_or("quadrature", "m_max", Dimension::energy, quad.m_max);
  quad.max_subdivisions = static_cast<int>(cfg.integer_or(
      "quadrature", "max_subdivisions", quad.max_subdivisions));
  if (opts.tolerance > 0.0) quad.rel_tol = opts.tolerance;
  return Inputs{std::move(cfg), metal, plates, quad};
}

struct Grid {
  std::vector<double> values;
};

Grid load_grid(const Config& cfg, const std::string& prefix, Dimension dim) {
  Grid g;
  const long count = cfg.integer_or("run", prefix + "_count", 0);
  if (count <= 0) return g;
  const double start = cfg.number("run", prefix + "_start", dim);
  const double stop = count == 1 ? start : cfg.number("run", prefix + "_stop", dim);
  const std::string kind = cfg.text_or("run", prefix + "_grid", "lin");
  if (kind != "lin" && kind != "log") {
    throw casfric::ParseError("config: [run] " + prefix + "_grid must be lin|log",
                              0);
  }
  for (long i = 0; i < count; ++i) {
    const double u = count == 1 ? 0.0
                                : static_cast<double>(i) /
                                      static_cast<double>(count - 1);
    if (kind == "log") {
      g.values.push_back(start * std::pow(stop / start, u));
    } else {
      g.values.push_back(start + (stop - start) * u);
    }
  }
  return g;
}

class Output {
 public:
  explicit Output(const std::string& path) : path_(path) {
    if (path_ != "-") {
      file_.open(path_);
      if (!file_) throw casfric::ParseError("cannot open output '" + path_ + "'", 0);
    }
  }
  std::ostream& stream() { return path_ == "-" ? std::cout : file_; }

 private:
  std::string path_;
  std::ofstream file_;
};

void emit_preamble(std::ostream& out, const Inputs& in, const char* tool) {
  out << "# casfric " << tool << " config_hash=" << casfric::hex64(in.cfg.hash())
      << "\n";
  out << "# units: natural (hbar = k_B = 1); suffix tokens l, t, e are the "
         "natural length/time/energy units\n";
}

int run_force(const CommonOpts& opts) {
  const Inputs in = load_inputs(opts);
  const Grid grid = load_grid(in.cfg, "v", Dimension::velocity);
  const double d_t0 = casfric::coefficient_T0(in.metal, in.plates);

  const bool finite = !in.plates.thermal.is_zero_temperature();
  std::optional<double> c_ft;
  if (finite) {
    c_ft = casfric::coefficient_finiteT(in.metal, in.plates).value;
  }

  std::vector<std::string> rows(grid.values.size());
  casfric::parallel_for(
      grid.values.size(), opts.threads, [&](std::size_t i) {
        const double v = grid.values[i];
        std::string flags = "ok";
        std::ostringstream row;
        row << casfric::csv_double(v) << ","
            << casfric::csv_double(-d_t0 * v * v * v) << ",";
        if (finite) {
          const double beta = in.plates.thermal.beta();
          row << casfric::csv_double(-(*c_ft) * v);
          if (v > 0.0 && in.plates.gap / (beta * v) <= 1.0) {
            flags = "linear-law-regime-violated";
          }
        } else {
          row << "nan";
          flags = "no-finite-T";
        }
        row << "," << flags;
        rows[i] = row.str();
      });

  Output out(opts.out_path);
  emit_preamble(out.stream(), in, "force");
  out.stream() << "v,F_T0,F_finiteT,flags\n";
  for (const auto& r : rows) out.stream() << r << "\n";
  return kExitOk;
}

int run_torque(const CommonOpts& opts) {
  const Inputs in = load_inputs(opts);
  const Grid grid = load_grid(in.cfg, "omega", Dimension::frequency);
  const double radius = in.cfg.number("run", "radius", Dimension::length);
  const long n_annuli = in.cfg.integer_or("run", "n_annuli", 0);

  const double c_t0 = casfric::coefficient_T0(in.metal, in.plates);
  const bool finite = !in.plates.thermal.is_zero_temperature();
  std::optional<double> c_ft;
  if (finite) c_ft = casfric::coefficient_finiteT(in.metal, in.plates).value;

  std::vector<std::string> rows(grid.values.size());
  casfric::parallel_for(grid.values.size(), opts.threads, [&](std::size_t i) {
    const double om = grid.values[i];
    const casfric::DiscSpec disc(radius, om);
    const double tau0 = casfric::torque_T0(disc, c_t0);
    const casfric::FrictionLaw law(casfric::FrictionKind::t0_cubic, c_t0);
    double tau_num;
    if (n_annuli > 0) {
      tau_num = casfric::torque_numeric(disc, law, static_cast<int>(n_annuli));
    } else {
      tau_num = casfric::torque_numeric_adaptive(disc, law, 1e-10).value;
    }
    const double rel_err =
        tau0 == 0.0 ? std::abs(tau_num)
                    : std::abs(tau_num - tau0) / std::abs(tau0);
    std::string flags = rel_err > 1e-6 ? "coarse-quadrature" : "ok";
    std::ostringstream row;
    row << casfric::csv_double(om) << "," << casfric::csv_double(tau0) << ",";
    if (finite) {
      row << casfric::csv_double(casfric::torque_finiteT(disc, *c_ft));
    } else {
      row << "nan";
      if (flags == "ok") flags = "no-finite-T";
    }
    row << "," << casfric::csv_double(tau_num) << ","
        << casfric::csv_double(rel_err) << "," << flags;
    rows[i] = row.str();
  });

  Output out(opts.out_path);
  emit_preamble(out.stream(), in, "torque");
  out.stream() << "omega,tau_T0,tau_finiteT,tau_numeric,rel_err,flags\n";
  for (const auto& r : rows) out.stream() << r << "\n";
  return kExitOk;
}

int run_dissipation(const CommonOpts& opts) {
  const Inputs in = load_inputs(opts);
  const std::string traj_path = in.cfg.text("trajectory", "file");
  const casfric::Trajectory traj = casfric::Trajectory::load_file(traj_path);
  const auto mode = in.plates.thermal.is_zero_temperature()
                        ? casfric::TemperatureMode::t0
                        : casfric::TemperatureMode::finite_t;
  traj.require_closed();
  const auto segments = casfric::segmentize(traj);

  // one rate computation per distinct speed, farmed across threads
  std::vector<double> speeds;
  for (const auto& s : segments) speeds.push_back(s.speed());
  std::vector<double> unique = speeds;
  std::sort(unique.begin(), unique.end());
  unique.erase(std::unique(unique.begin(), unique.end()), unique.end());

  std::vector<casfric::BandResult> rates(unique.size());
  casfric::parallel_for(unique.size(), opts.threads, [&](std::size_t i) {
    rates[i] = casfric::sliding_rate(unique[i], in.plates, in.metal, in.quad,
                                     mode);
  });
  auto rate_of = [&](double u) {
    const auto it = std::lower_bound(unique.begin(), unique.end(), u);
    return rates[it - unique.begin()];
  };

  Output out(opts.out_path);
  emit_preamble(out.stream(), in, "dissipation");
  out.stream() << "# mode=" << (mode == casfric::TemperatureMode::t0
                                    ? "T0"
                                    : "finiteT")
               << "\n";
  out.stream() << "kind,index,t_mid,duration,speed,dE_per_area,flags\n";
  double total = 0.0, err = 0.0;
  bool regime_ok = true;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    const auto& s = segments[i];
    const auto r = rate_of(s.speed());
    const double contrib = 2.0 * s.tau * r.energy_per_area;
    total += contrib;
    err += 2.0 * s.tau * r.error_estimate;
    regime_ok = regime_ok && r.regime_ok;
    out.stream() << "segment," << i << "," << casfric::csv_double(s.t0) << ","
                 << casfric::csv_double(2.0 * s.tau) << ","
                 << casfric::csv_double(s.speed()) << ","
                 << casfric::csv_double(contrib) << ","
                 << (r.regime_ok ? "ok" : "m-max-exceeded") << "\n";
  }
  out.stream() << "total,,,"
               << casfric::csv_double(traj.t_end() - traj.t_start()) << ",,"
               << casfric::csv_double(total) << ","
               << (regime_ok ? "ok" : "m-max-exceeded") << "\n";
  out.stream() << "# error_estimate=" << casfric::csv_double(err) << "\n";
  return kExitOk;
}

int run_verify(const CommonOpts& opts) {
  const Config cfg = Config::parse_file(opts.config_path);
  casfric::VerifyOptions vo;
  vo.select = !opts.select.empty() ? opts.select
                                   : cfg.text_or("verify", "select", "default");
  vo.qhat_draws =
      static_cast<int>(cfg.integer_or("verify", "qhat_draws", vo.qhat_draws));
  vo.loop_draws =
      static_cast<int>(cfg.integer_or("verify", "loop_draws", vo.loop_draws));
  vo.pair_periods = cfg.number_or("verify", "pair_periods",
                                  Dimension::dimensionless, vo.pair_periods);
  vo.seed = static_cast<unsigned>(cfg.integer_or("verify", "seed", vo.seed));
  if (opts.tolerance > 0.0) vo.quad.rel_tol = opts.tolerance;

  const auto checks = casfric::run_verify_suite(vo);
  Output out(opts.out_path);
  out.stream() << "# casfric verify config_hash=" << casfric::hex64(cfg.hash())
               << "\n";
  bool all_pass = true;
  for (const auto& c : checks) {
    all_pass = all_pass && c.pass;
    out.stream() << (c.pass ? "[PASS] " : "[FAIL] ") << c.name
                 << ": achieved=" << casfric::csv_double(c.achieved)
                 << " tolerance=" << casfric::csv_double(c.tolerance) << " ("
                 << c.detail << ")\n";
  }
  out.stream() << (all_pass ? "verify: all checks passed\n"
                            : "verify: FAILURES above\n");
  return all_pass ? kExitOk : kExitAccuracy;
}

}  // namespace

int main(int argc, char** argv) {
  std::setlocale(LC_ALL, "C");
  CLI::App app{"Casimir friction dissipation, forces and torques for Drude "
               "half-spaces in slow relative motion"};
  app.require_subcommand(1);

  CommonOpts opts;
  auto add_common = [&](CLI::App* sub, bool with_select) {
    sub->add_option("--config", opts.config_path, "config file")
        ->envname("CF_CONFIG")
        ->required();
    sub->add_option("--out", opts.out_path, "output path ('-' = stdout)")
        ->envname("CF_OUT");
    sub->add_option("--threads", opts.threads, "worker threads")
        ->envname("CF_THREADS");
    sub->add_option("--tolerance", opts.tolerance,
                    "override quadrature relative tolerance")
        ->envname("CF_TOLERANCE");
    if (with_select) {
      sub->add_option("--select", opts.select,
                      "comma list of verify checks (default|all|none|names)");
    }
  };

  CLI::App* force = app.add_subcommand("force", "closed-form friction forces");
  CLI::App* torque = app.add_subcommand("torque", "rotating-disc torques");
  CLI::App* dissipation =
      app.add_subcommand("dissipation", "band-integrated dissipated energy");
  CLI::App* verify = app.add_subcommand("verify", "brute-force oracle suite");
  add_common(force, false);
  add_common(torque, false);
  add_common(dissipation, false);
  add_common(verify, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitParse;
  }

  try {
    if (force->parsed()) return run_force(opts);
    if (torque->parsed()) return run_torque(opts);
    if (dissipation->parsed()) return run_dissipation(opts);
    if (verify->parsed()) return run_verify(opts);
  } catch (const casfric::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const casfric::AccuracyError& e) {
    std::cerr << "error: " << e.what()
              << " (estimate=" << casfric::csv_double(e.estimate())
              << ", error_bound=" << casfric::csv_double(e.error_bound())
              << ")\n";
    return kExitAccuracy;
  } catch (const casfric::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  }
  return kExitOk;
}
