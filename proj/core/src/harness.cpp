#include "qwave/harness.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <memory>
#include <sstream>

#include "qwave/errors.hpp"
#include "qwave/parallel.hpp"

namespace qwave {

namespace {

class CsvFile {
 public:
  CsvFile(const std::filesystem::path& path, const std::string& hash, const std::string& columns)
      : path_(path), out_(path) {
    if (!out_) throw Error(ErrorKind::ParseError, "cannot write " + path.string());
    out_ << std::setprecision(12);
    out_ << "# qwave config_hash=" << hash << "\n" << columns << "\n";
  }

  template <class... T>
  void row(const T&... values) {
    std::size_t i = 0;
    ((out_ << (i++ ? "," : "") << values), ...);
    out_ << "\n";
  }
  void fail(const std::string& message) {
    std::string clean = message;
    for (char& ch : clean) {
      if (ch == ',' || ch == '\n') ch = ';';
    }
    out_ << "FAILED," << clean << "\n";
    out_.flush();
  }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
  std::ofstream out_;
};

// Two-column gnuplot data with a comment header.
void write_dat(const std::filesystem::path& path, const std::string& hash, const std::string& columns,
               const std::vector<std::pair<double, double>>& points) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::ParseError, "cannot write " + path.string());
  out << std::setprecision(12);
  out << "# qwave config_hash=" << hash << "\n# " << columns << "\n";
  for (const auto& [x, y] : points) out << x << " " << y << "\n";
}

Grid2D level_grid(const ExperimentConfig& c, std::size_t level) {
  const std::size_t f = std::size_t{1} << level;
  return {c.grid.S, c.d, c.grid.nx * f, c.grid.ny * f};
}

EigenOptions eigen_options(const ExperimentConfig& c) {
  EigenOptions o;
  o.tolerance = c.tolerance;
  o.seed = c.seed;
  return o;
}

SpectralResult solve_member(const Potential& v, const StripGeometry& geom, const Grid2D& grid,
                            const ExperimentConfig& c) {
  if (geom.is_straight()) return solve_straight(v, geom.d, grid, c.count_cap, eigen_options(c));
  return solve_curved(v, geom, grid, c.count_cap, eigen_options(c));
}

CalibrationOptions calibration_options(const ExperimentConfig& c) {
  CalibrationOptions o;
  o.grid = level_grid(c, c.grid.refinements - 1);
  o.count_cap = c.count_cap;
  o.threads = c.threads;
  o.eigen = eigen_options(c);
  return o;
}

}  // namespace

bool RunArtifact::dominance_ok() const {
  for (const auto& a : alphas) {
    if (!a.clr_dominates || !a.lt_dominates) return false;
  }
  return true;
}

std::vector<FamilyMember> calibration_family(const ExperimentConfig& config) {
  const StripGeometry geom = build_geometry(config);
  const auto& specs = config.calibration_family.empty() ? std::vector<PotentialSpec>{config.potential}
                                                        : config.calibration_family;
  std::vector<FamilyMember> family;
  for (const auto& spec : specs) {
    for (double alpha : spec.alpha) {
      std::ostringstream label;
      label << spec.family << "@" << alpha;
      family.push_back({label.str(), build_potential(spec, config.d, alpha), geom});
    }
  }
  return family;
}

GeometryReport validate_experiment(const ExperimentConfig& config) {
  const StripGeometry geom = build_geometry(config);
  const GeometryReport report = validate_geometry(geom, std::min(0.01, config.d / 20.0));
  const Grid2D grid = level_grid(config, 0);
  for (const auto& member : calibration_family(config)) {
    // Support checks only; the potential is not assembled here.
    const auto& box = member.potential.support();
    if (!member.potential.is_zero() && !(box.x_lo > -grid.S && box.x_hi < grid.S)) {
      throw Error(ErrorKind::GridTooSmall, member.label + " support exceeds the truncation S = " + std::to_string(grid.S));
    }
  }
  for (double alpha : config.potential.alpha) {
    const Potential v = build_potential(config.potential, config.d, alpha);
    const auto& box = v.support();
    if (!v.is_zero() && !(box.x_lo > -grid.S && box.x_hi < grid.S)) {
      throw Error(ErrorKind::GridTooSmall, "potential support exceeds the truncation S = " + std::to_string(grid.S));
    }
  }
  if (!geom.is_straight() &&
      !(geom.curvature.window_start() > -grid.S && geom.curvature.window_end() < grid.S)) {
    // Zero samples at the window edges are tolerated by the solver's own check.
    const auto& k = geom.curvature.samples();
    for (std::size_t i = 0; i < k.size(); ++i) {
      if (k.values[i] != 0.0 && std::abs(k.x(i)) >= grid.S) {
        throw Error(ErrorKind::GridTooSmall, "curvature support exceeds the truncation S = " + std::to_string(grid.S));
      }
    }
  }
  return report;
}

RunArtifact run_experiment(const ExperimentConfig& config, RunMode mode, const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  RunArtifact art;
  art.directory = out_dir;
  art.config_hash = config_hash(config);
  const std::string& hash = art.config_hash;

  std::vector<std::unique_ptr<CsvFile>> open;
  auto open_csv = [&](const std::string& name, const std::string& columns) -> CsvFile& {
    open.push_back(std::make_unique<CsvFile>(out_dir / name, hash, columns));
    art.files.push_back(out_dir / name);
    return *open.back();
  };

  try {
    const StripGeometry geom = build_geometry(config);
    const bool straight = geom.is_straight();
    const auto& alphas = config.potential.alpha;
    const std::size_t levels = config.grid.refinements;
    const bool need_spectra = mode != RunMode::Bounds || !config.constants;

    // Constants, calibrated if requested or in calibrate mode.
    BoundConstants constants = config.constants.value_or(BoundConstants{});
    if (!config.constants || mode == RunMode::Calibrate) {
      const auto family = calibration_family(config);
      const CalibrationOptions copts = calibration_options(config);
      const auto obs = observe(family, {}, copts);
      constants = fit_constants(obs, straight ? CalibrationTarget::Straight : CalibrationTarget::Curved, constants, copts);
      constants = fit_constants(obs, CalibrationTarget::LiebThirring, constants, copts);
      if (mode == RunMode::Calibrate) {
        CsvFile& cal = open_csv("calibration.csv", "label,count,negative_sum,clr_rhs,lt_rhs");
        for (auto o : obs) {
          apply_constants(o.report, geom, constants);
          cal.row(o.label, o.count, o.negative_sum, o.report.clr(straight ? BoundMode::Straight : BoundMode::Curved),
                  o.report.lt_rhs);
        }
        CsvFile& out = open_csv("constants.csv", "C4,C5,C6,C11,C12,C13,C16,C17");
        out.row(constants.C4, constants.C5, constants.C6, constants.C11, constants.C12, constants.C13, constants.C16,
                constants.c17(geom));
      }
    }
    art.constants = constants;
    if (mode == RunMode::Calibrate) return art;

    // Spectral sweep: every (alpha, level) pair, merged in order.
    std::vector<SpectralResult> results;
    std::vector<SpectralResult> doubled;
    if (need_spectra) {
      results = parallel_map<SpectralResult>(alphas.size() * levels, config.threads, [&](std::size_t t) {
        const double alpha = alphas[t / levels];
        return solve_member(build_potential(config.potential, config.d, alpha), geom, level_grid(config, t % levels),
                            config);
      });
      if (config.truncation_check) {
        doubled = parallel_map<SpectralResult>(alphas.size(), config.threads, [&](std::size_t a) {
          Grid2D g = level_grid(config, 0);
          g.S *= 2.0;
          g.nx *= 2;
          return solve_member(build_potential(config.potential, config.d, alphas[a]), geom, g, config);
        });
      }
    }

    for (std::size_t a = 0; a < alphas.size(); ++a) {
      AlphaSummary s;
      s.alpha = alphas[a];
      if (need_spectra) {
        s.finest = results[a * levels + levels - 1];
        if (levels >= 2) {
          const double lo = s.finest.lowest();
          const double prev = results[a * levels + levels - 2].lowest();
          s.drift = std::abs(lo - prev) / std::max(std::abs(lo), std::numeric_limits<double>::min());
          s.trusted = s.drift < config.convergence_gate;
        } else {
          s.drift = std::numeric_limits<double>::quiet_NaN();
        }
      }
      art.alphas.push_back(s);
    }

    if (need_spectra && mode != RunMode::Bounds) {
      CsvFile& spectral = open_csv("spectral.csv", "alpha,S,nx,ny,count,negative_sum,lowest_eig");
      for (std::size_t t = 0; t < results.size(); ++t) {
        const auto& r = results[t];
        spectral.row(alphas[t / levels], r.truncation, r.nx, r.ny, r.count, r.negative_sum, r.lowest());
      }
      CsvFile& conv = open_csv("convergence.csv", "alpha,level,nx,ny,count,lowest_eig,drift,trusted");
      for (std::size_t t = 0; t < results.size(); ++t) {
        const auto& s = art.alphas[t / levels];
        const bool last = t % levels == levels - 1;
        conv.row(alphas[t / levels], t % levels, results[t].nx, results[t].ny, results[t].count, results[t].lowest(),
                 last ? s.drift : std::numeric_limits<double>::quiet_NaN(), last && s.trusted ? 1 : 0);
      }
      std::vector<std::pair<double, double>> counts, eig_vs_s;
      for (std::size_t a = 0; a < alphas.size(); ++a) {
        counts.emplace_back(alphas[a], static_cast<double>(art.alphas[a].finest.count));
      }
      write_dat(out_dir / "count_vs_alpha.dat", hash, "alpha N_minus", counts);
      art.files.push_back(out_dir / "count_vs_alpha.dat");
      if (config.truncation_check) {
        CsvFile& trunc = open_csv("truncation.csv", "alpha,S,count,negative_sum,lowest_eig,count_change,relative_sum_change");
        for (std::size_t a = 0; a < alphas.size(); ++a) {
          const auto& base = results[a * levels];
          const auto& big = doubled[a];
          const double rel = base.negative_sum > 0.0 ? std::abs(big.negative_sum - base.negative_sum) / base.negative_sum : 0.0;
          trunc.row(alphas[a], big.truncation, big.count, big.negative_sum, big.lowest(),
                    static_cast<long long>(big.count) - static_cast<long long>(base.count), rel);
          eig_vs_s.emplace_back(1.0 / base.truncation, base.lowest());
          eig_vs_s.emplace_back(1.0 / big.truncation, big.lowest());
        }
      } else {
        for (std::size_t a = 0; a < alphas.size(); ++a) {
          eig_vs_s.emplace_back(1.0 / results[a * levels].truncation, results[a * levels].lowest());
        }
      }
      write_dat(out_dir / "eig_vs_invS.dat", hash, "1/S lowest_eig", eig_vs_s);
      art.files.push_back(out_dir / "eig_vs_invS.dat");
    }

    if (mode == RunMode::Bounds || mode == RunMode::Verify) {
      CsvFile& rows = open_csv("bounds.csv", "alpha,k,beta_k,C_k,gamma_k,D_k");
      CsvFile& summary = open_csv(
          "bounds_summary.csv",
          "alpha,mode,straight_rhs,curved_rhs,lt_rhs,reduced_count_straight,reduced_count_curved,C4,C5,C6,C11,C12,C13,"
          "C16,C17,count,negative_sum,clr_dominates,lt_dominates,trusted");
      std::vector<std::pair<double, double>> bound_points;
      for (auto& s : art.alphas) {
        const Potential v = build_potential(config.potential, config.d, s.alpha);
        const BoundReport rep = compute_bounds(v, geom, constants, config.grid.S);
        for (const auto& r : rep.rows()) rows.row(s.alpha, r.k, r.beta, r.C, r.gamma, r.D);
        s.clr_rhs = rep.clr(straight ? BoundMode::Straight : BoundMode::Curved);
        s.lt_rhs = rep.lt_rhs;
        if (mode == RunMode::Verify) {
          s.clr_dominates = s.clr_rhs >= static_cast<double>(s.finest.count);
          s.lt_dominates = s.lt_rhs >= s.finest.negative_sum;
        }
        const bool verify = mode == RunMode::Verify;
        summary.row(s.alpha, straight ? "straight" : "curved", rep.straight_rhs, rep.curved_rhs, rep.lt_rhs,
                    rep.reduced_count_straight, rep.reduced_count_curved, constants.C4, constants.C5, constants.C6,
                    constants.C11, constants.C12, constants.C13, constants.C16, constants.c17(geom),
                    verify ? std::to_string(s.finest.count) : std::string(),
                    verify ? std::to_string(s.finest.negative_sum) : std::string(), verify ? (s.clr_dominates ? 1 : 0) : -1,
                    verify ? (s.lt_dominates ? 1 : 0) : -1, verify ? (s.trusted ? 1 : 0) : -1);
        bound_points.emplace_back(s.alpha, s.clr_rhs);
      }
      write_dat(out_dir / "bound_vs_alpha.dat", hash, "alpha clr_rhs", bound_points);
      art.files.push_back(out_dir / "bound_vs_alpha.dat");
    }
  } catch (const std::exception& e) {
    if (open.empty()) {
      try {
        open_csv(mode == RunMode::Calibrate ? "calibration.csv" : "spectral.csv", "status,message");
      } catch (...) {
      }
    }
    for (auto& f : open) f->fail(e.what());
    throw;
  }
  return art;
}

}  // namespace qwave
