#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "qwave/config.hpp"
#include "qwave/errors.hpp"
#include "qwave/harness.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kValidation = 1;
constexpr int kNumerical = 2;

int exit_code(qwave::ErrorKind kind) {
  switch (kind) {
    case qwave::ErrorKind::ConvergenceFailure:
    case qwave::ErrorKind::EigensolverNonconvergence:
    case qwave::ErrorKind::CapReached:
      return kNumerical;
    default:
      return kValidation;
  }
}

struct Options {
  std::string config;
  std::optional<std::string> out;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> threads;
};

void print_summary(const qwave::RunArtifact& a, qwave::RunMode mode) {
  std::printf("config_hash %s\n", a.config_hash.c_str());
  if (mode != qwave::RunMode::Solve) {
    const auto& k = a.constants;
    std::printf("constants C4=%.6g C5=%.6g C6=%.6g C11=%.6g C12=%.6g C13=%.6g C16=%.6g\n", k.C4, k.C5, k.C6,
                k.C11, k.C12, k.C13, k.C16);
  }
  for (const auto& s : a.alphas) {
    std::printf("alpha %-10.6g count %-6zu negsum %-12.6g drift %-10.3g %s", s.alpha, s.finest.count,
                s.finest.negative_sum, s.drift, s.trusted ? "trusted" : "untrusted");
    if (mode != qwave::RunMode::Solve)
      std::printf("  clr %.6g%s  lt %.6g%s", s.clr_rhs, s.clr_dominates ? "" : " (VIOLATED)", s.lt_rhs,
                  s.lt_dominates ? "" : " (VIOLATED)");
    std::printf("\n");
  }
  for (const auto& f : a.files) std::printf("wrote %s\n", f.string().c_str());
}

int run(const Options& opt, std::optional<qwave::RunMode> mode) {
  qwave::ExperimentConfig config = qwave::load_config(opt.config);
  if (opt.out) config.output = *opt.out;
  if (opt.seed) config.seed = *opt.seed;
  if (opt.threads) config.threads = *opt.threads;

  const qwave::GeometryReport geom = qwave::validate_experiment(config);
  if (!mode) {
    std::printf("ok %s\n", qwave::config_hash(config).c_str());
    std::printf("%s\n", geom.summary().c_str());
    return kOk;
  }
  const qwave::RunArtifact artifact = qwave::run_experiment(config, *mode, config.output);
  print_summary(artifact, *mode);
  if (*mode == qwave::RunMode::Verify && !artifact.dominance_ok()) {
    std::fprintf(stderr, "dominance check failed\n");
    return kValidation;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete spectrum and eigenvalue bounds for two-dimensional waveguides"};
  app.require_subcommand(1);

  Options opt;
  auto add_flags = [&](CLI::App* sub) {
    sub->add_option("--config", opt.config, "experiment config (JSON)")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", opt.out, "output directory (overrides config)");
    sub->add_option("--seed", opt.seed, "random seed (overrides config)");
    sub->add_option("--threads", opt.threads, "worker threads (overrides config)")->check(CLI::PositiveNumber);
  };

  std::optional<qwave::RunMode> mode;
  struct Verb {
    const char* name;
    const char* help;
    std::optional<qwave::RunMode> mode;
  };
  const Verb verbs[] = {
      {"validate", "check config and geometry", std::nullopt},
      {"solve", "spectral sweep only", qwave::RunMode::Solve},
      {"bounds", "bound ingredients and right-hand sides", qwave::RunMode::Bounds},
      {"verify", "full pipeline with dominance checks", qwave::RunMode::Verify},
      {"calibrate", "fit bound constants", qwave::RunMode::Calibrate},
  };
  for (const auto& v : verbs) {
    CLI::App* sub = app.add_subcommand(v.name, v.help);
    add_flags(sub);
    sub->callback([&mode, m = v.mode] { mode = m; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kValidation;
  }

  try {
    return run(opt, mode);
  } catch (const qwave::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kValidation;
  }
}
