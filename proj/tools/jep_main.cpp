// Command-line front end: every subcommand writes machine-readable output
// (JSONL trajectories, CSV distributions, JSON stats) with byte-identical
// results for identical configuration and seed.

#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "jep/errors.hpp"
#include "jep/exact.hpp"
#include "jep/gibbs.hpp"
#include "jep/harness.hpp"
#include "jep/io.hpp"
#include "jep/jump_family.hpp"
#include "jep/process.hpp"
#include "jep/related_models.hpp"
#include "jep/rng.hpp"
#include "verify_battery.hpp"

namespace {

using namespace jep;

void with_output(const std::string& path, const std::function<void(std::ostream&)>& write) {
  if (path.empty()) {
    write(std::cout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot open output file: " + path);
  write(out);
}

std::unique_ptr<JumpFamily> make_family(const RunConfig& config) {
  if (config.family == "memoryless") {
    return std::make_unique<MemorylessFamily>(config.alpha.value());
  }
  if (config.family == "bounded-uniform") {
    return std::make_unique<BoundedUniformFamily>(config.m.value());
  }
  if (config.family == "table") {
    return std::make_unique<TableFamily>(TableFamily::from_file(config.table_path));
  }
  throw std::invalid_argument("unknown family: " + config.family);
}

// Truncation rule for memoryless runs: n * alpha^{h_max - n} < 1e-12.
Height default_hmax(int n, double alpha) {
  double needed = (std::log(1e-12) - std::log(static_cast<double>(n))) / std::log(alpha);
  return n + static_cast<Height>(std::ceil(needed)) + 2;
}

Height resolve_hmax(const RunConfig& config) {
  if (config.h_max > 0) return config.h_max;
  if (config.family == "bounded-uniform") return config.m.value();
  if (config.alpha) return default_hmax(config.n, *config.alpha);
  throw std::invalid_argument("--hmax is required for this family");
}

int cmd_simulate(const RunConfig& config) {
  std::unique_ptr<JumpFamily> family = make_family(config);
  RandomStream stream(config.seed);
  with_output(config.out_path, [&](std::ostream& out) {
    simulate_visit(config.init, *family, config.horizon, stream,
                   [&out](std::int64_t t, const ParticleConfig& state) {
                     write_trajectory_record(out, t, state);
                   });
  });
  return 0;
}

int cmd_stationary(const RunConfig& config, const std::string& matrix_dump_path) {
  RunConfig resolved = config;
  Height h_max = resolve_hmax(resolved);
  TruncatedStateSpace space = TruncatedStateSpace::enumerate(config.n, h_max);
  std::unique_ptr<JumpFamily> family = make_family(config);
  StochasticMatrix matrix = build_matrix(*family, space, config.tol);
  if (!matrix_dump_path.empty()) {
    with_output(matrix_dump_path, [&](std::ostream& out) {
      write_matrix_json(out, space, matrix);
    });
  }
  DistVector pi = stationary_distribution(matrix, config.tol);
  with_output(config.out_path, [&](std::ostream& out) {
    write_distribution_csv(out, space, pi);
  });
  return 0;
}

int cmd_gibbs(const RunConfig& config, const std::string& stats_path) {
  Height h_max = resolve_hmax(config);
  TruncatedStateSpace space = TruncatedStateSpace::enumerate(config.n, h_max);
  double beta = -std::log(config.alpha.value());
  DistVector law = gibbs_vector(space, beta);
  with_output(config.out_path, [&](std::ostream& out) {
    write_distribution_csv(out, space, law);
  });
  EquilibriumStats stats = equilibrium_stats(config.n, config.alpha.value());
  with_output(stats_path, [&](std::ostream& out) { write_stats_json(out, stats); });
  return 0;
}

int cmd_gibbs_sample(const RunConfig& config, bool empirical) {
  const int n = config.n;
  const double alpha = config.alpha.value();
  const ParticleConfig base = config.init;
  if (empirical) {
    EmpiricalSetDistribution counts =
        sample_batch(config.samples, config.seed, [&](RandomStream& stream) {
          return sample_gibbs(base, n, alpha, stream);
        });
    with_output(config.out_path, [&](std::ostream& out) {
      write_distribution_csv(out, counts);
    });
    return 0;
  }
  with_output(config.out_path, [&](std::ostream& out) {
    RandomStream root(config.seed);
    for (std::uint64_t i = 0; i < config.samples; ++i) {
      RandomStream sub = root.split(i);
      write_sample_record(out, i, sample_gibbs(base, n, alpha, sub));
    }
  });
  return 0;
}

int cmd_converge(const RunConfig& config) {
  Height h_max = resolve_hmax(config);
  TruncatedStateSpace space = TruncatedStateSpace::enumerate(config.n, h_max);
  auto profile = convergence_profile(config.init, config.alpha.value(), config.horizon, space);
  with_output(config.out_path, [&](std::ostream& out) {
    out << "t,tv\n";
    for (const auto& [t, tv] : profile) {
      out << t << ',' << format_double(tv) << '\n';
    }
  });
  return 0;
}

int cmd_warrington(const RunConfig& config) {
  Height m = config.m.value();
  TruncatedStateSpace space = TruncatedStateSpace::enumerate(config.n, m);
  DistVector law(space.size());
  for (std::size_t i = 0; i < space.size(); ++i) {
    law[i] = warrington_pmf(config.n, m, space.state(i));
  }
  with_output(config.out_path, [&](std::ostream& out) {
    write_distribution_csv(out, space, law);
  });
  return 0;
}

int cmd_asep(const RunConfig& config, double t_end) {
  AsepParams params{config.n, config.lambda.value(), config.eta.value()};
  if (config.samples > 0) {
    if (!(t_end > 0.0)) {
      throw std::invalid_argument("config: --samples requires a positive --t-end");
    }
    ParticleConfig init = config.init;
    if (init.empty()) {
      std::vector<Height> ground;
      for (Height x = 0; x < config.n; ++x) ground.push_back(x);
      init = ParticleConfig(std::move(ground));
    }
    EmpiricalSetDistribution counts =
        sample_batch(config.samples, config.seed, [&](RandomStream& stream) {
          return asep_simulate(params, init, t_end, stream);
        });
    with_output(config.out_path, [&](std::ostream& out) {
      write_distribution_csv(out, counts);
    });
    return 0;
  }
  Height h_max = config.h_max > 0 ? config.h_max
                                  : default_hmax(config.n, params.ratio());
  TruncatedStateSpace space = TruncatedStateSpace::enumerate(config.n, h_max);
  DistVector pi = asep_stationary_exact(params, space, config.tol);
  with_output(config.out_path, [&](std::ostream& out) {
    write_distribution_csv(out, space, pi);
  });
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"juggler's exclusion process: simulation, exact analysis, equilibria"};
  app.require_subcommand(1);

  RunConfig config;
  config.family = "memoryless";
  std::string init_text;
  std::string matrix_dump_path;
  std::string stats_path;
  bool empirical = false;
  double t_end = 0.0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", config.seed, "64-bit stream seed");
    sub->add_option("--out", config.out_path, "output path (default stdout)");
    sub->add_option("--hmax", config.h_max, "exclusive height bound of the truncation");
    sub->add_option("--tol", config.tol, "numerical/truncation tolerance");
  };
  auto add_family = [&](CLI::App* sub) {
    sub->add_option("--family", config.family, "memoryless | bounded-uniform | table");
    sub->add_option("--alpha", [&config](const std::vector<std::string>& values) {
      config.alpha = std::stod(values.front());
      return true;
    }, "memoryless parameter in (0,1)");
    sub->add_option("--m", [&config](const std::vector<std::string>& values) {
      config.m = std::stoll(values.front());
      return true;
    }, "bounded-uniform exclusive height bound M");
    sub->add_option("--table", config.table_path, "JSON jump-table path");
  };

  CLI::App* simulate = app.add_subcommand("simulate", "simulate a JEP trajectory (JSONL)");
  simulate->add_option("--n", config.n, "particle count")->required();
  simulate->add_option("--init", init_text, "initial state, e.g. 1,4,7")->required();
  simulate->add_option("--t", config.horizon, "number of steps")->required();
  add_family(simulate);
  add_common(simulate);

  CLI::App* stationary = app.add_subcommand("stationary", "exact stationary distribution (CSV)");
  stationary->add_option("--n", config.n, "particle count")->required();
  add_family(stationary);
  add_common(stationary);
  stationary->add_option("--dump-matrix", matrix_dump_path, "write the kernel as JSON");

  CLI::App* gibbs = app.add_subcommand("gibbs", "closed-form Gibbs law (CSV) + stats (JSON)");
  gibbs->add_option("--n", config.n, "particle count")->required();
  gibbs->add_option("--alpha", [&config](const std::vector<std::string>& values) {
    config.alpha = std::stod(values.front());
    return true;
  }, "memoryless parameter in (0,1)")->required();
  add_common(gibbs);
  gibbs->add_option("--stats-out", stats_path, "stats JSON path (default stdout)");

  CLI::App* gibbs_sample = app.add_subcommand("gibbs-sample", "draw equilibrium samples");
  gibbs_sample->add_option("--n", config.n, "particle count")->required();
  gibbs_sample->add_option("--alpha", [&config](const std::vector<std::string>& values) {
    config.alpha = std::stod(values.front());
    return true;
  }, "memoryless parameter in (0,1)")->required();
  gibbs_sample->add_option("--samples", config.samples, "sample count")->required();
  gibbs_sample->add_option("--base", init_text, "base set A for the A-neglecting law");
  gibbs_sample->add_flag("--empirical", empirical, "write empirical CSV instead of JSONL");
  add_common(gibbs_sample);

  CLI::App* converge = app.add_subcommand("converge", "exact TV-to-Gibbs profile (CSV)");
  converge->add_option("--n", config.n, "particle count")->required();
  converge->add_option("--init", init_text, "initial state")->required();
  converge->add_option("--alpha", [&config](const std::vector<std::string>& values) {
    config.alpha = std::stod(values.front());
    return true;
  }, "memoryless parameter in (0,1)")->required();
  converge->add_option("--t", config.horizon, "profile horizon")->required();
  add_common(converge);

  CLI::App* warrington = app.add_subcommand("warrington", "bounded-uniform equilibrium (CSV)");
  warrington->add_option("--n", config.n, "particle count")->required();
  warrington->add_option("--m", [&config](const std::vector<std::string>& values) {
    config.m = std::stoll(values.front());
    return true;
  }, "exclusive height bound M")->required();
  add_common(warrington);

  CLI::App* asep = app.add_subcommand("asep", "reflecting-boundary ASEP equilibrium (CSV)");
  asep->add_option("--n", config.n, "particle count")->required();
  asep->add_option("--lambda", [&config](const std::vector<std::string>& values) {
    config.lambda = std::stod(values.front());
    return true;
  }, "up-jump rate")->required();
  asep->add_option("--eta", [&config](const std::vector<std::string>& values) {
    config.eta = std::stod(values.front());
    return true;
  }, "down-jump rate")->required();
  asep->add_option("--samples", config.samples, "simulate this many end-states instead");
  asep->add_option("--t-end", t_end, "simulation horizon (with --samples)");
  asep->add_option("--init", init_text, "initial state for simulation");
  add_common(asep);

  CLI::App* verify = app.add_subcommand("verify", "run the full invariant suite");

  try {
    app.parse(argc, argv);

    if (!init_text.empty()) config.init = ParticleConfig::parse(init_text);

    if (*verify) {
      return jep::tools::run_verify_battery(std::cout) == 0 ? 0 : 3;
    }
    if (*simulate) {
      config.model = "simulate";
      config.validate();
      return cmd_simulate(config);
    }
    if (*stationary) {
      config.model = "stationary";
      config.validate();
      return cmd_stationary(config, matrix_dump_path);
    }
    if (*gibbs) {
      config.model = "gibbs";
      config.validate();
      return cmd_gibbs(config, stats_path);
    }
    if (*gibbs_sample) {
      config.model = "gibbs-sample";
      // base may have any size relative to n
      RunConfig relaxed = config;
      relaxed.init = ParticleConfig{};
      relaxed.validate();
      return cmd_gibbs_sample(config, empirical);
    }
    if (*converge) {
      config.model = "converge";
      config.validate();
      return cmd_converge(config);
    }
    if (*warrington) {
      config.model = "warrington";
      config.family = "bounded-uniform";
      config.validate();
      return cmd_warrington(config);
    }
    if (*asep) {
      config.model = "asep";
      RunConfig relaxed = config;
      relaxed.init = ParticleConfig{};  // validated against n inside cmd_asep
      relaxed.family.clear();           // jump family plays no role here
      relaxed.validate();
      if (!config.init.empty() && static_cast<int>(config.init.size()) != config.n) {
        throw std::invalid_argument("config: initial state must contain exactly n heights");
      }
      return cmd_asep(config, t_end);
    }
    return 2;
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const TruncationError& e) {
    std::cerr << "truncation error: " << e.what() << '\n';
    return 3;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
