// Command-line front end: `g5 check` runs the randomized invariant suites,
// `g5 run <config>...` executes scenario config files and writes their
// artifacts. Exit codes: 0 all pass, 1 tolerance failure, 2 usage error,
// 3 I/O failure.
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include <g5/runner.hpp>

namespace {

int run_configs(std::vector<std::string> paths, const std::string& out_override,
                int jobs, bool dump_only) {
  namespace fs = std::filesystem;
  std::vector<g5::ScenarioConfig> configs;
  for (const auto& path : paths) {
    std::ifstream in(path);
    if (!in.good()) {
      std::fprintf(stderr, "error: cannot read %s\n", path.c_str());
      return 3;
    }
    std::ostringstream text;
    text << in.rdbuf();
    try {
      configs.push_back(g5::parse_config(text.str()));
    } catch (const g5::ConfigError& err) {
      std::fprintf(stderr, "%s: %s\n", path.c_str(), err.what());
      return 2;
    }
  }

  if (!out_override.empty()) {
    if (configs.size() != 1) {
      std::fprintf(stderr, "error: --out needs exactly one config file\n");
      return 2;
    }
    configs[0].out = out_override;
  }

  if (dump_only) {
    for (const auto& cfg : configs) std::fputs(g5::dump_config(cfg).c_str(), stdout);
    return 0;
  }

  // Output directories must not collide.
  std::vector<fs::path> outs;
  for (const auto& cfg : configs) {
    const fs::path p = fs::absolute(cfg.out).lexically_normal();
    for (const auto& q : outs)
      if (p == q) {
        std::fprintf(stderr, "error: output directory '%s' used twice\n",
                     p.c_str());
        return 2;
      }
    outs.push_back(p);
  }

  std::vector<int> status(configs.size(), 0);
  if (jobs <= 1 || configs.size() == 1) {
    for (std::size_t i = 0; i < configs.size(); ++i)
      status[i] = g5::run_scenario(configs[i]);
  } else {
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t i = next.fetch_add(1); i < configs.size();
           i = next.fetch_add(1))
        status[i] = g5::run_scenario(configs[i]);
    };
    std::vector<std::thread> pool;
    const int nthreads = std::min<std::size_t>(jobs, configs.size());
    for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  int worst = 0;
  for (int s : status) worst = std::max(worst, s);
  return worst;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Extended Galilei transformations, non-inertial frame geometry and "
               "spectral wave-packet experiments"};
  app.require_subcommand(1);

  unsigned seed = 12345;
  auto* check = app.add_subcommand("check", "run the randomized invariant suites");
  check->add_option("--seed", seed, "random seed (env G5_SEED overrides)");

  std::vector<std::string> configs;
  std::string out_override;
  int jobs = 1;
  bool dump = false;
  auto* run = app.add_subcommand("run", "execute scenario config files");
  run->add_option("configs", configs, "scenario config files")
      ->required()
      ->check(CLI::ExistingFile);
  run->add_option("--out", out_override, "output directory (single config only)");
  run->add_option("--jobs", jobs, "number of configs to run concurrently");
  run->add_flag("--dump-config", dump, "print the normalized config and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (check->parsed()) return g5::run_check(g5::effective_seed(seed));
  return run_configs(configs, out_override, jobs, dump);
}
