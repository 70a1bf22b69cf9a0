#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <g5/config.hpp>
#include <g5/runner.hpp>

using namespace g5;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const std::string& tag) {
  const fs::path p = fs::temp_directory_path() / ("g5_test_" + tag);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("config parsing: errors carry line numbers") {
  CHECK_THROWS_WITH_AS(parse_config(""), "line 0: missing scenario", ConfigError);

  try {
    parse_config("scenario = covariance\nbogus_key = 3\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& err) {
    CHECK(err.line() == 2);
    CHECK(std::string(err.what()).find("unknown key") != std::string::npos);
  }

  CHECK_THROWS_AS(parse_config("scenario = covariance\nm = nope\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("scenario = covariance\npoints = 100\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("scenario = covariance\nnsteps = 0\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("scenario = covariance\ntrajectory = warp(1)\n"),
                  ConfigError);
}

TEST_CASE("config defaults and the trajectory grammar") {
  const ScenarioConfig cfg = parse_config("scenario = custom-evolve\n");
  CHECK(cfg.m == 1.0);
  CHECK(cfg.hbar == 1.0);
  CHECK(cfg.u == 1.0);
  CHECK(cfg.e == 1.0);
  CHECK(cfg.c == 1.0);
  CHECK(cfg.points == std::vector<int>{1024});

  const auto accel = build_trajectory("accel(1,0,0)", 1.0);
  CHECK(accel->state(2.0).Add.x() == doctest::Approx(1.0));
  CHECK(accel->state(2.0).A.x() == doctest::Approx(2.0));

  const auto boost = build_trajectory("boost(0.5,0,0)", 1.0);
  CHECK(boost->state(1.0).A.x() == doctest::Approx(-0.5));

  const auto rot = build_trajectory("rotate(z, 0.25)", 1.0);
  CHECK(rot->has_rotation());
  CHECK((rot->state(0.0).R - Mat3::Identity()).cwiseAbs().maxCoeff() < 1e-15);

  const auto seq = build_trajectory("rotate(0,0,1, 0.25) accel(0.5,0,0)", 1.0);
  // Second segment applied after the first: A = R_outer A_inner + A_outer.
  const FrameState st = seq->state(1.0);
  CHECK(st.A.norm() > 0.0);

  const auto poly = build_trajectory("poly(0,0,0; 0.5,0,0; 0,0.25,0)", 1.0);
  CHECK(poly->state(2.0).A.x() == doctest::Approx(1.0));
  CHECK(poly->state(2.0).A.y() == doctest::Approx(1.0));
}

TEST_CASE("dump-config round trips") {
  const std::string text =
      "scenario = covariance\npoints = 256,256\nlengths = 24,24\n"
      "trajectory = rotate(z, 0.5)\nstate = gaussian(0.5,0.5,0; 0.3,-0.2,0; 1)\n"
      "nsteps = 64\nhorizon = 0.25\nout = some_dir\n";
  const ScenarioConfig cfg = parse_config(text);
  const std::string dumped = dump_config(cfg);
  const ScenarioConfig again = parse_config(dumped);
  CHECK(dump_config(again) == dumped);
  CHECK(again.points == cfg.points);
  CHECK(again.trajectory == cfg.trajectory);
  CHECK(again.state.sigma.x() == cfg.state.sigma.x());
}

TEST_CASE("series csv format") {
  const fs::path dir = temp_dir("csv");
  std::vector<SeriesRow> rows(2);
  rows[0].t = 0.0;
  rows[0].obs.norm = 1.0;
  rows[1].t = 0.125;
  rows[1].obs.norm = 1.0;
  rows[1].obs.mean_x = Vec3(0.25, 0, 0);
  rows[1].obs.energy = 1.0 / 3.0;
  write_series_csv(dir / "series.csv", rows);
  const std::string text = slurp(dir / "series.csv");
  CHECK(text.find("t,norm,mean_x0,mean_x1,mean_x2,mean_p0,mean_p1,mean_p2,var_x,"
                  "var_p,energy\n") == 0);
  CHECK(text.find("3.3333333333333331e-01") != std::string::npos);
  // Deterministic bytes on rewrite.
  write_series_csv(dir / "series2.csv", rows);
  CHECK(slurp(dir / "series2.csv") == text);
}

TEST_CASE("state round trip through the binary layout") {
  const fs::path dir = temp_dir("bin");
  const Grid g({32, 16}, {4.0, 2.0});
  ScalarWavefunction s = make_gaussian(g, Vec3(0.2, -0.1, 0), Vec3(0.4, 0.3, 0),
                                       Vec3::Constant(0.4), 1.5, 0.7);
  s.t = 2.25;
  write_state_bin(dir / "state.bin", s);
  const ScalarWavefunction r = read_state_bin(dir / "state.bin");
  CHECK(r.t == s.t);
  CHECK(r.m == s.m);
  CHECK(r.hbar == s.hbar);
  CHECK(r.grid == s.grid);
  REQUIRE(r.amp.size() == s.amp.size());
  for (std::size_t i = 0; i < s.amp.size(); ++i) CHECK(r.amp[i] == s.amp[i]);
}

TEST_CASE("emit_report writes the artifact set") {
  const fs::path dir = temp_dir("emit");
  ScenarioArtifacts art;
  art.report = nlohmann::ordered_json::array();
  emit_report(art, dir / "empty");
  CHECK(slurp(dir / "empty" / "report.json") == "[]\n");

  art.report = nlohmann::ordered_json{{"scenario", "demo"}, {"pass", true}};
  art.series.emplace_back("series", std::vector<SeriesRow>(1));
  const Grid g({16}, {4.0});
  art.final_state = make_gaussian(g, Vec3::Zero(), Vec3::Zero(), Vec3::Constant(0.5));
  emit_report(art, dir / "full");
  CHECK(fs::exists(dir / "full" / "report.json"));
  CHECK(fs::exists(dir / "full" / "series.csv"));
  CHECK(fs::exists(dir / "full" / "state.bin"));

  // Identical inputs, identical bytes.
  emit_report(art, dir / "again");
  CHECK(slurp(dir / "again" / "report.json") == slurp(dir / "full" / "report.json"));
  CHECK(slurp(dir / "again" / "series.csv") == slurp(dir / "full" / "series.csv"));
  CHECK(slurp(dir / "again" / "state.bin") == slurp(dir / "full" / "state.bin"));
}

TEST_CASE("run_scenario writes artifacts only inside the output directory") {
  const fs::path dir = temp_dir("scenario");
  ScenarioConfig cfg = parse_config(
      "scenario = custom-evolve\npoints = 128\nlengths = 16\n"
      "state = gaussian(0,0,0; 0.4,0,0; 0.5)\nnsteps = 64\nhorizon = 0.5\n");
  cfg.out = (dir / "only_here").string();
  CHECK(run_scenario(cfg) == 0);
  CHECK(fs::exists(dir / "only_here" / "report.json"));
  CHECK(fs::exists(dir / "only_here" / "series.csv"));
  CHECK(fs::exists(dir / "only_here" / "state.bin"));
  int entries = 0;
  for (const auto& entry : fs::directory_iterator(dir)) {
    (void)entry;
    ++entries;
  }
  CHECK(entries == 1);
}

TEST_CASE("scenario exit codes: pass and tolerance failure") {
  const fs::path dir = temp_dir("codes");
  // Equivalence with a = g passes.
  ScenarioConfig ok = parse_config(
      "scenario = equivalence\npoints = 256\nlengths = 24\n"
      "state = gaussian(0,0,0; 0,0,0; 0.5)\ng = 0.8,0,0\na = 0.8,0,0\n"
      "nsteps = 256\nhorizon = 1\n");
  ok.out = (dir / "ok").string();
  CHECK(run_scenario(ok) == 0);

  // Deliberately coarse covariance run fails its tolerance with status 1.
  ScenarioConfig coarse = parse_config(
      "scenario = covariance\npoints = 256\nlengths = 24\n"
      "trajectory = accel(1,0,0)\nstate = gaussian(0,0,0; 0,0,0; 0.5)\n"
      "nsteps = 2\nhorizon = 1\n");
  coarse.out = (dir / "coarse").string();
  CHECK(run_scenario(coarse) == 1);
  const auto report = nlohmann::json::parse(slurp(dir / "coarse" / "report.json"));
  CHECK(report.at("pass") == false);
  CHECK(report.at("l2_distance").get<double>() > 1e-6);
}

TEST_CASE("u-independence of emitted densities") {
  // One scenario re-run with u = 3 must give identical densities.
  const fs::path dir = temp_dir("uindep");
  auto run_with_u = [&](double u, const std::string& tag) {
    ScenarioConfig cfg = parse_config(
        "scenario = covariance\npoints = 256\nlengths = 24\n"
        "trajectory = accel(1,0,0)\nstate = gaussian(0,0,0; 0,0,0; 0.5)\n"
        "nsteps = 128\nhorizon = 1\nu = " + std::to_string(u) + "\n");
    cfg.out = (dir / tag).string();
    run_scenario(cfg);
    return read_state_bin(dir / tag / "state.bin");
  };
  const ScalarWavefunction a = run_with_u(1.0, "u1");
  const ScalarWavefunction b = run_with_u(3.0, "u3");
  CHECK(max_density_diff(a, b) < 1e-10);
}
