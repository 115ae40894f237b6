#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "floatctl/errors.hpp"
#include "floatctl/io.hpp"
#include "test_helpers.hpp"

using namespace floatctl;
using namespace floatctl::testing;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("floatctl_test_" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

const char* kConfigText = R"(# reference tank
[fluid]
g = 9.81
rho = 1000
h0 = 2
[geometry]
l = 1
L = 10
Lp = 10
[object]
h_eq = flat:1
[grid]
cells = 64
)";

} // namespace

TEST_CASE("config file parsing") {
  TempDir tmp;
  {
    std::ofstream out(tmp.file("tank.cfg"));
    out << kConfigText;
  }
  const LoadedConfig lc = load_config_file(tmp.file("tank.cfg"));
  CHECK(lc.physical.m == doctest::Approx(2000.0));
  CHECK(lc.cells == 64);
  CHECK(lc.hash == fnv1a(kConfigText));

  {
    std::ofstream out(tmp.file("bad.cfg"));
    out << "[fluid]\ng = 9.81\n"; // missing keys
  }
  CHECK_THROWS_AS(load_config_file(tmp.file("bad.cfg")), ConfigError);
  CHECK_THROWS_AS(load_config_file(tmp.file("missing.cfg")), ConfigError);
}

TEST_CASE("config with a sampled bottom profile") {
  TempDir tmp;
  {
    std::ofstream out(tmp.file("heq.csv"));
    out << "x,h\n";
    for (int i = 0; i <= 40; ++i) {
      const double x = -1.0 + 0.05 * i;
      out << format_double(x) << "," << format_double(0.8 + 0.4 * x * x) << "\n";
    }
  }
  {
    std::ofstream out(tmp.file("tank.cfg"));
    out << "[fluid]\ng = 9.81\nrho = 1000\nh0 = 2\n[geometry]\nl = 1\nL = 10\nLp = 10\n"
        << "[object]\nh_eq = samples:heq.csv\n[grid]\ncells = 48\n";
  }
  const LoadedConfig lc = load_config_file(tmp.file("tank.cfg"));
  CHECK_FALSE(lc.physical.h_eq.is_flat());
  CHECK(lc.physical.h_eq(0.0) == doctest::Approx(0.8));
  CHECK(lc.physical.h_eq(0.5) == doctest::Approx(0.9));
}

TEST_CASE("state CSV round trip is exact") {
  const PhysicalConfig cfg = cfg0();
  auto grid = make_grid(cfg, 48);
  std::mt19937_64 rng(3);
  const State z = random_state(grid, cfg, rng);
  TempDir tmp;
  write_state_csv(tmp.file("state.csv"), z);
  const State back = read_state_csv(tmp.file("state.csv"));
  REQUIRE(back.zeta.size() == z.zeta.size());
  CHECK((back.zeta - z.zeta).cwiseAbs().maxCoeff() == 0.0); // 17 digits round-trip
  CHECK((back.q - z.q).cwiseAbs().maxCoeff() == 0.0);
  CHECK(back.qi_avg == z.qi_avg);
  CHECK(back.delta == z.delta);
  CHECK(back.eta == z.eta);
}

TEST_CASE("state JSON round trip") {
  const PhysicalConfig cfg = cfg0();
  auto grid = make_grid(cfg, 32);
  std::mt19937_64 rng(5);
  const State z = random_state(grid, cfg, rng);
  const State back = state_from_json(state_to_json(z));
  CHECK((back.zeta - z.zeta).cwiseAbs().maxCoeff() == 0.0);
  CHECK((back.q - z.q).cwiseAbs().maxCoeff() == 0.0);
  CHECK(back.eta == z.eta);
}

TEST_CASE("control CSV round trip") {
  ControlSignal u = ControlSignal::from_function([](double t) { return std::sin(t) * 3; }, 0.01, 57);
  TempDir tmp;
  write_control_csv(tmp.file("u.csv"), u);
  const ControlSignal back = read_control_csv(tmp.file("u.csv"));
  CHECK(back.dt == u.dt);
  REQUIRE(back.samples.size() == u.samples.size());
  for (size_t i = 0; i < u.samples.size(); ++i) CHECK(back.samples[i] == u.samples[i]);
}

TEST_CASE("csv writers are deterministic") {
  const PhysicalConfig cfg = cfg0();
  auto grid = make_grid(cfg, 32);
  std::mt19937_64 rng(9);
  const State z = random_state(grid, cfg, rng);
  TempDir tmp;
  write_state_csv(tmp.file("a.csv"), z);
  write_state_csv(tmp.file("b.csv"), z);
  std::ifstream a(tmp.file("a.csv")), b(tmp.file("b.csv"));
  std::stringstream sa, sb;
  sa << a.rdbuf();
  sb << b.rdbuf();
  CHECK(sa.str() == sb.str());
  CHECK(!sa.str().empty());
}

TEST_CASE("format_double survives the round trip at 17 digits") {
  std::mt19937_64 rng(13);
  std::normal_distribution<double> dist;
  for (int t = 0; t < 200; ++t) {
    const double v = dist(rng) * std::pow(10.0, int(dist(rng) * 3));
    CHECK(std::stod(format_double(v)) == v);
  }
}
