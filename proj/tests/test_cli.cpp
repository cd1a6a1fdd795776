#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "app.hpp"

using namespace whichpath;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::vector<std::string> fields(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  for (std::string f; std::getline(ss, f, ',');) out.push_back(f);
  return out;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "whichpath_cli_tests";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST(Quantities, UnitsAtTheBoundary) {
  EXPECT_DOUBLE_EQ(cli::parse_quantity("150eV", cli::Unit::energy, 1.0), 150.0 * si::electron_volt);
  EXPECT_DOUBLE_EQ(cli::parse_quantity("1 keV", cli::Unit::energy, 1.0), 1000.0 * si::electron_volt);
  EXPECT_DOUBLE_EQ(cli::parse_quantity("10um", cli::Unit::length, 1.0), 10e-6);
  EXPECT_DOUBLE_EQ(cli::parse_quantity("0.1mm", cli::Unit::length, 1.0), 1e-4);
  EXPECT_DOUBLE_EQ(cli::parse_quantity("1cm", cli::Unit::length, 1.0), 0.01);
  EXPECT_DOUBLE_EQ(cli::parse_quantity("10", cli::Unit::length, si::micrometre), 10e-6);
  EXPECT_THROW(cli::parse_quantity("10parsec", cli::Unit::length, 1.0), ConfigError);
  EXPECT_THROW(cli::parse_quantity("abc", cli::Unit::length, 1.0), ConfigError);
}

TEST(Quantities, SweepSyntax) {
  const auto s = cli::parse_sweep("0.02:0.3:100", cli::Unit::plain, 1.0);
  EXPECT_EQ(s.count, 100u);
  EXPECT_EQ(s.grid().front(), 0.02);
  EXPECT_EQ(s.grid().back(), 0.3);
  const auto g = cli::parse_sweep("1:100:3:log", cli::Unit::plain, 1.0).grid();
  EXPECT_NEAR(g[1], 10.0, 1e-12);
  EXPECT_THROW(cli::parse_sweep("1:2:1", cli::Unit::plain, 1.0), ConfigError);
  EXPECT_THROW(cli::parse_sweep("2:1:5", cli::Unit::plain, 1.0), ConfigError);
  EXPECT_THROW(cli::parse_sweep("1:2", cli::Unit::plain, 1.0), ConfigError);
  EXPECT_THROW(cli::parse_sweep("1:2:x", cli::Unit::plain, 1.0), ConfigError);
}

TEST(Cli, GammaPassthroughIsBitExact) {
  const auto r = run({"gamma", "--x-max", "4", "--count", "200"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = lines(r.out);
  ASSERT_EQ(rows.size(), 201u);
  EXPECT_EQ(rows.front(), "x,gamma,gamma_series");
  const auto last = fields(rows.back());
  EXPECT_EQ(std::stod(last[0]), 4.0);
  EXPECT_EQ(std::stod(last[1]), gamma_geometry(4.0));
}

TEST(Cli, LambdaReproducesEnergyOrdering) {
  const auto r = run({"lambda", "--metal", "Au", "--d-over-z0", "0.02:0.3:100", "--energies", "150eV,1keV,3keV"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = lines(r.out);
  ASSERT_EQ(rows.size(), 301u);
  EXPECT_EQ(rows.front(), "energy_eV,d_over_z0,inverse_length_per_m");
  for (std::size_t i = 0; i < 100; ++i) {
    const double a = std::stod(fields(rows[1 + i])[2]);
    const double b = std::stod(fields(rows[101 + i])[2]);
    const double c = std::stod(fields(rows[201 + i])[2]);
    EXPECT_GT(a, b);
    EXPECT_GT(b, c);
  }
  EXPECT_EQ(fields(rows[1])[0], "150");
  EXPECT_EQ(fields(rows[300])[0], "3000");
}

TEST(Cli, MuWritesCurveAndMetals) {
  const auto path = scratch("mu.csv");
  const auto r = run({"mu", "-o", path.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(lines(slurp(path)).front(), "x,mu,mu_first_order,mu_second_order");
  const auto metals = lines(slurp(scratch("mu_metals.csv")));
  ASSERT_EQ(metals.size(), 6u);
  EXPECT_EQ(metals.front(), "name,x,mu_lindhard,mu_hubbard");
  EXPECT_EQ(fields(metals[1])[0], "Au");
}

TEST(Cli, FringesWritesCsvAndPgm) {
  const auto path = scratch("fringes.csv");
  const auto r = run({"fringes", "-o", path.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto csv = lines(slurp(path));
  EXPECT_EQ(fields(csv.front())[0], "z0_m");
  EXPECT_EQ(fields(csv.front()).size(), 242u);
  const auto pgm = slurp(scratch("fringes.pgm"));
  EXPECT_EQ(pgm.substr(0, 3), "P2\n");
}

TEST(Cli, SpectralAndVisibilityColumns) {
  auto r = run({"spectral", "--q", "10:100:2", "--omega", "0.2:1:3"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(lines(r.out).front(), "q_over_inv_z0,omega_over_v_z0,S");
  EXPECT_EQ(lines(r.out).size(), 7u);
  r = run({"visibility", "--z0-range", "50um:1mm:5", "--energies", "150eV"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(lines(r.out).front(), "energy_eV,z0_m,inverse_length_per_m,visibility");
  EXPECT_EQ(lines(r.out).size(), 6u);
}

TEST(Cli, JsonFormat) {
  const auto r = run({"--format", "json", "gamma", "--count", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  ASSERT_EQ(doc.size(), 3u);
  EXPECT_EQ(doc[2]["x"].get<double>(), 4.0);
  const auto audit = nlohmann::json::parse(run({"audit"}).out);
  EXPECT_EQ(audit["canonical_route"], "metal_formula");
}

TEST(Cli, UnknownMetalIsConfigError) {
  const auto r = run({"lambda", "--metal", "Unobtainium"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("Unobtainium"), std::string::npos);
}

TEST(Cli, BadInputsAreConfigErrors) {
  EXPECT_EQ(run({"gamma", "--count", "1"}).code, 2);
  EXPECT_EQ(run({"lambda", "--d-over-z0", "0.3:0.02:10"}).code, 2);
  EXPECT_EQ(run({"--energy", "150furlongs", "audit"}).code, 2);
  EXPECT_EQ(run({"--no-such-flag", "gamma"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"--materials", "/nonexistent/table.csv", "materials"}).code, 2);
  EXPECT_EQ(run({"--z0", "5um", "--width-fraction", "0.01", "--separation=-1um", "audit"}).code, 2);
}

TEST(Cli, ConvergenceFailureRemovesOutputs) {
  const auto path = scratch("unreachable.csv");
  fs::remove(path);
  const auto r = run({"--rel-tol", "1e-17", "--abs-tol", "1e-300", "gamma", "-o", path.string()});
  EXPECT_EQ(r.code, 3);
  EXPECT_FALSE(fs::exists(path));
}

TEST(Cli, ShowConfigRoundTrips) {
  const auto shown = run({"--show-config"});
  ASSERT_EQ(shown.code, 0);
  EXPECT_NE(shown.out.find("metal=\"Au\""), std::string::npos);
  EXPECT_NE(shown.out.find("temperature=293"), std::string::npos);
  const auto path = scratch("defaults.ini");
  std::ofstream(path) << shown.out;
  EXPECT_EQ(run({"--config", path.string(), "lambda", "--d-over-z0", "0.1:0.2:3"}).out,
            run({"lambda", "--d-over-z0", "0.1:0.2:3"}).out);
}

TEST(Cli, FlagsOverrideConfigFile) {
  const auto path = scratch("silver.ini");
  std::ofstream(path) << "metal = \"Ag\"\ntemperature = 77\n";
  auto doc = nlohmann::json::parse(run({"--config", path.string(), "audit"}).out);
  EXPECT_EQ(doc["inputs"]["metal"], "Ag");
  EXPECT_EQ(doc["inputs"]["temperature_K"], 77.0);
  doc = nlohmann::json::parse(run({"--config", path.string(), "--metal", "Au", "audit"}).out);
  EXPECT_EQ(doc["inputs"]["metal"], "Au");
  EXPECT_EQ(doc["inputs"]["temperature_K"], 77.0);
}

TEST(Cli, MaterialsTableFromFileAndEnvironment) {
  const auto path = scratch("custom.csv");
  std::ofstream(path) << "name,k_F,k_TF,epsilon_i\nPt,1.0e10,1.6e10,2.5\n";
  auto r = run({"--materials", path.string(), "materials"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(lines(r.out).size(), 2u);
  EXPECT_EQ(fields(lines(r.out)[1])[0], "Pt");
  ::setenv("WHICHPATH_MATERIALS", path.c_str(), 1);
  r = run({"materials"});
  ::unsetenv("WHICHPATH_MATERIALS");
  EXPECT_EQ(fields(lines(r.out)[1])[0], "Pt");
  EXPECT_EQ(lines(run({"materials"}).out).size(), 6u);
}

TEST(Cli, OutputIndependentOfThreadCount) {
  EXPECT_EQ(run({"--threads", "1", "lambda"}).out, run({"--threads", "3", "lambda"}).out);
  EXPECT_EQ(run({"--threads", "1", "spectral", "--q", "5:50:4"}).out,
            run({"--threads", "4", "spectral", "--q", "5:50:4"}).out);
}
