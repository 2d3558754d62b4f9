#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "duality/cli.hpp"

using duality::cli::Command;
using duality::cli::CommandResult;
using duality::cli::OutputFormat;
using duality::cli::RunConfig;

namespace {

std::string write_temp(const std::string& name, const std::string& content) {
  const std::string path = "/tmp/pauli_duality_test_" + name;
  std::ofstream out(path);
  out << content;
  return path;
}

}  // namespace

TEST_CASE("list and number parsing") {
  CHECK(duality::cli::parse_int_list("4,6,8") == std::vector<int>{4, 6, 8});
  CHECK(duality::cli::parse_double_list("0.5,1,2") ==
        std::vector<double>{0.5, 1.0, 2.0});
  const std::string one = duality::cli::format_double(1.0);
  CHECK(one == "1.0000000000000000e+00");
  // lossless round trip
  const double tricky = 0.1 + 0.2;
  CHECK(std::stod(duality::cli::format_double(tricky)) == tricky);
}

TEST_CASE("config file merge and flag-style overrides") {
  const std::string path = write_temp("config", R"(# scan setup
family = cluster
L = 4,6
J = 0.5, 1
B = 1.25
tol = 1e-11
jobs = 2
)");
  RunConfig config;
  duality::cli::merge_config_file(config, path);
  CHECK(config.family == duality::ModelFamily::Cluster);
  CHECK(config.sizes == std::vector<int>{4, 6});
  CHECK(config.j_values == std::vector<double>{0.5, 1.0});
  CHECK(config.b_values == std::vector<double>{1.25});
  CHECK(config.tol == 1e-11);
  CHECK(config.jobs == 2);

  duality::cli::set_config_value(config, "J", "2");  // later value wins
  CHECK(config.j_values == std::vector<double>{2.0});

  CHECK_THROWS_AS(duality::cli::set_config_value(config, "nope", "1"),
                  std::invalid_argument);
}

TEST_CASE("verify-duality: ising grid passes and is deterministic") {
  RunConfig config;
  config.command = Command::VerifyDuality;
  config.family = duality::ModelFamily::Ising;
  config.sizes = {2, 4, 6};
  config.j_values = {0.5, 1.0, 2.0};
  const CommandResult first = run(config);
  CHECK(first.exit_code == 0);
  CHECK(first.report.find("true") != std::string::npos);

  config.jobs = 4;  // worker pool must not change the bytes
  const CommandResult second = run(config);
  CHECK(second.report == first.report);
}

TEST_CASE("verify-duality: cluster reports boundary-only residuals") {
  RunConfig config;
  config.command = Command::VerifyDuality;
  config.family = duality::ModelFamily::Cluster;
  config.sizes = {6};
  config.j_values = {0.7};
  config.b_values = {1.3};
  const CommandResult result = run(config);
  CHECK(result.exit_code == 0);
  std::istringstream lines(result.report);
  std::string header, row;
  std::getline(lines, header);
  std::getline(lines, row);
  CHECK(row.find("cluster,6,") == 0);
  CHECK(row.find(",true,true") != std::string::npos);
}

TEST_CASE("solve-zxz skips J = 0 points but runs the rest") {
  RunConfig config;
  config.command = Command::SolveZxz;
  config.sizes = {4};
  config.j_values = {0.0, 1.0};
  config.b_values = {0.5};
  const CommandResult result = run(config);
  CHECK(result.exit_code == 0);
  CHECK(result.report.find("skipped") != std::string::npos);
  CHECK(result.report.find("result PASS") != std::string::npos);

  config.format = OutputFormat::Json;
  const CommandResult json_result = run(config);
  CHECK(json_result.exit_code == 0);
  CHECK(json_result.report.find("\"lambda\"") != std::string::npos);
}

TEST_CASE("entropy sweep endpoints and monotonicity") {
  RunConfig config;
  config.command = Command::EntropySweep;
  config.sizes = {6};
  config.b_values = {0.0, 0.5, 1.0, 2.0, 1e6};
  const CommandResult result = run(config);
  CHECK(result.exit_code == 0);
  std::istringstream lines(result.report);
  std::string line;
  std::getline(lines, line);  // header
  std::getline(lines, line);  // B/J = 0 row
  const auto last_comma = line.rfind(',');
  CHECK(std::stod(line.substr(last_comma + 1)) ==
        doctest::Approx(1.0).epsilon(1e-10));
  CHECK(result.report.find("strictly_decreasing=true") != std::string::npos);
}

TEST_CASE("energy scan rejects the degenerate coupling") {
  RunConfig config;
  config.command = Command::EnergyScan;
  config.sizes = {4};
  config.j_values = {0.0};
  CHECK_THROWS_AS(run(config), std::invalid_argument);

  config.j_values = {1.0, 2.0};
  config.sizes = {4, 6};
  const CommandResult result = run(config);
  CHECK(result.exit_code == 0);
  CHECK(result.report.find("delta_non_increasing=true") != std::string::npos);
}

TEST_CASE("fixed-state command solves a generator file") {
  const std::string path = write_temp("gens", R"(L 2
g 1:Z
g 2:Z
)");
  RunConfig config;
  config.command = Command::FixedState;
  config.generators_file = path;
  const CommandResult result = run(config);
  CHECK(result.exit_code == 0);
  CHECK(result.report.find("commuting true") != std::string::npos);
  CHECK(result.report.find("independent true") != std::string::npos);
  CHECK(result.report.find("|00>") != std::string::npos);

  // deformed generator with an explicit matrix site
  const std::string deformed = write_temp("gens2", R"(L 3
g 3:Z 1:M(0,0,0.5,0,2,0,0,0) 2:Z
g 1:Z 2:M(0,0,0.5,0,2,0,0,0) 3:Z
g 2:Z 3:M(0,0,0.5,0,2,0,0,0) 1:Z
)");
  config.generators_file = deformed;
  const CommandResult deformed_result = run(config);
  CHECK(deformed_result.exit_code == 0);
  CHECK(deformed_result.report.find("result PASS") != std::string::npos);

  // conflicting set: reported, exit nonzero, report still written
  const std::string conflicting = write_temp("gens3", R"(L 2
g 1:Z
g scale(-1,0) 1:Z 2:M(1,0,0,0,0,0,1,0)
)");
  config.generators_file = conflicting;
  const CommandResult bad = run(config);
  CHECK(bad.exit_code == 1);
  CHECK_FALSE(bad.report.empty());
}
