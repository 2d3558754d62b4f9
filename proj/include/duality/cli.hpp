#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "duality/models.hpp"

namespace duality::cli {

enum class Command { VerifyDuality, SolveZxz, EntropySweep, EnergyScan,
                     FixedState };

enum class OutputFormat { Default, Csv, Json, Text };

struct RunConfig {
  Command command = Command::VerifyDuality;
  ModelFamily family = ModelFamily::Ising;
  std::vector<int> sizes;          // --L / --N
  std::vector<double> j_values;    // --J
  std::vector<double> b_values;    // --B
  double j1 = 1.0;
  double j2 = 0.0;
  Boundary boundary = Boundary::Open;
  bool boundary_set = false;
  double tol = 0.0;  // 0 selects the per-command default
  std::string out_path;
  OutputFormat format = OutputFormat::Default;
  int jobs = 1;
  std::string circuit_file;     // overrides the canned duality circuit
  std::string generators_file;  // fixed-state input
};

struct CommandResult {
  int exit_code = 0;
  std::string report;
};

/// Runs the configured command and produces the report text. Exit code 0
/// iff every executed check passed at the configured tolerance; the report
/// is produced either way.
CommandResult run(const RunConfig& config);

/// Flat key=value config file, lists comma-separated, '#' comments.
void merge_config_file(RunConfig& config, const std::string& path);
void set_config_value(RunConfig& config, std::string_view key,
                      std::string_view value);

/// Lossless lowercase scientific formatting (17 significant digits).
std::string format_double(double value);
std::vector<double> parse_double_list(std::string_view text);
std::vector<int> parse_int_list(std::string_view text);

OutputFormat format_from_name(std::string_view name);

}  // namespace duality::cli
