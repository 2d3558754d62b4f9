#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "duality/cli.hpp"

namespace {

struct RawOptions {
  std::string config_file;
  std::string sizes, j_list, b_list;
  std::string family, boundary, format, out, circuit, gens;
  double j1 = 0.0, j2 = 0.0, tol = 0.0;
  int jobs = 0;
};

void add_common_options(CLI::App* cmd, RawOptions& raw, bool with_n) {
  cmd->add_option("--config", raw.config_file,
                  "config file (key=value, lists comma-separated)");
  cmd->add_option("--L", raw.sizes, "chain lengths, comma-separated");
  if (with_n) cmd->add_option("--N", raw.sizes, "ring sizes, comma-separated");
  cmd->add_option("--J", raw.j_list, "coupling values, comma-separated");
  cmd->add_option("--B", raw.b_list, "field values, comma-separated");
  cmd->add_option("--J1", raw.j1, "three-site coupling");
  cmd->add_option("--J2", raw.j2, "two-site coupling");
  cmd->add_option("--boundary", raw.boundary, "open | periodic");
  cmd->add_option("--tol", raw.tol, "check tolerance");
  cmd->add_option("--out", raw.out, "report output path (default stdout)");
  cmd->add_option("--format", raw.format, "csv | json | text");
  cmd->add_option("--jobs", raw.jobs, "worker pool size for grid points");
  cmd->add_option("--circuit", raw.circuit,
                  "gate-sequence file overriding the canned duality circuit");
}

void apply_raw(const CLI::App* cmd, const RawOptions& raw,
               duality::cli::RunConfig& config) {
  if (!raw.config_file.empty())
    duality::cli::merge_config_file(config, raw.config_file);
  auto given = [cmd](const std::string& name) {
    return cmd->count(name) > 0;
  };
  if (given("--L") || (cmd->get_option_no_throw("--N") && given("--N")))
    duality::cli::set_config_value(config, "L", raw.sizes);
  if (given("--J")) duality::cli::set_config_value(config, "J", raw.j_list);
  if (given("--B")) duality::cli::set_config_value(config, "B", raw.b_list);
  if (given("--J1")) config.j1 = raw.j1;
  if (given("--J2")) config.j2 = raw.j2;
  if (given("--boundary"))
    duality::cli::set_config_value(config, "boundary", raw.boundary);
  if (given("--tol")) config.tol = raw.tol;
  if (given("--out")) config.out_path = raw.out;
  if (given("--format"))
    config.format = duality::cli::format_from_name(raw.format);
  if (given("--jobs")) config.jobs = raw.jobs;
  if (given("--circuit")) config.circuit_file = raw.circuit;
}

int emit(const duality::cli::CommandResult& result, const std::string& path) {
  if (path.empty()) {
    std::cout << result.report;
  } else {
    std::ofstream out(path);
    if (!out) {
      std::cerr << "error: cannot write " << path << '\n';
      return 2;
    }
    out << result.report;
  }
  return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "pauli-duality: spin-chain duality transformations and generalized "
      "stabilizer states"};
  app.require_subcommand(1);

  RawOptions raw;
  std::string family = "ising";
  std::string gens_file;

  auto* verify = app.add_subcommand(
      "verify-duality",
      "conjugate a model by the duality circuit and compare with its "
      "stated dual");
  verify->add_option("--family", family, "ising | cluster | cluster_ising");
  add_common_options(verify, raw, false);

  auto* solve = app.add_subcommand(
      "solve-zxz", "run the exact-solution checks for the periodic ZXZ chain");
  add_common_options(solve, raw, true);

  auto* sweep = app.add_subcommand(
      "entropy-sweep",
      "single-site entropy of the ZXZ ground state across a B/J grid");
  add_common_options(sweep, raw, true);

  auto* scan = app.add_subcommand(
      "energy-scan",
      "ground-energy inversion mismatch and gap trend for the Ising chain");
  add_common_options(scan, raw, false);

  auto* fixed = app.add_subcommand(
      "fixed-state", "solve a generator-set file for its unique fixed state");
  fixed->add_option("gens", gens_file, "generator set file")->required();
  add_common_options(fixed, raw, false);

  CLI11_PARSE(app, argc, argv);

  duality::cli::RunConfig config;
  const CLI::App* active = nullptr;
  try {
    if (verify->parsed()) {
      active = verify;
      config.command = duality::cli::Command::VerifyDuality;
      config.family = duality::family_from_name(family);
    } else if (solve->parsed()) {
      active = solve;
      config.command = duality::cli::Command::SolveZxz;
    } else if (sweep->parsed()) {
      active = sweep;
      config.command = duality::cli::Command::EntropySweep;
    } else if (scan->parsed()) {
      active = scan;
      config.command = duality::cli::Command::EnergyScan;
    } else {
      active = fixed;
      config.command = duality::cli::Command::FixedState;
    }
    apply_raw(active, raw, config);
    if (fixed->parsed()) config.generators_file = gens_file;
    const auto result = duality::cli::run(config);
    return emit(result, config.out_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
