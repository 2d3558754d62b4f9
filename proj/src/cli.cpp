#include "duality/cli.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "duality/dense.hpp"
#include "duality/gen_stabilizer.hpp"
#include "duality/limits.hpp"

namespace duality::cli {

namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// Deterministic worker pool: results land in index order regardless of
// completion order.
template <typename Fn>
void parallel_for(std::size_t count, int jobs, Fn&& fn) {
  const int workers =
      std::max(1, std::min<int>(jobs, static_cast<int>(count)));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto body = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) pool.emplace_back(body);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

bool boundary_supported(const PauliString& key, int length) {
  for (int k = 0; k < length; ++k) {
    if (key.op(k) == PauliOp::I) continue;
    if (k != 0 && k != 1 && k != length - 2 && k != length - 1) return false;
  }
  return true;
}

std::vector<double> linspace(double lo, double hi, int points) {
  std::vector<double> out;
  for (int i = 0; i < points; ++i)
    out.push_back(lo + (hi - lo) * i / (points - 1));
  return out;
}

struct DualityRow {
  ModelSpec spec;
  double bulk_max_error = 0.0;
  int residual_terms = 0;
  double residual_max_abs = 0.0;
  bool residual_boundary_only = true;
  bool pass = false;
};

CommandResult run_verify_duality(const RunConfig& config) {
  const double tol = config.tol > 0 ? config.tol : 1e-12;
  const std::vector<int> sizes =
      config.sizes.empty() ? std::vector<int>{4, 6, 8} : config.sizes;
  const std::vector<double> js =
      config.j_values.empty() ? std::vector<double>{0.5, 1.0, 2.0}
                              : config.j_values;
  const std::vector<double> bs =
      config.b_values.empty() ? std::vector<double>{1.0} : config.b_values;

  std::string circuit_text;
  if (!config.circuit_file.empty())
    circuit_text = read_file(config.circuit_file);

  if (config.boundary_set && config.boundary != Boundary::Open)
    throw std::invalid_argument(
        "verify-duality: the stated identities are for open boundaries");
  std::vector<ModelSpec> grid;
  for (int length : sizes)
    for (double j : js)
      for (double b : bs)
        grid.push_back({.family = config.family,
                        .length = length,
                        .J = j,
                        .J1 = config.j1,
                        .J2 = config.j2,
                        .B = b,
                        .boundary = Boundary::Open});

  std::vector<DualityRow> rows(grid.size());
  parallel_for(grid.size(), config.jobs, [&](std::size_t i) {
    const ModelSpec& spec = grid[i];
    const DualityPair pair = [&]() -> DualityPair {
      if (circuit_text.empty()) return duality_residual(spec);
      const Circuit circuit = parse_circuit(circuit_text, spec.length);
      PauliSum transformed = conjugate(circuit, build(spec));
      switch (spec.family) {
        case ModelFamily::Ising:
          return {std::move(transformed),
                  ising_dual_target(spec.length, spec.J)};
        case ModelFamily::Cluster:
          return {std::move(transformed),
                  cluster_dual_target(spec.length, spec.J, spec.B)};
        case ModelFamily::ClusterIsing:
          return {std::move(transformed),
                  cluster_ising_dual_target(spec.length, spec.J1, spec.J2,
                                            spec.B)};
        default:
          throw std::invalid_argument("verify-duality: unsupported family");
      }
    }();
    const PauliSum diff = pair.transformed - pair.target;
    DualityRow row;
    row.spec = spec;
    const bool allow_boundary = spec.family != ModelFamily::Ising;
    for (const auto& [key, coeff] : diff.terms()) {
      const double magnitude = std::abs(coeff);
      if (allow_boundary && boundary_supported(key, spec.length)) {
        ++row.residual_terms;
        row.residual_max_abs = std::max(row.residual_max_abs, magnitude);
      } else {
        row.bulk_max_error = std::max(row.bulk_max_error, magnitude);
        row.residual_boundary_only = false;
      }
    }
    row.pass = row.bulk_max_error <= tol;
    rows[i] = row;
  });

  std::string report =
      "family,L,J,J1,J2,B,bulk_max_error,residual_terms,residual_max_abs,"
      "residual_boundary_only,pass\n";
  bool all_pass = true;
  std::string first_failure;
  for (const auto& row : rows) {
    all_pass = all_pass && row.pass;
    if (!row.pass && first_failure.empty())
      first_failure = family_name(row.spec.family) +
                      " L=" + std::to_string(row.spec.length) +
                      " J=" + format_double(row.spec.J);
    report += family_name(row.spec.family) + ',' +
              std::to_string(row.spec.length) + ',' +
              format_double(row.spec.J) + ',' + format_double(row.spec.J1) +
              ',' + format_double(row.spec.J2) + ',' +
              format_double(row.spec.B) + ',' +
              format_double(row.bulk_max_error) + ',' +
              std::to_string(row.residual_terms) + ',' +
              format_double(row.residual_max_abs) + ',' +
              (row.residual_boundary_only ? "true" : "false") + ',' +
              (row.pass ? "true" : "false") + '\n';
  }
  report += all_pass ? "# all points passed at tol " + format_double(tol) + "\n"
                     : "# FAILED at " + first_failure + "\n";
  return {all_pass ? 0 : 1, report};
}

CommandResult run_solve_zxz(const RunConfig& config) {
  if (config.boundary_set && config.boundary != Boundary::Periodic)
    throw std::invalid_argument(
        "solve-zxz: the exact-solution checks are defined on the periodic "
        "ring");
  const double tol = config.tol > 0 ? config.tol : 1e-9;
  const std::vector<int> sizes =
      config.sizes.empty() ? std::vector<int>{4, 6} : config.sizes;
  const std::vector<double> js =
      config.j_values.empty() ? std::vector<double>{1.0} : config.j_values;
  const std::vector<double> bs =
      config.b_values.empty() ? std::vector<double>{0.0, 1.0}
                              : config.b_values;

  struct Point {
    ZxzParams params;
    bool skipped = false;
    ZxzReport report;
  };
  std::vector<Point> points;
  for (int n : sizes)
    for (double j : js)
      for (double b : bs)
        points.push_back({{n, j, b}, false, {}});

  parallel_for(points.size(), config.jobs, [&](std::size_t i) {
    if (points[i].params.J == 0.0) {
      points[i].skipped = true;
      return;
    }
    points[i].report = verify_zxz_solution(points[i].params, tol);
  });

  bool all_pass = true;
  for (const auto& p : points)
    if (!p.skipped) all_pass = all_pass && p.report.pass;

  const OutputFormat format = config.format == OutputFormat::Default
                                  ? OutputFormat::Text
                                  : config.format;
  std::string report;
  if (format == OutputFormat::Json) {
    json output = json::array();
    for (const auto& p : points) {
      json entry{{"N", p.params.sites}, {"J", p.params.J}, {"B", p.params.B}};
      if (p.skipped) {
        entry["skipped"] = "J = 0 (deformation undefined)";
      } else {
        entry["lambda"] = p.report.lambda;
        entry["energy_analytic"] = p.report.energy_analytic;
        entry["energy_numeric"] = p.report.energy_numeric;
        json checks = json::array();
        for (const auto& c : p.report.checks)
          checks.push_back({{"name", c.name},
                            {"residual", c.residual},
                            {"pass", c.pass}});
        entry["checks"] = checks;
        entry["pass"] = p.report.pass;
      }
      output.push_back(entry);
    }
    report = output.dump(2) + "\n";
  } else if (format == OutputFormat::Csv) {
    report =
        "N,J,B,lambda,energy_analytic,energy_numeric,block_decoupling,"
        "block_eigenvector,eigen_equation,fixed_state_matches_ground,"
        "reversed_transform_state,pass\n";
    for (const auto& p : points) {
      if (p.skipped) continue;
      report += std::to_string(p.params.sites) + ',' +
                format_double(p.params.J) + ',' + format_double(p.params.B) +
                ',' + format_double(p.report.lambda) + ',' +
                format_double(p.report.energy_analytic) + ',' +
                format_double(p.report.energy_numeric);
      for (const auto& c : p.report.checks)
        report += ',' + format_double(c.residual);
      report += std::string(",") + (p.report.pass ? "true" : "false") + '\n';
    }
  } else {
    for (const auto& p : points) {
      report += "point N=" + std::to_string(p.params.sites) +
                " J=" + format_double(p.params.J) +
                " B=" + format_double(p.params.B) + '\n';
      if (p.skipped) {
        report += "  skipped: J = 0 (deformation undefined; the chain is a "
                  "plain field model there)\n";
        continue;
      }
      report += "  lambda          = " + format_double(p.report.lambda) + '\n';
      report += "  energy_analytic = " +
                format_double(p.report.energy_analytic) + '\n';
      report += "  energy_numeric  = " +
                format_double(p.report.energy_numeric) + '\n';
      for (const auto& c : p.report.checks)
        report += "  check " + c.name + " residual=" +
                  format_double(c.residual) + (c.pass ? " pass" : " FAIL") +
                  '\n';
      report += p.report.pass ? "  result PASS\n" : "  result FAIL\n";
    }
  }
  return {all_pass ? 0 : 1, report};
}

CommandResult run_entropy_sweep(const RunConfig& config) {
  if (config.boundary_set && config.boundary != Boundary::Periodic)
    throw std::invalid_argument(
        "entropy-sweep: the swept ground state lives on the periodic ring");
  const int sites = config.sizes.empty() ? 8 : config.sizes.front();
  const std::vector<double> ratios =
      config.b_values.empty() ? linspace(0.0, 4.0, 50) : config.b_values;

  struct Row {
    double ratio = 0.0, lambda = 0.0, entropy = 0.0;
  };
  std::vector<Row> rows(ratios.size());
  parallel_for(ratios.size(), config.jobs, [&](std::size_t i) {
    const ZxzParams params{sites, 1.0, ratios[i]};
    const double lambda = params.lambda();
    const DenseState psi = apply(zxz_diagonalizing_transform(sites, lambda),
                                 DenseState::plus_state(sites), true);
    rows[i] = {ratios[i], lambda, local_entropy(psi, {0})};
  });

  std::string report = "B_over_J,lambda,single_site_entropy_bits\n";
  bool decreasing = true;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i > 0 && rows[i].ratio > rows[i - 1].ratio)
      decreasing = decreasing && rows[i].entropy < rows[i - 1].entropy;
    report += format_double(rows[i].ratio) + ',' +
              format_double(rows[i].lambda) + ',' +
              format_double(rows[i].entropy) + '\n';
  }
  report += "# summary first_entropy=" + format_double(rows.front().entropy) +
            " last_entropy=" + format_double(rows.back().entropy) +
            " strictly_decreasing=" + (decreasing ? "true" : "false") + '\n';
  return {0, report};
}

CommandResult run_energy_scan(const RunConfig& config) {
  if (config.boundary_set && config.boundary != Boundary::Open)
    throw std::invalid_argument(
        "energy-scan: the inversion relation is scanned on the open chain");
  const std::vector<int> sizes =
      config.sizes.empty() ? std::vector<int>{4, 6, 8, 10} : config.sizes;
  const std::vector<double> js =
      config.j_values.empty() ? std::vector<double>{1.5, 2.0, 3.0}
                              : config.j_values;
  const auto rows = duality_energy_scan(js, sizes);

  std::string report = "L,J,energy_per_site,delta,gap,gap_reference\n";
  for (const auto& row : rows)
    report += std::to_string(row.length) + ',' + format_double(row.J) + ',' +
              format_double(row.energy_per_site) + ',' +
              format_double(row.delta) + ',' + format_double(row.gap) + ',' +
              format_double(row.gap_reference) + '\n';

  // delta must be non-increasing in L for each J
  bool monotone = true;
  for (double j : js) {
    double previous = -1.0;
    for (const auto& row : rows) {
      if (row.J != j) continue;
      if (previous >= 0.0 && row.delta > previous + 1e-12) monotone = false;
      previous = row.delta;
    }
  }
  report += std::string("# delta_non_increasing=") +
            (monotone ? "true" : "false") + '\n';
  return {monotone ? 0 : 1, report};
}

LocalOp parse_site_spec(const std::string& spec) {
  if (spec == "I") return LocalOp();
  if (spec == "X") return LocalOp::pauli(PauliOp::X);
  if (spec == "Y") return LocalOp::pauli(PauliOp::Y);
  if (spec == "Z") return LocalOp::pauli(PauliOp::Z);
  if (spec.starts_with("M(") && spec.ends_with(")")) {
    std::string numbers = spec.substr(2, spec.size() - 3);
    for (auto& c : numbers)
      if (c == ',') c = ' ';
    std::istringstream in(numbers);
    double v[8];
    if (!(in >> v[0] >> v[1] >> v[2] >> v[3] >> v[4] >> v[5] >> v[6] >> v[7]))
      throw std::invalid_argument("bad site matrix: " + spec);
    return LocalOp({v[0], v[1]}, {v[2], v[3]}, {v[4], v[5]}, {v[6], v[7]});
  }
  throw std::invalid_argument("bad site spec: " + spec);
}

// Generator file: "L <n>" then one "g" line per generator with 1-based
// "site:SPEC" tokens, SPEC a Pauli letter or M(8 comma-separated floats,
// row-major re,im pairs); optional "scale(re,im)" token.
GeneratorSet parse_generator_file(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int length = 0;
  GeneratorSet set;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    std::string head;
    fields >> head;
    if (head == "L") {
      if (!(fields >> length) || length <= 0)
        throw std::invalid_argument("generator file: bad L line");
      set.length = length;
    } else if (head == "g") {
      if (length == 0)
        throw std::invalid_argument("generator file: L must come first");
      OperatorString g(length);
      std::string token;
      while (fields >> token) {
        if (token.starts_with("scale(") && token.ends_with(")")) {
          std::string numbers = token.substr(6, token.size() - 7);
          for (auto& c : numbers)
            if (c == ',') c = ' ';
          std::istringstream scale_in(numbers);
          double re = 0, im = 0;
          if (!(scale_in >> re >> im))
            throw std::invalid_argument("generator file: bad scale: " + token);
          g.set_scale({re, im});
          continue;
        }
        const auto colon = token.find(':');
        if (colon == std::string::npos)
          throw std::invalid_argument("generator file: bad token: " + token);
        const int site = std::stoi(token.substr(0, colon));
        if (site < 1 || site > length)
          throw std::invalid_argument("generator file: site out of range: " +
                                      token);
        g.set_site(site - 1, parse_site_spec(token.substr(colon + 1)));
      }
      set.generators.push_back(std::move(g));
    } else {
      throw std::invalid_argument("generator file: unknown line: " + line);
    }
  }
  if (set.generators.empty())
    throw std::invalid_argument("generator file: no generators");
  return set;
}

CommandResult run_fixed_state(const RunConfig& config) {
  if (config.generators_file.empty())
    throw std::invalid_argument("fixed-state: no generator file given");
  const double tol = config.tol > 0 ? config.tol : 1e-10;
  const GeneratorSet set = parse_generator_file(read_file(config.generators_file));

  bool commuting = true;
  for (std::size_t i = 0; i < set.generators.size() && commuting; ++i)
    for (std::size_t j = i + 1; j < set.generators.size() && commuting; ++j)
      commuting = commutator_is_zero(set.generators[i], set.generators[j], tol);
  const bool independent =
      commuting && independence_check(set.generators, tol);

  bool found = false;
  std::string failure;
  DenseState state{set.length, Eigen::VectorXcd()};
  std::vector<double> residuals;
  if (commuting && independent) {
    try {
      state = fixed_state(set);
      found = true;
      for (const auto& g : set.generators) {
        const DenseState image = apply(expand(g), state);
        residuals.push_back((image.amplitudes - state.amplitudes).norm());
      }
    } catch (const FixedPointError& e) {
      failure = e.what();
    }
  }

  const bool ok = commuting && independent && found;
  const OutputFormat format = config.format == OutputFormat::Default
                                  ? OutputFormat::Text
                                  : config.format;
  std::string report;
  if (format == OutputFormat::Json) {
    json output{{"L", set.length},
                {"generators", set.generators.size()},
                {"commuting", commuting},
                {"independent", independent},
                {"fixed_state_found", found}};
    if (!failure.empty()) output["failure"] = failure;
    if (found) {
      output["fix_residuals"] = residuals;
      std::vector<std::vector<double>> amps;
      for (Eigen::Index i = 0; i < state.amplitudes.size(); ++i)
        amps.push_back({state.amplitudes(i).real(), state.amplitudes(i).imag()});
      output["amplitudes"] = amps;
    }
    report = output.dump(2) + "\n";
  } else {
    report += "L " + std::to_string(set.length) + " generators " +
              std::to_string(set.generators.size()) + '\n';
    report += std::string("commuting ") + (commuting ? "true" : "false") + '\n';
    report +=
        std::string("independent ") + (independent ? "true" : "false") + '\n';
    if (!failure.empty()) report += "failure " + failure + '\n';
    if (found) {
      for (std::size_t i = 0; i < residuals.size(); ++i)
        report += "fix_residual g" + std::to_string(i + 1) + " = " +
                  format_double(residuals[i]) + '\n';
      report += "amplitudes:\n";
      for (Eigen::Index i = 0; i < state.amplitudes.size(); ++i) {
        std::string bits;
        for (int k = set.length - 1; k >= 0; --k)
          bits += ((i >> k) & 1) ? '1' : '0';
        report += "  |" + bits + "> " +
                  format_double(state.amplitudes(i).real()) + ' ' +
                  format_double(state.amplitudes(i).imag()) + '\n';
      }
    }
    report += ok ? "result PASS\n" : "result FAIL\n";
  }
  return {ok ? 0 : 1, report};
}

}  // namespace

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", value);
  return buf;
}

std::vector<double> parse_double_list(std::string_view text) {
  std::vector<double> out;
  std::string item;
  std::istringstream in{std::string(text)};
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stod(item));
  }
  return out;
}

std::vector<int> parse_int_list(std::string_view text) {
  std::vector<int> out;
  std::string item;
  std::istringstream in{std::string(text)};
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stoi(item));
  }
  return out;
}

OutputFormat format_from_name(std::string_view name) {
  if (name == "csv") return OutputFormat::Csv;
  if (name == "json") return OutputFormat::Json;
  if (name == "text") return OutputFormat::Text;
  throw std::invalid_argument("unknown output format: " + std::string(name));
}

void set_config_value(RunConfig& config, std::string_view key,
                      std::string_view value) {
  const std::string v(value);
  if (key == "family") {
    config.family = family_from_name(v);
  } else if (key == "L" || key == "N") {
    config.sizes = parse_int_list(v);
  } else if (key == "J") {
    config.j_values = parse_double_list(v);
  } else if (key == "B") {
    config.b_values = parse_double_list(v);
  } else if (key == "J1") {
    config.j1 = std::stod(v);
  } else if (key == "J2") {
    config.j2 = std::stod(v);
  } else if (key == "boundary") {
    if (v == "open") {
      config.boundary = Boundary::Open;
    } else if (v == "periodic") {
      config.boundary = Boundary::Periodic;
    } else {
      throw std::invalid_argument("unknown boundary: " + v);
    }
    config.boundary_set = true;
  } else if (key == "tol") {
    config.tol = std::stod(v);
  } else if (key == "out") {
    config.out_path = v;
  } else if (key == "format") {
    config.format = format_from_name(v);
  } else if (key == "jobs") {
    config.jobs = std::stoi(v);
  } else if (key == "circuit") {
    config.circuit_file = v;
  } else if (key == "gens") {
    config.generators_file = v;
  } else {
    throw std::invalid_argument("unknown config key: " + std::string(key));
  }
}

void merge_config_file(RunConfig& config, const std::string& path) {
  std::istringstream in(read_file(path));
  std::string line;
  while (std::getline(in, line)) {
    const auto comment = line.find('#');
    if (comment != std::string::npos) line.erase(comment);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto equals = line.find('=');
    if (equals == std::string::npos)
      throw std::invalid_argument("config file: expected key=value: " + line);
    auto trim = [](std::string s) {
      const auto first = s.find_first_not_of(" \t\r");
      const auto last = s.find_last_not_of(" \t\r");
      return first == std::string::npos ? std::string()
                                        : s.substr(first, last - first + 1);
    };
    set_config_value(config, trim(line.substr(0, equals)),
                     trim(line.substr(equals + 1)));
  }
}

CommandResult run(const RunConfig& config) {
  switch (config.command) {
    case Command::VerifyDuality: return run_verify_duality(config);
    case Command::SolveZxz: return run_solve_zxz(config);
    case Command::EntropySweep: return run_entropy_sweep(config);
    case Command::EnergyScan: return run_energy_scan(config);
    case Command::FixedState: return run_fixed_state(config);
  }
  throw std::logic_error("unreachable command");
}

}  // namespace duality::cli
