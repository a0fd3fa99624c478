#include "tomo/cli.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "tomo/figures.hpp"
#include "tomo/fixtures.hpp"
#include "tomo/noise.hpp"
#include "tomo/protocols.hpp"
#include "tomo/qmetrics.hpp"
#include "tomo/reconstruct.hpp"
#include "tomo/simulate.hpp"

namespace tomo {

namespace {

std::string fmt_fixed(double v, int digits) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(digits) << v;
  return out.str();
}

// Strip directories and a trailing .json for display labels.
std::string display_label(const std::string& path) {
  const size_t slash = path.find_last_of('/');
  std::string name = slash == std::string::npos ? path : path.substr(slash + 1);
  if (name.size() > 5 && name.substr(name.size() - 5) == ".json")
    name = name.substr(0, name.size() - 5);
  return name;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error(path + ": cannot open for writing");
  out << text;
}

int cmd_protocol_info(const std::string& name, std::ostream& out) {
  const Protocol protocol = build_protocol(name);
  out << "protocol: " << protocol_name_string(protocol.name) << "\n";
  out << "rows: " << protocol.rows.size() << "\n";
  out << "kappa(A) = " << fmt_fixed(condition_number(protocol.A), 6) << "\n";
  out << "\n";
  for (size_t r = 0; r < protocol.rows.size(); ++r) {
    const MeasurementRow& row = protocol.rows[r];
    out << std::setw(3) << (r + 1) << "  " << std::left << std::setw(14) << row.label
        << std::right << "  " << assembly_name(row.assembly) << "\n";
  }
  out << "\nA =\n";
  for (Eigen::Index r = 0; r < protocol.A.rows(); ++r) {
    for (Eigen::Index c = 0; c < protocol.A.cols(); ++c)
      out << (c == 0 ? "" : " ") << std::setw(7) << fmt_fixed(protocol.A(r, c), 3);
    out << "\n";
  }
  return 0;
}

// Shared by `reconstruct` and `analyze`: parse the CSV, check the protocol
// tag, and reconstruct every state in file order.
struct BatchResult {
  Protocol protocol;
  std::vector<CountTable> tables;
  std::vector<ObservationVector> observations;
  std::vector<Reconstruction> reconstructions;
};

BatchResult run_batch(const std::string& protocol_name, const std::string& counts_path) {
  BatchResult batch{build_protocol(protocol_name), {}, {}, {}};
  batch.tables = read_count_tables_csv(counts_path);
  if (batch.tables.empty()) throw std::runtime_error(counts_path + ": no count tables");
  for (const CountTable& table : batch.tables) {
    if (protocol_name_from_string(table.protocol_name) != batch.protocol.name)
      throw std::runtime_error(counts_path + ": table for state '" + table.state_label +
                               "' is tagged '" + table.protocol_name + "', expected '" +
                               protocol_name_string(batch.protocol.name) + "'");
    ObservationVector obs = assemble_observations(batch.protocol, table);
    batch.reconstructions.push_back(reconstruct_state(batch.protocol.A, obs));
    batch.observations.push_back(std::move(obs));
  }
  return batch;
}

int cmd_reconstruct(const std::string& protocol_name, const std::string& counts_path,
                    const std::string& out_path, std::ostream& out) {
  const BatchResult batch = run_batch(protocol_name, counts_path);
  std::string text;
  if (batch.tables.size() == 1) {
    // Single state: plain density JSON, directly consumable by `compare`.
    text = density_to_json(batch.reconstructions[0].rho) + "\n";
  } else {
    nlohmann::ordered_json j;
    j["protocol"] = protocol_name_string(batch.protocol.name);
    j["reconstructions"] = nlohmann::ordered_json::array();
    for (size_t i = 0; i < batch.tables.size(); ++i) {
      nlohmann::ordered_json entry;
      entry["state"] = batch.tables[i].state_label;
      entry["matrix"] = nlohmann::ordered_json::parse(density_to_json(batch.reconstructions[i].rho));
      j["reconstructions"].push_back(std::move(entry));
    }
    text = j.dump(1) + "\n";
  }
  if (out_path.empty())
    out << text;
  else
    write_text(out_path, text);
  return 0;
}

int cmd_analyze(const std::string& protocol_name, const std::string& counts_path, double rescale,
                double k, const std::string& format, std::ostream& out) {
  const BatchResult batch = run_batch(protocol_name, counts_path);
  std::vector<ErrorReport> reports;
  reports.reserve(batch.tables.size());
  for (size_t i = 0; i < batch.tables.size(); ++i)
    reports.push_back(make_error_report(batch.protocol, batch.tables[i].state_label,
                                        batch.observations[i], batch.reconstructions[i], rescale,
                                        k));
  if (format == "csv") {
    out << error_report_csv_header() << "\n";
    for (const ErrorReport& report : reports) out << error_report_to_csv(report) << "\n";
  } else {
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (const ErrorReport& report : reports)
      j.push_back(nlohmann::ordered_json::parse(error_report_to_json(report)));
    out << j.dump(1) << "\n";
  }
  return 0;
}

DensityMatrix resolve_state(const std::string& state_ref) {
  // Catalog label first, then a density JSON file.
  const std::vector<std::string> labels = catalog_labels();
  if (std::find(labels.begin(), labels.end(), state_ref) != labels.end()) {
    const Eigen::Vector4cd ket = catalog_state(state_ref).amplitudes();
    return ket * ket.adjoint();
  }
  return read_density_file(state_ref);
}

int cmd_simulate(const std::string& state_spec, const std::string& protocol_name, double flux,
                 int trials, std::uint64_t seed, double rescale, const std::string& out_path,
                 std::ostream& out) {
  const Protocol protocol = build_protocol(protocol_name);
  const DensityMatrix rho = resolve_state(state_spec);
  SimulationConfig config;
  config.flux = flux;
  config.trials = trials;
  config.seed = seed;
  config.rescale = rescale;
  const std::vector<TrialResult> results = run_trials(rho, protocol, config);
  if (out_path.empty()) {
    write_trial_report(out, results);
  } else {
    std::ofstream file(out_path);
    if (!file) throw std::runtime_error(out_path + ": cannot open for writing");
    write_trial_report(file, results);
  }
  return 0;
}

int cmd_compare(const std::vector<std::string>& paths, const std::vector<double>& radii,
                const std::string& svg_path, bool half_disks, const std::string& format,
                std::ostream& out) {
  if (paths.size() < 2) throw std::runtime_error("compare: need at least two density files");
  std::vector<DensityMatrix> states;
  std::vector<std::string> labels;
  for (const std::string& path : paths) {
    DensityMatrix rho = read_density_file(path);
    const Complex tr = rho.trace();
    if (std::abs(tr) < 1e-12) throw std::runtime_error(path + ": zero-trace matrix");
    states.push_back(rho / tr);
    labels.push_back(display_label(path));
  }

  struct Pair {
    std::string a, b;
    double distance;
  };
  std::vector<Pair> pairs;
  for (size_t i = 0; i < states.size(); ++i)
    for (size_t j = i + 1; j < states.size(); ++j)
      pairs.push_back({labels[i], labels[j], trace_distance(states[i], states[j])});

  if (format == "csv") {
    out << "a,b,trace_distance\n";
    for (const Pair& p : pairs)
      out << p.a << ',' << p.b << ',' << fmt_fixed(p.distance, 6) << "\n";
  } else {
    nlohmann::ordered_json j;
    j["pairs"] = nlohmann::ordered_json::array();
    for (const Pair& p : pairs) {
      nlohmann::ordered_json entry;
      entry["a"] = p.a;
      entry["b"] = p.b;
      entry["trace_distance"] = round_significant(p.distance, 10);
      j["pairs"].push_back(std::move(entry));
    }
    out << j.dump(1) << "\n";
  }

  if (!svg_path.empty()) {
    if (states.size() != 3)
      throw std::runtime_error("compare: the error-disk figure needs exactly three inputs");
    if (radii.size() != 3)
      throw std::runtime_error("compare: the error-disk figure needs --radii R1 R2 R3");
    // pairs order for three inputs: (0,1), (0,2), (1,2).
    TriangleEmbedding embedding =
        embed_triangle(pairs[0].distance, pairs[1].distance, pairs[2].distance);
    embedding.points[0].label = labels[0];
    embedding.points[1].label = labels[1];
    embedding.points[2].label = labels[2];
    embedding.radii = {radii[0], radii[1], radii[2]};
    write_text(svg_path, render_disk_svg(embedding, half_disks));
  }
  return 0;
}

int cmd_validate_fixtures(const std::string& dir, std::ostream& out) {
  int failures = 0;

  const ValidationReport manifest = verify_manifest(dir);
  for (const ValidationIssue& issue : manifest.issues)
    out << "FAIL manifest " << issue.where << ": " << issue.what << "\n";
  failures += static_cast<int>(manifest.issues.size());
  if (manifest.issues.empty())
    out << "PASS manifest (" << manifest.checks << " files)\n";

  const FixtureSet fix = load_fixtures(dir);
  const ValidationReport validation = validate_fixtures(fix);
  for (const ValidationIssue& issue : validation.issues)
    out << "FAIL consistency " << issue.where << ": " << issue.what << "\n";
  failures += static_cast<int>(validation.issues.size());
  if (validation.issues.empty())
    out << "PASS consistency (" << validation.checks << " checks)\n";

  const GoldenSuiteResult golden = run_golden_suite(fix);
  for (const GoldenCheck& check : golden.checks) {
    out << (check.pass ? "PASS " : "FAIL ") << check.name << " (worst " << std::scientific
        << std::setprecision(3) << check.worst << ", tolerance " << check.tolerance << ")\n"
        << std::defaultfloat;
    if (!check.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Two-qubit state tomography by linear inversion"};
  app.name("tomolens");
  app.require_subcommand(1);

  // protocol info <name>
  auto* protocol_cmd = app.add_subcommand("protocol", "Inspect a measurement protocol");
  protocol_cmd->require_subcommand(1);
  auto* info_cmd = protocol_cmd->add_subcommand("info", "Print rows, coefficient matrix, kappa");
  std::string info_name;
  info_cmd->add_option("name", info_name, "optimal | mub | standard36 | pauli | jkmw")->required();

  // reconstruct
  auto* reconstruct_cmd =
      app.add_subcommand("reconstruct", "Assemble observations and invert the linear system");
  std::string rec_protocol, rec_counts, rec_out;
  reconstruct_cmd->add_option("--protocol", rec_protocol, "protocol name")->required();
  reconstruct_cmd->add_option("--counts", rec_counts, "count-table CSV")->required();
  reconstruct_cmd->add_option("--out", rec_out, "output JSON path (default: stdout)");

  // analyze
  auto* analyze_cmd = app.add_subcommand("analyze", "Per-state uncertainty report");
  std::string ana_protocol, ana_counts, ana_format = "json";
  double ana_rescale = kDefaultRescale;
  double ana_k = kSqrt2;
  analyze_cmd->add_option("--protocol", ana_protocol, "protocol name")->required();
  analyze_cmd->add_option("--counts", ana_counts, "count-table CSV")->required();
  analyze_cmd->add_option("--rescale", ana_rescale, "radius rescale factor");
  analyze_cmd->add_option("--k", ana_k, "deviation multiple for the band");
  analyze_cmd->add_option("--format", ana_format, "json | csv")
      ->check(CLI::IsMember({"json", "csv"}));

  // simulate
  auto* simulate_cmd = app.add_subcommand("simulate", "Monte Carlo coverage trials");
  std::string sim_state, sim_protocol, sim_out;
  double sim_flux = 5000.0;
  int sim_trials = 500;
  std::uint64_t sim_seed = 1;
  double sim_rescale = kDefaultRescale;
  simulate_cmd->add_option("--state", sim_state, "catalog label (psi_1..psi_17) or density JSON")
      ->required();
  simulate_cmd->add_option("--protocol", sim_protocol, "protocol name")->required();
  simulate_cmd->add_option("--flux", sim_flux, "expected counts per unit-probability projector");
  simulate_cmd->add_option("--trials", sim_trials, "number of trials");
  simulate_cmd->add_option("--seed", sim_seed, "RNG seed");
  simulate_cmd->add_option("--rescale", sim_rescale, "radius rescale factor");
  simulate_cmd->add_option("--out", sim_out, "output JSON-lines path (default: stdout)");

  // compare
  auto* compare_cmd = app.add_subcommand("compare", "Pairwise trace distances and error disks");
  std::vector<std::string> cmp_paths;
  std::vector<double> cmp_radii;
  std::string cmp_svg, cmp_format = "json";
  bool cmp_half = false;
  compare_cmd->add_option("--recon", cmp_paths, "density JSON files (two or more)")
      ->required()
      ->expected(2, -1);
  compare_cmd->add_option("--radii", cmp_radii, "uncertainty radii for the disk figure")
      ->expected(3);
  compare_cmd->add_option("--svg", cmp_svg, "write an error-disk SVG here (needs 3 inputs)");
  compare_cmd->add_flag("--half-disks", cmp_half, "also draw dashed half-radius disks");
  compare_cmd->add_option("--format", cmp_format, "json | csv")
      ->check(CLI::IsMember({"json", "csv"}));

  // validate-fixtures
  auto* validate_cmd = app.add_subcommand("validate-fixtures", "Run the full golden suite");
  std::string val_dir = default_fixture_dir();
  validate_cmd->add_option("--dir", val_dir, "fixture directory");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (info_cmd->parsed()) return cmd_protocol_info(info_name, out);
    if (reconstruct_cmd->parsed()) return cmd_reconstruct(rec_protocol, rec_counts, rec_out, out);
    if (analyze_cmd->parsed())
      return cmd_analyze(ana_protocol, ana_counts, ana_rescale, ana_k, ana_format, out);
    if (simulate_cmd->parsed())
      return cmd_simulate(sim_state, sim_protocol, sim_flux, sim_trials, sim_seed, sim_rescale,
                          sim_out, out);
    if (compare_cmd->parsed())
      return cmd_compare(cmp_paths, cmp_radii, cmp_svg, cmp_half, cmp_format, out);
    if (validate_cmd->parsed()) return cmd_validate_fixtures(val_dir, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  err << "error: no command\n";
  return 1;
}

}  // namespace tomo
