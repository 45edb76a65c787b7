// Command line front end: trajectory tables, basin diagrams, iteration
// counts, continuum profiles, the three-site demo, and the cross-validation
// suites. Output is CSV or JSON on stdout or into --output; identical
// arguments (and seeds) produce byte-identical bytes.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qdistill/analysis.hpp"
#include "qdistill/checks.hpp"
#include "qdistill/io.hpp"
#include "qdistill/oracle.hpp"
#include "qdistill/recursion.hpp"

namespace {

using qdp::Json;

struct OutputOptions {
  std::string format = "csv";
  std::string path;
};

void add_output_flags(CLI::App* cmd, OutputOptions& opts) {
  cmd->add_option("--format", opts.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--output", opts.path, "Write output to this file instead of stdout");
}

void emit(const OutputOptions& opts, const std::string& csv, const Json& json) {
  const std::string payload = opts.format == "json" ? json.dump(2) + "\n" : csv;
  if (opts.path.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream out(opts.path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open output file '" + opts.path + "'");
  }
  out << payload;
}

// Dimension lists accept a single value, a comma list, or an inclusive
// "lo..hi" range.
std::vector<int> parse_dims(const std::string& text) {
  std::vector<int> dims;
  const auto parse_int = [](const std::string& tok) {
    std::size_t used = 0;
    const int v = std::stoi(tok, &used);
    if (used != tok.size()) {
      throw std::runtime_error("cannot parse dimension '" + tok + "'");
    }
    return v;
  };
  if (const std::size_t dots = text.find(".."); dots != std::string::npos) {
    const int lo = parse_int(text.substr(0, dots));
    const int hi = parse_int(text.substr(dots + 2));
    if (lo > hi) {
      throw std::runtime_error("empty dimension range '" + text + "'");
    }
    for (int d = lo; d <= hi; ++d) dims.push_back(d);
    return dims;
  }
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::string tok = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    dims.push_back(parse_int(tok));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return dims;
}

int run(int argc, char** argv) {
  CLI::App app{"Entanglement purification flows for D-level pairs"};
  app.require_subcommand(1);

  // flow
  auto* flow_cmd = app.add_subcommand("flow", "Iterate one state and tabulate weights per round");
  int flow_dim = 2;
  double flow_f0 = 0.75;
  int flow_steps = 3;
  std::string flow_matrix;
  OutputOptions flow_out;
  flow_cmd->add_option("--d", flow_dim, "Qudit dimension");
  flow_cmd->add_option("--f0", flow_f0, "Initial fidelity of the isotropic state");
  flow_cmd->add_option("--steps", flow_steps, "Number of rounds");
  flow_cmd->add_option("--matrix", flow_matrix, "Start from this weight-matrix CSV instead of --f0");
  add_output_flags(flow_cmd, flow_out);
  flow_cmd->callback([&] {
    const bool from_file = !flow_matrix.empty();
    const qdp::WeightMatrix w0 =
        from_file ? qdp::load_weight_matrix_file(flow_matrix) : qdp::WeightMatrix::isotropic(flow_f0, flow_dim);
    const qdp::FlowTrajectory traj = qdp::flow(w0, flow_steps);
    emit(flow_out, qdp::flow_csv(traj, !from_file), qdp::flow_json(traj, !from_file));
  });

  // phase-diagram
  auto* phase_cmd = app.add_subcommand("phase-diagram", "Label three-level simplex points by their limit");
  int resolution = 101;
  OutputOptions phase_out;
  phase_cmd->add_option("--resolution", resolution, "Grid points per axis");
  add_output_flags(phase_cmd, phase_out);
  phase_cmd->callback([&] {
    const qdp::PhaseDiagram diagram = qdp::phase_diagram(resolution);
    emit(phase_out, qdp::phase_diagram_csv(diagram), qdp::phase_diagram_json(diagram));
  });

  // iterations
  auto* iter_cmd = app.add_subcommand("iterations", "Rounds needed to reach fidelity 1 - eps");
  double eps = 0.01;
  std::string iter_dims = "2,4,10";
  double f0_min = 0.55, f0_max = 0.95, f0_step = 0.05;
  OutputOptions iter_out;
  iter_cmd->add_option("--eps", eps, "Target infidelity");
  iter_cmd->add_option("--d", iter_dims, "Dimensions: INT, comma list, or lo..hi");
  iter_cmd->add_option("--f0-min", f0_min, "Smallest initial fidelity");
  iter_cmd->add_option("--f0-max", f0_max, "Largest initial fidelity");
  iter_cmd->add_option("--f0-step", f0_step, "Fidelity grid spacing");
  add_output_flags(iter_cmd, iter_out);
  iter_cmd->callback([&] {
    if (!(f0_step > 0.0) || f0_max < f0_min) {
      throw std::runtime_error("fidelity grid is empty or has nonpositive spacing");
    }
    qdp::IterationsTable table;
    table.eps = eps;
    table.dims = parse_dims(iter_dims);
    for (int row = 0;; ++row) {
      const double f0 = f0_min + row * f0_step;
      if (f0 > f0_max + 1e-12) break;
      table.f0.push_back(f0);
      std::vector<int> counts;
      counts.reserve(table.dims.size());
      for (int d : table.dims) counts.push_back(qdp::iterations_needed(eps, f0, d));
      table.counts.push_back(std::move(counts));
    }
    emit(iter_out, qdp::iterations_csv(table), qdp::iterations_json(table));
  });

  // continuum
  auto* cont_cmd = app.add_subcommand("continuum", "Squaring flow on a profile over [0, 1]");
  int cont_k = 6;
  int cont_n = 1001;
  std::string profile_path;
  OutputOptions cont_out;
  cont_cmd->add_option("--k", cont_k, "Number of squaring steps");
  cont_cmd->add_option("--n", cont_n, "Grid points (ignored with --profile)");
  cont_cmd->add_option("--profile", profile_path, "Read initial samples from this file, one per line");
  add_output_flags(cont_cmd, cont_out);
  cont_cmd->callback([&] {
    if (cont_k < 0) {
      throw std::runtime_error("step count must be nonnegative");
    }
    const qdp::ContinuumProfile initial =
        profile_path.empty() ? qdp::ContinuumProfile::parabolic(cont_n)
                             : qdp::ContinuumProfile::from_samples(qdp::load_profile_samples_file(profile_path));
    std::vector<qdp::ContinuumProfile> stages;
    stages.reserve(cont_k + 1);
    for (int s = 0; s <= cont_k; ++s) stages.push_back(qdp::continuum_evolve(initial, s));
    emit(cont_out, qdp::continuum_csv(stages), qdp::continuum_json(stages));
  });

  // qrg
  auto* qrg_cmd = app.add_subcommand("qrg", "Three-site exchange block: ground doublet and edge moment");
  double coupling = 1.0;
  OutputOptions qrg_out;
  qrg_cmd->add_option("--j", coupling, "Exchange coupling, must be positive");
  add_output_flags(qrg_cmd, qrg_out);
  qrg_cmd->callback([&] {
    const qdp::QrgReport report = qdp::qrg_demo(coupling);
    emit(qrg_out, qdp::qrg_csv(report), qdp::qrg_json(report, coupling));
  });

  // check
  auto* check_cmd = app.add_subcommand("check", "Cross-validate oracle, recursion, and closed forms");
  std::string check_dims = "2..5";
  int check_seeds = 20;
  std::uint64_t check_seed = 12345;
  double zero_fraction = 0.25;
  int check_steps = 6;
  OutputOptions check_out;
  check_cmd->add_option("--d", check_dims, "Dimensions: INT, comma list, or lo..hi");
  check_cmd->add_option("--seeds", check_seeds, "Random matrices per dimension");
  check_cmd->add_option("--seed", check_seed, "Base seed for the deterministic streams");
  check_cmd->add_option("--zero-fraction", zero_fraction, "Fraction of weights forced to zero");
  check_cmd->add_option("--steps", check_steps, "Iterate depth for the closed-form suite");
  add_output_flags(check_cmd, check_out);
  bool check_failed = false;
  check_cmd->callback([&] {
    const std::vector<int> dims = parse_dims(check_dims);
    std::vector<qdp::CheckResult> suites;
    suites.push_back(qdp::check_oracle_vs_recursion(dims, check_seeds, check_seed, zero_fraction));
    suites.push_back(qdp::check_bell_closure(dims));
    suites.push_back(qdp::check_closed_forms(dims, check_seeds, check_steps, check_seed, zero_fraction));

    std::string csv = "suite,max_deviation,threshold,pass\n";
    Json json_suites = Json::array();
    bool all_pass = true;
    for (const qdp::CheckResult& r : suites) {
      all_pass = all_pass && r.pass;
      csv += r.suite + "," + qdp::format_double(r.max_deviation) + "," + qdp::format_double(r.threshold) + "," +
             (r.pass ? "1" : "0") + "\n";
      Json s;
      s["suite"] = r.suite;
      s["max_deviation"] = r.max_deviation;
      s["threshold"] = r.threshold;
      s["pass"] = r.pass;
      json_suites.push_back(std::move(s));
    }
    Json doc;
    doc["command"] = "check";
    doc["dims"] = dims;
    doc["seeds"] = check_seeds;
    doc["base_seed"] = check_seed;
    doc["suites"] = std::move(json_suites);
    doc["pass"] = all_pass;
    emit(check_out, csv, doc);
    check_failed = !all_pass;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  return check_failed ? 2 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
