#include "qdistill/io.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace qdp {

namespace {

double parse_double(const std::string& token, const char* context) {
  const char* begin = token.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  while (end && *end == ' ') ++end;
  if (end == begin || (end && *end != '\0')) {
    throw std::runtime_error(std::string(context) + ": cannot parse number from '" + token + "'");
  }
  return v;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string token;
  std::istringstream stream(line);
  while (std::getline(stream, token, ',')) out.push_back(token);
  return out;
}

bool blank(const std::string& line) {
  return line.find_first_not_of(" \t\r") == std::string::npos;
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  const std::to_chars_result res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

WeightMatrix load_weight_matrix(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (blank(line)) continue;
    std::vector<double> row;
    for (const std::string& token : split_csv_line(line)) {
      row.push_back(parse_double(token, "weight matrix"));
    }
    rows.push_back(std::move(row));
  }
  const int dim = static_cast<int>(rows.size());
  if (dim < 2) {
    throw std::runtime_error("weight matrix: need at least 2 rows, got " + std::to_string(dim));
  }
  RealMatrix q(dim, dim);
  for (int k = 0; k < dim; ++k) {
    if (static_cast<int>(rows[k].size()) != dim) {
      throw std::runtime_error("weight matrix: row " + std::to_string(k) + " has " +
                               std::to_string(rows[k].size()) + " entries, expected " + std::to_string(dim));
    }
    for (int j = 0; j < dim; ++j) q(k, j) = rows[k][j];
  }
  return WeightMatrix::normalized(dim, std::move(q), 1e-9);
}

WeightMatrix load_weight_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open weight matrix file '" + path + "'");
  }
  return load_weight_matrix(in);
}

void save_weight_matrix(std::ostream& out, const WeightMatrix& w) {
  for (int k = 0; k < w.dim(); ++k) {
    for (int j = 0; j < w.dim(); ++j) {
      out << (j ? "," : "") << format_double(w(k, j));
    }
    out << "\n";
  }
}

std::vector<double> load_profile_samples(std::istream& in) {
  std::vector<double> samples;
  std::string line;
  while (std::getline(in, line)) {
    if (blank(line)) continue;
    samples.push_back(parse_double(line, "profile"));
  }
  if (samples.size() < 2) {
    throw std::runtime_error("profile: need at least 2 samples, got " + std::to_string(samples.size()));
  }
  return samples;
}

std::vector<double> load_profile_samples_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open profile file '" + path + "'");
  }
  return load_profile_samples(in);
}

std::string flow_csv(const FlowTrajectory& traj, bool isotropic_only) {
  std::ostringstream out;
  if (isotropic_only) {
    out << "step,fidelity,coincidence_prob\n";
    for (const FlowRecord& r : traj) {
      out << r.step << "," << format_double(r.weights.fidelity()) << "," << format_double(r.coincidence_prob)
          << "\n";
    }
    return out.str();
  }
  const int dim = traj.empty() ? 0 : traj.front().weights.dim();
  out << "step";
  for (int k = 0; k < dim; ++k) {
    for (int j = 0; j < dim; ++j) out << ",q_" << k << "_" << j;
  }
  out << ",coincidence_prob\n";
  for (const FlowRecord& r : traj) {
    out << r.step;
    for (int k = 0; k < dim; ++k) {
      for (int j = 0; j < dim; ++j) out << "," << format_double(r.weights(k, j));
    }
    out << "," << format_double(r.coincidence_prob) << "\n";
  }
  return out.str();
}

Json flow_json(const FlowTrajectory& traj, bool isotropic_only) {
  Json records = Json::array();
  for (const FlowRecord& r : traj) {
    Json rec;
    rec["step"] = r.step;
    rec["fidelity"] = r.weights.fidelity();
    if (!isotropic_only) {
      Json weights = Json::array();
      for (int k = 0; k < r.weights.dim(); ++k) {
        Json row = Json::array();
        for (int j = 0; j < r.weights.dim(); ++j) row.push_back(r.weights(k, j));
        weights.push_back(std::move(row));
      }
      rec["weights"] = std::move(weights);
    }
    rec["coincidence_prob"] = r.coincidence_prob;
    records.push_back(std::move(rec));
  }
  Json doc;
  doc["command"] = "flow";
  doc["dim"] = traj.empty() ? 0 : traj.front().weights.dim();
  doc["isotropic"] = isotropic_only;
  doc["records"] = std::move(records);
  return doc;
}

std::string phase_diagram_csv(const PhaseDiagram& diagram) {
  std::ostringstream out;
  out << "q0,q1,label,label_q0,label_q1\n";
  for (const PhaseCell& cell : diagram.cells) {
    out << format_double(cell.q0) << "," << format_double(cell.q1) << "," << cell.label << ",";
    if (cell.label >= 0) {
      const FixedPoint& fp = diagram.fixed_points[cell.label];
      out << format_double(fp.coordinates[0]) << "," << format_double(fp.coordinates[1]);
    } else {
      out << ",";
    }
    out << "\n";
  }
  return out.str();
}

namespace {

const char* stability_name(Stability s) {
  switch (s) {
    case Stability::Stable:
      return "stable";
    case Stability::Unstable:
      return "unstable";
    case Stability::Marginal:
      return "marginal";
  }
  return "unknown";
}

}  // namespace

Json phase_diagram_json(const PhaseDiagram& diagram) {
  Json fps = Json::array();
  for (const FixedPoint& fp : diagram.fixed_points) {
    Json p;
    p["q0"] = fp.coordinates[0];
    p["q1"] = fp.coordinates[1];
    p["stability"] = stability_name(fp.stability);
    fps.push_back(std::move(p));
  }
  Json cells = Json::array();
  for (const PhaseCell& cell : diagram.cells) {
    Json c;
    c["q0"] = cell.q0;
    c["q1"] = cell.q1;
    c["label"] = cell.label;
    cells.push_back(std::move(c));
  }
  Json doc;
  doc["command"] = "phase-diagram";
  doc["resolution"] = diagram.resolution;
  doc["fixed_points"] = std::move(fps);
  doc["cells"] = std::move(cells);
  return doc;
}

std::string iterations_csv(const IterationsTable& table) {
  std::ostringstream out;
  out << "f0";
  for (int d : table.dims) out << ",k_d" << d;
  out << "\n";
  for (std::size_t row = 0; row < table.f0.size(); ++row) {
    out << format_double(table.f0[row]);
    for (std::size_t col = 0; col < table.dims.size(); ++col) out << "," << table.counts[row][col];
    out << "\n";
  }
  return out.str();
}

Json iterations_json(const IterationsTable& table) {
  Json rows = Json::array();
  for (std::size_t row = 0; row < table.f0.size(); ++row) {
    Json r;
    r["f0"] = table.f0[row];
    Json counts;
    for (std::size_t col = 0; col < table.dims.size(); ++col) {
      counts["d" + std::to_string(table.dims[col])] = table.counts[row][col];
    }
    r["iterations"] = std::move(counts);
    rows.push_back(std::move(r));
  }
  Json doc;
  doc["command"] = "iterations";
  doc["eps"] = table.eps;
  doc["dims"] = table.dims;
  doc["rows"] = std::move(rows);
  return doc;
}

std::string continuum_csv(const std::vector<ContinuumProfile>& stages) {
  if (stages.empty()) return "x\n";
  std::ostringstream out;
  out << "x";
  for (std::size_t s = 0; s < stages.size(); ++s) out << ",step" << s;
  out << "\n";
  const int n = stages.front().points();
  for (int i = 0; i < n; ++i) {
    out << format_double(stages.front().x(i));
    for (const ContinuumProfile& stage : stages) out << "," << format_double(stage.values()[i]);
    out << "\n";
  }
  return out.str();
}

Json continuum_json(const std::vector<ContinuumProfile>& stages) {
  Json doc;
  doc["command"] = "continuum";
  doc["points"] = stages.empty() ? 0 : stages.front().points();
  Json arr = Json::array();
  for (std::size_t s = 0; s < stages.size(); ++s) {
    Json stage;
    stage["step"] = s;
    stage["values"] = stages[s].values();
    arr.push_back(std::move(stage));
  }
  doc["stages"] = std::move(arr);
  return doc;
}

std::string qrg_csv(const QrgReport& report) {
  std::ostringstream out;
  out << "ground_energy,doublet_overlap,edge_spin_factor\n";
  out << format_double(report.ground_energy) << "," << format_double(report.doublet_overlap) << ","
      << format_double(report.edge_spin_factor) << "\n";
  return out.str();
}

Json qrg_json(const QrgReport& report, double coupling) {
  Json doc;
  doc["command"] = "qrg";
  doc["coupling"] = coupling;
  doc["ground_energy"] = report.ground_energy;
  doc["doublet_overlap"] = report.doublet_overlap;
  doc["edge_spin_factor"] = report.edge_spin_factor;
  return doc;
}

}  // namespace qdp
