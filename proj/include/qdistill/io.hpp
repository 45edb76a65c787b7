#pragma once
// File formats and serialization for the command line tool. Floating point
// values are written in the shortest decimal form that parses back to the
// exact double; identical inputs therefore yield byte-identical output.

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "qdistill/analysis.hpp"
#include "qdistill/recursion.hpp"

namespace qdp {

using Json = nlohmann::ordered_json;

std::string format_double(double v);

// Weight-matrix file: D comma-separated rows of D entries. Entries must be
// nonnegative and sum to 1 within 1e-9; the sum is divided out exactly.
WeightMatrix load_weight_matrix(std::istream& in);
WeightMatrix load_weight_matrix_file(const std::string& path);
void save_weight_matrix(std::ostream& out, const WeightMatrix& w);

// Profile file: one nonnegative sample per line on the uniform grid.
std::vector<double> load_profile_samples(std::istream& in);
std::vector<double> load_profile_samples_file(const std::string& path);

// Trajectory serialization. Runs started from the isotropic family stay on
// it, so those tables carry a single fidelity column instead of all D^2
// weights; full runs carry one column per weight, row-major.
std::string flow_csv(const FlowTrajectory& traj, bool isotropic_only);
Json flow_json(const FlowTrajectory& traj, bool isotropic_only);

std::string phase_diagram_csv(const PhaseDiagram& diagram);
Json phase_diagram_json(const PhaseDiagram& diagram);

// Iteration-count table over a fidelity grid, one column per dimension.
struct IterationsTable {
  double eps = 0.0;
  std::vector<int> dims;
  std::vector<double> f0;
  std::vector<std::vector<int>> counts;  // counts[row][column of dims]
};
std::string iterations_csv(const IterationsTable& table);
Json iterations_json(const IterationsTable& table);

// Profiles after 0..k squaring steps, one column per step.
std::string continuum_csv(const std::vector<ContinuumProfile>& stages);
Json continuum_json(const std::vector<ContinuumProfile>& stages);

std::string qrg_csv(const QrgReport& report);
Json qrg_json(const QrgReport& report, double coupling);

}  // namespace qdp
