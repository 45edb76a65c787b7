#pragma once
// Flow structure of the purification maps: fixed points with linear
// stability, the basin diagram of the three-level map, the continuum profile
// reached when the number of levels grows without bound, and a small
// three-site ground-state computation exhibiting the same majority behavior.

#include <vector>

#include "qdistill/types.hpp"

namespace qdp {

enum class Stability { Stable, Unstable, Marginal };

struct FixedPoint {
  std::vector<double> coordinates;
  Stability stability;
};

// Fixed points {0, 1/D, 1} of the isotropic fidelity map, classified by the
// magnitude of the map's derivative (central differences, h = 1e-6).
std::vector<FixedPoint> fixed_points_isotropic(int dim);

// All seven fixed points of the three-level map in (q0, q1), found by grid
// seeding plus Newton refinement and classified by the spectral radius of the
// Jacobian. Sorted by (q0, q1).
std::vector<FixedPoint> qutrit_fixed_points();

struct PhaseCell {
  double q0, q1;
  int label;  // index into PhaseDiagram::fixed_points, -1 if unresolved
};

struct PhaseDiagram {
  int resolution;  // grid points per axis; spacing 1/(resolution - 1)
  std::vector<FixedPoint> fixed_points;
  std::vector<PhaseCell> cells;  // simplex points q0 + q1 <= 1, row-major in the grid indices
};

// Iterates every simplex grid point under the three-level map until it lands
// within capture_radius of a fixed point or the iteration budget runs out.
PhaseDiagram phase_diagram(int resolution, int max_iterations = 200, double capture_radius = 1e-6);

// Limit of the subset squaring map: uniform on the set of maximal entries
// (exact float comparison), zero elsewhere.
std::vector<double> asymptotic_weights(const std::vector<double>& q0);

// Nonnegative samples on the uniform grid over [0, 1] with unit trapezoid
// integral; construction rescales to enforce the normalization exactly.
class ContinuumProfile {
 public:
  static ContinuumProfile from_samples(std::vector<double> values);
  static ContinuumProfile parabolic(int points);  // samples of 6 x (1 - x)

  int points() const { return static_cast<int>(values_.size()); }
  double x(int i) const { return static_cast<double>(i) / (points() - 1); }
  const std::vector<double>& values() const { return values_; }

 private:
  explicit ContinuumProfile(std::vector<double> values) : values_(std::move(values)) {}
  std::vector<double> values_;
};

double trapezoid(const std::vector<double>& values);

// k-fold squaring flow on a profile: q^(k)(x) proportional to q(x)^{2^k},
// renormalized to unit integral. Evaluated in log space.
ContinuumProfile continuum_evolve(const ContinuumProfile& profile, int steps);

// Trapezoid mass of the profile on |x - center| <= half_width.
double window_mass(const ContinuumProfile& profile, double center, double half_width);

struct QrgReport {
  double ground_energy;      // lowest eigenvalue of the three-site block
  double doublet_overlap;    // squared overlap of the majority state with the ground doublet
  double edge_spin_factor;   // edge-site moment of the majority state over the bare moment
};

// Three spin-1/2 sites with nearest-neighbor exchange J > 0. The ground
// space is a doublet at energy -J whose up state carries 2/3 of a bare spin
// on each edge site.
QrgReport qrg_demo(double coupling);

}  // namespace qdp
