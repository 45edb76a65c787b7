#pragma once
// Weight-space picture of recurrence purification. When both pairs are
// diagonal in the entangled basis with weights q_kj, one round acts per
// column j as a cyclic self-correlation in the phase label,
//
//   q'_kj = (1/N) sum_{k'} q_{k(-)k', j} q_{k', j},
//
// with N the coincidence probability of the round. Columns never mix, which
// is what the closed forms below exploit. Single-parameter families (the
// isotropic line, a zero-padded subset row, the three-level map) get direct
// maps, and every closed form is evaluated in log space or with a rescaled
// spectrum so that iterate counts in the hundreds cannot underflow.

#include <cstdint>
#include <utility>
#include <vector>

#include "qdistill/types.hpp"

namespace qdp {

// Diagonal weights in the entangled basis. Row index is the phase label k,
// column index the shift label j. Entries are nonnegative and sum to one
// within kWeightSumTol; construction enforces both.
class WeightMatrix {
 public:
  WeightMatrix(int dim, RealMatrix q);

  // Weight fidelity on the aligned state (0, 0) and (1 - fidelity)/(D - 1)
  // on each of the D - 1 shifted companions (0, j).
  static WeightMatrix isotropic(double fidelity, int dim);
  static WeightMatrix uniform(int dim);
  static WeightMatrix single(const BellIndex& idx);
  // Accepts |sum - 1| <= tol, then renormalizes exactly.
  static WeightMatrix normalized(int dim, RealMatrix q, double tol);
  // D^2 uniform draws, floor(zero_fraction * D^2) of them (at most D^2 - 1)
  // forced to zero at positions chosen by a partial shuffle, then normalized.
  // Identical (dim, seed, zero_fraction) always yields identical weights.
  static WeightMatrix random_diagonal(int dim, std::uint64_t seed, double zero_fraction = 0.25);

  int dim() const { return dim_; }
  const RealMatrix& q() const { return q_; }
  double operator()(int k, int j) const { return q_(k, j); }
  double fidelity() const { return q_(0, 0); }

 private:
  int dim_;
  RealMatrix q_;
};

struct StepResult {
  WeightMatrix weights;
  double coincidence_prob;  // in [1/D, 1] for any valid input
};

// One full round on a D x D weight matrix.
StepResult step_general(const WeightMatrix& w);

// Entrywise squaring map q_i -> q_i^2 / sum_j q_j^2 on a weight vector
// supported on distinct shift labels. Scale invariant, so the input is only
// required to be nonnegative and not identically zero.
std::vector<double> step_subset(const std::vector<double>& q);

// Fidelity map of the isotropic family, F -> F^2 / (F^2 + (1-F)^2/(D-1)).
double step_isotropic(double fidelity, int dim);

// Fidelity map of the two-component family mixing the aligned state with the
// uniform shifted combination. Numerically identical to step_isotropic; kept
// as its own entry point so that path is exercised by name.
double step_nondiagonal(double fidelity, int dim);

// Three-level subset map in the coordinates (q0, q1), q2 = 1 - q0 - q1.
std::pair<double, double> step_qutrit(double q0, double q1);

// k-fold iterate of step_isotropic, exact for any k >= 0 including far past
// double saturation of 2^k.
double closed_form_isotropic(double f0, int dim, int steps);

// k-fold iterate of step_subset.
std::vector<double> closed_form_subset(const std::vector<double>& q0, int steps);

// k-fold iterate of step_general via the column Fourier spectrum: transform
// each column over the phase label, square the spectrum entrywise k times,
// transform back, renormalize over all entries. The spectrum is rescaled by
// its largest column sum before squaring so only decaying modes underflow.
WeightMatrix closed_form_dft(const WeightMatrix& w0, int steps);

// Success probability of one round on the isotropic family,
// P(F) = F^2 + (1-F)^2/(D-1). Bounded by [1/D, F] on F in [1/D, 1].
double coincidence_prob_isotropic(double fidelity, int dim);

// Smallest k with closed_form_isotropic(f0, dim, k) >= 1 - eps. Requires
// f0 > 1/D (strictly inside the attracting basin of F = 1).
int iterations_needed(double eps, double f0, int dim);

struct FlowRecord {
  int step;  // 0 is the initial state
  WeightMatrix weights;
  double coincidence_prob;  // success probability of the round applied at this state
};
using FlowTrajectory = std::vector<FlowRecord>;

FlowTrajectory flow(const WeightMatrix& w0, int steps);

}  // namespace qdp
