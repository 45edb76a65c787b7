#pragma once
// Dense density-matrix reference for one purification round, kept independent
// of the weight recursion on purpose. Two copies of a two-qudit state are
// combined with controlled difference gates on the duplicated halves, the
// second copy is measured site by site, and the first copy is kept when the
// two records agree. Everything is materialized in the computational basis,
// so memory grows as D^8 and dimensions above kMaxOracleDim are refused.
//
// Four-party indexing. The two copies are ordered (A1, B1, A2, B2) with A1
// most significant: |a1 b1 a2 b2> -> ((a1*D + b1)*D + a2)*D + b2. One side
// applies the difference gate from A1 onto A2, the other from B1 onto B2.

#include <utility>

#include "qdistill/qudit_core.hpp"
#include "qdistill/recursion.hpp"
#include "qdistill/types.hpp"

namespace qdp {

// Two-qudit density matrix, D^2 x D^2 in the row-major pair basis.
struct BipartiteDensity {
  int dim = 0;
  ComplexMatrix rho;
};

// Validates Hermiticity, unit trace, and positivity down to kPsdFloor.
BipartiteDensity make_bipartite_density(int dim, ComplexMatrix rho);

// Mixture of entangled-basis projectors with the given weights.
BipartiteDensity bell_diagonal_state(const WeightMatrix& w);

// Rank-two mixture of the aligned entangled state with the equal
// superposition of all D - 1 shifted ones.
BipartiteDensity nondiagonal_state(double fidelity, int dim);

struct RoundOutcome {
  BipartiteDensity post_state;
  double success_probability;
};

// Image of a product of two entangled basis states under the duplicated-pair
// difference gates: (k, j), (k', j') -> (k (+) k', j), (D (-) k', j (-) j').
// The pair stays a product of entangled basis states for every input.
std::pair<BellIndex, BellIndex> bcnot_on_bell_pair(const BellIndex& a, const BellIndex& b);

// The same operation as an explicit D^4 x D^4 permutation matrix.
ComplexMatrix bcnot_matrix(int dim);

// Outcome of the site-wise measurement of the second copy.
struct CoincidenceSplit {
  ComplexMatrix kept_block;  // unnormalized first-copy state summed over agreeing records
  double coincidence_prob;
  RealMatrix record_probs;  // D x D joint distribution of the two records; sums to one
};

// Measures qudits A2 and B2 of a four-party state in the computational basis
// and postselects on equal records.
CoincidenceSplit coincidence_measurement(const ComplexMatrix& four_party, int dim);

// One full round: duplicate, apply the difference gates, measure, postselect.
// Throws if the coincidence probability vanishes (below 1e-15).
RoundOutcome distill_round_oracle(const BipartiteDensity& rho);

// Coefficients <Psi_kj| rho |Psi_k'j'> as a D^2 x D^2 matrix, row index
// k*D + j. Inverse of assembling a state from entangled-basis coefficients.
ComplexMatrix decompose_bell(const BipartiteDensity& rho);

inline Complex bell_coefficient(const ComplexMatrix& coeffs, int dim, int k, int j, int kp, int jp) {
  return coeffs(k * dim + j, kp * dim + jp);
}

// Diagonal of decompose_bell as a WeightMatrix; requires every off-diagonal
// coefficient to be below offdiag_tol in magnitude.
WeightMatrix bell_diagonal_weights(const BipartiteDensity& rho, double offdiag_tol = 1e-10);

// The four rank-two qubit mixtures, named by the signs of their two entangled
// components: PlusPlus mixes (0,0) with (0,1), PlusMinus (0,0) with (1,1),
// MinusPlus (1,0) with (0,1), MinusMinus (1,0) with (1,1).
enum class QubitMixture { PlusPlus, PlusMinus, MinusPlus, MinusMinus };

// One round on the given mixture at fidelity F, with the matching local
// corrections from step2prime_unitaries applied to the kept pair between the
// difference gates and the measurement. The outcome state has the same
// mixture form with fidelity F^2 / (F^2 + (1-F)^2).
RoundOutcome qubit_variant_round(QubitMixture variant, double fidelity);

struct NondiagonalOutcome {
  double fidelity_out;
  double success_probability;
  double form_leakage;  // largest residual outside the two-component span
};

// One round on nondiagonal_state(fidelity, dim).
NondiagonalOutcome nondiagonal_round(double fidelity, int dim);

}  // namespace qdp
