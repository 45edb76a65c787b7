#pragma once
// Single- and two-qudit primitives for D-level systems.
//
// A qudit pair is indexed row-major, |a>|b> -> a*D + b. The entangled family
// used throughout is
//
//   |Psi_kj> = (1/sqrt D) sum_y w^{ky} |y>|y(-)j>,   w = exp(2*pi*i/D),
//
// where y(-)j = (y - j) mod D. At D = 2 this is the Bell quartet in the order
// (0,0) -> Phi+, (0,1) -> Psi+, (1,0) -> Phi-, (1,1) -> Psi-.

#include <utility>

#include "qdistill/types.hpp"

namespace qdp {

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector kron(const ComplexVector& a, const ComplexVector& b);

double max_abs(const ComplexMatrix& m);
bool is_unitary(const ComplexMatrix& u, double tol = kUnitaryTol);

// Fourier gate on C^D, entry (y, k) = w^{ky} / sqrt D. Unitary; the D = 2
// case is the Hadamard gate.
ComplexMatrix qft_matrix(int dim);

// Controlled difference gate |i>|j> -> |i>|i(-)j>. A self-inverse Hermitian
// permutation; the target lands on |0> exactly when control equals target.
ComplexMatrix cnot_matrix(int dim);

// |Psi_kj> as a D^2-component vector. Equals cnot_matrix(D) * (qft (x) 1)|k>|j>.
StateVector bell_state(const BellIndex& idx);

// Unitary whose column k*D + j is bell_state(k, j). Conjugation by it moves
// density matrices between the computational and entangled bases.
ComplexMatrix bell_basis_matrix(int dim);

// Local corrections that restore canonical form after one purification round
// on the three qubit mixtures carrying a sign flip on either component.
// Defined for qubit pairs only.
enum class Step2Variant { PlusMinus, MinusPlus, MinusMinus };

// Returns (U_A, U_B), each unitary to kUnitaryTol.
std::pair<ComplexMatrix, ComplexMatrix> step2prime_unitaries(Step2Variant variant, int dim = 2);

}  // namespace qdp
