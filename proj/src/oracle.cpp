#include "qdistill/oracle.hpp"

#include <cmath>
#include <string>

namespace qdp {

namespace {

void require_oracle_dim(int dim) {
  if (dim < 2) {
    throw std::invalid_argument("qudit dimension must be at least 2, got " + std::to_string(dim));
  }
  if (dim > kMaxOracleDim) {
    throw std::invalid_argument("dense oracle is capped at D = " + std::to_string(kMaxOracleDim) +
                                "; use the weight recursion for larger dimensions");
  }
}

void require_unit_interval(double f, const char* name) {
  if (!(f >= 0.0 && f <= 1.0)) {
    throw std::domain_error(std::string(name) + " must lie in [0, 1], got " + std::to_string(f));
  }
}

int reduce_mod(int v, int d) {
  int r = v % d;
  return r < 0 ? r + d : r;
}

// Basis permutation of the duplicated-pair difference gates, acting on the
// four-party index ((a1*D + b1)*D + a2)*D + b2.
int bcnot_permute(int x, int dim) {
  const int b2 = x % dim;
  const int a2 = (x / dim) % dim;
  const int b1 = (x / (dim * dim)) % dim;
  const int a1 = x / (dim * dim * dim);
  return ((a1 * dim + b1) * dim + reduce_mod(a1 - a2, dim)) * dim + reduce_mod(b1 - b2, dim);
}

ComplexMatrix apply_bcnot(const ComplexMatrix& four, int dim) {
  const int n = dim * dim * dim * dim;
  std::vector<int> perm(n);
  for (int x = 0; x < n; ++x) perm[x] = bcnot_permute(x, dim);
  ComplexMatrix out(n, n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      out(perm[r], perm[c]) = four(r, c);
    }
  }
  return out;
}

Step2Variant correction_for(QubitMixture variant) {
  switch (variant) {
    case QubitMixture::PlusMinus:
      return Step2Variant::PlusMinus;
    case QubitMixture::MinusPlus:
      return Step2Variant::MinusPlus;
    case QubitMixture::MinusMinus:
      return Step2Variant::MinusMinus;
    default:
      throw std::invalid_argument("no correction is defined for the diagonal mixture");
  }
}

}  // namespace

BipartiteDensity make_bipartite_density(int dim, ComplexMatrix rho) {
  require_oracle_dim(dim);
  const int n = dim * dim;
  if (rho.rows() != n || rho.cols() != n) {
    throw std::invalid_argument("density matrix must be " + std::to_string(n) + "x" + std::to_string(n));
  }
  if (max_abs(rho - rho.adjoint()) > kHermiticityTol) {
    throw std::domain_error("density matrix is not Hermitian within tolerance");
  }
  if (std::abs(rho.trace().real() - 1.0) > kTraceTol || std::abs(rho.trace().imag()) > kTraceTol) {
    throw std::domain_error("density matrix trace differs from 1");
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(rho, Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().minCoeff() < kPsdFloor) {
    throw std::domain_error("density matrix has an eigenvalue below " + std::to_string(kPsdFloor));
  }
  return {dim, std::move(rho)};
}

BipartiteDensity bell_diagonal_state(const WeightMatrix& w) {
  const int dim = w.dim();
  require_oracle_dim(dim);
  ComplexMatrix rho = ComplexMatrix::Zero(dim * dim, dim * dim);
  for (int k = 0; k < dim; ++k) {
    for (int j = 0; j < dim; ++j) {
      if (w(k, j) == 0.0) continue;
      const StateVector psi = bell_state(BellIndex(k, j, dim));
      rho += w(k, j) * (psi * psi.adjoint());
    }
  }
  return make_bipartite_density(dim, std::move(rho));
}

BipartiteDensity nondiagonal_state(double fidelity, int dim) {
  require_oracle_dim(dim);
  require_unit_interval(fidelity, "fidelity");
  const StateVector aligned = bell_state(BellIndex(0, 0, dim));
  StateVector shifted = StateVector::Zero(dim * dim);
  for (int j = 1; j < dim; ++j) {
    shifted += bell_state(BellIndex(0, j, dim));
  }
  shifted /= std::sqrt(static_cast<double>(dim - 1));
  ComplexMatrix rho = fidelity * (aligned * aligned.adjoint()) + (1.0 - fidelity) * (shifted * shifted.adjoint());
  return make_bipartite_density(dim, std::move(rho));
}

std::pair<BellIndex, BellIndex> bcnot_on_bell_pair(const BellIndex& a, const BellIndex& b) {
  if (a.dim() != b.dim()) {
    throw std::invalid_argument("bell labels live in different dimensions");
  }
  BellIndex source(a.k + b.k, a.j);
  BellIndex target(Residue(0, a.dim()) - b.k, a.j - b.j);
  return {source, target};
}

ComplexMatrix bcnot_matrix(int dim) {
  require_oracle_dim(dim);
  const int n = dim * dim * dim * dim;
  ComplexMatrix u = ComplexMatrix::Zero(n, n);
  for (int x = 0; x < n; ++x) {
    u(bcnot_permute(x, dim), x) = 1.0;
  }
  return u;
}

CoincidenceSplit coincidence_measurement(const ComplexMatrix& four_party, int dim) {
  require_oracle_dim(dim);
  const int n2 = dim * dim;
  if (four_party.rows() != n2 * n2 || four_party.cols() != n2 * n2) {
    throw std::invalid_argument("four-party state has the wrong shape");
  }
  RealMatrix record_probs = RealMatrix::Zero(dim, dim);
  for (int za = 0; za < dim; ++za) {
    for (int zb = 0; zb < dim; ++zb) {
      double p = 0.0;
      for (int r1 = 0; r1 < n2; ++r1) {
        p += four_party(r1 * n2 + za * dim + zb, r1 * n2 + za * dim + zb).real();
      }
      record_probs(za, zb) = p;
    }
  }
  ComplexMatrix kept = ComplexMatrix::Zero(n2, n2);
  for (int z = 0; z < dim; ++z) {
    const int t = z * dim + z;
    for (int r1 = 0; r1 < n2; ++r1) {
      for (int c1 = 0; c1 < n2; ++c1) {
        kept(r1, c1) += four_party(r1 * n2 + t, c1 * n2 + t);
      }
    }
  }
  double coincidence = 0.0;
  for (int z = 0; z < dim; ++z) coincidence += record_probs(z, z);
  return {std::move(kept), coincidence, std::move(record_probs)};
}

RoundOutcome distill_round_oracle(const BipartiteDensity& rho) {
  BipartiteDensity checked = make_bipartite_density(rho.dim, rho.rho);
  const int dim = checked.dim;
  ComplexMatrix four = kron(checked.rho, checked.rho);
  four = apply_bcnot(four, dim);
  CoincidenceSplit split = coincidence_measurement(four, dim);
  if (split.coincidence_prob < 1e-15) {
    throw std::domain_error("coincidence probability vanishes for this input");
  }
  BipartiteDensity post = make_bipartite_density(dim, split.kept_block / split.coincidence_prob);
  return {std::move(post), split.coincidence_prob};
}

ComplexMatrix decompose_bell(const BipartiteDensity& rho) {
  BipartiteDensity checked = make_bipartite_density(rho.dim, rho.rho);
  const ComplexMatrix basis = bell_basis_matrix(checked.dim);
  return basis.adjoint() * checked.rho * basis;
}

WeightMatrix bell_diagonal_weights(const BipartiteDensity& rho, double offdiag_tol) {
  const ComplexMatrix coeffs = decompose_bell(rho);
  const int dim = rho.dim;
  ComplexMatrix offdiag = coeffs;
  offdiag.diagonal().setZero();
  if (max_abs(offdiag) > offdiag_tol) {
    throw std::domain_error("state is not diagonal in the entangled basis within tolerance");
  }
  RealMatrix q(dim, dim);
  for (int k = 0; k < dim; ++k) {
    for (int j = 0; j < dim; ++j) {
      q(k, j) = std::max(0.0, coeffs(k * dim + j, k * dim + j).real());
    }
  }
  return WeightMatrix::normalized(dim, std::move(q), 1e-9);
}

RoundOutcome qubit_variant_round(QubitMixture variant, double fidelity) {
  require_unit_interval(fidelity, "fidelity");
  const int dim = 2;
  BellIndex first(0, 0, dim), second(0, 1, dim);
  switch (variant) {
    case QubitMixture::PlusPlus:
      break;
    case QubitMixture::PlusMinus:
      first = BellIndex(0, 0, dim);
      second = BellIndex(1, 1, dim);
      break;
    case QubitMixture::MinusPlus:
      first = BellIndex(1, 0, dim);
      second = BellIndex(0, 1, dim);
      break;
    case QubitMixture::MinusMinus:
      first = BellIndex(1, 0, dim);
      second = BellIndex(1, 1, dim);
      break;
  }
  const StateVector a = bell_state(first);
  const StateVector b = bell_state(second);
  ComplexMatrix rho = fidelity * (a * a.adjoint()) + (1.0 - fidelity) * (b * b.adjoint());

  ComplexMatrix four = kron(rho, rho);
  four = apply_bcnot(four, dim);
  if (variant != QubitMixture::PlusPlus) {
    const auto [ua, ub] = step2prime_unitaries(correction_for(variant));
    const ComplexMatrix local = kron(kron(ua, ub), ComplexMatrix::Identity(dim * dim, dim * dim));
    four = local * four * local.adjoint();
  }
  CoincidenceSplit split = coincidence_measurement(four, dim);
  if (split.coincidence_prob < 1e-15) {
    throw std::domain_error("coincidence probability vanishes for this input");
  }
  BipartiteDensity post = make_bipartite_density(dim, split.kept_block / split.coincidence_prob);
  return {std::move(post), split.coincidence_prob};
}

NondiagonalOutcome nondiagonal_round(double fidelity, int dim) {
  const BipartiteDensity initial = nondiagonal_state(fidelity, dim);
  RoundOutcome round = distill_round_oracle(initial);

  const StateVector aligned = bell_state(BellIndex(0, 0, dim));
  StateVector shifted = StateVector::Zero(dim * dim);
  for (int j = 1; j < dim; ++j) {
    shifted += bell_state(BellIndex(0, j, dim));
  }
  shifted /= std::sqrt(static_cast<double>(dim - 1));

  const double weight_aligned = aligned.dot(round.post_state.rho * aligned).real();
  const double weight_shifted = shifted.dot(round.post_state.rho * shifted).real();
  const ComplexMatrix residual = round.post_state.rho - weight_aligned * (aligned * aligned.adjoint()) -
                                 weight_shifted * (shifted * shifted.adjoint());
  return {weight_aligned, round.success_probability, max_abs(residual)};
}

}  // namespace qdp
