#include "qdistill/qudit_core.hpp"

#include <cmath>
#include <numbers>

namespace qdp {

namespace {

void require_dim(int dim) {
  if (dim < 2) {
    throw std::invalid_argument("qudit dimension must be at least 2, got " + std::to_string(dim));
  }
}

int reduce_mod(int v, int d) {
  int r = v % d;
  return r < 0 ? r + d : r;
}

// w^{n} for w = exp(2*pi*i/D), with the exponent reduced first so large
// products k*y do not lose phase accuracy.
Complex root_of_unity_pow(int n, int dim) {
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(reduce_mod(n, dim)) / static_cast<double>(dim);
  return std::polar(1.0, angle);
}

}  // namespace

Residue::Residue(int v, int d) {
  if (d < 2) {
    throw std::invalid_argument("residue modulus must be at least 2, got " + std::to_string(d));
  }
  dim = d;
  value = reduce_mod(v, d);
}

Residue Residue::operator+(const Residue& o) const {
  if (dim != o.dim) {
    throw std::invalid_argument("residue modulus mismatch: " + std::to_string(dim) + " vs " + std::to_string(o.dim));
  }
  return Residue(value + o.value, dim);
}

Residue Residue::operator-(const Residue& o) const {
  if (dim != o.dim) {
    throw std::invalid_argument("residue modulus mismatch: " + std::to_string(dim) + " vs " + std::to_string(o.dim));
  }
  return Residue(value - o.value, dim);
}

BellIndex::BellIndex(Residue k_, Residue j_) : k(k_), j(j_) {
  if (k.dim != j.dim) {
    throw std::invalid_argument("bell index labels live in different moduli");
  }
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexVector kron(const ComplexVector& a, const ComplexVector& b) {
  ComplexVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    out.segment(i * b.size(), b.size()) = a(i) * b;
  }
  return out;
}

double max_abs(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

bool is_unitary(const ComplexMatrix& u, double tol) {
  if (u.rows() != u.cols()) return false;
  ComplexMatrix gram = u.adjoint() * u;
  gram -= ComplexMatrix::Identity(u.rows(), u.cols());
  return max_abs(gram) <= tol;
}

ComplexMatrix qft_matrix(int dim) {
  require_dim(dim);
  const double scale = 1.0 / std::sqrt(static_cast<double>(dim));
  ComplexMatrix f(dim, dim);
  for (int y = 0; y < dim; ++y) {
    for (int k = 0; k < dim; ++k) {
      f(y, k) = scale * root_of_unity_pow(k * y, dim);
    }
  }
  return f;
}

ComplexMatrix cnot_matrix(int dim) {
  require_dim(dim);
  ComplexMatrix u = ComplexMatrix::Zero(dim * dim, dim * dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      u(i * dim + reduce_mod(i - j, dim), i * dim + j) = 1.0;
    }
  }
  return u;
}

StateVector bell_state(const BellIndex& idx) {
  const int dim = idx.dim();
  const double scale = 1.0 / std::sqrt(static_cast<double>(dim));
  StateVector v = StateVector::Zero(dim * dim);
  for (int y = 0; y < dim; ++y) {
    v(y * dim + reduce_mod(y - idx.j.value, dim)) = scale * root_of_unity_pow(idx.k.value * y, dim);
  }
  return v;
}

ComplexMatrix bell_basis_matrix(int dim) {
  require_dim(dim);
  ComplexMatrix b(dim * dim, dim * dim);
  for (int k = 0; k < dim; ++k) {
    for (int j = 0; j < dim; ++j) {
      b.col(k * dim + j) = bell_state(BellIndex(k, j, dim));
    }
  }
  return b;
}

std::pair<ComplexMatrix, ComplexMatrix> step2prime_unitaries(Step2Variant variant, int dim) {
  if (dim != 2) {
    throw std::invalid_argument("canonical-form corrections exist for qubit pairs only, got D = " + std::to_string(dim));
  }
  ComplexMatrix sx(2, 2), sy(2, 2), sz(2, 2);
  sx << 0, 1, 1, 0;
  sy << 0, Complex(0, -1), Complex(0, 1), 0;
  sz << 1, 0, 0, -1;
  const Complex half_plus(0.5, 0.5);
  const Complex half_minus(0.5, -0.5);
  switch (variant) {
    case Step2Variant::PlusMinus:
      return {half_plus * (sx + sy), half_minus * (sx - sy)};
    case Step2Variant::MinusPlus: {
      ComplexMatrix u = half_plus * (sx + sy);
      return {u, u};
    }
    case Step2Variant::MinusMinus:
      return {sz, ComplexMatrix::Identity(2, 2)};
  }
  throw std::invalid_argument("unknown correction variant");
}

}  // namespace qdp
