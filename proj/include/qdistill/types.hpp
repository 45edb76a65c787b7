#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace qdp {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using StateVector = ComplexVector;

// Numerical contracts shared across modules.
inline constexpr double kUnitaryTol = 1e-12;       // max |U'U - I| for gate factories
inline constexpr double kHermiticityTol = 1e-12;   // max |rho - rho'| for density inputs
inline constexpr double kTraceTol = 1e-12;         // |Tr rho - 1|
inline constexpr double kPsdFloor = -1e-10;        // smallest admissible density eigenvalue
inline constexpr double kWeightSumTol = 1e-12;     // |sum q - 1| for weight matrices
inline constexpr double kDegenerateNorm = 1e-300;  // normalizers below this are degenerate
inline constexpr int kMaxOracleDim = 16;           // dense four-qudit states grow as D^8

// Element of Z_D. value is always reduced into [0, D-1]; arithmetic between
// mismatched moduli throws.
struct Residue {
  int value = 0;
  int dim = 2;

  Residue() = default;
  Residue(int v, int d);

  Residue operator+(const Residue& o) const;
  Residue operator-(const Residue& o) const;
  bool operator==(const Residue&) const = default;
};

// Label (k, j) of a maximally entangled two-qudit state: k counts the phase
// winding, j the cyclic offset between the two halves.
struct BellIndex {
  Residue k;
  Residue j;

  BellIndex(int k_, int j_, int d) : k(k_, d), j(j_, d) {}
  BellIndex(Residue k_, Residue j_);

  int dim() const { return k.dim; }
  bool operator==(const BellIndex&) const = default;
};

}  // namespace qdp
