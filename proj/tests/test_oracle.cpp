#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qdistill/checks.hpp"
#include "qdistill/oracle.hpp"

using namespace qdp;

namespace {

bool same_label(const BellIndex& a, int k, int j) { return a.k.value == k && a.j.value == j; }

}  // namespace

TEST_CASE("label arithmetic reproduces the qubit table") {
  const auto row = [](int k, int j, int kp, int jp) {
    return bcnot_on_bell_pair(BellIndex(k, j, 2), BellIndex(kp, jp, 2));
  };
  // diagonal inputs
  auto [s1, t1] = row(0, 0, 0, 0);
  CHECK(same_label(s1, 0, 0));
  CHECK(same_label(t1, 0, 0));
  auto [s2, t2] = row(0, 1, 0, 1);
  CHECK(same_label(s2, 0, 1));
  CHECK(same_label(t2, 0, 0));
  auto [s3, t3] = row(1, 0, 1, 0);
  CHECK(same_label(s3, 0, 0));
  CHECK(same_label(t3, 1, 0));
  auto [s4, t4] = row(1, 1, 1, 1);
  CHECK(same_label(s4, 0, 1));
  CHECK(same_label(t4, 1, 0));
  // mixed inputs keep the source shift label
  auto [s5, t5] = row(0, 0, 0, 1);
  CHECK(same_label(s5, 0, 0));
  CHECK(same_label(t5, 0, 1));
  auto [s6, t6] = row(0, 1, 0, 0);
  CHECK(same_label(s6, 0, 1));
  CHECK(same_label(t6, 0, 1));

  CHECK_THROWS_AS(bcnot_on_bell_pair(BellIndex(0, 0, 2), BellIndex(0, 0, 3)), std::invalid_argument);
}

TEST_CASE("label arithmetic matches the explicit gate on every product pair") {
  CHECK(check_bell_closure({2, 3}).pass);
  CHECK(check_bell_closure({2, 3}).max_deviation < 1e-12);
}

TEST_CASE("gate matrix is a unit permutation") {
  for (int d : {2, 3}) {
    const ComplexMatrix u = bcnot_matrix(d);
    CHECK(is_unitary(u));
    const int n = d * d * d * d;
    for (int col = 0; col < n; ++col) {
      int ones = 0;
      for (int row = 0; row < n; ++row) {
        const Complex e = u(row, col);
        if (std::abs(e) > 0.5) {
          CHECK(std::abs(e - Complex(1, 0)) < 1e-15);
          ++ones;
        } else {
          CHECK(std::abs(e) < 1e-15);
        }
      }
      CHECK(ones == 1);
    }
  }
}

TEST_CASE("densities are validated on entry") {
  ComplexMatrix rho = ComplexMatrix::Zero(4, 4);
  rho(0, 0) = 1.5;
  rho(1, 1) = -0.5;
  CHECK_THROWS_AS(make_bipartite_density(2, rho), std::domain_error);  // negative eigenvalue
  rho(1, 1) = 0.5;
  CHECK_THROWS_AS(make_bipartite_density(2, rho), std::domain_error);  // trace 2
  rho(0, 0) = 0.5;
  rho(0, 1) = Complex(0, 0.3);
  CHECK_THROWS_AS(make_bipartite_density(2, rho), std::domain_error);  // not Hermitian
  rho(1, 0) = Complex(0, -0.3);
  CHECK_NOTHROW(make_bipartite_density(2, rho));
  CHECK_THROWS_AS(make_bipartite_density(1, ComplexMatrix::Identity(1, 1)), std::invalid_argument);
  CHECK_THROWS_AS(make_bipartite_density(17, ComplexMatrix::Zero(17 * 17, 17 * 17)), std::invalid_argument);
  CHECK_THROWS_AS(make_bipartite_density(3, ComplexMatrix::Identity(4, 4)), std::invalid_argument);
}

TEST_CASE("one round on the qubit benchmark state") {
  const RoundOutcome out = distill_round_oracle(bell_diagonal_state(WeightMatrix::isotropic(0.75, 2)));
  CHECK(out.success_probability == doctest::Approx(0.625).epsilon(1e-13));
  const WeightMatrix w = bell_diagonal_weights(out.post_state);
  CHECK(w(0, 0) == doctest::Approx(0.9).epsilon(1e-13));
  CHECK(w(0, 1) == doctest::Approx(0.1).epsilon(1e-13));
  CHECK(w(1, 0) == doctest::Approx(0.0).epsilon(1e-13));
  CHECK(w(1, 1) == doctest::Approx(0.0).epsilon(1e-13));
}

TEST_CASE("perfect input passes through unchanged") {
  for (int d = 2; d <= 4; ++d) {
    const BipartiteDensity aligned = bell_diagonal_state(WeightMatrix::single(BellIndex(0, 0, d)));
    const RoundOutcome out = distill_round_oracle(aligned);
    CHECK(out.success_probability == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(max_abs(out.post_state.rho - aligned.rho) < 1e-12);
  }
}

TEST_CASE("round matches the recursion on seeded random states") {
  CHECK(check_oracle_vs_recursion({2, 3, 4}, 5, 424242).pass);
}

TEST_CASE("records form a distribution and disagreement never coincides") {
  const int d = 3;
  for (int jp : {0, 1, 2}) {
    const StateVector in =
        kron(bell_state(BellIndex(1, 1, d)), bell_state(BellIndex(2, jp, d)));
    ComplexMatrix four = in * in.adjoint();
    four = bcnot_matrix(d) * four * bcnot_matrix(d).adjoint();
    const CoincidenceSplit split = coincidence_measurement(four, d);
    CHECK(split.record_probs.sum() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(split.record_probs.minCoeff() >= -1e-14);
    if (jp == 1) {
      CHECK(split.coincidence_prob == doctest::Approx(1.0).epsilon(1e-12));
    } else {
      CHECK(split.coincidence_prob < 1e-12);
    }
  }
}

TEST_CASE("decomposition inverts assembly and exposes the two-component block") {
  const WeightMatrix w = WeightMatrix::random_diagonal(3, 99u, 0.2);
  const BipartiteDensity rho = bell_diagonal_state(w);
  const ComplexMatrix coeffs = decompose_bell(rho);
  for (int k = 0; k < 3; ++k) {
    for (int j = 0; j < 3; ++j) {
      CHECK(bell_coefficient(coeffs, 3, k, j, k, j).real() == doctest::Approx(w(k, j)).epsilon(1e-13));
    }
  }
  ComplexMatrix off = coeffs;
  off.diagonal().setZero();
  CHECK(max_abs(off) < 1e-13);
  CHECK(max_abs(bell_basis_matrix(3) * coeffs * bell_basis_matrix(3).adjoint() - rho.rho) < 1e-13);

  // rank-two mixture at D = 3, F = 0.5: aligned weight 0.5 and a flat 0.25
  // block over the shifted labels, coherences included
  const ComplexMatrix c2 = decompose_bell(nondiagonal_state(0.5, 3));
  CHECK(bell_coefficient(c2, 3, 0, 0, 0, 0).real() == doctest::Approx(0.5).epsilon(1e-13));
  for (int i = 1; i < 3; ++i) {
    for (int j = 1; j < 3; ++j) {
      CHECK(bell_coefficient(c2, 3, 0, i, 0, j).real() == doctest::Approx(0.25).epsilon(1e-13));
      CHECK(std::abs(bell_coefficient(c2, 3, 0, i, 0, j).imag()) < 1e-13);
    }
  }
  CHECK(std::abs(bell_coefficient(c2, 3, 0, 0, 0, 1)) < 1e-13);
  CHECK(std::abs(bell_coefficient(c2, 3, 1, 0, 1, 0)) < 1e-13);
}

TEST_CASE("diagonal weight extraction rejects coherent states") {
  CHECK_THROWS_AS(bell_diagonal_weights(nondiagonal_state(0.5, 3)), std::domain_error);
}

TEST_CASE("variant rounds return to their own form with the common gain") {
  for (QubitMixture variant :
       {QubitMixture::PlusPlus, QubitMixture::PlusMinus, QubitMixture::MinusPlus, QubitMixture::MinusMinus}) {
    for (double f : {0.3, 0.7}) {
      const RoundOutcome out = qubit_variant_round(variant, f);
      const double gain = f * f / (f * f + (1 - f) * (1 - f));
      CHECK(out.success_probability == doctest::Approx(f * f + (1 - f) * (1 - f)).epsilon(1e-12));

      int k1 = 0, j1 = 0, k2 = 0, j2 = 1;
      if (variant == QubitMixture::PlusMinus) {
        k2 = 1;
        j2 = 1;
      } else if (variant == QubitMixture::MinusPlus) {
        k1 = 1;
        j1 = 0;
        k2 = 0;
        j2 = 1;
      } else if (variant == QubitMixture::MinusMinus) {
        k1 = 1;
        j1 = 0;
        k2 = 1;
        j2 = 1;
      }
      const ComplexMatrix coeffs = decompose_bell(out.post_state);
      CHECK(bell_coefficient(coeffs, 2, k1, j1, k1, j1).real() == doctest::Approx(gain).epsilon(1e-12));
      CHECK(bell_coefficient(coeffs, 2, k2, j2, k2, j2).real() == doctest::Approx(1 - gain).epsilon(1e-12));
      // everything off the two kept labels is leakage
      double leakage = 0.0;
      for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) {
          const bool kept_diag = (r == c) && (r == k1 * 2 + j1 || r == k2 * 2 + j2);
          if (!kept_diag) leakage = std::max(leakage, std::abs(coeffs(r, c)));
        }
      }
      CHECK(leakage < 1e-10);
    }
  }
  const RoundOutcome half = qubit_variant_round(QubitMixture::MinusMinus, 0.5);
  CHECK(decompose_bell(half.post_state)(2, 2).real() == doctest::Approx(0.5).epsilon(1e-12));
  CHECK_THROWS_AS(qubit_variant_round(QubitMixture::PlusPlus, 1.5), std::domain_error);
}

TEST_CASE("two-component family is closed under the round") {
  for (int d : {2, 3, 4}) {
    for (double f : {0.3, 0.5, 0.8}) {
      const NondiagonalOutcome out = nondiagonal_round(f, d);
      CHECK(out.form_leakage < 1e-10);
      CHECK(out.fidelity_out == doctest::Approx(step_nondiagonal(f, d)).epsilon(1e-12));
      CHECK(out.success_probability == doctest::Approx(coincidence_prob_isotropic(f, d)).epsilon(1e-12));
    }
  }
  CHECK(nondiagonal_round(0.5, 3).fidelity_out == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  for (int d = 2; d <= 6; ++d) {
    CHECK(nondiagonal_round(1.0 / d, d).fidelity_out == doctest::Approx(1.0 / d).epsilon(1e-12));
  }
  CHECK_THROWS_AS(nondiagonal_round(-0.2, 3), std::domain_error);
}
