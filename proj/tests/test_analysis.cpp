#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "qdistill/analysis.hpp"
#include "qdistill/recursion.hpp"

using namespace qdp;

TEST_CASE("isotropic map has the three known fixed points at every dimension") {
  for (int d = 2; d <= 6; ++d) {
    const auto fps = fixed_points_isotropic(d);
    REQUIRE(fps.size() == 3);
    CHECK(fps[0].coordinates[0] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(fps[1].coordinates[0] == doctest::Approx(1.0 / d).epsilon(1e-12));
    CHECK(fps[2].coordinates[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fps[0].stability == Stability::Stable);
    CHECK(fps[1].stability == Stability::Unstable);
    CHECK(fps[2].stability == Stability::Stable);
  }
}

TEST_CASE("three-level map has seven fixed points with three attractors") {
  const auto fps = qutrit_fixed_points();
  REQUIRE(fps.size() == 7);
  const double known[7][2] = {{0.0, 0.0}, {0.0, 0.5}, {0.0, 1.0}, {1.0 / 3.0, 1.0 / 3.0},
                              {0.5, 0.0},  {0.5, 0.5}, {1.0, 0.0}};
  const Stability expect[7] = {Stability::Stable,   Stability::Unstable, Stability::Stable,
                               Stability::Unstable, Stability::Unstable, Stability::Unstable,
                               Stability::Stable};
  for (int i = 0; i < 7; ++i) {
    CHECK(fps[i].coordinates[0] == doctest::Approx(known[i][0]).epsilon(1e-8));
    CHECK(fps[i].coordinates[1] == doctest::Approx(known[i][1]).epsilon(1e-8));
    CHECK(fps[i].stability == expect[i]);
  }
}

namespace {

const FixedPoint& cell_target(const PhaseDiagram& diagram, double q0, double q1) {
  for (const PhaseCell& cell : diagram.cells) {
    if (std::abs(cell.q0 - q0) < 1e-12 && std::abs(cell.q1 - q1) < 1e-12) {
      REQUIRE(cell.label >= 0);
      return diagram.fixed_points[cell.label];
    }
  }
  REQUIRE(false);
  return diagram.fixed_points[0];
}

}  // namespace

TEST_CASE("basin diagram sends each region to its majority corner") {
  const PhaseDiagram diagram = phase_diagram(6);
  CHECK(diagram.resolution == 6);
  // q2 = 1 - q0 - q1 is largest in the lower-left region
  CHECK(cell_target(diagram, 0.6, 0.2).coordinates[0] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(cell_target(diagram, 0.6, 0.2).coordinates[1] == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(cell_target(diagram, 0.2, 0.6).coordinates[0] == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(cell_target(diagram, 0.2, 0.6).coordinates[1] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(cell_target(diagram, 0.2, 0.2).coordinates[0] == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(cell_target(diagram, 0.2, 0.2).coordinates[1] == doctest::Approx(0.0).epsilon(1e-9));
  // the two-way tie q0 = q1 > q2 lands on the unstable edge point
  CHECK(cell_target(diagram, 0.4, 0.4).coordinates[0] == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(cell_target(diagram, 0.4, 0.4).coordinates[1] == doctest::Approx(0.5).epsilon(1e-9));
  for (const PhaseCell& cell : diagram.cells) {
    CHECK(cell.label >= 0);
  }
  // swapping q0 and q1 mirrors the diagram
  for (const PhaseCell& cell : diagram.cells) {
    const FixedPoint& here = diagram.fixed_points[cell.label];
    const FixedPoint& there = cell_target(diagram, cell.q1, cell.q0);
    CHECK(here.coordinates[0] == doctest::Approx(there.coordinates[1]).epsilon(1e-9));
    CHECK(here.coordinates[1] == doctest::Approx(there.coordinates[0]).epsilon(1e-9));
  }
}

TEST_CASE("asymptotic weights spread uniformly over the maximal entries") {
  const auto single = asymptotic_weights({0.2, 0.5, 0.3});
  CHECK(single[0] == 0.0);
  CHECK(single[1] == 1.0);
  CHECK(single[2] == 0.0);
  const auto tied = asymptotic_weights({0.4, 0.4, 0.2});
  CHECK(tied[0] == 0.5);
  CHECK(tied[1] == 0.5);
  CHECK(tied[2] == 0.0);
  const auto flat = asymptotic_weights({0.25, 0.25, 0.25, 0.25});
  for (double v : flat) CHECK(v == 0.25);
  CHECK_THROWS_AS(asymptotic_weights({}), std::invalid_argument);
  CHECK_THROWS_AS(asymptotic_weights({0.0, 0.0}), std::domain_error);
  CHECK_THROWS_AS(asymptotic_weights({0.3, -0.1}), std::domain_error);
}

TEST_CASE("basin labels agree with the subset limit away from boundaries") {
  const PhaseDiagram diagram = phase_diagram(11);
  int compared = 0;
  for (const PhaseCell& cell : diagram.cells) {
    const double q2 = std::max(0.0, 1.0 - cell.q0 - cell.q1);
    // Grid points whose leading entries tie in exact arithmetic but differ by
    // rounding (q2 is a difference of decimals) are genuinely ambiguous: the
    // iteration parks them at the tie point while the exact-max rule breaks
    // the tie. Compare only where the maximum is clean.
    const double top = std::max({cell.q0, cell.q1, q2});
    bool ambiguous = false;
    for (double v : {cell.q0, cell.q1, q2}) {
      if (top - v != 0.0 && top - v < 1e-9) ambiguous = true;
    }
    if (ambiguous) continue;
    ++compared;
    const auto limit = asymptotic_weights({cell.q0, cell.q1, q2});
    const FixedPoint& target = diagram.fixed_points[cell.label];
    CHECK(target.coordinates[0] == doctest::Approx(limit[0]).epsilon(1e-9));
    CHECK(target.coordinates[1] == doctest::Approx(limit[1]).epsilon(1e-9));
  }
  CHECK(compared > 50);
}

TEST_CASE("profile construction normalizes and validates") {
  const ContinuumProfile p = ContinuumProfile::from_samples({2.0, 4.0, 2.0});
  CHECK(trapezoid(p.values()) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(p.x(0) == 0.0);
  CHECK(p.x(2) == 1.0);
  CHECK_THROWS_AS(ContinuumProfile::from_samples({1.0}), std::invalid_argument);
  CHECK_THROWS_AS(ContinuumProfile::from_samples({1.0, -0.5, 1.0}), std::domain_error);
  CHECK_THROWS_AS(ContinuumProfile::from_samples({0.0, 0.0, 0.0}), std::domain_error);
}

TEST_CASE("squaring flow sharpens the parabolic profile around its peak") {
  const int n = 1001;
  const ContinuumProfile base = ContinuumProfile::parabolic(n);
  // the trapezoid normalization moves the raw value 1.5 by about 1e-6
  CHECK(base.values()[500] == doctest::Approx(1.5).epsilon(1e-5));

  const ContinuumProfile one = continuum_evolve(base, 1);
  CHECK(one.values()[500] == doctest::Approx(1.875).epsilon(1e-3));

  const double peaks[7] = {1.5, 1.875, 2.460938, 3.338470, 4.618348, 6.457539, 9.079806};
  double prev = 0.0;
  for (int k = 0; k <= 6; ++k) {
    const ContinuumProfile evolved = continuum_evolve(base, k);
    CHECK(trapezoid(evolved.values()) == doctest::Approx(1.0).epsilon(1e-12));
    const double peak = evolved.values()[500];
    CHECK(peak == doctest::Approx(peaks[k]).epsilon(1e-3));
    CHECK(peak > prev);
    prev = peak;
  }

  // identity at zero steps
  const ContinuumProfile zero = continuum_evolve(base, 0);
  for (int i = 0; i < n; ++i) CHECK(zero.values()[i] == base.values()[i]);
  CHECK_THROWS_AS(continuum_evolve(base, -1), std::invalid_argument);
}

TEST_CASE("window mass concentrates but is still below 0.99 after six steps") {
  const ContinuumProfile base = ContinuumProfile::parabolic(1001);
  const ContinuumProfile six = continuum_evolve(base, 6);
  const double mass = window_mass(six, 0.5, 0.1);
  CHECK(mass == doctest::Approx(0.9785093337).epsilon(1e-3));
  CHECK(mass < 0.99);
  CHECK(window_mass(continuum_evolve(base, 7), 0.5, 0.1) > 0.99);

  // a flat profile holds exactly the window fraction
  const ContinuumProfile flat = ContinuumProfile::from_samples(std::vector<double>(101, 1.0));
  CHECK(window_mass(flat, 0.5, 0.1) == doctest::Approx(0.2).epsilon(1e-12));
  CHECK_THROWS_AS(window_mass(flat, 0.5, -0.1), std::invalid_argument);
}

TEST_CASE("three-site block has a doublet ground state with the 2/3 edge factor") {
  const QrgReport report = qrg_demo(1.0);
  CHECK(report.ground_energy == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(report.doublet_overlap == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(report.edge_spin_factor == doctest::Approx(2.0 / 3.0).epsilon(1e-10));

  const QrgReport scaled = qrg_demo(2.5);
  CHECK(scaled.ground_energy == doctest::Approx(-2.5).epsilon(1e-12));
  CHECK(scaled.edge_spin_factor == doctest::Approx(2.0 / 3.0).epsilon(1e-10));

  CHECK_THROWS_AS(qrg_demo(0.0), std::domain_error);
  CHECK_THROWS_AS(qrg_demo(-1.0), std::domain_error);
}
