#include "qdistill/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qdistill/qudit_core.hpp"
#include "qdistill/recursion.hpp"

namespace qdp {

namespace {

constexpr double kDiffStep = 1e-6;       // central-difference step for Jacobians
constexpr double kStabilityBand = 1e-3;  // |multiplier - 1| below this is marginal

Stability classify(double spectral_radius) {
  if (spectral_radius < 1.0 - kStabilityBand) return Stability::Stable;
  if (spectral_radius > 1.0 + kStabilityBand) return Stability::Unstable;
  return Stability::Marginal;
}

// Isotropic fidelity map without range checks, so it can be probed slightly
// outside [0, 1] by the difference stencil.
double isotropic_map(double f, int dim) {
  const double miss = (1.0 - f) * (1.0 - f) / (dim - 1);
  return f * f / (f * f + miss);
}

// Three-level map without simplex checks, for the same reason.
struct Vec2 {
  double a, b;
};

Vec2 qutrit_map(Vec2 q) {
  const double q2 = 1.0 - q.a - q.b;
  const double norm = q.a * q.a + q.b * q.b + q2 * q2;
  return {q.a * q.a / norm, q.b * q.b / norm};
}

Eigen::Matrix2d qutrit_jacobian(Vec2 q) {
  Eigen::Matrix2d jac;
  const Vec2 pa0 = qutrit_map({q.a + kDiffStep, q.b});
  const Vec2 ma0 = qutrit_map({q.a - kDiffStep, q.b});
  const Vec2 pb0 = qutrit_map({q.a, q.b + kDiffStep});
  const Vec2 mb0 = qutrit_map({q.a, q.b - kDiffStep});
  jac(0, 0) = (pa0.a - ma0.a) / (2 * kDiffStep);
  jac(0, 1) = (pb0.a - mb0.a) / (2 * kDiffStep);
  jac(1, 0) = (pa0.b - ma0.b) / (2 * kDiffStep);
  jac(1, 1) = (pb0.b - mb0.b) / (2 * kDiffStep);
  return jac;
}

double spectral_radius_2x2(const Eigen::Matrix2d& m) {
  const Complex tr = m(0, 0) + m(1, 1);
  const Complex det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  const Complex disc = std::sqrt(tr * tr - 4.0 * det);
  return std::max(std::abs((tr + disc) / 2.0), std::abs((tr - disc) / 2.0));
}

}  // namespace

std::vector<FixedPoint> fixed_points_isotropic(int dim) {
  if (dim < 2) {
    throw std::invalid_argument("qudit dimension must be at least 2, got " + std::to_string(dim));
  }
  std::vector<FixedPoint> out;
  for (double f : {0.0, 1.0 / dim, 1.0}) {
    const double slope = (isotropic_map(f + kDiffStep, dim) - isotropic_map(f - kDiffStep, dim)) / (2 * kDiffStep);
    out.push_back({{f}, classify(std::abs(slope))});
  }
  return out;
}

std::vector<FixedPoint> qutrit_fixed_points() {
  // Forward iteration cannot land on the non-attracting points, so every grid
  // seed is refined by Newton's method on T(q) - q = 0 instead.
  std::vector<Vec2> roots;
  const int grid = 21;
  for (int i = 0; i < grid; ++i) {
    for (int j = 0; i + j < grid; ++j) {
      Vec2 q{i / 20.0, j / 20.0};
      bool converged = false;
      for (int it = 0; it < 60; ++it) {
        const Vec2 image = qutrit_map(q);
        const double ra = image.a - q.a;
        const double rb = image.b - q.b;
        if (std::abs(ra) < 1e-13 && std::abs(rb) < 1e-13) {
          converged = true;
          break;
        }
        Eigen::Matrix2d jac = qutrit_jacobian(q) - Eigen::Matrix2d::Identity();
        const double det = jac(0, 0) * jac(1, 1) - jac(0, 1) * jac(1, 0);
        if (std::abs(det) < 1e-14) break;
        const double da = (jac(1, 1) * ra - jac(0, 1) * rb) / det;
        const double db = (jac(0, 0) * rb - jac(1, 0) * ra) / det;
        q = {q.a - da, q.b - db};
        if (!std::isfinite(q.a) || !std::isfinite(q.b) || std::abs(q.a) > 5 || std::abs(q.b) > 5) break;
      }
      if (!converged) continue;
      if (q.a < -1e-8 || q.b < -1e-8 || q.a + q.b > 1 + 1e-8) continue;
      q.a = std::max(q.a, 0.0);
      q.b = std::max(q.b, 0.0);
      bool duplicate = false;
      for (const Vec2& r : roots) {
        if (std::abs(r.a - q.a) < 1e-6 && std::abs(r.b - q.b) < 1e-6) {
          duplicate = true;
          break;
        }
      }
      if (!duplicate) roots.push_back(q);
    }
  }
  std::sort(roots.begin(), roots.end(), [](const Vec2& l, const Vec2& r) {
    return l.a != r.a ? l.a < r.a : l.b < r.b;
  });
  std::vector<FixedPoint> out;
  for (const Vec2& r : roots) {
    out.push_back({{r.a, r.b}, classify(spectral_radius_2x2(qutrit_jacobian(r)))});
  }
  return out;
}

PhaseDiagram phase_diagram(int resolution, int max_iterations, double capture_radius) {
  if (resolution < 2) {
    throw std::invalid_argument("resolution must be at least 2, got " + std::to_string(resolution));
  }
  if (max_iterations < 1 || !(capture_radius > 0.0)) {
    throw std::invalid_argument("iteration budget and capture radius must be positive");
  }
  PhaseDiagram diagram;
  diagram.resolution = resolution;
  diagram.fixed_points = qutrit_fixed_points();

  const double spacing = 1.0 / (resolution - 1);
  for (int i = 0; i < resolution; ++i) {
    for (int j = 0; i + j < resolution; ++j) {
      const double q0 = i * spacing;
      const double q1 = j * spacing;
      Vec2 q{q0, q1};
      int label = -1;
      for (int it = 0; it <= max_iterations && label < 0; ++it) {
        for (std::size_t f = 0; f < diagram.fixed_points.size(); ++f) {
          const double da = q.a - diagram.fixed_points[f].coordinates[0];
          const double db = q.b - diagram.fixed_points[f].coordinates[1];
          if (da * da + db * db < capture_radius * capture_radius) {
            label = static_cast<int>(f);
            break;
          }
        }
        if (label < 0 && it < max_iterations) q = qutrit_map(q);
      }
      diagram.cells.push_back({q0, q1, label});
    }
  }
  return diagram;
}

std::vector<double> asymptotic_weights(const std::vector<double>& q0) {
  if (q0.empty()) {
    throw std::invalid_argument("weight vector is empty");
  }
  double top = 0.0;
  for (double v : q0) {
    if (!(v >= 0.0)) {
      throw std::domain_error("weights must be nonnegative");
    }
    top = std::max(top, v);
  }
  if (top == 0.0) {
    throw std::domain_error("weights are degenerate (all zero)");
  }
  int ties = 0;
  for (double v : q0) {
    if (v == top) ++ties;
  }
  std::vector<double> out(q0.size(), 0.0);
  for (std::size_t i = 0; i < q0.size(); ++i) {
    if (q0[i] == top) out[i] = 1.0 / ties;
  }
  return out;
}

double trapezoid(const std::vector<double>& values) {
  const int n = static_cast<int>(values.size());
  if (n < 2) {
    throw std::invalid_argument("trapezoid rule needs at least two samples");
  }
  double acc = 0.5 * (values.front() + values.back());
  for (int i = 1; i + 1 < n; ++i) acc += values[i];
  return acc / (n - 1);
}

ContinuumProfile ContinuumProfile::from_samples(std::vector<double> values) {
  if (values.size() < 2) {
    throw std::invalid_argument("profile needs at least two samples");
  }
  for (double v : values) {
    if (!(v >= 0.0)) {
      throw std::domain_error("profile samples must be nonnegative");
    }
  }
  const double integral = trapezoid(values);
  if (integral < kDegenerateNorm) {
    throw std::domain_error("profile is degenerate (identically zero)");
  }
  for (double& v : values) v /= integral;
  return ContinuumProfile(std::move(values));
}

ContinuumProfile ContinuumProfile::parabolic(int points) {
  if (points < 3) {
    throw std::invalid_argument("parabolic profile needs at least three samples");
  }
  std::vector<double> values(points);
  for (int i = 0; i < points; ++i) {
    const double x = static_cast<double>(i) / (points - 1);
    values[i] = 6.0 * x * (1.0 - x);
  }
  return from_samples(std::move(values));
}

ContinuumProfile continuum_evolve(const ContinuumProfile& profile, int steps) {
  if (steps < 0) {
    throw std::invalid_argument("step count must be nonnegative");
  }
  if (steps == 0) return profile;
  const std::vector<double>& v = profile.values();
  std::vector<double> logs(v.size());
  double top = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double lg = std::log(v[i]);
    logs[i] = (lg == 0.0 || std::isinf(lg)) ? lg : std::ldexp(lg, steps);
    top = std::max(top, logs[i]);
  }
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[i] = std::exp(logs[i] - top);
  }
  return ContinuumProfile::from_samples(std::move(out));
}

double window_mass(const ContinuumProfile& profile, double center, double half_width) {
  if (!(half_width > 0.0)) {
    throw std::invalid_argument("window half-width must be positive");
  }
  const int n = profile.points();
  std::vector<double> inside;
  inside.reserve(n);
  for (int i = 0; i < n; ++i) {
    if (std::abs(profile.x(i) - center) <= half_width + 1e-12) {
      inside.push_back(profile.values()[i]);
    }
  }
  if (inside.size() < 2) return 0.0;
  // The window is a contiguous run of grid points, so the same composite rule
  // applies with the original spacing.
  double acc = 0.5 * (inside.front() + inside.back());
  for (std::size_t i = 1; i + 1 < inside.size(); ++i) acc += inside[i];
  return acc / (n - 1);
}

QrgReport qrg_demo(double coupling) {
  if (!(coupling > 0.0)) {
    throw std::domain_error("exchange coupling must be positive, got " + std::to_string(coupling));
  }
  ComplexMatrix sx(2, 2), sy(2, 2), sz(2, 2), id = ComplexMatrix::Identity(2, 2);
  sx << 0, 0.5, 0.5, 0;
  sy << 0, Complex(0, -0.5), Complex(0, 0.5), 0;
  sz << 0.5, 0, 0, -0.5;

  const auto site_op = [&](const ComplexMatrix& op, int site) {
    ComplexMatrix out = site == 0 ? op : id;
    for (int s = 1; s < 3; ++s) {
      out = kron(out, s == site ? op : id);
    }
    return out;
  };

  ComplexMatrix h = ComplexMatrix::Zero(8, 8);
  for (const ComplexMatrix* op : {&sx, &sy, &sz}) {
    h += site_op(*op, 0) * site_op(*op, 1);
    h += site_op(*op, 1) * site_op(*op, 2);
  }
  h *= coupling;

  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
  const RealVector energies = solver.eigenvalues();
  const double ground = energies(0);

  // Majority-rule up state: (2|udu> - |duu> - |uud>) / sqrt 6 with u at bit 0.
  StateVector up = StateVector::Zero(8);
  up(2) = 2.0 / std::sqrt(6.0);
  up(4) = -1.0 / std::sqrt(6.0);
  up(1) = -1.0 / std::sqrt(6.0);

  const double degeneracy_tol = 1e-8 * std::max(1.0, std::abs(coupling));
  double overlap = 0.0;
  for (int i = 0; i < 8; ++i) {
    if (energies(i) - ground <= degeneracy_tol) {
      overlap += std::norm(solver.eigenvectors().col(i).dot(up));
    }
  }

  const double edge_moment = up.dot(site_op(sz, 2) * up).real();
  return {ground, overlap, edge_moment / 0.5};
}

}  // namespace qdp
