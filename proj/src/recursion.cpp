#include "qdistill/recursion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>

namespace qdp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_dim(int dim) {
  if (dim < 2) {
    throw std::invalid_argument("qudit dimension must be at least 2, got " + std::to_string(dim));
  }
}

void require_unit_interval(double f, const char* name) {
  if (!(f >= 0.0 && f <= 1.0)) {
    throw std::domain_error(std::string(name) + " must lie in [0, 1], got " + std::to_string(f));
  }
}

// 2^k * x without forming 2^k when x is zero or infinite.
double scale_pow2(double x, int k) {
  if (x == 0.0) return 0.0;
  if (std::isinf(x)) return x;
  return std::ldexp(x, k);
}

// Uniform double in [0, 1) from the top 53 bits of the generator, so output
// bytes do not depend on the standard library's distribution internals.
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

WeightMatrix::WeightMatrix(int dim, RealMatrix q) : dim_(dim), q_(std::move(q)) {
  require_dim(dim_);
  if (q_.rows() != dim_ || q_.cols() != dim_) {
    throw std::invalid_argument("weight matrix must be " + std::to_string(dim_) + "x" + std::to_string(dim_));
  }
  for (int k = 0; k < dim_; ++k) {
    for (int j = 0; j < dim_; ++j) {
      if (!(q_(k, j) >= 0.0)) {
        throw std::domain_error("weight q(" + std::to_string(k) + "," + std::to_string(j) + ") is negative or NaN");
      }
    }
  }
  const double total = q_.sum();
  if (std::abs(total - 1.0) > kWeightSumTol) {
    throw std::domain_error("weights sum to " + std::to_string(total) + ", expected 1");
  }
}

WeightMatrix WeightMatrix::isotropic(double fidelity, int dim) {
  require_dim(dim);
  require_unit_interval(fidelity, "fidelity");
  RealMatrix q = RealMatrix::Zero(dim, dim);
  q(0, 0) = fidelity;
  for (int j = 1; j < dim; ++j) q(0, j) = (1.0 - fidelity) / (dim - 1);
  return normalized(dim, std::move(q), 1e-9);
}

WeightMatrix WeightMatrix::uniform(int dim) {
  require_dim(dim);
  return WeightMatrix(dim, RealMatrix::Constant(dim, dim, 1.0 / (dim * dim)));
}

WeightMatrix WeightMatrix::single(const BellIndex& idx) {
  RealMatrix q = RealMatrix::Zero(idx.dim(), idx.dim());
  q(idx.k.value, idx.j.value) = 1.0;
  return WeightMatrix(idx.dim(), std::move(q));
}

WeightMatrix WeightMatrix::normalized(int dim, RealMatrix q, double tol) {
  require_dim(dim);
  if (q.rows() != dim || q.cols() != dim) {
    throw std::invalid_argument("weight matrix must be " + std::to_string(dim) + "x" + std::to_string(dim));
  }
  const double total = q.sum();
  if (std::abs(total - 1.0) > tol) {
    throw std::domain_error("weights sum to " + std::to_string(total) + ", outside tolerance " + std::to_string(tol));
  }
  return WeightMatrix(dim, q / total);
}

WeightMatrix WeightMatrix::random_diagonal(int dim, std::uint64_t seed, double zero_fraction) {
  require_dim(dim);
  if (!(zero_fraction >= 0.0 && zero_fraction < 1.0)) {
    throw std::domain_error("zero fraction must lie in [0, 1), got " + std::to_string(zero_fraction));
  }
  std::mt19937_64 rng(seed);
  const int n = dim * dim;
  std::vector<double> draws(n);
  for (double& d : draws) d = uniform01(rng);

  const int zeros = std::min(static_cast<int>(zero_fraction * n), n - 1);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  for (int i = 0; i < zeros; ++i) {
    const int pick = i + static_cast<int>(uniform01(rng) * (n - i));
    std::swap(order[i], order[std::min(pick, n - 1)]);
    draws[order[i]] = 0.0;
  }

  RealMatrix q(dim, dim);
  for (int k = 0; k < dim; ++k) {
    for (int j = 0; j < dim; ++j) {
      q(k, j) = draws[k * dim + j];
    }
  }
  const double total = q.sum();
  if (total < kDegenerateNorm) {
    q(0, 0) = 1.0;
    return WeightMatrix(dim, std::move(q));
  }
  return WeightMatrix(dim, q / total);
}

StepResult step_general(const WeightMatrix& w) {
  const int dim = w.dim();
  RealMatrix g(dim, dim);
  for (int j = 0; j < dim; ++j) {
    for (int k = 0; k < dim; ++k) {
      double acc = 0.0;
      for (int kp = 0; kp < dim; ++kp) {
        int diff = k - kp;
        if (diff < 0) diff += dim;
        acc += w(diff, j) * w(kp, j);
      }
      g(k, j) = acc;
    }
  }
  const double norm = g.sum();
  if (norm < kDegenerateNorm) {
    throw std::domain_error("coincidence probability underflowed to zero; weights are degenerate");
  }
  return {WeightMatrix(dim, g / norm), norm};
}

std::vector<double> step_subset(const std::vector<double>& q) {
  if (q.empty()) {
    throw std::invalid_argument("subset weight vector is empty");
  }
  double norm = 0.0;
  for (double v : q) {
    if (!(v >= 0.0)) {
      throw std::domain_error("subset weights must be nonnegative");
    }
    norm += v * v;
  }
  if (norm < kDegenerateNorm) {
    throw std::domain_error("subset weights are degenerate (all zero)");
  }
  std::vector<double> out(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) {
    out[i] = q[i] * q[i] / norm;
  }
  return out;
}

double step_isotropic(double fidelity, int dim) {
  require_dim(dim);
  require_unit_interval(fidelity, "fidelity");
  const double miss = (1.0 - fidelity) * (1.0 - fidelity) / (dim - 1);
  return fidelity * fidelity / (fidelity * fidelity + miss);
}

double step_nondiagonal(double fidelity, int dim) {
  return step_isotropic(fidelity, dim);
}

std::pair<double, double> step_qutrit(double q0, double q1) {
  if (!(q0 >= 0.0) || !(q1 >= 0.0) || !(q0 + q1 <= 1.0 + 1e-12)) {
    throw std::domain_error("(q0, q1) must lie in the probability simplex");
  }
  const double q2 = std::max(0.0, 1.0 - q0 - q1);
  const double norm = q0 * q0 + q1 * q1 + q2 * q2;
  return {q0 * q0 / norm, q1 * q1 / norm};
}

double closed_form_isotropic(double f0, int dim, int steps) {
  require_dim(dim);
  require_unit_interval(f0, "initial fidelity");
  if (steps < 0) {
    throw std::invalid_argument("step count must be nonnegative");
  }
  if (steps == 0) return f0;
  // F_k = 1 / (1 + (D-1) r^{2^k}) with r = (1-F)/((D-1)F); evaluated through
  // 2^k * ln r so saturation runs through exp() instead of pow underflow.
  const double log_r = std::log1p(-f0) - std::log(static_cast<double>(dim - 1)) - std::log(f0);
  const double expo = scale_pow2(log_r, steps);
  return 1.0 / (1.0 + (dim - 1) * std::exp(expo));
}

std::vector<double> closed_form_subset(const std::vector<double>& q0, int steps) {
  if (q0.empty()) {
    throw std::invalid_argument("subset weight vector is empty");
  }
  if (steps < 0) {
    throw std::invalid_argument("step count must be nonnegative");
  }
  for (double v : q0) {
    if (!(v >= 0.0)) {
      throw std::domain_error("subset weights must be nonnegative");
    }
  }
  if (steps == 0) return q0;
  std::vector<double> logs(q0.size());
  double top = -kInf;
  for (std::size_t i = 0; i < q0.size(); ++i) {
    logs[i] = scale_pow2(std::log(q0[i]), steps);
    top = std::max(top, logs[i]);
  }
  if (top == -kInf) {
    throw std::domain_error("subset weights are degenerate (all zero)");
  }
  std::vector<double> out(q0.size());
  double norm = 0.0;
  for (std::size_t i = 0; i < q0.size(); ++i) {
    out[i] = std::exp(logs[i] - top);
    norm += out[i];
  }
  for (double& v : out) v /= norm;
  return out;
}

WeightMatrix closed_form_dft(const WeightMatrix& w0, int steps) {
  if (steps < 0) {
    throw std::invalid_argument("step count must be nonnegative");
  }
  if (steps == 0) return w0;
  const int dim = w0.dim();

  // Forward transform of each column over the phase label. Row zero holds the
  // column sums, which bound every other entry of that column in magnitude.
  ComplexMatrix spectrum(dim, dim);
  for (int j = 0; j < dim; ++j) {
    for (int kh = 0; kh < dim; ++kh) {
      Complex acc = 0.0;
      for (int k = 0; k < dim; ++k) {
        const double angle = 2.0 * std::numbers::pi * ((kh * k) % dim) / dim;
        acc += std::polar(w0(k, j), angle);
      }
      spectrum(kh, j) = acc;
    }
  }

  double scale = 0.0;
  for (int j = 0; j < dim; ++j) scale = std::max(scale, spectrum(0, j).real());
  if (scale < kDegenerateNorm) {
    throw std::domain_error("weights are degenerate (all zero)");
  }
  spectrum /= scale;

  // Entrywise squaring k times is the whole evolution; dominated modes decay
  // doubly exponentially and flush to zero, the leading mode stays at 1.
  for (int s = 0; s < steps; ++s) {
    spectrum = spectrum.cwiseProduct(spectrum);
  }

  RealMatrix g(dim, dim);
  for (int j = 0; j < dim; ++j) {
    for (int k = 0; k < dim; ++k) {
      Complex acc = 0.0;
      for (int kh = 0; kh < dim; ++kh) {
        const double angle = -2.0 * std::numbers::pi * ((kh * k) % dim) / dim;
        acc += spectrum(kh, j) * std::polar(1.0, angle);
      }
      g(k, j) = std::max(0.0, acc.real() / dim);
    }
  }
  const double norm = g.sum();
  if (norm < kDegenerateNorm) {
    throw std::domain_error("weights are degenerate after evolution");
  }
  return WeightMatrix(dim, g / norm);
}

double coincidence_prob_isotropic(double fidelity, int dim) {
  require_dim(dim);
  require_unit_interval(fidelity, "fidelity");
  return fidelity * fidelity + (1.0 - fidelity) * (1.0 - fidelity) / (dim - 1);
}

int iterations_needed(double eps, double f0, int dim) {
  require_dim(dim);
  if (!(eps > 0.0 && eps < 1.0)) {
    throw std::domain_error("target infidelity must lie in (0, 1), got " + std::to_string(eps));
  }
  if (!(f0 > 1.0 / dim && f0 <= 1.0)) {
    throw std::domain_error("initial fidelity must lie in (1/D, 1] to converge upward");
  }
  if (f0 >= 1.0 - eps) return 0;
  // Solve 2^K ln r <= ln(eps / ((1-eps)(D-1))) for the smallest integer K;
  // ln r < 0 inside the basin, so the inequality flips on division.
  const double log_r = std::log1p(-f0) - std::log(static_cast<double>(dim - 1)) - std::log(f0);
  const double target = std::log(eps) - std::log1p(-eps) - std::log(static_cast<double>(dim - 1));
  const double ratio = target / log_r;
  if (ratio <= 1.0) return 0;
  return static_cast<int>(std::ceil(std::log2(ratio)));
}

FlowTrajectory flow(const WeightMatrix& w0, int steps) {
  if (steps < 0) {
    throw std::invalid_argument("step count must be nonnegative");
  }
  FlowTrajectory traj;
  traj.reserve(steps + 1);
  WeightMatrix current = w0;
  for (int s = 0; s <= steps; ++s) {
    StepResult next = step_general(current);
    traj.push_back({s, current, next.coincidence_prob});
    if (s < steps) current = std::move(next.weights);
  }
  return traj;
}

}  // namespace qdp
