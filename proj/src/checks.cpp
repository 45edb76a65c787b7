#include "qdistill/checks.hpp"

#include <algorithm>
#include <cmath>

#include "qdistill/oracle.hpp"
#include "qdistill/qudit_core.hpp"
#include "qdistill/recursion.hpp"

namespace qdp {

namespace {

void require_suite_args(const std::vector<int>& dims, int seeds) {
  if (dims.empty()) {
    throw std::invalid_argument("check suite needs at least one dimension");
  }
  for (int d : dims) {
    if (d < 2) {
      throw std::invalid_argument("qudit dimension must be at least 2, got " + std::to_string(d));
    }
  }
  if (seeds < 1) {
    throw std::invalid_argument("check suite needs at least one seed");
  }
}

}  // namespace

std::uint64_t stream_seed(std::uint64_t base_seed, int dim, int index) {
  return base_seed + 1000003ull * static_cast<std::uint64_t>(dim) + static_cast<std::uint64_t>(index);
}

CheckResult check_oracle_vs_recursion(const std::vector<int>& dims, int seeds, std::uint64_t base_seed,
                                      double zero_fraction) {
  require_suite_args(dims, seeds);
  double worst = 0.0;
  for (int dim : dims) {
    for (int i = 0; i < seeds; ++i) {
      const WeightMatrix w = WeightMatrix::random_diagonal(dim, stream_seed(base_seed, dim, i), zero_fraction);
      const StepResult predicted = step_general(w);
      const RoundOutcome observed = distill_round_oracle(bell_diagonal_state(w));
      const WeightMatrix observed_w = bell_diagonal_weights(observed.post_state);
      worst = std::max(worst, (observed_w.q() - predicted.weights.q()).cwiseAbs().maxCoeff());
      worst = std::max(worst, std::abs(observed.success_probability - predicted.coincidence_prob));
    }
  }
  return {"oracle_vs_recursion", worst, 1e-10, worst <= 1e-10};
}

CheckResult check_bell_closure(const std::vector<int>& dims) {
  require_suite_args(dims, 1);
  double worst = 0.0;
  for (int dim : dims) {
    const ComplexMatrix gate = bcnot_matrix(dim);
    for (int k = 0; k < dim; ++k) {
      for (int j = 0; j < dim; ++j) {
        const StateVector a = bell_state(BellIndex(k, j, dim));
        for (int kp = 0; kp < dim; ++kp) {
          for (int jp = 0; jp < dim; ++jp) {
            const StateVector b = bell_state(BellIndex(kp, jp, dim));
            const auto [source, target] = bcnot_on_bell_pair(BellIndex(k, j, dim), BellIndex(kp, jp, dim));
            const StateVector expected = kron(bell_state(source), bell_state(target));
            const StateVector actual = gate * kron(a, b);
            worst = std::max(worst, (actual - expected).cwiseAbs().maxCoeff());
          }
        }
      }
    }
  }
  return {"bell_closure", worst, 1e-10, worst <= 1e-10};
}

CheckResult check_closed_forms(const std::vector<int>& dims, int seeds, int max_steps, std::uint64_t base_seed,
                               double zero_fraction) {
  require_suite_args(dims, seeds);
  if (max_steps < 0) {
    throw std::invalid_argument("step count must be nonnegative");
  }
  double worst = 0.0;
  for (int dim : dims) {
    for (int i = 0; i < seeds; ++i) {
      const WeightMatrix w0 = WeightMatrix::random_diagonal(dim, stream_seed(base_seed, dim, i), zero_fraction);
      WeightMatrix iterate = w0;
      for (int step = 0; step <= max_steps; ++step) {
        const WeightMatrix direct = closed_form_dft(w0, step);
        worst = std::max(worst, (direct.q() - iterate.q()).cwiseAbs().maxCoeff());
        if (step < max_steps) iterate = step_general(iterate).weights;
      }
    }
    for (int grid = 1; grid < 20; ++grid) {
      const double f0 = 0.05 * grid;
      double iterate = f0;
      for (int step = 0; step <= max_steps; ++step) {
        worst = std::max(worst, std::abs(closed_form_isotropic(f0, dim, step) - iterate));
        if (step < max_steps) iterate = step_isotropic(iterate, dim);
      }
    }

  }
  return {"closed_forms", worst, 1e-9, worst <= 1e-9};
}

}  // namespace qdp
