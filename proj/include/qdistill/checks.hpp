#pragma once
// Cross-validation suites pitting the dense oracle, the weight recursion,
// and the spectral closed forms against each other on seeded random inputs.
// Shared by the command line check subcommand and the release gate tests.
//
// Seeding is deterministic: the matrix for (dim, index) under base seed s is
// WeightMatrix::random_diagonal(dim, s + 1000003 * dim + index, zero_fraction).

#include <cstdint>
#include <string>
#include <vector>

namespace qdp {

struct CheckResult {
  std::string suite;
  double max_deviation;
  double threshold;
  bool pass;
};

// Oracle round vs step_general: post weights and success probability.
CheckResult check_oracle_vs_recursion(const std::vector<int>& dims, int seeds, std::uint64_t base_seed,
                                      double zero_fraction = 0.25);

// Explicit difference-gate matrix on every product of entangled basis states
// vs the label arithmetic, all D^4 input pairs per dimension.
CheckResult check_bell_closure(const std::vector<int>& dims);

// Spectral closed form vs explicit iteration, steps 0..max_steps, plus the
// isotropic closed form against its own iteration on a fidelity grid.
CheckResult check_closed_forms(const std::vector<int>& dims, int seeds, int max_steps, std::uint64_t base_seed,
                               double zero_fraction = 0.25);

std::uint64_t stream_seed(std::uint64_t base_seed, int dim, int index);

}  // namespace qdp
