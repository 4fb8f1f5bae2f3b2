#pragma once

// Data-parallel inner loops. Each OpenMP kernel has a serial counterpart kept
// as the reference the tests compare against; bench/ times the pairs.

#include <cstdint>
#include <span>
#include <vector>

#include "cbn/poset.hpp"

namespace cbn {
class CbnModel;
}

namespace cbn::kernels {

inline constexpr std::uint64_t kSampleBlock = std::uint64_t{1} << 16;

/// P_g for each genotype in `genotypes`.
void probabilities_serial(const CbnModel& m, std::span<const Genotype> genotypes, std::span<double> out);
void probabilities_parallel(const CbnModel& m, std::span<const Genotype> genotypes, std::span<double> out);

/// Sorted (mask, count) pairs from `count` forward draws.
std::vector<std::pair<std::uint64_t, std::uint64_t>> sample_serial(const CbnModel& m, std::uint64_t count,
                                                                   std::uint64_t seed);
std::vector<std::pair<std::uint64_t, std::uint64_t>> sample_parallel(const CbnModel& m, std::uint64_t count,
                                                                     std::uint64_t seed);

/// For each lattice member, the index of h ∪ {e} per event step of the
/// superset-sum sweep (or npos when that set is not an ideal).
struct SweepPlan {
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::vector<int> events;                           // up-set first: reverse linear extension
  std::vector<std::vector<std::size_t>> successor;   // successor[step][i]
};
SweepPlan make_sweep_plan(const GenotypeLattice& lattice);

/// q_h = Σ_{g ⊇ h} p_g by the definition, O(|L|^2).
template <class T>
void superset_sum_reference(const GenotypeLattice& lattice, std::span<const T> p, std::span<T> q) {
  const auto ideals = lattice.ideals();
  for (std::size_t h = 0; h < ideals.size(); ++h) {
    T acc = T(0);
    for (std::size_t g = 0; g < ideals.size(); ++g)
      if (ideals[h].subset_of(ideals[g])) acc += p[g];
    q[h] = acc;
  }
}

/// Same transform as one sweep per event, O(n |L|); each step's inner loop
/// writes only sets lacking the event and reads only sets containing it.
template <class T>
void superset_sum_sweep(const SweepPlan& plan, std::span<T> values, bool parallel = true) {
  for (std::size_t step = 0; step < plan.events.size(); ++step) {
    const auto& succ = plan.successor[step];
    const auto size = static_cast<std::int64_t>(succ.size());
#pragma omp parallel for schedule(static) if (parallel)
    for (std::int64_t i = 0; i < size; ++i) {
      const std::size_t j = succ[static_cast<std::size_t>(i)];
      if (j != SweepPlan::npos) values[static_cast<std::size_t>(i)] += values[j];
    }
  }
}

/// Inverse of superset_sum_sweep (Möbius inversion).
template <class T>
void superset_difference_sweep(const SweepPlan& plan, std::span<T> values, bool parallel = true) {
  for (std::size_t step = plan.events.size(); step-- > 0;) {
    const auto& succ = plan.successor[step];
    const auto size = static_cast<std::int64_t>(succ.size());
#pragma omp parallel for schedule(static) if (parallel)
    for (std::int64_t i = 0; i < size; ++i) {
      const std::size_t j = succ[static_cast<std::size_t>(i)];
      if (j != SweepPlan::npos) values[static_cast<std::size_t>(i)] -= values[j];
    }
  }
}

/// Per ordered pair (e, f), the mass of genotypes containing f but not e;
/// row-major n x n, diagonal zero.
std::vector<double> violation_mass_serial(int n, std::span<const Genotype> support, std::span<const double> counts);
std::vector<double> violation_mass_parallel(int n, std::span<const Genotype> support, std::span<const double> counts);

}  // namespace cbn::kernels
