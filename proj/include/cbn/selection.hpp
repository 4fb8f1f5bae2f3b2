#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cbn/count_vector.hpp"
#include "cbn/estimation.hpp"
#include "cbn/poset.hpp"

namespace cbn {

/// Partition of the events into classes the data cannot tell apart.
struct EventMerge {
  std::vector<std::vector<int>> groups;  // ordered by smallest member
  std::vector<int> mapping;              // original event -> group index

  int reduced_events() const { return static_cast<int>(groups.size()); }
  bool is_identity() const { return groups.size() == mapping.size(); }
  static EventMerge identity(int n);
};

struct Separation {
  bool separated = false;
  EventMerge classes;
};

/// Whether every pair of events is split by some observed genotype.
Separation separates_events(const CountVector& u);

struct MergedData {
  CountVector reduced;
  EventMerge merge;
};

/// Collapses each unseparated class into one event.
MergedData merge_events(const CountVector& u);

/// Per ordered pair (e, f), row-major, the fraction of the data containing
/// f but not e. Throws EmptyData.
std::vector<double> violation_fractions(const CountVector& u);

/// e < f iff no observed genotype contains f without e. Throws CallerMustMerge.
Poset maximal_compatible_poset(const CountVector& u);

/// Relations violated by at most a fraction epsilon of the data, with
/// mutual pairs dropped and cycles broken by removing the worst-supported
/// base relation on a cycle. Throws CallerMustMerge.
Poset epsilon_poset(const CountVector& u, double epsilon);

/// Merge (when allowed), build the epsilon poset and fit the mixture.
/// Throws EmptyData, CallerMustMerge (merge == false), DegenerateMixture.
MixtureFit fit(const CountVector& u, double epsilon, bool merge = true);

struct ScanEntry {
  double epsilon = 0.0;      // smallest grid value giving this poset
  double epsilon_max = 0.0;  // largest consecutive grid value giving it
  MixtureFit fit;
  double fraction_incompatible = 0.0;
};

struct ScanResult {
  std::vector<ScanEntry> entries;
  CountVector data;  // after merging
  EventMerge merge;
};

/// One fit per epsilon (strictly increasing, within [0, 1]); consecutive
/// identical posets are reported once.
ScanResult scan(const CountVector& u, std::span<const double> epsilons, bool merge = true);

/// Index of the entry with the largest mixture log-likelihood (first on ties).
std::size_t best_entry(const ScanResult& result);

/// Zero plus every distinct violation fraction in the data, ascending.
std::vector<double> auto_epsilon_grid(const CountVector& u);

struct Quartiles {
  double min = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double max = 0.0;
  friend bool operator==(const Quartiles&, const Quartiles&) = default;
};

/// Linear-interpolation quantiles of the values.
Quartiles summarize(std::vector<double> values);

/// Mixture log-likelihoods of `replicates` resamples (with replacement, same
/// size as the data) on a fixed poset. Replicate r is seeded with seed + r.
std::vector<double> bootstrap_replicates_serial(const CountVector& u, const Poset& p, int replicates,
                                                std::uint64_t seed);
std::vector<double> bootstrap_replicates_parallel(const CountVector& u, const Poset& p, int replicates,
                                                  std::uint64_t seed);

/// Quartile summary of the bootstrap log-likelihoods. Throws EmptyData,
/// DomainError when replicates < 1.
Quartiles bootstrap_loglik(const CountVector& u, const Poset& p, int replicates, std::uint64_t seed);

/// True when the two bootstrap ranges do not overlap.
bool ranges_disjoint(const Quartiles& a, const Quartiles& b);

}  // namespace cbn
