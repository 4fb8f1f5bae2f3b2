#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cbn/count_vector.hpp"
#include "cbn/poset.hpp"

namespace cbn {

/// A conjunctive Bayesian network: a poset plus one occurrence probability
/// per event, conditional on all predecessors having occurred.
class CbnModel {
 public:
  /// Throws DimensionMismatch if theta.size() != n, DomainError outside [0,1].
  CbnModel(Poset poset, std::vector<double> theta);

  const Poset& poset() const { return poset_; }
  std::span<const double> theta() const { return theta_; }
  int events() const { return poset_.size(); }

 private:
  Poset poset_;
  std::vector<double> theta_;
};

/// Product formula; exactly 0 for genotypes outside the lattice.
double genotype_probability(const CbnModel& m, Genotype g);

/// P_g for every lattice member, in canonical lattice order.
std::vector<double> distribution(const CbnModel& m, const GenotypeLattice& lattice);
std::vector<double> distribution(const CbnModel& m);

/// Block-seeded forward sampling, reproducible for a given seed regardless
/// of thread count: block b of kSampleBlock draws uses seed + b.
CountVector sample(const CbnModel& m, std::uint64_t count, std::uint64_t seed);

/// Sum of P_g over lattice members g containing the ideal h.
double marginal_subsum(const CbnModel& m, Genotype h);
double marginal_subsum(const CbnModel& m, const GenotypeLattice& lattice, Genotype h);

}  // namespace cbn
