#pragma once

#include <map>
#include <vector>

#include "cbn/poset.hpp"

namespace cbn {

/// Observed genotype counts u_g over n events. Counts are non-negative
/// reals so that normalized data and bootstrap weights share one type.
class CountVector {
 public:
  using Map = std::map<Genotype, double, CanonicalLess>;

  CountVector() = default;
  explicit CountVector(int n);

  int events() const { return n_; }

  /// Adds c >= 0 to u_g; zero additions leave the support unchanged.
  void add(Genotype g, double c = 1.0);
  double count(Genotype g) const;
  double total() const;
  bool empty() const { return counts_.empty(); }

  /// Positive-count genotypes in canonical order.
  std::vector<Genotype> support() const;
  const Map& entries() const { return counts_; }

  /// Copy scaled to total mass one. Throws EmptyData.
  CountVector normalized() const;

  friend bool operator==(const CountVector&, const CountVector&) = default;

 private:
  int n_ = 0;
  Map counts_;
};

}  // namespace cbn
