#include "cbn/count_vector.hpp"

#include <cmath>
#include <string>

#include "cbn/errors.hpp"

namespace cbn {

CountVector::CountVector(int n) : n_(n) {
  if (n < 1 || n > kMaxEvents) throw IndexError("event count " + std::to_string(n) + " out of range");
}

void CountVector::add(Genotype g, double c) {
  if (!g.fits_width(n_)) throw DimensionMismatch("genotype wider than " + std::to_string(n_) + " events");
  if (!(c >= 0.0) || !std::isfinite(c)) throw DomainError("counts must be finite and non-negative");
  if (c == 0.0) return;
  counts_[g] += c;
}

double CountVector::count(Genotype g) const {
  auto it = counts_.find(g);
  return it == counts_.end() ? 0.0 : it->second;
}

double CountVector::total() const {
  double sum = 0.0;
  for (const auto& [g, c] : counts_) sum += c;
  return sum;
}

std::vector<Genotype> CountVector::support() const {
  std::vector<Genotype> out;
  out.reserve(counts_.size());
  for (const auto& [g, c] : counts_) out.push_back(g);
  return out;
}

CountVector CountVector::normalized() const {
  const double t = total();
  if (!(t > 0.0)) throw EmptyData("no observations");
  CountVector out(n_);
  for (const auto& [g, c] : counts_) out.counts_.emplace(g, c / t);
  return out;
}

}  // namespace cbn
