#include "cbn/genotype_model.hpp"

#include <cmath>
#include <string>

#include "cbn/errors.hpp"
#include "cbn/kernels.hpp"

namespace cbn {

CbnModel::CbnModel(Poset poset, std::vector<double> theta) : poset_(std::move(poset)), theta_(std::move(theta)) {
  if (static_cast<int>(theta_.size()) != poset_.size())
    throw DimensionMismatch("theta has " + std::to_string(theta_.size()) + " entries for " +
                            std::to_string(poset_.size()) + " events");
  for (double t : theta_)
    if (!(t >= 0.0 && t <= 1.0)) throw DomainError("theta entries must lie in [0, 1]");
}

double genotype_probability(const CbnModel& m, Genotype g) {
  const Poset& p = m.poset();
  if (!g.fits_width(p.size())) throw DimensionMismatch("genotype wider than " + std::to_string(p.size()) + " events");
  if (!p.is_order_ideal(g)) return 0.0;
  double prob = 1.0;
  for (int e : g.events()) prob *= m.theta()[static_cast<std::size_t>(e)];
  for (int e : p.min_complement(g).events()) prob *= 1.0 - m.theta()[static_cast<std::size_t>(e)];
  return prob;
}

std::vector<double> distribution(const CbnModel& m, const GenotypeLattice& lattice) {
  if (!(lattice.poset() == m.poset())) throw DimensionMismatch("lattice belongs to a different poset");
  std::vector<double> out(lattice.size());
  kernels::probabilities_parallel(m, lattice.ideals(), out);
  return out;
}

std::vector<double> distribution(const CbnModel& m) { return distribution(m, enumerate_order_ideals(m.poset())); }

CountVector sample(const CbnModel& m, std::uint64_t count, std::uint64_t seed) {
  CountVector out(m.events());
  for (const auto& [mask, c] : kernels::sample_parallel(m, count, seed)) out.add(Genotype(mask), static_cast<double>(c));
  return out;
}

double marginal_subsum(const CbnModel& m, const GenotypeLattice& lattice, Genotype h) {
  if (!m.poset().is_order_ideal(h))
    throw NotIdealError("genotype " + to_bitstring(h, m.events()) + " is not an order ideal");
  const auto probs = distribution(m, lattice);
  double sum = 0.0;
  for (std::size_t i = 0; i < lattice.size(); ++i)
    if (h.subset_of(lattice[i])) sum += probs[i];
  return sum;
}

double marginal_subsum(const CbnModel& m, Genotype h) {
  return marginal_subsum(m, enumerate_order_ideals(m.poset()), h);
}

}  // namespace cbn
