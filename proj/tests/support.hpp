#pragma once
// Glue between the brute-force oracles and library types, plus fixtures.

#include <random>
#include <vector>

#include "cbn/count_vector.hpp"
#include "cbn/poset.hpp"
#include "oracles.hpp"

namespace testing_support {

inline cbn::Poset to_poset(const oracle::Order& o) {
  std::vector<cbn::Relation> rels;
  for (auto [e, f] : o.pairs()) rels.push_back({e, f});
  return cbn::Poset::from_relations(o.n, rels);
}

inline oracle::Order to_order(const cbn::Poset& p) {
  oracle::Order o(p.size());
  for (int e = 0; e < p.size(); ++e)
    for (int f = 0; f < p.size(); ++f)
      if (p.less(e, f)) o.set(e, f);
  return o;
}

inline cbn::CountVector to_counts(int n, const oracle::Counts& u) {
  cbn::CountVector out(n);
  for (const auto& [g, c] : u) out.add(cbn::Genotype(g), c);
  return out;
}

inline oracle::Counts from_counts(const cbn::CountVector& u) {
  oracle::Counts out;
  for (const auto& [g, c] : u.entries()) out[g.bits()] = c;
  return out;
}

/// The four-event poset 1<3, 1<4, 2<3, 2<4 (zero-based here).
inline cbn::Poset diamond() { return cbn::Poset::from_relations(4, {{0, 2}, {0, 3}, {1, 2}, {1, 3}}); }

/// `draws` forward samples from the oracle sampler.
template <class Rng>
oracle::Counts sample_counts(Rng& rng, const oracle::Order& o, const std::vector<double>& theta, int draws) {
  oracle::Counts u;
  for (int k = 0; k < draws; ++k) u[oracle::draw(rng, o, theta)] += 1.0;
  return u;
}

/// Integer counts 0..max_count on every lattice member.
template <class Rng>
oracle::Counts random_lattice_counts(Rng& rng, const oracle::Order& o, int max_count) {
  std::uniform_int_distribution<int> d(0, max_count);
  oracle::Counts u;
  for (auto g : oracle::ideals(o)) {
    const int c = d(rng);
    if (c > 0) u[g] = c;
  }
  if (u.empty()) u[0] = 1;
  return u;
}

}  // namespace testing_support
