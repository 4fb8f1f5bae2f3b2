#include "cbn/selection.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <string>

#include "cbn/errors.hpp"
#include "cbn/kernels.hpp"

namespace cbn {

namespace {

using Masks = std::vector<std::uint64_t>;

/// Warshall closure of a below-set relation.
Masks close(Masks below) {
  const int n = static_cast<int>(below.size());
  for (int k = 0; k < n; ++k)
    for (int f = 0; f < n; ++f)
      if ((below[static_cast<std::size_t>(f)] >> k) & 1U) below[static_cast<std::size_t>(f)] |= below[static_cast<std::size_t>(k)];
  return below;
}

Poset poset_from_below(const Masks& below) {
  std::vector<Relation> pairs;
  for (int f = 0; f < static_cast<int>(below.size()); ++f)
    for (int e : Genotype(below[static_cast<std::size_t>(f)]).events()) pairs.push_back({e, f});
  return Poset::from_relations(static_cast<int>(below.size()), pairs);
}

void require_separated(const CountVector& u) {
  if (!separates_events(u).separated)
    throw CallerMustMerge("the data do not separate every pair of events; merge them first");
}

void require_data(const CountVector& u) {
  if (!(u.total() > 0.0)) throw EmptyData("no observations");
}

}  // namespace

EventMerge EventMerge::identity(int n) {
  EventMerge m;
  for (int e = 0; e < n; ++e) {
    m.groups.push_back({e});
    m.mapping.push_back(e);
  }
  return m;
}

Separation separates_events(const CountVector& u) {
  require_data(u);
  const int n = u.events();
  const auto support = u.support();
  // Events are unseparated exactly when they have the same membership
  // pattern across the support.
  std::map<std::vector<bool>, int> class_of;
  Separation out;
  out.classes.mapping.assign(static_cast<std::size_t>(n), 0);
  for (int e = 0; e < n; ++e) {
    std::vector<bool> pattern(support.size());
    for (std::size_t k = 0; k < support.size(); ++k) pattern[k] = support[k].contains(e);
    auto [it, inserted] = class_of.emplace(std::move(pattern), static_cast<int>(out.classes.groups.size()));
    if (inserted) out.classes.groups.emplace_back();
    out.classes.groups[static_cast<std::size_t>(it->second)].push_back(e);
    out.classes.mapping[static_cast<std::size_t>(e)] = it->second;
  }
  out.separated = out.classes.is_identity();
  return out;
}

MergedData merge_events(const CountVector& u) {
  auto sep = separates_events(u);
  if (sep.separated) return {u, std::move(sep.classes)};
  MergedData out{CountVector(sep.classes.reduced_events()), std::move(sep.classes)};
  for (const auto& [g, c] : u.entries()) {
    std::uint64_t reduced = 0;
    for (std::size_t k = 0; k < out.merge.groups.size(); ++k)
      if (g.contains(out.merge.groups[k].front())) reduced |= std::uint64_t{1} << k;
    out.reduced.add(Genotype(reduced), c);
  }
  return out;
}

std::vector<double> violation_fractions(const CountVector& u) {
  require_data(u);
  const auto support = u.support();
  std::vector<double> counts;
  counts.reserve(support.size());
  for (auto g : support) counts.push_back(u.count(g));
  auto mass = kernels::violation_mass_parallel(u.events(), support, counts);
  const double total = u.total();
  for (auto& m : mass) m /= total;
  return mass;
}

Poset maximal_compatible_poset(const CountVector& u) {
  require_data(u);
  require_separated(u);
  const int n = u.events();
  const auto support = u.support();
  Masks below(static_cast<std::size_t>(n), 0);
  for (int e = 0; e < n; ++e)
    for (int f = 0; f < n; ++f) {
      if (e == f) continue;
      const bool violated = std::any_of(support.begin(), support.end(),
                                        [&](Genotype g) { return g.contains(f) && !g.contains(e); });
      if (!violated) below[static_cast<std::size_t>(f)] |= std::uint64_t{1} << e;
    }
  return poset_from_below(below);
}

Poset epsilon_poset(const CountVector& u, double epsilon) {
  require_data(u);
  require_separated(u);
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw DomainError("epsilon must lie in [0, 1]");
  const int n = u.events();
  const auto frac = violation_fractions(u);
  const auto at = [n](int e, int f) { return static_cast<std::size_t>(e * n + f); };

  Masks base(static_cast<std::size_t>(n), 0);
  for (int e = 0; e < n; ++e)
    for (int f = 0; f < n; ++f)
      if (e != f && frac[at(e, f)] <= epsilon && frac[at(f, e)] > epsilon)
        base[static_cast<std::size_t>(f)] |= std::uint64_t{1} << e;

  for (;;) {
    const Masks closed = close(base);
    // A base relation e < f lies on a cycle when f reaches back to e.
    int worst_e = -1;
    int worst_f = -1;
    for (int f = 0; f < n; ++f)
      for (int e : Genotype(base[static_cast<std::size_t>(f)]).events()) {
        if (!((closed[static_cast<std::size_t>(e)] >> f) & 1U)) continue;
        if (worst_e < 0 || frac[at(e, f)] > frac[at(worst_e, worst_f)]) {
          worst_e = e;
          worst_f = f;
        }
      }
    if (worst_e < 0) return poset_from_below(closed);
    base[static_cast<std::size_t>(worst_f)] &= ~(std::uint64_t{1} << worst_e);
  }
}

MixtureFit fit(const CountVector& u, double epsilon, bool merge) {
  require_data(u);
  if (merge) {
    auto merged = merge_events(u);
    auto result = fit_mixture(epsilon_poset(merged.reduced, epsilon), merged.reduced, epsilon);
    result.groups = std::move(merged.merge.groups);
    return result;
  }
  return fit_mixture(epsilon_poset(u, epsilon), u, epsilon);
}

ScanResult scan(const CountVector& u, std::span<const double> epsilons, bool merge) {
  require_data(u);
  for (std::size_t i = 0; i < epsilons.size(); ++i) {
    if (!(epsilons[i] >= 0.0 && epsilons[i] <= 1.0)) throw DomainError("epsilon values must lie in [0, 1]");
    if (i > 0 && !(epsilons[i] > epsilons[i - 1])) throw DomainError("epsilon values must be strictly increasing");
  }
  ScanResult out;
  if (merge) {
    auto merged = merge_events(u);
    out.data = std::move(merged.reduced);
    out.merge = std::move(merged.merge);
  } else {
    require_separated(u);
    out.data = u;
    out.merge = EventMerge::identity(u.events());
  }
  for (double eps : epsilons) {
    Poset p = epsilon_poset(out.data, eps);
    if (!out.entries.empty() && out.entries.back().fit.poset == p) {
      out.entries.back().epsilon_max = eps;
      continue;
    }
    ScanEntry entry;
    entry.epsilon = eps;
    entry.epsilon_max = eps;
    entry.fit = fit_mixture(p, out.data, eps);
    entry.fit.groups = out.merge.groups;
    entry.fraction_incompatible = 1.0 - entry.fit.lambda_hat;
    out.entries.push_back(std::move(entry));
  }
  return out;
}

std::size_t best_entry(const ScanResult& result) {
  if (result.entries.empty()) throw EmptyData("empty scan");
  std::size_t best = 0;
  for (std::size_t i = 1; i < result.entries.size(); ++i)
    if (result.entries[i].fit.log_lik > result.entries[best].fit.log_lik) best = i;
  return best;
}

std::vector<double> auto_epsilon_grid(const CountVector& u) {
  auto grid = violation_fractions(u);
  grid.push_back(0.0);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

Quartiles summarize(std::vector<double> values) {
  if (values.empty()) throw EmptyData("no values to summarize");
  std::sort(values.begin(), values.end());
  const auto quantile = [&](double q) {
    const double pos = q * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return frac == 0.0 ? values[lo] : values[lo] + frac * (values[hi] - values[lo]);
  };
  return {values.front(), quantile(0.25), quantile(0.5), quantile(0.75), values.back()};
}

namespace {

struct Resampler {
  std::vector<Genotype> support;
  std::vector<double> weights;
  std::uint64_t draws = 0;

  explicit Resampler(const CountVector& u) : support(u.support()) {
    for (auto g : support) weights.push_back(u.count(g));
    draws = static_cast<std::uint64_t>(std::max(1.0, std::round(u.total())));
  }

  double replicate(const Poset& p, int events, std::uint64_t seed) const {
    std::mt19937_64 rng(seed);
    std::discrete_distribution<std::size_t> pick(weights.begin(), weights.end());
    std::vector<std::uint64_t> tally(support.size(), 0);
    for (std::uint64_t s = 0; s < draws; ++s) ++tally[pick(rng)];
    CountVector resampled(events);
    for (std::size_t k = 0; k < support.size(); ++k) resampled.add(support[k], static_cast<double>(tally[k]));
    return fit_mixture(p, resampled).log_lik;
  }
};

void check_bootstrap_args(const CountVector& u, const Poset& p, int replicates) {
  require_data(u);
  if (replicates < 1) throw DomainError("need at least one bootstrap replicate");
  if (u.events() != p.size()) throw DimensionMismatch("data width differs from the poset");
}

}  // namespace

std::vector<double> bootstrap_replicates_serial(const CountVector& u, const Poset& p, int replicates,
                                                std::uint64_t seed) {
  check_bootstrap_args(u, p, replicates);
  const Resampler resampler(u);
  std::vector<double> out(static_cast<std::size_t>(replicates));
  for (int r = 0; r < replicates; ++r)
    out[static_cast<std::size_t>(r)] = resampler.replicate(p, u.events(), seed + static_cast<std::uint64_t>(r));
  return out;
}

std::vector<double> bootstrap_replicates_parallel(const CountVector& u, const Poset& p, int replicates,
                                                  std::uint64_t seed) {
  check_bootstrap_args(u, p, replicates);
  const Resampler resampler(u);
  std::vector<double> out(static_cast<std::size_t>(replicates));
#pragma omp parallel for schedule(dynamic)
  for (int r = 0; r < replicates; ++r)
    out[static_cast<std::size_t>(r)] = resampler.replicate(p, u.events(), seed + static_cast<std::uint64_t>(r));
  return out;
}

Quartiles bootstrap_loglik(const CountVector& u, const Poset& p, int replicates, std::uint64_t seed) {
  return summarize(bootstrap_replicates_parallel(u, p, replicates, seed));
}

bool ranges_disjoint(const Quartiles& a, const Quartiles& b) { return a.max < b.min || b.max < a.min; }

}  // namespace cbn
