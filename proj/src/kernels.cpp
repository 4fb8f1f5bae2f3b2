#include "cbn/kernels.hpp"

#include <algorithm>
#include <random>

#include "cbn/genotype_model.hpp"

namespace cbn::kernels {

namespace {

struct Sampler {
  std::vector<int> order;
  std::vector<std::uint64_t> below;
  std::vector<double> theta;

  explicit Sampler(const CbnModel& m) : order(m.poset().linear_extension()) {
    for (int e : order) {
      below.push_back(m.poset().below(e).bits());
      theta.push_back(m.theta()[static_cast<std::size_t>(e)]);
    }
  }

  void draw_block(std::uint64_t draws, std::uint64_t seed, std::vector<std::uint64_t>& out) const {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    out.resize(draws);
    for (std::uint64_t s = 0; s < draws; ++s) {
      std::uint64_t g = 0;
      for (std::size_t k = 0; k < order.size(); ++k) {
        if ((below[k] & ~g) != 0) continue;
        if (unit(rng) < theta[k]) g |= std::uint64_t{1} << order[k];
      }
      out[s] = g;
    }
  }
};

std::vector<std::pair<std::uint64_t, std::uint64_t>> tally(std::vector<std::uint64_t>& draws) {
  std::sort(draws.begin(), draws.end());
  std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
  for (auto g : draws) {
    if (out.empty() || out.back().first != g) out.emplace_back(g, 0);
    ++out.back().second;
  }
  return out;
}

std::uint64_t block_draws(std::uint64_t count, std::uint64_t block) {
  return std::min(kSampleBlock, count - block * kSampleBlock);
}

}  // namespace

void probabilities_serial(const CbnModel& m, std::span<const Genotype> genotypes, std::span<double> out) {
  for (std::size_t i = 0; i < genotypes.size(); ++i) out[i] = genotype_probability(m, genotypes[i]);
}

void probabilities_parallel(const CbnModel& m, std::span<const Genotype> genotypes, std::span<double> out) {
  const auto size = static_cast<std::int64_t>(genotypes.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < size; ++i)
    out[static_cast<std::size_t>(i)] = genotype_probability(m, genotypes[static_cast<std::size_t>(i)]);
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> sample_serial(const CbnModel& m, std::uint64_t count,
                                                                   std::uint64_t seed) {
  const Sampler sampler(m);
  const std::uint64_t blocks = (count + kSampleBlock - 1) / kSampleBlock;
  std::vector<std::uint64_t> all;
  std::vector<std::uint64_t> block;
  for (std::uint64_t b = 0; b < blocks; ++b) {
    sampler.draw_block(block_draws(count, b), seed + b, block);
    all.insert(all.end(), block.begin(), block.end());
  }
  return tally(all);
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> sample_parallel(const CbnModel& m, std::uint64_t count,
                                                                     std::uint64_t seed) {
  const Sampler sampler(m);
  const std::uint64_t blocks = (count + kSampleBlock - 1) / kSampleBlock;
  std::vector<std::uint64_t> all(count);
  const auto nblocks = static_cast<std::int64_t>(blocks);
#pragma omp parallel
  {
    std::vector<std::uint64_t> block;
#pragma omp for schedule(dynamic)
    for (std::int64_t b = 0; b < nblocks; ++b) {
      const auto ub = static_cast<std::uint64_t>(b);
      sampler.draw_block(block_draws(count, ub), seed + ub, block);
      std::copy(block.begin(), block.end(), all.begin() + static_cast<std::ptrdiff_t>(ub * kSampleBlock));
    }
  }
  return tally(all);
}

SweepPlan make_sweep_plan(const GenotypeLattice& lattice) {
  SweepPlan plan;
  auto order = lattice.poset().linear_extension();
  plan.events.assign(order.rbegin(), order.rend());
  const auto ideals = lattice.ideals();
  plan.successor.reserve(plan.events.size());
  for (int e : plan.events) {
    std::vector<std::size_t> succ(ideals.size(), SweepPlan::npos);
    for (std::size_t i = 0; i < ideals.size(); ++i) {
      if (ideals[i].contains(e)) continue;
      if (auto j = lattice.index_of(ideals[i].with(e))) succ[i] = *j;
    }
    plan.successor.push_back(std::move(succ));
  }
  return plan;
}

std::vector<double> violation_mass_serial(int n, std::span<const Genotype> support, std::span<const double> counts) {
  std::vector<double> mass(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0);
  for (int e = 0; e < n; ++e)
    for (int f = 0; f < n; ++f) {
      if (e == f) continue;
      double acc = 0.0;
      for (std::size_t k = 0; k < support.size(); ++k)
        if (support[k].contains(f) && !support[k].contains(e)) acc += counts[k];
      mass[static_cast<std::size_t>(e * n + f)] = acc;
    }
  return mass;
}

std::vector<double> violation_mass_parallel(int n, std::span<const Genotype> support, std::span<const double> counts) {
  std::vector<double> mass(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0);
  const std::int64_t pairs = static_cast<std::int64_t>(n) * n;
#pragma omp parallel for schedule(static)
  for (std::int64_t idx = 0; idx < pairs; ++idx) {
    const int e = static_cast<int>(idx / n);
    const int f = static_cast<int>(idx % n);
    if (e == f) continue;
    // Same summation order as the serial kernel, so results match bitwise.
    double acc = 0.0;
    for (std::size_t k = 0; k < support.size(); ++k)
      if (support[k].contains(f) && !support[k].contains(e)) acc += counts[k];
    mass[static_cast<std::size_t>(idx)] = acc;
  }
  return mass;
}

}  // namespace cbn::kernels
