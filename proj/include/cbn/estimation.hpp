#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cbn/count_vector.hpp"
#include "cbn/poset.hpp"

namespace cbn {

struct ThetaEstimate {
  std::vector<double> theta;
  /// Events with no data where they are eligible; their estimate is 0.
  std::vector<int> unidentified;
};

/// Closed-form ML estimate: for each event, the mass of genotypes containing
/// it over the mass of genotypes containing everything strictly below it.
/// Throws IncompatibleData (naming the genotypes) or EmptyData.
ThetaEstimate mle_theta(const Poset& p, const CountVector& u);

/// ℓ_u(θ) with 0·log 0 = 0; -inf when an observed genotype has probability 0.
double log_likelihood(const Poset& p, std::span<const double> theta, const CountVector& u);

/// λ P_g(θ) inside the lattice, (1 - λ) / (2^n - |G|) outside it.
/// Throws DegenerateMixture when g is outside and the lattice is everything.
double mixture_probability(const Poset& p, std::span<const double> theta, double lambda,
                           std::uint64_t lattice_size, Genotype g);

/// Fraction of the data compatible with p. Throws EmptyData.
double mle_lambda(const Poset& p, const CountVector& u);

/// Log-likelihood of the CBN/uniform mixture.
double mixture_log_likelihood(const Poset& p, std::span<const double> theta, double lambda, const CountVector& u,
                              std::uint64_t lattice_size);
double mixture_log_likelihood(const Poset& p, std::span<const double> theta, double lambda, const CountVector& u);

/// x^b (y - a)^(1-a) / (y (x - a)^(b-a)); requires 0 <= a <= b <= x <= y <= 1,
/// y > 0 and x > a unless a == b. Throws DomainError otherwise.
double mle_degree_check_ratio(double a, double b, double x, double y);

/// M^V1 (N - V2)^(1-V2) / (N (M - V2)^(V1-V2)), with 0^0 = 1. Valid as a
/// likelihood ratio when every genotype has the upper event's other
/// predecessors (N = 1, M = V1).
double nested_ratio_formula(double v1, double v2, double m, double n);

struct NestedRatio {
  Relation added;     // the single relation p2 has beyond p1
  double v1 = 0.0;    // mass containing added.lower
  double v2 = 0.0;    // mass containing added.upper
  double n = 0.0;     // mass where added.upper may occur under p1
  double m = 0.0;     // mass where added.upper may occur under p2
  double direct = 0.0;       // L(θ̂; p1) / L(η̂; p2)
  double closed_form = 0.0;  // nested_ratio_formula on the eligible mass, raised to n
};

/// Both routes to the likelihood ratio of two posets differing by one
/// relation. u is normalized internally. Throws NotNested, IncompatibleData.
NestedRatio nested_likelihood_ratio(const Poset& p1, const Poset& p2, const CountVector& u);

/// Mixture model fitted on a fixed poset.
struct MixtureFit {
  Poset poset;
  std::vector<double> theta_hat;
  double lambda_hat = 0.0;
  double epsilon = 0.0;
  std::uint64_t lattice_size = 0;
  double log_lik = 0.0;
  double n_compatible = 0.0;
  double n_total = 0.0;
  std::vector<int> unidentified_events;
  /// Original events behind each fitted event (singletons when unmerged).
  std::vector<std::vector<int>> groups;
};

/// θ̂ from the compatible data only, λ̂ from all of it. Throws EmptyData.
MixtureFit fit_mixture(const Poset& p, const CountVector& u, double epsilon = 0.0);

}  // namespace cbn
