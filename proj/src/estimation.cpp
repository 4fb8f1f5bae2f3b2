#include "cbn/estimation.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "cbn/errors.hpp"

namespace cbn {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// u · log(base) with 0 · log(anything) = 0.
double weighted_log(double weight, double base) { return weight == 0.0 ? 0.0 : weight * std::log(base); }

void check_widths(const Poset& p, std::span<const double> theta, const CountVector& u) {
  if (u.events() != p.size() || static_cast<int>(theta.size()) != p.size())
    throw DimensionMismatch("poset has " + std::to_string(p.size()) + " events, theta " +
                            std::to_string(theta.size()) + ", data " + std::to_string(u.events()));
}

/// log(2^n - lattice_size) without forming 2^n.
double log_outside(int n, std::uint64_t lattice_size) {
  const double ratio = static_cast<double>(lattice_size) / std::ldexp(1.0, n);
  return n * std::log(2.0) + std::log1p(-ratio);
}

bool lattice_is_everything(int n, std::uint64_t lattice_size) {
  return n < 64 && lattice_size == (std::uint64_t{1} << n);
}

double compatible_mass(const Poset& p, const CountVector& u) {
  double mass = 0.0;
  for (const auto& [g, c] : u.entries())
    if (p.is_order_ideal(g)) mass += c;
  return mass;
}

}  // namespace

ThetaEstimate mle_theta(const Poset& p, const CountVector& u) {
  if (u.events() != p.size())
    throw DimensionMismatch("data has " + std::to_string(u.events()) + " events, poset " + std::to_string(p.size()));
  if (!(u.total() > 0.0)) throw EmptyData("no observations");

  std::string bad;
  for (const auto& [g, c] : u.entries())
    if (!p.is_order_ideal(g)) bad += (bad.empty() ? "" : ", ") + to_bitstring(g, p.size());
  if (!bad.empty()) throw IncompatibleData("genotypes not compatible with the poset: " + bad);

  const int n = p.size();
  ThetaEstimate est;
  est.theta.assign(static_cast<std::size_t>(n), 0.0);
  for (int e = 0; e < n; ++e) {
    const Genotype below = p.below(e);
    double with_e = 0.0;
    double eligible = 0.0;
    for (const auto& [g, c] : u.entries()) {
      if (g.contains(e)) with_e += c;
      if (below.subset_of(g)) eligible += c;
    }
    if (eligible > 0.0)
      est.theta[static_cast<std::size_t>(e)] = with_e / eligible;
    else
      est.unidentified.push_back(e);
  }
  return est;
}

double log_likelihood(const Poset& p, std::span<const double> theta, const CountVector& u) {
  check_widths(p, theta, u);
  double ll = 0.0;
  for (const auto& [g, c] : u.entries()) {
    if (!p.is_order_ideal(g)) return kNegInf;
    for (int e : g.events()) ll += weighted_log(c, theta[static_cast<std::size_t>(e)]);
    for (int e : p.min_complement(g).events()) ll += weighted_log(c, 1.0 - theta[static_cast<std::size_t>(e)]);
  }
  return ll;
}

double mixture_probability(const Poset& p, std::span<const double> theta, double lambda,
                           std::uint64_t lattice_size, Genotype g) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw DomainError("lambda must lie in [0, 1]");
  if (static_cast<int>(theta.size()) != p.size()) throw DimensionMismatch("theta width differs from the poset");
  if (!g.fits_width(p.size())) throw DimensionMismatch("genotype wider than the poset");
  if (p.is_order_ideal(g)) {
    double prob = 1.0;
    for (int e : g.events()) prob *= theta[static_cast<std::size_t>(e)];
    for (int e : p.min_complement(g).events()) prob *= 1.0 - theta[static_cast<std::size_t>(e)];
    return lambda * prob;
  }
  if (lattice_is_everything(p.size(), lattice_size))
    throw DegenerateMixture("no genotypes lie outside the lattice");
  return (1.0 - lambda) * std::exp(-log_outside(p.size(), lattice_size));
}

double mle_lambda(const Poset& p, const CountVector& u) {
  if (u.events() != p.size()) throw DimensionMismatch("data width differs from the poset");
  const double total = u.total();
  if (!(total > 0.0)) throw EmptyData("no observations");
  return compatible_mass(p, u) / total;
}

double mixture_log_likelihood(const Poset& p, std::span<const double> theta, double lambda, const CountVector& u,
                              std::uint64_t lattice_size) {
  check_widths(p, theta, u);
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw DomainError("lambda must lie in [0, 1]");
  double inside = 0.0;
  double outside = 0.0;
  double ll = 0.0;
  for (const auto& [g, c] : u.entries()) {
    if (p.is_order_ideal(g)) {
      inside += c;
      for (int e : g.events()) ll += weighted_log(c, theta[static_cast<std::size_t>(e)]);
      for (int e : p.min_complement(g).events()) ll += weighted_log(c, 1.0 - theta[static_cast<std::size_t>(e)]);
    } else {
      outside += c;
    }
  }
  ll += weighted_log(inside, lambda);
  if (outside > 0.0) {
    if (lattice_is_everything(p.size(), lattice_size))
      throw DegenerateMixture("incompatible data but no genotypes lie outside the lattice");
    ll += weighted_log(outside, 1.0 - lambda) - outside * log_outside(p.size(), lattice_size);
  }
  return ll;
}

double mixture_log_likelihood(const Poset& p, std::span<const double> theta, double lambda, const CountVector& u) {
  return mixture_log_likelihood(p, theta, lambda, u, count_order_ideals(p));
}

double mle_degree_check_ratio(double a, double b, double x, double y) {
  if (!(0.0 <= a && a <= b && b <= x && x <= y && y <= 1.0))
    throw DomainError("need 0 <= a <= b <= x <= y <= 1");
  if (!(y > 0.0)) throw DomainError("y must be positive");
  if (!(x > a) && b != a) throw DomainError("x == a requires b == a");
  return std::pow(x, b) * std::pow(y - a, 1.0 - a) / (y * std::pow(x - a, b - a));
}

double nested_ratio_formula(double v1, double v2, double m, double n) {
  // Log space; each power with a zero exponent contributes nothing.
  const auto term = [](double exponent, double base) { return exponent == 0.0 ? 0.0 : exponent * std::log(base); };
  const double log_ratio = term(v1, m) + term(1.0 - v2, n - v2) - std::log(n) - term(v1 - v2, m - v2);
  return std::exp(log_ratio);
}

NestedRatio nested_likelihood_ratio(const Poset& p1, const Poset& p2, const CountVector& u) {
  if (p1.size() != p2.size()) throw NotNested("posets have different event counts");
  if (!is_refinement(p1, p2) || p2.relation_count() != p1.relation_count() + 1)
    throw NotNested("the second poset must add exactly one relation to the first");

  NestedRatio r;
  for (const auto& rel : p2.relations())
    if (!p1.less(rel.lower, rel.upper)) r.added = rel;
  const int e = r.added.lower;
  const int f = r.added.upper;

  const CountVector w = u.normalized();
  const auto theta1 = mle_theta(p1, w);
  const auto theta2 = mle_theta(p2, w);  // throws IncompatibleData for us
  r.direct = std::exp(log_likelihood(p1, theta1.theta, w) - log_likelihood(p2, theta2.theta, w));

  const Genotype below1 = p1.below(f);
  const Genotype below2 = p2.below(f);
  for (const auto& [g, c] : w.entries()) {
    if (g.contains(e)) r.v1 += c;
    if (g.contains(f)) r.v2 += c;
    if (below1.subset_of(g)) r.n += c;
    if (below2.subset_of(g)) r.m += c;
  }
  // Genotypes lacking below1(f) contribute equally to both likelihoods.
  // Conditioning on the rest gives N = 1 and V1 = M, where the formula holds.
  if (r.n > 0.0) {
    const double scaled_m = r.m / r.n;
    r.closed_form = std::pow(nested_ratio_formula(scaled_m, r.v2 / r.n, scaled_m, 1.0), r.n);
  } else {
    r.closed_form = 1.0;
  }
  return r;
}

MixtureFit fit_mixture(const Poset& p, const CountVector& u, double epsilon) {
  if (u.events() != p.size()) throw DimensionMismatch("data width differs from the poset");
  const double total = u.total();
  if (!(total > 0.0)) throw EmptyData("no observations");

  CountVector compatible(p.size());
  for (const auto& [g, c] : u.entries())
    if (p.is_order_ideal(g)) compatible.add(g, c);

  MixtureFit fit;
  fit.poset = p;
  fit.epsilon = epsilon;
  fit.n_total = total;
  fit.n_compatible = compatible.total();
  fit.lambda_hat = fit.n_compatible / total;
  fit.lattice_size = count_order_ideals(p);
  if (compatible.empty()) {
    fit.theta_hat.assign(static_cast<std::size_t>(p.size()), 0.0);
    for (int e = 0; e < p.size(); ++e) fit.unidentified_events.push_back(e);
  } else {
    auto est = mle_theta(p, compatible);
    fit.theta_hat = std::move(est.theta);
    fit.unidentified_events = std::move(est.unidentified);
  }
  fit.log_lik = mixture_log_likelihood(p, fit.theta_hat, fit.lambda_hat, u, fit.lattice_size);
  for (int e = 0; e < p.size(); ++e) fit.groups.push_back({e});
  return fit;
}

}  // namespace cbn
