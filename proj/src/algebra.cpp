#include "cbn/algebra.hpp"

#include <cmath>
#include <string>

#include "cbn/errors.hpp"
#include "cbn/kernels.hpp"

namespace cbn {

namespace {

template <class T>
T magnitude(const T& x) {
  if constexpr (std::is_same_v<T, double>)
    return std::fabs(x);
  else
    return abs(x);
}

void check_length(const GenotypeLattice& lattice, std::size_t size) {
  if (size != lattice.size())
    throw DimensionMismatch("vector of length " + std::to_string(size) + " for a lattice of " +
                            std::to_string(lattice.size()) + " genotypes");
}

/// Σ_{x ⊇ ideal} p_x as a linear form in the lattice variables.
Polynomial superset_form(const GenotypeLattice& lattice, std::size_t index) {
  Polynomial form;
  const Genotype base = lattice[index];
  for (std::size_t i = 0; i < lattice.size(); ++i)
    if (base.subset_of(lattice[i])) form.add_term({{static_cast<std::uint32_t>(i), 1}}, 1);
  return form;
}

Polynomial binomial(std::pair<std::size_t, std::size_t> pos, std::pair<std::size_t, std::size_t> neg) {
  Polynomial out;
  const auto var = [](std::size_t i) { return static_cast<std::uint32_t>(i); };
  out += Polynomial::variable(var(pos.first)) * Polynomial::variable(var(pos.second));
  out -= Polynomial::variable(var(neg.first)) * Polynomial::variable(var(neg.second));
  return out;
}

}  // namespace

Polynomial symbolic_genotype_polynomial(const Poset& p, Genotype g) {
  const Genotype frontier = p.min_complement(g);  // throws NotIdealError
  Polynomial out = Polynomial::constant(1);
  for (int e : g.events()) out *= Polynomial::variable(static_cast<std::uint32_t>(e));
  for (int e : frontier.events()) out *= Polynomial::one_minus(static_cast<std::uint32_t>(e));
  return out;
}

Polynomial symbolic_sum_check(const Poset& p, const LatticeLimits& limits) {
  const auto lattice = enumerate_order_ideals(p, limits);
  Polynomial sum;
  for (Genotype g : lattice.ideals()) sum += symbolic_genotype_polynomial(p, g);
  return sum;
}

template <class T>
std::vector<T> moebius_transform(const GenotypeLattice& lattice, std::span<const T> p) {
  check_length(lattice, p.size());
  std::vector<T> q(p.begin(), p.end());
  kernels::superset_sum_sweep<T>(kernels::make_sweep_plan(lattice), q);
  return q;
}

template <class T>
std::vector<T> moebius_inverse(const GenotypeLattice& lattice, std::span<const T> q) {
  check_length(lattice, q.size());
  std::vector<T> p(q.begin(), q.end());
  kernels::superset_difference_sweep<T>(kernels::make_sweep_plan(lattice), p);
  return p;
}

template std::vector<double> moebius_transform(const GenotypeLattice&, std::span<const double>);
template std::vector<mpq_class> moebius_transform(const GenotypeLattice&, std::span<const mpq_class>);
template std::vector<double> moebius_inverse(const GenotypeLattice&, std::span<const double>);
template std::vector<mpq_class> moebius_inverse(const GenotypeLattice&, std::span<const mpq_class>);

std::string QuadricSpec::to_string(const GenotypeLattice& lattice) const {
  const char prefix = kind == QuadricKind::q_binomial ? 'q' : 'p';
  const auto name = [&](std::uint32_t v) { return std::string(1, prefix) + "_" + to_label(lattice[v], lattice.events()); };
  if (kind == QuadricKind::linear) {
    const Monomial none;
    return polynomial.to_string(name, &none);
  }
  // The underlined term p_g p_h leads.
  const Monomial lead{{static_cast<std::uint32_t>(positive_pair.first), 1},
                      {static_cast<std::uint32_t>(positive_pair.second), 1}};
  return polynomial.to_string(name, &lead);
}

std::vector<QuadricSpec> hibi_quadrics(const GenotypeLattice& lattice) {
  std::vector<QuadricSpec> out;
  for (const auto& [i, j] : incomparable_pairs(lattice)) {
    QuadricSpec spec;
    spec.kind = QuadricKind::q_binomial;
    spec.positive_pair = {i, j};
    spec.negative_pair = {lattice.require_index(lattice[i] | lattice[j]),
                          lattice.require_index(lattice[i] & lattice[j])};
    spec.polynomial = binomial(spec.positive_pair, spec.negative_pair);
    out.push_back(std::move(spec));
  }
  return out;
}

std::vector<QuadricSpec> p_coordinate_quadrics(const GenotypeLattice& lattice) {
  std::vector<QuadricSpec> out;
  for (auto spec : hibi_quadrics(lattice)) {
    spec.kind = QuadricKind::p_quadric;
    spec.polynomial = superset_form(lattice, spec.positive_pair.first) * superset_form(lattice, spec.positive_pair.second) -
                      superset_form(lattice, spec.negative_pair.first) * superset_form(lattice, spec.negative_pair.second);
    out.push_back(std::move(spec));
  }
  QuadricSpec linear;
  linear.kind = QuadricKind::linear;
  for (std::size_t i = 0; i < lattice.size(); ++i) linear.polynomial.add_term({{static_cast<std::uint32_t>(i), 1}}, 1);
  linear.polynomial.add_term({}, -1);
  out.push_back(std::move(linear));
  return out;
}

std::vector<std::uint32_t> leading_monomial(const Polynomial& poly, std::size_t variables) {
  if (poly.is_zero()) throw ZeroPolynomial("the zero polynomial has no leading monomial");
  std::vector<std::uint32_t> best;
  std::uint32_t best_degree = 0;
  for (const auto& [mono, coeff] : poly.terms()) {
    auto exps = exponent_vector(mono, variables);
    const std::uint32_t d = total_degree(mono);
    if (best.empty() || d < best_degree || (d == best_degree && exps > best)) {
      best = std::move(exps);
      best_degree = d;
    }
  }
  return best;
}

template <class T>
T verify_invariants(const GenotypeLattice& lattice, const InvariantSet& invariants, std::span<const T> p) {
  check_length(lattice, p.size());
  T worst = T(0);
  for (const auto& spec : invariants.p_invariants) {
    const T r = magnitude<T>(spec.polynomial.evaluate<T>(p));
    if (r > worst) worst = r;
  }
  const auto q = moebius_transform<T>(lattice, p);
  for (const auto& spec : invariants.q_binomials) {
    const T r = magnitude<T>(spec.polynomial.evaluate<T>(std::span<const T>(q)));
    if (r > worst) worst = r;
  }
  return worst;
}

template double verify_invariants(const GenotypeLattice&, const InvariantSet&, std::span<const double>);
template mpq_class verify_invariants(const GenotypeLattice&, const InvariantSet&, std::span<const mpq_class>);

std::vector<mpq_class> exact_distribution(const GenotypeLattice& lattice, std::span<const mpq_class> theta) {
  const Poset& p = lattice.poset();
  if (static_cast<int>(theta.size()) != p.size()) throw DimensionMismatch("theta width differs from the poset");
  std::vector<mpq_class> t(theta.begin(), theta.end());
  for (auto& v : t) {
    v.canonicalize();
    if (v < 0 || v > 1) throw DomainError("theta entries must lie in [0, 1]");
  }
  std::vector<mpq_class> out;
  out.reserve(lattice.size());
  for (Genotype g : lattice.ideals()) {
    mpq_class prob = 1;
    for (int e : g.events()) prob *= t[static_cast<std::size_t>(e)];
    for (int e : p.min_complement(g).events()) prob *= 1 - t[static_cast<std::size_t>(e)];
    out.push_back(prob);
  }
  return out;
}

}  // namespace cbn
