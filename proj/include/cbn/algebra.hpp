#pragma once

#include <gmpxx.h>

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cbn/poset.hpp"
#include "cbn/polynomial.hpp"

namespace cbn {

/// Expanded P_g(θ) over variables θ_e (variable index e); every coefficient
/// is +1 or -1. Throws NotIdealError.
Polynomial symbolic_genotype_polynomial(const Poset& p, Genotype g);

/// Σ_g P_g(θ) over the whole lattice; the constant 1 for a valid model.
Polynomial symbolic_sum_check(const Poset& p, const LatticeLimits& limits = default_limits());

/// q_h = Σ_{g ⊇ h} p_g over the lattice, canonical order. T is double or
/// mpq_class. Throws DimensionMismatch.
template <class T>
std::vector<T> moebius_transform(const GenotypeLattice& lattice, std::span<const T> p);

/// Inverse of moebius_transform.
template <class T>
std::vector<T> moebius_inverse(const GenotypeLattice& lattice, std::span<const T> q);

enum class QuadricKind { q_binomial, p_quadric, linear };

/// A model invariant in lattice coordinates: variable i is p_i (or q_i for
/// q-binomials), i indexing the lattice in canonical order.
struct QuadricSpec {
  QuadricKind kind = QuadricKind::linear;
  std::pair<std::size_t, std::size_t> positive_pair{};  // {g, h}
  std::pair<std::size_t, std::size_t> negative_pair{};  // {g ∪ h, g ∩ h}
  Polynomial polynomial;

  std::string to_string(const GenotypeLattice& lattice) const;
};

/// q_g q_h - q_{g∪h} q_{g∩h} for each incomparable pair, pair order.
std::vector<QuadricSpec> hibi_quadrics(const GenotypeLattice& lattice);

/// The Hibi binomials rewritten in p-coordinates, then Σ p_g - 1.
std::vector<QuadricSpec> p_coordinate_quadrics(const GenotypeLattice& lattice);

/// Largest term under the negative-degree order: least total degree, ties
/// to the lexicographically greatest exponent vector. Throws ZeroPolynomial.
std::vector<std::uint32_t> leading_monomial(const Polynomial& poly, std::size_t variables);

/// Hibi binomials and their p-coordinate forms, built once per lattice.
struct InvariantSet {
  std::vector<QuadricSpec> q_binomials;
  std::vector<QuadricSpec> p_invariants;  // quadrics, then the linear invariant

  explicit InvariantSet(const GenotypeLattice& lattice)
      : q_binomials(hibi_quadrics(lattice)), p_invariants(p_coordinate_quadrics(lattice)) {}
};

/// Largest |value| over every p-coordinate invariant at p and every Hibi
/// binomial at the Möbius transform of p.
template <class T>
T verify_invariants(const GenotypeLattice& lattice, const InvariantSet& invariants, std::span<const T> p);
template <class T>
T verify_invariants(const GenotypeLattice& lattice, std::span<const T> p) {
  return verify_invariants<T>(lattice, InvariantSet(lattice), p);
}

/// Exact model distribution at rational θ.
std::vector<mpq_class> exact_distribution(const GenotypeLattice& lattice, std::span<const mpq_class> theta);

}  // namespace cbn
