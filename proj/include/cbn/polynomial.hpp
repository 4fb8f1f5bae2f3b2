#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

namespace cbn {

/// Sorted (variable, exponent) pairs with positive exponents.
using Monomial = std::vector<std::pair<std::uint32_t, std::uint32_t>>;

std::uint32_t total_degree(const Monomial& m);
Monomial multiply(const Monomial& a, const Monomial& b);
/// Dense exponent vector of length `variables`.
std::vector<std::uint32_t> exponent_vector(const Monomial& m, std::size_t variables);

/// Sparse multivariate polynomial with exact rational coefficients. No zero
/// coefficient is ever stored.
class Polynomial {
 public:
  using Terms = std::map<Monomial, mpq_class>;

  Polynomial() = default;
  static Polynomial constant(const mpq_class& c);
  static Polynomial variable(std::uint32_t v);
  /// 1 - x_v
  static Polynomial one_minus(std::uint32_t v);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  std::optional<mpq_class> as_constant() const;
  mpq_class coefficient(const Monomial& m) const;

  void add_term(const Monomial& m, const mpq_class& c);

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Polynomial& other);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  Polynomial operator-() const;
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.terms_ == b.terms_; }

  /// Value at x; T is double or mpq_class.
  template <class T>
  T evaluate(std::span<const T> x) const {
    T sum = T(0);
    for (const auto& [mono, coeff] : terms_) {
      T term = convert<T>(coeff);
      for (const auto& [v, exp] : mono)
        for (std::uint32_t k = 0; k < exp; ++k) term *= x[v];
      sum += term;
    }
    return sum;
  }

  /// Terms in map order; with `first`, that term leads (unless it is
  /// the constant) and the constant trails.
  std::string to_string(const std::function<std::string(std::uint32_t)>& name, const Monomial* first = nullptr) const;

 private:
  template <class T>
  static T convert(const mpq_class& c) {
    if constexpr (std::is_same_v<T, double>)
      return c.get_d();
    else
      return T(c);
  }

  Terms terms_;
};

}  // namespace cbn
