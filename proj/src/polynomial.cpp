#include "cbn/polynomial.hpp"

namespace cbn {

std::uint32_t total_degree(const Monomial& m) {
  std::uint32_t d = 0;
  for (const auto& [v, exp] : m) d += exp;
  return d;
}

Monomial multiply(const Monomial& a, const Monomial& b) {
  Monomial out;
  out.reserve(a.size() + b.size());
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() || j != b.end()) {
    if (j == b.end() || (i != a.end() && i->first < j->first)) {
      out.push_back(*i++);
    } else if (i == a.end() || j->first < i->first) {
      out.push_back(*j++);
    } else {
      out.emplace_back(i->first, i->second + j->second);
      ++i;
      ++j;
    }
  }
  return out;
}

std::vector<std::uint32_t> exponent_vector(const Monomial& m, std::size_t variables) {
  std::vector<std::uint32_t> out(variables, 0);
  for (const auto& [v, exp] : m) out.at(v) = exp;
  return out;
}

Polynomial Polynomial::constant(const mpq_class& c) {
  Polynomial p;
  p.add_term({}, c);
  return p;
}

Polynomial Polynomial::variable(std::uint32_t v) {
  Polynomial p;
  p.add_term({{v, 1}}, 1);
  return p;
}

Polynomial Polynomial::one_minus(std::uint32_t v) {
  Polynomial p;
  p.add_term({}, 1);
  p.add_term({{v, 1}}, -1);
  return p;
}

std::optional<mpq_class> Polynomial::as_constant() const {
  if (terms_.empty()) return mpq_class(0);
  if (terms_.size() == 1 && terms_.begin()->first.empty()) return terms_.begin()->second;
  return std::nullopt;
}

mpq_class Polynomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? mpq_class(0) : it->second;
}

void Polynomial::add_term(const Monomial& m, const mpq_class& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (inserted) return;
  it->second += c;
  if (it->second == 0) terms_.erase(it);
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial out;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) out.add_term(multiply(ma, mb), ca * cb);
  return out;
}

Polynomial& Polynomial::operator*=(const Polynomial& other) { return *this = *this * other; }

Polynomial Polynomial::operator-() const {
  Polynomial out;
  for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
  return out;
}

std::string Polynomial::to_string(const std::function<std::string(std::uint32_t)>& name,
                                  const Monomial* first) const {
  if (terms_.empty()) return "0";
  // `first` leads, the constant trails, everything else keeps map order.
  std::vector<const Terms::value_type*> order;
  const Terms::value_type* constant = nullptr;
  if (first && !first->empty()) {
    const auto it = terms_.find(*first);
    if (it != terms_.end()) order.push_back(&*it);
  }
  for (const auto& term : terms_) {
    if (first && !first->empty() && term.first == *first) continue;
    if (first && term.first.empty())
      constant = &term;
    else
      order.push_back(&term);
  }
  if (constant) order.push_back(constant);

  std::string out;
  for (const auto* term : order) {
    const auto& [mono, coeff] = *term;
    const bool negative = coeff < 0;
    const mpq_class magnitude = abs(coeff);
    if (out.empty())
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    std::string factors;
    for (const auto& [v, exp] : mono) {
      for (std::uint32_t k = 0; k < exp; ++k) {
        if (!factors.empty()) factors += '*';
        factors += name(v);
      }
    }
    if (factors.empty())
      out += magnitude.get_str();
    else if (magnitude == 1)
      out += factors;
    else
      out += magnitude.get_str() + "*" + factors;
  }
  return out;
}

}  // namespace cbn
