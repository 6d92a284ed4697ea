#include "wpr/monomial.hpp"

#include <algorithm>

#include "wpr/errors.hpp"

namespace wpr {

MonomialOrder parse_monomial_order(const std::string& tag) {
  if (tag == "degrevlex" || tag == "grevlex") return MonomialOrder::DegRevLex;
  if (tag == "deglex" || tag == "glex") return MonomialOrder::DegLex;
  if (tag == "lex") return MonomialOrder::Lex;
  throw ParseError("unknown monomial order '" + tag + "'");
}

std::string to_string(MonomialOrder order) {
  switch (order) {
    case MonomialOrder::DegRevLex: return "degrevlex";
    case MonomialOrder::DegLex: return "deglex";
    case MonomialOrder::Lex: return "lex";
  }
  return "?";
}

Monomial::Monomial(std::vector<int> exps) : exps_(std::move(exps)) {
  for (int e : exps_) degree_ += e;
}

Monomial Monomial::variable(int nvars, int index, int power) {
  Monomial m(nvars);
  m.exps_[static_cast<size_t>(index)] = power;
  m.degree_ = power;
  return m;
}

bool Monomial::divides(const Monomial& other) const {
  if (degree_ > other.degree_) return false;
  for (size_t i = 0; i < exps_.size(); ++i) {
    if (exps_[i] > other.exps_[i]) return false;
  }
  return true;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial r = *this;
  for (size_t i = 0; i < exps_.size(); ++i) r.exps_[i] += other.exps_[i];
  r.degree_ += other.degree_;
  return r;
}

Monomial Monomial::quotient_of(const Monomial& other) const {
  Monomial r = other;
  for (size_t i = 0; i < exps_.size(); ++i) r.exps_[i] -= exps_[i];
  r.degree_ -= degree_;
  return r;
}

Monomial Monomial::lcm(const Monomial& other) const {
  std::vector<int> e(exps_.size());
  for (size_t i = 0; i < exps_.size(); ++i) e[i] = std::max(exps_[i], other.exps_[i]);
  return Monomial(std::move(e));
}

bool Monomial::coprime(const Monomial& other) const {
  for (size_t i = 0; i < exps_.size(); ++i) {
    if (exps_[i] != 0 && other.exps_[i] != 0) return false;
  }
  return true;
}

Monomial Monomial::extended(int nvars) const {
  std::vector<int> e = exps_;
  e.resize(static_cast<size_t>(nvars), 0);
  return Monomial(std::move(e));
}

int compare(MonomialOrder order, const Monomial& a, const Monomial& b) {
  const auto& x = a.exponents();
  const auto& y = b.exponents();
  switch (order) {
    case MonomialOrder::DegRevLex: {
      if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
      for (size_t i = x.size(); i-- > 0;) {
        if (x[i] != y[i]) return x[i] > y[i] ? -1 : 1;
      }
      return 0;
    }
    case MonomialOrder::DegLex:
      if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
      [[fallthrough]];
    case MonomialOrder::Lex:
      for (size_t i = 0; i < x.size(); ++i) {
        if (x[i] != y[i]) return x[i] < y[i] ? -1 : 1;
      }
      return 0;
  }
  return 0;
}

}  // namespace wpr
