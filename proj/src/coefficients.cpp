#include "wpr/coefficients.hpp"

#include "wpr/errors.hpp"

namespace wpr {

CoeffDomain CoeffDomain::prime_field(const mpz_class& p) {
  if (p < 2 || mpz_probab_prime_p(p.get_mpz_t(), 30) == 0) {
    throw TierUnsupported("GF(" + p.get_str() + "): modulus is not prime");
  }
  return CoeffDomain(CoeffKind::PrimeField, p);
}

bool CoeffDomain::contains(const Coef& c) const {
  switch (kind_) {
    case CoeffKind::Integers: return is_integral(c);
    case CoeffKind::Rationals: return true;
    case CoeffKind::PrimeField: {
      mpz_class g;
      mpz_gcd(g.get_mpz_t(), c.get_den_mpz_t(), prime_.get_mpz_t());
      return g == 1;
    }
  }
  return false;
}

Coef CoeffDomain::reduce(const Coef& c) const {
  if (kind_ != CoeffKind::PrimeField) return c;
  if (is_integral(c)) {
    mpz_class r;
    mpz_fdiv_r(r.get_mpz_t(), c.get_num_mpz_t(), prime_.get_mpz_t());
    return Coef(r);
  }
  mpz_class inv;
  if (mpz_invert(inv.get_mpz_t(), c.get_den_mpz_t(), prime_.get_mpz_t()) == 0) {
    throw UnsupportedCoefficient(c.get_str() + " is not an element of GF(" + prime_.get_str() + ")");
  }
  mpz_class r = c.get_num() * inv;
  mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), prime_.get_mpz_t());
  return Coef(r);
}

Coef CoeffDomain::inverse(const Coef& c) const {
  switch (kind_) {
    case CoeffKind::Rationals: return 1 / c;
    case CoeffKind::PrimeField: {
      mpz_class inv;
      mpz_class n = c.get_num();
      if (mpz_invert(inv.get_mpz_t(), n.get_mpz_t(), prime_.get_mpz_t()) == 0) {
        throw std::domain_error("inverse of zero in GF(p)");
      }
      return Coef(inv);
    }
    case CoeffKind::Integers:
      if (c == 1 || c == -1) return c;
      throw std::domain_error("integer " + c.get_str() + " is not a unit");
  }
  return 0;
}

bool CoeffDomain::is_unit(const Coef& c) const {
  if (is_field()) return sgn(c) != 0;
  return c == 1 || c == -1;
}

bool CoeffDomain::divides(const Coef& d, const Coef& c) const {
  if (is_field()) return sgn(d) != 0;
  if (sgn(d) == 0) return sgn(c) == 0;
  return mpz_divisible_p(c.get_num_mpz_t(), d.get_num_mpz_t()) != 0;
}

std::pair<Coef, Coef> CoeffDomain::divmod(const Coef& c, const Coef& d) const {
  if (is_field()) return {mul(c, inverse(d)), Coef(0)};
  mpz_class q, r;
  mpz_class ad = abs(d.get_num());
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), c.get_num_mpz_t(), ad.get_mpz_t());
  if (sgn(d) < 0) q = -q;
  return {Coef(q), Coef(r)};
}

Coef CoeffDomain::normalizer(const Coef& c) const {
  if (is_field()) return inverse(c);
  return sgn(c) < 0 ? Coef(-1) : Coef(1);
}

void CoeffDomain::gcdext(const Coef& a, const Coef& b, Coef& g, Coef& s, Coef& t) {
  mpz_class gg, ss, tt;
  mpz_gcdext(gg.get_mpz_t(), ss.get_mpz_t(), tt.get_mpz_t(), a.get_num_mpz_t(), b.get_num_mpz_t());
  g = gg;
  s = ss;
  t = tt;
}

std::string CoeffDomain::name() const {
  switch (kind_) {
    case CoeffKind::Integers: return "ZZ";
    case CoeffKind::Rationals: return "QQ";
    case CoeffKind::PrimeField: return "GF(" + prime_.get_str() + ")";
  }
  return "?";
}

}  // namespace wpr
