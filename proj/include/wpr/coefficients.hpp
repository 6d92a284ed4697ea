#ifndef WPR_COEFFICIENTS_HPP
#define WPR_COEFFICIENTS_HPP

#include <gmpxx.h>

#include <string>
#include <utility>

namespace wpr {

/// Exact scalar used by the polynomial engine. Integer and prime-field
/// values always carry a unit denominator.
using Coef = mpq_class;

enum class CoeffKind { Integers, Rationals, PrimeField };

/// Coefficient ring of the polynomial engine: Z (Euclidean), Q, or F_p.
class CoeffDomain {
 public:
  static CoeffDomain integers() { return CoeffDomain(CoeffKind::Integers, 0); }
  static CoeffDomain rationals() { return CoeffDomain(CoeffKind::Rationals, 0); }
  static CoeffDomain prime_field(const mpz_class& p);

  CoeffKind kind() const noexcept { return kind_; }
  const mpz_class& prime() const noexcept { return prime_; }
  bool is_field() const noexcept { return kind_ != CoeffKind::Integers; }

  /// True if c is (or maps canonically to) an element of this domain.
  bool contains(const Coef& c) const;
  /// Canonical representative; F_p values land in [0, p).
  Coef reduce(const Coef& c) const;

  Coef add(const Coef& a, const Coef& b) const { return reduce(a + b); }
  Coef sub(const Coef& a, const Coef& b) const { return reduce(a - b); }
  Coef mul(const Coef& a, const Coef& b) const { return reduce(a * b); }
  Coef neg(const Coef& a) const { return reduce(-a); }

  /// Field inverse. Over Z only +-1 are invertible.
  Coef inverse(const Coef& c) const;
  bool is_unit(const Coef& c) const;

  /// d | c in this domain (for fields: d != 0).
  bool divides(const Coef& d, const Coef& c) const;

  /// c = q*d + r with r the canonical remainder: 0 <= r < |d| over Z, r = 0
  /// over a field.
  std::pair<Coef, Coef> divmod(const Coef& c, const Coef& d) const;

  /// Unit u such that u*c is the normalised leading coefficient
  /// (positive over Z, one over a field).
  Coef normalizer(const Coef& c) const;

  /// g = s*a + t*b with g = gcd(a, b) >= 0. Integers only.
  static void gcdext(const Coef& a, const Coef& b, Coef& g, Coef& s, Coef& t);

  bool operator==(const CoeffDomain& o) const { return kind_ == o.kind_ && prime_ == o.prime_; }

  std::string name() const;

 private:
  CoeffDomain(CoeffKind k, const mpz_class& p) : kind_(k), prime_(p) {}
  CoeffKind kind_;
  mpz_class prime_;
};

inline bool is_integral(const Coef& c) { return c.get_den() == 1; }

}  // namespace wpr

#endif
