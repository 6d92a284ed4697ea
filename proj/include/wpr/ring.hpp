#ifndef WPR_RING_HPP
#define WPR_RING_HPP

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wpr/groebner.hpp"

namespace wpr {

/// Polynomial (all terms in component 0) in a ring's engine context.
using Poly = ModVec;

enum class RingTier { Int, IntMod, PolyQuot };

enum class BaseKind { Int, IntMod, Rationals, PrimeField };

/// Declared coefficient ring of a presentation: ZZ, ZZ/N, QQ or GF(p).
struct BaseCoefficients {
  BaseKind kind = BaseKind::Int;
  mpz_class modulus = 0;  // N for IntMod, p for PrimeField

  static BaseCoefficients integers() { return {BaseKind::Int, 0}; }
  static BaseCoefficients integers_mod(const mpz_class& n);
  static BaseCoefficients rationals() { return {BaseKind::Rationals, 0}; }
  static BaseCoefficients prime_field(const mpz_class& p);
  /// Accepts "ZZ", "ZZ/N", "QQ", "GF(p)".
  static BaseCoefficients parse(const std::string& text);

  std::string str() const;
  bool operator==(const BaseCoefficients& o) const { return kind == o.kind && modulus == o.modulus; }
};

/// An effectively presented commutative ring: ZZ, ZZ/N, or
/// base[x_1..x_n]/I together with a cached strong Groebner basis of I
/// (plus N for ZZ/N coefficients). Immutable and cheap to copy.
class RingPresentation {
 public:
  static RingPresentation integers();
  static RingPresentation integers_mod(const mpz_class& n);
  static RingPresentation polynomial(const BaseCoefficients& base, std::vector<std::string> variables,
                                     MonomialOrder order = MonomialOrder::DegRevLex,
                                     const std::vector<std::string>& ideal = {});
  static RingPresentation polynomial(const BaseCoefficients& base, std::vector<std::string> variables,
                                     MonomialOrder order, std::vector<Poly> ideal);

  RingTier tier() const;
  const BaseCoefficients& base() const;
  const std::vector<std::string>& variables() const;
  MonomialOrder order() const;
  /// Declared ideal generators (in normal form of the ambient polynomial ring).
  const std::vector<Poly>& ideal() const;
  const GroebnerBasis& basis() const;
  const PolyContext& context() const;
  int nvars() const { return context().nvars; }

  /// 1 = 0 in this ring.
  bool is_zero_ring() const;
  /// Positive constant c in the ideal (ZZ-based rings), or 0.
  const mpz_class& characteristic() const;

  Poly reduce(Poly p) const;
  /// Parses a polynomial literal over this ring and returns its normal form.
  Poly parse(std::string_view text) const;
  std::string format(const Poly& p) const;

  Poly zero() const { return {}; }
  Poly one() const { return constant(1); }
  Poly constant(const Coef& c) const;
  Poly variable(int index) const;
  Poly add(const Poly& a, const Poly& b) const;
  Poly sub(const Poly& a, const Poly& b) const;
  Poly neg(const Poly& a) const;
  Poly mul(const Poly& a, const Poly& b) const;
  Poly pow(const Poly& a, int e) const;

  /// Sufficient unit test used by presentation pruning: constants that are
  /// invertible modulo the characteristic.
  bool is_obvious_unit(const Poly& p) const;
  /// Inverse of an obvious unit.
  Poly obvious_inverse(const Poly& p) const;
  /// Full unit test via ideal membership of 1.
  bool is_unit(const Poly& p) const;

  std::string description() const;
  /// Structural identity (same base, variables, order and ideal).
  bool same_as(const RingPresentation& other) const;

 private:
  struct Data;
  explicit RingPresentation(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
  static RingPresentation build(RingTier tier, const BaseCoefficients& base, std::vector<std::string> variables,
                                MonomialOrder order, std::vector<Poly> ideal);
  std::shared_ptr<const Data> d_;
};

/// Element of a ring stored by its canonical representative.
class RingElement {
 public:
  RingElement(RingPresentation ring, Poly rep) : ring_(std::move(ring)), rep_(ring_.reduce(std::move(rep))) {}

  const RingPresentation& ring() const noexcept { return ring_; }
  const Poly& rep() const noexcept { return rep_; }
  bool is_zero() const noexcept { return rep_.empty(); }
  std::string str() const { return ring_.format(rep_); }

  RingElement operator+(const RingElement& o) const { return {ring_, ring_.add(rep_, o.rep_)}; }
  RingElement operator-(const RingElement& o) const { return {ring_, ring_.sub(rep_, o.rep_)}; }
  RingElement operator*(const RingElement& o) const { return {ring_, ring_.mul(rep_, o.rep_)}; }
  RingElement pow(int e) const { return {ring_, ring_.pow(rep_, e)}; }
  bool operator==(const RingElement& o) const;

 private:
  RingPresentation ring_;
  Poly rep_;
};

/// Parses `raw` and returns its canonical representative.
RingElement normal_form(const RingPresentation& ring, std::string_view raw);

/// Result of an ideal-membership query; on success
/// sum witness[k] * generators[k] == candidate.
struct Membership {
  bool member = false;
  std::vector<Poly> witness;
};

Membership ideal_membership(const RingPresentation& ring, const std::vector<Poly>& generators, const Poly& candidate);

/// A[y]/(s*y - 1) over a fresh variable y.
RingPresentation localize(const RingPresentation& ring, const Poly& s);
/// A/(generators). Quotients of ZZ or ZZ/N by constants stay in the ZZ/N tier.
RingPresentation quotient(const RingPresentation& ring, const std::vector<Poly>& generators);

/// Ring homomorphism determined by the images of the source variables.
class RingMap {
 public:
  /// Validates that every defining relation of the source maps to zero.
  RingMap(RingPresentation source, RingPresentation target, std::vector<Poly> images);

  /// Canonical map to a localization or quotient built from `source`
  /// (variables map to the same-named variables).
  static RingMap canonical(const RingPresentation& source, const RingPresentation& target);

  const RingPresentation& source() const noexcept { return source_; }
  const RingPresentation& target() const noexcept { return target_; }
  const std::vector<Poly>& images() const noexcept { return images_; }

  Poly operator()(const Poly& p) const;

 private:
  RingPresentation source_;
  RingPresentation target_;
  std::vector<Poly> images_;
};

}  // namespace wpr

#endif
