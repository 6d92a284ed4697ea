#ifndef WPR_GROEBNER_HPP
#define WPR_GROEBNER_HPP

#include <vector>

#include "wpr/coefficients.hpp"
#include "wpr/monomial.hpp"

namespace wpr {

/// Ambient polynomial ring R[x_1..x_n] the engine computes in.
struct PolyContext {
  CoeffDomain coeffs = CoeffDomain::integers();
  int nvars = 0;
  MonomialOrder order = MonomialOrder::DegRevLex;
};

/// Term c * x^mono * e_comp of a free module R[x]^r.
struct Term {
  int comp = 0;
  Monomial mono;
  Coef coef;

  bool operator==(const Term& o) const { return comp == o.comp && mono == o.mono && coef == o.coef; }
};

/// Element of R[x]^r as a list of terms sorted strictly descending in the
/// position-over-term order (component 0 is the largest), with no zero
/// coefficients. Polynomials are the r = 1 case.
using ModVec = std::vector<Term>;

/// Three-way comparison of (comp, mono) positions.
int compare_position(const PolyContext& ctx, int comp_a, const Monomial& a, int comp_b, const Monomial& b);

namespace vec {

/// Sorts terms and combines equal positions, dropping zeros.
ModVec normalize(const PolyContext& ctx, std::vector<Term> terms);
ModVec add(const PolyContext& ctx, const ModVec& a, const ModVec& b);
ModVec sub(const PolyContext& ctx, const ModVec& a, const ModVec& b);
ModVec scale(const PolyContext& ctx, const ModVec& a, const Coef& c);
/// a + c * mono * b
ModVec axpy(const PolyContext& ctx, const ModVec& a, const Coef& c, const Monomial& mono, const ModVec& b);
/// c * mono * b
ModVec shift(const PolyContext& ctx, const ModVec& b, const Coef& c, const Monomial& mono);
/// Polynomial (component 0) times module element.
ModVec poly_mul(const PolyContext& ctx, const ModVec& poly, const ModVec& b);
/// Moves every term to component comp + offset.
ModVec with_offset(const ModVec& a, int offset);
ModVec constant(const PolyContext& ctx, const Coef& c, int comp = 0);

}  // namespace vec

/// Reduced strong Groebner basis of a submodule of R[x]^r over R = Z, Q or
/// F_p in the position-over-term order.
///
/// Over Z this is the Kandri-Rody--Kapur / Lichtblau strong basis built from
/// S- and G-polynomials; canonical normal forms use remainders in [0, d) where
/// d is the smallest leading coefficient applicable at a position. With no
/// variables the construction degenerates to Hermite echelon form.
class GroebnerBasis {
 public:
  GroebnerBasis() = default;
  GroebnerBasis(const PolyContext& ctx, std::vector<ModVec> generators);

  const PolyContext& context() const noexcept { return ctx_; }
  const std::vector<ModVec>& elements() const noexcept { return elems_; }
  bool empty() const noexcept { return elems_.empty(); }

  /// Canonical normal form: equal residues give identical output.
  ModVec reduce(ModVec f) const;
  bool contains(const ModVec& f) const { return reduce(f).empty(); }

  /// Index of the applicable basis element with the smallest leading
  /// coefficient at (comp, mono), or -1.
  int best_reducer(int comp, const Monomial& mono) const;

 private:
  PolyContext ctx_;
  std::vector<ModVec> elems_;
};

}  // namespace wpr

#endif
