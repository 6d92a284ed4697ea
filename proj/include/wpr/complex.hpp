#ifndef WPR_COMPLEX_HPP
#define WPR_COMPLEX_HPP

#include <optional>
#include <string>
#include <vector>

#include "wpr/homological.hpp"

namespace wpr {

/// Bounded cochain complex C^lo -> ... -> C^hi; zero outside [lo, hi].
class BoundedComplex {
 public:
  BoundedComplex() = default;
  /// modules[k] sits in degree lo + k; differentials[k] : C^(lo+k) -> C^(lo+k+1).
  /// Throws InvariantViolation unless d o d = 0.
  BoundedComplex(RingPresentation ring, int lo, std::vector<ModulePresentation> modules,
                 std::vector<ModuleMap> differentials);

  static BoundedComplex zero(const RingPresentation& ring);
  /// M placed in a single degree.
  static BoundedComplex concentrated(const ModulePresentation& m, int degree = 0);

  const RingPresentation& ring() const { return *ring_; }
  int lo() const noexcept { return lo_; }
  int hi() const noexcept { return lo_ + static_cast<int>(modules_.size()) - 1; }
  bool empty() const noexcept { return modules_.empty(); }

  ModulePresentation module(int q) const;
  /// d^q : C^q -> C^(q+1).
  ModuleMap differential(int q) const;
  bool is_free() const;
  std::vector<int> ranks() const;

 private:
  std::optional<RingPresentation> ring_;
  int lo_ = 0;
  std::vector<ModulePresentation> modules_;
  std::vector<ModuleMap> diffs_;
};

/// Degreewise maps commuting with the differentials.
class ComplexMap {
 public:
  ComplexMap() = default;
  /// maps[k] acts in degree lo + k; degrees without an entry are zero maps.
  /// Throws InvariantViolation unless the squares commute.
  ComplexMap(BoundedComplex source, BoundedComplex target, int lo, std::vector<ModuleMap> maps);

  static ComplexMap identity(const BoundedComplex& x);
  static ComplexMap zero(const BoundedComplex& x, const BoundedComplex& y);

  const BoundedComplex& source() const noexcept { return source_; }
  const BoundedComplex& target() const noexcept { return target_; }
  ModuleMap at(int q) const;

 private:
  BoundedComplex source_;
  BoundedComplex target_;
  int lo_ = 0;
  std::vector<ModuleMap> maps_;
};

ComplexMap compose(const ComplexMap& g, const ComplexMap& f);

/// Total complex; degree n is the sum over p ascending of X^p (x) Y^(n-p) and
/// d(x (x) y) = dx (x) y + (-1)^p x (x) dy.
BoundedComplex tensor_complex(const BoundedComplex& x, const BoundedComplex& y);
ComplexMap tensor_complex_maps(const ComplexMap& f, const ComplexMap& g);

/// Hom^n = sum over p ascending of Hom(X^p, Y^(p+n)) with
/// D(phi) = phi o d_X - (-1)^n d_Y o phi. X must be degreewise free.
BoundedComplex hom_complex(const BoundedComplex& x, const BoundedComplex& y);
/// Precomposition Hom(X, Y) -> Hom(X', Y) with f : X' -> X.
ComplexMap hom_complex_precompose(const ComplexMap& f, const BoundedComplex& y);

/// X[k]^n = X^(n+k) with differential (-1)^k d.
BoundedComplex shift(const BoundedComplex& x, int k);
ComplexMap shift(const ComplexMap& f, int k);

/// Stupid truncation keeping degrees >= k (a subcomplex).
BoundedComplex truncate_below(const BoundedComplex& x, int k);

Subquotient cohomology(const BoundedComplex& x, int q);
/// H^q(f) between precomputed cohomologies of f's source and target.
ModuleMap induced_map(const ComplexMap& f, int q, const Subquotient& hs, const Subquotient& ht);
ModuleMap induced_map(const ComplexMap& f, int q);

bool is_acyclic(const BoundedComplex& x);

struct ExactnessReport {
  bool exact = true;
  int node = -1;    // index of the interior node where exactness fails
  int degree = 0;   // degree of failure for complexes
  std::string str() const;
};

/// maps[k] : N_k -> N_(k+1); checks image = kernel at N_1 .. N_(m-1).
ExactnessReport is_exact_sequence(const std::vector<ModuleMap>& maps);
ExactnessReport is_exact_sequence(const std::vector<ComplexMap>& maps);

}  // namespace wpr

#endif
