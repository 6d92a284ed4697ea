#ifndef WPR_HOMOLOGICAL_HPP
#define WPR_HOMOLOGICAL_HPP

#include <optional>
#include <vector>

#include "wpr/module.hpp"

namespace wpr {

/// ker(out) / im(in) for X --in--> Y --out--> Z.
struct Subquotient {
  ModulePresentation module;
  /// Cycles ker(out) as a submodule of Y.
  Submodule cycles;
  /// Coordinates in `cycles` -> coordinates in `module`.
  Matrix to_module;
  /// Columns are elements of Y representing the generators of `module`.
  Matrix representatives;

  /// Class of a cycle y in Y; nullopt if y is not a cycle.
  std::optional<Vector> express(const Vector& y) const;
};

Subquotient homology(const ModuleMap& in, const ModuleMap& out);

/// F_L -> ... -> F_1 -> F_0 -> M with d[k] : F_{k+1} -> F_k as a matrix.
struct FreeResolution {
  RingPresentation ring;
  ModulePresentation module;
  std::vector<int> ranks;   // rank F_0 .. F_len
  std::vector<Matrix> d;    // d[k]: F_{k+1} -> F_k
  bool complete = false;    // the last kernel computed was zero

  int length() const { return static_cast<int>(d.size()); }
  ModuleMap differential(int k) const;
};

/// Resolution of M through F_length (or shorter if a kernel vanishes).
/// Exactness is verified at every computed spot.
FreeResolution free_resolution(const ModulePresentation& m, int length);

ModulePresentation tor(const ModulePresentation& m, const ModulePresentation& n, int q);
ModulePresentation ext(const ModulePresentation& m, const ModulePresentation& n, int q);

/// Chain map from a free complex S (source_d[m] : S_(m+1) -> S_m) into a
/// resolution, extending phi0 : S_0 -> F_0. Returns phi_0 .. phi_upto.
std::vector<Matrix> lift_chain_map(const std::vector<Matrix>& source_d, const FreeResolution& target, const Matrix& phi0,
                                   int upto);

/// Ann_M(a^i) as a submodule of M; i = 0 gives the zero submodule.
Submodule annihilator(const ModulePresentation& m, const Poly& a, int i);

/// The presentation surjection A^r -> M splits.
bool is_projective(const ModulePresentation& m);

}  // namespace wpr

#endif
