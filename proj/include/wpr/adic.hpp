#ifndef WPR_ADIC_HPP
#define WPR_ADIC_HPP

#include <optional>
#include <string>
#include <vector>

#include "wpr/koszul.hpp"

namespace wpr {

/// Generators of a^k: all degree-k monomials in the sequence (a^0 = (1)).
std::vector<Poly> ideal_power(const RingPresentation& ring, const std::vector<Poly>& seq, int k);

/// Ann_M(a^k) for the ideal generated by seq.
Submodule ideal_annihilator(const ModulePresentation& m, const std::vector<Poly>& seq, int k);

struct GammaResult {
  bool determined = false;
  int bound = 0;
  int stabilized_at = -1;           // first k with Ann(a^k) = Ann(a^(k+1))
  Submodule value;                  // valid when determined
  std::vector<ModuleSize> chain;    // |Ann(a^k)| for k = 0..bound
};

/// The ascending union of Ann_M(a^k), if it stabilizes within the bound.
GammaResult gamma(const ModulePresentation& m, const std::vector<Poly>& seq, int bound);

/// M_k = M / a^(k+1) M for k = 0..precision with the projections M_(k+1) -> M_k.
struct AdicSystem {
  RingPresentation ring;
  std::vector<Poly> seq;
  int precision = 0;
  std::vector<ModulePresentation> modules;
  std::vector<ModuleMap> maps;  // maps[k] : M_(k+1) -> M_k
  bool killed = false;          // a^(k+1) M_k = 0 for all k
  bool bijective = false;       // A_k (x) M_(k+1) -> M_k is bijective for all k
  std::vector<ModuleSize> sizes() const;
};

AdicSystem lambda_system(const ModulePresentation& m, const std::vector<Poly>& seq, int precision);

struct FlatnessVerdict {
  bool flat = false;     // FLAT_UP_TO(q_max) when true
  int q_max = 0;
  int level = 0;         // k of A_k = A / a^(k+1)
  std::string witness;   // "Tor" or "not-projective" when not flat
  int witness_q = 0;
  ModulePresentation witness_module;
  std::string str() const;
};

/// Level-k flatness test: Tor_q(A_k, M) = 0 for
/// 1 <= q <= q_max and A_k (x) M projective over A_k.
FlatnessVerdict adic_flatness_at(const ModulePresentation& m, const std::vector<Poly>& seq, int k, int q_max);
FlatnessVerdict is_adically_flat(const ModulePresentation& m, const std::vector<Poly>& seq, int q_max);

/// H^q of the idealistic system Ext^q(A/(a^k), M) next to the sequential
/// system H^q(K^v_k (x) M), with the level-wise comparison maps induced by
/// lifting K(A; a^k) into a resolution of A/(a^k).
struct ComparisonReport {
  int degree = 0;
  int bound = 0;
  std::vector<ModuleSize> idealistic;
  std::vector<ModuleSize> sequential;
  std::vector<bool> comparison_iso;
  std::optional<int> idealistic_stable;
  std::optional<int> sequential_stable;
  bool determined = false;   // both sides stabilized
  bool isomorphic = false;   // comparison map is an isomorphism at the common stable level
  int level = -1;
  ModulePresentation value;
};

ComparisonReport compare_idealistic_sequential(const ModulePresentation& m, const std::vector<Poly>& seq, int q,
                                               int bound);

}  // namespace wpr

#endif
