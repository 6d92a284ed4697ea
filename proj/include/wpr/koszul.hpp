#ifndef WPR_KOSZUL_HPP
#define WPR_KOSZUL_HPP

#include <optional>
#include <string>
#include <vector>

#include "wpr/complex.hpp"

namespace wpr {

/// Basis of K^(-k): the k-element subsets of {0..n-1} in lexicographic order.
std::vector<std::vector<int>> koszul_basis(int n, int k);

/// K(A; a^i) in degrees -n..0 with d(e_S) = sum_pos (-1)^pos a_(S[pos])^i e_(S \ S[pos]).
BoundedComplex koszul(const RingPresentation& ring, const std::vector<Poly>& seq, int i);
/// mu_{j,i} : K(A; a^j) -> K(A; a^i), diagonal with entries prod_(k in S) a_k^(j-i).
ComplexMap koszul_transition(const RingPresentation& ring, const std::vector<Poly>& seq, int j, int i);

enum class TowerDirection { Inverse, Direct };

/// Complexes indexed 0..bound. Inverse towers have transitions[i] : X_(i+1) -> X_i,
/// direct towers transitions[i] : X_i -> X_(i+1).
struct Tower {
  TowerDirection direction = TowerDirection::Inverse;
  int bound = 0;
  std::vector<BoundedComplex> complexes;
  std::vector<ComplexMap> transitions;

  /// Composite between levels: from j down to i (inverse) or from i up to j (direct), i <= j.
  ComplexMap composite(int i, int j) const;
};

Tower koszul_tower(const RingPresentation& ring, const std::vector<Poly>& seq, int bound);
/// Levels hom_complex(K(A; a^i), A) in degrees 0..n with dualized transitions.
Tower dual_tower(const RingPresentation& ring, const std::vector<Poly>& seq, int bound);

/// Cohomology in one degree along a tower, with the induced maps.
struct CohomologySystem {
  TowerDirection direction = TowerDirection::Inverse;
  int degree = 0;
  std::vector<Subquotient> levels;
  std::vector<ModuleMap> maps;  // induced by transitions[i]

  const ModulePresentation& at(int i) const { return levels[static_cast<size_t>(i)].module; }
  /// Inverse: H(X_j) -> H(X_i); direct: H(X_i) -> H(X_j); i <= j.
  ModuleMap composite(int i, int j) const;
  int bound() const { return static_cast<int>(levels.size()) - 1; }
};

CohomologySystem cohomology_system(const Tower& tower, int q);

/// Smallest j in [i, bound] with the composite between levels i and j zero.
std::optional<int> pro_zero_witness(const CohomologySystem& sys, int i);

enum class TowerVerdict { ProZero, Stabilized, MittagLeffler, Undetermined, Growing, IndZero };
std::string to_string(TowerVerdict v);

struct DegreeReport {
  int degree = 0;
  TowerVerdict verdict = TowerVerdict::Undetermined;
  int level = -1;                    // first level of a stabilized run
  ModulePresentation value;          // stabilized value
  std::vector<ModuleSize> profile;   // size of H^q at each level
  std::vector<std::pair<int, int>> witnesses;  // (i, j(i)) for pro-zero systems
};

struct TowerReport {
  Tower tower;
  std::vector<CohomologySystem> systems;
  std::vector<DegreeReport> degrees;

  const DegreeReport& degree(int q) const;
};

/// Direct system {K^v_i (x) M}; each degree is IND-ZERO, STABILIZED or GROWING.
TowerReport torsion_tower(const ModulePresentation& m, const std::vector<Poly>& seq, int bound);
/// Inverse system {K(A; a^i) (x) M}; each degree is PRO-ZERO, STABILIZED,
/// MITTAG-LEFFLER or UNDETERMINED (in that order of precedence).
TowerReport completion_tower(const ModulePresentation& m, const std::vector<Poly>& seq, int bound);

/// Cech complex: degree k holds the localizations A_(a_S) for |S| = k + 1.
struct CechComplex {
  RingPresentation ring;
  std::vector<Poly> seq;
  std::vector<std::vector<std::vector<int>>> subsets;     // per degree
  std::vector<std::vector<RingPresentation>> terms;       // per degree
  /// Maps A_(a_S) -> A_(a_T) for S subset T, |T| = |S| + 1, with sign (-1)^pos.
  struct Arrow {
    int degree;
    int from;
    int to;
    int sign;
    RingMap map;
  };
  std::vector<Arrow> arrows;

  int length() const { return static_cast<int>(terms.size()); }
  bool is_zero() const;
};

CechComplex cech(const RingPresentation& ring, const std::vector<Poly>& seq);

/// 0 -> C_i[-1] -> K^v_i -> A -> 0 with C_i[-1] the stupid truncation of K^v_i
/// in degrees >= 1.
struct AugmentedCech {
  BoundedComplex truncated;  // C_i[-1]
  BoundedComplex dual;       // K^v_i
  BoundedComplex base;       // A in degree 0
  ComplexMap inclusion;
  ComplexMap augmentation;
  ExactnessReport exactness;
};

AugmentedCech augmented_cech_sequence(const RingPresentation& ring, const std::vector<Poly>& seq, int i);

}  // namespace wpr

#endif
