#ifndef WPR_WPR_HPP
#define WPR_WPR_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "wpr/koszul.hpp"

namespace wpr {

/// The witness range used by every certifier: i = 0 .. floor(bound / 2).
inline int witness_range(int bound) { return bound / 2; }

bool is_regular(const ModulePresentation& m, const Poly& a);
bool is_regular(const RingPresentation& ring, const Poly& a);
/// The two lists generate the same ideal.
bool same_ideal(const RingPresentation& ring, const std::vector<Poly>& a, const std::vector<Poly>& b);
/// Image of p under the canonical map to a quotient or localization.
Poly carry(const RingPresentation& from, const RingPresentation& to, const Poly& p);
std::vector<Poly> carry(const RingPresentation& from, const RingPresentation& to, const std::vector<Poly>& ps);

struct TorsionBoundReport {
  ModulePresentation module;
  Poly element;
  int bound = 0;
  std::optional<int> tb;
  std::vector<ModuleSize> chain;      // |Ann(a^j)|, j = 0..bound
  std::vector<int> generators;        // generator count of the pruned Ann(a^j)
  int verified_through = -1;          // Ann(a^t) = Ann(a^j) checked for t <= j <= verified_through
  Vector strict_witness;              // in Ann(a^t) but not Ann(a^(t-1)); empty when t = 0
};

TorsionBoundReport torsion_bound(const ModulePresentation& m, const Poly& a, int bound);
TorsionBoundReport torsion_bound(const RingPresentation& ring, const Poly& a, int bound);

/// Replays a claimed torsion bound: Ann(a^t) = Ann(a^(t+1)) and, for t >= 1,
/// `witness` is the canonical element of Ann(a^t) outside Ann(a^(t-1)).
bool check_torsion_bound(const ModulePresentation& m, const Poly& a, int t, const Vector& witness);

/// Minimal witnesses j(i) for i = 0..i_max on an inverse tower.
struct ProZeroCertificate {
  int degree = 0;
  int i_max = 0;
  int bound = 0;
  bool determined = false;
  int frontier = -1;             // first i without a witness
  std::vector<int> witnesses;    // j(i)
};

ProZeroCertificate pro_zero_check(const Tower& tower, int q, int i_max, int bound);

enum class WprMethod { Direct, ElementTb, QuotientThm, Glued, Prism };
std::string to_string(WprMethod m);
WprMethod parse_method(const std::string& s);

/// A torsion-bound claim inside a certificate.
struct TorsionClaim {
  RingPresentation ring = RingPresentation::integers();
  Poly element;
  int t = 0;
  Poly witness;
  bool bound_form = false;  // t is the (k + 1) l estimate rather than the exact bound
};

struct WprCertificate;

struct ChartRecord {
  Poly s;
  std::vector<Poly> generators;   // global elements generating the ideal after inverting s
  std::shared_ptr<WprCertificate> local;
  std::optional<TorsionClaim> torsion;   // prism: tb of p in (A/I)_s
};

/// Witness table for K(A; a) with method-specific supporting data:
///   DIRECT      minimal witnesses
///   ELEMENT_TB  j(i) = i + tb, with the torsion claim
///   QUOTIENT    H^-2 at j(i) = i, H^-1 at j(i) = i + tb_(A/(a^i))(b); sub-certificate for b in A/(a)
///   GLUED       j(i) = max over charts of the local DIRECT witnesses
///   PRISM       the glued certificate for I + (p) plus per-chart quotient certificates
struct WprCertificate {
  WprMethod method = WprMethod::Direct;
  RingPresentation ring = RingPresentation::integers();
  std::vector<Poly> seq;
  int bound = 0;
  int i_max = 0;
  std::vector<ProZeroCertificate> degrees;  // q = -n .. -1
  std::vector<TorsionClaim> torsion;
  std::vector<Poly> ideal;
  std::vector<Poly> cover;
  std::vector<Poly> cover_witness;
  std::vector<ChartRecord> charts;
  std::vector<WprCertificate> provenance;
  Poly prime;
  bool declared_complete = false;
  std::string label;

  const ProZeroCertificate& degree(int q) const;
};

struct Undetermined {
  std::string stage;
  std::string detail;
  int bound = 0;
};

struct WprOutcome {
  std::optional<WprCertificate> certificate;
  std::optional<Undetermined> undetermined;
  bool certified() const { return certificate.has_value(); }
};

/// Replays every claim of a certificate. Returns the first failure, or nullopt.
std::optional<std::string> verify_certificate(const WprCertificate& c);

WprOutcome element_wpr(const RingPresentation& ring, const Poly& a, int bound);
WprOutcome wpr_sequence_check(const RingPresentation& ring, const std::vector<Poly>& seq, int bound);

struct Lemma54Report {
  Poly a;
  Poly b;
  int l = 0;
  std::vector<int> profile;     // tb_(A_k)(b), k = 0..k_max
  std::vector<bool> tight;      // equality with (k + 1) l
  bool holds = true;
};

Lemma54Report lemma54_verify(const RingPresentation& ring, const Poly& a, const Poly& b, int k_max, int bound);

WprOutcome quotient_wpr_certify(const RingPresentation& ring, const Poly& a, const Poly& b, int bound);

struct CoveringResult {
  bool covering = false;
  std::vector<Poly> witness;   // sum witness[k] s_k = 1
};

CoveringResult covering_check(const RingPresentation& ring, const std::vector<Poly>& s);

/// `ideal` empty means the ideal generated by the concatenated chart data.
WprOutcome glue_wpr(const RingPresentation& ring, const std::vector<Poly>& cover,
                    const std::vector<std::vector<Poly>>& local, const std::vector<Poly>& ideal, int bound);

struct PrismPresentation {
  RingPresentation ring = RingPresentation::integers();
  std::vector<Poly> ideal;   // I
  Poly prime;                // p
  std::vector<std::pair<Poly, Poly>> charts;   // (s_k, b_k)
  bool declared_complete = false;
};

WprOutcome prism_wpr(const PrismPresentation& prism, int bound);

}  // namespace wpr

#endif
