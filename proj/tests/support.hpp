#ifndef WPR_TESTS_SUPPORT_HPP
#define WPR_TESTS_SUPPORT_HPP

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "wpr/linear_system.hpp"
#include "wpr/ring.hpp"

namespace wpr::testing {

inline RingPresentation ZZ() { return RingPresentation::integers(); }
inline RingPresentation ZZmod(long n) { return RingPresentation::integers_mod(n); }
inline RingPresentation poly_ring(const std::string& base, std::vector<std::string> vars,
                                  const std::vector<std::string>& ideal = {}) {
  return RingPresentation::polynomial(BaseCoefficients::parse(base), std::move(vars), MonomialOrder::DegRevLex, ideal);
}

inline Poly P(const RingPresentation& r, const std::string& s) { return r.parse(s); }

inline bool same(const RingPresentation& r, const Poly& a, const std::string& b) { return equal(a, r.parse(b)); }

inline Matrix mat(const RingPresentation& r, const std::vector<std::vector<std::string>>& rows) {
  Matrix m(static_cast<int>(rows.size()), rows.empty() ? 0 : static_cast<int>(rows[0].size()));
  for (size_t i = 0; i < rows.size(); ++i) {
    for (size_t j = 0; j < rows[i].size(); ++j) m(static_cast<int>(i), static_cast<int>(j)) = r.parse(rows[i][j]);
  }
  return m;
}

inline Vector vecof(const RingPresentation& r, const std::vector<std::string>& xs) {
  Vector v;
  for (const auto& x : xs) v.push_back(r.parse(x));
  return v;
}

/// Integer residue of a constant polynomial in a ZZ/N ring.
inline long residue(const Poly& p) {
  if (p.empty()) return 0;
  return p.front().coef.get_num().get_si();
}

}  // namespace wpr::testing

#endif
