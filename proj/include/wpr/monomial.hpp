#ifndef WPR_MONOMIAL_HPP
#define WPR_MONOMIAL_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace wpr {

enum class MonomialOrder { DegRevLex, DegLex, Lex };

MonomialOrder parse_monomial_order(const std::string& tag);
std::string to_string(MonomialOrder order);

/// Exponent vector with cached total degree.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(int nvars) : exps_(static_cast<size_t>(nvars), 0) {}
  explicit Monomial(std::vector<int> exps);

  static Monomial variable(int nvars, int index, int power = 1);

  int nvars() const noexcept { return static_cast<int>(exps_.size()); }
  int degree() const noexcept { return degree_; }
  int operator[](int i) const { return exps_[static_cast<size_t>(i)]; }
  const std::vector<int>& exponents() const noexcept { return exps_; }
  bool is_one() const noexcept { return degree_ == 0; }

  /// this | other
  bool divides(const Monomial& other) const;
  Monomial operator*(const Monomial& other) const;
  /// other / this; requires divides(other).
  Monomial quotient_of(const Monomial& other) const;
  Monomial lcm(const Monomial& other) const;
  bool coprime(const Monomial& other) const;

  /// Same exponents with extra trailing variables set to zero.
  Monomial extended(int nvars) const;

  bool operator==(const Monomial& o) const { return exps_ == o.exps_; }
  bool operator!=(const Monomial& o) const { return exps_ != o.exps_; }

 private:
  std::vector<int> exps_;
  int degree_ = 0;
};

/// Three-way comparison under `order`: negative if a < b.
int compare(MonomialOrder order, const Monomial& a, const Monomial& b);

}  // namespace wpr

#endif
