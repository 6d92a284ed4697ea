#ifndef WPR_MODULE_HPP
#define WPR_MODULE_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "wpr/linear_system.hpp"

namespace wpr {

/// Size of a module: dimension over the base field, or cardinality over ZZ
/// and ZZ/N bases.
struct ModuleSize {
  bool finite = true;
  mpz_class value = 0;

  std::string str() const { return finite ? value.get_str() : "infinite"; }
  bool operator==(const ModuleSize& o) const { return finite == o.finite && (!finite || value == o.value); }
};

/// M = A^rank / (row span of relations).
class ModulePresentation {
 public:
  ModulePresentation() = default;
  ModulePresentation(const RingPresentation& ring, int rank, std::vector<Vector> relations = {});

  static ModulePresentation free(const RingPresentation& ring, int rank) { return {ring, rank}; }
  static ModulePresentation zero(const RingPresentation& ring) { return {ring, 0}; }
  /// A / (generators).
  static ModulePresentation cyclic(const RingPresentation& ring, const std::vector<Poly>& ideal);

  bool valid() const noexcept { return static_cast<bool>(d_); }
  const RingPresentation& ring() const;
  int rank() const;
  const std::vector<Vector>& relations() const;

  /// Canonical representative of the class of v.
  Vector reduce(const Vector& v) const;
  bool is_zero_element(const Vector& v) const { return wpr::is_zero(reduce(v)); }
  bool is_zero() const;
  ModuleSize size() const;
  /// Strong Groebner basis of relations + ring ideal in every component.
  const GroebnerBasis& relation_basis() const;

  std::string describe() const;

 private:
  struct Data;
  std::shared_ptr<Data> d_;
};

/// A-linear map given on generators: column j is the image of e_j.
class ModuleMap {
 public:
  ModuleMap() = default;
  /// Throws InvariantViolation unless every source relation maps into the
  /// target relation span.
  ModuleMap(ModulePresentation source, ModulePresentation target, Matrix matrix);
  /// Skips the well-definedness check (used for maps that hold by construction).
  static ModuleMap trusted(ModulePresentation source, ModulePresentation target, Matrix matrix);

  static ModuleMap identity(const ModulePresentation& m);
  static ModuleMap zero(const ModulePresentation& source, const ModulePresentation& target);
  /// mult_M(a).
  static ModuleMap multiplication(const ModulePresentation& m, const Poly& a);

  const ModulePresentation& source() const noexcept { return source_; }
  const ModulePresentation& target() const noexcept { return target_; }
  const Matrix& matrix() const noexcept { return matrix_; }
  const RingPresentation& ring() const { return source_.ring(); }

  Vector apply(const Vector& x) const { return target_.reduce(wpr::apply(ring(), matrix_, x)); }
  bool is_zero() const { return matrix_.is_zero(); }
  bool operator==(const ModuleMap& o) const { return matrix_ == o.matrix_; }

 private:
  ModuleMap(ModulePresentation s, ModulePresentation t, Matrix m, bool check);
  ModulePresentation source_;
  ModulePresentation target_;
  Matrix matrix_;
};

/// g o f.
ModuleMap compose(const ModuleMap& g, const ModuleMap& f);
ModuleMap add(const ModuleMap& f, const ModuleMap& g);
ModuleMap scale(const ModuleMap& f, const Poly& c);

/// Submodule of an ambient module with its inclusion. coordinates() writes an
/// element of the ambient module (lying in the submodule) in the
/// submodule's generators.
struct Submodule {
  ModulePresentation module;
  ModuleMap inclusion;

  std::optional<Vector> coordinates(const Vector& ambient) const;

  std::shared_ptr<const LinearSystem> system;
  Matrix to_pruned;
};

/// Submodule generated by the given elements of m.
Submodule present_submodule(const ModulePresentation& m, const std::vector<Vector>& generators);
Submodule kernel(const ModuleMap& f);

struct Image {
  Submodule sub;
  ModuleMap corestriction;  // source -> image
};
Image image(const ModuleMap& f);

struct Quotient {
  ModulePresentation module;
  ModuleMap projection;
};
Quotient cokernel(const ModuleMap& f);
/// m / (generators).
Quotient quotient_module(const ModulePresentation& m, const std::vector<Vector>& generators);

/// Presentation with redundant generators eliminated, and mutually inverse
/// isomorphisms to and from the original.
struct Pruned {
  ModulePresentation module;
  ModuleMap to;
  ModuleMap from;
};
Pruned prune(const ModulePresentation& m);

ModulePresentation direct_sum(const std::vector<ModulePresentation>& parts);
ModuleMap direct_sum(const std::vector<ModuleMap>& parts);
/// Inclusion of summand k / projection onto summand k.
ModuleMap summand_inclusion(const std::vector<ModulePresentation>& parts, size_t k);
ModuleMap summand_projection(const std::vector<ModulePresentation>& parts, size_t k);

/// General Kronecker product; entry (i*b.rows + k, j*b.cols + l) = a(i,j) b(k,l).
Matrix kron(const RingPresentation& ring, const Matrix& a, const Matrix& b);

/// Generator e_i (x) f_j has index i * rank(N) + j.
ModulePresentation tensor_modules(const ModulePresentation& m, const ModulePresentation& n);
ModuleMap tensor_maps(const ModuleMap& f, const ModuleMap& g);

/// Hom(M, N) as a submodule of N^rank(M); the ambient coordinate
/// i * rank(N) + k is the k-th coordinate of the image of e_i.
Submodule hom_modules(const ModulePresentation& m, const ModulePresentation& n);
/// The map M -> N encoded by an ambient vector of N^rank(M).
ModuleMap hom_element(const ModulePresentation& m, const ModulePresentation& n, const Vector& ambient);
/// phi |-> g o phi o f as a map Hom(M, N) -> Hom(M', N') for f: M' -> M, g: N -> N'.
ModuleMap hom_maps(const ModuleMap& f, const ModuleMap& g);

/// x with f(x) = y, if y is in the image.
std::optional<Vector> lift(const ModuleMap& f, const Vector& y);
/// g with along o g = f, if f factors through along.
std::optional<ModuleMap> factor_through(const ModuleMap& along, const ModuleMap& f);

bool is_injective(const ModuleMap& f);
bool is_surjective(const ModuleMap& f);
bool is_isomorphism(const ModuleMap& f);
/// Inverse of an isomorphism.
std::optional<ModuleMap> inverse(const ModuleMap& f);

/// The module presented by the same relations over f's target ring.
ModulePresentation base_change(const ModulePresentation& m, const RingMap& f);

enum class IsoVerdict { Isomorphic, NotIsomorphic, Unknown };
/// Decides isomorphism for cyclic modules, modules over coefficient-only
/// rings, and presentations related by identity maps; Unknown otherwise.
IsoVerdict isomorphic(const ModulePresentation& m, const ModulePresentation& n);

}  // namespace wpr

#endif
