#ifndef WPR_LINEAR_SYSTEM_HPP
#define WPR_LINEAR_SYSTEM_HPP

#include <optional>
#include <vector>

#include "wpr/ring.hpp"

namespace wpr {

/// Dense column vector over a ring.
using Vector = std::vector<Poly>;

/// Dense matrix over a ring; entries are kept in the ring's normal form by
/// the free functions below.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * static_cast<size_t>(cols)) {}

  static Matrix identity(const RingPresentation& ring, int n);
  static Matrix from_columns(int rows, const std::vector<Vector>& columns);
  /// Diagonal matrix with the given entries.
  static Matrix diagonal(const std::vector<Poly>& entries);

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }

  Poly& operator()(int r, int c) { return data_[static_cast<size_t>(r) * static_cast<size_t>(cols_) + static_cast<size_t>(c)]; }
  const Poly& operator()(int r, int c) const {
    return data_[static_cast<size_t>(r) * static_cast<size_t>(cols_) + static_cast<size_t>(c)];
  }

  Vector column(int c) const;
  std::vector<Vector> columns() const;
  bool is_zero() const;
  bool operator==(const Matrix& o) const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Poly> data_;
};

bool is_zero(const Vector& v);
bool equal(const Poly& a, const Poly& b);
Vector zero_vector(int n);
Vector unit_vector(const RingPresentation& ring, int n, int i);

Matrix multiply(const RingPresentation& ring, const Matrix& a, const Matrix& b);
Matrix add(const RingPresentation& ring, const Matrix& a, const Matrix& b);
Matrix scale(const RingPresentation& ring, const Matrix& a, const Poly& c);
Vector apply(const RingPresentation& ring, const Matrix& a, const Vector& v);
Vector add(const RingPresentation& ring, const Vector& a, const Vector& b);
Vector scale(const RingPresentation& ring, const Vector& v, const Poly& c);
Matrix transpose(const Matrix& a);
/// Block matrix diag(a, b).
Matrix block_diagonal(const Matrix& a, const Matrix& b);
/// Kronecker product a (x) I_n.
Matrix kron_identity(const RingPresentation& ring, const Matrix& a, int n);
/// Kronecker product I_n (x) a.
Matrix identity_kron(const RingPresentation& ring, int n, const Matrix& a);
/// Apply a ring homomorphism entrywise.
Matrix map_entries(const RingMap& f, const Matrix& a);

/// The system lhs * X = rhs over A, solved modulo the span of `relations`
/// (vectors in A^rows). One strong Groebner basis of
///   <(lhs_j, e_j), (rel_k, 0), I * e_c>  in  R[x]^(rows + cols)
/// in position-over-term order answers both solvability and the kernel:
/// basis elements supported in the last `cols` components generate the
/// solution module of the homogeneous system.
class LinearSystem {
 public:
  LinearSystem(const RingPresentation& ring, const Matrix& lhs, const std::vector<Vector>& relations);

  /// A particular solution, or nullopt if rhs is not in the image.
  std::optional<Vector> solve(const Vector& rhs) const;
  bool in_image(const Vector& rhs) const;
  /// Generators of { X : lhs * X in span(relations) }.
  const std::vector<Vector>& kernel() const noexcept { return kernel_; }

  const RingPresentation& ring() const noexcept { return ring_; }
  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }

 private:
  RingPresentation ring_;
  int rows_;
  int cols_;
  GroebnerBasis gb_;
  std::vector<Vector> kernel_;
};

/// Converts a dense vector to engine form with components offset..offset+n-1.
ModVec to_modvec(const Vector& v, int offset = 0);

struct LinearSolution {
  Matrix particular;
  std::vector<Vector> kernel;
};

/// Solves lhs * X = rhs column by column. nullopt means NoSolution.
std::optional<LinearSolution> solve_linear(const RingPresentation& ring, const Matrix& lhs, const Matrix& rhs);

}  // namespace wpr

#endif
