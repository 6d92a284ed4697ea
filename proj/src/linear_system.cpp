#include "wpr/linear_system.hpp"

#include <stdexcept>

namespace wpr {

Matrix Matrix::identity(const RingPresentation& ring, int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = ring.one();
  return m;
}

Matrix Matrix::from_columns(int rows, const std::vector<Vector>& columns) {
  Matrix m(rows, static_cast<int>(columns.size()));
  for (size_t c = 0; c < columns.size(); ++c) {
    if (static_cast<int>(columns[c].size()) != rows) throw std::invalid_argument("column length mismatch");
    for (int r = 0; r < rows; ++r) m(r, static_cast<int>(c)) = columns[c][static_cast<size_t>(r)];
  }
  return m;
}

Matrix Matrix::diagonal(const std::vector<Poly>& entries) {
  int n = static_cast<int>(entries.size());
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = entries[static_cast<size_t>(i)];
  return m;
}

Vector Matrix::column(int c) const {
  Vector v(static_cast<size_t>(rows_));
  for (int r = 0; r < rows_; ++r) v[static_cast<size_t>(r)] = (*this)(r, c);
  return v;
}

std::vector<Vector> Matrix::columns() const {
  std::vector<Vector> out;
  out.reserve(static_cast<size_t>(cols_));
  for (int c = 0; c < cols_; ++c) out.push_back(column(c));
  return out;
}

bool Matrix::is_zero() const {
  for (const auto& p : data_) {
    if (!p.empty()) return false;
  }
  return true;
}

bool equal(const Poly& a, const Poly& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].comp != b[i].comp || a[i].mono != b[i].mono || a[i].coef != b[i].coef) return false;
  }
  return true;
}

bool Matrix::operator==(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) return false;
  for (size_t i = 0; i < data_.size(); ++i) {
    if (!equal(data_[i], o.data_[i])) return false;
  }
  return true;
}

bool is_zero(const Vector& v) {
  for (const auto& p : v) {
    if (!p.empty()) return false;
  }
  return true;
}

Vector zero_vector(int n) { return Vector(static_cast<size_t>(n)); }

Vector unit_vector(const RingPresentation& ring, int n, int i) {
  Vector v(static_cast<size_t>(n));
  v[static_cast<size_t>(i)] = ring.one();
  return v;
}

Matrix multiply(const RingPresentation& ring, const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix product: dimension mismatch");
  const PolyContext& ctx = ring.context();
  Matrix c(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < b.cols(); ++j) {
      Poly acc;
      for (int k = 0; k < a.cols(); ++k) {
        if (a(i, k).empty() || b(k, j).empty()) continue;
        acc = vec::add(ctx, acc, vec::poly_mul(ctx, a(i, k), b(k, j)));
      }
      c(i, j) = ring.reduce(std::move(acc));
    }
  }
  return c;
}

Matrix add(const RingPresentation& ring, const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("matrix sum: dimension mismatch");
  Matrix c(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) c(i, j) = ring.add(a(i, j), b(i, j));
  }
  return c;
}

Matrix scale(const RingPresentation& ring, const Matrix& a, const Poly& s) {
  Matrix c(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) c(i, j) = ring.mul(a(i, j), s);
  }
  return c;
}

Vector apply(const RingPresentation& ring, const Matrix& a, const Vector& v) {
  if (a.cols() != static_cast<int>(v.size())) throw std::invalid_argument("matrix-vector: dimension mismatch");
  const PolyContext& ctx = ring.context();
  Vector out(static_cast<size_t>(a.rows()));
  for (int i = 0; i < a.rows(); ++i) {
    Poly acc;
    for (int k = 0; k < a.cols(); ++k) {
      if (a(i, k).empty() || v[static_cast<size_t>(k)].empty()) continue;
      acc = vec::add(ctx, acc, vec::poly_mul(ctx, a(i, k), v[static_cast<size_t>(k)]));
    }
    out[static_cast<size_t>(i)] = ring.reduce(std::move(acc));
  }
  return out;
}

Vector add(const RingPresentation& ring, const Vector& a, const Vector& b) {
  Vector out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = ring.add(a[i], b[i]);
  return out;
}

Vector scale(const RingPresentation& ring, const Vector& v, const Poly& c) {
  Vector out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[i] = ring.mul(v[i], c);
  return out;
}

Matrix transpose(const Matrix& a) {
  Matrix t(a.cols(), a.rows());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  }
  return t;
}

Matrix block_diagonal(const Matrix& a, const Matrix& b) {
  Matrix m(a.rows() + b.rows(), a.cols() + b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
  }
  for (int i = 0; i < b.rows(); ++i) {
    for (int j = 0; j < b.cols(); ++j) m(a.rows() + i, a.cols() + j) = b(i, j);
  }
  return m;
}

Matrix kron_identity(const RingPresentation& ring, const Matrix& a, int n) {
  (void)ring;
  Matrix m(a.rows() * n, a.cols() * n);
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) {
      if (a(i, j).empty()) continue;
      for (int k = 0; k < n; ++k) m(i * n + k, j * n + k) = a(i, j);
    }
  }
  return m;
}

Matrix identity_kron(const RingPresentation& ring, int n, const Matrix& a) {
  (void)ring;
  Matrix m(a.rows() * n, a.cols() * n);
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < a.rows(); ++i) {
      for (int j = 0; j < a.cols(); ++j) m(k * a.rows() + i, k * a.cols() + j) = a(i, j);
    }
  }
  return m;
}

Matrix map_entries(const RingMap& f, const Matrix& a) {
  Matrix m(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) m(i, j) = f(a(i, j));
  }
  return m;
}

ModVec to_modvec(const Vector& v, int offset) {
  ModVec out;
  for (size_t i = 0; i < v.size(); ++i) {
    for (const auto& t : v[i]) out.push_back(Term{static_cast<int>(i) + offset, t.mono, t.coef});
  }
  return out;
}

LinearSystem::LinearSystem(const RingPresentation& ring, const Matrix& lhs, const std::vector<Vector>& relations)
    : ring_(ring), rows_(lhs.rows()), cols_(lhs.cols()) {
  const PolyContext& ctx = ring.context();
  std::vector<ModVec> gens;
  for (int j = 0; j < cols_; ++j) {
    ModVec g = to_modvec(lhs.column(j));
    g.push_back(Term{rows_ + j, Monomial(ctx.nvars), Coef(1)});
    gens.push_back(std::move(g));
  }
  for (const auto& rel : relations) {
    if (static_cast<int>(rel.size()) != rows_) throw std::invalid_argument("relation length mismatch");
    ModVec g = to_modvec(rel);
    if (!g.empty()) gens.push_back(std::move(g));
  }
  for (const auto& h : ring.basis().elements()) {
    for (int c = 0; c < rows_ + cols_; ++c) gens.push_back(vec::with_offset(h, c));
  }
  gb_ = GroebnerBasis(ctx, std::move(gens));

  for (const auto& g : gb_.elements()) {
    if (g.front().comp < rows_) continue;
    Vector k(static_cast<size_t>(cols_));
    for (const auto& t : g) k[static_cast<size_t>(t.comp - rows_)].push_back(Term{0, t.mono, t.coef});
    for (auto& p : k) p = ring.reduce(std::move(p));
    if (is_zero(k)) continue;
    bool dup = false;
    for (const auto& e : kernel_) {
      bool same = true;
      for (size_t i = 0; i < e.size() && same; ++i) same = equal(e[i], k[i]);
      if (same) {
        dup = true;
        break;
      }
    }
    if (!dup) kernel_.push_back(std::move(k));
  }
}

std::optional<Vector> LinearSystem::solve(const Vector& rhs) const {
  if (static_cast<int>(rhs.size()) != rows_) throw std::invalid_argument("rhs length mismatch");
  ModVec r = gb_.reduce(to_modvec(rhs));
  Vector x(static_cast<size_t>(cols_));
  for (const auto& t : r) {
    if (t.comp < rows_) return std::nullopt;
    x[static_cast<size_t>(t.comp - rows_)].push_back(Term{0, t.mono, -t.coef});
  }
  for (auto& p : x) p = ring_.reduce(vec::normalize(ring_.context(), std::move(p)));
  return x;
}

bool LinearSystem::in_image(const Vector& rhs) const {
  ModVec r = gb_.reduce(to_modvec(rhs));
  return r.empty() || r.front().comp >= rows_;
}

std::optional<LinearSolution> solve_linear(const RingPresentation& ring, const Matrix& lhs, const Matrix& rhs) {
  if (lhs.rows() != rhs.rows()) throw std::invalid_argument("solve_linear: dimension mismatch");
  LinearSystem sys(ring, lhs, {});
  LinearSolution sol;
  sol.particular = Matrix(lhs.cols(), rhs.cols());
  for (int c = 0; c < rhs.cols(); ++c) {
    auto x = sys.solve(rhs.column(c));
    if (!x) return std::nullopt;
    for (int r = 0; r < lhs.cols(); ++r) sol.particular(r, c) = (*x)[static_cast<size_t>(r)];
  }
  sol.kernel = sys.kernel();
  return sol;
}

}  // namespace wpr
