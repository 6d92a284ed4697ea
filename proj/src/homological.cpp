#include "wpr/homological.hpp"

#include <stdexcept>

#include "wpr/errors.hpp"

namespace wpr {

std::optional<Vector> Subquotient::express(const Vector& y) const {
  auto c = cycles.coordinates(y);
  if (!c) return std::nullopt;
  return module.reduce(apply(module.ring(), to_module, *c));
}

Subquotient homology(const ModuleMap& in, const ModuleMap& out) {
  const RingPresentation& ring = out.ring();
  Subquotient h;
  h.cycles = kernel(out);
  std::vector<Vector> boundaries;
  for (int j = 0; j < in.matrix().cols(); ++j) {
    auto c = h.cycles.coordinates(in.matrix().column(j));
    if (!c) throw InvariantViolation("homology: composite of consecutive maps is not zero");
    boundaries.push_back(std::move(*c));
  }
  Quotient q = quotient_module(h.cycles.module, boundaries);
  Pruned pr = prune(q.module);
  h.module = pr.module;
  h.to_module = pr.to.matrix();
  h.representatives = multiply(ring, h.cycles.inclusion.matrix(), pr.from.matrix());
  return h;
}

ModuleMap FreeResolution::differential(int k) const {
  return ModuleMap::trusted(ModulePresentation::free(ring, ranks[static_cast<size_t>(k + 1)]),
                            ModulePresentation::free(ring, ranks[static_cast<size_t>(k)]), d[static_cast<size_t>(k)]);
}

FreeResolution free_resolution(const ModulePresentation& m, int length) {
  if (length < 0) throw std::invalid_argument("free_resolution: negative length");
  const RingPresentation& ring = m.ring();
  FreeResolution res{ring, m, {m.rank()}, {}, false};
  std::vector<Vector> next = m.relations();
  int rows = m.rank();
  while (res.length() < length) {
    if (next.empty()) {
      res.complete = true;
      break;
    }
    Matrix d = Matrix::from_columns(rows, next);
    if (!res.d.empty() && !multiply(ring, res.d.back(), d).is_zero()) {
      throw InvariantViolation("free_resolution: consecutive differentials do not compose to zero");
    }
    res.d.push_back(d);
    res.ranks.push_back(d.cols());
    rows = d.cols();
    next = LinearSystem(ring, d, {}).kernel();
  }
  if (next.empty()) res.complete = true;
  return res;
}

namespace {

ModulePresentation power(const ModulePresentation& n, int copies) {
  if (copies <= 0) return ModulePresentation::zero(n.ring());
  return direct_sum(std::vector<ModulePresentation>(static_cast<size_t>(copies), n));
}

int rank_at(const FreeResolution& f, int k) {
  if (k < 0 || k >= static_cast<int>(f.ranks.size())) return 0;
  return f.ranks[static_cast<size_t>(k)];
}

// d[k] or the zero matrix of the right shape.
Matrix diff_at(const FreeResolution& f, int k) {
  if (k >= 0 && k < f.length()) return f.d[static_cast<size_t>(k)];
  return Matrix(rank_at(f, k), rank_at(f, k + 1));
}

}  // namespace

ModulePresentation tor(const ModulePresentation& m, const ModulePresentation& n, int q) {
  if (q < 0) throw std::invalid_argument("tor: negative degree");
  const RingPresentation& ring = m.ring();
  FreeResolution f = free_resolution(m, q + 1);
  Matrix is = Matrix::identity(ring, n.rank());
  ModuleMap in = ModuleMap::trusted(power(n, rank_at(f, q + 1)), power(n, rank_at(f, q)), kron(ring, diff_at(f, q), is));
  ModuleMap out = ModuleMap::trusted(power(n, rank_at(f, q)), power(n, rank_at(f, q - 1)),
                                     kron(ring, diff_at(f, q - 1), is));
  return homology(in, out).module;
}

ModulePresentation ext(const ModulePresentation& m, const ModulePresentation& n, int q) {
  if (q < 0) throw std::invalid_argument("ext: negative degree");
  const RingPresentation& ring = m.ring();
  FreeResolution f = free_resolution(m, q + 1);
  Matrix is = Matrix::identity(ring, n.rank());
  ModuleMap in = ModuleMap::trusted(power(n, rank_at(f, q - 1)), power(n, rank_at(f, q)),
                                    kron(ring, transpose(diff_at(f, q - 1)), is));
  ModuleMap out = ModuleMap::trusted(power(n, rank_at(f, q)), power(n, rank_at(f, q + 1)),
                                     kron(ring, transpose(diff_at(f, q)), is));
  return homology(in, out).module;
}

std::vector<Matrix> lift_chain_map(const std::vector<Matrix>& source_d, const FreeResolution& target, const Matrix& phi0,
                                   int upto) {
  const RingPresentation& ring = target.ring;
  std::vector<Matrix> phi{phi0};
  for (int m = 1; m <= upto; ++m) {
    const Matrix& prev = phi.back();
    int src_rank = m - 1 < static_cast<int>(source_d.size()) ? source_d[static_cast<size_t>(m - 1)].cols() : 0;
    int dst_rank = rank_at(target, m);
    if (src_rank == 0 || dst_rank == 0) {
      Matrix z(dst_rank, src_rank);
      if (src_rank > 0 && !multiply(ring, prev, source_d[static_cast<size_t>(m - 1)]).is_zero()) {
        throw InvariantViolation("lift_chain_map: target resolution ends before the source complex");
      }
      phi.push_back(std::move(z));
      continue;
    }
    Matrix rhs = multiply(ring, prev, source_d[static_cast<size_t>(m - 1)]);
    LinearSystem sys(ring, target.d[static_cast<size_t>(m - 1)], {});
    std::vector<Vector> cols;
    for (int j = 0; j < rhs.cols(); ++j) {
      auto x = sys.solve(rhs.column(j));
      if (!x) throw InvariantViolation("lift_chain_map: no lift (target is not exact)");
      cols.push_back(std::move(*x));
    }
    phi.push_back(Matrix::from_columns(dst_rank, cols));
  }
  return phi;
}

Submodule annihilator(const ModulePresentation& m, const Poly& a, int i) {
  if (i < 0) throw std::invalid_argument("annihilator: negative exponent");
  return kernel(ModuleMap::multiplication(m, m.ring().pow(a, i)));
}

bool is_projective(const ModulePresentation& module) {
  ModulePresentation m = prune(module).module;
  const RingPresentation& ring = m.ring();
  const int r = m.rank();
  const int k = static_cast<int>(m.relations().size());
  if (r == 0 || k == 0) return true;
  const auto& rho = m.relations();
  auto s_index = [&](int a, int b) { return a * r + b; };
  auto l_index = [&](int i, int j) { return r * r + i * k + j; };
  Matrix lhs(k * r + r * r, r * r + r * k);
  Vector rhs(static_cast<size_t>(k * r + r * r));
  for (int j = 0; j < k; ++j) {
    for (int a = 0; a < r; ++a) {
      for (int b = 0; b < r; ++b) lhs(j * r + a, s_index(a, b)) = rho[static_cast<size_t>(j)][static_cast<size_t>(b)];
    }
  }
  for (int a = 0; a < r; ++a) {
    for (int i = 0; i < r; ++i) {
      int row = k * r + a * r + i;
      lhs(row, s_index(a, i)) = ring.one();
      for (int j = 0; j < k; ++j) lhs(row, l_index(i, j)) = ring.neg(rho[static_cast<size_t>(j)][static_cast<size_t>(a)]);
      if (a == i) rhs[static_cast<size_t>(row)] = ring.one();
    }
  }
  return LinearSystem(ring, lhs, {}).solve(rhs).has_value();
}

}  // namespace wpr
