#include "wpr/complex.hpp"

#include <algorithm>
#include <stdexcept>

#include "wpr/errors.hpp"

namespace wpr {

namespace {

ModulePresentation power(const ModulePresentation& n, int copies) {
  if (copies <= 0) return ModulePresentation::zero(n.ring());
  return direct_sum(std::vector<ModulePresentation>(static_cast<size_t>(copies), n));
}

ModulePresentation sum_or_zero(const RingPresentation& ring, const std::vector<ModulePresentation>& parts) {
  if (parts.empty()) return ModulePresentation::zero(ring);
  return direct_sum(parts);
}

void place(Matrix& m, int row, int col, const Matrix& block) {
  for (int i = 0; i < block.rows(); ++i) {
    for (int j = 0; j < block.cols(); ++j) m(row + i, col + j) = block(i, j);
  }
}

// Block (p, q) of a total complex in degree n, with its offset.
struct Block {
  int p;
  int q;
  int offset;
  int size;
};

std::vector<Block> tensor_blocks(const BoundedComplex& x, const BoundedComplex& y, int n) {
  std::vector<Block> out;
  int offset = 0;
  for (int p = x.lo(); p <= x.hi(); ++p) {
    int q = n - p;
    if (q < y.lo() || q > y.hi()) continue;
    int size = x.module(p).rank() * y.module(q).rank();
    out.push_back({p, q, offset, size});
    offset += size;
  }
  return out;
}

const Block* find_block(const std::vector<Block>& blocks, int p) {
  for (const auto& b : blocks) {
    if (b.p == p) return &b;
  }
  return nullptr;
}

// Hom^n blocks: p with p + n in Y's range; size rank(X^p) * rank(Y^(p+n)).
std::vector<Block> hom_blocks(const BoundedComplex& x, const BoundedComplex& y, int n) {
  std::vector<Block> out;
  int offset = 0;
  for (int p = x.lo(); p <= x.hi(); ++p) {
    int q = p + n;
    if (q < y.lo() || q > y.hi()) continue;
    int size = x.module(p).rank() * y.module(q).rank();
    out.push_back({p, q, offset, size});
    offset += size;
  }
  return out;
}

Matrix signed_matrix(const RingPresentation& ring, const Matrix& m, bool negate) {
  return negate ? scale(ring, m, ring.constant(-1)) : m;
}

}  // namespace

// --- BoundedComplex ----------------------------------------------------------

BoundedComplex::BoundedComplex(RingPresentation ring, int lo, std::vector<ModulePresentation> modules,
                               std::vector<ModuleMap> differentials)
    : ring_(std::move(ring)), lo_(lo), modules_(std::move(modules)), diffs_(std::move(differentials)) {
  size_t expect = modules_.empty() ? 0 : modules_.size() - 1;
  if (diffs_.size() != expect) throw std::invalid_argument("complex: wrong number of differentials");
  for (size_t k = 0; k < diffs_.size(); ++k) {
    if (diffs_[k].source().rank() != modules_[k].rank() || diffs_[k].target().rank() != modules_[k + 1].rank()) {
      throw std::invalid_argument("complex: differential shape mismatch");
    }
  }
  for (size_t k = 0; k + 1 < diffs_.size(); ++k) {
    if (!compose(diffs_[k + 1], diffs_[k]).is_zero()) {
      throw InvariantViolation("complex: d o d != 0 at degree " + std::to_string(lo_ + static_cast<int>(k)));
    }
  }
}

BoundedComplex BoundedComplex::zero(const RingPresentation& ring) { return BoundedComplex(ring, 0, {}, {}); }

BoundedComplex BoundedComplex::concentrated(const ModulePresentation& m, int degree) {
  return BoundedComplex(m.ring(), degree, {m}, {});
}

ModulePresentation BoundedComplex::module(int q) const {
  if (q < lo_ || q > hi()) return ModulePresentation::zero(*ring_);
  return modules_[static_cast<size_t>(q - lo_)];
}

ModuleMap BoundedComplex::differential(int q) const {
  if (q >= lo_ && q < hi()) return diffs_[static_cast<size_t>(q - lo_)];
  return ModuleMap::zero(module(q), module(q + 1));
}

bool BoundedComplex::is_free() const {
  return std::all_of(modules_.begin(), modules_.end(), [](const ModulePresentation& m) { return m.relations().empty(); });
}

std::vector<int> BoundedComplex::ranks() const {
  std::vector<int> out;
  for (const auto& m : modules_) out.push_back(m.rank());
  return out;
}

// --- ComplexMap --------------------------------------------------------------

ComplexMap::ComplexMap(BoundedComplex source, BoundedComplex target, int lo, std::vector<ModuleMap> maps)
    : source_(std::move(source)), target_(std::move(target)), lo_(lo), maps_(std::move(maps)) {
  for (size_t k = 0; k < maps_.size(); ++k) {
    int q = lo_ + static_cast<int>(k);
    if (maps_[k].source().rank() != source_.module(q).rank() || maps_[k].target().rank() != target_.module(q).rank()) {
      throw std::invalid_argument("complex map: shape mismatch in degree " + std::to_string(q));
    }
  }
  int a = std::min(source_.lo(), target_.lo()) - 1;
  int b = std::max(source_.hi(), target_.hi());
  for (int q = a; q <= b; ++q) {
    if (!(compose(target_.differential(q), at(q)) == compose(at(q + 1), source_.differential(q)))) {
      throw InvariantViolation("complex map does not commute with differentials in degree " + std::to_string(q));
    }
  }
}

ComplexMap ComplexMap::identity(const BoundedComplex& x) {
  std::vector<ModuleMap> maps;
  for (int q = x.lo(); q <= x.hi(); ++q) maps.push_back(ModuleMap::identity(x.module(q)));
  return ComplexMap(x, x, x.lo(), std::move(maps));
}

ComplexMap ComplexMap::zero(const BoundedComplex& x, const BoundedComplex& y) { return ComplexMap(x, y, 0, {}); }

ModuleMap ComplexMap::at(int q) const {
  if (q >= lo_ && q < lo_ + static_cast<int>(maps_.size())) return maps_[static_cast<size_t>(q - lo_)];
  return ModuleMap::zero(source_.module(q), target_.module(q));
}

ComplexMap compose(const ComplexMap& g, const ComplexMap& f) {
  int lo = f.source().lo();
  std::vector<ModuleMap> maps;
  for (int q = lo; q <= f.source().hi(); ++q) maps.push_back(compose(g.at(q), f.at(q)));
  return ComplexMap(f.source(), g.target(), lo, std::move(maps));
}

// --- tensor ------------------------------------------------------------------

BoundedComplex tensor_complex(const BoundedComplex& x, const BoundedComplex& y) {
  const RingPresentation& ring = x.ring();
  if (x.empty() || y.empty()) return BoundedComplex::zero(ring);
  int lo = x.lo() + y.lo(), hi = x.hi() + y.hi();
  std::vector<ModulePresentation> mods;
  for (int n = lo; n <= hi; ++n) {
    std::vector<ModulePresentation> parts;
    for (const auto& b : tensor_blocks(x, y, n)) parts.push_back(tensor_modules(x.module(b.p), y.module(b.q)));
    mods.push_back(sum_or_zero(ring, parts));
  }
  std::vector<ModuleMap> diffs;
  for (int n = lo; n < hi; ++n) {
    auto src = tensor_blocks(x, y, n), dst = tensor_blocks(x, y, n + 1);
    const auto& ms = mods[static_cast<size_t>(n - lo)];
    const auto& mt = mods[static_cast<size_t>(n + 1 - lo)];
    Matrix d(mt.rank(), ms.rank());
    for (const auto& b : src) {
      Matrix ix = Matrix::identity(ring, x.module(b.p).rank());
      Matrix iy = Matrix::identity(ring, y.module(b.q).rank());
      if (const Block* t = find_block(dst, b.p + 1)) {
        place(d, t->offset, b.offset, kron(ring, x.differential(b.p).matrix(), iy));
      }
      if (const Block* t = find_block(dst, b.p)) {
        bool negate = (b.p % 2) != 0;
        place(d, t->offset, b.offset, signed_matrix(ring, kron(ring, ix, y.differential(b.q).matrix()), negate));
      }
    }
    diffs.push_back(ModuleMap::trusted(ms, mt, std::move(d)));
  }
  return BoundedComplex(ring, lo, std::move(mods), std::move(diffs));
}

ComplexMap tensor_complex_maps(const ComplexMap& f, const ComplexMap& g) {
  const RingPresentation& ring = f.source().ring();
  BoundedComplex s = tensor_complex(f.source(), g.source());
  BoundedComplex t = tensor_complex(f.target(), g.target());
  std::vector<ModuleMap> maps;
  for (int n = s.lo(); n <= s.hi(); ++n) {
    auto src = tensor_blocks(f.source(), g.source(), n);
    auto dst = tensor_blocks(f.target(), g.target(), n);
    ModulePresentation ms = s.module(n), mt = t.module(n);
    Matrix m(mt.rank(), ms.rank());
    for (const auto& b : src) {
      const Block* tb = find_block(dst, b.p);
      if (!tb) continue;
      place(m, tb->offset, b.offset, kron(ring, f.at(b.p).matrix(), g.at(b.q).matrix()));
    }
    maps.push_back(ModuleMap::trusted(ms, mt, std::move(m)));
  }
  return ComplexMap(s, t, s.lo(), std::move(maps));
}

// --- Hom -----------------------------------------------------------------------

BoundedComplex hom_complex(const BoundedComplex& x, const BoundedComplex& y) {
  const RingPresentation& ring = x.ring();
  if (!x.is_free()) throw PreconditionFailed("hom_complex", "source complex must be degreewise free");
  if (x.empty() || y.empty()) return BoundedComplex::zero(ring);
  int lo = y.lo() - x.hi(), hi = y.hi() - x.lo();
  std::vector<ModulePresentation> mods;
  for (int n = lo; n <= hi; ++n) {
    std::vector<ModulePresentation> parts;
    for (const auto& b : hom_blocks(x, y, n)) parts.push_back(power(y.module(b.q), x.module(b.p).rank()));
    mods.push_back(sum_or_zero(ring, parts));
  }
  std::vector<ModuleMap> diffs;
  for (int n = lo; n < hi; ++n) {
    auto src = hom_blocks(x, y, n), dst = hom_blocks(x, y, n + 1);
    const auto& ms = mods[static_cast<size_t>(n - lo)];
    const auto& mt = mods[static_cast<size_t>(n + 1 - lo)];
    Matrix d(mt.rank(), ms.rank());
    for (const auto& out : dst) {
      int s = y.module(out.q).rank();
      if (const Block* in = find_block(src, out.p + 1)) {
        place(d, out.offset, in->offset,
              kron(ring, transpose(x.differential(out.p).matrix()), Matrix::identity(ring, s)));
      }
      if (const Block* in = find_block(src, out.p)) {
        bool negate = (n % 2) == 0;
        Matrix post = kron(ring, Matrix::identity(ring, x.module(out.p).rank()), y.differential(in->q).matrix());
        place(d, out.offset, in->offset, signed_matrix(ring, post, negate));
      }
    }
    diffs.push_back(ModuleMap::trusted(ms, mt, std::move(d)));
  }
  return BoundedComplex(ring, lo, std::move(mods), std::move(diffs));
}

ComplexMap hom_complex_precompose(const ComplexMap& f, const BoundedComplex& y) {
  const RingPresentation& ring = f.source().ring();
  BoundedComplex s = hom_complex(f.target(), y);
  BoundedComplex t = hom_complex(f.source(), y);
  std::vector<ModuleMap> maps;
  int lo = std::min(s.lo(), t.lo()), hi = std::max(s.hi(), t.hi());
  for (int n = lo; n <= hi; ++n) {
    auto src = hom_blocks(f.target(), y, n);
    auto dst = hom_blocks(f.source(), y, n);
    ModulePresentation ms = s.module(n), mt = t.module(n);
    Matrix m(mt.rank(), ms.rank());
    for (const auto& b : dst) {
      const Block* in = find_block(src, b.p);
      if (!in) continue;
      int k = y.module(b.q).rank();
      place(m, b.offset, in->offset, kron(ring, transpose(f.at(b.p).matrix()), Matrix::identity(ring, k)));
    }
    maps.push_back(ModuleMap::trusted(ms, mt, std::move(m)));
  }
  return ComplexMap(s, t, lo, std::move(maps));
}

// --- shifts and truncations --------------------------------------------------------

BoundedComplex shift(const BoundedComplex& x, int k) {
  if (x.empty()) return x;
  std::vector<ModulePresentation> mods;
  std::vector<ModuleMap> diffs;
  bool negate = (k % 2) != 0;
  for (int q = x.lo(); q <= x.hi(); ++q) {
    mods.push_back(x.module(q));
    if (q < x.hi()) {
      ModuleMap d = x.differential(q);
      diffs.push_back(negate ? scale(d, x.ring().constant(-1)) : d);
    }
  }
  return BoundedComplex(x.ring(), x.lo() - k, std::move(mods), std::move(diffs));
}

ComplexMap shift(const ComplexMap& f, int k) {
  BoundedComplex s = shift(f.source(), k), t = shift(f.target(), k);
  int lo = std::min(f.source().lo(), f.target().lo());
  int hi = std::max(f.source().hi(), f.target().hi());
  std::vector<ModuleMap> maps;
  for (int q = lo; q <= hi; ++q) maps.push_back(f.at(q));
  return ComplexMap(s, t, lo - k, std::move(maps));
}

BoundedComplex truncate_below(const BoundedComplex& x, int k) {
  if (x.empty() || k <= x.lo()) return x;
  if (k > x.hi()) return BoundedComplex::zero(x.ring());
  std::vector<ModulePresentation> mods;
  std::vector<ModuleMap> diffs;
  for (int q = k; q <= x.hi(); ++q) {
    mods.push_back(x.module(q));
    if (q < x.hi()) diffs.push_back(x.differential(q));
  }
  return BoundedComplex(x.ring(), k, std::move(mods), std::move(diffs));
}

// --- cohomology ----------------------------------------------------------------

Subquotient cohomology(const BoundedComplex& x, int q) { return homology(x.differential(q - 1), x.differential(q)); }

ModuleMap induced_map(const ComplexMap& f, int q, const Subquotient& hs, const Subquotient& ht) {
  ModuleMap fq = f.at(q);
  std::vector<Vector> cols;
  for (int j = 0; j < hs.representatives.cols(); ++j) {
    auto c = ht.express(fq.apply(hs.representatives.column(j)));
    if (!c) throw InvariantViolation("induced_map: image of a cycle is not a cycle");
    cols.push_back(std::move(*c));
  }
  return ModuleMap::trusted(hs.module, ht.module, Matrix::from_columns(ht.module.rank(), cols));
}

ModuleMap induced_map(const ComplexMap& f, int q) {
  return induced_map(f, q, cohomology(f.source(), q), cohomology(f.target(), q));
}

bool is_acyclic(const BoundedComplex& x) {
  for (int q = x.lo(); q <= x.hi(); ++q) {
    if (!cohomology(x, q).module.is_zero()) return false;
  }
  return true;
}

// --- exactness -------------------------------------------------------------------

std::string ExactnessReport::str() const {
  if (exact) return "exact";
  return "not exact at node " + std::to_string(node) + " in degree " + std::to_string(degree);
}

ExactnessReport is_exact_sequence(const std::vector<ModuleMap>& maps) {
  for (size_t k = 0; k + 1 < maps.size(); ++k) {
    const ModuleMap& f = maps[k];
    const ModuleMap& g = maps[k + 1];
    if (f.target().rank() != g.source().rank()) throw std::invalid_argument("is_exact_sequence: maps not composable");
    if (!compose(g, f).is_zero() || !homology(f, g).module.is_zero()) {
      return {false, static_cast<int>(k + 1), 0};
    }
  }
  return {};
}

ExactnessReport is_exact_sequence(const std::vector<ComplexMap>& maps) {
  if (maps.empty()) return {};
  int lo = 0, hi = -1;
  bool first = true;
  for (const auto& f : maps) {
    for (const BoundedComplex* c : {&f.source(), &f.target()}) {
      if (c->empty()) continue;
      lo = first ? c->lo() : std::min(lo, c->lo());
      hi = first ? c->hi() : std::max(hi, c->hi());
      first = false;
    }
  }
  for (int q = lo; q <= hi; ++q) {
    std::vector<ModuleMap> row;
    for (const auto& f : maps) row.push_back(f.at(q));
    ExactnessReport r = is_exact_sequence(row);
    if (!r.exact) {
      r.degree = q;
      return r;
    }
  }
  return {};
}

}  // namespace wpr
