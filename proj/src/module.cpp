#include "wpr/module.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>
#include <stdexcept>

#include "wpr/errors.hpp"

namespace wpr {

namespace {

Vector from_modvec(const RingPresentation& ring, const ModVec& v, int n) {
  Vector out(static_cast<size_t>(n));
  for (const auto& t : v) out[static_cast<size_t>(t.comp)].push_back(Term{0, t.mono, t.coef});
  for (auto& p : out) p = ring.reduce(std::move(p));
  return out;
}

bool same_vector(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i) {
    if (!equal(a[i], b[i])) return false;
  }
  return true;
}

bool maps_relations_to_zero(const ModulePresentation& source, const ModulePresentation& target, const Matrix& m) {
  for (const auto& rel : source.relations()) {
    if (!target.is_zero_element(apply(source.ring(), m, rel))) return false;
  }
  return true;
}

}  // namespace

// --- ModulePresentation ----------------------------------------------------

struct ModulePresentation::Data {
  Data(RingPresentation r, int n) : ring(std::move(r)), rank(n) {}
  RingPresentation ring;
  int rank;
  std::vector<Vector> relations;
  std::once_flag once;
  GroebnerBasis gb;
};

ModulePresentation::ModulePresentation(const RingPresentation& ring, int rank, std::vector<Vector> relations)
    : d_(std::make_shared<Data>(ring, rank)) {
  if (rank < 0) throw std::invalid_argument("negative module rank");
  for (auto& rel : relations) {
    if (static_cast<int>(rel.size()) != rank) throw std::invalid_argument("relation length does not match rank");
    for (auto& p : rel) p = ring.reduce(std::move(p));
    if (wpr::is_zero(rel)) continue;
    bool dup = false;
    for (const auto& have : d_->relations) {
      if (same_vector(have, rel)) {
        dup = true;
        break;
      }
    }
    if (!dup) d_->relations.push_back(std::move(rel));
  }
}

ModulePresentation ModulePresentation::cyclic(const RingPresentation& ring, const std::vector<Poly>& ideal) {
  std::vector<Vector> rels;
  for (const auto& g : ideal) rels.push_back(Vector{g});
  return {ring, 1, std::move(rels)};
}

const RingPresentation& ModulePresentation::ring() const { return d_->ring; }
int ModulePresentation::rank() const { return d_->rank; }
const std::vector<Vector>& ModulePresentation::relations() const { return d_->relations; }

const GroebnerBasis& ModulePresentation::relation_basis() const {
  std::call_once(d_->once, [this] {
    const PolyContext& ctx = d_->ring.context();
    std::vector<ModVec> gens;
    for (const auto& rel : d_->relations) gens.push_back(to_modvec(rel));
    for (const auto& h : d_->ring.basis().elements()) {
      for (int c = 0; c < d_->rank; ++c) gens.push_back(vec::with_offset(h, c));
    }
    d_->gb = GroebnerBasis(ctx, std::move(gens));
  });
  return d_->gb;
}

Vector ModulePresentation::reduce(const Vector& v) const {
  if (static_cast<int>(v.size()) != d_->rank) throw std::invalid_argument("element length does not match rank");
  if (d_->relations.empty()) {
    Vector out(v.size());
    for (size_t i = 0; i < v.size(); ++i) out[i] = d_->ring.reduce(v[i]);
    return out;
  }
  return from_modvec(d_->ring, relation_basis().reduce(to_modvec(v)), d_->rank);
}

bool ModulePresentation::is_zero() const {
  if (d_->rank == 0) return true;
  for (int c = 0; c < d_->rank; ++c) {
    if (!is_zero_element(unit_vector(d_->ring, d_->rank, c))) return false;
  }
  return true;
}

ModuleSize ModulePresentation::size() const {
  const GroebnerBasis& gb = relation_basis();
  const PolyContext& ctx = d_->ring.context();
  const bool field = ctx.coeffs.is_field();
  const int nv = ctx.nvars;
  ModuleSize out{true, field ? mpz_class(0) : mpz_class(1)};
  for (int c = 0; c < d_->rank; ++c) {
    std::vector<const ModVec*> here;
    std::vector<Monomial> unit_lts;
    for (const auto& g : gb.elements()) {
      if (g.front().comp != c) continue;
      here.push_back(&g);
      if (ctx.coeffs.is_unit(g.front().coef)) unit_lts.push_back(g.front().mono);
    }
    for (int v = 0; v < nv; ++v) {
      bool bounded = false;
      for (const auto& m : unit_lts) {
        if (m.degree() == m[v]) bounded = true;
      }
      if (!bounded) return {false, 0};
    }
    auto standard = [&](const Monomial& m) {
      for (const auto& u : unit_lts) {
        if (u.divides(m)) return false;
      }
      return true;
    };
    std::set<std::vector<int>> seen;
    std::vector<Monomial> frontier;
    Monomial one(nv);
    if (standard(one)) {
      frontier.push_back(one);
      seen.insert(one.exponents());
    }
    while (!frontier.empty()) {
      Monomial m = frontier.back();
      frontier.pop_back();
      if (field) {
        out.value += 1;
      } else {
        mpz_class d = 0;
        for (const ModVec* g : here) {
          if (!g->front().mono.divides(m)) continue;
          mpz_class lc = abs(g->front().coef.get_num());
          mpz_gcd(d.get_mpz_t(), d.get_mpz_t(), lc.get_mpz_t());
        }
        if (d == 0) return {false, 0};
        out.value *= d;
      }
      for (int v = 0; v < nv; ++v) {
        Monomial next = m * Monomial::variable(nv, v);
        if (standard(next) && seen.insert(next.exponents()).second) frontier.push_back(next);
      }
    }
  }
  return out;
}

std::string ModulePresentation::describe() const {
  return "rank " + std::to_string(d_->rank) + " over " + d_->ring.description() + " with " +
         std::to_string(d_->relations.size()) + " relation" + (d_->relations.size() == 1 ? "" : "s");
}

// --- ModuleMap ---------------------------------------------------------------

ModuleMap::ModuleMap(ModulePresentation s, ModulePresentation t, Matrix m, bool check)
    : source_(std::move(s)), target_(std::move(t)), matrix_(std::move(m)) {
  if (matrix_.rows() != target_.rank() || matrix_.cols() != source_.rank()) {
    throw std::invalid_argument("module map matrix has wrong shape");
  }
  for (int j = 0; j < matrix_.cols(); ++j) {
    Vector col = target_.reduce(matrix_.column(j));
    for (int i = 0; i < matrix_.rows(); ++i) matrix_(i, j) = std::move(col[static_cast<size_t>(i)]);
  }
  if (check && !maps_relations_to_zero(source_, target_, matrix_)) {
    throw InvariantViolation("module map does not respect the source relations");
  }
}

ModuleMap::ModuleMap(ModulePresentation source, ModulePresentation target, Matrix matrix)
    : ModuleMap(std::move(source), std::move(target), std::move(matrix), true) {}

ModuleMap ModuleMap::trusted(ModulePresentation source, ModulePresentation target, Matrix matrix) {
  return ModuleMap(std::move(source), std::move(target), std::move(matrix), false);
}

ModuleMap ModuleMap::identity(const ModulePresentation& m) {
  return trusted(m, m, Matrix::identity(m.ring(), m.rank()));
}

ModuleMap ModuleMap::zero(const ModulePresentation& source, const ModulePresentation& target) {
  return trusted(source, target, Matrix(target.rank(), source.rank()));
}

ModuleMap ModuleMap::multiplication(const ModulePresentation& m, const Poly& a) {
  Poly r = m.ring().reduce(a);
  return trusted(m, m, Matrix::diagonal(std::vector<Poly>(static_cast<size_t>(m.rank()), r)));
}

ModuleMap compose(const ModuleMap& g, const ModuleMap& f) {
  if (g.source().rank() != f.target().rank()) throw std::invalid_argument("compose: rank mismatch");
  return ModuleMap::trusted(f.source(), g.target(), multiply(f.ring(), g.matrix(), f.matrix()));
}

ModuleMap add(const ModuleMap& f, const ModuleMap& g) {
  return ModuleMap::trusted(f.source(), f.target(), add(f.ring(), f.matrix(), g.matrix()));
}

ModuleMap scale(const ModuleMap& f, const Poly& c) {
  return ModuleMap::trusted(f.source(), f.target(), scale(f.ring(), f.matrix(), c));
}

// --- submodules, kernels, images ---------------------------------------------

std::optional<Vector> Submodule::coordinates(const Vector& ambient) const {
  auto x = system->solve(ambient);
  if (!x) return std::nullopt;
  return module.reduce(apply(module.ring(), to_pruned, *x));
}

Submodule present_submodule(const ModulePresentation& m, const std::vector<Vector>& generators) {
  const RingPresentation& ring = m.ring();
  std::vector<Vector> gens;
  for (const auto& g : generators) {
    Vector r = m.reduce(g);
    if (wpr::is_zero(r)) continue;
    bool dup = false;
    for (const auto& h : gens) {
      if (same_vector(h, r)) {
        dup = true;
        break;
      }
    }
    if (!dup) gens.push_back(std::move(r));
  }
  Matrix g = Matrix::from_columns(m.rank(), gens);
  auto sys = std::make_shared<const LinearSystem>(ring, g, m.relations());
  ModulePresentation raw(ring, static_cast<int>(gens.size()), sys->kernel());
  Pruned pr = prune(raw);
  Submodule out;
  out.module = pr.module;
  out.inclusion = ModuleMap::trusted(pr.module, m, multiply(ring, g, pr.from.matrix()));
  out.system = std::move(sys);
  out.to_pruned = pr.to.matrix();
  return out;
}

Submodule kernel(const ModuleMap& f) {
  LinearSystem sys(f.ring(), f.matrix(), f.target().relations());
  return present_submodule(f.source(), sys.kernel());
}

Image image(const ModuleMap& f) {
  Image out{present_submodule(f.target(), f.matrix().columns()), {}};
  std::vector<Vector> cols;
  for (int j = 0; j < f.matrix().cols(); ++j) cols.push_back(*out.sub.coordinates(f.matrix().column(j)));
  out.corestriction =
      ModuleMap::trusted(f.source(), out.sub.module, Matrix::from_columns(out.sub.module.rank(), cols));
  return out;
}

Quotient quotient_module(const ModulePresentation& m, const std::vector<Vector>& generators) {
  std::vector<Vector> rels = m.relations();
  rels.insert(rels.end(), generators.begin(), generators.end());
  ModulePresentation q(m.ring(), m.rank(), std::move(rels));
  return {q, ModuleMap::trusted(m, q, Matrix::identity(m.ring(), m.rank()))};
}

Quotient cokernel(const ModuleMap& f) { return quotient_module(f.target(), f.matrix().columns()); }

// --- pruning ---------------------------------------------------------------

namespace {

int nonzeros(const Vector& v) {
  int n = 0;
  for (const auto& p : v) n += p.empty() ? 0 : 1;
  return n;
}

}  // namespace

Pruned prune(const ModulePresentation& m) {
  const RingPresentation& ring = m.ring();
  const int n = m.rank();
  std::vector<Vector> rels = m.relations();
  std::vector<Vector> exprs;
  for (int o = 0; o < n; ++o) exprs.push_back(unit_vector(ring, n, o));
  std::vector<bool> alive(static_cast<size_t>(n), true);

  auto eliminate = [&](Vector rho, int c) {
    rho = scale(ring, rho, ring.obvious_inverse(rho[static_cast<size_t>(c)]));
    auto clear = [&](Vector& w) {
      if (w[static_cast<size_t>(c)].empty()) return;
      w = add(ring, w, scale(ring, rho, ring.neg(w[static_cast<size_t>(c)])));
    };
    for (auto& w : rels) clear(w);
    for (auto& v : exprs) clear(v);
    alive[static_cast<size_t>(c)] = false;
    std::erase_if(rels, [](const Vector& w) { return wpr::is_zero(w); });
  };

  auto find_pivot = [&](const std::vector<Vector>& rows) -> std::optional<std::pair<size_t, int>> {
    std::optional<std::pair<size_t, int>> best;
    int best_nz = 0;
    for (size_t k = 0; k < rows.size(); ++k) {
      int nz = nonzeros(rows[k]);
      if (best && nz >= best_nz) continue;
      for (int c = 0; c < n; ++c) {
        if (alive[static_cast<size_t>(c)] && ring.is_obvious_unit(rows[k][static_cast<size_t>(c)])) {
          best = {k, c};
          best_nz = nz;
          break;
        }
      }
    }
    return best;
  };

  for (;;) {
    if (auto p = find_pivot(rels)) {
      eliminate(rels[p->first], p->second);
      continue;
    }
    if (rels.empty()) break;
    ModulePresentation current(ring, n, rels);
    std::vector<Vector> gb_rows;
    for (const auto& g : current.relation_basis().elements()) gb_rows.push_back(from_modvec(ring, g, n));
    auto p = find_pivot(gb_rows);
    if (!p) break;
    eliminate(gb_rows[p->first], p->second);
  }

  std::vector<int> kept;
  for (int c = 0; c < n; ++c) {
    if (alive[static_cast<size_t>(c)]) kept.push_back(c);
  }
  const int k = static_cast<int>(kept.size());
  auto compress = [&](const Vector& v) {
    Vector out(static_cast<size_t>(k));
    for (int j = 0; j < k; ++j) out[static_cast<size_t>(j)] = v[static_cast<size_t>(kept[static_cast<size_t>(j)])];
    return out;
  };
  std::vector<Vector> new_rels;
  for (const auto& w : rels) new_rels.push_back(compress(w));
  ModulePresentation pm(ring, k, std::move(new_rels));
  Matrix to(k, n), from(n, k);
  for (int o = 0; o < n; ++o) {
    Vector v = compress(exprs[static_cast<size_t>(o)]);
    for (int j = 0; j < k; ++j) to(j, o) = v[static_cast<size_t>(j)];
  }
  for (int j = 0; j < k; ++j) from(kept[static_cast<size_t>(j)], j) = ring.one();
  return {pm, ModuleMap::trusted(m, pm, std::move(to)), ModuleMap::trusted(pm, m, std::move(from))};
}

// --- sums and tensor products ---------------------------------------------------

ModulePresentation direct_sum(const std::vector<ModulePresentation>& parts) {
  if (parts.empty()) throw std::invalid_argument("direct_sum of nothing");
  int total = 0;
  for (const auto& p : parts) total += p.rank();
  std::vector<Vector> rels;
  int offset = 0;
  for (const auto& p : parts) {
    for (const auto& r : p.relations()) {
      Vector v(static_cast<size_t>(total));
      std::copy(r.begin(), r.end(), v.begin() + offset);
      rels.push_back(std::move(v));
    }
    offset += p.rank();
  }
  return {parts.front().ring(), total, std::move(rels)};
}

ModuleMap direct_sum(const std::vector<ModuleMap>& parts) {
  std::vector<ModulePresentation> sources, targets;
  Matrix m;
  for (size_t k = 0; k < parts.size(); ++k) {
    sources.push_back(parts[k].source());
    targets.push_back(parts[k].target());
    m = k == 0 ? parts[k].matrix() : block_diagonal(m, parts[k].matrix());
  }
  return ModuleMap::trusted(direct_sum(sources), direct_sum(targets), std::move(m));
}

ModuleMap summand_inclusion(const std::vector<ModulePresentation>& parts, size_t k) {
  ModulePresentation sum = direct_sum(parts);
  int offset = 0;
  for (size_t i = 0; i < k; ++i) offset += parts[i].rank();
  Matrix m(sum.rank(), parts[k].rank());
  for (int j = 0; j < parts[k].rank(); ++j) m(offset + j, j) = sum.ring().one();
  return ModuleMap::trusted(parts[k], sum, std::move(m));
}

ModuleMap summand_projection(const std::vector<ModulePresentation>& parts, size_t k) {
  ModulePresentation sum = direct_sum(parts);
  int offset = 0;
  for (size_t i = 0; i < k; ++i) offset += parts[i].rank();
  Matrix m(parts[k].rank(), sum.rank());
  for (int j = 0; j < parts[k].rank(); ++j) m(j, offset + j) = sum.ring().one();
  return ModuleMap::trusted(sum, parts[k], std::move(m));
}

Matrix kron(const RingPresentation& ring, const Matrix& a, const Matrix& b) {
  Matrix m(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) {
      if (a(i, j).empty()) continue;
      for (int k = 0; k < b.rows(); ++k) {
        for (int l = 0; l < b.cols(); ++l) {
          if (b(k, l).empty()) continue;
          m(i * b.rows() + k, j * b.cols() + l) = ring.mul(a(i, j), b(k, l));
        }
      }
    }
  }
  return m;
}

ModulePresentation tensor_modules(const ModulePresentation& m, const ModulePresentation& n) {
  const int r = m.rank(), s = n.rank();
  std::vector<Vector> rels;
  for (const auto& rho : m.relations()) {
    for (int j = 0; j < s; ++j) {
      Vector v(static_cast<size_t>(r * s));
      for (int i = 0; i < r; ++i) v[static_cast<size_t>(i * s + j)] = rho[static_cast<size_t>(i)];
      rels.push_back(std::move(v));
    }
  }
  for (const auto& sigma : n.relations()) {
    for (int i = 0; i < r; ++i) {
      Vector v(static_cast<size_t>(r * s));
      for (int j = 0; j < s; ++j) v[static_cast<size_t>(i * s + j)] = sigma[static_cast<size_t>(j)];
      rels.push_back(std::move(v));
    }
  }
  return {m.ring(), r * s, std::move(rels)};
}

ModuleMap tensor_maps(const ModuleMap& f, const ModuleMap& g) {
  return ModuleMap::trusted(tensor_modules(f.source(), g.source()), tensor_modules(f.target(), g.target()),
                            kron(f.ring(), f.matrix(), g.matrix()));
}

// --- Hom ---------------------------------------------------------------------

namespace {

ModulePresentation power(const ModulePresentation& n, int copies) {
  if (copies == 0) return ModulePresentation::zero(n.ring());
  return direct_sum(std::vector<ModulePresentation>(static_cast<size_t>(copies), n));
}

}  // namespace

Submodule hom_modules(const ModulePresentation& m, const ModulePresentation& n) {
  const RingPresentation& ring = m.ring();
  const int r = m.rank(), s = n.rank();
  const int k = static_cast<int>(m.relations().size());
  Matrix rel(k, r);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < r; ++j) rel(i, j) = m.relations()[static_cast<size_t>(i)][static_cast<size_t>(j)];
  }
  ModuleMap constraint =
      ModuleMap::trusted(power(n, r), power(n, k), kron(ring, rel, Matrix::identity(ring, s)));
  return kernel(constraint);
}

ModuleMap hom_element(const ModulePresentation& m, const ModulePresentation& n, const Vector& ambient) {
  const int r = m.rank(), s = n.rank();
  if (static_cast<int>(ambient.size()) != r * s) throw std::invalid_argument("hom_element: wrong length");
  Matrix a(s, r);
  for (int i = 0; i < r; ++i) {
    for (int k = 0; k < s; ++k) a(k, i) = ambient[static_cast<size_t>(i * s + k)];
  }
  return ModuleMap(m, n, std::move(a));
}

ModuleMap hom_maps(const ModuleMap& f, const ModuleMap& g) {
  const RingPresentation& ring = f.ring();
  Submodule h = hom_modules(f.target(), g.source());
  Submodule h2 = hom_modules(f.source(), g.target());
  ModuleMap ambient = ModuleMap::trusted(power(g.source(), f.target().rank()), power(g.target(), f.source().rank()),
                                         kron(ring, transpose(f.matrix()), g.matrix()));
  auto out = factor_through(h2.inclusion, compose(ambient, h.inclusion));
  if (!out) throw InvariantViolation("hom_maps: image outside Hom");
  return *out;
}

// --- lifting and isomorphisms ---------------------------------------------------

std::optional<Vector> lift(const ModuleMap& f, const Vector& y) {
  LinearSystem sys(f.ring(), f.matrix(), f.target().relations());
  auto x = sys.solve(y);
  if (!x) return std::nullopt;
  return f.source().reduce(*x);
}

std::optional<ModuleMap> factor_through(const ModuleMap& along, const ModuleMap& f) {
  LinearSystem sys(f.ring(), along.matrix(), along.target().relations());
  std::vector<Vector> cols;
  for (int j = 0; j < f.matrix().cols(); ++j) {
    auto x = sys.solve(f.matrix().column(j));
    if (!x) return std::nullopt;
    cols.push_back(std::move(*x));
  }
  Matrix m = Matrix::from_columns(along.source().rank(), cols);
  if (!maps_relations_to_zero(f.source(), along.source(), m)) return std::nullopt;
  return ModuleMap::trusted(f.source(), along.source(), std::move(m));
}

bool is_injective(const ModuleMap& f) { return kernel(f).module.is_zero(); }
bool is_surjective(const ModuleMap& f) { return cokernel(f).module.is_zero(); }
bool is_isomorphism(const ModuleMap& f) { return is_surjective(f) && is_injective(f); }

std::optional<ModuleMap> inverse(const ModuleMap& f) {
  if (!is_isomorphism(f)) return std::nullopt;
  LinearSystem sys(f.ring(), f.matrix(), f.target().relations());
  std::vector<Vector> cols;
  for (int j = 0; j < f.target().rank(); ++j) cols.push_back(*sys.solve(unit_vector(f.ring(), f.target().rank(), j)));
  return ModuleMap::trusted(f.target(), f.source(), Matrix::from_columns(f.source().rank(), cols));
}

ModulePresentation base_change(const ModulePresentation& m, const RingMap& f) {
  std::vector<Vector> rels;
  for (const auto& r : m.relations()) {
    Vector v;
    for (const auto& p : r) v.push_back(f(p));
    rels.push_back(std::move(v));
  }
  return {f.target(), m.rank(), std::move(rels)};
}

namespace {

// Primes dividing any nonzero leading coefficient, with the total valuation
// of their product as a bound on exponents. nullopt if factoring is too big.
std::optional<std::map<unsigned long, int>> lc_primes(const ModulePresentation& m) {
  std::map<unsigned long, int> out;
  for (const auto& g : m.relation_basis().elements()) {
    mpz_class c = abs(g.front().coef.get_num());
    if (c == 0) continue;
    if (c > mpz_class("1000000000000")) return std::nullopt;
    unsigned long v = c.get_ui();
    for (unsigned long p = 2; p * p <= v; ++p) {
      while (v % p == 0) {
        out[p] += 1;
        v /= p;
      }
    }
    if (v > 1) out[v] += 1;
  }
  return out;
}

int free_rank_no_vars(const ModulePresentation& m) {
  int free = 0;
  for (int c = 0; c < m.rank(); ++c) {
    bool led = false;
    for (const auto& g : m.relation_basis().elements()) led = led || g.front().comp == c;
    free += led ? 0 : 1;
  }
  return free;
}

bool identity_both_ways(const ModulePresentation& a, const ModulePresentation& b) {
  if (a.rank() != b.rank()) return false;
  Matrix id = Matrix::identity(a.ring(), a.rank());
  return maps_relations_to_zero(a, b, id) && maps_relations_to_zero(b, a, id);
}

}  // namespace

IsoVerdict isomorphic(const ModulePresentation& m, const ModulePresentation& n) {
  bool mz = m.is_zero(), nz = n.is_zero();
  if (mz || nz) return mz == nz ? IsoVerdict::Isomorphic : IsoVerdict::NotIsomorphic;
  ModuleSize sm = m.size(), sn = n.size();
  if (sm.finite != sn.finite) return IsoVerdict::NotIsomorphic;
  if (sm.finite && sm.value != sn.value) return IsoVerdict::NotIsomorphic;
  ModulePresentation pm = prune(m).module, pn = prune(n).module;
  if (identity_both_ways(pm, pn)) return IsoVerdict::Isomorphic;
  if (pm.rank() == 1 && pn.rank() == 1) return IsoVerdict::NotIsomorphic;

  const RingPresentation& ring = m.ring();
  if (ring.nvars() == 0) {
    if (ring.context().coeffs.is_field()) return IsoVerdict::Isomorphic;  // equal finite dimension
    if (free_rank_no_vars(pm) != free_rank_no_vars(pn)) return IsoVerdict::NotIsomorphic;
    auto a = lc_primes(pm), b = lc_primes(pn);
    if (!a || !b) return IsoVerdict::Unknown;
    for (const auto& [p, e] : *b) (*a)[p] = std::max((*a)[p], e);
    for (const auto& [p, e] : *a) {
      mpz_class q = 1;
      for (int k = 1; k <= e + 1; ++k) {
        q *= static_cast<unsigned long>(p);
        Poly qp = ring.constant(Coef(q));
        ModuleSize km = kernel(ModuleMap::multiplication(pm, qp)).module.size();
        ModuleSize kn = kernel(ModuleMap::multiplication(pn, qp)).module.size();
        if (!(km == kn)) return IsoVerdict::NotIsomorphic;
      }
    }
    return IsoVerdict::Isomorphic;
  }
  return IsoVerdict::Unknown;
}

}  // namespace wpr
