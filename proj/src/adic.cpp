#include "wpr/adic.hpp"

#include <functional>

#include "wpr/errors.hpp"

namespace wpr {

namespace {

void require_sequence(const std::vector<Poly>& seq, const char* stage) {
  if (seq.empty()) throw PreconditionFailed(stage, "the sequence must be nonempty");
}

ModulePresentation power(const ModulePresentation& m, int copies) {
  if (copies <= 0) return ModulePresentation::zero(m.ring());
  return direct_sum(std::vector<ModulePresentation>(static_cast<size_t>(copies), m));
}

// M -> M^g, x |-> (c_1 x, ..., c_g x).
ModuleMap stacked_multiplication(const ModulePresentation& m, const std::vector<Poly>& c) {
  const int r = m.rank();
  const int g = static_cast<int>(c.size());
  Matrix mat(g * r, r);
  for (int t = 0; t < g; ++t) {
    for (int i = 0; i < r; ++i) mat(t * r + i, i) = m.ring().reduce(c[static_cast<size_t>(t)]);
  }
  return ModuleMap::trusted(m, power(m, g), mat);
}

// Submodules of the same ambient module; small is contained in big.
bool same_submodule(const Submodule& small, const Submodule& big) {
  for (const auto& col : big.inclusion.matrix().columns()) {
    if (!small.coordinates(col)) return false;
  }
  return true;
}

std::vector<Vector> times_ideal(const ModulePresentation& m, const std::vector<Poly>& gens) {
  std::vector<Vector> out;
  for (const auto& g : gens) {
    for (int c = 0; c < m.rank(); ++c) out.push_back(scale(m.ring(), unit_vector(m.ring(), m.rank(), c), g));
  }
  return out;
}

ModulePresentation quotient_by_power(const ModulePresentation& m, const std::vector<Poly>& seq, int k) {
  std::vector<Vector> rels = m.relations();
  for (auto& v : times_ideal(m, ideal_power(m.ring(), seq, k))) rels.push_back(std::move(v));
  return {m.ring(), m.rank(), std::move(rels)};
}

}  // namespace

std::vector<Poly> ideal_power(const RingPresentation& ring, const std::vector<Poly>& seq, int k) {
  if (k < 0) throw std::invalid_argument("ideal_power: negative exponent");
  std::vector<Poly> out;
  std::function<void(size_t, int, Poly)> rec = [&](size_t start, int left, Poly acc) {
    if (left == 0) {
      out.push_back(ring.reduce(std::move(acc)));
      return;
    }
    for (size_t i = start; i < seq.size(); ++i) rec(i, left - 1, ring.mul(acc, seq[i]));
  };
  rec(0, k, ring.one());
  return out;
}

Submodule ideal_annihilator(const ModulePresentation& m, const std::vector<Poly>& seq, int k) {
  return kernel(stacked_multiplication(m, ideal_power(m.ring(), seq, k)));
}

GammaResult gamma(const ModulePresentation& m, const std::vector<Poly>& seq, int bound) {
  require_sequence(seq, "gamma");
  if (bound < 1) throw PreconditionFailed("gamma", "bound must be at least 1");
  GammaResult g;
  g.bound = bound;
  Submodule prev = ideal_annihilator(m, seq, 0);
  g.chain.push_back(prev.module.size());
  for (int k = 1; k <= bound; ++k) {
    Submodule next = ideal_annihilator(m, seq, k);
    g.chain.push_back(next.module.size());
    if (!g.determined && same_submodule(prev, next)) {
      g.determined = true;
      g.stabilized_at = k - 1;
      g.value = prev;
    }
    prev = std::move(next);
  }
  return g;
}

std::vector<ModuleSize> AdicSystem::sizes() const {
  std::vector<ModuleSize> out;
  for (const auto& m : modules) out.push_back(m.size());
  return out;
}

AdicSystem lambda_system(const ModulePresentation& m, const std::vector<Poly>& seq, int precision) {
  require_sequence(seq, "lambda_system");
  if (precision < 0) throw PreconditionFailed("lambda_system", "precision must be nonnegative");
  const RingPresentation& ring = m.ring();
  AdicSystem s{ring, seq, precision, {}, {}, true, true};
  for (int k = 0; k <= precision; ++k) s.modules.push_back(quotient_by_power(m, seq, k + 1));
  for (int k = 0; k < precision; ++k) {
    const auto& big = s.modules[static_cast<size_t>(k + 1)];
    const auto& small = s.modules[static_cast<size_t>(k)];
    s.maps.emplace_back(big, small, Matrix::identity(ring, m.rank()));
  }
  for (int k = 0; k <= precision; ++k) {
    const auto& mk = s.modules[static_cast<size_t>(k)];
    for (const auto& v : times_ideal(mk, ideal_power(ring, seq, k + 1))) {
      if (!mk.is_zero_element(v)) s.killed = false;
    }
  }
  for (int k = 0; k < precision; ++k) {
    const auto& big = s.modules[static_cast<size_t>(k + 1)];
    Quotient base = quotient_module(big, times_ideal(big, ideal_power(ring, seq, k + 1)));
    ModuleMap induced(base.module, s.modules[static_cast<size_t>(k)], Matrix::identity(ring, m.rank()));
    if (!is_isomorphism(induced)) s.bijective = false;
  }
  if (!s.killed || !s.bijective) throw InvariantViolation("lambda_system: adic system invariant fails");
  return s;
}

std::string FlatnessVerdict::str() const {
  if (flat) return "FLAT_UP_TO(" + std::to_string(q_max) + ")";
  if (witness == "Tor") return "NOT_FLAT(Tor_" + std::to_string(witness_q) + " of size " + witness_module.size().str() + ")";
  return "NOT_FLAT(" + witness + ")";
}

FlatnessVerdict adic_flatness_at(const ModulePresentation& m, const std::vector<Poly>& seq, int k, int q_max) {
  require_sequence(seq, "is_adically_flat");
  if (q_max < 1) throw PreconditionFailed("is_adically_flat", "q_max must be at least 1");
  if (k < 0) throw PreconditionFailed("is_adically_flat", "level must be nonnegative");
  const RingPresentation& ring = m.ring();
  FlatnessVerdict v;
  v.q_max = q_max;
  v.level = k;
  std::vector<Poly> ideal = ideal_power(ring, seq, k + 1);
  ModulePresentation ak = ModulePresentation::cyclic(ring, ideal);
  for (int q = 1; q <= q_max; ++q) {
    ModulePresentation t = tor(ak, m, q);
    if (!t.is_zero()) {
      v.witness = "Tor";
      v.witness_q = q;
      v.witness_module = t;
      return v;
    }
  }
  RingPresentation rk = quotient(ring, ideal);
  ModulePresentation base = base_change(m, RingMap::canonical(ring, rk));
  if (!is_projective(base)) {
    v.witness = "not-projective";
    v.witness_module = base;
    return v;
  }
  v.flat = true;
  return v;
}

FlatnessVerdict is_adically_flat(const ModulePresentation& m, const std::vector<Poly>& seq, int q_max) {
  return adic_flatness_at(m, seq, 0, q_max);
}

namespace {

// H^q of Hom(F, M) for a resolution F.
Subquotient hom_resolution_cohomology(const FreeResolution& f, const ModulePresentation& m, int q) {
  const RingPresentation& ring = m.ring();
  auto rank = [&](int k) { return k < 0 || k >= static_cast<int>(f.ranks.size()) ? 0 : f.ranks[static_cast<size_t>(k)]; };
  auto d = [&](int k) { return k >= 0 && k < f.length() ? f.d[static_cast<size_t>(k)] : Matrix(rank(k), rank(k + 1)); };
  Matrix is = Matrix::identity(ring, m.rank());
  ModuleMap in = ModuleMap::trusted(power(m, rank(q - 1)), power(m, rank(q)), kron(ring, transpose(d(q - 1)), is));
  ModuleMap out = ModuleMap::trusted(power(m, rank(q)), power(m, rank(q + 1)), kron(ring, transpose(d(q)), is));
  return homology(in, out);
}

// The map of cohomology induced by a degreewise map of cochain modules.
ModuleMap induced(const Matrix& chain, const Subquotient& from, const Subquotient& to) {
  const RingPresentation& ring = from.module.ring();
  std::vector<Vector> cols;
  for (const auto& rep : from.representatives.columns()) {
    auto c = to.express(to.cycles.inclusion.target().reduce(apply(ring, chain, rep)));
    if (!c) throw InvariantViolation("compare_idealistic_sequential: cycle maps to a non-cycle");
    cols.push_back(std::move(*c));
  }
  return ModuleMap::trusted(from.module, to.module, Matrix::from_columns(to.module.rank(), cols));
}

std::optional<int> stable_level(const std::vector<ModuleMap>& maps) {
  for (size_t l = 0; l + 1 < maps.size(); ++l) {
    if (is_isomorphism(maps[l]) && is_isomorphism(maps[l + 1])) return static_cast<int>(l);
  }
  return std::nullopt;
}

}  // namespace

ComparisonReport compare_idealistic_sequential(const ModulePresentation& m, const std::vector<Poly>& seq, int q,
                                               int bound) {
  require_sequence(seq, "compare_idealistic_sequential");
  const int n = static_cast<int>(seq.size());
  if (bound < 1) throw PreconditionFailed("compare_idealistic_sequential", "bound must be at least 1");
  if (q < 0 || q > n) throw PreconditionFailed("compare_idealistic_sequential", "degree out of range");
  const RingPresentation& ring = m.ring();
  ComparisonReport rep;
  rep.degree = q;
  rep.bound = bound;

  TowerReport tower = torsion_tower(m, seq, bound);
  const CohomologySystem& seqsys = tower.systems[static_cast<size_t>(q)];

  std::vector<FreeResolution> res;
  std::vector<Subquotient> ext_levels;
  for (int k = 0; k <= bound; ++k) {
    std::vector<Poly> gens;
    for (const auto& a : seq) gens.push_back(ring.pow(a, k));
    res.push_back(free_resolution(ModulePresentation::cyclic(ring, gens), q + 1));
    ext_levels.push_back(hom_resolution_cohomology(res.back(), m, q));
  }

  Matrix is = Matrix::identity(ring, m.rank());
  Matrix one = Matrix::identity(ring, 1);
  std::vector<ModuleMap> ext_maps;
  for (int k = 0; k < bound; ++k) {
    std::vector<Matrix> src;
    for (int t = 0; t < res[static_cast<size_t>(k + 1)].length(); ++t) src.push_back(res[static_cast<size_t>(k + 1)].d[static_cast<size_t>(t)]);
    auto psi = lift_chain_map(src, res[static_cast<size_t>(k)], one, q);
    ext_maps.push_back(induced(kron(ring, transpose(psi[static_cast<size_t>(q)]), is), ext_levels[static_cast<size_t>(k)],
                               ext_levels[static_cast<size_t>(k + 1)]));
  }

  std::vector<ModuleMap> comparisons;
  for (int k = 0; k <= bound; ++k) {
    BoundedComplex kk = koszul(ring, seq, k);
    std::vector<Matrix> src;
    for (int t = 0; t < n; ++t) src.push_back(kk.differential(-t - 1).matrix());
    auto phi = lift_chain_map(src, res[static_cast<size_t>(k)], one, q);
    comparisons.push_back(induced(kron(ring, transpose(phi[static_cast<size_t>(q)]), is), ext_levels[static_cast<size_t>(k)],
                                  seqsys.levels[static_cast<size_t>(k)]));
  }

  for (int k = 0; k <= bound; ++k) {
    rep.idealistic.push_back(ext_levels[static_cast<size_t>(k)].module.size());
    rep.sequential.push_back(seqsys.at(k).size());
    rep.comparison_iso.push_back(is_isomorphism(comparisons[static_cast<size_t>(k)]));
  }
  rep.idealistic_stable = stable_level(ext_maps);
  rep.sequential_stable = stable_level(seqsys.maps);
  if (rep.idealistic_stable && rep.sequential_stable) {
    rep.determined = true;
    rep.level = std::max(*rep.idealistic_stable, *rep.sequential_stable);
    rep.isomorphic = rep.comparison_iso[static_cast<size_t>(rep.level)];
    rep.value = seqsys.at(rep.level);
  }
  return rep;
}

}  // namespace wpr
