#include "wpr/koszul.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "wpr/errors.hpp"

namespace wpr {

std::vector<std::vector<int>> koszul_basis(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int start) -> void {
    if (static_cast<int>(cur.size()) == k) {
      out.push_back(cur);
      return;
    }
    for (int v = start; v < n; ++v) {
      cur.push_back(v);
      self(self, v + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

namespace {

void require_sequence(const std::vector<Poly>& seq, const char* stage) {
  if (seq.empty()) throw PreconditionFailed(stage, "the sequence must be nonempty");
}

std::map<std::vector<int>, int> index_of(const std::vector<std::vector<int>>& basis) {
  std::map<std::vector<int>, int> out;
  for (size_t k = 0; k < basis.size(); ++k) out[basis[k]] = static_cast<int>(k);
  return out;
}

}  // namespace

BoundedComplex koszul(const RingPresentation& ring, const std::vector<Poly>& seq, int i) {
  require_sequence(seq, "koszul");
  if (i < 0) throw PreconditionFailed("koszul", "the power must be nonnegative");
  const int n = static_cast<int>(seq.size());
  std::vector<Poly> powers;
  for (const auto& a : seq) powers.push_back(ring.pow(a, i));
  std::vector<ModulePresentation> mods;
  for (int k = n; k >= 0; --k) {
    mods.push_back(ModulePresentation::free(ring, static_cast<int>(koszul_basis(n, k).size())));
  }
  std::vector<ModuleMap> diffs;
  for (int k = n; k >= 1; --k) {
    auto cols = koszul_basis(n, k);
    auto rows = index_of(koszul_basis(n, k - 1));
    Matrix d(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
    for (size_t c = 0; c < cols.size(); ++c) {
      const auto& s = cols[c];
      for (size_t pos = 0; pos < s.size(); ++pos) {
        std::vector<int> t = s;
        t.erase(t.begin() + static_cast<long>(pos));
        Poly term = powers[static_cast<size_t>(s[pos])];
        if (pos % 2 == 1) term = ring.neg(term);
        d(rows.at(t), static_cast<int>(c)) = term;
      }
    }
    diffs.push_back(ModuleMap::trusted(mods[static_cast<size_t>(n - k)], mods[static_cast<size_t>(n - k + 1)], d));
  }
  return BoundedComplex(ring, -n, std::move(mods), std::move(diffs));
}

ComplexMap koszul_transition(const RingPresentation& ring, const std::vector<Poly>& seq, int j, int i) {
  if (j < i) throw PreconditionFailed("koszul_transition", "need j >= i");
  const int n = static_cast<int>(seq.size());
  BoundedComplex kj = koszul(ring, seq, j), ki = koszul(ring, seq, i);
  std::vector<Poly> factor;
  for (const auto& a : seq) factor.push_back(ring.pow(a, j - i));
  std::vector<ModuleMap> maps;
  for (int k = n; k >= 0; --k) {
    std::vector<Poly> diag;
    for (const auto& s : koszul_basis(n, k)) {
      Poly p = ring.one();
      for (int v : s) p = ring.mul(p, factor[static_cast<size_t>(v)]);
      diag.push_back(p);
    }
    maps.push_back(ModuleMap::trusted(kj.module(-k), ki.module(-k), Matrix::diagonal(diag)));
  }
  return ComplexMap(kj, ki, -n, std::move(maps));
}

// --- towers --------------------------------------------------------------------

ComplexMap Tower::composite(int i, int j) const {
  if (i > j) throw std::invalid_argument("Tower::composite: need i <= j");
  if (i == j) return ComplexMap::identity(complexes[static_cast<size_t>(i)]);
  if (direction == TowerDirection::Inverse) {
    ComplexMap c = transitions[static_cast<size_t>(j - 1)];
    for (int k = j - 2; k >= i; --k) c = compose(transitions[static_cast<size_t>(k)], c);
    return c;
  }
  ComplexMap c = transitions[static_cast<size_t>(i)];
  for (int k = i + 1; k < j; ++k) c = compose(transitions[static_cast<size_t>(k)], c);
  return c;
}

Tower koszul_tower(const RingPresentation& ring, const std::vector<Poly>& seq, int bound) {
  if (bound < 0) throw PreconditionFailed("koszul_tower", "bound must be nonnegative");
  Tower t;
  t.direction = TowerDirection::Inverse;
  t.bound = bound;
  for (int i = 0; i <= bound; ++i) t.complexes.push_back(koszul(ring, seq, i));
  for (int i = 0; i < bound; ++i) t.transitions.push_back(koszul_transition(ring, seq, i + 1, i));
  return t;
}

Tower dual_tower(const RingPresentation& ring, const std::vector<Poly>& seq, int bound) {
  if (bound < 0) throw PreconditionFailed("dual_tower", "bound must be nonnegative");
  BoundedComplex a = BoundedComplex::concentrated(ModulePresentation::free(ring, 1));
  Tower t;
  t.direction = TowerDirection::Direct;
  t.bound = bound;
  for (int i = 0; i <= bound; ++i) t.complexes.push_back(hom_complex(koszul(ring, seq, i), a));
  for (int i = 0; i < bound; ++i) {
    t.transitions.push_back(hom_complex_precompose(koszul_transition(ring, seq, i + 1, i), a));
  }
  return t;
}

ModuleMap CohomologySystem::composite(int i, int j) const {
  if (i > j) throw std::invalid_argument("CohomologySystem::composite: need i <= j");
  if (direction == TowerDirection::Inverse) {
    ModuleMap c = ModuleMap::identity(at(i));
    for (int k = i; k < j; ++k) c = compose(c, maps[static_cast<size_t>(k)]);
    return c;
  }
  ModuleMap c = ModuleMap::identity(at(i));
  for (int k = i; k < j; ++k) c = compose(maps[static_cast<size_t>(k)], c);
  return c;
}

CohomologySystem cohomology_system(const Tower& tower, int q) {
  CohomologySystem sys;
  sys.direction = tower.direction;
  sys.degree = q;
  for (const auto& c : tower.complexes) sys.levels.push_back(cohomology(c, q));
  for (size_t i = 0; i < tower.transitions.size(); ++i) {
    size_t s = tower.direction == TowerDirection::Inverse ? i + 1 : i;
    size_t t = tower.direction == TowerDirection::Inverse ? i : i + 1;
    sys.maps.push_back(induced_map(tower.transitions[i], q, sys.levels[s], sys.levels[t]));
  }
  return sys;
}

std::optional<int> pro_zero_witness(const CohomologySystem& sys, int i) {
  ModuleMap c = ModuleMap::identity(sys.at(i));
  for (int j = i; j <= sys.bound(); ++j) {
    if (j > i) {
      const ModuleMap& t = sys.maps[static_cast<size_t>(j - 1)];
      c = sys.direction == TowerDirection::Inverse ? compose(c, t) : compose(t, c);
    }
    if (c.is_zero()) return j;
  }
  return std::nullopt;
}

std::string to_string(TowerVerdict v) {
  switch (v) {
    case TowerVerdict::ProZero: return "PRO-ZERO";
    case TowerVerdict::Stabilized: return "STABILIZED";
    case TowerVerdict::MittagLeffler: return "MITTAG-LEFFLER";
    case TowerVerdict::Undetermined: return "UNDETERMINED";
    case TowerVerdict::Growing: return "GROWING";
    case TowerVerdict::IndZero: return "IND-ZERO";
  }
  return "?";
}

const DegreeReport& TowerReport::degree(int q) const {
  for (const auto& d : degrees) {
    if (d.degree == q) return d;
  }
  throw std::out_of_range("TowerReport: no such degree");
}

namespace {

// im(f) contained in im(g), both maps into the same module.
bool image_contained(const ModuleMap& f, const ModuleMap& g) {
  LinearSystem sys(g.ring(), g.matrix(), g.target().relations());
  for (int j = 0; j < f.matrix().cols(); ++j) {
    if (!sys.in_image(f.matrix().column(j))) return false;
  }
  return true;
}

std::optional<int> stabilized_level(const CohomologySystem& sys) {
  std::vector<int> iso;
  for (const auto& m : sys.maps) iso.push_back(is_isomorphism(m) ? 1 : 0);
  for (size_t l = 0; l + 1 < iso.size(); ++l) {
    if (iso[l] && iso[l + 1]) return static_cast<int>(l);
  }
  return std::nullopt;
}

DegreeReport base_report(const CohomologySystem& sys) {
  DegreeReport r;
  r.degree = sys.degree;
  for (const auto& l : sys.levels) r.profile.push_back(l.module.size());
  return r;
}

bool mittag_leffler(const CohomologySystem& sys) {
  const int n = sys.bound();
  for (int i = 0; i <= n / 2; ++i) {
    bool stable = false;
    for (int j = i + 1; j < n && !stable; ++j) {
      ModuleMap a = sys.composite(i, j), b = sys.composite(i, j + 1);
      stable = image_contained(a, b) && image_contained(b, a);
    }
    if (!stable) return false;
  }
  return true;
}

BoundedComplex in_degree_zero(const ModulePresentation& m) { return BoundedComplex::concentrated(m, 0); }

TowerReport tensor_tower(const Tower& base, const ModulePresentation& m, int qlo, int qhi, bool completion) {
  TowerReport rep;
  BoundedComplex mc = in_degree_zero(m);
  ComplexMap id = ComplexMap::identity(mc);
  rep.tower.direction = base.direction;
  rep.tower.bound = base.bound;
  for (const auto& c : base.complexes) rep.tower.complexes.push_back(tensor_complex(c, mc));
  for (const auto& t : base.transitions) rep.tower.transitions.push_back(tensor_complex_maps(t, id));
  for (int q = qlo; q <= qhi; ++q) {
    CohomologySystem sys = cohomology_system(rep.tower, q);
    DegreeReport r = base_report(sys);
    bool done = false;
    if (!completion) {
      if (auto l = stabilized_level(sys)) {
        r.verdict = TowerVerdict::Stabilized;
        r.level = *l;
        r.value = sys.at(*l);
        done = true;
      }
    }
    if (!done) {
      std::vector<std::pair<int, int>> w;
      for (int i = 0; i <= base.bound / 2; ++i) {
        auto j = pro_zero_witness(sys, i);
        if (!j) break;
        w.emplace_back(i, *j);
      }
      if (static_cast<int>(w.size()) == base.bound / 2 + 1) {
        r.verdict = completion ? TowerVerdict::ProZero : TowerVerdict::IndZero;
        r.witnesses = std::move(w);
        done = true;
      }
    }
    if (!done) {
      if (auto l = stabilized_level(sys)) {
        r.verdict = TowerVerdict::Stabilized;
        r.level = *l;
        r.value = sys.at(*l);
      } else if (completion) {
        r.verdict = mittag_leffler(sys) ? TowerVerdict::MittagLeffler : TowerVerdict::Undetermined;
      } else {
        r.verdict = TowerVerdict::Growing;
      }
    }
    rep.systems.push_back(std::move(sys));
    rep.degrees.push_back(std::move(r));
  }
  return rep;
}

}  // namespace

TowerReport torsion_tower(const ModulePresentation& m, const std::vector<Poly>& seq, int bound) {
  Tower d = dual_tower(m.ring(), seq, bound);
  return tensor_tower(d, m, 0, static_cast<int>(seq.size()), false);
}

TowerReport completion_tower(const ModulePresentation& m, const std::vector<Poly>& seq, int bound) {
  Tower k = koszul_tower(m.ring(), seq, bound);
  return tensor_tower(k, m, -static_cast<int>(seq.size()), 0, true);
}

// --- Cech ------------------------------------------------------------------------

bool CechComplex::is_zero() const {
  for (const auto& deg : terms) {
    for (const auto& r : deg) {
      if (!r.is_zero_ring()) return false;
    }
  }
  return true;
}

CechComplex cech(const RingPresentation& ring, const std::vector<Poly>& seq) {
  require_sequence(seq, "cech");
  const int n = static_cast<int>(seq.size());
  CechComplex c{ring, seq, {}, {}, {}};
  for (int k = 1; k <= n; ++k) {
    auto subs = koszul_basis(n, k);
    std::vector<RingPresentation> rings;
    for (const auto& s : subs) {
      Poly prod = ring.one();
      for (int v : s) prod = ring.mul(prod, seq[static_cast<size_t>(v)]);
      rings.push_back(localize(ring, prod));
    }
    c.subsets.push_back(std::move(subs));
    c.terms.push_back(std::move(rings));
  }
  for (int k = 0; k + 1 < n; ++k) {
    const auto& from = c.subsets[static_cast<size_t>(k)];
    auto to_index = index_of(c.subsets[static_cast<size_t>(k + 1)]);
    for (size_t a = 0; a < from.size(); ++a) {
      for (int t = 0; t < n; ++t) {
        if (std::find(from[a].begin(), from[a].end(), t) != from[a].end()) continue;
        std::vector<int> big = from[a];
        big.insert(std::upper_bound(big.begin(), big.end(), t), t);
        int pos = static_cast<int>(std::find(big.begin(), big.end(), t) - big.begin());
        int b = to_index.at(big);
        const RingPresentation& src = c.terms[static_cast<size_t>(k)][a];
        const RingPresentation& dst = c.terms[static_cast<size_t>(k + 1)][static_cast<size_t>(b)];
        RingMap base_map = RingMap::canonical(ring, dst);
        std::vector<Poly> images;
        for (int v = 0; v < ring.nvars(); ++v) images.push_back(dst.variable(v));
        images.push_back(dst.mul(base_map(seq[static_cast<size_t>(t)]), dst.variable(dst.nvars() - 1)));
        c.arrows.push_back({k, static_cast<int>(a), b, pos % 2 == 0 ? 1 : -1, RingMap(src, dst, images)});
      }
    }
  }
  // d o d = 0: the two paths S -> T between degrees k and k + 2 agree as ring
  // maps and carry opposite signs.
  for (int k = 0; k + 2 < n; ++k) {
    std::map<std::pair<int, int>, std::vector<std::pair<int, std::vector<Poly>>>> reach;
    for (const auto& x : c.arrows) {
      if (x.degree != k) continue;
      for (const auto& y : c.arrows) {
        if (y.degree != k + 1 || y.from != x.to) continue;
        std::vector<Poly> gens;
        const RingPresentation& src = c.terms[static_cast<size_t>(k)][static_cast<size_t>(x.from)];
        for (int v = 0; v < src.nvars(); ++v) gens.push_back(y.map(x.map(src.variable(v))));
        reach[{x.from, y.to}].emplace_back(x.sign * y.sign, std::move(gens));
      }
    }
    for (const auto& [key, ps] : reach) {
      int total = 0;
      for (const auto& p : ps) total += p.first;
      bool agree = true;
      for (size_t u = 1; u < ps.size(); ++u) {
        for (size_t v = 0; v < ps[u].second.size(); ++v) agree = agree && equal(ps[u].second[v], ps[0].second[v]);
      }
      if (total != 0 || !agree) throw InvariantViolation("cech: d o d != 0");
    }
  }
  return c;
}

AugmentedCech augmented_cech_sequence(const RingPresentation& ring, const std::vector<Poly>& seq, int i) {
  BoundedComplex a = BoundedComplex::concentrated(ModulePresentation::free(ring, 1));
  AugmentedCech out;
  out.dual = hom_complex(koszul(ring, seq, i), a);
  out.truncated = truncate_below(out.dual, 1);
  out.base = a;
  std::vector<ModuleMap> inc;
  for (int q = 1; q <= out.dual.hi(); ++q) inc.push_back(ModuleMap::identity(out.dual.module(q)));
  out.inclusion = ComplexMap(out.truncated, out.dual, 1, std::move(inc));
  out.augmentation = ComplexMap(out.dual, out.base, 0, {ModuleMap::identity(out.dual.module(0))});
  BoundedComplex zero = BoundedComplex::zero(ring);
  out.exactness = is_exact_sequence(std::vector<ComplexMap>{ComplexMap::zero(zero, out.truncated), out.inclusion,
                                                            out.augmentation, ComplexMap::zero(out.base, zero)});
  return out;
}

}  // namespace wpr
