#include "wpr/groebner.hpp"

#include <algorithm>
#include <cstdlib>

namespace wpr {

int compare_position(const PolyContext& ctx, int comp_a, const Monomial& a, int comp_b, const Monomial& b) {
  if (comp_a != comp_b) return comp_a < comp_b ? 1 : -1;
  return compare(ctx.order, a, b);
}

namespace {

int cmp(const PolyContext& ctx, const Term& a, const Term& b) {
  return compare_position(ctx, a.comp, a.mono, b.comp, b.mono);
}

}  // namespace

namespace vec {

ModVec normalize(const PolyContext& ctx, std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), [&](const Term& a, const Term& b) { return cmp(ctx, a, b) > 0; });
  ModVec out;
  out.reserve(terms.size());
  for (auto& t : terms) {
    if (!out.empty() && cmp(ctx, out.back(), t) == 0) {
      out.back().coef = ctx.coeffs.add(out.back().coef, t.coef);
      if (sgn(out.back().coef) == 0) out.pop_back();
    } else {
      t.coef = ctx.coeffs.reduce(t.coef);
      if (sgn(t.coef) != 0) out.push_back(std::move(t));
    }
  }
  return out;
}

ModVec axpy(const PolyContext& ctx, const ModVec& a, const Coef& c, const Monomial& mono, const ModVec& b) {
  if (sgn(c) == 0 || b.empty()) return a;
  ModVec out;
  out.reserve(a.size() + b.size());
  size_t i = 0, j = 0;
  Term tb;
  bool have_b = false;
  auto load_b = [&]() {
    if (j < b.size()) {
      tb.comp = b[j].comp;
      tb.mono = b[j].mono * mono;
      tb.coef = ctx.coeffs.mul(b[j].coef, c);
      have_b = true;
    } else {
      have_b = false;
    }
  };
  load_b();
  while (i < a.size() || have_b) {
    if (!have_b) {
      out.push_back(a[i++]);
      continue;
    }
    if (i >= a.size()) {
      if (sgn(tb.coef) != 0) out.push_back(tb);
      ++j;
      load_b();
      continue;
    }
    int s = cmp(ctx, a[i], tb);
    if (s > 0) {
      out.push_back(a[i++]);
    } else if (s < 0) {
      if (sgn(tb.coef) != 0) out.push_back(tb);
      ++j;
      load_b();
    } else {
      Coef sum = ctx.coeffs.add(a[i].coef, tb.coef);
      if (sgn(sum) != 0) out.push_back(Term{a[i].comp, a[i].mono, sum});
      ++i;
      ++j;
      load_b();
    }
  }
  return out;
}

ModVec add(const PolyContext& ctx, const ModVec& a, const ModVec& b) {
  if (b.empty()) return a;
  return axpy(ctx, a, Coef(1), Monomial(ctx.nvars), b);
}

ModVec sub(const PolyContext& ctx, const ModVec& a, const ModVec& b) {
  if (b.empty()) return a;
  return axpy(ctx, a, Coef(-1), Monomial(ctx.nvars), b);
}

ModVec shift(const PolyContext& ctx, const ModVec& b, const Coef& c, const Monomial& mono) {
  ModVec out;
  if (sgn(c) == 0) return out;
  out.reserve(b.size());
  for (const auto& t : b) {
    Coef k = ctx.coeffs.mul(t.coef, c);
    if (sgn(k) != 0) out.push_back(Term{t.comp, t.mono * mono, k});
  }
  return out;
}

ModVec scale(const PolyContext& ctx, const ModVec& a, const Coef& c) {
  return shift(ctx, a, c, Monomial(ctx.nvars));
}

ModVec poly_mul(const PolyContext& ctx, const ModVec& poly, const ModVec& b) {
  ModVec out;
  for (const auto& t : poly) out = axpy(ctx, out, t.coef, t.mono, b);
  return out;
}

ModVec with_offset(const ModVec& a, int offset) {
  ModVec out = a;
  for (auto& t : out) t.comp += offset;
  return out;
}

ModVec constant(const PolyContext& ctx, const Coef& c, int comp) {
  Coef r = ctx.coeffs.reduce(c);
  if (sgn(r) == 0) return {};
  return {Term{comp, Monomial(ctx.nvars), r}};
}

}  // namespace vec

namespace {

int find_reducer(const PolyContext& ctx, const std::vector<ModVec>& elems, int comp, const Monomial& mono) {
  int best = -1;
  for (size_t k = 0; k < elems.size(); ++k) {
    const Term& lt = elems[k].front();
    if (lt.comp != comp || !lt.mono.divides(mono)) continue;
    if (ctx.coeffs.is_field()) return static_cast<int>(k);
    if (best < 0 || abs(lt.coef) < abs(elems[static_cast<size_t>(best)].front().coef)) best = static_cast<int>(k);
  }
  return best;
}

// Full reduction. Over Z each term is reduced once against the applicable
// element with the smallest leading coefficient, leaving a remainder in
// [0, d).
ModVec reduce_by(const PolyContext& ctx, const std::vector<ModVec>& elems, ModVec f) {
  size_t p = 0;
  while (p < f.size()) {
    const Term t = f[p];
    int k = find_reducer(ctx, elems, t.comp, t.mono);
    if (k < 0) {
      ++p;
      continue;
    }
    const ModVec& g = elems[static_cast<size_t>(k)];
    auto [q, r] = ctx.coeffs.divmod(t.coef, g.front().coef);
    if (sgn(q) == 0) {
      ++p;
      continue;
    }
    Monomial m = g.front().mono.quotient_of(t.mono);
    // Terms above p are untouched: every term of m*g is <= t.
    ModVec tail(f.begin() + static_cast<long>(p), f.end());
    tail = vec::axpy(ctx, tail, ctx.coeffs.neg(q), m, g);
    f.resize(p);
    f.insert(f.end(), tail.begin(), tail.end());
    if (sgn(r) != 0) ++p;
  }
  return f;
}

ModVec normalized_lead(const PolyContext& ctx, ModVec f) {
  Coef u = ctx.coeffs.normalizer(f.front().coef);
  if (u == 1) return f;
  return vec::scale(ctx, f, u);
}

struct Pair {
  size_t i, j;
  int comp;
  Monomial lcm;
};

bool divides_term(const PolyContext& ctx, const Term& a, const Term& b) {
  return a.comp == b.comp && a.mono.divides(b.mono) && ctx.coeffs.divides(a.coef, b.coef);
}

bool single_component(const ModVec& f) {
  for (const auto& t : f) {
    if (t.comp != f.front().comp) return false;
  }
  return true;
}

}  // namespace

int GroebnerBasis::best_reducer(int comp, const Monomial& mono) const {
  return find_reducer(ctx_, elems_, comp, mono);
}

ModVec GroebnerBasis::reduce(ModVec f) const { return reduce_by(ctx_, elems_, std::move(f)); }

GroebnerBasis::GroebnerBasis(const PolyContext& ctx, std::vector<ModVec> generators) : ctx_(ctx) {
  const CoeffDomain& R = ctx.coeffs;
  std::vector<ModVec> G;
  std::vector<Pair> pairs;

  auto insert = [&](ModVec r) {
    r = normalized_lead(ctx, std::move(r));
    const Term& lt = r.front();
    for (size_t k = 0; k < G.size(); ++k) {
      if (G[k].front().comp != lt.comp) continue;
      pairs.push_back(Pair{k, G.size(), lt.comp, G[k].front().mono.lcm(lt.mono)});
    }
    G.push_back(std::move(r));
  };

  for (auto& g : generators) {
    ModVec r = reduce_by(ctx, G, std::move(g));
    if (!r.empty()) insert(std::move(r));
  }

  while (!pairs.empty()) {
    size_t best = 0;
    for (size_t k = 1; k < pairs.size(); ++k) {
      const Pair& a = pairs[k];
      const Pair& b = pairs[best];
      int s = compare_position(ctx, a.comp, a.lcm, b.comp, b.lcm);
      if (s < 0 || (s == 0 && (a.j < b.j || (a.j == b.j && a.i < b.i)))) best = k;
    }
    Pair pr = pairs[best];
    pairs[best] = pairs.back();
    pairs.pop_back();

    const ModVec f = G[pr.i];
    const ModVec g = G[pr.j];
    const Term& tf = f.front();
    const Term& tg = g.front();
    Monomial mf = tf.mono.quotient_of(pr.lcm);
    Monomial mg = tg.mono.quotient_of(pr.lcm);

    std::vector<ModVec> todo;
    bool product_criterion = tf.mono.coprime(tg.mono) && single_component(f) && single_component(g);
    if (R.is_field()) {
      if (!product_criterion) {
        todo.push_back(vec::axpy(ctx, vec::shift(ctx, f, Coef(1), mf), Coef(-1), mg, g));
      }
    } else {
      Coef d, s, t;
      CoeffDomain::gcdext(tf.coef, tg.coef, d, s, t);
      bool coprime_coeffs = d == 1;
      if (!(product_criterion && coprime_coeffs)) {
        Coef l = tf.coef * tg.coef / d;
        todo.push_back(vec::axpy(ctx, vec::shift(ctx, f, l / tf.coef, mf), -(l / tg.coef), mg, g));
      }
      if (!R.divides(tf.coef, tg.coef) && !R.divides(tg.coef, tf.coef)) {
        todo.push_back(vec::axpy(ctx, vec::shift(ctx, f, s, mf), t, mg, g));
      }
    }
    for (auto& h : todo) {
      ModVec r = reduce_by(ctx, G, std::move(h));
      if (!r.empty()) insert(std::move(r));
    }
  }

  // Minimalise: drop elements whose leading term is strongly divisible by
  // another's, then tail-reduce.
  std::sort(G.begin(), G.end(), [&](const ModVec& a, const ModVec& b) {
    int s = cmp(ctx, a.front(), b.front());
    if (s != 0) return s < 0;
    return abs(a.front().coef) < abs(b.front().coef);
  });
  std::vector<ModVec> kept;
  for (auto& g : G) {
    bool redundant = false;
    for (const auto& h : kept) {
      if (divides_term(ctx, h.front(), g.front())) {
        redundant = true;
        break;
      }
    }
    if (!redundant) kept.push_back(std::move(g));
  }
  for (size_t k = 0; k < kept.size(); ++k) {
    std::vector<ModVec> others;
    others.reserve(kept.size() - 1);
    for (size_t l = 0; l < kept.size(); ++l) {
      if (l != k) others.push_back(kept[l]);
    }
    ModVec head{kept[k].front()};
    ModVec tail(kept[k].begin() + 1, kept[k].end());
    tail = reduce_by(ctx, others, std::move(tail));
    head.insert(head.end(), tail.begin(), tail.end());
    kept[k] = std::move(head);
  }
  elems_ = std::move(kept);
}

}  // namespace wpr
