#include "wpr/wpr.hpp"

#include <algorithm>
#include <functional>

#include "wpr/errors.hpp"

namespace wpr {

bool is_regular(const ModulePresentation& m, const Poly& a) {
  return kernel(ModuleMap::multiplication(m, a)).module.is_zero();
}

bool is_regular(const RingPresentation& ring, const Poly& a) { return is_regular(ModulePresentation::free(ring, 1), a); }

bool same_ideal(const RingPresentation& ring, const std::vector<Poly>& a, const std::vector<Poly>& b) {
  for (const auto& x : a) {
    if (!ideal_membership(ring, b, x).member) return false;
  }
  for (const auto& x : b) {
    if (!ideal_membership(ring, a, x).member) return false;
  }
  return true;
}

Poly carry(const RingPresentation& from, const RingPresentation& to, const Poly& p) {
  return to.reduce(RingMap::canonical(from, to)(p));
}

std::vector<Poly> carry(const RingPresentation& from, const RingPresentation& to, const std::vector<Poly>& ps) {
  RingMap f = RingMap::canonical(from, to);
  std::vector<Poly> out;
  for (const auto& p : ps) out.push_back(to.reduce(f(p)));
  return out;
}

namespace {

bool same_vector(const ModulePresentation& m, const Vector& a, const Vector& b) {
  if (a.size() != b.size()) return false;
  Vector ra = m.reduce(a), rb = m.reduce(b);
  for (size_t k = 0; k < ra.size(); ++k) {
    if (!equal(ra[k], rb[k])) return false;
  }
  return true;
}

bool same_polys(const std::vector<Poly>& a, const std::vector<Poly>& b) {
  if (a.size() != b.size()) return false;
  for (size_t k = 0; k < a.size(); ++k) {
    if (!equal(a[k], b[k])) return false;
  }
  return true;
}

bool killed_by(const ModulePresentation& m, const Poly& c, const Vector& x) {
  return m.is_zero_element(scale(m.ring(), x, c));
}

// sub is contained in Ann(c).
bool all_killed(const Submodule& sub, const Poly& c) {
  const ModulePresentation& m = sub.inclusion.target();
  for (const auto& col : sub.inclusion.matrix().columns()) {
    if (!killed_by(m, c, col)) return false;
  }
  return true;
}

// First generator of Ann(a^t) not killed by a^(t-1).
std::optional<Vector> strict_witness(const ModulePresentation& m, const Poly& a, int t) {
  const RingPresentation& ring = m.ring();
  Submodule ann = annihilator(m, a, t);
  Poly below = ring.pow(a, t - 1);
  for (const auto& col : ann.inclusion.matrix().columns()) {
    Vector x = m.reduce(col);
    if (!killed_by(m, below, x)) return x;
  }
  return std::nullopt;
}

}  // namespace

TorsionBoundReport torsion_bound(const ModulePresentation& m, const Poly& a, int bound) {
  if (bound < 1) throw PreconditionFailed("torsion-bound", "bound must be at least 1");
  const RingPresentation& ring = m.ring();
  TorsionBoundReport r;
  r.module = m;
  r.element = ring.reduce(a);
  r.bound = bound;
  std::vector<Submodule> chain;
  for (int j = 0; j <= bound; ++j) {
    chain.push_back(annihilator(m, a, j));
    r.chain.push_back(chain.back().module.size());
    r.generators.push_back(chain.back().module.rank());
  }
  for (int t = 0; t + 1 <= bound && !r.tb; ++t) {
    if (all_killed(chain[static_cast<size_t>(t + 1)], ring.pow(a, t))) r.tb = t;
  }
  if (!r.tb) return r;
  const int t = *r.tb;
  r.verified_through = t;
  for (int j = t + 1; j <= std::min(t + 2, bound); ++j) {
    if (!all_killed(chain[static_cast<size_t>(j)], ring.pow(a, t))) {
      throw InvariantViolation("torsion_bound: annihilator chain grows after stabilizing");
    }
    r.verified_through = j;
  }
  if (t >= 1) {
    auto w = strict_witness(m, a, t);
    if (!w) throw InvariantViolation("torsion_bound: no element separates consecutive annihilators");
    r.strict_witness = *w;
  }
  return r;
}

TorsionBoundReport torsion_bound(const RingPresentation& ring, const Poly& a, int bound) {
  return torsion_bound(ModulePresentation::free(ring, 1), a, bound);
}

bool check_torsion_bound(const ModulePresentation& m, const Poly& a, int t, const Vector& witness) {
  if (t < 0) return false;
  const RingPresentation& ring = m.ring();
  if (!all_killed(annihilator(m, a, t + 1), ring.pow(a, t))) return false;
  if (t == 0) return std::all_of(witness.begin(), witness.end(), [](const Poly& p) { return p.empty(); });
  auto w = strict_witness(m, a, t);
  return w && same_vector(m, *w, witness) && killed_by(m, ring.pow(a, t), witness) &&
         !killed_by(m, ring.pow(a, t - 1), witness);
}

ProZeroCertificate pro_zero_check(const Tower& tower, int q, int i_max, int bound) {
  if (tower.direction != TowerDirection::Inverse) throw PreconditionFailed("pro-zero", "the tower must be inverse");
  if (i_max < 0 || i_max > bound || bound > tower.bound) {
    throw PreconditionFailed("pro-zero", "need 0 <= i_max <= bound <= tower length");
  }
  ProZeroCertificate c;
  c.degree = q;
  c.i_max = i_max;
  c.bound = bound;
  CohomologySystem sys = cohomology_system(tower, q);
  for (int i = 0; i <= i_max; ++i) {
    auto j = pro_zero_witness(sys, i);
    if (!j || *j > bound) {
      c.frontier = i;
      return c;
    }
    c.witnesses.push_back(*j);
  }
  c.determined = true;
  return c;
}

std::string to_string(WprMethod m) {
  switch (m) {
    case WprMethod::Direct: return "DIRECT";
    case WprMethod::ElementTb: return "ELEMENT_TB";
    case WprMethod::QuotientThm: return "QUOTIENT_THM";
    case WprMethod::Glued: return "GLUED";
    case WprMethod::Prism: return "PRISM";
  }
  return "?";
}

WprMethod parse_method(const std::string& s) {
  for (auto m : {WprMethod::Direct, WprMethod::ElementTb, WprMethod::QuotientThm, WprMethod::Glued, WprMethod::Prism}) {
    if (to_string(m) == s) return m;
  }
  throw ParseError("unknown certificate method '" + s + "'");
}

const ProZeroCertificate& WprCertificate::degree(int q) const {
  for (const auto& d : degrees) {
    if (d.degree == q) return d;
  }
  throw std::out_of_range("WprCertificate: no such degree");
}

// --- replay ------------------------------------------------------------------------

namespace {

// Koszul complexes and their cohomology, computed once per level.
class KoszulCache {
 public:
  KoszulCache(RingPresentation ring, std::vector<Poly> seq) : ring_(std::move(ring)), seq_(std::move(seq)) {}

  // H^q(mu_{j,i}) = 0.
  bool zero(int q, int i, int j) {
    ComplexMap mu = koszul_transition(ring_, seq_, j, i);
    return induced_map(mu, q, h(j, q), h(i, q)).is_zero();
  }

 private:
  const Subquotient& h(int level, int q) {
    auto key = std::make_pair(level, q);
    auto it = h_.find(key);
    if (it != h_.end()) return it->second;
    auto c = k_.find(level);
    if (c == k_.end()) c = k_.emplace(level, koszul(ring_, seq_, level)).first;
    return h_.emplace(key, cohomology(c->second, q)).first->second;
  }

  RingPresentation ring_;
  std::vector<Poly> seq_;
  std::map<int, BoundedComplex> k_;
  std::map<std::pair<int, int>, Subquotient> h_;
};

struct Fail {
  std::string what;
};

void require(bool ok, const std::string& what) {
  if (!ok) throw Fail{what};
}

std::string at(int q, int i) { return "H^" + std::to_string(q) + " witness j(" + std::to_string(i) + ")"; }

void check_claim(const TorsionClaim& c, const RingPresentation& ring, const Poly& element, const std::string& where) {
  require(c.ring.same_as(ring), where + ": torsion claim over the wrong ring");
  require(equal(c.ring.reduce(c.element), ring.reduce(element)), where + ": torsion claim for the wrong element");
  require(check_torsion_bound(ModulePresentation::free(ring, 1), element, c.t, Vector{c.witness}),
          where + ": torsion bound " + std::to_string(c.t) + " does not replay");
}

std::vector<Poly> concatenation(const std::vector<ChartRecord>& charts) {
  std::vector<Poly> out;
  for (const auto& ch : charts) out.insert(out.end(), ch.generators.begin(), ch.generators.end());
  return out;
}

std::string prism_label(bool complete) {
  return complete ? "WPR of I + (p) for a declared complete prism"
                  : "WPR of I + (p) under the stated chart and torsion hypotheses";
}

void replay(const WprCertificate& c);

void check_cover(const WprCertificate& c) {
  require(!c.cover.empty() && c.cover.size() == c.cover_witness.size(), "covering witness has the wrong length");
  Poly sum;
  for (size_t k = 0; k < c.cover.size(); ++k) sum = c.ring.add(sum, c.ring.mul(c.cover_witness[k], c.cover[k]));
  require(equal(c.ring.reduce(sum), c.ring.one()), "covering witness does not sum to 1");
  require(c.charts.size() == c.cover.size(), "one chart per covering element expected");
  for (size_t k = 0; k < c.charts.size(); ++k) {
    require(equal(c.charts[k].s, c.cover[k]), "chart " + std::to_string(k) + " does not match the cover");
  }
}

void replay_glued(const WprCertificate& c) {
  check_cover(c);
  require(same_polys(concatenation(c.charts), c.seq), "sequence is not the concatenation of the chart data");
  const size_t n = c.seq.size();
  for (size_t k = 0; k < c.charts.size(); ++k) {
    const ChartRecord& ch = c.charts[k];
    const std::string where = "chart " + std::to_string(k);
    require(ch.local != nullptr, where + ": missing local certificate");
    const WprCertificate& loc = *ch.local;
    RingPresentation as = localize(c.ring, ch.s);
    require(loc.method == WprMethod::Direct, where + ": local certificate must be DIRECT");
    require(loc.ring.same_as(as), where + ": local ring is not the localization");
    require(same_polys(loc.seq, carry(c.ring, as, c.seq)), where + ": local sequence is not the localized sequence");
    require(loc.bound == c.bound, where + ": local bound differs");
    if (!c.ideal.empty()) {
      require(same_ideal(as, carry(c.ring, as, ch.generators), carry(c.ring, as, c.ideal)),
              where + ": chart data does not generate the ideal locally");
    }
    try {
      replay(loc);
    } catch (const Fail& f) {
      throw Fail{where + ": " + f.what};
    }
  }
  for (size_t d = 0; d < n; ++d) {
    for (int i = 0; i <= c.i_max; ++i) {
      int m = 0;
      for (const auto& ch : c.charts) m = std::max(m, ch.local->degrees[d].witnesses[static_cast<size_t>(i)]);
      require(c.degrees[d].witnesses[static_cast<size_t>(i)] == m,
              at(c.degrees[d].degree, i) + " is not the maximum of the chart witnesses");
    }
  }
}

void replay_quotient(const WprCertificate& c) {
  require(c.seq.size() == 2, "QUOTIENT_THM needs a sequence of length 2");
  const Poly& a = c.seq[0];
  const Poly& b = c.seq[1];
  require(is_regular(c.ring, a), "the first element is not regular");
  require(c.provenance.size() == 1, "QUOTIENT_THM needs the element certificate for the quotient");
  const WprCertificate& sub = c.provenance[0];
  RingPresentation abar = quotient(c.ring, {a});
  require(sub.method == WprMethod::ElementTb, "quotient sub-certificate must be ELEMENT_TB");
  require(sub.bound == c.bound, "quotient sub-certificate bound differs");
  require(sub.ring.same_as(abar), "quotient sub-certificate over the wrong ring");
  require(sub.seq.size() == 1 && equal(sub.seq[0], carry(c.ring, abar, b)), "quotient sub-certificate for the wrong element");
  try {
    replay(sub);
  } catch (const Fail& f) {
    throw Fail{"quotient: " + f.what};
  }
  const int lbar = sub.torsion.at(0).t;
  require(static_cast<int>(c.torsion.size()) == c.i_max + 1, "one torsion claim per level expected");
  for (int i = 0; i <= c.i_max; ++i) {
    const TorsionClaim& tc = c.torsion[static_cast<size_t>(i)];
    const std::string where = "level " + std::to_string(i);
    RingPresentation ai = quotient(c.ring, {c.ring.pow(a, i)});
    if (tc.bound_form) {
      require(tc.t == i * lbar, where + ": bound-form torsion claim is not i * l");
      require(tc.ring.same_as(ai) && equal(tc.element, carry(c.ring, ai, b)), where + ": torsion claim mismatch");
    } else {
      check_claim(tc, ai, carry(c.ring, ai, b), where);
    }
    require(c.degree(-2).witnesses[static_cast<size_t>(i)] == i, at(-2, i) + " must equal i");
    require(c.degree(-1).witnesses[static_cast<size_t>(i)] == i + tc.t, at(-1, i) + " must equal i + tb");
  }
}

void replay_prism(const WprCertificate& c) {
  require(c.label == prism_label(c.declared_complete), "prism label does not match the completeness flag");
  mpz_class p = c.prime.size() == 1 && c.prime[0].mono.is_one() ? c.prime[0].coef.get_num() : mpz_class(0);
  require(p >= 2 && mpz_probab_prime_p(p.get_mpz_t(), 30) > 0, "p is not a prime constant");
  check_cover(c);
  require(c.provenance.size() == 1, "PRISM needs the glued certificate");
  const WprCertificate& glued = c.provenance[0];
  require(glued.method == WprMethod::Glued && glued.ring.same_as(c.ring), "glued sub-certificate mismatch");
  require(glued.bound == c.bound, "glued sub-certificate bound differs");
  std::vector<Poly> ip = c.ideal;
  ip.push_back(c.prime);
  require(same_polys(glued.ideal, ip), "glued certificate is not for I + (p)");
  require(same_polys(glued.cover, c.cover), "glued certificate uses another cover");
  require(same_polys(glued.seq, c.seq), "glued certificate is for another sequence");
  for (size_t d = 0; d < c.degrees.size(); ++d) {
    require(glued.degrees[d].witnesses == c.degrees[d].witnesses, "witness table differs from the glued certificate");
  }
  RingPresentation abar = quotient(c.ring, c.ideal);
  for (size_t k = 0; k < c.charts.size(); ++k) {
    const ChartRecord& ch = c.charts[k];
    const std::string where = "chart " + std::to_string(k);
    require(ch.generators.size() == 1, where + ": one chart generator expected");
    require(same_polys(glued.charts[k].generators, {ch.generators[0], c.prime}), where + ": glued chart data mismatch");
    RingPresentation as = localize(c.ring, ch.s);
    Poly bk = carry(c.ring, as, ch.generators[0]);
    require(is_regular(as, bk), where + ": chart generator is not regular");
    require(same_ideal(as, {bk}, carry(c.ring, as, c.ideal)), where + ": chart generator does not generate I locally");
    require(ch.torsion.has_value(), where + ": missing p-torsion claim");
    RingPresentation abs = localize(abar, carry(c.ring, abar, ch.s));
    check_claim(*ch.torsion, abs, carry(c.ring, abs, c.prime), where);
    require(ch.local != nullptr && ch.local->method == WprMethod::QuotientThm, where + ": missing quotient certificate");
    require(ch.local->ring.same_as(as) && same_polys(ch.local->seq, {bk, carry(c.ring, as, c.prime)}),
            where + ": quotient certificate for the wrong data");
    require(ch.local->bound == c.bound, where + ": quotient certificate bound differs");
    try {
      replay(*ch.local);
    } catch (const Fail& f) {
      throw Fail{where + ": " + f.what};
    }
  }
  try {
    replay(glued);
  } catch (const Fail& f) {
    throw Fail{"glued: " + f.what};
  }
}

void replay(const WprCertificate& c) {
  const int n = static_cast<int>(c.seq.size());
  require(n >= 1, "empty sequence");
  require(c.bound >= 1, "bound must be positive");
  require(c.i_max == witness_range(c.bound), "i_max must be floor(bound / 2)");
  require(static_cast<int>(c.degrees.size()) == n, "one witness table per negative degree expected");
  for (int k = 0; k < n; ++k) {
    const auto& d = c.degrees[static_cast<size_t>(k)];
    require(d.degree == -n + k, "witness tables must cover degrees -n .. -1 in order");
    require(d.determined && d.i_max == c.i_max && static_cast<int>(d.witnesses.size()) == c.i_max + 1,
            "witness table for H^" + std::to_string(d.degree) + " is incomplete");
  }
  switch (c.method) {
    case WprMethod::Direct: break;
    case WprMethod::ElementTb: {
      require(n == 1 && c.torsion.size() == 1 && !c.torsion[0].bound_form, "ELEMENT_TB needs one element and one claim");
      check_claim(c.torsion[0], c.ring, c.seq[0], "element");
      for (int i = 0; i <= c.i_max; ++i) {
        require(c.degrees[0].witnesses[static_cast<size_t>(i)] == i + c.torsion[0].t, at(-1, i) + " must equal i + tb");
      }
      break;
    }
    case WprMethod::QuotientThm: replay_quotient(c); break;
    case WprMethod::Glued: replay_glued(c); break;
    case WprMethod::Prism: replay_prism(c); break;
  }
  KoszulCache cache(c.ring, c.seq);
  for (const auto& d : c.degrees) {
    for (int i = 0; i <= c.i_max; ++i) {
      const int j = d.witnesses[static_cast<size_t>(i)];
      require(j >= i, at(d.degree, i) + " is below i");
      require(cache.zero(d.degree, i, j), at(d.degree, i) + ": induced map is not zero");
      if (c.method == WprMethod::Direct && j > i) {
        require(!cache.zero(d.degree, i, j - 1), at(d.degree, i) + " is not minimal");
      }
    }
  }
}

void self_check(const WprCertificate& c) {
  if (auto f = verify_certificate(c)) throw InconsistentCertificate(to_string(c.method) + " certificate: " + *f);
}

WprCertificate table(WprMethod method, const RingPresentation& ring, std::vector<Poly> seq, int bound) {
  WprCertificate c;
  c.method = method;
  c.ring = ring;
  for (auto& p : seq) p = ring.reduce(p);
  c.seq = std::move(seq);
  c.bound = bound;
  c.i_max = witness_range(bound);
  return c;
}

ProZeroCertificate formula(int q, int i_max, int bound, const std::function<int(int)>& j) {
  ProZeroCertificate d;
  d.degree = q;
  d.i_max = i_max;
  d.bound = bound;
  d.determined = true;
  for (int i = 0; i <= i_max; ++i) d.witnesses.push_back(j(i));
  return d;
}

TorsionClaim claim(const RingPresentation& ring, const TorsionBoundReport& r) {
  TorsionClaim c{ring, r.element, *r.tb, {}, false};
  if (!r.strict_witness.empty()) c.witness = r.strict_witness[0];
  return c;
}

}  // namespace

std::optional<std::string> verify_certificate(const WprCertificate& c) {
  try {
    replay(c);
  } catch (const Fail& f) {
    return f.what;
  } catch (const Error& e) {
    return std::string("replay error: ") + e.what();
  }
  return std::nullopt;
}

// --- certifiers --------------------------------------------------------------------

WprOutcome element_wpr(const RingPresentation& ring, const Poly& a, int bound) {
  if (bound < 1) throw PreconditionFailed("element-wpr", "bound must be at least 1");
  TorsionBoundReport r = torsion_bound(ring, a, bound);
  if (!r.tb) return {std::nullopt, Undetermined{"torsion-bound", "annihilator chain did not stabilize", bound}};
  const int t = *r.tb;
  WprCertificate c = table(WprMethod::ElementTb, ring, {a}, bound);
  c.degrees.push_back(formula(-1, c.i_max, bound, [t](int i) { return i + t; }));
  c.torsion.push_back(claim(ring, r));
  self_check(c);
  return {std::move(c), std::nullopt};
}

WprOutcome wpr_sequence_check(const RingPresentation& ring, const std::vector<Poly>& seq, int bound) {
  if (seq.empty()) throw PreconditionFailed("wpr-check", "the sequence must be nonempty");
  if (bound < 1) throw PreconditionFailed("wpr-check", "bound must be at least 1");
  const int n = static_cast<int>(seq.size());
  WprCertificate c = table(WprMethod::Direct, ring, seq, bound);
  Tower tower = koszul_tower(ring, seq, bound);
  for (int q = -n; q <= -1; ++q) {
    ProZeroCertificate d = pro_zero_check(tower, q, c.i_max, bound);
    if (!d.determined) {
      return {std::nullopt, Undetermined{"pro-zero", "H^" + std::to_string(q) + ": no witness for i = " +
                                                          std::to_string(d.frontier) + " within the bound",
                                         bound}};
    }
    c.degrees.push_back(std::move(d));
  }
  self_check(c);
  return {std::move(c), std::nullopt};
}

Lemma54Report lemma54_verify(const RingPresentation& ring, const Poly& a, const Poly& b, int k_max, int bound) {
  if (k_max < 0 || bound < 1) throw PreconditionFailed("lemma54", "need k_max >= 0 and bound >= 1");
  if (!is_regular(ring, a)) throw PreconditionFailed("regularity", ring.format(a) + " is not regular");
  RingPresentation a0 = quotient(ring, {a});
  TorsionBoundReport lr = torsion_bound(a0, carry(ring, a0, b), bound);
  if (!lr.tb) throw PreconditionFailed("torsion-bound", "tb of b in A/(a) is undetermined at the bound");
  Lemma54Report rep{ring.reduce(a), ring.reduce(b), *lr.tb, {}, {}, true};
  for (int k = 0; k <= k_max; ++k) {
    const int cap = (k + 1) * rep.l;
    RingPresentation ak = quotient(ring, {ring.pow(a, k + 1)});
    TorsionBoundReport r = torsion_bound(ak, carry(ring, ak, b), std::max(bound, cap + 1));
    const int tb = r.tb ? *r.tb : -1;
    rep.profile.push_back(tb);
    rep.tight.push_back(tb == cap);
    if (tb < 0 || tb > cap) rep.holds = false;
  }
  return rep;
}

WprOutcome quotient_wpr_certify(const RingPresentation& ring, const Poly& a, const Poly& b, int bound) {
  if (bound < 1) throw PreconditionFailed("quotient-wpr", "bound must be at least 1");
  if (!is_regular(ring, a)) throw PreconditionFailed("regularity", ring.format(ring.reduce(a)) + " is not regular");
  RingPresentation abar = quotient(ring, {a});
  WprOutcome sub = element_wpr(abar, carry(ring, abar, b), bound);
  if (!sub.certified()) throw PreconditionFailed("torsion-bound", "tb of b in A/(a) is undetermined at the bound");
  const int lbar = sub.certificate->torsion[0].t;
  WprCertificate c = table(WprMethod::QuotientThm, ring, {a, b}, bound);
  for (int i = 0; i <= c.i_max; ++i) {
    RingPresentation ai = quotient(ring, {ring.pow(a, i)});
    Poly bi = carry(ring, ai, b);
    TorsionBoundReport r = torsion_bound(ai, bi, bound);
    if (r.tb) {
      c.torsion.push_back(claim(ai, r));
    } else {
      c.torsion.push_back(TorsionClaim{ai, bi, i * lbar, {}, true});
    }
  }
  c.degrees.push_back(formula(-2, c.i_max, bound, [](int i) { return i; }));
  c.degrees.push_back(formula(-1, c.i_max, bound, [&](int i) { return i + c.torsion[static_cast<size_t>(i)].t; }));
  c.provenance.push_back(std::move(*sub.certificate));
  self_check(c);
  return {std::move(c), std::nullopt};
}

CoveringResult covering_check(const RingPresentation& ring, const std::vector<Poly>& s) {
  if (s.empty()) throw PreconditionFailed("covering", "the covering sequence must be nonempty");
  Membership m = ideal_membership(ring, s, ring.one());
  CoveringResult r{m.member, {}};
  if (m.member) {
    for (const auto& w : m.witness) r.witness.push_back(ring.reduce(w));
  }
  return r;
}

WprOutcome glue_wpr(const RingPresentation& ring, const std::vector<Poly>& cover,
                    const std::vector<std::vector<Poly>>& local, const std::vector<Poly>& ideal, int bound) {
  if (bound < 1) throw PreconditionFailed("glue-wpr", "bound must be at least 1");
  if (cover.size() != local.size()) throw PreconditionFailed("glue-wpr", "one chart per covering element expected");
  CoveringResult cov = covering_check(ring, cover);
  if (!cov.covering) throw PreconditionFailed("covering", "the chart elements do not generate the unit ideal");
  WprCertificate c = table(WprMethod::Glued, ring, {}, bound);
  c.cover_witness = cov.witness;
  for (const auto& s : cover) c.cover.push_back(ring.reduce(s));
  for (const auto& g : ideal) c.ideal.push_back(ring.reduce(g));
  for (size_t k = 0; k < cover.size(); ++k) {
    if (local[k].empty()) throw PreconditionFailed("chart-generation", "chart " + std::to_string(k) + " has no generators");
    ChartRecord ch;
    ch.s = c.cover[k];
    for (const auto& g : local[k]) ch.generators.push_back(ring.reduce(g));
    c.seq.insert(c.seq.end(), ch.generators.begin(), ch.generators.end());
    c.charts.push_back(std::move(ch));
  }
  const size_t n = c.seq.size();
  std::vector<std::vector<int>> best(n, std::vector<int>(static_cast<size_t>(c.i_max + 1), 0));
  for (size_t k = 0; k < cover.size(); ++k) {
    ChartRecord& ch = c.charts[k];
    RingPresentation as = localize(ring, ch.s);
    if (!c.ideal.empty() && !same_ideal(as, carry(ring, as, ch.generators), carry(ring, as, c.ideal))) {
      throw PreconditionFailed("chart-generation",
                               "chart " + std::to_string(k) + " data does not generate the ideal after inverting " +
                                   ring.format(ch.s));
    }
    WprOutcome loc = wpr_sequence_check(as, carry(ring, as, c.seq), bound);
    if (!loc.certified()) {
      Undetermined u = *loc.undetermined;
      u.stage = "chart " + std::to_string(k) + ": " + u.stage;
      return {std::nullopt, u};
    }
    for (size_t d = 0; d < n; ++d) {
      for (int i = 0; i <= c.i_max; ++i) {
        auto& m = best[d][static_cast<size_t>(i)];
        m = std::max(m, loc.certificate->degrees[d].witnesses[static_cast<size_t>(i)]);
      }
    }
    ch.local = std::make_shared<WprCertificate>(std::move(*loc.certificate));
  }
  for (size_t d = 0; d < n; ++d) {
    const int q = -static_cast<int>(n) + static_cast<int>(d);
    c.degrees.push_back(formula(q, c.i_max, bound, [&](int i) { return best[d][static_cast<size_t>(i)]; }));
  }
  self_check(c);
  return {std::move(c), std::nullopt};
}

WprOutcome prism_wpr(const PrismPresentation& prism, int bound) {
  const RingPresentation& ring = prism.ring;
  if (bound < 1) throw PreconditionFailed("prism", "bound must be at least 1");
  if (prism.charts.empty()) throw PreconditionFailed("prism", "at least one chart is required");
  Poly p = ring.reduce(prism.prime);
  mpz_class pv = p.size() == 1 && p[0].mono.is_one() ? p[0].coef.get_num() : mpz_class(0);
  if (pv < 2 || mpz_probab_prime_p(pv.get_mpz_t(), 30) == 0) throw PreconditionFailed("prism", "p must be a prime constant");

  std::vector<Poly> cover;
  for (const auto& ch : prism.charts) cover.push_back(ring.reduce(ch.first));
  CoveringResult cov = covering_check(ring, cover);
  if (!cov.covering) throw PreconditionFailed("covering", "the chart elements do not generate the unit ideal");

  WprCertificate c = table(WprMethod::Prism, ring, {}, bound);
  c.prime = p;
  for (const auto& g : prism.ideal) c.ideal.push_back(ring.reduce(g));
  c.cover = cover;
  c.cover_witness = cov.witness;
  c.declared_complete = prism.declared_complete;
  c.label = prism_label(prism.declared_complete);

  RingPresentation abar = quotient(ring, c.ideal);
  std::vector<std::vector<Poly>> local;
  for (size_t k = 0; k < prism.charts.size(); ++k) {
    const std::string chart = "chart " + std::to_string(k);
    ChartRecord ch;
    ch.s = cover[k];
    ch.generators = {ring.reduce(prism.charts[k].second)};
    RingPresentation as = localize(ring, ch.s);
    Poly bk = carry(ring, as, ch.generators[0]);
    if (!is_regular(as, bk)) throw PreconditionFailed("chart-regularity", chart + ": " + ring.format(ch.generators[0]) + " is a zero-divisor");
    if (!same_ideal(as, {bk}, carry(ring, as, c.ideal))) {
      throw PreconditionFailed("chart-generation", chart + ": b does not generate I after inverting s");
    }
    RingPresentation abs = localize(abar, carry(ring, abar, ch.s));
    TorsionBoundReport tr = torsion_bound(abs, carry(ring, abs, p), bound);
    if (!tr.tb) return {std::nullopt, Undetermined{"p-torsion", chart + ": tb of p in (A/I)_s undetermined", bound}};
    ch.torsion = claim(abs, tr);
    WprOutcome q;
    try {
      q = quotient_wpr_certify(as, bk, carry(ring, as, p), bound);
    } catch (const PreconditionFailed& e) {
      throw PreconditionFailed("quotient", chart + ": " + e.what());
    }
    ch.local = std::make_shared<WprCertificate>(std::move(*q.certificate));
    local.push_back({ch.generators[0], p});
    c.charts.push_back(std::move(ch));
  }
  std::vector<Poly> ip = c.ideal;
  ip.push_back(p);
  WprOutcome glued = glue_wpr(ring, cover, local, ip, bound);
  if (!glued.certified()) {
    Undetermined u = *glued.undetermined;
    u.stage = "glue: " + u.stage;
    return {std::nullopt, u};
  }
  c.seq = glued.certificate->seq;
  c.degrees = glued.certificate->degrees;
  c.provenance.push_back(std::move(*glued.certificate));
  self_check(c);
  return {std::move(c), std::nullopt};
}

}  // namespace wpr
