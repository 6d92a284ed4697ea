#include "wpr/ring.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "wpr/errors.hpp"
#include "wpr/linear_system.hpp"

namespace wpr {

BaseCoefficients BaseCoefficients::integers_mod(const mpz_class& n) {
  if (n < 2) throw TierUnsupported("ZZ/" + n.get_str() + ": modulus must be at least 2");
  return {BaseKind::IntMod, n};
}

BaseCoefficients BaseCoefficients::prime_field(const mpz_class& p) {
  CoeffDomain::prime_field(p);  // validates primality
  return {BaseKind::PrimeField, p};
}

BaseCoefficients BaseCoefficients::parse(const std::string& text) {
  std::string t;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) t += c;
  }
  if (t == "ZZ" || t == "Z") return integers();
  if (t == "QQ" || t == "Q") return rationals();
  auto parse_int = [&](const std::string& s) {
    mpz_class v;
    if (s.empty() || v.set_str(s, 10) != 0) throw ParseError("bad modulus in coefficient ring '" + text + "'");
    return v;
  };
  if (t.rfind("ZZ/", 0) == 0) return integers_mod(parse_int(t.substr(3)));
  if (t.rfind("GF(", 0) == 0 && t.back() == ')') return prime_field(parse_int(t.substr(3, t.size() - 4)));
  throw ParseError("unknown coefficient ring '" + text + "'");
}

std::string BaseCoefficients::str() const {
  switch (kind) {
    case BaseKind::Int: return "ZZ";
    case BaseKind::IntMod: return "ZZ/" + modulus.get_str();
    case BaseKind::Rationals: return "QQ";
    case BaseKind::PrimeField: return "GF(" + modulus.get_str() + ")";
  }
  return "?";
}

struct RingPresentation::Data {
  RingTier tier;
  BaseCoefficients base;
  std::vector<std::string> vars;
  MonomialOrder order;
  std::vector<Poly> ideal;
  PolyContext ctx;
  GroebnerBasis gb;
  bool zero = false;
  mpz_class characteristic = 0;
};

namespace {

CoeffDomain engine_domain(const BaseCoefficients& base) {
  switch (base.kind) {
    case BaseKind::Int:
    case BaseKind::IntMod: return CoeffDomain::integers();
    case BaseKind::Rationals: return CoeffDomain::rationals();
    case BaseKind::PrimeField: return CoeffDomain::prime_field(base.modulus);
  }
  return CoeffDomain::integers();
}

}  // namespace

RingPresentation RingPresentation::build(RingTier tier, const BaseCoefficients& base, std::vector<std::string> variables,
                                         MonomialOrder order, std::vector<Poly> ideal) {
  for (size_t i = 0; i < variables.size(); ++i) {
    const auto& v = variables[i];
    if (v.empty() || !(std::isalpha(static_cast<unsigned char>(v[0])) || v[0] == '_')) {
      throw ParseError("invalid variable name '" + v + "'");
    }
    for (size_t j = 0; j < i; ++j) {
      if (variables[j] == v) throw ParseError("duplicate variable name '" + v + "'");
    }
  }
  auto d = std::make_shared<Data>();
  d->tier = tier;
  d->base = base;
  d->vars = std::move(variables);
  d->order = order;
  d->ctx = PolyContext{engine_domain(base), static_cast<int>(d->vars.size()), order};
  std::vector<ModVec> gens;
  for (auto& g : ideal) {
    g = vec::normalize(d->ctx, std::move(g));
    if (!g.empty()) gens.push_back(g);
  }
  d->ideal = std::move(ideal);
  d->ideal.erase(std::remove_if(d->ideal.begin(), d->ideal.end(), [](const Poly& p) { return p.empty(); }),
                 d->ideal.end());
  if (base.kind == BaseKind::IntMod) gens.push_back(vec::constant(d->ctx, Coef(base.modulus)));
  d->gb = GroebnerBasis(d->ctx, std::move(gens));
  for (const auto& g : d->gb.elements()) {
    if (g.size() == 1 && g.front().mono.is_one()) {
      if (d->ctx.coeffs.is_field() || g.front().coef == 1) {
        d->zero = true;
        d->characteristic = 1;
      } else {
        d->characteristic = g.front().coef.get_num();
      }
    }
  }
  return RingPresentation(std::move(d));
}

RingPresentation RingPresentation::integers() { return build(RingTier::Int, BaseCoefficients::integers(), {}, MonomialOrder::DegRevLex, {}); }

RingPresentation RingPresentation::integers_mod(const mpz_class& n) {
  return build(RingTier::IntMod, BaseCoefficients::integers_mod(n), {}, MonomialOrder::DegRevLex, {});
}

RingPresentation RingPresentation::polynomial(const BaseCoefficients& base, std::vector<std::string> variables,
                                              MonomialOrder order, std::vector<Poly> ideal) {
  if (base.kind == BaseKind::IntMod) {
    RingPresentation ambient = build(RingTier::PolyQuot, base, variables, order, {});
    for (auto& g : ideal) g = ambient.reduce(g);
  }
  return build(RingTier::PolyQuot, base, std::move(variables), order, std::move(ideal));
}

RingPresentation RingPresentation::polynomial(const BaseCoefficients& base, std::vector<std::string> variables,
                                              MonomialOrder order, const std::vector<std::string>& ideal) {
  RingPresentation ambient = build(RingTier::PolyQuot, base, variables, order, {});
  std::vector<Poly> gens;
  for (const auto& g : ideal) gens.push_back(ambient.parse(g));
  return build(RingTier::PolyQuot, base, std::move(variables), order, std::move(gens));
}

RingTier RingPresentation::tier() const { return d_->tier; }
const BaseCoefficients& RingPresentation::base() const { return d_->base; }
const std::vector<std::string>& RingPresentation::variables() const { return d_->vars; }
MonomialOrder RingPresentation::order() const { return d_->order; }
const std::vector<Poly>& RingPresentation::ideal() const { return d_->ideal; }
const GroebnerBasis& RingPresentation::basis() const { return d_->gb; }
const PolyContext& RingPresentation::context() const { return d_->ctx; }
bool RingPresentation::is_zero_ring() const { return d_->zero; }
const mpz_class& RingPresentation::characteristic() const { return d_->characteristic; }

Poly RingPresentation::reduce(Poly p) const { return d_->gb.reduce(std::move(p)); }

Poly RingPresentation::constant(const Coef& c) const { return reduce(vec::constant(d_->ctx, c)); }

Poly RingPresentation::variable(int index) const {
  return reduce({Term{0, Monomial::variable(d_->ctx.nvars, index), Coef(1)}});
}

Poly RingPresentation::add(const Poly& a, const Poly& b) const { return reduce(vec::add(d_->ctx, a, b)); }
Poly RingPresentation::sub(const Poly& a, const Poly& b) const { return reduce(vec::sub(d_->ctx, a, b)); }
Poly RingPresentation::neg(const Poly& a) const { return reduce(vec::scale(d_->ctx, a, Coef(-1))); }
Poly RingPresentation::mul(const Poly& a, const Poly& b) const {
  if (a.empty() || b.empty()) return {};
  return reduce(vec::poly_mul(d_->ctx, a, b));
}

Poly RingPresentation::pow(const Poly& a, int e) const {
  if (e < 0) throw std::invalid_argument("negative exponent");
  Poly result = one();
  Poly base = reduce(a);
  while (e > 0) {
    if (e & 1) result = mul(result, base);
    e >>= 1;
    if (e > 0) base = mul(base, base);
  }
  return result;
}

bool RingPresentation::is_obvious_unit(const Poly& p) const {
  if (p.size() != 1 || !p.front().mono.is_one()) return false;
  const Coef& c = p.front().coef;
  if (d_->ctx.coeffs.is_field()) return true;
  if (d_->characteristic == 0) return c == 1 || c == -1;
  mpz_class g;
  mpz_class n = c.get_num();
  mpz_gcd(g.get_mpz_t(), n.get_mpz_t(), d_->characteristic.get_mpz_t());
  return g == 1;
}

Poly RingPresentation::obvious_inverse(const Poly& p) const {
  const Coef& c = p.front().coef;
  if (d_->ctx.coeffs.is_field()) return constant(d_->ctx.coeffs.inverse(c));
  if (d_->characteristic == 0) return constant(c);
  mpz_class inv;
  mpz_class n = c.get_num();
  mpz_invert(inv.get_mpz_t(), n.get_mpz_t(), d_->characteristic.get_mpz_t());
  return constant(Coef(inv));
}

bool RingPresentation::is_unit(const Poly& p) const {
  if (is_zero_ring()) return true;
  if (is_obvious_unit(p)) return true;
  return ideal_membership(*this, {p}, one()).member;
}

// --- literal parsing -------------------------------------------------------

namespace {

class PolyParser {
 public:
  PolyParser(const RingPresentation& ring, std::string_view text) : ring_(ring), text_(text) {}

  Poly run() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError("empty polynomial literal");
    Poly p = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected character");
    return p;
  }

 private:
  const PolyContext& ctx() const { return ring_.context(); }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at position " + std::to_string(pos_) + " in '" + std::string(text_) + "'");
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  Poly expr() {
    Poly acc;
    bool first = true;
    while (true) {
      skip_ws();
      int sign = 1;
      if (peek('+') || peek('-')) {
        sign = text_[pos_] == '-' ? -1 : 1;
        ++pos_;
      } else if (!first) {
        break;
      }
      Poly t = term();
      acc = sign > 0 ? vec::add(ctx(), acc, t) : vec::sub(ctx(), acc, t);
      first = false;
      skip_ws();
      if (!(peek('+') || peek('-'))) break;
    }
    return acc;
  }

  Poly term() {
    Poly acc = factor();
    while (peek('*')) {
      ++pos_;
      acc = vec::poly_mul(ctx(), acc, factor());
    }
    return acc;
  }

  Poly factor() {
    Poly base = atom();
    if (peek('^')) {
      ++pos_;
      skip_ws();
      size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      int e = std::stoi(std::string(text_.substr(start, pos_ - start)));
      Poly r = vec::constant(ctx(), Coef(1));
      for (int k = 0; k < e; ++k) r = vec::poly_mul(ctx(), r, base);
      return r;
    }
    return base;
  }

  Poly atom() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Poly p = expr();
      if (!peek(')')) fail("expected ')'");
      ++pos_;
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      mpz_class num(std::string(text_.substr(start, pos_ - start)));
      mpz_class den = 1;
      if (pos_ < text_.size() && text_[pos_] == '/') {
        ++pos_;
        size_t ds = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (ds == pos_) fail("expected denominator");
        den = mpz_class(std::string(text_.substr(ds, pos_ - ds)));
        if (den == 0) fail("zero denominator");
      }
      Coef value(num, den);
      value.canonicalize();
      const BaseKind k = ring_.base().kind;
      bool ok = true;
      if (k == BaseKind::Int || k == BaseKind::IntMod) ok = is_integral(value);
      if (k == BaseKind::PrimeField) ok = ctx().coeffs.contains(value);
      if (!ok) {
        throw UnsupportedCoefficient("coefficient " + value.get_str() + " is not in " + ring_.base().str());
      }
      return vec::constant(ctx(), value);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      std::string name(text_.substr(start, pos_ - start));
      const auto& vars = ring_.variables();
      auto it = std::find(vars.begin(), vars.end(), name);
      if (it == vars.end()) throw UnknownVariable("unknown variable '" + name + "' in '" + std::string(text_) + "'");
      int idx = static_cast<int>(it - vars.begin());
      return {Term{0, Monomial::variable(ctx().nvars, idx), Coef(1)}};
    }
    fail("unexpected character");
  }

  const RingPresentation& ring_;
  std::string_view text_;
  size_t pos_ = 0;
};

}  // namespace

Poly RingPresentation::parse(std::string_view text) const { return reduce(PolyParser(*this, text).run()); }

std::string RingPresentation::format(const Poly& p) const {
  if (p.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : p) {
    Coef c = t.coef;
    bool negative = sgn(c) < 0;
    if (negative) c = -c;
    if (first) {
      if (negative) os << "-";
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    bool unit = c == 1;
    if (!unit || t.mono.is_one()) {
      os << c.get_str();
      if (!t.mono.is_one()) os << "*";
    }
    bool first_var = true;
    for (int i = 0; i < t.mono.nvars(); ++i) {
      int e = t.mono[i];
      if (e == 0) continue;
      if (!first_var) os << "*";
      first_var = false;
      os << d_->vars[static_cast<size_t>(i)];
      if (e > 1) os << "^" << e;
    }
  }
  return os.str();
}

std::string RingPresentation::description() const {
  if (d_->tier != RingTier::PolyQuot) return d_->base.str();
  std::string base = d_->base.str();
  if (d_->base.kind == BaseKind::IntMod) base = "(" + base + ")";
  std::string s = base + "[";
  for (size_t i = 0; i < d_->vars.size(); ++i) s += (i ? "," : "") + d_->vars[i];
  s += "]";
  if (!d_->ideal.empty()) {
    s += "/(";
    for (size_t i = 0; i < d_->ideal.size(); ++i) s += (i ? ", " : "") + format(d_->ideal[i]);
    s += ")";
  }
  return s;
}

bool RingPresentation::same_as(const RingPresentation& other) const {
  if (d_ == other.d_) return true;
  if (!(d_->base == other.d_->base) || d_->vars != other.d_->vars || d_->order != other.d_->order) return false;
  const auto& a = d_->gb.elements();
  const auto& b = other.d_->gb.elements();
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != b[i].size()) return false;
    for (size_t k = 0; k < a[i].size(); ++k) {
      if (a[i][k].mono != b[i][k].mono || a[i][k].coef != b[i][k].coef) return false;
    }
  }
  return true;
}

bool RingElement::operator==(const RingElement& o) const {
  if (!ring_.same_as(o.ring_)) return false;
  if (rep_.size() != o.rep_.size()) return false;
  for (size_t i = 0; i < rep_.size(); ++i) {
    if (rep_[i].mono != o.rep_[i].mono || rep_[i].coef != o.rep_[i].coef) return false;
  }
  return true;
}

RingElement normal_form(const RingPresentation& ring, std::string_view raw) { return {ring, ring.parse(raw)}; }

Membership ideal_membership(const RingPresentation& ring, const std::vector<Poly>& generators, const Poly& candidate) {
  Matrix lhs(1, static_cast<int>(generators.size()));
  for (size_t j = 0; j < generators.size(); ++j) lhs(0, static_cast<int>(j)) = ring.reduce(generators[j]);
  LinearSystem sys(ring, lhs, {});
  auto sol = sys.solve(Vector{ring.reduce(candidate)});
  Membership m;
  if (sol) {
    m.member = true;
    m.witness = std::move(*sol);
  }
  return m;
}

namespace {

std::string fresh_variable(const std::vector<std::string>& vars) {
  auto taken = [&](const std::string& n) { return std::find(vars.begin(), vars.end(), n) != vars.end(); };
  if (!taken("y")) return "y";
  for (int k = 1;; ++k) {
    std::string n = "y" + std::to_string(k);
    if (!taken(n)) return n;
  }
}

Poly extend_vars(const Poly& p, int nvars) {
  Poly out = p;
  for (auto& t : out) t.mono = t.mono.extended(nvars);
  return out;
}

}  // namespace

RingPresentation localize(const RingPresentation& ring, const Poly& s) {
  std::vector<std::string> vars = ring.variables();
  vars.push_back(fresh_variable(vars));
  const int n = static_cast<int>(vars.size());
  BaseCoefficients base = ring.base();
  std::vector<Poly> ideal;
  for (const auto& g : ring.ideal()) ideal.push_back(extend_vars(g, n));
  PolyContext ctx = ring.context();
  ctx.nvars = n;
  Poly sy = vec::shift(ctx, extend_vars(ring.reduce(s), n), Coef(1), Monomial::variable(n, n - 1));
  ideal.push_back(vec::sub(ctx, sy, vec::constant(ctx, Coef(1))));
  return RingPresentation::polynomial(base, std::move(vars), ring.order(), std::move(ideal));
}

RingPresentation quotient(const RingPresentation& ring, const std::vector<Poly>& generators) {
  if (ring.tier() != RingTier::PolyQuot) {
    mpz_class g = ring.base().kind == BaseKind::IntMod ? ring.base().modulus : mpz_class(0);
    for (const auto& p : generators) {
      Poly r = ring.reduce(p);
      if (r.empty()) continue;
      mpz_class c = r.front().coef.get_num();
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    }
    if (g == 0) return ring;
    if (g >= 2) return RingPresentation::integers_mod(g);
    // Zero ring: kept as a flagged presentation rather than an error.
    return RingPresentation::polynomial(BaseCoefficients::integers(), {}, ring.order(),
                                        std::vector<Poly>{vec::constant(ring.context(), Coef(1))});
  }
  std::vector<Poly> ideal = ring.ideal();
  for (const auto& p : generators) ideal.push_back(ring.reduce(p));
  return RingPresentation::polynomial(ring.base(), ring.variables(), ring.order(), std::move(ideal));
}

RingMap::RingMap(RingPresentation source, RingPresentation target, std::vector<Poly> images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
  if (static_cast<int>(images_.size()) != source_.nvars()) {
    throw InvariantViolation("ring map needs one image per source variable");
  }
  for (auto& im : images_) im = target_.reduce(im);
  const BaseKind sk = source_.base().kind;
  const BaseKind tk = target_.base().kind;
  bool coeff_ok = sk == BaseKind::Int || sk == BaseKind::IntMod ||
                  (sk == tk && source_.base().modulus == target_.base().modulus);
  if (!coeff_ok && !target_.is_zero_ring()) {
    throw InvariantViolation("no canonical coefficient map " + source_.base().str() + " -> " + target_.base().str());
  }
  for (const auto& g : source_.basis().elements()) {
    if (!(*this)(g).empty()) {
      throw InvariantViolation("ring map does not kill relation " + source_.format(g));
    }
  }
}

RingMap RingMap::canonical(const RingPresentation& source, const RingPresentation& target) {
  std::vector<Poly> images;
  const auto& tv = target.variables();
  for (const auto& name : source.variables()) {
    auto it = std::find(tv.begin(), tv.end(), name);
    if (it == tv.end()) throw UnknownVariable("target ring has no variable '" + name + "'");
    images.push_back(target.variable(static_cast<int>(it - tv.begin())));
  }
  return RingMap(source, target, std::move(images));
}

Poly RingMap::operator()(const Poly& p) const {
  const PolyContext& tctx = target_.context();
  Poly out;
  for (const auto& t : p) {
    Coef c = t.coef;
    if (!tctx.coeffs.contains(c)) throw UnsupportedCoefficient("coefficient does not map to target");
    Poly term = vec::constant(tctx, c);
    for (int i = 0; i < t.mono.nvars(); ++i) {
      if (t.mono[i] > 0) term = target_.mul(term, target_.pow(images_[static_cast<size_t>(i)], t.mono[i]));
    }
    out = vec::add(tctx, out, term);
  }
  return target_.reduce(out);
}

}  // namespace wpr
