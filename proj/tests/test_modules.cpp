#include <numeric>
#include <set>

#include "doctest.h"
#include "support.hpp"
#include "wpr/errors.hpp"
#include "wpr/homological.hpp"

using namespace wpr;
using namespace wpr::testing;

namespace {

ModulePresentation cyc(const RingPresentation& r, const std::string& gen) { return ModulePresentation::cyclic(r, {P(r, gen)}); }

long card(const ModulePresentation& m) {
  ModuleSize s = m.size();
  REQUIRE(s.finite);
  return s.value.get_si();
}

// All vectors of (Z/n)^k.
std::vector<std::vector<long>> all_vectors(long n, int k) {
  std::vector<std::vector<long>> out{{}};
  for (int i = 0; i < k; ++i) {
    std::vector<std::vector<long>> next;
    for (const auto& v : out) {
      for (long x = 0; x < n; ++x) {
        auto w = v;
        w.push_back(x);
        next.push_back(w);
      }
    }
    out = next;
  }
  return out;
}

}  // namespace

TEST_CASE("kernel examples") {
  auto Z8 = ZZmod(8);
  auto M = ModulePresentation::free(Z8, 1);
  auto k = kernel(ModuleMap::multiplication(M, P(Z8, "2")));
  CHECK(card(k.module) == 2);
  REQUIRE(k.module.rank() == 1);
  CHECK(residue(k.inclusion.matrix()(0, 0)) == 4);
  CHECK(compose(ModuleMap::multiplication(M, P(Z8, "2")), k.inclusion).is_zero());

  auto Qx = poly_ring("QQ", {"x"});
  CHECK(kernel(ModuleMap::multiplication(ModulePresentation::free(Qx, 1), P(Qx, "x"))).module.is_zero());
  auto U = poly_ring("ZZ/4", {"u"});
  CHECK(kernel(ModuleMap::multiplication(ModulePresentation::free(U, 1), P(U, "u - 2"))).module.is_zero());
}

TEST_CASE("cokernel and image examples") {
  auto Z = ZZ();
  auto F = ModulePresentation::free(Z, 1);
  CHECK(card(cokernel(ModuleMap::multiplication(F, P(Z, "2"))).module) == 2);
  CHECK(cokernel(ModuleMap::identity(cyc(Z, "12"))).module.is_zero());

  auto Z8 = ZZmod(8);
  auto f = ModuleMap::multiplication(ModulePresentation::free(Z8, 1), P(Z8, "2"));
  Image im = image(f);
  CHECK(card(im.sub.module) == 4);
  std::set<long> elems;
  for (const auto& v : all_vectors(8, im.sub.module.rank())) {
    Vector x;
    for (long c : v) x.push_back(Z8.constant(c));
    elems.insert(residue(im.sub.inclusion.apply(x)[0]));
  }
  for (long c = 0; c < 8; ++c) {
    Vector x = {Z8.constant(c)};
    CHECK(compose(im.sub.inclusion, im.corestriction).apply(x) == f.apply(x));
  }
  CHECK(elems == std::set<long>{0, 2, 4, 6});
  CHECK(isomorphic(im.sub.module, ModulePresentation::cyclic(Z8, {P(Z8, "4")})) == IsoVerdict::Isomorphic);
}

TEST_CASE("maps over Z/n: kernel, image, cokernel sizes match brute force") {
  std::mt19937 rng(5);
  for (long n : {4L, 6L, 8L, 9L}) {
    auto R = ZZmod(n);
    for (int trial = 0; trial < 8; ++trial) {
      int a = 1 + static_cast<int>(rng() % 3), b = 1 + static_cast<int>(rng() % 3);
      std::vector<std::vector<long>> m(static_cast<size_t>(b), std::vector<long>(static_cast<size_t>(a)));
      Matrix mm(b, a);
      for (int i = 0; i < b; ++i)
        for (int j = 0; j < a; ++j) {
          m[static_cast<size_t>(i)][static_cast<size_t>(j)] = static_cast<long>(rng() % static_cast<unsigned long>(n));
          mm(i, j) = R.constant(m[static_cast<size_t>(i)][static_cast<size_t>(j)]);
        }
      ModuleMap f(ModulePresentation::free(R, a), ModulePresentation::free(R, b), mm);
      long ker = 0;
      std::set<std::vector<long>> img;
      for (const auto& x : all_vectors(n, a)) {
        std::vector<long> y(static_cast<size_t>(b), 0);
        for (int i = 0; i < b; ++i)
          for (int j = 0; j < a; ++j)
            y[static_cast<size_t>(i)] =
                (y[static_cast<size_t>(i)] + m[static_cast<size_t>(i)][static_cast<size_t>(j)] * x[static_cast<size_t>(j)]) % n;
        if (std::all_of(y.begin(), y.end(), [](long v) { return v == 0; })) ++ker;
        img.insert(y);
      }
      long total = 1;
      for (int i = 0; i < b; ++i) total *= n;
      CHECK(card(kernel(f).module) == ker);
      CHECK(card(image(f).sub.module) == static_cast<long>(img.size()));
      CHECK(card(cokernel(f).module) == total / static_cast<long>(img.size()));
    }
  }
}

TEST_CASE("size of Z^2 modulo a full-rank lattice is |det|") {
  std::mt19937 rng(3);
  auto Z = ZZ();
  for (int trial = 0; trial < 30; ++trial) {
    long a = static_cast<long>(rng() % 13) - 6, b = static_cast<long>(rng() % 13) - 6;
    long c = static_cast<long>(rng() % 13) - 6, d = static_cast<long>(rng() % 13) - 6;
    ModulePresentation m(Z, 2, {{Z.constant(a), Z.constant(b)}, {Z.constant(c), Z.constant(d)}});
    long det = std::labs(a * d - b * c);
    if (det == 0) {
      CHECK_FALSE(m.size().finite);
    } else {
      CHECK(card(m) == det);
      CHECK(card(prune(m).module) == det);
    }
  }
}

TEST_CASE("tensor and Hom examples") {
  auto Z = ZZ();
  auto t = tensor_modules(cyc(Z, "4"), cyc(Z, "6"));
  CHECK(card(t) == 2);
  CHECK(isomorphic(t, cyc(Z, "2")) == IsoVerdict::Isomorphic);

  Submodule h = hom_modules(cyc(Z, "4"), cyc(Z, "8"));
  CHECK(card(h.module) == 4);
  std::set<long> images;
  for (long c = 0; c < 4; ++c) {
    Vector x(static_cast<size_t>(h.module.rank()));
    if (!x.empty()) x[0] = Z.constant(c);
    ModuleMap phi = hom_element(cyc(Z, "4"), cyc(Z, "8"), h.inclusion.apply(x));
    images.insert(residue(phi.matrix()(0, 0)));
  }
  CHECK(images == std::set<long>{0, 2, 4, 6});

  auto R = poly_ring("QQ", {"x", "y"}, {"x^2 - y"});
  ModulePresentation M(R, 2, {vecof(R, {"x", "y"}), vecof(R, {"0", "x^3"})});
  auto MA = tensor_modules(M, ModulePresentation::free(R, 1));
  CHECK(isomorphic(MA, M) == IsoVerdict::Isomorphic);
}

TEST_CASE("Hom and tensor of cyclic groups follow the gcd formula") {
  auto Z = ZZ();
  for (long a = 1; a <= 12; ++a) {
    for (long b = 1; b <= 12; b += 1) {
      long g = std::gcd(a, b);
      auto A = cyc(Z, std::to_string(a)), B = cyc(Z, std::to_string(b));
      CHECK(card(tensor_modules(A, B)) == g);
      CHECK(card(hom_modules(A, B).module) == g);
    }
  }
}

TEST_CASE("free resolutions") {
  auto Z = ZZ();
  auto r = free_resolution(cyc(Z, "8"), 2);
  CHECK(r.complete);
  CHECK(r.ranks == std::vector<int>{1, 1});

  auto R = poly_ring("QQ", {"x", "y"});
  auto k = free_resolution(ModulePresentation::cyclic(R, {P(R, "x"), P(R, "y")}), 2);
  CHECK(k.ranks == std::vector<int>{1, 2, 1});
  CHECK(k.complete);

  auto f = free_resolution(ModulePresentation::free(R, 3), 4);
  CHECK(f.complete);
  CHECK(f.length() == 0);

  auto z4 = ZZmod(4);
  auto inf = free_resolution(cyc(z4, "2"), 4);
  CHECK_FALSE(inf.complete);
  CHECK(inf.length() == 4);
  for (int i = 0; i + 1 < inf.length(); ++i) CHECK(multiply(z4, inf.d[i], inf.d[i + 1]).is_zero());
}

TEST_CASE("Tor and Ext examples") {
  auto Qx = poly_ring("QQ", {"x"});
  auto k = cyc(Qx, "x");
  auto t1 = tor(k, k, 1);
  CHECK(t1.size().finite);
  CHECK(t1.size().value == 1);
  CHECK(isomorphic(t1, k) == IsoVerdict::Isomorphic);

  auto R = poly_ring("ZZ", {"t"});
  auto M = ModulePresentation::cyclic(R, {P(R, "t^2"), P(R, "4*t")});
  for (int q = 1; q <= 3; ++q) CHECK(tor(ModulePresentation::free(R, 1), M, q).is_zero());

  auto Z = ZZ();
  CHECK(card(ext(cyc(Z, "4"), ModulePresentation::free(Z, 1), 1)) == 4);
  CHECK(isomorphic(ext(cyc(Z, "4"), ModulePresentation::free(Z, 1), 0), ModulePresentation::zero(Z)) ==
        IsoVerdict::Isomorphic);
}

TEST_CASE("Tor and Ext of cyclic groups against the gcd oracle, and Tor symmetry") {
  auto Z = ZZ();
  for (long a : {2L, 4L, 6L, 9L}) {
    for (long b : {2L, 3L, 8L, 12L}) {
      long g = std::gcd(a, b);
      auto A = cyc(Z, std::to_string(a)), B = cyc(Z, std::to_string(b));
      CHECK(card(tor(A, B, 0)) == g);
      CHECK(card(tor(A, B, 1)) == g);
      CHECK(tor(A, B, 2).is_zero());
      CHECK(card(ext(A, B, 1)) == g);
      for (int q = 0; q <= 2; ++q) CHECK(isomorphic(tor(A, B, q), tor(B, A, q)) == IsoVerdict::Isomorphic);
    }
  }
  auto Z12 = ZZmod(12);
  auto A = cyc(Z12, "2"), B = cyc(Z12, "3");
  for (int q = 0; q <= 2; ++q) CHECK(isomorphic(tor(A, B, q), tor(B, A, q)) == IsoVerdict::Isomorphic);
  auto R = poly_ring("QQ", {"x", "y"});
  auto X = cyc(R, "x"), Y = ModulePresentation::cyclic(R, {P(R, "x^2"), P(R, "y")});
  for (int q = 0; q <= 2; ++q) {
    auto a = tor(X, Y, q), b = tor(Y, X, q);
    CHECK(a.size() == b.size());
  }
}

TEST_CASE("annihilators") {
  auto Z8 = ZZmod(8);
  auto M = ModulePresentation::free(Z8, 1);
  auto a = annihilator(M, P(Z8, "2"), 1);
  CHECK(card(a.module) == 2);
  CHECK(residue(a.inclusion.matrix()(0, 0)) == 4);
  CHECK(annihilator(M, P(Z8, "2"), 0).module.is_zero());
  CHECK(annihilator(cyc(ZZ(), "6"), P(ZZ(), "5"), 0).module.is_zero());

  auto Qx = poly_ring("QQ", {"x"});
  auto N = cyc(Qx, "x^3");
  auto ann = annihilator(N, P(Qx, "x"), 2);
  CHECK(ann.coordinates(vecof(Qx, {"x"})).has_value());
  CHECK_FALSE(ann.coordinates(vecof(Qx, {"1"})).has_value());
  for (const auto& col : ann.inclusion.matrix().columns()) {
    CHECK(present_submodule(N, {vecof(Qx, {"x"})}).coordinates(col).has_value());
  }
  CHECK(ann.module.size().value == 2);
}

TEST_CASE("annihilator chain on Z/n is increasing and matches brute force") {
  for (long n : {8L, 12L, 16L, 18L}) {
    auto R = ZZmod(n);
    auto M = ModulePresentation::free(R, 1);
    for (long a : {2L, 3L, 6L}) {
      for (int i = 0; i <= 5; ++i) {
        long count = 0, power = 1;
        for (int k = 0; k < i; ++k) power = power * a % n;
        for (long x = 0; x < n; ++x) count += (power * x % n == 0) ? 1 : 0;
        auto ai = annihilator(M, R.constant(a), i);
        CHECK(card(ai.module) == count);
        auto aj = annihilator(M, R.constant(a), i + 1);
        for (const auto& col : ai.inclusion.matrix().columns()) CHECK(aj.coordinates(col).has_value());
      }
    }
  }
}

TEST_CASE("projectivity") {
  auto Z = ZZ();
  CHECK_FALSE(is_projective(cyc(Z, "2")));
  CHECK(is_projective(ModulePresentation::free(Z, 3)));
  CHECK(is_projective(cyc(ZZmod(6), "2")));
  CHECK_FALSE(is_projective(cyc(ZZmod(4), "2")));
  auto R = poly_ring("QQ", {"x"});
  CHECK(is_projective(ModulePresentation::free(R, 2)));
  CHECK_FALSE(is_projective(cyc(R, "x")));
  CHECK(is_projective(ModulePresentation(R, 2, {vecof(R, {"1", "x"})})));
  auto S = poly_ring("QQ", {"x"}, {"x^2 - x"});
  CHECK(is_projective(cyc(S, "x")));
}

TEST_CASE("pruning yields mutually inverse maps") {
  auto R = poly_ring("ZZ", {"t"});
  ModulePresentation m(R, 3, {vecof(R, {"1", "t", "2"}), vecof(R, {"0", "3", "t^2"}), vecof(R, {"0", "0", "4"})});
  Pruned p = prune(m);
  CHECK(p.module.rank() < 3);
  auto back = compose(p.from, p.to);
  for (int i = 0; i < 3; ++i) {
    Vector e = unit_vector(R, 3, i);
    CHECK(back.apply(e) == m.reduce(e));
  }
  CHECK(compose(p.to, p.from) == ModuleMap::identity(p.module));
}

TEST_CASE("ill-defined maps are rejected") {
  auto Z = ZZ();
  CHECK_THROWS_AS(ModuleMap(cyc(Z, "4"), cyc(Z, "6"), mat(Z, {{"1"}})), InvariantViolation);
  CHECK_NOTHROW(ModuleMap(cyc(Z, "4"), cyc(Z, "6"), mat(Z, {{"3"}})));
}

TEST_CASE("hom_maps composes on both sides") {
  auto Z = ZZ();
  auto A = cyc(Z, "4"), B = cyc(Z, "8");
  ModuleMap f(B, A, mat(Z, {{"1"}}));
  ModuleMap g(A, A, mat(Z, {{"3"}}));
  auto hm = hom_maps(f, g);
  CHECK(card(hm.source()) == 4);
  CHECK(card(hm.target()) == 4);
  CHECK(is_isomorphism(hm));
  CHECK_FALSE(is_isomorphism(hom_maps(f, ModuleMap(A, A, mat(Z, {{"2"}})))));
}
