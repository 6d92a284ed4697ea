#include <numeric>

#include "doctest.h"
#include "support.hpp"
#include "wpr/adic.hpp"
#include "wpr/errors.hpp"

using namespace wpr;
using namespace wpr::testing;

namespace {

std::vector<Poly> seq(const RingPresentation& r, std::vector<std::string> xs) {
  std::vector<Poly> out;
  for (const auto& x : xs) out.push_back(r.parse(x));
  return out;
}

long sz(const ModuleSize& s) {
  REQUIRE(s.finite);
  return s.value.get_si();
}
long sz(const ModulePresentation& m) { return sz(m.size()); }

ModulePresentation cyc(const RingPresentation& r, std::vector<std::string> ideal) {
  return ModulePresentation::cyclic(r, seq(r, std::move(ideal)));
}

long ipow(long a, int k) {
  long out = 1;
  for (int i = 0; i < k; ++i) out *= a;
  return out;
}

// |{x in Z/n : a^k x = 0 for some k <= 12}|.
long brute_torsion(long n, long a) {
  long count = 0;
  for (long x = 0; x < n; ++x) {
    long y = x;
    bool hit = y % n == 0;
    for (int k = 0; k < 12 && !hit; ++k) {
      y = (y * a) % n;
      hit = y == 0;
    }
    if (hit) ++count;
  }
  return count;
}

}  // namespace

TEST_CASE("ideal powers") {
  auto R = poly_ring("QQ", {"x", "y"});
  CHECK(ideal_power(R, seq(R, {"x", "y"}), 0).size() == 1);
  CHECK(ideal_power(R, seq(R, {"x", "y"}), 2).size() == 3);
  CHECK(ideal_power(R, seq(R, {"x", "y", "x+y"}), 3).size() == 10);
}

TEST_CASE("gamma examples") {
  auto Z = ZZ();
  auto m = cyc(Z, {"12"});
  auto g = gamma(m, seq(Z, {"2"}), 4);
  REQUIRE(g.determined);
  CHECK(sz(g.value.module) == 4);
  for (long x = 0; x < 12; ++x) {
    bool in = g.value.coordinates(Vector{Z.constant(x)}).has_value();
    CHECK(in == (x % 3 == 0));
  }

  auto R = poly_ring("QQ", {"x"});
  auto free = gamma(ModulePresentation::free(R, 2), seq(R, {"x"}), 4);
  REQUIRE(free.determined);
  CHECK(free.value.module.is_zero());

  auto t = cyc(R, {"x^3"});
  auto gt = gamma(t, seq(R, {"x"}), 4);
  REQUIRE(gt.determined);
  CHECK(gt.stabilized_at == 3);
  CHECK(sz(gt.value.module) == 3);
  CHECK(is_surjective(gt.value.inclusion));

  auto g1 = gamma(t, seq(R, {"x"}), 2);
  CHECK_FALSE(g1.determined);
  CHECK(g1.chain.size() == 3);

  CHECK_THROWS_AS(gamma(t, seq(R, {"x"}), 0), PreconditionFailed);
}

TEST_CASE("gamma over Z/n matches brute force") {
  auto Z = ZZ();
  for (long n = 2; n <= 30; ++n) {
    for (long a = 2; a <= 6; ++a) {
      auto g = gamma(cyc(Z, {std::to_string(n)}), seq(Z, {std::to_string(a)}), 6);
      REQUIRE(g.determined);
      CHECK(sz(g.value.module) == brute_torsion(n, a));
      for (int k = 0; k <= 6; ++k) {
        long count = 0;
        for (long x = 0; x < n; ++x) count += (x * ipow(a, k)) % n == 0;
        CHECK(sz(g.chain[static_cast<size_t>(k)]) == count);
      }
    }
  }
}

TEST_CASE("gamma properties") {
  auto R = poly_ring("QQ", {"x", "y"});
  std::vector<ModulePresentation> corpus = {
      cyc(R, {"x^2*y", "y^3"}), cyc(R, {"x^2"}), ModulePresentation(R, 2, {vecof(R, {"x", "y"}), vecof(R, {"0", "x^2"})}),
      ModulePresentation::free(R, 1)};
  auto s = seq(R, {"x", "y"});
  for (const auto& m : corpus) {
    auto g = gamma(m, s, 5);
    REQUIRE(g.determined);
    auto gg = gamma(g.value.module, s, 5);
    REQUIRE(gg.determined);
    CHECK(is_surjective(gg.value.inclusion));
    auto rep = torsion_tower(m, s, 5).degree(0);
    REQUIRE(rep.verdict == TowerVerdict::Stabilized);
    CHECK(isomorphic(rep.value, g.value.module) != IsoVerdict::NotIsomorphic);
    CHECK(rep.value.size() == g.value.module.size());
  }
}

TEST_CASE("lambda_system examples") {
  auto Z = ZZ();
  auto s = lambda_system(cyc(Z, {"12"}), seq(Z, {"2"}), 3);
  std::vector<long> sizes;
  for (const auto& x : s.sizes()) sizes.push_back(sz(x));
  CHECK(sizes == std::vector<long>{2, 4, 4, 4});
  CHECK(s.killed);
  CHECK(s.bijective);
  CHECK(s.maps.size() == 3);
  CHECK(is_isomorphism(s.maps[2]));
  CHECK_FALSE(is_isomorphism(s.maps[0]));

  auto R = poly_ring("QQ", {"x"});
  auto p = lambda_system(ModulePresentation::free(R, 1), seq(R, {"x"}), 3);
  for (int k = 0; k <= 3; ++k) {
    CHECK(sz(p.modules[static_cast<size_t>(k)]) == k + 1);
    CHECK(p.modules[static_cast<size_t>(k)].is_zero_element(Vector{R.pow(R.variable(0), k + 1)}));
    CHECK_FALSE(p.modules[static_cast<size_t>(k)].is_zero_element(Vector{R.pow(R.variable(0), k)}));
  }
  auto z = lambda_system(ModulePresentation::zero(R), seq(R, {"x"}), 2);
  for (const auto& m : z.modules) CHECK(m.is_zero());
  CHECK_THROWS_AS(lambda_system(z.modules[0], seq(R, {"x"}), -1), PreconditionFailed);
}

TEST_CASE("lambda_system over Z/n matches gcd oracle") {
  auto Z = ZZ();
  for (long n = 2; n <= 24; ++n) {
    for (long a = 2; a <= 5; ++a) {
      auto s = lambda_system(cyc(Z, {std::to_string(n)}), seq(Z, {std::to_string(a)}), 3);
      for (int k = 0; k <= 3; ++k) CHECK(sz(s.modules[static_cast<size_t>(k)]) == std::gcd(n, ipow(a, k + 1)));
    }
  }
}

TEST_CASE("lambda_system idempotence at precision") {
  auto R = poly_ring("QQ", {"x", "y"});
  auto s = seq(R, {"x", "y"});
  std::vector<ModulePresentation> corpus = {ModulePresentation::free(R, 1), cyc(R, {"x*y"}),
                                            ModulePresentation(R, 2, {vecof(R, {"y", "x"})})};
  for (const auto& m : corpus) {
    const int K = 3;
    auto a = lambda_system(m, s, K);
    auto b = lambda_system(a.modules[K], s, K);
    for (int k = 0; k <= K; ++k) {
      const auto& ma = a.modules[static_cast<size_t>(k)];
      const auto& mb = b.modules[static_cast<size_t>(k)];
      CHECK(ma.size() == mb.size());
      ModuleMap id(ma, mb, Matrix::identity(R, m.rank()));
      CHECK(is_isomorphism(id));
    }
  }
}

TEST_CASE("adic flatness examples") {
  auto R = poly_ring("QQ", {"x"});
  auto v = is_adically_flat(cyc(R, {"x"}), seq(R, {"x"}), 2);
  CHECK_FALSE(v.flat);
  CHECK(v.witness == "Tor");
  CHECK(v.witness_q == 1);
  CHECK(sz(v.witness_module) == 1);

  auto f = is_adically_flat(ModulePresentation::free(R, 2), seq(R, {"x"}), 3);
  CHECK(f.flat);
  CHECK(f.str() == "FLAT_UP_TO(3)");

  auto Z = ZZ();
  CHECK(is_adically_flat(cyc(Z, {"3"}), seq(Z, {"2"}), 2).flat);
  auto n2 = is_adically_flat(cyc(Z, {"4"}), seq(Z, {"2"}), 2);
  CHECK_FALSE(n2.flat);
  CHECK(sz(n2.witness_module) == 2);
  CHECK_THROWS_AS(is_adically_flat(cyc(Z, {"3"}), seq(Z, {"2"}), 0), PreconditionFailed);

  auto Z6 = ZZmod(6);
  CHECK(is_adically_flat(cyc(Z6, {"2"}), seq(Z6, {"3"}), 2).flat);
}

TEST_CASE("adic flatness: the level-0 test agrees with levels k <= 3") {
  auto Z = ZZ();
  auto Q = poly_ring("QQ", {"x", "y"});
  struct Case {
    ModulePresentation m;
    std::vector<Poly> s;
  };
  std::vector<Case> corpus = {
      {cyc(Z, {"3"}), seq(Z, {"2"})},
      {cyc(Z, {"4"}), seq(Z, {"2"})},
      {cyc(Z, {"12"}), seq(Z, {"3"})},
      {ModulePresentation::free(Z, 2), seq(Z, {"5"})},
      {cyc(Q, {"x"}), seq(Q, {"x"})},
      {cyc(Q, {"x-1"}), seq(Q, {"x"})},
      {cyc(Q, {"x*y"}), seq(Q, {"x", "y"})},
      {ModulePresentation::free(Q, 1), seq(Q, {"x", "y"})},
      {cyc(ZZmod(6), {"2"}), seq(ZZmod(6), {"3"})},
  };
  for (const auto& c : corpus) {
    bool base = is_adically_flat(c.m, c.s, 2).flat;
    for (int k = 1; k <= 3; ++k) CHECK(adic_flatness_at(c.m, c.s, k, 2).flat == base);
  }
}

TEST_CASE("idealistic vs sequential comparison examples") {
  auto Z = ZZ();
  auto c = compare_idealistic_sequential(cyc(Z, {"12"}), seq(Z, {"2"}), 0, 4);
  REQUIRE(c.determined);
  CHECK(c.isomorphic);
  CHECK(sz(c.value) == 4);
  CHECK(c.idealistic == c.sequential);

  auto R = poly_ring("QQ", {"x"});
  auto t = compare_idealistic_sequential(cyc(R, {"x^2"}), seq(R, {"x"}), 0, 4);
  REQUIRE(t.determined);
  CHECK(t.isomorphic);
  CHECK(sz(t.value) == 2);

  auto S = poly_ring("QQ", {"x", "y"});
  auto h1 = compare_idealistic_sequential(ModulePresentation::free(S, 1), seq(S, {"x", "y"}), 1, 4);
  REQUIRE(h1.determined);
  CHECK(h1.isomorphic);
  for (int k = 0; k <= 4; ++k) {
    CHECK(sz(h1.idealistic[static_cast<size_t>(k)]) == 0);
    CHECK(sz(h1.sequential[static_cast<size_t>(k)]) == 0);
  }

  auto g = compare_idealistic_sequential(ModulePresentation::free(R, 1), seq(R, {"x"}), 1, 3);
  CHECK_FALSE(g.determined);
  for (int k = 0; k <= 3; ++k) CHECK(sz(g.idealistic[static_cast<size_t>(k)]) == k);
}

TEST_CASE("comparison over Z: Ext oracles and level-wise isomorphisms") {
  auto Z = ZZ();
  for (long n : {4L, 6L, 12L, 18L, 40L}) {
    for (long a : {2L, 3L}) {
      auto m = cyc(Z, {std::to_string(n)});
      auto s = seq(Z, {std::to_string(a)});
      auto c0 = compare_idealistic_sequential(m, s, 0, 5);
      auto c1 = compare_idealistic_sequential(m, s, 1, 5);
      for (int k = 0; k <= 5; ++k) {
        long hom = std::gcd(n, ipow(a, k));
        CHECK(sz(c0.idealistic[static_cast<size_t>(k)]) == hom);
        CHECK(sz(c1.idealistic[static_cast<size_t>(k)]) == hom);
        CHECK(c0.comparison_iso[static_cast<size_t>(k)]);
        CHECK(c1.comparison_iso[static_cast<size_t>(k)]);
      }
      REQUIRE(c0.determined);
      CHECK(c0.isomorphic);
      CHECK(sz(c0.value) == brute_torsion(n, a));
    }
  }
}
