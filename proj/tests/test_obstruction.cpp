#include <algorithm>

#include "cover_fixtures.hpp"
#include "doctest.h"
#include "dtop/degree.hpp"
#include "dtop/errors.hpp"
#include "dtop/obstruction.hpp"
#include "fixtures.hpp"
#include "obstruction_oracles.hpp"

using namespace dtop;
using namespace oracles;

TEST_CASE("sphere target") {
  SphereTarget s1(1);
  CHECK(s1.evaluate({0, 1}) == 1);
  CHECK(s1.evaluate({1, 0}) == -1);
  CHECK(s1.evaluate({1, 2}) == 0);
  CHECK(s1.evaluate({0, 0}) == 0);
  CHECK(s1.basepoint() == 2);
  CHECK_THROWS_AS(SphereTarget(0), ValidationError);
}

TEST_CASE("obstruction of the identity circle on the disk") {
  SphereTarget s1(1);
  auto disk = SimplicialComplex::simplex(2);
  ModelMap f(SimplicialMap(disk.skeleton(1), s1.model(), {{0, 0}, {1, 1}, {2, 2}}), s1);
  IntCochain c = obstruction_cocycle(f, SimplicialPair(disk));
  REQUIRE(c.basis.size() == 1);
  CHECK(c.values[0] == 1);
  ExtensionCertificate cert = is_extensible(c);
  CHECK_FALSE(cert.extensible);
  CHECK(cert.obstructed == std::vector<Simplex>{{0, 1, 2}});

  ModelMap constant(SimplicialMap::constant(disk.skeleton(1), s1.model(), 1), s1);
  IntCochain zero = obstruction_cocycle(constant, SimplicialPair(disk));
  CHECK(zero.is_zero());
  CHECK(is_extensible(zero).extensible);

  // a pointwise test: nonzero values fail even when the class would vanish
  IntCochain fake{1, {{0, 1}, {0, 2}, {1, 2}}, {Int(1), Int(1), Int(0)}};
  CHECK_FALSE(is_extensible(fake).extensible);

  ModelMap missing(SimplicialMap(SimplicialComplex::from_maximal({{0, 1}, {1, 2}}), s1.model(), {{0, 0}, {1, 1}, {2, 2}}), s1);
  CHECK_THROWS_AS(obstruction_cocycle(missing, SimplicialPair(disk)), ValidationError);
}

TEST_CASE("obstruction values are boundary degrees") {
  std::mt19937_64 rng(fixtures::seed());
  for (int n : {1, 2}) {
    SphereTarget t(n);
    for (int trial = 0; trial < 40; ++trial) {
      auto x = fixtures::random_complex(rng, 6, n + 2, 6);
      if (x.dimension() <= n) continue;
      auto f = random_model_map(rng, x.skeleton(n), SimplicialComplex(), t);
      REQUIRE(f);
      IntCochain c = obstruction_cocycle(ModelMap(*f, t), SimplicialPair(x));
      CHECK(coboundary(c, SimplicialPair(x)).is_zero());
      for (std::size_t i = 0; i < c.basis.size(); ++i) {
        const Simplex& rho = c.basis[i];
        CHECK(c.values[i] == other_face_pairing(*f, boundary(single(rho)), n));
        if (n == 1) {
          // ∂[a,b,c] runs a → b → c → a
          CHECK(c.values[i] == winding({(*f)(rho[0]), (*f)(rho[1]), (*f)(rho[2])}));
        }
      }
    }
  }
}

TEST_CASE("relative obstruction cocycles") {
  std::mt19937_64 rng(fixtures::seed() + 1);
  SphereTarget t(1);
  int checked = 0;
  for (int trial = 0; trial < 40; ++trial) {
    auto x = fixtures::random_complex(rng, 6, 3, 5);
    std::vector<int> keep;
    for (int v : x.vertices())
      if (rng() % 2) keep.push_back(v);
    SimplicialPair pair(x, x.full_subcomplex(keep));
    auto f = random_model_map(rng, x.skeleton(1), pair.subcomplex().skeleton(1), t);
    if (!f) continue;
    IntCochain c = obstruction_cocycle(ModelMap(*f, t), pair);
    CHECK(coboundary(c, pair).is_zero());
    for (const auto& s : c.basis) CHECK_FALSE(pair.subcomplex().contains(s));
    ++checked;
  }
  CHECK(checked > 20);

  // the subcomplex may not cover the fundamental face
  auto disk = SimplicialComplex::simplex(2);
  SimplicialPair pair(disk, SimplicialComplex::from_maximal({{0, 1}}));
  ModelMap f(SimplicialMap(disk.skeleton(1), t.model(), {{0, 0}, {1, 1}, {2, 2}}), t);
  CHECK_THROWS_AS(obstruction_cocycle(f, pair), ValidationError);
}

TEST_CASE("difference cochains on the 2-sphere") {
  SphereTarget t(2);
  auto s2 = t.model();
  SimplicialPair pair(s2);
  ModelMap id(SimplicialMap::identity(s2), t);
  ModelMap swap(SimplicialMap(s2, s2, {{0, 1}, {1, 0}, {2, 2}, {3, 3}}), t);
  ModelMap constant(SimplicialMap::constant(s2, s2, 3), t);
  Chain z = fundamental_cycle(s2);

  CHECK(difference_cochain(id, id, pair).is_zero());
  CHECK_THROWS_AS(difference_cochain(id, swap, pair), ValidationError);

  IntCochain d = deformation_cochain(id, swap, PrismHomotopy::straight(id.map(), swap.map()), pair);
  CHECK(sum_over_cycle(d, z) == 2);
  IntCochain e = deformation_cochain(id, constant, PrismHomotopy::straight(id.map(), constant.map()), pair);
  CHECK(sum_over_cycle(e, z) == degree(id.map()));

  // a detour through the swap and back gives the same total
  PrismHomotopy there = PrismHomotopy::straight(id.map(), swap.map());
  PrismHomotopy back = PrismHomotopy::straight(swap.map(), constant.map());
  IntCochain detour = deformation_cochain(id, constant, there.stack(back), pair);
  CHECK(sum_over_cycle(detour, z) == 1);
}

TEST_CASE("coboundary of a deformation cochain is the difference of obstructions") {
  std::mt19937_64 rng(fixtures::seed() + 2);
  for (int n : {1, 2}) {
    SphereTarget t(n);
    for (int trial = 0; trial < 30; ++trial) {
      auto x = fixtures::random_complex(rng, 6, n + 1, 6);
      if (x.dimension() < n) continue;
      auto k = x.skeleton(n);
      auto f = random_model_map(rng, k, SimplicialComplex(), t);
      auto g = random_model_map(rng, k, SimplicialComplex(), t);
      REQUIRE(f);
      REQUIRE(g);
      std::vector<std::map<int, int>> stages{f->vertex_map()};
      int extra = static_cast<int>(rng() % 3);
      for (int i = 0; i < extra; ++i) stages.push_back(random_vertex_values(rng, k, n + 2));
      stages.push_back(g->vertex_map());
      PrismHomotopy h(k, stages);
      ModelMap mf(*f, t), mg(*g, t);
      SimplicialPair pair(x);
      IntCochain d = deformation_cochain(mf, mg, h, pair);
      IntCochain cf = obstruction_cocycle(mf, pair), cg = obstruction_cocycle(mg, pair);
      IntCochain dd = coboundary(d, pair);
      CHECK(dd.values == cf.values - cg.values);
    }
  }
}

TEST_CASE("difference cochains of subdivided maps match the glued double") {
  std::mt19937_64 rng(fixtures::seed() + 3);
  for (int n : {1, 2}) {
    SphereTarget t(n);
    auto sigma = SimplicialComplex::simplex(n);
    Subdivision sd(sigma, 1);
    const auto& k = sd.complex();
    Simplex top;
    for (int i = 0; i <= n; ++i) top.push_back(i);
    for (int trial = 0; trial < 30; ++trial) {
      auto fm = random_vertex_values(rng, k, n + 2);
      auto gm = fm;
      std::vector<int> interior;
      for (int v : k.vertices())
        if (sd.carrier(v) == top) {
          interior.push_back(v);
          gm[v] = static_cast<int>(rng() % (n + 2));
        }
      SimplicialMap f(k, t.model(), fm), g(k, t.model(), gm);
      IntCochain d = difference_cochain(ModelMap(sd, f, t), ModelMap(sd, g, t), SimplicialPair(sigma));
      REQUIRE(d.basis.size() == 1);

      // two copies of sd σ glued along sd ∂σ; the copy carries g
      const int shift = 1000;
      auto rename = [&](int v) {
        return std::find(interior.begin(), interior.end(), v) != interior.end() ? v + shift : v;
      };
      std::vector<Simplex> faces = k.maximal_simplices();
      std::map<int, int> dm = fm;
      for (const auto& s : k.maximal_simplices()) {
        Simplex c;
        for (int v : s) c.push_back(rename(v));
        faces.push_back(c);
      }
      for (int v : interior) dm[v + shift] = gm[v];
      SimplicialComplex dbl = SimplicialComplex::from_maximal(faces);
      Chain z;
      for (const auto& [s, a] : sd.subdivide(top)) {
        z[s] += a;
        Simplex c;
        for (int v : s) c.push_back(rename(v));
        add_oriented(z, c, -a);
      }
      CHECK(d.values[0] == degree(SimplicialMap(dbl, t.model(), dm), z));
    }
  }
}

TEST_CASE("subdivided difference cochains satisfy the coboundary formula") {
  std::mt19937_64 rng(fixtures::seed() + 4);
  SphereTarget t(1);
  for (int trial = 0; trial < 20; ++trial) {
    auto x = fixtures::random_complex(rng, 5, 2, 4);
    if (x.dimension() < 2) continue;
    Subdivision sd(x.skeleton(1), 1);
    auto fm = random_vertex_values(rng, sd.complex(), 3);
    auto gm = fm;
    for (int v : sd.complex().vertices())
      if (sd.carrier(v).size() == 2) gm[v] = static_cast<int>(rng() % 3);
    ModelMap f(sd, SimplicialMap(sd.complex(), t.model(), fm), t);
    ModelMap g(sd, SimplicialMap(sd.complex(), t.model(), gm), t);
    SimplicialPair pair(x);
    IntCochain d = difference_cochain(f, g, pair);
    CHECK(coboundary(d, pair).values == obstruction_cocycle(f, pair).values - obstruction_cocycle(g, pair).values);
  }
  CHECK_THROWS_AS(ModelMap(Subdivision(SimplicialComplex::simplex(1), 4),
                           SimplicialMap::constant(Subdivision(SimplicialComplex::simplex(1), 4).complex(), t.model(), 0), t),
                  BudgetError);
}

TEST_CASE("chi class") {
  SphereTarget t2(2);
  auto s2 = t2.model();
  ChiClass id = chi_class(ModelMap(SimplicialMap::identity(s2), t2), SimplicialPair(s2));
  CHECK(id.group.canonical_string() == "Z");
  CHECK(id.has_fundamental_value);
  CHECK(id.fundamental_value == 1);
  CHECK(abs(id.element[0]) == 1);
  ChiClass constant = chi_class(ModelMap(SimplicialMap::constant(s2, s2, 0), t2), SimplicialPair(s2));
  CHECK(is_zero(constant.element));

  SphereTarget t1(1);
  auto wind = fixtures::double_wind();
  ChiClass w = chi_class(ModelMap(wind, t1), SimplicialPair(wind.source()));
  CHECK(abs(w.fundamental_value) == 2);
  CHECK(abs(w.element[0]) == 2);
  // agrees with the induced map on the class of the identity
  ChiClass base = chi_class(ModelMap(SimplicialMap::identity(t1.model()), t1), SimplicialPair(t1.model()));
  GroupHom star = induced_map(wind, FpGroup::free(1), 1);
  CHECK(star.target().reduce(star.apply(star.source().lift(base.element))) == w.element);
}

TEST_CASE("chi class agrees with the difference from the constant map") {
  std::mt19937_64 rng(fixtures::seed() + 5);
  for (int n : {1, 2}) {
    SphereTarget t(n);
    for (int trial = 0; trial < 25; ++trial) {
      auto x = fixtures::random_complex(rng, 6, n, 6);
      std::vector<int> keep;
      for (int v : x.vertices())
        if (rng() % 3 == 0) keep.push_back(v);
      SimplicialPair pair(x, x.full_subcomplex(keep));
      auto f = random_model_map(rng, x, pair.subcomplex(), t);
      if (!f) continue;
      ModelMap m(*f, t);
      ChiClass a = chi_class(m, pair), b = chi_class_via_difference(m, pair);
      CHECK(a.cocycle == b.cocycle);
      CHECK(a.element == b.element);
    }
  }
}

TEST_CASE("chi class is natural and homotopy invariant") {
  std::mt19937_64 rng(fixtures::seed() + 6);
  SphereTarget t(2);
  auto torus = fixtures::torus7();
  int homotopic_pairs = 0;
  for (int trial = 0; trial < 30; ++trial) {
    auto f = random_model_map(rng, torus, SimplicialComplex(), t);
    REQUIRE(f);
    ModelMap mf(*f, t);
    ChiClass chi = chi_class(mf, SimplicialPair(torus));

    // restriction to a full subcomplex
    std::vector<int> keep;
    for (int v : torus.vertices())
      if (rng() % 2) keep.push_back(v);
    auto a = torus.full_subcomplex(keep);
    if (!a.empty()) {
      SimplicialMap j = SimplicialMap::inclusion(a, torus);
      ChiClass restricted = chi_class(ModelMap(f->after(j), t), SimplicialPair(a));
      GroupHom jstar = induced_map(j, FpGroup::free(1), 2);
      CHECK(jstar.target().reduce(jstar.apply(jstar.source().lift(chi.element))) == restricted.element);
    }

    // move one vertex; keep the pair if the straight prism is simplicial
    auto gm = f->vertex_map();
    gm[static_cast<int>(rng() % 7)] = static_cast<int>(rng() % 4);
    SimplicialMap g(torus, t.model(), gm);
    PrismHomotopy h = PrismHomotopy::straight(*f, g);
    if (!h.check_simplicial(t, torus)) {
      ++homotopic_pairs;
      CHECK(chi_class(ModelMap(g, t), SimplicialPair(torus)).element == chi.element);
    }
  }
  CHECK(homotopic_pairs > 5);
}

TEST_CASE("classification of maps into spheres") {
  SphereTarget t2(2);
  Classification s2 = classify_maps(SimplicialPair(t2.model()), t2);
  CHECK(s2.group.canonical_string() == "Z");
  CHECK(s2.exhaustive);
  CHECK(s2.maps_examined == 256);
  std::vector<Int> realized;
  for (const auto& r : s2.realized) realized.push_back(r.element[0]);
  CHECK(realized == std::vector<Int>{-1, 0, 1});

  auto torus = fixtures::torus7();
  Classification tc = classify_maps(SimplicialPair(torus), t2);
  CHECK(tc.group.isomorphic(cohomology_group(SimplicialPair(torus), FpGroup::free(1), 2)));
  for (const auto& r : tc.realized) {
    ChiClass chi = chi_class(ModelMap(SimplicialMap(torus, t2.model(), r.representative), t2), SimplicialPair(torus));
    CHECK(chi.element == r.element);
  }
  CHECK(tc.realized.size() >= 3);

  Classification graph = classify_maps(SimplicialPair(fixtures::cycle(5)), t2);
  CHECK(graph.group.is_trivial());
  CHECK(graph.realized.size() == 1);

  CHECK_THROWS_AS(classify_maps(SimplicialPair(SimplicialComplex::simplex(3)), t2), ValidationError);

  SphereTarget t1(1);
  Classification circle = classify_maps(SimplicialPair(fixtures::cycle(6)), t1);
  CHECK(circle.group.canonical_string() == "Z");
  for (const auto& r : circle.realized) CHECK(abs(r.element[0]) <= 2);
  CHECK(circle.realized.size() == 5);
}

TEST_CASE("theta at a finite stage") {
  SphereTarget t1(1);
  CoverTower tower({fixtures::circle3(), fixtures::circle6()}, {fixtures::circle6_to_3()});
  TruncatedCech cech(tower, FpGroup::free(1), 1);
  REQUIRE(tower.nerve(0) == t1.model());
  ThetaResult id = theta_finite_stage(cech, 0, SimplicialMap::identity(t1.model()), t1);
  CHECK(id.refinement_checked);
  CHECK(id.refinement_stable);
  CHECK(abs(id.colimit_class[0]) == 1);

  ThetaResult constant = theta_finite_stage(cech, 0, SimplicialMap::constant(tower.nerve(0), t1.model(), 2), t1);
  CHECK(is_zero(constant.colimit_class));

  auto cover = tower.level(0);
  auto star = canonical_map(cover, uniform_weights(cover));
  ThetaResult with_star = theta_finite_stage(cech, 0, SimplicialMap::identity(t1.model()), t1, star);
  REQUIRE(with_star.star);
  CHECK(with_star.star->ok);

  CHECK_THROWS_AS(theta_finite_stage(cech, 2, SimplicialMap::identity(t1.model()), t1), ValidationError);
  CHECK_THROWS_AS(theta_finite_stage(cech, 1, SimplicialMap::identity(t1.model()), t1), ValidationError);
}

TEST_CASE("theta is stable under refinement on random towers") {
  std::mt19937_64 rng(fixtures::seed() + 7);
  SphereTarget t(2);
  int checked = 0;
  for (int trial = 0; trial < 30; ++trial) {
    Cover fine = fixtures::random_cover(rng, 9, 7);
    auto [coarse, a] = fixtures::random_coarsening(rng, fine, 4);
    CoverTower tower({coarse, fine}, {a});
    TruncatedCech cech(tower, FpGroup::free(1), 2);
    auto p = random_model_map(rng, tower.nerve(0), SimplicialComplex(), t);
    if (!p) continue;
    ThetaResult r = theta_finite_stage(cech, 0, *p, t);
    CHECK(r.refinement_checked);
    CHECK(r.refinement_stable);
    ++checked;
  }
  CHECK(checked > 10);
}
