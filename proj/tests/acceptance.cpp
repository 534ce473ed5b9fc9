// Acceptance run: one PASS/FAIL line per criterion with its wall time and
// limit. All comparisons are exact (tolerance 0); time limits are part of
// each verdict. Exit status is nonzero when any criterion fails.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cover_fixtures.hpp"
#include "dtop/abelian.hpp"
#include "dtop/cli.hpp"
#include "dtop/covers.hpp"
#include "dtop/degree.hpp"
#include "dtop/errors.hpp"
#include "dtop/obstruction.hpp"
#include "dtop/towers.hpp"
#include "fixtures.hpp"
#include "fuzz_harness.hpp"
#include "obstruction_oracles.hpp"

using namespace dtop;

namespace {

// Collects failure messages for one criterion.
struct Check {
  std::vector<std::string> failures;
  std::vector<std::string> notes;
  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
  void note(const std::string& s) { notes.push_back(s); }
};

struct Criterion {
  int number;
  std::string title;
  double limit_seconds;
  std::function<void(Check&)> body;
};

FpGroup G(const std::string& s) { return parse_group_literal(s); }

std::string str(const Int& x) { return x.get_str(); }

// 1. Ext by resolution against Ext by symmetric cocycles.
void ext_cross_validation(Check& c) {
  std::vector<std::string> names{"Z/2", "Z/3", "Z/4", "Z/6", "Z/2 + Z/2"};
  for (const auto& an : names)
    for (const auto& bn : names) {
      FpGroup a = G(an), b = G(bn);
      std::string res = ext_group(a, b).group.canonical_string();
      std::string coc = cocycle_ext_group(a, b).group.canonical_string();
      // Cocycles B × B → A classify extensions of B by A, i.e. Ext¹(B, A);
      // both orders are compared.
      std::string res_swapped = ext_group(b, a).group.canonical_string();
      c.expect(res == coc, "Ext(" + an + ", " + bn + "): resolution " + res + ", cocycles " + coc);
      c.expect(res_swapped == coc, "Ext(" + bn + ", " + an + "): resolution " + res_swapped + ", cocycles " + coc);
    }
  c.note("25 ordered pairs, both argument conventions");
}

// 2. δc = 0 and δd = c(f) − c(g) on random maps into sphere models.
void obstruction_identities(Check& c) {
  std::mt19937_64 rng(fixtures::seed() + 101);
  std::size_t maps = 0, cochains = 0;
  for (int n : {1, 2}) {
    SphereTarget t(n);
    int trials = 0;
    while (trials < 70) {
      auto x = fixtures::random_complex(rng, 6, n + 1, 7);
      if (x.dimension() < n + 1) continue;
      ++trials;
      auto k = x.skeleton(n);
      SimplicialPair pair(x);
      auto f = oracles::random_model_map(rng, k, SimplicialComplex(), t);
      auto g = oracles::random_model_map(rng, k, SimplicialComplex(), t);
      if (!f || !g) {
        c.expect(false, "could not draw a model map");
        continue;
      }
      maps += 2;
      ModelMap mf(*f, t), mg(*g, t);
      IntCochain cf = obstruction_cocycle(mf, pair), cg = obstruction_cocycle(mg, pair);
      c.expect(coboundary(cf, pair).is_zero() && coboundary(cg, pair).is_zero(), "obstruction is not a cocycle");
      // Values against an independent count over a different face of the model.
      for (std::size_t i = 0; i < cf.basis.size(); ++i) {
        Int oracle = oracles::other_face_pairing(*f, boundary(oracles::single(cf.basis[i])), n);
        c.expect(cf.values[i] == oracle, "obstruction value differs from the boundary degree");
      }
      // Homotopy through random intermediate vertex maps.
      std::vector<std::map<int, int>> stages{f->vertex_map()};
      int extra = static_cast<int>(rng() % 3);
      for (int i = 0; i < extra; ++i) stages.push_back(oracles::random_vertex_values(rng, k, n + 2));
      stages.push_back(g->vertex_map());
      IntCochain d = deformation_cochain(mf, mg, PrismHomotopy(k, stages), pair);
      c.expect(coboundary(d, pair).values == cf.values - cg.values, "δd != c(f) - c(g)");
      ++cochains;

      // Difference cochain of maps that agree below degree n: change f at
      // one vertex only where that keeps it simplicial on the (n-1)-skeleton.
      std::map<int, int> m = f->vertex_map();
      int v = k.vertices()[rng() % k.vertices().size()];
      m[v] = static_cast<int>(rng() % static_cast<unsigned>(n + 2));
      try {
        SimplicialMap h(k, t.model(), m);
        bool agree = true;
        for (int q = 0; q < n && agree; ++q)
          for (const auto& s : k.simplices(q))
            if (f->image(s) != h.image(s)) agree = false;
        if (agree) {
          ModelMap mh(h, t);
          IntCochain dd = difference_cochain(mf, mh, pair);
          c.expect(coboundary(dd, pair).values == cf.values - obstruction_cocycle(mh, pair).values,
                   "δd(f, h) != c(f) - c(h)");
          ++maps;
          ++cochains;
        }
      } catch (const ValidationError&) {
      }
    }
  }
  c.expect(maps >= 200, "only " + std::to_string(maps) + " maps examined");
  c.note(std::to_string(maps) + " maps, " + std::to_string(cochains) + " difference identities, n in {1,2}");
}

// 3. Classification of maps into S² and the chi class.
void hopf_instance(Check& c) {
  SphereTarget t2(2);
  auto torus = fixtures::torus7();
  auto boundary3 = SimplicialComplex::sphere_model(2);
  for (const auto& [name, x] : std::vector<std::pair<std::string, SimplicialComplex>>{{"torus", torus}, {"boundary of a 3-simplex", boundary3}}) {
    Classification cl = classify_maps(SimplicialPair(x), t2);
    c.expect(cl.group.canonical_string() == "Z", name + ": classes " + cl.group.canonical_string());
    // Oracle for the realized representatives: their degree on the
    // fundamental cycle.
    Chain z = fundamental_cycle(x);
    for (const auto& r : cl.realized) {
      SimplicialMap f(x, t2.model(), r.representative);
      c.expect(abs(r.element[0]) == abs(degree(f, z)), name + ": class disagrees with degree");
    }
    c.note(name + ": " + std::to_string(cl.realized.size()) + " classes realized among " +
           std::to_string(cl.maps_examined) + " vertex maps");
  }
  ChiClass id = chi_class(ModelMap(SimplicialMap::identity(boundary3), t2), SimplicialPair(boundary3));
  ChiClass constant = chi_class(ModelMap(SimplicialMap::constant(boundary3, boundary3, 0), t2), SimplicialPair(boundary3));
  c.expect(id.element.size() == 1 && abs(id.element[0]) == 1, "chi(identity) is not a generator");
  c.expect(is_zero(constant.element), "chi(constant) is not 0");
  c.expect(id.fundamental_value == degree(SimplicialMap::identity(boundary3)), "chi(identity) differs from its degree");
}

// 4. Nerves of the circle covers.
void nerve_instance(Check& c) {
  FpGroup z = FpGroup::free(1);
  SimplicialComplex n3 = nerve(fixtures::circle3());
  c.expect(n3.count(0) == 3 && n3.count(1) == 3 && n3.dimension() == 1, "nerve of 3 arcs is not a triangle boundary");
  c.expect(n3 == SimplicialComplex::sphere_model(1), "nerve differs from the triangle boundary");
  c.expect(cohomology_group(SimplicialPair(n3), z, 1).canonical_string() == "Z", "H^1 of the nerve is not Z");
  SimplicialComplex n6 = nerve(fixtures::circle6());
  c.expect(cohomology_group(SimplicialPair(n6), z, 1).canonical_string() == "Z", "H^1 of the 6-arc nerve is not Z");
  RefinementMap r(fixtures::circle6(), fixtures::circle3(), fixtures::circle6_to_3());
  IntMatrix m = induced_map(nerve_map(r), z, 1).canonical_matrix();
  c.expect(m.rows() == 1 && m.cols() == 1 && abs(m(0, 0)) == 1, "refinement does not induce an isomorphism on H^1");
  // Oracle: the 6-cycle maps onto the 3-cycle with winding number ±1.
  SimplicialMap p = nerve_map(r);
  std::vector<int> walk;
  for (int v = 0; v < 6; ++v) walk.push_back(p(v));
  c.expect(std::abs(oracles::winding(walk)) == 1, "winding of the nerve map is not ±1");
}

// 5. Moore spaces and universal coefficients.
void moore_instance(Check& c) {
  FpGroup z = FpGroup::free(1);
  for (const std::string& name : {"Z", "Z/6", "Z + Z/4"}) {
    FpGroup a = G(name);
    for (int n : {2, 3}) {
      MooreSpaceData m = moore_space(a, n);
      CochainComplexFp cc = m.cochain_complex();
      FpGroup hn = cohomology(cc, n).group();
      FpGroup hn1 = cohomology(cc, n + 1).group();
      c.expect(m.homology_n().isomorphic(a), name + ": H_n(M) is not A");
      c.expect(hn.isomorphic(hom_group(a, z).group()), name + ": H^n != Hom(A, Z)");
      c.expect(hn1.isomorphic(ext_group(a, z).group), name + ": H^{n+1} != Ext(A, Z)");
      // Independent: Hom(A, Z) = Z^rank and Ext(A, Z) = torsion of A.
      c.expect(hn.isomorphic(FpGroup::free(a.free_rank())), name + ": H^n rank");
      c.expect(hn1.isomorphic(FpGroup::from_invariants(a.torsion(), 0)), name + ": H^{n+1} torsion");
      for (int q = 1; q < n; ++q) c.expect(cohomology(cc, q).group().is_trivial(), name + ": stray cohomology");
    }
  }
  c.expect(ext_group(G("Z/6"), z).group.canonical_string() == "Z/6", "Ext(Z/6, Z) is not Z/6");
}

// 6. Degree-p telescope and towers of finite groups.
void telescope_instance(Check& c) {
  TelescopeReport r = degree_p_pipeline(2, 2, 5);
  c.expect(r.lim1.verdict == Verdict::DoesNotVanish, "lim^1 of (Z, x2) not certified nonzero");
  c.expect(r.lim1.ml.kind == MittagLeffler::Kind::StrictlyDecreasing, "images do not strictly decrease");
  c.expect(r.tower_is_periodic_model, "telescope bonds are not x2");
  c.expect(!r.lim1.ml.witnesses.empty(), "no witnesses");
  // Oracle: Im_k = 2^k Z, so witness k has 2-adic valuation exactly k.
  for (std::size_t k = 0; k < r.lim1.ml.witnesses.size(); ++k) {
    Int w = r.lim1.ml.witnesses[k].at(0), pk = 1;
    for (std::size_t i = 0; i < k; ++i) pk *= 2;
    c.expect(w % pk == 0 && w % (2 * pk) != 0, "witness " + std::to_string(k) + " = " + str(w));
  }
  c.note("lim^1 certificate: " + r.lim1.certificate);

  // Finite towers: lim^1 vanishes; oracle is image enumeration reaching a
  // fixed point.
  std::mt19937_64 rng(fixtures::seed() + 6);
  std::vector<FpGroup> finite{G("Z/8"), G("Z/6"), G("Z/2 + Z/4"), G("Z/3 + Z/9"), G("Z/2 + Z/2 + Z/2")};
  std::size_t towers = 0;
  for (const FpGroup& a : finite)
    for (int trial = 0; trial < 6; ++trial) {
      // Random matrices that are not well defined on A are redrawn.
      std::size_t k = a.generator_count();
      std::optional<GroupHom> drawn;
      while (!drawn) {
        IntMatrix m(k, k);
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j) m(i, j) = static_cast<long>(rng() % 7) - 3;
        try {
          drawn.emplace(a, a, m);
        } catch (const ValidationError&) {
        }
      }
      const GroupHom& e = *drawn;
      Lim1Result l = lim1_vanishes(GroupTower::periodic(a, e), 12);
      c.expect(l.verdict == Verdict::Vanishes, a.canonical_string() + ": finite periodic tower not vanishing");
      // Enumerated images stabilize within |A| steps.
      std::set<Vec> cur;
      for (const Vec& x : a.canonical_elements()) cur.insert(x);
      bool fixed = false;
      for (int step = 0; step < 80 && !fixed; ++step) {
        std::set<Vec> next;
        for (const Vec& x : cur) next.insert(a.reduce(e.apply(a.lift(x))));
        fixed = next == cur;
        cur = std::move(next);
      }
      c.expect(fixed, "image enumeration did not stabilize");
      ++towers;
    }
  FpGroup z4 = G("Z/4"), z2 = G("Z/2");
  GroupTower expl = GroupTower::explicit_tower({z4, z2, z4}, {GroupHom(z2, z4, IntMatrix(1, 1, {2})), GroupHom(z4, z2, IntMatrix(1, 1, {1}))});
  c.expect(lim1_vanishes(expl, 10).verdict == Verdict::Vanishes, "explicit finite tower not vanishing");
  c.note(std::to_string(towers + 1) + " finite towers vanish");
}

// 7. Phantom filtrations on towers with a full exhaustion level.
void phantom_instance(Check& c) {
  std::vector<std::pair<std::string, PairSystem>> systems;
  FpGroup z = FpGroup::free(1);
  std::vector<int> all(12);
  for (int i = 0; i < 12; ++i) all[i] = i;
  CoverTower sol = circle_solenoid_tower(2, 3, {{0, 1, 2}, {0, 1, 2, 3, 4, 5, 6}, all});
  CoverTower circle({fixtures::circle3(), fixtures::circle6()}, {fixtures::circle6_to_3()}, {{0}, {0, 5, 6}, all});
  for (int n : {0, 1}) {
    systems.emplace_back("solenoid H^" + std::to_string(n), pair_system(TruncatedCech(sol, z, n)));
    systems.emplace_back("circle H^" + std::to_string(n), pair_system(TruncatedCech(circle, z, n)));
    systems.emplace_back("circle mod 2 H^" + std::to_string(n), pair_system(TruncatedCech(circle, G("Z/2"), n)));
  }
  for (int p : {1, 2, 3})
    for (int q : {1, 2, 3}) systems.emplace_back("telescope p=" + std::to_string(p) + " H^" + std::to_string(q),
                                                 pair_system(degree_p_telescope(2, p, 3), q));
  for (const auto& [name, s] : systems) {
    c.expect(s.relative.back().is_trivial(), name + ": last relative group is not 0");
    PhantomFiltration f = phantom_filtration(s, 3);
    c.expect(f.levels[0].is_trivial(), name + ": Ph^0 != 0");
    for (std::size_t k = 0; k + 1 < f.levels.size(); ++k)
      c.expect(f.levels[k].contains(f.levels[k + 1]), name + ": Ph^" + std::to_string(k + 1) + " not in Ph^" + std::to_string(k));
    c.expect(f.descending, name + ": not descending at some relative level");
  }
  c.note(std::to_string(systems.size()) + " pair systems, depth 3");
}

// 8. Aut(Z/4) acting on Ext(Z/4, Z).
void orbit_instance(Check& c) {
  ExtOrbits o = aut_orbits_on_ext(G("Z/4"));
  std::multiset<std::size_t> sizes;
  for (const auto& orb : o.orbits) sizes.insert(orb.size());
  c.expect(o.orbits.size() == 3, std::to_string(o.orbits.size()) + " orbits");
  c.expect(sizes == std::multiset<std::size_t>{1, 1, 2}, "orbit sizes differ from 1,1,2");
  c.expect(o.automorphism_count == 2, "|Aut(Z/4)| != 2");
}

// 9. Cochain metric.
void metric_instance(Check& c) {
  FpGroup z = FpGroup::free(1);
  std::vector<int> all(12);
  for (int i = 0; i < 12; ++i) all[i] = i;
  CoverTower t({fixtures::circle3()}, {}, {{2}, {2, 6}, all});
  TowerCochain a{0, 0, {Int(1), Int(2), Int(3)}};
  TowerCochain b{0, 0, {Int(1), Int(5), Int(3)}};
  MetricResult r = cochain_metric(a, b, t, z);
  c.expect(r.value == Rational(3, 8), "worked example gives " + r.value.get_str());

  CoverTower sol = circle_solenoid_tower(2, 3, {{0}, {0, 1, 2}, {0, 1, 2, 3, 4, 5, 6, 7, 8}, all});
  std::mt19937_64 rng(fixtures::seed() + 9);
  auto random_cochain = [&](int n) {
    std::size_t level = rng() % 3;
    Vec v(sol.nerve(level).count(n));
    for (auto& x : v) x = static_cast<long>(rng() % 2);
    return TowerCochain{level, n, v};
  };
  for (int trial = 0; trial < 60; ++trial) {
    int n = trial % 2;
    auto x = random_cochain(n), y = random_cochain(n), w = random_cochain(n);
    Rational xy = cochain_metric(x, y, sol, z).value, yx = cochain_metric(y, x, sol, z).value;
    Rational xw = cochain_metric(x, w, sol, z).value, wy = cochain_metric(w, y, sol, z).value;
    c.expect(xy == yx, "asymmetric");
    c.expect(xy <= xw + wy, "triangle inequality fails");
    c.expect(cochain_metric(x, x, sol, z).value == 0, "d(x, x) != 0");
  }
  c.note("3/8 example plus 60 random triples");
}

// 10. Corpus and fuzzing through the command-line front end.
void robustness(Check& c) {
  std::ostringstream out, err;
  int code = cli::run({"corpus", "--dir", CORPUS_DIR}, out, err);
  auto f = cli::parse_machine(out.str());
  c.expect(code == cli::exit_ok, "corpus exit " + std::to_string(code) + "\n" + out.str() + err.str());
  if (f.size() == 3) c.note("corpus: " + f[1].second + "/" + f[0].second + " entries");
  fuzz::Stats s = fuzz::run(CORPUS_DIR, 10000, fixtures::seed());
  c.expect(s.runs == 10000, "fuzz runs");
  c.expect(s.bad == 0, std::to_string(s.bad) + " crashes or bad exit codes; first: " + s.first_bad);
  c.note("fuzz: " + std::to_string(s.runs) + " runs, exits 0/2/3 = " + std::to_string(s.by_exit[0]) + "/" +
         std::to_string(s.by_exit[2]) + "/" + std::to_string(s.by_exit[3]) + ", seed " +
         std::to_string(fixtures::seed()));
}

}  // namespace

int main(int argc, char** argv) {
  // --seed N overrides DTOP_SEED for every randomized check.
  for (int i = 1; i + 1 < argc; ++i)
    if (std::string(argv[i]) == "--seed") setenv("DTOP_SEED", argv[i + 1], 1);
  std::vector<Criterion> criteria{
      {1, "Ext by resolution equals Ext by cocycles", 10, ext_cross_validation},
      {2, "obstruction cocycle and difference identities", 60, obstruction_identities},
      {3, "maps into S^2 classified by Z; chi separates identity and constant", 5, hopf_instance},
      {4, "circle nerves and refinement isomorphism", 5, nerve_instance},
      {5, "Moore spaces follow universal coefficients", 5, moore_instance},
      {6, "degree-2 telescope has nonvanishing lim^1; finite towers vanish", 5, telescope_instance},
      {7, "phantom filtration is 0 and descending", 10, phantom_instance},
      {8, "Aut(Z/4) orbits on Ext(Z/4, Z)", 1, orbit_instance},
      {9, "cochain metric", 1, metric_instance},
      {10, "corpus green and 10^4 fuzzed inputs", 300, robustness},
  };
  int failed = 0;
  for (const auto& cr : criteria) {
    Check c;
    auto t0 = std::chrono::steady_clock::now();
    try {
      cr.body(c);
    } catch (const std::exception& e) {
      c.failures.push_back(std::string("exception: ") + e.what());
    }
    double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (dt >= cr.limit_seconds) c.failures.push_back("took " + std::to_string(dt) + " s");
    bool ok = c.failures.empty();
    if (!ok) ++failed;
    char head[160];
    std::snprintf(head, sizeof head, "criterion %2d: %s  %8.3f s (limit %g s, tolerance exact)  ", cr.number,
                  ok ? "PASS" : "FAIL", dt, cr.limit_seconds);
    std::cout << head << cr.title << "\n";
    for (const auto& n : c.notes) std::cout << "    " << n << "\n";
    for (std::size_t i = 0; i < c.failures.size() && i < 10; ++i) std::cout << "    failure: " << c.failures[i] << "\n";
  }
  std::cout << (failed ? "FAILED " + std::to_string(failed) + " criteria" : std::string("all criteria passed")) << "\n";
  return failed ? 1 : 0;
}
