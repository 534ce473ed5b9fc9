#include "dtop/errors.hpp"
#include "dtop/towers.hpp"

namespace dtop {

const GroupHom& PairSystem::map(std::size_t j, int i) const {
  if (j >= maps.size() || i < -1 || i > static_cast<int>(j))
    throw ValidationError("pair-system-index", std::to_string(j) + " -> " + std::to_string(i));
  return maps[j][static_cast<std::size_t>(i + 1)];
}

PairSystem pair_system(const TruncatedCech& cech) {
  std::size_t m = cech.tower().exhaustion().size();
  if (m == 0) throw ValidationError("missing-exhaustion");
  PairSystem s;
  s.absolute = cech.colimit(TruncatedCech::absolute_index).colimit;
  for (std::size_t i = 0; i < m; ++i) s.relative.push_back(cech.colimit(static_cast<int>(i)).colimit);
  s.maps.resize(m);
  for (std::size_t j = 0; j < m; ++j) {
    for (int i = -1; i <= static_cast<int>(j); ++i) {
      if (i == static_cast<int>(j)) s.maps[j].push_back(GroupHom::identity(s.relative[j]));
      else s.maps[j].push_back(cech.comparison(static_cast<int>(j), i));
    }
  }
  return s;
}

PairSystem pair_system(const Telescope& t, int q) {
  std::size_t m = t.stage_count();
  PairSystem s;
  Cohomology abs = cohomology(t.complex(), q);
  std::vector<Cohomology> rel;
  for (std::size_t i = 0; i < m; ++i) rel.push_back(cohomology(t.relative(i), q));
  s.absolute = abs.group();
  for (const auto& h : rel) s.relative.push_back(h.group());
  s.maps.resize(m);
  for (std::size_t j = 0; j < m; ++j) {
    s.maps[j].push_back(
        induced_on_subquotients(rel[j].subquotient(), abs.subquotient(), t.relative_inclusion(j, std::nullopt, q).matrix()));
    for (std::size_t i = 0; i <= j; ++i)
      s.maps[j].push_back(
          induced_on_subquotients(rel[j].subquotient(), rel[i].subquotient(), t.relative_inclusion(j, i, q).matrix()));
  }
  return s;
}

PhantomFiltration phantom_filtration(const PairSystem& s, std::size_t depth) {
  std::size_t m = s.relative.size();
  if (m == 0) throw ValidationError("missing-exhaustion");
  auto group_at = [&](int i) -> const FpGroup& { return i < 0 ? s.absolute : s.relative[i]; };

  // cur[i + 1] = Ph^k(i) ⊆ H(X, X_i), i = -1 the absolute group.
  std::vector<Subgroup> cur;
  for (int i = -1; i < static_cast<int>(m); ++i) {
    Subgroup acc = Subgroup::whole(group_at(i));
    for (std::size_t j = i < 0 ? 0 : static_cast<std::size_t>(i); j < m; ++j)
      acc = intersect(acc, image(s.map(j, i)));
    cur.push_back(acc);
  }
  PhantomFiltration f;
  f.levels.push_back(cur[0]);
  bool descending = true;
  for (std::size_t k = 0; k < depth; ++k) {
    std::vector<Subgroup> next;
    for (int i = -1; i < static_cast<int>(m); ++i) {
      Subgroup acc = Subgroup::whole(group_at(i));
      for (std::size_t j = i < 0 ? 0 : static_cast<std::size_t>(i); j < m; ++j)
        acc = intersect(acc, image(s.map(j, i), cur[j + 1]));
      if (!cur[i + 1].contains(acc)) descending = false;
      next.push_back(acc);
    }
    cur = std::move(next);
    f.levels.push_back(cur[0]);
  }
  f.descending = descending;
  return f;
}

TelescopeReport degree_p_pipeline(const Int& p, int d, std::size_t last_stage, std::size_t cap) {
  if (p < 1) throw ValidationError("pipeline-parameters", "p = " + p.get_str());
  if (d < 1) throw ValidationError("pipeline-parameters", "d = " + std::to_string(d));
  TelescopeReport r;
  r.p = p;
  r.d = d;
  r.last_stage = last_stage;

  Telescope tel = degree_p_telescope(d, p, last_stage);
  GroupTower tower = cohomology_tower(tel, d);
  bool all_z = true;
  for (std::size_t k = 0; k <= last_stage; ++k) {
    r.stage_cohomology.push_back(tower.stage(k));
    if (!tower.stage(k).isomorphic(FpGroup::free(1))) all_z = false;
  }
  if (!all_z) throw ValidationError("internal", "telescope stage cohomology is not Z");
  r.tower_is_periodic_model = true;
  for (std::size_t k = 0; k < last_stage; ++k) {
    IntMatrix c = tower.bond(k).canonical_matrix();
    r.bond_factors.push_back(c(0, 0));
    if (abs(c(0, 0)) != p) r.tower_is_periodic_model = false;
  }

  FpGroup z = FpGroup::free(1);
  GroupHom times_p(z, z, IntMatrix(1, 1, {p}));
  r.lim1 = lim1_vanishes(GroupTower::periodic(z, times_p), cap);
  r.phantom = phantom_filtration(pair_system(tel, d + 1), 2);

  std::string n = std::to_string(last_stage);
  std::string ps = p.get_str();
  r.chain.push_back("H^" + std::to_string(d) + "(T_k) = Z for k = 0.." + n + " [computed]");
  r.chain.push_back("restriction T_{k+1} -> T_k is x" + ps + " on H^" + std::to_string(d) + " [" +
                    (r.tower_is_periodic_model ? "computed" : "FAILED") + "]");
  if (p == 1) {
    r.chain.push_back("identity bonding: every truncation deformation retracts to S^" + std::to_string(d) +
                      " [computed]");
    r.chain.push_back("lim^1 of the constant tower Z vanishes [" + r.lim1.certificate + "]");
  } else {
    r.chain.push_back("images of (Z, x" + ps + ") at stage 0 strictly decrease up to step " +
                      std::to_string(r.lim1.ml.step) + " [witnesses " + ps + "^k]");
    r.chain.push_back("lim^1(Z <-" + ps + "- Z <-" + ps + "- ...) != 0 [" + r.lim1.certificate + "]");
    r.chain.push_back("lim^1(Z <-" + ps + "- ...) = Ext^1(Z[1/" + ps + "], Z) [standard identification, not computed]");
    r.chain.push_back("phantom classes in H^" + std::to_string(d + 1) +
                      " of the infinite telescope [not reproduced: truncated Ph^0 is " +
                      (r.phantom.levels[0].is_trivial() ? "0" : "nonzero") + "]");
  }
  return r;
}

}  // namespace dtop
