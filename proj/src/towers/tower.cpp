#include <algorithm>

#include "dtop/errors.hpp"
#include "dtop/towers.hpp"

namespace dtop {

namespace {

bool same_presentation(const FpGroup& a, const FpGroup& b) {
  return a.generator_count() == b.generator_count() && a.relations() == b.relations();
}

// Generator of `a` outside `b`; one exists whenever b ⊊ a.
Vec missing_generator(const Subgroup& a, const Subgroup& b) {
  for (std::size_t j = 0; j < a.generator_count(); ++j) {
    Vec g = a.generators().column(j);
    if (!b.contains(g)) return g;
  }
  throw ValidationError("internal", "strict inclusion without a witness");
}

Int trace(const IntMatrix& m) {
  Int t = 0;
  for (std::size_t i = 0; i < m.rows(); ++i) t += m(i, i);
  return t;
}

}  // namespace

GroupTower GroupTower::periodic(FpGroup group, GroupHom endomorphism) {
  if (!same_presentation(endomorphism.source(), group) || !same_presentation(endomorphism.target(), group))
    throw ValidationError("tower-shape", "endomorphism must act on the tower group");
  GroupTower t;
  t.periodic_ = true;
  t.stages_.push_back(std::move(group));
  t.bonds_.push_back(std::move(endomorphism));
  return t;
}

GroupTower GroupTower::explicit_tower(std::vector<FpGroup> stages, std::vector<GroupHom> bonds) {
  if (stages.empty()) throw ValidationError("tower-shape", "no stages");
  if (bonds.size() + 1 != stages.size())
    throw ValidationError("tower-shape", std::to_string(stages.size()) + " stages, " +
                                             std::to_string(bonds.size()) + " bonds");
  for (std::size_t k = 0; k < bonds.size(); ++k) {
    if (!same_presentation(bonds[k].source(), stages[k + 1]) || !same_presentation(bonds[k].target(), stages[k]))
      throw ValidationError("tower-shape", "bond " + std::to_string(k) + " must map stage " +
                                               std::to_string(k + 1) + " to stage " + std::to_string(k));
  }
  GroupTower t;
  t.stages_ = std::move(stages);
  t.bonds_ = std::move(bonds);
  return t;
}

const FpGroup& GroupTower::stage(std::size_t k) const {
  return stages_[std::min(k, stages_.size() - 1)];
}

GroupHom GroupTower::bond(std::size_t k) const {
  if (periodic_) return bonds_[0];
  if (k < bonds_.size()) return bonds_[k];
  return GroupHom::identity(stages_.back());
}

GroupHom GroupTower::to_base(std::size_t k) const {
  GroupHom h = GroupHom::identity(stage(0));
  for (std::size_t j = 0; j < k; ++j) h = h.after(bond(j));
  return h;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Vanishes: return "vanishes";
    case Verdict::DoesNotVanish: return "does-not-vanish";
    case Verdict::Undetermined: return "undetermined";
  }
  return "?";
}

std::string to_string(MittagLeffler::Kind k) {
  switch (k) {
    case MittagLeffler::Kind::Stabilized: return "stabilized";
    case MittagLeffler::Kind::StrictlyDecreasing: return "strictly-decreasing";
    case MittagLeffler::Kind::Undetermined: return "undetermined";
  }
  return "?";
}

MittagLeffler mittag_leffler(const GroupTower& t, std::size_t cap) {
  MittagLeffler r;
  const FpGroup& base = t.stage(0);
  GroupHom comp = GroupHom::identity(base);
  r.images.push_back(Subgroup::whole(base));

  if (!t.is_periodic() && t.stored_stages() - 1 <= cap) {
    // The whole chain is known: Im_k for k ≤ N, constant afterwards.
    std::size_t last = t.stored_stages() - 1;
    for (std::size_t k = 0; k < last; ++k) {
      comp = comp.after(t.bond(k));
      r.images.push_back(image(comp));
    }
    std::size_t k = last;
    while (k > 0 && subgroup_equal(r.images[k - 1], r.images[last])) --k;
    r.kind = MittagLeffler::Kind::Stabilized;
    r.step = k;
    for (std::size_t j = 0; j < k; ++j) {
      if (subgroup_equal(r.images[j], r.images[j + 1])) r.witnesses.push_back({});
      else r.witnesses.push_back(missing_generator(r.images[j], r.images[j + 1]));
    }
    return r;
  }

  for (std::size_t k = 0; k < cap; ++k) {
    comp = comp.after(t.bond(k));
    // Keep entries small: images only matter modulo the relations.
    IntMatrix m = comp.matrix();
    for (std::size_t j = 0; j < m.cols(); ++j) {
      Vec c = base.normalize(m.column(j));
      for (std::size_t i = 0; i < c.size(); ++i) m(i, j) = c[i];
    }
    comp = GroupHom(comp.source(), comp.target(), std::move(m));
    r.images.push_back(image(comp));
    const Subgroup& prev = r.images[k];
    const Subgroup& next = r.images[k + 1];
    if (subgroup_equal(prev, next)) {
      if (t.is_periodic()) {
        r.kind = MittagLeffler::Kind::Stabilized;
        r.step = k;
        return r;
      }
      r.kind = MittagLeffler::Kind::Undetermined;
      r.step = cap;
      return r;
    }
    r.witnesses.push_back(missing_generator(prev, next));
  }
  r.kind = cap == 0 ? MittagLeffler::Kind::Undetermined : MittagLeffler::Kind::StrictlyDecreasing;
  r.step = cap;
  return r;
}

std::vector<Int> characteristic_polynomial(const IntMatrix& m) {
  if (m.rows() != m.cols()) throw ValidationError("square-matrix");
  std::size_t n = m.rows();
  // Faddeev–LeVerrier; every division is exact over Z.
  std::vector<Int> c(n + 1);
  c[n] = 1;
  IntMatrix mk(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    mk = m * mk + c[n - k + 1] * IntMatrix::identity(n);
    Int tr = trace(m * mk);
    Int q = -tr / Int(static_cast<long>(k));
    c[n - k] = q;
  }
  return c;
}

Lim1Result lim1_vanishes(const GroupTower& t, std::size_t cap) {
  Lim1Result r;
  if (!t.is_periodic()) {
    r.ml = mittag_leffler(t, std::max(cap, t.stored_stages() - 1));
    r.verdict = Verdict::Vanishes;
    r.certificate = "finite tower continued by identities; images stabilize at step " + std::to_string(r.ml.step);
    return r;
  }
  r.ml = mittag_leffler(t, cap);

  // Image chain of e on A stabilizes iff it does on A/T: the torsion parts
  // form a descending chain in a finite group. On A/T ≅ Z^r with matrix M the
  // images eventually lie in a lattice L of rank s (the number of nonzero
  // eigenvalues) and [L : M L] = |lowest nonzero coefficient of det(xI − M)|.
  const FpGroup& a = t.stage(0);
  IntMatrix canon = t.bond(0).canonical_matrix();
  std::vector<std::size_t> free_idx;
  for (std::size_t i = 0; i < a.invariant_count(); ++i)
    if (a.moduli()[i] == 0) free_idx.push_back(i);
  IntMatrix m = canon.select_rows(free_idx).select_columns(free_idx);
  r.charpoly = characteristic_polynomial(m);
  std::size_t low = 0;
  while (r.charpoly[low] == 0) ++low;
  std::size_t s = r.charpoly.size() - 1 - low;
  r.eventual_index = s == 0 ? Int(1) : Int(abs(r.charpoly[low]));

  if (r.ml.kind == MittagLeffler::Kind::Stabilized) {
    if (r.eventual_index != 1) throw ValidationError("internal", "stabilized chain with eventual index > 1");
    r.verdict = Verdict::Vanishes;
    r.certificate = "images stabilize at step " + std::to_string(r.ml.step);
  } else if (r.eventual_index == 1) {
    r.verdict = Verdict::Vanishes;
    r.certificate = "eventual image of rank " + std::to_string(s) +
                    " is mapped onto itself (index 1); images stabilize past the cap";
  } else {
    r.verdict = Verdict::DoesNotVanish;
    r.certificate = "eventual image of rank " + std::to_string(s) + " has index " +
                    r.eventual_index.get_str() + " in itself at every step; " +
                    std::to_string(r.ml.witnesses.size()) + " strict descents witnessed";
  }
  return r;
}

// ---------------------------------------------------------------------------

CochainComplexFp MooreSpaceData::cochain_complex() const {
  std::vector<FpGroup> groups(static_cast<std::size_t>(n) + 2);
  groups[0] = FpGroup::free(1);
  groups[n] = FpGroup::free(f0_rank);
  groups[n + 1] = FpGroup::free(f1_rank);
  std::vector<GroupHom> ds;
  for (int q = 0; q <= n; ++q) {
    if (q == n) ds.emplace_back(groups[n], groups[n + 1], attaching.transpose());
    else ds.push_back(GroupHom::zero(groups[q], groups[q + 1]));
  }
  return CochainComplexFp(std::move(groups), std::move(ds));
}

FpGroup MooreSpaceData::homology_n() const { return FpGroup(f0_rank, attaching); }

bool MooreSpaceData::top_homology_vanishes() const { return integer_kernel(attaching).cols() == 0; }

MooreSpaceData moore_space(const FpGroup& a, int n) {
  if (n < 2) throw ValidationError("moore-dimension", "n = " + std::to_string(n));
  MooreSpaceData m;
  m.n = n;
  m.f0_rank = a.invariant_count();
  m.f1_rank = a.torsion().size();
  m.attaching = IntMatrix(m.f0_rank, m.f1_rank);
  for (std::size_t i = 0; i < m.f1_rank; ++i) m.attaching(i, i) = a.torsion()[i];
  m.group = FpGroup(m.f0_rank, m.attaching);
  if (!m.homology_n().isomorphic(a) || !m.top_homology_vanishes())
    throw ValidationError("internal", "moore presentation does not realize " + a.canonical_string());
  return m;
}

MooreFiltration moore_filtration(const IntMatrix& i, int n) {
  if (integer_kernel(i).cols() != 0) throw ValidationError("non-injective-presentation");
  FpGroup a(i.rows(), i);
  if (!a.torsion().empty()) throw ValidationError("torsion-free", "A = " + a.canonical_string());

  MooreFiltration f;
  std::vector<FpGroup> groups;
  for (std::size_t m = 1; m <= i.rows(); ++m) {
    std::size_t k = 0;
    while (k < i.cols()) {
      bool inside = true;
      for (std::size_t r = m; r < i.rows(); ++r)
        if (i(r, k) != 0) inside = false;
      if (!inside) break;
      ++k;
    }
    FpGroup am(m, i.row_range(0, m).column_range(0, k));
    if (!am.torsion().empty())
      throw ValidationError("torsion-free", "A_" + std::to_string(m) + " = " + am.canonical_string());
    f.k.push_back(k);
    f.spaces.push_back(moore_space(am, n));
    groups.push_back(am);
  }
  for (std::size_t m = 0; m + 1 < groups.size(); ++m) {
    IntMatrix inc(m + 2, m + 1);
    for (std::size_t r = 0; r <= m; ++r) inc(r, r) = 1;
    f.inclusions.emplace_back(groups[m], groups[m + 1], std::move(inc));
  }
  if (!groups.empty()) {
    ChainColimit c = chain_colimit(groups, f.inclusions);
    f.colimit_matches = c.colimit.isomorphic(a);
  } else {
    f.colimit_matches = a.is_trivial();
  }
  return f;
}

}  // namespace dtop
