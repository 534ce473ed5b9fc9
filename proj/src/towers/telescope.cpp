#include <algorithm>

#include "dtop/degree.hpp"
#include "dtop/errors.hpp"
#include "dtop/towers.hpp"

namespace dtop {

namespace {

GroupHom component(const CochainMap& phi, int q, const CochainComplexFp& source, const CochainComplexFp& target) {
  if (q >= 0 && static_cast<std::size_t>(q) < phi.components.size()) return phi.components[q];
  return GroupHom::zero(source.group(q), target.group(q));
}

void place(IntMatrix& m, std::size_t row, std::size_t col, const IntMatrix& block, const Int& sign) {
  for (std::size_t i = 0; i < block.rows(); ++i)
    for (std::size_t j = 0; j < block.cols(); ++j) m(row + i, col + j) += sign * block(i, j);
}

FpGroup direct_sum(const std::vector<FpGroup>& parts) {
  FpGroup s;
  for (const FpGroup& g : parts) s = FpGroup::direct_sum(s, g);
  return s;
}

// Subcomplex or quotient of `cc` on the listed generators of each degree.
CochainComplexFp select(const CochainComplexFp& cc, const std::vector<std::vector<std::size_t>>& keep) {
  std::vector<FpGroup> groups;
  for (int q = 0; q <= cc.top_degree(); ++q) {
    const FpGroup& g = cc.groups[q];
    groups.emplace_back(keep[q].size(), g.relations().select_rows(keep[q]));
  }
  std::vector<GroupHom> ds;
  for (int q = 0; q <= cc.top_degree(); ++q) {
    IntMatrix d = cc.coboundaries[q].matrix().select_columns(keep[q]);
    if (q + 1 <= cc.top_degree()) d = d.select_rows(keep[q + 1]);
    else d = IntMatrix(0, keep[q].size());
    ds.emplace_back(groups[q], q + 1 <= cc.top_degree() ? groups[q + 1] : FpGroup(), std::move(d));
  }
  return CochainComplexFp(std::move(groups), std::move(ds));
}

// Matrix sending the generators `from` (total indices) onto `to`, dropping
// those not in `to` or embedding when `to` ⊇ `from`.
IntMatrix reindex(const std::vector<std::size_t>& from, const std::vector<std::size_t>& to) {
  IntMatrix m(to.size(), from.size());
  for (std::size_t c = 0; c < from.size(); ++c) {
    auto it = std::lower_bound(to.begin(), to.end(), from[c]);
    if (it != to.end() && *it == from[c]) m(static_cast<std::size_t>(it - to.begin()), c) = 1;
  }
  return m;
}

}  // namespace

void check_cochain_map(const CochainMap& phi, const CochainComplexFp& source, const CochainComplexFp& target) {
  int top = std::max(source.top_degree(), target.top_degree());
  if (static_cast<int>(phi.components.size()) > top + 1)
    throw ValidationError("cochain-map", "too many components");
  for (int q = 0; q <= top; ++q) {
    GroupHom c = component(phi, q, source, target);
    if (c.source().generator_count() != source.group(q).generator_count() ||
        c.target().generator_count() != target.group(q).generator_count())
      throw ValidationError("cochain-map", "shape in degree " + std::to_string(q));
  }
  for (int q = 0; q <= top; ++q) {
    GroupHom lhs = component(phi, q + 1, source, target).after(source.coboundary(q));
    GroupHom rhs = target.coboundary(q).after(component(phi, q, source, target));
    if (!lhs.equals(rhs)) throw ValidationError("cochain-map", "does not commute with δ in degree " + std::to_string(q));
  }
}

Telescope::Telescope(std::vector<CochainComplexFp> stages, std::vector<CochainMap> bonding)
    : stages_(std::move(stages)), bonding_(std::move(bonding)) {
  if (stages_.empty()) throw ValidationError("telescope-shape", "no stages");
  if (bonding_.size() + 1 != stages_.size())
    throw ValidationError("telescope-shape", std::to_string(stages_.size()) + " stages, " +
                                                 std::to_string(bonding_.size()) + " bonding maps");
  for (std::size_t k = 0; k < bonding_.size(); ++k) check_cochain_map(bonding_[k], stages_[k + 1], stages_[k]);

  std::size_t n = stages_.size() - 1;
  int stage_top = 0;
  for (const auto& s : stages_) stage_top = std::max(stage_top, s.top_degree());
  top_ = n == 0 ? stage_top : stage_top + 1;

  // Blocks: α_k = C^q_k for k = 0..N, then β_k = C^{q-1}_k for k < N.
  auto block_group = [&](int q, std::size_t b) {
    return b <= n ? stages_[b].group(q) : stages_[b - n - 1].group(q - 1);
  };
  std::size_t blocks = 2 * n + 1;
  std::vector<FpGroup> groups;
  offsets_.resize(top_ + 2);
  for (int q = 0; q <= top_ + 1; ++q) {
    std::vector<FpGroup> parts;
    std::size_t off = 0;
    for (std::size_t b = 0; b < blocks; ++b) {
      offsets_[q].push_back(off);
      parts.push_back(block_group(q, b));
      off += parts.back().generator_count();
    }
    offsets_[q].push_back(off);
    if (q <= top_) groups.push_back(direct_sum(parts));
  }

  std::vector<GroupHom> ds;
  for (int q = 0; q <= top_; ++q) {
    IntMatrix d(offsets_[q + 1].back(), offsets_[q].back());
    for (std::size_t k = 0; k <= n; ++k)
      place(d, offsets_[q + 1][k], offsets_[q][k], stages_[k].coboundary(q).matrix(), 1);
    for (std::size_t k = 0; k < n; ++k) {
      std::size_t row = offsets_[q + 1][n + 1 + k];
      const CochainComplexFp& ck = stages_[k];
      place(d, row, offsets_[q][k + 1], component(bonding_[k], q, stages_[k + 1], ck).matrix(), 1);
      place(d, row, offsets_[q][k], IntMatrix::identity(ck.group(q).generator_count()), -1);
      place(d, row, offsets_[q][n + 1 + k], ck.coboundary(q - 1).matrix(), -1);
    }
    FpGroup target = q < top_ ? groups[q + 1] : FpGroup();
    if (q == top_ && !d.is_zero()) throw ValidationError("internal", "telescope top degree");
    if (q == top_) d = IntMatrix(0, offsets_[q].back());
    ds.emplace_back(groups[q], target, std::move(d));
  }
  total_ = CochainComplexFp(std::move(groups), std::move(ds));
  total_.verify();
}

std::vector<std::size_t> Telescope::kept_generators(std::size_t last, int q, bool relative) const {
  std::size_t n = stages_.size() - 1;
  std::vector<std::size_t> out;
  auto add_block = [&](std::size_t b) {
    for (std::size_t g = offsets_[q][b]; g < offsets_[q][b + 1]; ++g) out.push_back(g);
  };
  for (std::size_t k = 0; k <= n; ++k)
    if (relative ? k > last : k <= last) add_block(k);
  for (std::size_t k = 0; k < n; ++k)
    if (relative ? k >= last : k < last) add_block(n + 1 + k);
  std::sort(out.begin(), out.end());
  return out;
}

CochainComplexFp Telescope::truncation(std::size_t last) const {
  if (last >= stages_.size()) throw ValidationError("telescope-stage", std::to_string(last));
  std::vector<std::vector<std::size_t>> keep;
  for (int q = 0; q <= top_; ++q) keep.push_back(kept_generators(last, q, false));
  return select(total_, keep);
}

GroupHom Telescope::restriction(std::size_t from, std::size_t to, int q) const {
  if (to > from || from >= stages_.size()) throw ValidationError("telescope-stage", "restriction order");
  auto a = kept_generators(from, q, false);
  auto b = kept_generators(to, q, false);
  FpGroup src(a.size(), total_.group(q).relations().select_rows(a));
  FpGroup tgt(b.size(), total_.group(q).relations().select_rows(b));
  return GroupHom(src, tgt, reindex(a, b));
}

CochainComplexFp Telescope::relative(std::size_t i) const {
  if (i >= stages_.size()) throw ValidationError("telescope-stage", std::to_string(i));
  std::vector<std::vector<std::size_t>> keep;
  for (int q = 0; q <= top_; ++q) keep.push_back(kept_generators(i, q, true));
  // A subcomplex: δ of a cochain vanishing on T_i vanishes on T_i.
  for (int q = 0; q < top_; ++q) {
    IntMatrix d = total_.coboundaries[q].matrix().select_columns(keep[q]);
    auto out = kept_generators(i, q + 1, false);
    if (!d.select_rows(out).is_zero()) throw ValidationError("internal", "relative telescope not closed");
  }
  return select(total_, keep);
}

GroupHom Telescope::relative_inclusion(std::size_t j, std::optional<std::size_t> i, int q) const {
  if (i && *i > j) throw ValidationError("telescope-stage", "relative inclusion order");
  auto a = kept_generators(j, q, true);
  std::vector<std::size_t> b;
  if (i) {
    b = kept_generators(*i, q, true);
  } else {
    for (std::size_t g = 0; g < offsets_[q].back(); ++g) b.push_back(g);
  }
  FpGroup src(a.size(), total_.group(q).relations().select_rows(a));
  FpGroup tgt(b.size(), total_.group(q).relations().select_rows(b));
  return GroupHom(src, tgt, reindex(a, b));
}

Telescope telescope(std::vector<CochainComplexFp> stages, std::vector<CochainMap> bonding) {
  return Telescope(std::move(stages), std::move(bonding));
}

CochainComplexFp sphere_cochains(int d) {
  SimplicialCochains c(SimplicialPair(SimplicialComplex::sphere_model(d)), FpGroup::free(1));
  return c.complex();
}

CochainMap degree_p_cochain_map(int d, const Int& p) {
  if (d < 1) throw ValidationError("sphere-dimension", std::to_string(d));
  SimplicialComplex s = SimplicialComplex::sphere_model(d);
  SimplicialCochains c(SimplicialPair(s), FpGroup::free(1));
  Chain z = fundamental_cycle(s);
  const auto& basis = c.basis(d);
  Vec u = zero_vec(basis.size());
  Vec zv = zero_vec(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (basis[i] == fundamental_face(d)) u[i] = 1;
    auto it = z.find(basis[i]);
    if (it != z.end()) zv[i] = it->second;
  }
  CochainMap phi;
  for (int q = 0; q <= d; ++q) {
    const FpGroup& g = c.complex().groups[q];
    IntMatrix m = IntMatrix::identity(g.generator_count());
    if (q == d) {
      for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = 0; j < basis.size(); ++j) m(i, j) += (p - 1) * u[i] * zv[j];
    }
    phi.components.emplace_back(g, g, std::move(m));
  }
  return phi;
}

Telescope degree_p_telescope(int d, const Int& p, std::size_t last_stage) {
  CochainComplexFp s = sphere_cochains(d);
  CochainMap phi = degree_p_cochain_map(d, p);
  std::vector<CochainComplexFp> stages(last_stage + 1, s);
  std::vector<CochainMap> bonding(last_stage, phi);
  return Telescope(std::move(stages), std::move(bonding));
}

GroupTower cohomology_tower(const Telescope& t, int q) {
  std::vector<Cohomology> hs;
  for (std::size_t k = 0; k < t.stage_count(); ++k) hs.push_back(cohomology(t.truncation(k), q));
  std::vector<FpGroup> groups;
  std::vector<GroupHom> bonds;
  for (std::size_t k = 0; k < hs.size(); ++k) groups.push_back(hs[k].group());
  for (std::size_t k = 0; k + 1 < hs.size(); ++k)
    bonds.push_back(induced_on_subquotients(hs[k + 1].subquotient(), hs[k].subquotient(),
                                            t.restriction(k + 1, k, q).matrix()));
  return GroupTower::explicit_tower(std::move(groups), std::move(bonds));
}

}  // namespace dtop
