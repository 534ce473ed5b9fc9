#include "dtop/cochains.hpp"

#include "dtop/errors.hpp"

namespace dtop {

CochainComplexFp::CochainComplexFp(std::vector<FpGroup> gs, std::vector<GroupHom> ds)
    : groups(std::move(gs)), coboundaries(std::move(ds)) {
  if (coboundaries.size() + 1 == groups.size() && !groups.empty())
    coboundaries.push_back(GroupHom::zero(groups.back(), FpGroup()));
  if (coboundaries.size() != groups.size())
    throw ValidationError("cochain-complex-shape", std::to_string(groups.size()) + " groups, " +
                                                       std::to_string(coboundaries.size()) + " coboundaries");
  for (std::size_t q = 0; q < groups.size(); ++q) {
    const GroupHom& d = coboundaries[q];
    bool src_ok = d.source().generator_count() == groups[q].generator_count();
    bool tgt_ok = q + 1 < groups.size()
                      ? d.target().generator_count() == groups[q + 1].generator_count()
                      : d.target().is_trivial();
    if (!src_ok || !tgt_ok)
      throw ValidationError("cochain-complex-shape", "coboundary in degree " + std::to_string(q));
  }
}

FpGroup CochainComplexFp::group(int q) const {
  if (q < 0 || q > top_degree()) return FpGroup();
  return groups[q];
}

GroupHom CochainComplexFp::coboundary(int q) const {
  if (q >= 0 && q <= top_degree()) return coboundaries[q];
  return GroupHom::zero(group(q), group(q + 1));
}

void CochainComplexFp::verify() const {
  for (int q = 0; q + 1 <= top_degree(); ++q) {
    GroupHom dd = coboundaries[q + 1].after(coboundaries[q]);
    if (!dd.is_zero()) throw ValidationError("coboundary-squared", "degree " + std::to_string(q));
  }
}

SimplicialCochains::SimplicialCochains(const SimplicialPair& pair, FpGroup coefficients)
    : pair_(pair), coeff_(std::move(coefficients)) {
  const SimplicialComplex& k = pair_.complex();
  const SimplicialComplex& l = pair_.subcomplex();
  int top = k.dimension();
  basis_.resize(top + 1);
  position_.resize(top + 1);
  for (int q = 0; q <= top; ++q)
    for (const auto& s : k.simplices(q))
      if (!l.contains(s)) {
        position_[q].emplace(s, basis_[q].size());
        basis_[q].push_back(s);
      }

  for (int q = 0; q <= top; ++q) {
    std::size_t rows = q + 1 <= top ? basis_[q + 1].size() : 0;
    IntMatrix d(rows, basis_[q].size());
    for (std::size_t r = 0; r < rows; ++r) {
      const Simplex& tau = basis_[q + 1][r];
      for (std::size_t i = 0; i < tau.size(); ++i) {
        Simplex face = tau;
        face.erase(face.begin() + static_cast<long>(i));
        auto it = position_[q].find(face);
        if (it != position_[q].end()) d(r, it->second) = i % 2 ? -1 : 1;
      }
    }
    integer_delta_.push_back(std::move(d));
  }

  // δ∘δ = 0 on the integer matrices, checked row by row (rows are sparse).
  for (int q = 0; q + 1 <= top; ++q) {
    const IntMatrix& a = integer_delta_[q + 1];
    const IntMatrix& b = integer_delta_[q];
    for (std::size_t r = 0; r < a.rows(); ++r) {
      std::map<std::size_t, Int> acc;
      for (std::size_t j = 0; j < a.cols(); ++j) {
        if (a(r, j) == 0) continue;
        for (std::size_t c = 0; c < b.cols(); ++c)
          if (b(j, c) != 0) acc[c] += a(r, j) * b(j, c);
      }
      for (const auto& [c, v] : acc)
        if (v != 0) throw ValidationError("coboundary-squared", "degree " + std::to_string(q));
    }
  }

  std::vector<FpGroup> groups;
  std::vector<GroupHom> deltas;
  std::size_t g = coeff_.generator_count();
  IntMatrix id = IntMatrix::identity(g);
  for (int q = 0; q <= top; ++q) groups.push_back(FpGroup::power(coeff_, basis_[q].size()));
  for (int q = 0; q <= top; ++q) {
    FpGroup target = q + 1 <= top ? groups[q + 1] : FpGroup();
    IntMatrix m = q + 1 <= top ? kron(integer_delta_[q], id) : IntMatrix(0, groups[q].generator_count());
    deltas.emplace_back(groups[q], target, std::move(m));
  }
  complex_ = CochainComplexFp(std::move(groups), std::move(deltas));
}

const std::vector<Simplex>& SimplicialCochains::basis(int q) const {
  static const std::vector<Simplex> none;
  if (q < 0 || q >= static_cast<int>(basis_.size())) return none;
  return basis_[q];
}

std::optional<std::size_t> SimplicialCochains::position(int q, const Simplex& s) const {
  if (q < 0 || q >= static_cast<int>(position_.size())) return std::nullopt;
  auto it = position_[q].find(s);
  if (it == position_[q].end()) return std::nullopt;
  return it->second;
}

IntMatrix SimplicialCochains::integer_coboundary(int q) const {
  if (q < 0 || q >= static_cast<int>(integer_delta_.size()))
    return IntMatrix(basis(q + 1).size(), basis(q).size());
  return integer_delta_[q];
}

Vec SimplicialCochains::value(const Vec& cochain, const Simplex& s) const {
  std::size_t g = coeff_.generator_count();
  auto pos = position(static_cast<int>(s.size()) - 1, s);
  if (!pos) return zero_vec(g);
  return Vec(cochain.begin() + static_cast<long>(*pos * g), cochain.begin() + static_cast<long>((*pos + 1) * g));
}

Vec SimplicialCochains::from_values(int q, const std::vector<std::pair<Simplex, Vec>>& values) const {
  std::size_t g = coeff_.generator_count();
  Vec out = zero_vec(basis(q).size() * g);
  for (const auto& [s, v] : values) {
    auto pos = position(q, s);
    if (!pos) throw ValidationError("cochain-support", to_string(s) + " is not a basis simplex");
    if (v.size() != g) throw ValidationError("element-length", to_string(s));
    for (std::size_t j = 0; j < g; ++j) out[*pos * g + j] += v[j];
  }
  return out;
}

Cohomology::Cohomology(const CochainComplexFp& cc, int n)
    : degree_(n), delta_(cc.coboundary(n)) {
  Subgroup cocycles = kernel(delta_);
  Subgroup coboundaries = image(cc.coboundary(n - 1));
  sq_ = std::make_shared<const Subquotient>(cocycles, coboundaries);
}

bool Cohomology::is_cocycle(const Vec& cochain) const {
  return delta_.target().is_zero(delta_.apply(cochain));
}

bool Cohomology::is_coboundary(const Vec& cochain) const {
  return sq_->denominator().contains(cochain);
}

Vec Cohomology::class_of(const Vec& cocycle) const {
  if (!is_cocycle(cocycle)) throw ValidationError("not-a-cocycle", to_string(cocycle));
  return sq_->classify(cocycle);
}

Cohomology cohomology(const CochainComplexFp& cc, int n) { return Cohomology(cc, n); }

Cohomology cohomology(const SimplicialCochains& cochains, int n) { return Cohomology(cochains.complex(), n); }

FpGroup cohomology_group(const SimplicialPair& pair, const FpGroup& g, int n) {
  return Cohomology(SimplicialCochains(pair, g).complex(), n).group();
}

IntMatrix cochain_map_matrix(const SimplicialMap& f, const SimplicialCochains& source,
                             const SimplicialCochains& target, int q) {
  if (!(f.source() == source.pair().complex()) || !(f.target() == target.pair().complex()))
    throw ValidationError("pair-map", "map does not match the cochain complexes");
  if (!f.maps_into(source.pair().subcomplex(), target.pair().subcomplex()))
    throw ValidationError("pair-map", "subcomplex is not carried into the target subcomplex");
  const FpGroup& g = source.coefficients();
  if (g.generator_count() != target.coefficients().generator_count() ||
      !(g.relations() == target.coefficients().relations()))
    throw ValidationError("coefficient-mismatch", g.canonical_string() + " vs " +
                                                      target.coefficients().canonical_string());
  std::size_t k = g.generator_count();
  const auto& sb = source.basis(q);
  IntMatrix m(sb.size() * k, target.basis(q).size() * k);
  for (std::size_t i = 0; i < sb.size(); ++i) {
    Simplex img = f.apply(sb[i]);
    int sign = orientation_sign(img);
    if (sign == 0) continue;
    auto pos = target.position(q, img);
    if (!pos) continue;
    for (std::size_t j = 0; j < k; ++j) m(i * k + j, *pos * k + j) = sign;
  }
  return m;
}

GroupHom induced_map(const SimplicialMap& f, const SimplicialCochains& source, const Cohomology& source_h,
                     const SimplicialCochains& target, const Cohomology& target_h) {
  IntMatrix m = cochain_map_matrix(f, source, target, source_h.degree());
  return induced_on_subquotients(target_h.subquotient(), source_h.subquotient(), m);
}

GroupHom induced_map(const SimplicialMap& f, const FpGroup& g, int n) {
  return induced_map(f, SimplicialPair(f.source()), SimplicialPair(f.target()), g, n);
}

GroupHom induced_map(const SimplicialMap& f, const SimplicialPair& source, const SimplicialPair& target,
                     const FpGroup& g, int n) {
  SimplicialCochains sc(source, g), tc(target, g);
  Cohomology sh(sc.complex(), n), th(tc.complex(), n);
  return induced_map(f, sc, sh, tc, th);
}

}  // namespace dtop
