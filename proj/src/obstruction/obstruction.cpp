#include "dtop/obstruction.hpp"

#include <algorithm>
#include <cmath>

#include "dtop/budget.hpp"
#include "dtop/degree.hpp"
#include "dtop/errors.hpp"

namespace dtop {

namespace {

int lookup(const std::map<int, int>& m, int v) {
  auto it = m.find(v);
  if (it == m.end()) throw ValidationError("homotopy-stage", "vertex " + std::to_string(v) + " is not mapped");
  return it->second;
}

Chain single(const Simplex& s) {
  Chain c;
  c[s] = 1;
  return c;
}

// Every n-simplex of sd^k L must miss the face {0..n}.
void check_basepoint_star(const ModelMap& f, const SimplicialPair& pair) {
  if (pair.is_absolute()) return;
  int n = f.target().dimension();
  SimplicialComplex sub = f.subdivision().restrict_to(pair.subcomplex().skeleton(n));
  if (sub.dimension() < n) return;
  for (const auto& s : sub.simplices(n))
    if (f.target().hits_face(f.map().image(s)))
      throw ValidationError("basepoint-star", "simplex " + to_string(s) + " of the subcomplex covers the face " +
                                                  to_string(f.target().face()));
}

void check_domain(const ModelMap& f, const SimplicialComplex& needed) {
  if (!needed.is_subcomplex_of(f.base()))
    throw ValidationError("map-domain", "map is not defined on the required skeleton");
}

std::vector<Simplex> basis_outside(const SimplicialPair& pair, int q) {
  std::vector<Simplex> out;
  if (q < 0 || q > pair.complex().dimension()) return out;
  for (const auto& s : pair.complex().simplices(q))
    if (!pair.subcomplex().contains(s)) out.push_back(s);
  return out;
}

void check_compatible(const ModelMap& f, const ModelMap& g) {
  if (f.target().dimension() != g.target().dimension())
    throw ValidationError("sphere-target", "maps into spheres of different dimension");
  if (f.depth() != g.depth() || !(f.base() == g.base()))
    throw ValidationError("map-domain", "maps are defined on different subdivisions");
}

}  // namespace

SphereTarget::SphereTarget(int n) : n_(n) {
  if (n < 1) throw ValidationError("sphere-dimension", std::to_string(n));
  model_ = SimplicialComplex::sphere_model(n);
  face_ = fundamental_face(n);
}

int SphereTarget::evaluate(const Simplex& tuple) const {
  if (tuple.size() != face_.size()) return 0;
  Simplex t = tuple;
  int sign = orientation_sign(t);
  return sign != 0 && t == face_ ? sign : 0;
}

ModelMap::ModelMap(const SimplicialMap& f, const SphereTarget& target) : ModelMap(Subdivision(f.source(), 0), f, target) {}

ModelMap::ModelMap(const Subdivision& sd, const SimplicialMap& f, const SphereTarget& target)
    : sd_(sd), f_(f), target_(target) {
  if (sd.depth() > subdivision_depth_budget)
    throw BudgetError("subdivision depth", sd.depth(), subdivision_depth_budget);
  if (!(f.source() == sd.complex())) throw ValidationError("map-domain", "map is not defined on the subdivision");
  if (!(f.target() == target.model()))
    throw ValidationError("sphere-target", "target is not the model of S^" + std::to_string(target.dimension()));
}

Int ModelMap::pair(const Chain& c) const {
  Int total = 0;
  for (const auto& [s, a] : sd_.subdivide(c)) total += a * target_.evaluate(f_.apply(s));
  return total;
}

Int ModelMap::pair(const Simplex& s) const { return pair(single(s)); }

PrismHomotopy::PrismHomotopy(SimplicialComplex domain, std::vector<std::map<int, int>> stages)
    : domain_(std::move(domain)), stages_(std::move(stages)) {
  if (stages_.empty()) throw ValidationError("homotopy-stage", "no stages");
  for (std::size_t j = 0; j < stages_.size(); ++j)
    for (int v : domain_.vertices())
      if (!stages_[j].count(v))
        throw ValidationError("homotopy-stage", "stage " + std::to_string(j) + " misses vertex " + std::to_string(v));
}

PrismHomotopy PrismHomotopy::constant(const SimplicialMap& f) { return PrismHomotopy(f.source(), {f.vertex_map()}); }

PrismHomotopy PrismHomotopy::straight(const SimplicialMap& f, const SimplicialMap& g) {
  if (!(f.source() == g.source())) throw ValidationError("map-domain", "maps have different sources");
  return PrismHomotopy(f.source(), {f.vertex_map(), g.vertex_map()});
}

PrismHomotopy PrismHomotopy::stack(const PrismHomotopy& next) const {
  if (!(domain_ == next.domain_)) throw ValidationError("homotopy-stack", "different domains");
  if (stages_.back() != next.stages_.front()) throw ValidationError("homotopy-stack", "end of the first homotopy is not the start of the second");
  auto stages = stages_;
  stages.insert(stages.end(), next.stages_.begin() + 1, next.stages_.end());
  return PrismHomotopy(domain_, std::move(stages));
}

Int PrismHomotopy::pair_prism(const SphereTarget& target, const Chain& c) const {
  Int total = 0;
  for (std::size_t j = 0; j + 1 < stages_.size(); ++j) {
    const auto& bottom = stages_[j];
    const auto& top = stages_[j + 1];
    for (const auto& [s, a] : c) {
      // P[v0..vq] = Σ_i (−1)^i [v0×0, …, vi×0, vi×1, …, vq×1]
      for (std::size_t i = 0; i < s.size(); ++i) {
        Simplex tuple;
        for (std::size_t k = 0; k <= i; ++k) tuple.push_back(lookup(bottom, s[k]));
        for (std::size_t k = i; k < s.size(); ++k) tuple.push_back(lookup(top, s[k]));
        int v = target.evaluate(tuple);
        if (v) total += (i % 2 ? -v : v) * a;
      }
    }
  }
  return total;
}

std::optional<std::string> PrismHomotopy::check_simplicial(const SphereTarget& target, const SimplicialComplex& sub) const {
  for (std::size_t j = 0; j + 1 < stages_.size(); ++j)
    for (const auto& s : sub.maximal_simplices())
      for (std::size_t i = 0; i < s.size(); ++i) {
        Simplex image;
        for (std::size_t k = 0; k <= i; ++k) image.push_back(lookup(stages_[j], s[k]));
        for (std::size_t k = i; k < s.size(); ++k) image.push_back(lookup(stages_[j + 1], s[k]));
        std::sort(image.begin(), image.end());
        image.erase(std::unique(image.begin(), image.end()), image.end());
        if (!target.model().contains(image))
          return "stage " + std::to_string(j) + ", prism simplex " + std::to_string(i) + " over " + to_string(s) +
                 " maps onto " + to_string(image);
      }
  return std::nullopt;
}

Int IntCochain::at(const Simplex& s) const {
  auto it = std::lower_bound(basis.begin(), basis.end(), s);
  if (it == basis.end() || *it != s) return 0;
  return values[static_cast<std::size_t>(it - basis.begin())];
}

std::vector<Simplex> IntCochain::support() const {
  std::vector<Simplex> out;
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (values[i] != 0) out.push_back(basis[i]);
  return out;
}

IntCochain coboundary(const IntCochain& c, const SimplicialPair& pair) {
  IntCochain out;
  out.degree = c.degree + 1;
  out.basis = basis_outside(pair, out.degree);
  for (const auto& t : out.basis) {
    Int v = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
      Simplex face = t;
      face.erase(face.begin() + static_cast<long>(i));
      v += i % 2 ? -c.at(face) : c.at(face);
    }
    out.values.push_back(v);
  }
  return out;
}

IntCochain obstruction_cocycle(const ModelMap& f, const SimplicialPair& pair) {
  int n = f.target().dimension();
  check_domain(f, pair.complex().skeleton(n));
  check_basepoint_star(f, pair);
  IntCochain c;
  c.degree = n + 1;
  c.basis = basis_outside(pair, n + 1);
  for (const auto& rho : c.basis) c.values.push_back(f.pair(boundary(single(rho))));
  if (!coboundary(c, pair).is_zero()) throw ValidationError("obstruction-cocycle", "coboundary of the obstruction is nonzero");
  return c;
}

ExtensionCertificate is_extensible(const IntCochain& c) {
  ExtensionCertificate out;
  for (std::size_t i = 0; i < c.basis.size(); ++i)
    (c.values[i] != 0 ? out.obstructed : out.degree_zero).push_back(c.basis[i]);
  out.extensible = out.obstructed.empty();
  return out;
}

IntCochain deformation_cochain(const ModelMap& f, const ModelMap& g, const PrismHomotopy& h,
                               const SimplicialPair& pair) {
  check_compatible(f, g);
  int n = f.target().dimension();
  check_domain(f, pair.complex().skeleton(n));
  check_basepoint_star(f, pair);
  check_basepoint_star(g, pair);
  const Subdivision& sd = f.subdivision();
  SimplicialComplex lower = sd.restrict_to(pair.complex().skeleton(n - 1));
  for (int v : lower.vertices()) {
    if (lookup(h.stages().front(), v) != f.map()(v) || lookup(h.stages().back(), v) != g.map()(v))
      throw ValidationError("homotopy-ends", "homotopy does not run from f to g at vertex " + std::to_string(v));
  }
  if (auto bad = h.check_simplicial(f.target(), lower)) throw ValidationError("homotopy-simplicial", *bad);
  if (!pair.is_absolute()) {
    SimplicialComplex sub = sd.restrict_to(pair.subcomplex().skeleton(n - 1));
    if (sub.dimension() == n - 1)
      for (const auto& t : sub.simplices(n - 1))
        if (h.pair_prism(f.target(), single(t)) != 0)
          throw ValidationError("basepoint-star", "homotopy covers the face over " + to_string(t));
  }

  IntCochain d;
  d.degree = n;
  d.basis = basis_outside(pair, n);
  for (const auto& s : d.basis) {
    Chain sigma = single(s);
    d.values.push_back(f.pair(sigma) - g.pair(sigma) + h.pair_prism(f.target(), sd.subdivide(boundary(sigma))));
  }
  return d;
}

IntCochain difference_cochain(const ModelMap& f, const ModelMap& g, const SimplicialPair& pair) {
  check_compatible(f, g);
  int n = f.target().dimension();
  const Subdivision& sd = f.subdivision();
  SimplicialComplex lower = sd.restrict_to(pair.complex().skeleton(n - 1));
  for (int v : lower.vertices())
    if (f.map()(v) != g.map()(v))
      throw ValidationError("agreement", "maps differ at vertex " + std::to_string(v) + " over the simplex " +
                                             to_string(sd.carrier(v)));
  return deformation_cochain(f, g, PrismHomotopy::constant(f.map()), pair);
}

namespace {

ChiClass class_from_cocycle(const ModelMap& f, const SimplicialPair& pair, Vec cocycle) {
  int n = f.target().dimension();
  SimplicialCochains cochains(pair, FpGroup::free(1));
  Cohomology h = cohomology(cochains, n);
  ChiClass out;
  out.group = h.group();
  out.element = h.group().reduce(h.class_of(cocycle));
  out.cocycle = std::move(cocycle);
  if (pair.is_absolute() && pair.complex().dimension() == n) {
    try {
      out.fundamental_value = f.pair(fundamental_cycle(pair.complex()));
      out.has_fundamental_value = true;
    } catch (const ValidationError&) {
    }
  }
  return out;
}

}  // namespace

ChiClass chi_class(const ModelMap& f, const SimplicialPair& pair) {
  int n = f.target().dimension();
  check_domain(f, pair.complex());
  check_basepoint_star(f, pair);
  Vec cocycle;
  for (const auto& s : basis_outside(pair, n)) cocycle.push_back(f.pair(s));
  return class_from_cocycle(f, pair, std::move(cocycle));
}

ChiClass chi_class_via_difference(const ModelMap& f, const SimplicialPair& pair) {
  check_domain(f, pair.complex());
  const SimplicialComplex& k = f.subdivision().complex();
  ModelMap base(f.subdivision(), SimplicialMap::constant(k, f.target().model(), f.target().basepoint()), f.target());
  IntCochain d = deformation_cochain(f, base, PrismHomotopy::straight(f.map(), base.map()), pair);
  return class_from_cocycle(f, pair, d.values);
}

Classification classify_maps(const SimplicialPair& pair, const SphereTarget& target) {
  int n = target.dimension();
  const SimplicialComplex& x = pair.complex();
  if (x.dimension() > n)
    throw ValidationError("dimension-hypothesis", "dim X = " + std::to_string(x.dimension()) + " exceeds n = " +
                                                      std::to_string(n) + "; higher obstruction groups need not vanish");
  SimplicialCochains cochains(pair, FpGroup::free(1));
  Cohomology h = cohomology(cochains, n);
  Classification out;
  out.group = h.group();

  const auto& verts = x.vertices();
  const int choices = n + 2;
  const double total = std::pow(static_cast<double>(choices), static_cast<double>(verts.size()));
  const double cap = std::min<double>(static_cast<double>(enumeration_budget()), 200000.0);
  std::vector<std::map<int, int>> candidates;
  if (total <= cap) {
    out.exhaustive = true;
  } else {
    std::map<int, int> constant;
    for (int v : verts) constant[v] = target.basepoint();
    candidates.push_back(constant);
    if (x == target.model()) candidates.push_back(SimplicialMap::identity(x).vertex_map());
  }

  std::map<Vec, Vec> class_of_cocycle;
  std::map<Vec, std::map<int, int>> found;
  const auto& basis = cochains.basis(n);
  std::vector<Simplex> sub_top;
  if (!pair.is_absolute() && pair.subcomplex().dimension() >= n) sub_top = pair.subcomplex().simplices(n);
  auto consider = [&](const std::map<int, int>& m) {
    ++out.maps_examined;
    for (const auto& s : sub_top) {
      Simplex img;
      for (int v : s) img.push_back(m.at(v));
      std::sort(img.begin(), img.end());
      if (target.hits_face(img)) return;
    }
    Vec cocycle;
    cocycle.reserve(basis.size());
    for (const auto& s : basis) {
      Simplex img;
      for (int v : s) img.push_back(m.at(v));
      cocycle.push_back(target.evaluate(img));
    }
    auto it = class_of_cocycle.find(cocycle);
    if (it == class_of_cocycle.end())
      it = class_of_cocycle.emplace(cocycle, out.group.reduce(h.class_of(cocycle))).first;
    found.emplace(it->second, m);
  };

  if (out.exhaustive) {
    std::vector<int> digits(verts.size(), 0);
    for (;;) {
      std::map<int, int> m;
      for (std::size_t i = 0; i < verts.size(); ++i) m[verts[i]] = digits[i];
      consider(m);
      std::size_t i = 0;
      while (i < digits.size() && ++digits[i] == choices) digits[i++] = 0;
      if (i == digits.size()) break;
    }
  } else {
    for (const auto& m : candidates) consider(m);
  }
  for (auto& [e, m] : found) out.realized.push_back({e, std::move(m)});
  return out;
}

ThetaResult theta_finite_stage(const TruncatedCech& cech, std::size_t level, const SimplicialMap& p,
                               const SphereTarget& target, const std::optional<std::vector<Barycentric>>& star_data) {
  if (cech.degree() != target.dimension())
    throw ValidationError("degree-mismatch", "Čech degree " + std::to_string(cech.degree()) + " vs sphere dimension " +
                                                 std::to_string(target.dimension()));
  if (!cech.coefficients().isomorphic(FpGroup::free(1)) || cech.coefficients().generator_count() != 1)
    throw ValidationError("coefficients", "theta needs integer coefficients");
  const CoverTower& t = cech.tower();
  if (level >= t.level_count()) throw ValidationError("level-index", std::to_string(level));
  if (!(p.source() == t.nerve(level))) throw ValidationError("map-source", "map is not defined on the nerve at level " + std::to_string(level));

  auto pulled_class = [&](const SimplicialMap& q, std::size_t k) {
    ModelMap m(q, target);
    Vec cocycle;
    for (const auto& s : cech.cochains(k).basis(target.dimension())) cocycle.push_back(m.pair(s));
    return std::pair{cech.cohomology(k).class_of(cocycle), cech.colimit_class(k, cocycle)};
  };

  ThetaResult out;
  auto [lc, cc] = pulled_class(p, level);
  out.level_class = cech.cohomology(level).group().reduce(lc);
  out.colimit_class = cc;
  if (level + 1 < t.level_count()) {
    out.refinement_checked = true;
    auto finer = pulled_class(p.after(t.nerve_map(level + 1, level)), level + 1);
    out.refinement_stable = finer.second == cc;
  }
  if (star_data) out.star = star_condition_check(*star_data, p, t.level(level));
  return out;
}

}  // namespace dtop
