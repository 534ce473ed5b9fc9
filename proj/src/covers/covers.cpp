#include "dtop/covers.hpp"

#include <algorithm>
#include <iterator>

#include "dtop/budget.hpp"
#include "dtop/errors.hpp"

namespace dtop {

namespace {

std::string member_name(std::size_t i) { return "U" + std::to_string(i); }

bool intersects(const std::vector<int>& a, const std::vector<int>& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i == *j) return true;
    if (*i < *j) ++i;
    else ++j;
  }
  return false;
}

std::vector<int> intersection(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace

Cover::Cover(std::size_t ground, std::vector<std::vector<int>> members)
    : ground_(ground), members_(std::move(members)), at_point_(ground) {
  for (std::size_t i = 0; i < members_.size(); ++i) {
    auto& m = members_[i];
    std::sort(m.begin(), m.end());
    m.erase(std::unique(m.begin(), m.end()), m.end());
    if (m.empty()) throw ValidationError("empty-member", member_name(i));
    for (int x : m) {
      if (x < 0 || static_cast<std::size_t>(x) >= ground)
        throw ValidationError("point-out-of-range", member_name(i) + " contains " + std::to_string(x));
      at_point_[static_cast<std::size_t>(x)].push_back(static_cast<int>(i));
    }
  }
  for (std::size_t x = 0; x < ground; ++x)
    if (at_point_[x].empty()) throw ValidationError("cover-union", "point " + std::to_string(x) + " is uncovered");
}

bool Cover::member_contains(std::size_t i, int point) const {
  const auto& m = member(i);
  return std::binary_search(m.begin(), m.end(), point);
}

std::vector<int> Cover::members_meeting(const std::vector<int>& points) const {
  std::vector<int> out;
  for (std::size_t i = 0; i < members_.size(); ++i) {
    for (int x : points)
      if (member_contains(i, x)) {
        out.push_back(static_cast<int>(i));
        break;
      }
  }
  return out;
}

SimplicialComplex nerve(const Cover& c) {
  std::vector<Simplex> simplices;
  const std::uint64_t budget = enumeration_budget();
  // Depth-first over increasing member indices, carrying the common points.
  struct Frame {
    Simplex simplex;
    std::vector<int> common;
  };
  std::vector<Frame> stack;
  for (std::size_t i = c.member_count(); i-- > 0;)
    stack.push_back({{static_cast<int>(i)}, c.member(i)});
  while (!stack.empty()) {
    Frame f = std::move(stack.back());
    stack.pop_back();
    if (simplices.size() >= budget) throw BudgetError("nerve simplices", static_cast<double>(budget) + 1, static_cast<double>(budget));
    for (std::size_t j = c.member_count(); j-- > static_cast<std::size_t>(f.simplex.back()) + 1;) {
      if (!intersects(f.common, c.member(j))) continue;
      Simplex s = f.simplex;
      s.push_back(static_cast<int>(j));
      stack.push_back({std::move(s), intersection(f.common, c.member(j))});
    }
    simplices.push_back(std::move(f.simplex));
  }
  return SimplicialComplex::from_closed(std::move(simplices));
}

RefinementMap::RefinementMap(Cover fine, Cover coarse, std::vector<int> assignment)
    : fine_(std::move(fine)), coarse_(std::move(coarse)), assignment_(std::move(assignment)) {
  if (fine_.ground_size() != coarse_.ground_size())
    throw ValidationError("refinement-ground", std::to_string(fine_.ground_size()) + " vs " +
                                                   std::to_string(coarse_.ground_size()));
  if (assignment_.size() != fine_.member_count())
    throw ValidationError("refinement-shape", std::to_string(assignment_.size()) + " assignments for " +
                                                  std::to_string(fine_.member_count()) + " members");
  for (std::size_t i = 0; i < assignment_.size(); ++i) {
    int a = assignment_[i];
    if (a < 0 || static_cast<std::size_t>(a) >= coarse_.member_count())
      throw ValidationError("refinement-index", member_name(i) + " -> " + std::to_string(a));
    const auto& u = fine_.member(i);
    const auto& v = coarse_.member(static_cast<std::size_t>(a));
    if (!std::includes(v.begin(), v.end(), u.begin(), u.end()))
      throw ValidationError("refinement-containment", member_name(i) + " is not inside coarse " + member_name(static_cast<std::size_t>(a)));
  }
}

RefinementMap RefinementMap::identity(const Cover& c) {
  std::vector<int> a(c.member_count());
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = static_cast<int>(i);
  return RefinementMap(c, c, a);
}

RefinementMap RefinementMap::then(const RefinementMap& next) const {
  if (!(coarse_ == next.fine_)) throw ValidationError("refinement-compose", "covers do not match");
  std::vector<int> a(assignment_.size());
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = next.assignment_[static_cast<std::size_t>(assignment_[i])];
  return RefinementMap(fine_, next.coarse_, a);
}

SimplicialMap nerve_map(const RefinementMap& f) { return nerve_map(f, nerve(f.fine()), nerve(f.coarse())); }

SimplicialMap nerve_map(const RefinementMap& f, const SimplicialComplex& fine_nerve,
                        const SimplicialComplex& coarse_nerve) {
  std::map<int, int> m;
  for (std::size_t i = 0; i < f.assignment().size(); ++i) m[static_cast<int>(i)] = f.assignment()[i];
  return SimplicialMap(fine_nerve, coarse_nerve, std::move(m));
}

CoverTower::CoverTower(std::vector<Cover> levels, std::vector<std::vector<int>> refinements,
                       std::vector<std::vector<int>> exhaustion) {
  if (levels.empty()) throw ValidationError("tower-empty");
  if (refinements.size() + 1 != levels.size())
    throw ValidationError("tower-shape", std::to_string(refinements.size()) + " refinements for " +
                                             std::to_string(levels.size()) + " levels");
  for (std::size_t k = 0; k + 1 < levels.size(); ++k) {
    try {
      RefinementMap(levels[k + 1], levels[k], refinements[k]);
    } catch (const ValidationError& e) {
      throw ValidationError(e.invariant(), "level " + std::to_string(k + 1) + ": " + e.witness());
    }
  }
  std::size_t ground = levels[0].ground_size();
  for (std::size_t i = 0; i < exhaustion.size(); ++i) {
    auto& x = exhaustion[i];
    std::sort(x.begin(), x.end());
    x.erase(std::unique(x.begin(), x.end()), x.end());
    for (int p : x)
      if (p < 0 || static_cast<std::size_t>(p) >= ground)
        throw ValidationError("point-out-of-range", "exhaustion " + std::to_string(i + 1) + " contains " + std::to_string(p));
    if (i > 0 && !std::includes(x.begin(), x.end(), exhaustion[i - 1].begin(), exhaustion[i - 1].end()))
      throw ValidationError("exhaustion-nested", "entry " + std::to_string(i) + " is not inside entry " + std::to_string(i + 1));
  }
  if (!exhaustion.empty() && exhaustion.back().size() != ground)
    throw ValidationError("exhaustion-union", "last entry misses points of the ground set");

  auto d = std::make_shared<Data>();
  for (const auto& c : levels) d->nerves.push_back(dtop::nerve(c));
  d->levels = std::move(levels);
  d->refinements = std::move(refinements);
  d->exhaustion = std::move(exhaustion);
  data_ = std::move(d);
}

RefinementMap CoverTower::refinement_map(std::size_t fine, std::size_t coarse) const {
  if (coarse > fine || fine >= level_count())
    throw ValidationError("level-index", std::to_string(fine) + " -> " + std::to_string(coarse));
  RefinementMap r = RefinementMap::identity(level(fine));
  for (std::size_t k = fine; k > coarse; --k)
    r = r.then(RefinementMap(level(k), level(k - 1), refinement(k - 1)));
  return r;
}

SimplicialMap CoverTower::nerve_map(std::size_t fine, std::size_t coarse) const {
  return dtop::nerve_map(refinement_map(fine, coarse), nerve(fine), nerve(coarse));
}

SimplicialComplex CoverTower::restricted_nerve(std::size_t k, std::size_t i) const {
  if (i >= exhaustion().size()) throw ValidationError("exhaustion-index", std::to_string(i + 1));
  return nerve(k).full_subcomplex(level(k).members_meeting(exhaustion()[i]));
}

CoverTower circle_solenoid_tower(int p, int levels, std::vector<std::vector<int>> exhaustion) {
  if (p < 1 || levels < 1) throw ValidationError("solenoid-parameters", "p=" + std::to_string(p) + " levels=" + std::to_string(levels));
  double points = 3;
  for (int k = 1; k < levels; ++k) points *= p;
  if (points > static_cast<double>(enumeration_budget()) || points > 1e7)
    throw BudgetError("solenoid points", points, std::min(1e7, static_cast<double>(enumeration_budget())));
  int m = static_cast<int>(points);
  std::vector<Cover> covers;
  std::vector<std::vector<int>> refinements;
  int size = 3;
  for (int k = 0; k < levels; ++k) {
    std::vector<std::vector<int>> members(static_cast<std::size_t>(size));
    for (int j = 0; j < m; ++j) {
      members[static_cast<std::size_t>(j % size)].push_back(j);
      members[static_cast<std::size_t>((j + 1) % size)].push_back(j);
    }
    covers.emplace_back(static_cast<std::size_t>(m), std::move(members));
    if (k > 0) {
      std::vector<int> a(static_cast<std::size_t>(size));
      for (int i = 0; i < size; ++i) a[static_cast<std::size_t>(i)] = i % (size / p);
      refinements.push_back(std::move(a));
    }
    size *= p;
  }
  return CoverTower(std::move(covers), std::move(refinements), std::move(exhaustion));
}

std::size_t ChainColimit::stable_from() const {
  std::size_t k = images.size() - 1;
  while (k > 0 && subgroup_equal(images[k - 1], images.back())) --k;
  return k;
}

ChainColimit chain_colimit(std::vector<FpGroup> groups, std::vector<GroupHom> bonding) {
  if (groups.empty() || bonding.size() + 1 != groups.size())
    throw ValidationError("colimit-shape", std::to_string(groups.size()) + " groups, " +
                                               std::to_string(bonding.size()) + " maps");
  std::vector<std::size_t> offset{0};
  FpGroup sum;
  for (const auto& g : groups) {
    offset.push_back(offset.back() + g.generator_count());
    sum = FpGroup::direct_sum(sum, g);
  }
  std::size_t total = offset.back();
  std::size_t relation_count = 0;
  for (std::size_t k = 0; k + 1 < groups.size(); ++k) relation_count += groups[k].generator_count();
  IntMatrix rel(total, relation_count);
  std::size_t col = 0;
  for (std::size_t k = 0; k + 1 < groups.size(); ++k) {
    const IntMatrix& phi = bonding[k].matrix();
    for (std::size_t g = 0; g < groups[k].generator_count(); ++g, ++col) {
      rel(offset[k] + g, col) = 1;
      for (std::size_t r = 0; r < phi.rows(); ++r) rel(offset[k + 1] + r, col) -= phi(r, g);
    }
  }
  ChainColimit out;
  out.colimit = quotient(Subgroup(sum, rel));
  for (std::size_t k = 0; k < groups.size(); ++k) {
    IntMatrix inc(total, groups[k].generator_count());
    for (std::size_t g = 0; g < groups[k].generator_count(); ++g) inc(offset[k] + g, g) = 1;
    out.to_colimit.emplace_back(groups[k], out.colimit, inc);
    out.images.push_back(image(out.to_colimit.back()));
  }
  out.groups = std::move(groups);
  out.bonding = std::move(bonding);
  return out;
}

TruncatedCech::TruncatedCech(CoverTower tower, FpGroup coefficients, int n)
    : tower_(std::move(tower)), coeff_(std::move(coefficients)), n_(n) {}

void TruncatedCech::check_index(int i) const {
  if (i < absolute_index || (i >= 0 && static_cast<std::size_t>(i) >= tower_.exhaustion().size()))
    throw ValidationError("exhaustion-index", std::to_string(i + 1) + " outside 1.." +
                                                  std::to_string(tower_.exhaustion().size()));
}

TruncatedCech::Relative& TruncatedCech::relative(int i) const {
  check_index(i);
  auto it = cache_.find(i);
  if (it != cache_.end()) return it->second;
  Relative r;
  for (std::size_t k = 0; k < tower_.level_count(); ++k) {
    SimplicialPair pair = i == absolute_index
                              ? SimplicialPair(tower_.nerve(k))
                              : SimplicialPair(tower_.nerve(k), tower_.restricted_nerve(k, static_cast<std::size_t>(i)));
    Level level;
    level.cochains.emplace(pair, coeff_);
    level.h.emplace(dtop::cohomology(*level.cochains, n_));
    r.levels.push_back(std::move(level));
  }
  std::vector<FpGroup> groups;
  std::vector<GroupHom> bonding;
  for (std::size_t k = 0; k < r.levels.size(); ++k) {
    groups.push_back(r.levels[k].h->group());
    if (k + 1 < r.levels.size())
      bonding.push_back(induced_map(tower_.nerve_map(k + 1, k), *r.levels[k + 1].cochains, *r.levels[k + 1].h,
                                    *r.levels[k].cochains, *r.levels[k].h));
  }
  r.colimit.emplace(chain_colimit(std::move(groups), std::move(bonding)));
  return cache_.emplace(i, std::move(r)).first->second;
}

const ChainColimit& TruncatedCech::colimit(int i) const { return *relative(i).colimit; }

const SimplicialCochains& TruncatedCech::cochains(std::size_t level, int i) const {
  return *relative(i).levels.at(level).cochains;
}

const Cohomology& TruncatedCech::cohomology(std::size_t level, int i) const {
  return *relative(i).levels.at(level).h;
}

GroupHom TruncatedCech::level_comparison(std::size_t level, int j, int i) const {
  if (i > j) throw ValidationError("comparison-order", "X_" + std::to_string(i + 1) + " is not inside X_" + std::to_string(j + 1));
  const auto& target = relative(j).levels.at(level);
  const auto& source = relative(i).levels.at(level);
  return induced_map(SimplicialMap::identity(tower_.nerve(level)), *source.cochains, *source.h, *target.cochains,
                     *target.h);
}

GroupHom TruncatedCech::comparison(int j, int i) const {
  const ChainColimit& from = colimit(j);
  const ChainColimit& to = colimit(i);
  IntMatrix m(to.colimit.generator_count(), from.colimit.generator_count());
  std::size_t row = 0, col = 0;
  for (std::size_t k = 0; k < tower_.level_count(); ++k) {
    IntMatrix block = level_comparison(k, j, i).matrix();
    for (std::size_t r = 0; r < block.rows(); ++r)
      for (std::size_t c = 0; c < block.cols(); ++c) m(row + r, col + c) = block(r, c);
    row += to.groups[k].generator_count();
    col += from.groups[k].generator_count();
  }
  return GroupHom(from.colimit, to.colimit, std::move(m));
}

Vec TruncatedCech::colimit_class(std::size_t level, const Vec& cocycle, int i) const {
  const ChainColimit& c = colimit(i);
  Vec x = cohomology(level, i).class_of(cocycle);
  return c.colimit.reduce(c.to_colimit.at(level).apply(x));
}

ChainColimit cech_cohomology_truncated(const CoverTower& t, const FpGroup& g, int n) {
  return TruncatedCech(t, g, n).colimit();
}

RelativeCech relative_cech_truncated(const CoverTower& t, std::size_t i, const FpGroup& g, int n) {
  TruncatedCech cech(t, g, n);
  int index = static_cast<int>(i);
  return {cech.colimit(index), cech.comparison(index, TruncatedCech::absolute_index)};
}

MetricResult cochain_metric(const TowerCochain& a, const TowerCochain& b, const CoverTower& t, const FpGroup& g) {
  if (a.degree != b.degree)
    throw ValidationError("degree-mismatch", std::to_string(a.degree) + " vs " + std::to_string(b.degree));
  int n = a.degree;
  MetricResult out;
  out.join_level = std::max(a.level, b.level);
  if (out.join_level >= t.level_count()) throw ValidationError("level-index", std::to_string(out.join_level));
  SimplicialCochains join(SimplicialPair(t.nerve(out.join_level)), g);
  auto pull = [&](const TowerCochain& c) {
    SimplicialCochains own(SimplicialPair(t.nerve(c.level)), g);
    std::size_t expected = own.basis(n).size() * g.generator_count();
    if (c.values.size() != expected)
      throw ValidationError("cochain-length", std::to_string(c.values.size()) + " entries, expected " +
                                                  std::to_string(expected));
    return cochain_map_matrix(t.nerve_map(out.join_level, c.level), join, own, n) * c.values;
  };
  Vec pa = pull(a), pb = pull(b);
  out.value = 0;
  Rational weight(1, 2);
  for (std::size_t k = 0; k < t.exhaustion().size(); ++k, weight /= 2) {
    SimplicialComplex restricted = t.restricted_nerve(out.join_level, k);
    int differs = 0;
    if (n >= 0 && n <= restricted.dimension())
      for (const auto& s : restricted.simplices(n))
        if (!g.equal(join.value(pa, s), join.value(pb, s))) {
          differs = 1;
          break;
        }
    out.disagreement.push_back(differs);
    if (differs) out.value += weight;
  }
  return out;
}

std::vector<Barycentric> canonical_map(const Cover& c, const std::vector<Barycentric>& weights) {
  if (weights.size() != c.ground_size())
    throw ValidationError("weights-shape", std::to_string(weights.size()) + " points, ground has " +
                                               std::to_string(c.ground_size()));
  std::vector<Barycentric> out(weights.size());
  for (std::size_t x = 0; x < weights.size(); ++x) {
    int point = static_cast<int>(x);
    Rational total = 0;
    for (const auto& [member, w] : weights[x]) {
      if (member < 0 || static_cast<std::size_t>(member) >= c.member_count())
        throw ValidationError("weight-support", "point " + std::to_string(x) + " weights unknown member " + std::to_string(member));
      if (w < 0) throw ValidationError("weight-negative", "point " + std::to_string(x));
      if (w != 0 && !c.member_contains(static_cast<std::size_t>(member), point))
        throw ValidationError("weight-support", "point " + std::to_string(x) + " weights " + member_name(static_cast<std::size_t>(member)) + " not containing it");
      total += w;
      if (w != 0) out[x][member] = w;
    }
    for (int member : c.members_at(point))
      if (!out[x].count(member))
        throw ValidationError("weight-support", "point " + std::to_string(x) + " has zero weight on " + member_name(static_cast<std::size_t>(member)));
    if (total != 1)
      throw ValidationError("weights-not-normalized", "point " + std::to_string(x) + " sums to " + total.get_str());
  }
  return out;
}

std::vector<Barycentric> uniform_weights(const Cover& c) {
  std::vector<Barycentric> w(c.ground_size());
  for (std::size_t x = 0; x < w.size(); ++x) {
    const auto& ms = c.members_at(static_cast<int>(x));
    for (int m : ms) w[x][m] = Rational(1, static_cast<long>(ms.size()));
  }
  return w;
}

Barycentric push_forward(const SimplicialMap& p, const Barycentric& x) {
  Barycentric out;
  for (const auto& [v, t] : x) out[p(v)] += t;
  return out;
}

StarCheck star_condition_check(const std::vector<Barycentric>& f, const SimplicialMap& p, const Cover& c) {
  if (f.size() != c.ground_size())
    throw ValidationError("map-shape", std::to_string(f.size()) + " points, ground has " + std::to_string(c.ground_size()));
  if (!(p.source() == nerve(c))) throw ValidationError("map-source", "simplicial map is not defined on the nerve");
  StarCheck out;
  for (std::size_t x = 0; x < f.size(); ++x) {
    int point = static_cast<int>(x);
    Simplex support;
    for (const auto& [v, t] : f[x])
      if (t != 0) support.push_back(v);
    if (!p.target().contains(support)) {
      out.violations.push_back({-1, point, "image " + to_string(support) + " is not a simplex of the target"});
      continue;
    }
    for (int member : c.members_at(point)) {
      int v = p(member);
      auto it = f[x].find(v);
      if (it == f[x].end() || it->second <= 0)
        out.violations.push_back({member, point, "coordinate at vertex " + std::to_string(v) + " is not positive"});
    }
  }
  out.ok = out.violations.empty();
  return out;
}

}  // namespace dtop
