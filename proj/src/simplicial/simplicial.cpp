#include "dtop/simplicial.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "dtop/budget.hpp"
#include "dtop/errors.hpp"

namespace dtop {

std::string to_string(const Simplex& s) {
  std::string out = "[";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(s[i]);
  }
  return out + "]";
}

SimplicialComplex::SimplicialComplex() : data_(std::make_shared<Data>()) {}

SimplicialComplex::SimplicialComplex(std::vector<std::vector<Simplex>> by_dim) {
  auto d = std::make_shared<Data>();
  while (!by_dim.empty() && by_dim.back().empty()) by_dim.pop_back();
  d->by_dim = std::move(by_dim);
  d->index.resize(d->by_dim.size());
  for (std::size_t k = 0; k < d->by_dim.size(); ++k) {
    auto& level = d->by_dim[k];
    std::sort(level.begin(), level.end());
    for (std::size_t i = 0; i < level.size(); ++i) d->index[k].emplace(level[i], i);
  }
  if (!d->by_dim.empty())
    for (const auto& v : d->by_dim[0]) d->vertices.push_back(v[0]);
  data_ = std::move(d);
}

SimplicialComplex SimplicialComplex::from_maximal(const std::vector<Simplex>& simplices) {
  double required = 0;
  for (const auto& s : simplices) required += std::ldexp(1.0, static_cast<int>(std::min<std::size_t>(s.size(), 1000)));
  if (required > static_cast<double>(enumeration_budget()))
    throw BudgetError("simplicial closure", required, static_cast<double>(enumeration_budget()));

  std::vector<std::set<Simplex>> faces;
  for (Simplex s : simplices) {
    if (s.empty()) continue;
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end())
      throw ValidationError("simplex-repeated-vertex", to_string(s));
    if (faces.size() < s.size()) faces.resize(s.size());
    if (faces[s.size() - 1].count(s)) continue;
    std::size_t n = s.size();
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
      Simplex f;
      for (std::size_t i = 0; i < n; ++i)
        if (mask >> i & 1) f.push_back(s[i]);
      faces[f.size() - 1].insert(std::move(f));
    }
  }
  std::vector<std::vector<Simplex>> by_dim;
  for (auto& level : faces) by_dim.emplace_back(level.begin(), level.end());
  return SimplicialComplex(std::move(by_dim));
}

SimplicialComplex SimplicialComplex::from_closed(std::vector<Simplex> simplices) {
  std::vector<std::vector<Simplex>> by_dim;
  for (auto& s : simplices) {
    if (s.empty()) continue;
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end())
      throw ValidationError("simplex-repeated-vertex", to_string(s));
    if (by_dim.size() < s.size()) by_dim.resize(s.size());
    by_dim[s.size() - 1].push_back(std::move(s));
  }
  for (auto& level : by_dim) {
    std::sort(level.begin(), level.end());
    level.erase(std::unique(level.begin(), level.end()), level.end());
  }
  for (std::size_t k = 1; k < by_dim.size(); ++k)
    for (const auto& s : by_dim[k])
      for (std::size_t i = 0; i < s.size(); ++i) {
        Simplex f = s;
        f.erase(f.begin() + static_cast<long>(i));
        if (!std::binary_search(by_dim[k - 1].begin(), by_dim[k - 1].end(), f))
          throw ValidationError("downward-closed", to_string(f) + " missing from " + to_string(s));
      }
  return SimplicialComplex(std::move(by_dim));
}

SimplicialComplex SimplicialComplex::simplex(int n) {
  Simplex s;
  for (int i = 0; i <= n; ++i) s.push_back(i);
  return from_maximal({s});
}

SimplicialComplex SimplicialComplex::sphere_model(int n) {
  if (n < 0) throw ValidationError("sphere-dimension", std::to_string(n));
  std::vector<Simplex> faces;
  for (int omit = 0; omit <= n + 1; ++omit) {
    Simplex f;
    for (int i = 0; i <= n + 1; ++i)
      if (i != omit) f.push_back(i);
    faces.push_back(f);
  }
  return from_maximal(faces);
}

const std::vector<Simplex>& SimplicialComplex::simplices(int dim) const {
  static const std::vector<Simplex> none;
  if (dim < 0 || dim > dimension()) return none;
  return data_->by_dim[dim];
}

std::size_t SimplicialComplex::size() const {
  std::size_t n = 0;
  for (const auto& level : data_->by_dim) n += level.size();
  return n;
}

bool SimplicialComplex::contains_vertex(int v) const {
  return std::binary_search(data_->vertices.begin(), data_->vertices.end(), v);
}

std::optional<std::size_t> SimplicialComplex::index_of(const Simplex& s) const {
  if (s.empty() || static_cast<int>(s.size()) - 1 > dimension()) return std::nullopt;
  const auto& idx = data_->index[s.size() - 1];
  auto it = idx.find(s);
  if (it == idx.end()) return std::nullopt;
  return it->second;
}

SimplicialComplex SimplicialComplex::skeleton(int n) const {
  std::vector<std::vector<Simplex>> by_dim;
  for (int k = 0; k <= std::min(n, dimension()); ++k) by_dim.push_back(data_->by_dim[k]);
  return SimplicialComplex(std::move(by_dim));
}

SimplicialComplex SimplicialComplex::full_subcomplex(const std::vector<int>& keep) const {
  std::set<int> kept(keep.begin(), keep.end());
  std::vector<std::vector<Simplex>> by_dim(data_->by_dim.size());
  for (std::size_t k = 0; k < data_->by_dim.size(); ++k)
    for (const auto& s : data_->by_dim[k])
      if (std::all_of(s.begin(), s.end(), [&](int v) { return kept.count(v) > 0; }))
        by_dim[k].push_back(s);
  return SimplicialComplex(std::move(by_dim));
}

std::vector<Simplex> SimplicialComplex::maximal_simplices() const {
  std::vector<Simplex> out;
  std::set<Simplex> covered;
  for (int k = dimension(); k >= 0; --k)
    for (const auto& s : data_->by_dim[k]) {
      if (!covered.count(s)) out.push_back(s);
      if (k == 0) continue;
      for (std::size_t i = 0; i < s.size(); ++i) {
        Simplex f = s;
        f.erase(f.begin() + static_cast<long>(i));
        covered.insert(std::move(f));
      }
    }
  std::sort(out.begin(), out.end());
  return out;
}

bool SimplicialComplex::is_subcomplex_of(const SimplicialComplex& other) const {
  for (const auto& level : data_->by_dim)
    for (const auto& s : level)
      if (!other.contains(s)) return false;
  return true;
}

SimplicialMap::SimplicialMap(SimplicialComplex source, SimplicialComplex target,
                             std::map<int, int> vertex_map)
    : source_(std::move(source)), target_(std::move(target)) {
  for (int v : source_.vertices()) {
    auto it = vertex_map.find(v);
    if (it == vertex_map.end())
      throw ValidationError("simplicial-map", "vertex " + std::to_string(v) + " has no image");
    if (!target_.contains_vertex(it->second))
      throw ValidationError("simplicial-map", "image " + std::to_string(it->second) + " of vertex " +
                                                  std::to_string(v) + " is not a target vertex");
    map_.emplace(v, it->second);
  }
  for (const auto& s : source_.maximal_simplices())
    if (!target_.contains(image(s)))
      throw ValidationError("simplicial-map",
                            to_string(s) + " maps to non-simplex " + to_string(image(s)));
}

SimplicialMap SimplicialMap::identity(const SimplicialComplex& k) {
  std::map<int, int> m;
  for (int v : k.vertices()) m[v] = v;
  return SimplicialMap(k, k, std::move(m));
}

SimplicialMap SimplicialMap::constant(const SimplicialComplex& source, const SimplicialComplex& target,
                                      int v) {
  std::map<int, int> m;
  for (int w : source.vertices()) m[w] = v;
  return SimplicialMap(source, target, std::move(m));
}

SimplicialMap SimplicialMap::inclusion(const SimplicialComplex& sub, const SimplicialComplex& k) {
  std::map<int, int> m;
  for (int v : sub.vertices()) m[v] = v;
  return SimplicialMap(sub, k, std::move(m));
}

int SimplicialMap::operator()(int v) const {
  auto it = map_.find(v);
  if (it == map_.end()) throw ValidationError("simplicial-map", "vertex " + std::to_string(v) + " not in source");
  return it->second;
}

Simplex SimplicialMap::apply(const Simplex& s) const {
  Simplex out;
  out.reserve(s.size());
  for (int v : s) out.push_back((*this)(v));
  return out;
}

Simplex SimplicialMap::image(const Simplex& s) const {
  Simplex out = apply(s);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

SimplicialMap SimplicialMap::after(const SimplicialMap& first) const {
  if (!(first.target() == source_))
    throw ValidationError("map-composition", "target of the first map is not the source of the second");
  std::map<int, int> m;
  for (const auto& [v, w] : first.vertex_map()) m[v] = (*this)(w);
  return SimplicialMap(first.source(), target_, std::move(m));
}

SimplicialMap SimplicialMap::restrict_to(const SimplicialComplex& sub) const {
  if (!sub.is_subcomplex_of(source_)) throw ValidationError("subcomplex", "restriction domain not in source");
  std::map<int, int> m;
  for (int v : sub.vertices()) m[v] = map_.at(v);
  return SimplicialMap(sub, target_, std::move(m));
}

bool SimplicialMap::maps_into(const SimplicialComplex& source_sub, const SimplicialComplex& target_sub) const {
  for (const auto& s : source_sub.maximal_simplices())
    if (!target_sub.contains(image(s))) return false;
  return true;
}

SimplicialPair::SimplicialPair(SimplicialComplex complex) : complex_(std::move(complex)) {}

SimplicialPair::SimplicialPair(SimplicialComplex complex, SimplicialComplex subcomplex)
    : complex_(std::move(complex)), sub_(std::move(subcomplex)) {
  for (const auto& s : sub_.maximal_simplices())
    if (!complex_.contains(s)) throw ValidationError("subcomplex", to_string(s) + " is not in the complex");
}

int orientation_sign(Simplex& t) {
  int sign = 1;
  // insertion sort counting transpositions; tuples are short
  for (std::size_t i = 1; i < t.size(); ++i)
    for (std::size_t j = i; j > 0 && t[j - 1] >= t[j]; --j) {
      if (t[j - 1] == t[j]) return 0;
      std::swap(t[j - 1], t[j]);
      sign = -sign;
    }
  for (std::size_t i = 1; i < t.size(); ++i)
    if (t[i - 1] == t[i]) return 0;
  return sign;
}

void add_oriented(Chain& c, Simplex tuple, const Int& coefficient) {
  int sign = orientation_sign(tuple);
  if (sign == 0 || coefficient == 0) return;
  Int& slot = c[tuple];
  slot += sign * coefficient;
  if (slot == 0) c.erase(tuple);
}

Chain boundary(const Chain& c) {
  Chain out;
  for (const auto& [s, coef] : c) {
    if (s.size() < 2) continue;
    for (std::size_t i = 0; i < s.size(); ++i) {
      Simplex f = s;
      f.erase(f.begin() + static_cast<long>(i));
      add_oriented(out, std::move(f), i % 2 ? Int(-coef) : coef);
    }
  }
  return out;
}

Chain push_forward(const SimplicialMap& f, const Chain& c) {
  Chain out;
  for (const auto& [s, coef] : c) add_oriented(out, f.apply(s), coef);
  return out;
}

Chain operator+(const Chain& a, const Chain& b) {
  Chain out = a;
  for (const auto& [s, coef] : b) add_oriented(out, s, coef);
  return out;
}

Chain operator-(const Chain& a, const Chain& b) {
  Chain out = a;
  for (const auto& [s, coef] : b) add_oriented(out, s, -coef);
  return out;
}

Chain operator*(const Int& s, const Chain& c) {
  Chain out;
  if (s == 0) return out;
  for (const auto& [simplex, coef] : c) out.emplace(simplex, s * coef);
  return out;
}

}  // namespace dtop
