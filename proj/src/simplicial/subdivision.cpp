#include "dtop/subdivision.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "dtop/budget.hpp"
#include "dtop/errors.hpp"

namespace dtop {

namespace {

double factorial(std::size_t n) {
  double f = 1;
  for (std::size_t i = 2; i <= n; ++i) f *= static_cast<double>(i);
  return f;
}

Simplex merged(const Simplex& a, const Simplex& b) {
  Simplex out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace

Subdivision::Subdivision(const SimplicialComplex& base, int depth) : base_(base) {
  if (depth < 0) throw ValidationError("subdivision-depth", std::to_string(depth));
  for (int d = 0; d < depth; ++d) {
    const SimplicialComplex& before = complex();
    auto level = std::make_shared<Level>();
    level->before = before;

    double flags = 0;
    auto maximal = before.maximal_simplices();
    for (const auto& s : maximal) flags += factorial(s.size()) * std::ldexp(1.0, static_cast<int>(s.size()));
    if (flags > static_cast<double>(enumeration_budget()))
      throw BudgetError("barycentric subdivision", flags, static_cast<double>(enumeration_budget()));

    int next = 0;
    for (int q = 0; q <= before.dimension(); ++q)
      for (const auto& s : before.simplices(q)) {
        level->label.emplace(s, next++);
        level->last.push_back(s.back());
        Simplex carrier;
        if (d == 0) {
          carrier = s;
        } else {
          const Level& prev = *levels_.back();
          for (int v : s) carrier = merged(carrier, prev.carrier[v]);
        }
        level->carrier.push_back(std::move(carrier));
      }

    std::vector<Simplex> tops;
    for (const auto& s : maximal) {
      Simplex perm = s;
      do {
        Simplex flag;
        Simplex prefix;
        for (int v : perm) {
          prefix.insert(std::upper_bound(prefix.begin(), prefix.end(), v), v);
          flag.push_back(level->label.at(prefix));
        }
        tops.push_back(std::move(flag));
      } while (std::next_permutation(perm.begin(), perm.end()));
    }
    level->complex = SimplicialComplex::from_maximal(tops);
    levels_.push_back(std::move(level));
  }
}

Simplex Subdivision::carrier(int vertex) const {
  if (levels_.empty()) return {vertex};
  const auto& c = levels_.back()->carrier;
  if (vertex < 0 || static_cast<std::size_t>(vertex) >= c.size())
    throw ValidationError("subdivision-vertex", std::to_string(vertex));
  return c[vertex];
}

Simplex Subdivision::carrier_of(const Simplex& s) const {
  if (levels_.empty()) return s;
  Simplex out;
  for (int v : s) out = merged(out, carrier(v));
  return out;
}

SimplicialMap Subdivision::last_vertex() const {
  std::map<int, int> m;
  for (int v : complex().vertices()) {
    int w = v;
    for (auto it = levels_.rbegin(); it != levels_.rend(); ++it) w = (*it)->last[w];
    m[v] = w;
  }
  return SimplicialMap(complex(), base_, std::move(m));
}

Chain Subdivision::subdivide_level(const Level& level, const Chain& c) const {
  // sd[v] = [v], sd σ = b_σ · sd(∂σ); memoized over the faces met.
  std::map<Simplex, Chain> memo;
  auto rec = [&](auto&& self, const Simplex& s) -> const Chain& {
    auto it = memo.find(s);
    if (it != memo.end()) return it->second;
    Chain out;
    int b = level.label.at(s);
    if (s.size() == 1) {
      out[{b}] = 1;
    } else {
      for (std::size_t i = 0; i < s.size(); ++i) {
        Simplex face = s;
        face.erase(face.begin() + static_cast<long>(i));
        const Chain& sub = self(self, face);
        for (const auto& [t, coef] : sub) {
          Simplex coned{b};
          coned.insert(coned.end(), t.begin(), t.end());
          add_oriented(out, std::move(coned), i % 2 ? Int(-coef) : coef);
        }
      }
    }
    return memo.emplace(s, std::move(out)).first->second;
  };
  Chain out;
  for (const auto& [s, coef] : c) {
    if (!level.before.contains(s)) throw ValidationError("subdivision-chain", to_string(s) + " not in complex");
    for (const auto& [t, k] : rec(rec, s)) add_oriented(out, t, coef * k);
  }
  return out;
}

Chain Subdivision::subdivide(const Chain& c) const {
  Chain out = c;
  for (const auto& level : levels_) out = subdivide_level(*level, out);
  return out;
}

Chain Subdivision::subdivide(const Simplex& s) const {
  Chain c;
  c[s] = 1;
  return subdivide(c);
}

SimplicialComplex Subdivision::restrict_to(const SimplicialComplex& sub) const {
  if (levels_.empty()) return sub;
  std::vector<int> keep;
  for (int v : complex().vertices())
    if (sub.contains(carrier(v))) keep.push_back(v);
  return complex().full_subcomplex(keep);
}

Subdivision barycentric_subdivision(const SimplicialComplex& k) { return Subdivision(k, 1); }

}  // namespace dtop
