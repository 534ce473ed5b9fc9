#pragma once

// Independent checks for obstruction computations, shared by the unit tests
// and the acceptance run.

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <vector>

#include "dtop/errors.hpp"
#include "dtop/obstruction.hpp"

namespace oracles {

using namespace dtop;

inline Chain single(const Simplex& s) {
  Chain c;
  c[s] = 1;
  return c;
}

// Sign of the permutation sorting t, 0 on repeats; written out separately
// from the library's orientation code.
inline int permutation_sign(std::vector<int> t) {
  int sign = 1;
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t j = i + 1; j < t.size(); ++j) {
      if (t[i] == t[j]) return 0;
      if (t[i] > t[j]) sign = -sign;
    }
  return sign;
}

// ⟨f^# u_0, chain⟩ · (−1)^(n+1), u_0 the indicator of the face {1..n+1}:
// the same degree counted over a different face of the model.
inline Int other_face_pairing(const SimplicialMap& f, const Chain& c, int n) {
  Int total = 0;
  for (const auto& [s, a] : c) {
    std::vector<int> img;
    for (int v : s) img.push_back(f(v));
    std::vector<int> sorted = img;
    std::sort(sorted.begin(), sorted.end());
    bool is_face = sorted.size() == static_cast<std::size_t>(n + 1);
    for (int i = 0; is_face && i <= n; ++i) is_face = sorted[i] == i + 1;
    if (is_face) total += a * permutation_sign(img);
  }
  return n % 2 ? total : -total;
}

// Winding number of a closed vertex walk on the triangle 0, 1, 2.
inline int winding(const std::vector<int>& walk) {
  int thirds = 0;
  for (std::size_t i = 0; i < walk.size(); ++i) {
    int a = walk[i], b = walk[(i + 1) % walk.size()];
    if ((a + 1) % 3 == b) ++thirds;
    else if ((b + 1) % 3 == a) --thirds;
  }
  return thirds / 3;
}

inline std::map<int, int> random_vertex_values(std::mt19937_64& rng, const SimplicialComplex& k, int targets) {
  std::uniform_int_distribution<int> pick(0, targets - 1);
  std::map<int, int> m;
  for (int v : k.vertices()) m[v] = pick(rng);
  return m;
}

// A random vertex map on `k` into the model that keeps `sub`'s n-simplices
// off the face {0..n}.
inline std::optional<SimplicialMap> random_model_map(std::mt19937_64& rng, const SimplicialComplex& k,
                                              const SimplicialComplex& sub, const SphereTarget& t) {
  for (int attempt = 0; attempt < 50; ++attempt) {
    auto m = random_vertex_values(rng, k, t.dimension() + 2);
    for (int v : sub.vertices())
      if (rng() % 2) m[v] = t.basepoint();
    try {
      SimplicialMap f(k, t.model(), m);
      bool ok = true;
      if (sub.dimension() >= t.dimension())
        for (const auto& s : sub.simplices(t.dimension())) ok = ok && !t.hits_face(f.image(s));
      if (ok) return f;
    } catch (const ValidationError&) {
    }
  }
  return std::nullopt;
}

inline Int sum_over_cycle(const IntCochain& d, const Chain& z) {
  Int total = 0;
  for (const auto& [s, a] : z) total += a * d.at(s);
  return total;
}


}  // namespace oracles
