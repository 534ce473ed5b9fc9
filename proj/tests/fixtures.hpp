#pragma once

#include <cstdlib>
#include <random>
#include <vector>

#include "dtop/simplicial.hpp"

namespace fixtures {

inline std::uint64_t seed() {
  const char* env = std::getenv("DTOP_SEED");
  return env ? std::strtoull(env, nullptr, 10) : 20261015;
}

inline dtop::SimplicialComplex torus7() {
  std::vector<dtop::Simplex> t;
  for (int i = 0; i < 7; ++i) {
    t.push_back({i, (i + 1) % 7, (i + 3) % 7});
    t.push_back({i, (i + 2) % 7, (i + 3) % 7});
  }
  return dtop::SimplicialComplex::from_maximal(t);
}

inline dtop::SimplicialComplex rp2() {
  return dtop::SimplicialComplex::from_maximal({{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5}, {0, 1, 5},
                                                 {1, 2, 4}, {2, 3, 5}, {1, 3, 4}, {2, 4, 5}, {1, 3, 5}});
}

inline dtop::SimplicialComplex cycle(int n) {
  std::vector<dtop::Simplex> e;
  for (int i = 0; i < n; ++i) e.push_back({i, (i + 1) % n});
  return dtop::SimplicialComplex::from_maximal(e);
}

// Hexagon wound twice onto the triangle ∂Δ².
inline dtop::SimplicialMap double_wind() {
  std::map<int, int> m;
  for (int i = 0; i < 6; ++i) m[i] = i % 3;
  return dtop::SimplicialMap(cycle(6), dtop::SimplicialComplex::sphere_model(1), m);
}

inline dtop::SimplicialComplex random_complex(std::mt19937_64& rng, int vertices, int max_dim, int count) {
  std::vector<dtop::Simplex> s;
  std::uniform_int_distribution<int> dim(0, max_dim);
  for (int i = 0; i < count; ++i) {
    std::vector<int> pool(vertices);
    for (int v = 0; v < vertices; ++v) pool[v] = v;
    std::shuffle(pool.begin(), pool.end(), rng);
    int d = std::min(dim(rng), vertices - 1);
    s.emplace_back(pool.begin(), pool.begin() + d + 1);
  }
  return dtop::SimplicialComplex::from_maximal(s);
}

inline std::map<int, int> random_vertex_map(std::mt19937_64& rng, const dtop::SimplicialComplex& k, int targets) {
  std::uniform_int_distribution<int> d(0, targets - 1);
  std::map<int, int> m;
  for (int v : k.vertices()) m[v] = d(rng);
  return m;
}

}  // namespace fixtures
