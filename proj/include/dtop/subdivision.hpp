#pragma once

#include <memory>
#include <vector>

#include "dtop/simplicial.hpp"

namespace dtop {

/// Iterated barycentric subdivision sd^k K with the data needed to move
/// chains and maps between K and sd^k K.
///
/// Vertices of sd K are numbered by the position of the simplex they are the
/// barycenter of, in (dimension, lexicographic) order of K.
class Subdivision {
 public:
  Subdivision(const SimplicialComplex& base, int depth);

  const SimplicialComplex& base() const { return base_; }
  const SimplicialComplex& complex() const { return levels_.empty() ? base_ : levels_.back()->complex; }
  int depth() const { return static_cast<int>(levels_.size()); }

  // Smallest simplex of the base whose interior contains the barycenter.
  Simplex carrier(int vertex) const;
  // Smallest base simplex containing a simplex of sd^k K.
  Simplex carrier_of(const Simplex& s) const;
  // Simplicial approximation of the identity sd^k K → K: each barycenter
  // goes to the largest vertex of its carrier.
  SimplicialMap last_vertex() const;
  // Subdivision chain map C(K) → C(sd^k K).
  Chain subdivide(const Chain& c) const;
  Chain subdivide(const Simplex& s) const;
  // sd^k of a subcomplex of the base, as a subcomplex of complex().
  SimplicialComplex restrict_to(const SimplicialComplex& sub) const;

 private:
  struct Level {
    SimplicialComplex before;
    SimplicialComplex complex;
    std::map<Simplex, int> label;  // simplex of `before` → vertex of `complex`
    std::vector<Simplex> carrier;  // vertex of `complex` → simplex of the base
    std::vector<int> last;         // vertex of `complex` → vertex of `before`
  };
  Chain subdivide_level(const Level& level, const Chain& c) const;

  SimplicialComplex base_;
  std::vector<std::shared_ptr<const Level>> levels_;
};

Subdivision barycentric_subdivision(const SimplicialComplex& k);

}  // namespace dtop
