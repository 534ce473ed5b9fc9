#pragma once

#include "dtop/simplicial.hpp"

namespace dtop {

// The face {0, …, n} of sphere_model(n); its indicator is the fundamental cocycle.
Simplex fundamental_face(int n);

/// Generator of H_n of an n-dimensional complex whose H^n(−; Z) is Z.
/// Sign: the first top simplex (lexicographic) with nonzero coefficient gets
/// a positive coefficient. Throws ValidationError("source-not-sphere-like").
Chain fundamental_cycle(const SimplicialComplex& k);

/// ⟨f^#(indicator of `face`), z⟩: the pullback of a one-simplex cochain
/// evaluated on an oriented chain.
Int evaluate_pullback(const SimplicialMap& f, const Simplex& face, const Chain& z);

/// Degree of f : K → sphere_model(n) with n = dim K and K sphere-like.
Int degree(const SimplicialMap& f);
/// Degree with respect to a caller-supplied orientation cycle of the source.
Int degree(const SimplicialMap& f, const Chain& orientation);

}  // namespace dtop
