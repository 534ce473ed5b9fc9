#include "dtop/degree.hpp"

#include "dtop/cochains.hpp"
#include "dtop/errors.hpp"

namespace dtop {

Simplex fundamental_face(int n) {
  Simplex f;
  for (int i = 0; i <= n; ++i) f.push_back(i);
  return f;
}

Chain fundamental_cycle(const SimplicialComplex& k) {
  int n = k.dimension();
  if (n < 1) throw ValidationError("source-not-sphere-like", "dimension " + std::to_string(n));
  FpGroup top = cohomology_group(SimplicialPair(k), FpGroup::free(1), n);
  if (!top.isomorphic(FpGroup::free(1)))
    throw ValidationError("source-not-sphere-like", "H^" + std::to_string(n) + " = " + top.canonical_string());
  SimplicialCochains cochains(SimplicialPair(k), FpGroup::free(1));
  // ∂_n is the transpose of δ^{n-1}; in top dimension H_n = ker ∂_n.
  IntMatrix ker = integer_kernel(cochains.integer_coboundary(n - 1).transpose());
  if (ker.cols() != 1)
    throw ValidationError("source-not-sphere-like", "rank H_" + std::to_string(n) + " = " + std::to_string(ker.cols()));
  Vec z = ker.column(0);
  const auto& tops = k.simplices(n);
  int sign = 0;
  for (const auto& x : z)
    if (x != 0) {
      sign = x > 0 ? 1 : -1;
      break;
    }
  Chain c;
  for (std::size_t i = 0; i < tops.size(); ++i)
    if (z[i] != 0) c[tops[i]] = sign * z[i];
  return c;
}

Int evaluate_pullback(const SimplicialMap& f, const Simplex& face, const Chain& z) {
  Int total = 0;
  for (const auto& [s, coef] : z) {
    if (s.size() != face.size()) continue;
    Simplex img = f.apply(s);
    int sign = orientation_sign(img);
    if (sign != 0 && img == face) total += sign * coef;
  }
  return total;
}

namespace {

int check_sphere_target(const SimplicialMap& f) {
  int n = f.source().dimension();
  if (n < 1) throw ValidationError("source-not-sphere-like", "dimension " + std::to_string(n));
  if (!(f.target() == SimplicialComplex::sphere_model(n)))
    throw ValidationError("sphere-target", "target is not the boundary of the " + std::to_string(n + 1) + "-simplex");
  return n;
}

}  // namespace

Int degree(const SimplicialMap& f) {
  int n = check_sphere_target(f);
  return evaluate_pullback(f, fundamental_face(n), fundamental_cycle(f.source()));
}

Int degree(const SimplicialMap& f, const Chain& orientation) {
  int n = check_sphere_target(f);
  if (!boundary(orientation).empty()) throw ValidationError("orientation-not-a-cycle");
  for (const auto& [s, coef] : orientation)
    if (!f.source().contains(s)) throw ValidationError("orientation-support", to_string(s));
  return evaluate_pullback(f, fundamental_face(n), orientation);
}

}  // namespace dtop
