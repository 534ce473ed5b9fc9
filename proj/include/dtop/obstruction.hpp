#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dtop/cochains.hpp"
#include "dtop/covers.hpp"
#include "dtop/simplicial.hpp"
#include "dtop/subdivision.hpp"

namespace dtop {

/// The sphere model ∂Δ^{n+1} on vertices 0..n+1. The fundamental cocycle u
/// is the indicator of the face {0..n}; the basepoint is vertex n+1, whose
/// closed star is every simplex except that face.
class SphereTarget {
 public:
  explicit SphereTarget(int n);

  int dimension() const { return n_; }
  const SimplicialComplex& model() const { return model_; }
  int basepoint() const { return n_ + 1; }
  const Simplex& face() const { return face_; }

  // ⟨u, (w_0, ..., w_n)⟩ for an ordered tuple of model vertices.
  int evaluate(const Simplex& tuple) const;
  bool hits_face(const Simplex& image) const { return image == face_; }

 private:
  int n_;
  SimplicialComplex model_;
  Simplex face_;
};

// Largest subdivision depth a map may be given on.
inline constexpr int subdivision_depth_budget = 3;

/// A map into a sphere model defined on sd^k X for some k ≥ 0.
class ModelMap {
 public:
  ModelMap(const SimplicialMap& f, const SphereTarget& target);
  // f is defined on sd.complex(); throws BudgetError beyond the depth budget.
  ModelMap(const Subdivision& sd, const SimplicialMap& f, const SphereTarget& target);

  const SimplicialComplex& base() const { return sd_.base(); }
  const Subdivision& subdivision() const { return sd_; }
  int depth() const { return sd_.depth(); }
  const SimplicialMap& map() const { return f_; }
  const SphereTarget& target() const { return target_; }

  // ⟨f^# u, sd^k c⟩ for a chain c of the base.
  Int pair(const Chain& c) const;
  Int pair(const Simplex& s) const;

 private:
  Subdivision sd_;
  SimplicialMap f_;
  SphereTarget target_;
};

/// Homotopy through vertex maps m_0, ..., m_r on a complex; consecutive
/// stages are joined by the standard prism triangulation, and stacking two
/// homotopies concatenates their stages.
class PrismHomotopy {
 public:
  PrismHomotopy(SimplicialComplex domain, std::vector<std::map<int, int>> stages);
  static PrismHomotopy constant(const SimplicialMap& f);
  static PrismHomotopy straight(const SimplicialMap& f, const SimplicialMap& g);

  const SimplicialComplex& domain() const { return domain_; }
  const std::vector<std::map<int, int>>& stages() const { return stages_; }
  PrismHomotopy stack(const PrismHomotopy& next) const;

  // ⟨h^# u, P(c)⟩ with P the prism operator, summed over the stages.
  Int pair_prism(const SphereTarget& target, const Chain& c) const;
  // Every prism simplex over `sub` lands on a simplex of the model; returns
  // the first offending prism simplex otherwise.
  std::optional<std::string> check_simplicial(const SphereTarget& target, const SimplicialComplex& sub) const;

 private:
  SimplicialComplex domain_;
  std::vector<std::map<int, int>> stages_;
};

/// Integer cochain on the simplices of a pair outside the subcomplex.
struct IntCochain {
  int degree = 0;
  std::vector<Simplex> basis;
  Vec values;

  Int at(const Simplex& s) const;
  std::vector<Simplex> support() const;
  bool is_zero() const { return dtop::is_zero(values); }
};

// Relative coboundary of an integer cochain of the pair.
IntCochain coboundary(const IntCochain& c, const SimplicialPair& pair);

// c(f)(ρ) = [f on ∂ρ] for (n+1)-simplices ρ outside L, checked to be a
// relative cocycle. f must not carry an n-simplex of L onto the face {0..n}.
IntCochain obstruction_cocycle(const ModelMap& f, const SimplicialPair& pair);

struct ExtensionCertificate {
  bool extensible = true;
  std::vector<Simplex> obstructed;  // cells with nonzero value
  std::vector<Simplex> degree_zero; // cells where f|∂ρ has degree 0
};
ExtensionCertificate is_extensible(const IntCochain& c);

// d(f, g; h)(σ) = ⟨f^#u, σ⟩ − ⟨g^#u, σ⟩ + ⟨h^#u, P(∂σ)⟩: the degree of the
// map on ∂(σ × I) given by f, g and h. h runs from f to g on sd^k X^{n-1}.
IntCochain deformation_cochain(const ModelMap& f, const ModelMap& g, const PrismHomotopy& h,
                               const SimplicialPair& pair);
// The constant-homotopy case; f and g must agree on sd^k X^{n-1}, otherwise
// ValidationError("agreement") names a simplex where they differ.
IntCochain difference_cochain(const ModelMap& f, const ModelMap& g, const SimplicialPair& pair);

struct ChiClass {
  FpGroup group;   // H^n(X, L; Z)
  Vec element;     // canonical coordinates
  Vec cocycle;     // f^# u on the basis of the pair
  Int fundamental_value;  // ⟨f^#u, z⟩ when X is sphere-like and L is empty
  bool has_fundamental_value = false;
};

ChiClass chi_class(const ModelMap& f, const SimplicialPair& pair);
// Class of d(f, basepoint; straight homotopy), for cross-validation.
ChiClass chi_class_via_difference(const ModelMap& f, const SimplicialPair& pair);

struct RealizedClass {
  Vec element;
  std::map<int, int> representative;
};

struct Classification {
  FpGroup group;
  std::vector<RealizedClass> realized;  // sorted by element
  bool exhaustive = false;              // every vertex map was examined
  std::size_t maps_examined = 0;
};

// Homotopy classes of maps (X, L) → (S^n, basepoint star) for dim X ≤ n,
// as H^n(X, L; Z), with representatives found among vertex maps.
Classification classify_maps(const SimplicialPair& pair, const SphereTarget& target);

struct ThetaResult {
  Vec level_class;    // in H^n of the nerve at the level
  Vec colimit_class;  // in the truncated Čech colimit, canonical coordinates
  bool refinement_checked = false;
  bool refinement_stable = true;
  std::optional<StarCheck> star;
};

// χ of p : nerve(level) → model pushed into the truncated colimit. `cech`
// must have Z coefficients and degree n. When a finer level exists the class
// of p ∘ r is computed there and compared.
ThetaResult theta_finite_stage(const TruncatedCech& cech, std::size_t level, const SimplicialMap& p,
                               const SphereTarget& target,
                               const std::optional<std::vector<Barycentric>>& star_data = std::nullopt);

}  // namespace dtop
