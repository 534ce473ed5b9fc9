#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dtop/cochains.hpp"
#include "dtop/fp_group.hpp"
#include "dtop/simplicial.hpp"

namespace dtop {

/// Indexed family of nonempty subsets of the ground set {0, ..., n-1} whose
/// union is the whole ground set.
class Cover {
 public:
  Cover() = default;
  Cover(std::size_t ground, std::vector<std::vector<int>> members);

  std::size_t ground_size() const { return ground_; }
  std::size_t member_count() const { return members_.size(); }
  const std::vector<int>& member(std::size_t i) const { return members_.at(i); }
  const std::vector<std::vector<int>>& members() const { return members_; }
  bool member_contains(std::size_t i, int point) const;
  const std::vector<int>& members_at(int point) const { return at_point_.at(static_cast<std::size_t>(point)); }
  // Members meeting the given point set (the restriction of the cover to it).
  std::vector<int> members_meeting(const std::vector<int>& points) const;

  friend bool operator==(const Cover& a, const Cover& b) {
    return a.ground_ == b.ground_ && a.members_ == b.members_;
  }

 private:
  std::size_t ground_ = 0;
  std::vector<std::vector<int>> members_;
  std::vector<std::vector<int>> at_point_;
};

// One vertex per member, a simplex for each family of members with a common
// point. Throws BudgetError when the simplex count exceeds the budget.
SimplicialComplex nerve(const Cover& c);

/// fine member i is contained in coarse member assignment[i].
class RefinementMap {
 public:
  RefinementMap(Cover fine, Cover coarse, std::vector<int> assignment);

  static RefinementMap identity(const Cover& c);

  const Cover& fine() const { return fine_; }
  const Cover& coarse() const { return coarse_; }
  const std::vector<int>& assignment() const { return assignment_; }

  RefinementMap then(const RefinementMap& next) const;  // fine → coarse → next.coarse

 private:
  Cover fine_;
  Cover coarse_;
  std::vector<int> assignment_;
};

SimplicialMap nerve_map(const RefinementMap& f);
SimplicialMap nerve_map(const RefinementMap& f, const SimplicialComplex& fine_nerve,
                        const SimplicialComplex& coarse_nerve);

/// Covers at levels 0..N getting finer with the level, the refinement from
/// each level to the previous one, and a nested exhaustion X_1 ⊆ ... ⊆ X_K of
/// the ground set (stored 0-based; the last set is the whole ground set).
class CoverTower {
 public:
  // refinements[k] assigns members of level k+1 to members of level k.
  CoverTower(std::vector<Cover> levels, std::vector<std::vector<int>> refinements,
             std::vector<std::vector<int>> exhaustion = {});

  std::size_t level_count() const { return data_->levels.size(); }
  std::size_t top_level() const { return level_count() - 1; }
  const Cover& level(std::size_t k) const { return data_->levels.at(k); }
  const SimplicialComplex& nerve(std::size_t k) const { return data_->nerves.at(k); }
  const std::vector<int>& refinement(std::size_t k) const { return data_->refinements.at(k); }
  const std::vector<std::vector<int>>& exhaustion() const { return data_->exhaustion; }
  std::size_t ground_size() const { return level(0).ground_size(); }

  // Composite refinement from level `fine` down to level `coarse` ≤ fine.
  RefinementMap refinement_map(std::size_t fine, std::size_t coarse) const;
  SimplicialMap nerve_map(std::size_t fine, std::size_t coarse) const;
  // Full subcomplex of the level-k nerve on members meeting X_i.
  SimplicialComplex restricted_nerve(std::size_t k, std::size_t i) const;

 private:
  struct Data {
    std::vector<Cover> levels;
    std::vector<std::vector<int>> refinements;
    std::vector<std::vector<int>> exhaustion;
    std::vector<SimplicialComplex> nerves;
  };
  std::shared_ptr<const Data> data_;
};

// Levels 0..levels-1; level k is a cycle of 3p^k members over 3p^(levels-1)
// points, each refinement wraps p times around the coarser cycle.
CoverTower circle_solenoid_tower(int p, int levels, std::vector<std::vector<int>> exhaustion = {});

/// Colimit of A_0 → A_1 → ... → A_N, presented on ⊕A_k modulo x − φ_k(x).
struct ChainColimit {
  std::vector<FpGroup> groups;
  std::vector<GroupHom> bonding;    // A_k → A_{k+1}
  FpGroup colimit;
  std::vector<GroupHom> to_colimit; // ι_k
  std::vector<Subgroup> images;     // Im ι_k, increasing in k

  // Smallest k with Im ι_k = Im ι_N.
  std::size_t stable_from() const;
};

ChainColimit chain_colimit(std::vector<FpGroup> groups, std::vector<GroupHom> bonding);

/// Degree-n Čech cohomology of a cover tower, absolute and relative to the
/// exhaustion sets, computed level by level and passed to the colimit.
/// Relative groups use cochains vanishing on the restricted nerves.
class TruncatedCech {
 public:
  TruncatedCech(CoverTower tower, FpGroup coefficients, int n);

  static constexpr int absolute_index = -1;

  const CoverTower& tower() const { return tower_; }
  const FpGroup& coefficients() const { return coeff_; }
  int degree() const { return n_; }

  // relative to X_i; i = absolute_index gives the absolute groups
  const ChainColimit& colimit(int i = absolute_index) const;
  const SimplicialCochains& cochains(std::size_t level, int i = absolute_index) const;
  const Cohomology& cohomology(std::size_t level, int i = absolute_index) const;

  // Ȟ^n(X, X_j) → Ȟ^n(X, X_i) for i ≤ j (either may be absolute_index, the
  // empty set), at the colimit and at a single level.
  GroupHom comparison(int j, int i) const;
  GroupHom level_comparison(std::size_t level, int j, int i) const;

  // class in the colimit of a level-k cocycle
  Vec colimit_class(std::size_t level, const Vec& cocycle, int i = absolute_index) const;

 private:
  struct Level {
    std::optional<SimplicialCochains> cochains;
    std::optional<Cohomology> h;
  };
  struct Relative {
    std::vector<Level> levels;
    std::optional<ChainColimit> colimit;
  };
  Relative& relative(int i) const;
  void check_index(int i) const;

  CoverTower tower_;
  FpGroup coeff_;
  int n_;
  mutable std::map<int, Relative> cache_;
};

ChainColimit cech_cohomology_truncated(const CoverTower& t, const FpGroup& g, int n);

struct RelativeCech {
  ChainColimit relative;
  GroupHom comparison;  // into the absolute colimit
};
RelativeCech relative_cech_truncated(const CoverTower& t, std::size_t i, const FpGroup& g, int n);

/// A degree-n cochain on the nerve of one tower level, in the layout of
/// SimplicialCochains of that nerve.
struct TowerCochain {
  std::size_t level;
  int degree;
  Vec values;
};

struct MetricResult {
  Rational value;
  std::size_t join_level;
  std::vector<int> disagreement;  // δ_k for exhaustion entries k = 1..K
};

// ρ(a, b) = Σ_k δ_k 2^{-k}, δ_k = 1 when the pullbacks to the join level
// differ on the nerve restricted to X_k.
MetricResult cochain_metric(const TowerCochain& a, const TowerCochain& b, const CoverTower& t,
                            const FpGroup& g);

// Barycentric coordinates: vertex → coordinate, zero coordinates omitted.
using Barycentric = std::map<int, Rational>;

// weights[x] assigns member index → weight for point x.
std::vector<Barycentric> canonical_map(const Cover& c, const std::vector<Barycentric>& weights);
std::vector<Barycentric> uniform_weights(const Cover& c);
Barycentric push_forward(const SimplicialMap& p, const Barycentric& x);

struct StarViolation {
  int member;
  int point;
  std::string reason;
};

struct StarCheck {
  bool ok = true;
  std::vector<StarViolation> violations;
};

// For every member U and x ∈ U, f(x) must have positive coordinate at p(U).
StarCheck star_condition_check(const std::vector<Barycentric>& f, const SimplicialMap& p, const Cover& c);

}  // namespace dtop
