#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "dtop/cochains.hpp"
#include "dtop/covers.hpp"
#include "dtop/fp_group.hpp"

namespace dtop {

/// Inverse tower A_0 ← A_1 ← A_2 ← ... of finitely presented groups.
///
/// An explicit tower lists finitely many stages; `bond(k)` is A_{k+1} → A_k
/// and the tower continues with identity maps past the last stage. A periodic
/// tower repeats one group and one endomorphism forever.
class GroupTower {
 public:
  static GroupTower periodic(FpGroup group, GroupHom endomorphism);
  static GroupTower explicit_tower(std::vector<FpGroup> stages, std::vector<GroupHom> bonds);

  bool is_periodic() const { return periodic_; }
  // Stored stages (one for a periodic tower).
  std::size_t stored_stages() const { return stages_.size(); }
  const FpGroup& stage(std::size_t k) const;
  GroupHom bond(std::size_t k) const;
  // A_k → A_0.
  GroupHom to_base(std::size_t k) const;

 private:
  bool periodic_ = false;
  std::vector<FpGroup> stages_;
  std::vector<GroupHom> bonds_;
};

struct MittagLeffler {
  enum class Kind { Stabilized, StrictlyDecreasing, Undetermined };
  Kind kind = Kind::Undetermined;
  std::size_t step = 0;            // stabilization step, or the cap
  std::vector<Subgroup> images;    // Im(A_k → A_0) for k = 0..compared
  std::vector<Vec> witnesses;      // witnesses[k] ∈ Im_k \ Im_{k+1}, base coordinates
};

// Compares the images of A_k → A_0 for k ≤ cap.
MittagLeffler mittag_leffler(const GroupTower& t, std::size_t cap);

enum class Verdict { Vanishes, DoesNotVanish, Undetermined };
std::string to_string(Verdict v);
std::string to_string(MittagLeffler::Kind k);

struct Lim1Result {
  Verdict verdict = Verdict::Undetermined;
  MittagLeffler ml;
  std::string certificate;
  // Periodic towers: characteristic polynomial of the endomorphism on the
  // free quotient A/T (coefficients of x^0..x^r) and the index of e(L) in L
  // for the eventual image lattice L.
  std::vector<Int> charpoly;
  Int eventual_index = 1;
};

Lim1Result lim1_vanishes(const GroupTower& t, std::size_t cap);

// det(xI − M) as coefficients of x^0..x^r.
std::vector<Int> characteristic_polynomial(const IntMatrix& m);

/// Cellular data of M(A, n): one n-cell per generator and one (n+1)-cell per
/// relator, attached with the degrees in the presentation matrix.
struct MooreSpaceData {
  FpGroup group;           // the presentation the cells realize
  int n = 2;
  std::size_t f0_rank = 0;
  std::size_t f1_rank = 0;
  IntMatrix attaching;     // f0 × f1

  // Reduced cellular cochains: Z in degree 0 (the basepoint), Z^{f0} in
  // degree n, Z^{f1} in degree n+1, δ^n = attachingᵀ.
  CochainComplexFp cochain_complex() const;
  // Homology from the attaching matrix: H_n ≅ coker, H_{n+1} = ker.
  FpGroup homology_n() const;
  bool top_homology_vanishes() const;
};

// The presentation is first reduced to invariant factors so the relators
// are independent. n ≥ 2, otherwise ValidationError("moore-dimension").
MooreSpaceData moore_space(const FpGroup& a, int n);

struct MooreFiltration {
  std::vector<std::size_t> k;            // k_m for m = 1..Q (stored 0-based)
  std::vector<MooreSpaceData> spaces;    // M(A_m, n)
  std::vector<GroupHom> inclusions;      // A_m → A_{m+1}
  bool colimit_matches = false;          // colim A_m ≅ A
};

// A = coker(i) for an injective i : Z^{Q'} → Z^Q. Errors:
// "non-injective-presentation", "torsion-free" (A or some A_m has torsion).
MooreFiltration moore_filtration(const IntMatrix& i, int n);

/// Degreewise homomorphisms between cochain complexes.
struct CochainMap {
  std::vector<GroupHom> components;  // degree q
};

// φ δ = δ φ in every degree; throws ValidationError("cochain-map").
void check_cochain_map(const CochainMap& phi, const CochainComplexFp& source, const CochainComplexFp& target);

/// Algebraic mapping telescope of C_0 ← C_1 ← ... ← C_N.
///
/// T^q = ⊕_k C^q_k ⊕ ⊕_{k<N} C^{q-1}_k with
/// δ(α, β) = (δ_k α_k ; φ_k α_{k+1} − α_k − δ_k β_k),
/// the cochains of the telescope whose cylinder cells x × I have boundary
/// f(x) − x − (∂x) × I. Stage i of the exhaustion is the sub-telescope on
/// stages 0..i.
class Telescope {
 public:
  // bonding[k] : C_{k+1} → C_k
  Telescope(std::vector<CochainComplexFp> stages, std::vector<CochainMap> bonding);

  std::size_t stage_count() const { return stages_.size(); }
  int top_degree() const { return top_; }
  const CochainComplexFp& stage(std::size_t k) const { return stages_.at(k); }
  const CochainMap& bonding(std::size_t k) const { return bonding_.at(k); }

  // Cochains of the sub-telescope on stages 0..last.
  CochainComplexFp truncation(std::size_t last) const;
  const CochainComplexFp& complex() const { return total_; }
  // Restriction C(T_from) → C(T_to) in degree q, to ≤ from.
  GroupHom restriction(std::size_t from, std::size_t to, int q) const;
  // Cochains of the whole telescope vanishing on stages 0..i.
  CochainComplexFp relative(std::size_t i) const;
  // Inclusion of relative(j) into relative(i) (i ≤ j), or into the absolute
  // complex when i is nullopt.
  GroupHom relative_inclusion(std::size_t j, std::optional<std::size_t> i, int q) const;

 private:
  // Block indices of T_last in degree q, as (start, length) in the total.
  std::vector<std::size_t> kept_generators(std::size_t last, int q, bool relative) const;

  std::vector<CochainComplexFp> stages_;
  std::vector<CochainMap> bonding_;
  int top_ = 0;
  // offsets_[q][b]: first generator of block b in T^q, blocks ordered
  // α_0..α_N, β_0..β_{N-1}.
  std::vector<std::vector<std::size_t>> offsets_;
  CochainComplexFp total_;
};

Telescope telescope(std::vector<CochainComplexFp> stages, std::vector<CochainMap> bonding);

// Cochain complex of ∂Δ^{d+1} with Z coefficients and the cochain map
// id + (p−1)·u·zᵀ in degree d (identity elsewhere), which is ×p on H^d.
CochainComplexFp sphere_cochains(int d);
CochainMap degree_p_cochain_map(int d, const Int& p);
Telescope degree_p_telescope(int d, const Int& p, std::size_t last_stage);

// H^q of the truncations T_0 ← T_1 ← ... ← T_N along restriction.
GroupTower cohomology_tower(const Telescope& t, int q);

/// Cohomology of a space together with the pairs (X, X_i) of an exhaustion
/// and the maps H(X, X_j) → H(X, X_i) for j ≥ i.
struct PairSystem {
  FpGroup absolute;
  std::vector<FpGroup> relative;
  // maps[j][i + 1] : H(X, X_j) → H(X, X_i), entry 0 the absolute target;
  // defined for i ≤ j.
  std::vector<std::vector<GroupHom>> maps;

  const GroupHom& map(std::size_t j, int i) const;
};

PairSystem pair_system(const TruncatedCech& cech);
PairSystem pair_system(const Telescope& t, int q);

struct PhantomFiltration {
  // levels[k] = Ph^k of the absolute group.
  std::vector<Subgroup> levels;
  bool descending = false;
};

// Ph^0(i) = ⋂_{j ≥ i} Ran(H(X, X_j) → H(X, X_i)),
// Ph^{k+1}(i) = ⋂_{j ≥ i} image of Ph^k(j); reported for i = absolute.
// Throws ValidationError("missing-exhaustion") on an empty system.
PhantomFiltration phantom_filtration(const PairSystem& s, std::size_t depth);

struct TelescopeReport {
  Int p;
  int d = 0;
  std::size_t last_stage = 0;
  std::vector<FpGroup> stage_cohomology;  // H^d(T_k)
  std::vector<Int> bond_factors;          // T_{k+1} → T_k on H^d ≅ Z
  bool tower_is_periodic_model = false;   // every bond is ×p up to sign
  Lim1Result lim1;                        // on the periodic model (Z, ×p)
  PhantomFiltration phantom;              // truncated, degree d + 1
  std::vector<std::string> chain;         // identification steps with status
};

// Degree-p telescope of d-spheres truncated at stage N, its cohomology
// tower and the lim¹ verdict. p = 1 gives the identity telescope.
TelescopeReport degree_p_pipeline(const Int& p, int d, std::size_t last_stage, std::size_t cap = 10);

}  // namespace dtop
