#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <vector>

#include "dtop/fp_group.hpp"
#include "dtop/simplicial.hpp"

namespace dtop {

/// Cochain complex of finitely presented groups, degrees 0..top.
/// `coboundaries[q]` is δ^q : groups[q] → groups[q+1]; the last one lands in
/// the trivial group.
struct CochainComplexFp {
  std::vector<FpGroup> groups;
  std::vector<GroupHom> coboundaries;

  CochainComplexFp() = default;
  // Missing top coboundary is filled with the zero map to the trivial group.
  CochainComplexFp(std::vector<FpGroup> groups, std::vector<GroupHom> coboundaries);

  int top_degree() const { return static_cast<int>(groups.size()) - 1; }
  FpGroup group(int q) const;
  GroupHom coboundary(int q) const;  // zero map outside the stored range
  // Exact check that δ^{q+1}∘δ^q = 0 in every degree; throws
  // ValidationError("coboundary-squared").
  void verify() const;
};

/// Simplicial cochains of a pair with coefficients in G.
///
/// Degree-q cochains are indexed by the q-simplices of the complex that are
/// not in the subcomplex; a cochain is stored as a vector whose block i (of
/// length G.generator_count()) is the value on basis simplex i.
class SimplicialCochains {
 public:
  SimplicialCochains(const SimplicialPair& pair, FpGroup coefficients);

  const SimplicialPair& pair() const { return pair_; }
  const FpGroup& coefficients() const { return coeff_; }
  const CochainComplexFp& complex() const { return complex_; }
  const std::vector<Simplex>& basis(int q) const;
  std::optional<std::size_t> position(int q, const Simplex& s) const;
  // Integer coboundary matrix: rows (q+1)-basis, columns q-basis.
  IntMatrix integer_coboundary(int q) const;

  // Value of a cochain on a basis simplex (zero for simplices of the subcomplex).
  Vec value(const Vec& cochain, const Simplex& s) const;
  Vec from_values(int q, const std::vector<std::pair<Simplex, Vec>>& values) const;

 private:
  SimplicialPair pair_;
  FpGroup coeff_;
  std::vector<std::vector<Simplex>> basis_;
  std::vector<std::map<Simplex, std::size_t>> position_;
  std::vector<IntMatrix> integer_delta_;
  CochainComplexFp complex_;
};

/// H^n = ker δ^n / im δ^{n-1} of a cochain complex, with conversion between
/// classes and representative cocycles.
class Cohomology {
 public:
  Cohomology(const CochainComplexFp& cc, int n);

  int degree() const { return degree_; }
  const FpGroup& group() const { return sq_->group(); }
  const FpGroup& cochains() const { return sq_->numerator().ambient(); }
  const Subquotient& subquotient() const { return *sq_; }

  // element in group generator coordinates → cocycle
  Vec cocycle(const Vec& element) const { return sq_->representative(element); }
  // Cocycle → group element. Throws ValidationError("not-a-cocycle").
  Vec class_of(const Vec& cocycle) const;
  bool is_cocycle(const Vec& cochain) const;
  bool is_coboundary(const Vec& cochain) const;

 private:
  int degree_;
  GroupHom delta_;
  std::shared_ptr<const Subquotient> sq_;
};

Cohomology cohomology(const CochainComplexFp& cc, int n);
Cohomology cohomology(const SimplicialCochains& cochains, int n);
FpGroup cohomology_group(const SimplicialPair& pair, const FpGroup& g, int n);

/// Cochain-level pullback f^# : C^q(target pair) → C^q(source pair).
/// f must carry the source subcomplex into the target subcomplex.
IntMatrix cochain_map_matrix(const SimplicialMap& f, const SimplicialCochains& source,
                             const SimplicialCochains& target, int q);

/// f^* : H^n(target) → H^n(source) given precomputed cohomology groups.
GroupHom induced_map(const SimplicialMap& f, const SimplicialCochains& source,
                     const Cohomology& source_h, const SimplicialCochains& target,
                     const Cohomology& target_h);
GroupHom induced_map(const SimplicialMap& f, const FpGroup& g, int n);
GroupHom induced_map(const SimplicialMap& f, const SimplicialPair& source, const SimplicialPair& target,
                     const FpGroup& g, int n);

}  // namespace dtop
