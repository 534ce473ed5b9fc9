#pragma once

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "dtop/fp_group.hpp"

namespace dtop {

/// Hom(A, B) presented as a subquotient of the free group on matrix entries.
/// Entry (i, j) of a b×a matrix sits at coordinate j·b + i.
class HomGroup {
 public:
  HomGroup(FpGroup source, FpGroup target);

  const FpGroup& group() const { return quotient_.group(); }
  const FpGroup& source() const { return source_; }
  const FpGroup& target() const { return target_; }
  GroupHom decode(const Vec& element) const;
  Vec encode(const GroupHom& h) const;

 private:
  FpGroup source_;
  FpGroup target_;
  Subquotient quotient_;
};

HomGroup hom_group(const FpGroup& a, const FpGroup& b);

/// A free resolution 0 → Z^r → Z^k → A → 0 given by an injective k×r matrix.
IntMatrix injective_presentation(const FpGroup& a);

/// Classical Ext¹(A, B): extensions 0 → B → E → A → 0, computed as
/// coker(Hom(F_0, B) → Hom(F_1, B)) for a free resolution F_1 → F_0 of A.
struct ExtGroup {
  FpGroup group;           // the cokernel, presented on the generators of Hom(F_1, B) = B^r
  IntMatrix resolution;    // k × r, injective
  GroupHom precomposition; // Hom(F_0, B) → Hom(F_1, B)
};

ExtGroup ext_group(const FpGroup& a, const FpGroup& b);
// Same computation for a caller-chosen resolution matrix of A (must be
// injective with cokernel A).
ExtGroup ext_group_with_resolution(const IntMatrix& resolution, const FpGroup& b);

/// A table B × B → A of canonical coordinates of A, indexed by canonical
/// element indices of B (see FpGroup::canonical_elements).
struct SymmetricCocycle {
  FpGroup coefficients;    // A, in its invariant-factor presentation
  FpGroup base;            // B
  std::size_t base_size = 0;
  std::vector<Vec> table;  // size |B|², entry x·|B| + y

  const Vec& at(std::size_t x, std::size_t y) const { return table[x * base_size + y]; }
};

/// Group of symmetric 2-cocycles B × B → A modulo coboundaries
/// h(x) + h(y) − h(x + y). These classify abelian extensions
/// 0 → A → E → B → 0, i.e. the classical Ext¹(B, A).
struct CocycleExtGroup {
  FpGroup group;
  // One representative per element of `group`, in canonical_elements() order.
  std::vector<SymmetricCocycle> representatives;
  Subquotient classes;              // inside A^{|B|²}
  FpGroup coefficients;             // A, invariant-factor presentation
  FpGroup base;                     // B
  std::vector<Vec> base_elements;   // canonical elements of B

  SymmetricCocycle representative_of(const Vec& element) const;
  Vec class_of(const SymmetricCocycle& c) const;
  bool is_cocycle(const SymmetricCocycle& c) const;
};

enum class CocycleStrategy { automatic, enumerate_tables, solve_relations };

CocycleExtGroup cocycle_ext_group(const FpGroup& a, const FpGroup& b,
                                  CocycleStrategy strategy = CocycleStrategy::automatic);

/// Extension classes under the explicit naming: `kernel` is the subgroup A,
/// `quotient` is B in 0 → A → E → B → 0.
inline CocycleExtGroup extension_classes(const FpGroup& quotient, const FpGroup& kernel) {
  return cocycle_ext_group(kernel, quotient);
}

/// Pointwise sum of tables; on classes it is the Baer sum.
SymmetricCocycle baer_sum(const SymmetricCocycle& a, const SymmetricCocycle& b);

/// The middle group E of the extension defined by a cocycle: generators are
/// those of A plus one symbol [x] per element of B, with [x] + [y] = [x + y] + c(x, y).
FpGroup extension_group(const SymmetricCocycle& c);

/// Automorphisms of a finite group as matrices on its invariant-factor
/// generators. Budget: |A|^k candidate matrices.
std::vector<IntMatrix> automorphisms(const FpGroup& a);

struct ExtOrbits {
  FpGroup ext;                                // Ext¹(A, Z)
  std::vector<std::vector<Vec>> orbits;       // canonical coordinates of Ext¹(A, Z)
  std::size_t automorphism_count = 0;
};

/// Orbits of Aut(A) acting on Ext¹(A, Z) through f ↦ Ext¹(f, Z).
ExtOrbits aut_orbits_on_ext(const FpGroup& a);

}  // namespace dtop
