#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dtop/int_matrix.hpp"
#include "dtop/smith.hpp"

namespace dtop {

/// A finitely presented abelian group Z^k / span(columns of R).
///
/// Elements are integer vectors in generator coordinates. `reduce` maps an
/// element to its canonical residue in the invariant-factor basis obtained
/// from the Smith form of R, which makes equality decidable. Two groups are
/// isomorphic iff their canonical forms (free rank and torsion list with
/// d_i ≥ 2, d_i | d_{i+1}) agree.
class FpGroup {
 public:
  FpGroup();  // the trivial group on no generators
  FpGroup(std::size_t generators, IntMatrix relations);

  static FpGroup free(std::size_t rank);
  static FpGroup cyclic(const Int& n);  // Z/n, n ≥ 1 (Z/1 trivial)
  static FpGroup from_invariants(const std::vector<Int>& torsion, std::size_t free_rank);
  static FpGroup direct_sum(const FpGroup& a, const FpGroup& b);
  static FpGroup power(const FpGroup& g, std::size_t k);

  std::size_t generator_count() const { return data_->generators; }
  const IntMatrix& relations() const { return data_->relations; }

  std::size_t free_rank() const { return data_->free_rank; }
  const std::vector<Int>& torsion() const { return data_->torsion; }
  // Per canonical coordinate: the modulus d ≥ 2, or 0 for a free coordinate.
  // Torsion coordinates come first, in divisibility order.
  const std::vector<Int>& moduli() const { return data_->moduli; }
  std::size_t invariant_count() const { return data_->moduli.size(); }

  bool is_trivial() const { return data_->moduli.empty(); }
  bool is_finite() const { return data_->free_rank == 0; }
  Int order() const;  // throws for infinite groups
  // Largest torsion coefficient (1 when torsion-free).
  Int exponent_of_torsion() const;

  Vec zero() const { return zero_vec(generator_count()); }
  Vec generator(std::size_t i) const;
  Vec reduce(const Vec& x) const;  // canonical coordinates
  Vec lift(const Vec& canonical) const;
  Vec normalize(const Vec& x) const { return lift(reduce(x)); }
  bool is_zero(const Vec& x) const;
  bool equal(const Vec& a, const Vec& b) const { return is_zero(a - b); }
  void check_element(const Vec& x) const;

  // All elements of a finite group in canonical coordinates, mixed-radix
  // order. Throws BudgetError past the enumeration budget.
  std::vector<Vec> canonical_elements() const;

  bool isomorphic(const FpGroup& other) const {
    return free_rank() == other.free_rank() && torsion() == other.torsion();
  }
  std::string canonical_string() const;

  // Change-of-basis matrices between generator and canonical coordinates.
  const IntMatrix& to_canonical() const { return data_->to_canon; }
  const IntMatrix& from_canonical() const { return data_->from_canon; }

 private:
  struct Data {
    std::size_t generators = 0;
    IntMatrix relations;
    std::size_t free_rank = 0;
    std::vector<Int> torsion;
    std::vector<Int> moduli;
    IntMatrix to_canon;    // invariant_count × generators
    IntMatrix from_canon;  // generators × invariant_count
  };
  std::shared_ptr<const Data> data_;
};

/// A homomorphism given by its action on generators: column j is the image of
/// source generator j in target generator coordinates.
class GroupHom {
 public:
  GroupHom(FpGroup source, FpGroup target, IntMatrix matrix);

  static GroupHom identity(const FpGroup& g);
  static GroupHom zero(const FpGroup& source, const FpGroup& target);

  const FpGroup& source() const { return source_; }
  const FpGroup& target() const { return target_; }
  const IntMatrix& matrix() const { return matrix_; }

  Vec apply(const Vec& x) const { return matrix_ * x; }
  // this ∘ first
  GroupHom after(const GroupHom& first) const;
  bool equals(const GroupHom& other) const;
  bool is_zero() const;
  // Matrix in canonical coordinates of source and target (reduced entries).
  IntMatrix canonical_matrix() const;

 private:
  FpGroup source_;
  FpGroup target_;
  IntMatrix matrix_;
};

/// Subgroup of an ambient FpGroup generated by a list of elements.
class Subgroup {
 public:
  Subgroup(FpGroup ambient, IntMatrix generators);  // generators: ambient gens × s

  static Subgroup trivial(const FpGroup& ambient);
  static Subgroup whole(const FpGroup& ambient);

  const FpGroup& ambient() const { return ambient_; }
  const IntMatrix& generators() const { return generators_; }
  std::size_t generator_count() const { return generators_.cols(); }

  bool contains(const Vec& x) const;
  // Coefficients c with generators·c ≡ x, if x is a member.
  std::optional<Vec> coefficients(const Vec& x) const;
  bool is_trivial() const;
  bool contains(const Subgroup& other) const;
  // The subgroup as an abstract group on the given generators.
  FpGroup as_group() const;

 private:
  const IntegerSolver& solver() const;

  FpGroup ambient_;
  IntMatrix generators_;
  std::shared_ptr<const IntegerSolver> solver_;
};

Subgroup kernel(const GroupHom& h);
Subgroup image(const GroupHom& h);
Subgroup image(const GroupHom& h, const Subgroup& s);
FpGroup cokernel(const GroupHom& h);
FpGroup quotient(const Subgroup& s);  // ambient / s
// Same subgroup on at most invariant_count() generators with reduced entries.
Subgroup compact(const Subgroup& s);
Subgroup intersect(const Subgroup& a, const Subgroup& b);
Subgroup sum(const Subgroup& a, const Subgroup& b);
bool subgroup_equal(const Subgroup& a, const Subgroup& b);

/// numerator / denominator for denominator ⊆ numerator ⊆ ambient.
///
/// The quotient is presented on the numerator's generators; `representative`
/// turns a quotient element back into an ambient element of the numerator and
/// `classify` goes the other way.
class Subquotient {
 public:
  Subquotient(const Subgroup& numerator, const Subgroup& denominator);

  const FpGroup& group() const { return group_; }
  const Subgroup& numerator() const { return numerator_; }
  const Subgroup& denominator() const { return denominator_; }

  Vec representative(const Vec& element) const { return numerator_.generators() * element; }
  // Throws ValidationError("subquotient-membership") if x is not in the numerator.
  Vec classify(const Vec& x) const;
  bool contains(const Vec& x) const;

 private:
  Subgroup numerator_;
  Subgroup denominator_;
  FpGroup group_;
  std::shared_ptr<const IntegerSolver> solver_;
};

/// Homomorphism between subquotients induced by an ambient-level map that
/// carries numerator into numerator and denominator into denominator.
GroupHom induced_on_subquotients(const Subquotient& from, const Subquotient& to,
                                 const IntMatrix& ambient_map);

/// Parses `Z`, `Z/n`, `Z^k`, `0` and sums joined by `+`.
FpGroup parse_group_literal(const std::string& text);

}  // namespace dtop
