#pragma once

#include <optional>
#include <vector>

#include "dtop/int_matrix.hpp"

namespace dtop {

/// U·M·V = S with U, V unimodular and S diagonal, d_i ≥ 0, d_i | d_{i+1}.
///
/// `U_inv` is carried along so that callers can move between the original
/// and the diagonal basis in both directions without a second inversion.
struct SmithDecomposition {
  IntMatrix U;
  IntMatrix U_inv;
  IntMatrix S;
  IntMatrix V;
  IntMatrix V_inv;
  std::size_t rank = 0;

  // The first min(rows, cols) diagonal entries of S.
  std::vector<Int> diagonal() const;
};

/// Pivot rule: nonzero entry of least absolute value, ties broken by lowest
/// (row, col). When DTOP_CHECK_SNF is defined the result is checked before
/// returning: U·M·V = S, U·U_inv = I and V·V_inv = I (so both are
/// unimodular), and the divisibility chain.
SmithDecomposition smith_normal_form(const IntMatrix& M);

/// Smith reduction that tracks only the column transform V (U and U_inv are
/// left empty). Enough for kernels and invariant factors, and much cheaper
/// for tall matrices.
SmithDecomposition smith_normal_form_right(const IntMatrix& M);

/// Z-basis of {z : M z = 0} as columns.
IntMatrix integer_kernel(const IntMatrix& M);

/// Throws ValidationError("smith-decomposition") if `d` is not a valid
/// decomposition of M. Exposed so tests can check arbitrary decompositions.
void verify_smith(const IntMatrix& M, const SmithDecomposition& d);

/// Solves A·z = b over the integers and computes integer kernels, reusing one
/// Smith decomposition for every query.
class IntegerSolver {
 public:
  explicit IntegerSolver(const IntMatrix& A);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t rank() const { return snf_.rank; }

  std::optional<Vec> solve(const Vec& b) const;
  bool solvable(const Vec& b) const { return solve(b).has_value(); }

  // Columns form a Z-basis of {z : A z = 0}.
  IntMatrix kernel() const;

 private:
  std::size_t rows_;
  std::size_t cols_;
  SmithDecomposition snf_;
};

}  // namespace dtop
