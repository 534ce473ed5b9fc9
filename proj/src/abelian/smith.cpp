#include "dtop/smith.hpp"

#include <algorithm>

#include "dtop/errors.hpp"

namespace dtop {

std::vector<Int> SmithDecomposition::diagonal() const {
  std::size_t k = std::min(S.rows(), S.cols());
  std::vector<Int> d(k);
  for (std::size_t i = 0; i < k; ++i) d[i] = S(i, i);
  return d;
}

namespace {

struct Reducer {
  IntMatrix A, U, U_inv, V, V_inv;
  bool left;

  Reducer(const IntMatrix& M, bool track_left)
      : A(M), V(IntMatrix::identity(M.cols())), V_inv(IntMatrix::identity(M.cols())),
        left(track_left) {
    if (left) {
      U = IntMatrix::identity(M.rows());
      U_inv = IntMatrix::identity(M.rows());
    }
  }

  void swap_rows(std::size_t a, std::size_t b) {
    A.swap_rows(a, b);
    if (!left) return;
    U.swap_rows(a, b);
    U_inv.swap_cols(a, b);
  }
  void swap_cols(std::size_t a, std::size_t b) {
    A.swap_cols(a, b);
    V.swap_cols(a, b);
    V_inv.swap_rows(a, b);
  }
  // row dst += q row src
  void add_row(std::size_t dst, std::size_t src, const Int& q) {
    A.add_row_multiple(dst, src, q);
    if (!left) return;
    U.add_row_multiple(dst, src, q);
    U_inv.add_col_multiple(src, dst, -q);
  }
  void add_col(std::size_t dst, std::size_t src, const Int& q) {
    A.add_col_multiple(dst, src, q);
    V.add_col_multiple(dst, src, q);
    V_inv.add_row_multiple(src, dst, -q);
  }
  void negate_row(std::size_t r) {
    A.negate_row(r);
    if (!left) return;
    U.negate_row(r);
    U_inv.negate_col(r);
  }

  // Least |a| over the trailing submatrix, ties by (row, col).
  bool find_pivot(std::size_t t, std::size_t& pr, std::size_t& pc) const {
    bool found = false;
    Int best;
    for (std::size_t i = t; i < A.rows(); ++i)
      for (std::size_t j = t; j < A.cols(); ++j) {
        const Int& x = A(i, j);
        if (x == 0) continue;
        if (!found || mpz_cmpabs(x.get_mpz_t(), best.get_mpz_t()) < 0) {
          best = x;
          pr = i;
          pc = j;
          found = true;
          if (best == 1 || best == -1) return true;
        }
      }
    return found;
  }

  std::size_t run() {
    std::size_t limit = std::min(A.rows(), A.cols());
    std::size_t t = 0;
    Int q;
    for (; t < limit; ++t) {
      std::size_t pr = 0, pc = 0;
      if (!find_pivot(t, pr, pc)) break;
      swap_rows(t, pr);
      swap_cols(t, pc);
      for (;;) {
        bool clean = true;
        for (std::size_t i = t + 1; i < A.rows(); ++i) {
          if (A(i, t) == 0) continue;
          mpz_tdiv_q(q.get_mpz_t(), A(i, t).get_mpz_t(), A(t, t).get_mpz_t());
          add_row(i, t, -q);
          if (A(i, t) != 0) clean = false;
        }
        for (std::size_t j = t + 1; j < A.cols(); ++j) {
          if (A(t, j) == 0) continue;
          mpz_tdiv_q(q.get_mpz_t(), A(t, j).get_mpz_t(), A(t, t).get_mpz_t());
          add_col(j, t, -q);
          if (A(t, j) != 0) clean = false;
        }
        if (!clean) {
          // A remainder smaller than the pivot is now in row or column t.
          find_pivot(t, pr, pc);
          swap_rows(t, pr);
          swap_cols(t, pc);
          continue;
        }
        bool divisible = true;
        for (std::size_t i = t + 1; i < A.rows() && divisible; ++i)
          for (std::size_t j = t + 1; j < A.cols(); ++j)
            if (A(i, j) != 0 && !mpz_divisible_p(A(i, j).get_mpz_t(), A(t, t).get_mpz_t())) {
              add_row(t, i, Int(1));
              divisible = false;
              break;
            }
        if (divisible) break;
      }
      if (A(t, t) < 0) negate_row(t);
    }
    return t;
  }
};

}  // namespace

void verify_smith(const IntMatrix& M, const SmithDecomposition& d) {
  if (d.U * M * d.V != d.S) throw ValidationError("smith-decomposition", "U*M*V != S");
  if (d.U * d.U_inv != IntMatrix::identity(M.rows()))
    throw ValidationError("smith-decomposition", "U not unimodular");
  if (!d.S.is_diagonal()) throw ValidationError("smith-decomposition", "S not diagonal");
  auto diag = d.diagonal();
  for (std::size_t i = 0; i < diag.size(); ++i) {
    if (diag[i] < 0) throw ValidationError("smith-decomposition", "negative diagonal");
    if (i + 1 < diag.size() && diag[i] == 0 && diag[i + 1] != 0)
      throw ValidationError("smith-decomposition", "zero before nonzero");
    if (i + 1 < diag.size() && diag[i] != 0 &&
        !mpz_divisible_p(diag[i + 1].get_mpz_t(), diag[i].get_mpz_t()))
      throw ValidationError("smith-decomposition", "divisibility chain");
  }
  if (d.V * d.V_inv != IntMatrix::identity(M.cols()))
    throw ValidationError("smith-decomposition", "V not unimodular");
}

SmithDecomposition smith_normal_form(const IntMatrix& M) {
  Reducer r(M, true);
  std::size_t rank = r.run();
  SmithDecomposition d{std::move(r.U), std::move(r.U_inv), std::move(r.A), std::move(r.V),
                       std::move(r.V_inv), rank};
#ifdef DTOP_CHECK_SNF
  verify_smith(M, d);
#endif
  return d;
}

SmithDecomposition smith_normal_form_right(const IntMatrix& M) {
  Reducer r(M, false);
  std::size_t rank = r.run();
  SmithDecomposition d{IntMatrix(), IntMatrix(), std::move(r.A), std::move(r.V),
                       std::move(r.V_inv), rank};
#ifdef DTOP_CHECK_SNF
  if (!(M * d.V.column_range(rank, M.cols())).is_zero())
    throw ValidationError("smith-decomposition", "trailing columns of V are not in the kernel");
#endif
  return d;
}

IntMatrix integer_kernel(const IntMatrix& M) {
  SmithDecomposition d = smith_normal_form_right(M);
  return d.V.column_range(d.rank, M.cols());
}

IntegerSolver::IntegerSolver(const IntMatrix& A)
    : rows_(A.rows()), cols_(A.cols()), snf_(smith_normal_form(A)) {}

std::optional<Vec> IntegerSolver::solve(const Vec& b) const {
  if (b.size() != rows_) throw ValidationError("matrix-shape", "right-hand side length");
  Vec c = snf_.U * b;
  Vec w(cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    if (i < snf_.rank) {
      const Int& d = snf_.S(i, i);
      if (!mpz_divisible_p(c[i].get_mpz_t(), d.get_mpz_t())) return std::nullopt;
      mpz_divexact(w[i].get_mpz_t(), c[i].get_mpz_t(), d.get_mpz_t());
    } else if (c[i] != 0) {
      return std::nullopt;
    }
  }
  return snf_.V * w;
}

IntMatrix IntegerSolver::kernel() const {
  return snf_.V.column_range(snf_.rank, cols_);
}

}  // namespace dtop
