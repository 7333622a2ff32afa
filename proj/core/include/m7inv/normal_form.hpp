#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "m7inv/int_matrix.hpp"

namespace m7inv {

/// u * a * v = d with u, v unimodular and d diagonal, d(0,0) | d(1,1) | ...
struct SmithDecomposition {
  IntMatrix u, d, v;
};

/// Smith normal form. Deterministic: pivots are chosen by smallest nonzero
/// magnitude with row-major tie-break.
SmithDecomposition smith_normal_form(const IntMatrix& a);

/// Column-style Hermite normal form of the lattice spanned by the columns
/// of `lattice`. Pivot rows strictly increase across columns, pivots are
/// positive, entries left of a pivot in its row are reduced into [0, pivot),
/// and zero columns are dropped.
struct HermiteBasis {
  IntMatrix basis;
  // (row, col) of each pivot, in increasing row order; col indexes `basis`.
  std::vector<std::pair<std::size_t, std::size_t>> pivots;

  /// Pivot value at `row`, or 0 when the lattice does not meet that row.
  mpz_class pivot_at_row(std::size_t row) const;
};

HermiteBasis hermite_normal_form(const IntMatrix& lattice);

/// Canonical representative of v + colspan(lattice). Idempotent and constant
/// on cosets; v.size() must equal lattice.rows().
std::vector<mpz_class> hermite_reduce(const std::vector<mpz_class>& v, const IntMatrix& lattice);
std::vector<mpz_class> hermite_reduce(const std::vector<mpz_class>& v, const HermiteBasis& h);

/// Some integer solution x of a*x = b, or nullopt when none exists.
std::optional<std::vector<mpz_class>> solve_linear(const IntMatrix& a,
                                                   const std::vector<mpz_class>& b);

/// Exact determinant (fraction-free elimination); a must be square.
mpz_class determinant(const IntMatrix& a);

}  // namespace m7inv
