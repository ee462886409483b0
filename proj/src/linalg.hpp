// Exact rational linear algebra: row reduction, rank, kernels, solving.
#pragma once

#include "rational.hpp"

#include <optional>
#include <vector>

namespace nilc {

using MatQ = std::vector<VecQ>;  // row major

// Row-reduces in place to reduced row echelon form. Pivot rule: lowest column
// index with a nonzero entry, rows processed top-down. Zero rows are dropped.
// Returns the pivot column of each remaining row (strictly increasing).
std::vector<int> rref(MatQ& m);

int rank(MatQ m);

// Row space span test: is v in the span of the rows of a (given in rref)?
bool in_row_span(const MatQ& rref_rows, const std::vector<int>& pivots,
                 const VecQ& v);

// Residual of v after eliminating against rref rows (zero iff v in span).
VecQ reduce_against(const MatQ& rref_rows, const std::vector<int>& pivots,
                    VecQ v);

// Basis of { x : M x = 0 } (columns of M index the unknowns).
MatQ null_space(MatQ m);

// Solves A x = b for square invertible A; nullopt if singular/inconsistent.
std::optional<VecQ> solve(MatQ a, VecQ b);

std::optional<MatQ> invert(const MatQ& a);

// Multiplies the row by the lcm of denominators and divides by the gcd of
// numerators; leading nonzero entry made positive.
VecQ primitive_row(VecQ v);

VecQ mat_vec(const MatQ& a, const VecQ& x);
MatQ mat_mul(const MatQ& a, const MatQ& b);
MatQ transpose(const MatQ& a);
MatQ identity_mat(std::size_t n);

}  // namespace nilc
