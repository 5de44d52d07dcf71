#pragma once

#include "gitstab/rational.hpp"

#include <optional>
#include <vector>

namespace gitstab {

// Dense exact-rational matrix helpers shared by the forms/weights modules.
// Row-major; all elimination is plain Gauss-Jordan over Q.
using RationalMatrix = std::vector<std::vector<Rational>>;

Rational determinant(RationalMatrix m);

int rank(RationalMatrix m);

// Reduced row echelon form in place; returns the pivot column of each
// nonzero row (in row order).
std::vector<int> rref(RationalMatrix& m);

// Solves m * x = rhs exactly. Requires full column rank; returns nullopt
// when the system is inconsistent.
std::optional<std::vector<Rational>> solve_full_column_rank(const RationalMatrix& m,
                                                            const std::vector<Rational>& rhs);

// One nonzero kernel vector of m (n_cols entries), or nullopt when m has
// full column rank.
std::optional<std::vector<Rational>> kernel_vector(const RationalMatrix& m, int n_cols);

// Inverse of a square matrix; throws std::invalid_argument when singular.
RationalMatrix inverse(const RationalMatrix& m);

} // namespace gitstab
