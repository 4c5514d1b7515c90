#pragma once

#include <optional>
#include <vector>

#include "flatchain/rational.hpp"

// Exact dense linear algebra over the rationals. Matrices are row-major
// vectors of rows; sizes are small (at most a few dozen entries per side).
namespace flatchain::linalg {

using Vector = std::vector<Rational>;
using Matrix = std::vector<Vector>;

std::size_t rank(Matrix m);
Rational determinant(Matrix m);

/// Solves A x = b. Returns the solution when it exists and is unique.
std::optional<Vector> solve_unique(Matrix a, Vector b);

/// Basis of { x : A x = 0 } for an A with `cols` columns.
std::vector<Vector> nullspace(const Matrix& a, std::size_t cols);

/// Coordinates c with sum_j c_j basis[j] = v, if v lies in the span of the
/// (linearly independent) basis vectors.
std::optional<Vector> coordinates(const std::vector<Vector>& basis, const Vector& v);

Rational dot(const Vector& a, const Vector& b);
Vector sub(const Vector& a, const Vector& b);

/// Rank of a set of row vectors.
std::size_t rank_of(const std::vector<Vector>& rows);

/// Affine dimension of a point set (-1 for the empty set).
int affine_dimension(const std::vector<Vector>& points);

}  // namespace flatchain::linalg
