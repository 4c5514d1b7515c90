#pragma once

#include <vector>

#include "flatchain/linalg.hpp"

// Convex polytopes cut out of a simplex by linear constraints, expressed in
// the simplex's barycentric coordinates. This is the single exact geometric
// primitive behind clipping, restriction, slicing, and overlap tests.
namespace flatchain::polytope {

enum class Relation { LessEqual, Less, Equal };

/// sum_i coeffs[i] * lambda_i (relation) rhs, where lambda are barycentric
/// coordinates on a simplex with coeffs.size() vertices. Because vertex i
/// has lambda = e_i, coeffs[i] is the value of the constrained affine
/// function at vertex i.
struct Constraint {
  linalg::Vector coeffs;
  Rational rhs;
  Relation relation = Relation::LessEqual;
};

struct Polytope {
  /// Vertices in barycentric coordinates, lexicographically sorted.
  std::vector<linalg::Vector> vertices;
  /// Affine dimension; -1 when empty.
  int dimension = -1;
  /// Triangulation into `dimension`-simplices given by vertex indices (only
  /// filled on request). Orientation is not normalized.
  std::vector<std::vector<std::size_t>> simplices;
};

/// Intersects the standard simplex on `num_vertices` barycentric coordinates
/// with the constraints. Strict inequalities are honoured exactly when the
/// constrained function is constant on the simplex; otherwise they only
/// differ from their closure on a lower-dimensional set and are treated as
/// closed.
Polytope cut(std::size_t num_vertices, const std::vector<Constraint>& constraints, bool triangulate);

/// Maps barycentric coordinates to a point given the simplex vertices.
linalg::Vector to_ambient(const std::vector<linalg::Vector>& simplex_vertices, const linalg::Vector& lambda);

}  // namespace flatchain::polytope
