#pragma once

#include <random>
#include <vector>

#include "flatchain/linalg.hpp"
#include "flatchain/polychain.hpp"

namespace flatchain {

/// Oriented affine m-plane base + span(directions); the orientation is the
/// order of the directions.
class OrientedAffinePlane {
 public:
  OrientedAffinePlane(Point base, std::vector<linalg::Vector> directions);

  const Point& base() const { return base_; }
  const std::vector<linalg::Vector>& directions() const { return directions_; }
  std::size_t dim() const { return directions_.size(); }
  std::size_t ambient() const { return base_.size(); }
  /// Basis of the orthogonal complement of the direction space.
  const std::vector<linalg::Vector>& normals() const { return normals_; }
  bool contains(const Point& x) const;

 private:
  Point base_;
  std::vector<linalg::Vector> directions_;
  std::vector<linalg::Vector> normals_;
};

/// Orthogonal projection of R^N onto the coordinate plane L spanned by the
/// listed axes (strictly increasing), oriented by that order.
class CoordinateProjection {
 public:
  CoordinateProjection(std::size_t ambient, std::vector<std::size_t> indices);

  std::size_t ambient() const { return ambient_; }
  const std::vector<std::size_t>& indices() const { return indices_; }
  /// Complementary axes in increasing order.
  std::vector<std::size_t> complement() const;
  std::size_t dim() const { return indices_.size(); }

  Point project(const Point& x) const;
  /// The fiber over x (given in L coordinates), oriented so that L followed
  /// by the fiber has the standard orientation of R^N.
  OrientedAffinePlane fiber(const Point& x) const;

 private:
  std::size_t ambient_;
  std::vector<std::size_t> indices_;
};

/// Every j-face F satisfies dim(F cap P) <= j + m - N (exact).
bool is_transverse(const Simplex& s, const OrientedAffinePlane& p);
bool is_transverse(const Chain& a, const OrientedAffinePlane& p);

/// Slice of a transverse chain: a chain of dimension k + m - N. The
/// intersection L cap M of a cell's plane L and P = M is oriented so that
/// with (u, w) an oriented basis of L, (v, w) one of M and w one of L cap M,
/// (v, u, w) is an oriented basis of R^N. With this ordering slicing
/// commutes with the boundary with a + sign. Throws TransversalityError.
Chain slice_by_plane(const Chain& a, const OrientedAffinePlane& p);

/// Slice by the fiber of a coordinate projection over x in L.
Chain slice_fiber(const Chain& a, const CoordinateProjection& proj, const Point& x);

struct SliceSample {
  Point x;
  double slice_mass = 0.0;
  std::size_t atom_count = 0;
};

struct SliceMassProfile {
  /// Midpoint-rule estimate of the integral over L of M(A cap fiber).
  double integral = 0.0;
  double chain_mass = 0.0;
  /// chain_mass - integral; nonnegative up to quadrature error.
  double margin = 0.0;
  std::vector<SliceSample> samples;
  /// Cell side along each axis of L.
  std::vector<double> resolution;
  /// Samples dropped after every jitter attempt hit a non-transverse fiber.
  std::size_t skipped = 0;
};

/// Midpoint quadrature over a regular samples^k grid on the bounding box of
/// the projected support; requires dim A = dim L.
SliceMassProfile slice_mass_profile(const Chain& a, const CoordinateProjection& proj, std::size_t samples_per_axis);

struct GridSpec {
  Rational eps;
  Point offset;
};

/// Offset drawn uniformly from (-eps/2, eps/2)^N with 2^-30 resolution.
GridSpec random_grid(const Rational& eps, std::size_t ambient, std::mt19937_64& rng);

/// Cubical approximation sum_Q chi((tau_z A cap P_Q) restricted to Q*) [Q]
/// over the grid k-cubes Q of side eps, where Q* is the dual (N-k)-cube with
/// the same center and P_Q its plane, oriented so that [Q] cap P_Q is +1
/// at the center (the fiber orientation times (-1)^(k(N-k))). Cubes are Kuhn-triangulated and
/// oriented by their increasing axes. Throws TransversalityError when some
/// dual plane is not transverse to tau_z A; draw a new offset and retry.
Chain deformation_sample(const Chain& a, const GridSpec& grid);

/// g [Q] for the axis-parallel cube with lower corner `corner`, side `eps`,
/// spanned by `axes`, as a Kuhn-triangulated chain.
Chain grid_cube(const GroupElement& g, const Point& corner, const Rational& eps, const std::vector<std::size_t>& axes);

/// All increasing index subsets of {0..n-1} of the given size.
std::vector<std::vector<std::size_t>> coordinate_subsets(std::size_t n, std::size_t size);

}  // namespace flatchain
