#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "flatchain/coeffgroup.hpp"
#include "flatchain/linalg.hpp"
#include "flatchain/rational.hpp"

namespace flatchain {

/// Oriented simplex; the orientation is the vertex order. Degenerate vertex
/// sets are representable (they arise as push-forward images) but never
/// survive in a canonical chain.
class Simplex {
 public:
  explicit Simplex(std::vector<Point> vertices);

  std::size_t dim() const { return vertices_.size() - 1; }
  std::size_t ambient() const { return vertices_.front().size(); }
  const std::vector<Point>& vertices() const { return vertices_; }

  std::vector<linalg::Vector> edge_vectors() const;
  /// det(E^T E) for the edge matrix E; the squared k-volume times (k!)^2.
  Rational gram_determinant() const;
  bool is_degenerate() const;
  /// k-dimensional volume sqrt(det(E^T E)) / k!.
  double volume() const;

  friend bool operator==(const Simplex& a, const Simplex& b) { return a.vertices_ == b.vertices_; }
  friend bool operator<(const Simplex& a, const Simplex& b) { return a.vertices_ < b.vertices_; }

 private:
  std::vector<Point> vertices_;
};

struct Term {
  GroupElement coeff;
  Simplex simplex;
};

enum class OverlapCheck {
  /// Reject k >= 2 chains whose cells overlap in interior.
  Verify,
  /// Caller guarantees interior-disjointness (construction by clipping or
  /// grid cells).
  Trusted,
  /// Replace overlapping cells by their common refinement, summing
  /// coefficients on the shared parts.
  Resolve,
};

/// Polyhedral k-chain in R^N: a formal sum of coefficiented oriented
/// simplices, always held in canonical form.
///
/// Canonical form: vertices of every simplex sorted lexicographically with
/// the permutation sign folded into the coefficient; zero coefficients and
/// degenerate simplices dropped; collinear overlapping segments split at
/// common breakpoints and rejoined where the coefficient does not change
/// (k = 1); identical supports merged; terms sorted.
class Chain {
 public:
  /// The zero chain.
  Chain(GroupDescriptor group, std::size_t ambient, std::size_t dim);

  /// Canonicalizes the given terms. Throws InvariantViolation naming the
  /// offending input term indices when k >= 2 cells overlap, and
  /// DescriptorMismatch / DimensionMismatch for inconsistent terms.
  /// Dropped terms are reported through `warnings` when it is non-null.
  static Chain from_terms(GroupDescriptor group, std::size_t ambient, std::size_t dim, std::vector<Term> terms,
                          std::vector<std::string>* warnings = nullptr, OverlapCheck check = OverlapCheck::Verify);

  const GroupDescriptor& group() const { return group_; }
  std::size_t ambient() const { return ambient_; }
  std::size_t dim() const { return dim_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Chain operator-() const;

  friend bool operator==(const Chain& a, const Chain& b);

 private:
  GroupDescriptor group_;
  std::size_t ambient_;
  std::size_t dim_;
  std::vector<Term> terms_;
};

/// Chain with a single term g[vertices].
Chain single_term(const GroupElement& g, std::vector<Point> vertices);

/// Simplicial boundary. The boundary of a 0-chain is the zero chain (of
/// dimension 0).
Chain boundary(const Chain& a);

/// sum |g_i| vol_k(sigma_i), summed exactly.
double mass(const Chain& a);

Chain add_chains(const Chain& a, const Chain& b);
Chain subtract_chains(const Chain& a, const Chain& b);
/// Same chain up to the choice of triangulation (A - B cancels exactly).
bool equivalent(const Chain& a, const Chain& b);
Chain scale_coefficients(const Chain& a, const std::function<GroupElement(const GroupElement&)>& f);

/// x -> linear * x + offset from R^N to R^m.
struct AffineMap {
  linalg::Matrix linear;  // m rows, N columns
  linalg::Vector offset;  // m entries

  Point apply(const Point& x) const;
  std::size_t source_dim() const { return linear.empty() ? 0 : linear.front().size(); }
  std::size_t target_dim() const { return linear.size(); }

  static AffineMap translation(const Point& y);
  static AffineMap dilation(std::size_t ambient, const Rational& r);
  /// Orthogonal projection onto the listed coordinates, as a map to R^N
  /// (the remaining coordinates are zeroed).
  static AffineMap coordinate_projection(std::size_t ambient, const std::vector<std::size_t>& keep);
};

/// Image chain with inherited vertex order; degenerate images are dropped.
Chain pushforward_affine(const Chain& a, const AffineMap& f);
Chain translate(const Chain& a, const Point& y);

/// a . x <= b, or a . x < b when strict.
struct HalfSpace {
  linalg::Vector normal;
  Rational bound;
  bool strict = false;

  bool contains(const Point& x) const;
  HalfSpace complement() const;
};

/// Intersection of finitely many half-spaces; no constraints = whole space.
struct ConvexRegion {
  std::vector<HalfSpace> constraints;
  bool contains(const Point& x) const;
};

/// Finite union of convex regions (boxes, half-spaces, their intersections).
/// No pieces = the empty set.
class RegionSet {
 public:
  RegionSet() = default;
  explicit RegionSet(std::vector<ConvexRegion> pieces) : pieces_(std::move(pieces)) {}

  static RegionSet empty() { return RegionSet(); }
  static RegionSet whole() { return RegionSet({ConvexRegion{}}); }
  static RegionSet half_space(HalfSpace h) { return RegionSet({ConvexRegion{{std::move(h)}}}); }
  /// Box prod [lo_i, hi_i], with each side open or closed as requested.
  static RegionSet box(const Point& lo, const Point& hi, bool lower_open = false, bool upper_open = false);
  /// Dyadic half-open cube prod (index_i 2^-level, (index_i + 1) 2^-level].
  static RegionSet dyadic_cube(int level, const std::vector<long>& index);

  const std::vector<ConvexRegion>& pieces() const { return pieces_; }
  bool contains(const Point& x) const;

  RegionSet unite(const RegionSet& other) const;
  RegionSet intersect(const RegionSet& other) const;
  RegionSet complement() const;
  /// Pairwise disjoint convex pieces with the same union.
  std::vector<ConvexRegion> disjoint_pieces() const;

 private:
  std::vector<ConvexRegion> pieces_;
};

/// The portion of `a` inside `s`: cells clipped against s and
/// re-triangulated, atoms kept iff inside.
Chain restrict(const Chain& a, const RegionSet& s);

struct SupportInfo {
  std::vector<Point> vertices;
  Rational squared_diameter;
  double diameter = 0.0;
};

/// Vertex set of the support and its diameter (0 for the zero chain).
SupportInfo support_diameter(const Chain& a);

/// Bounding box of the support; nullopt for the zero chain.
std::optional<std::pair<Point, Point>> bounding_box(const Chain& a);

/// Sign of the permutation that sorts `v` (+1 or -1), and the sorted order.
int sort_with_parity(std::vector<Point>& v);

}  // namespace flatchain
