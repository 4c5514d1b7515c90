#pragma once

#include <optional>
#include <string>

#include "flatchain/polychain.hpp"
#include "flatchain/zerochain.hpp"

namespace flatchain {

struct FlatWitness {
  Chain b;         // (k+1)-chain
  Chain residual;  // A - dB
};

struct FlatUpper {
  double value;  // M(residual) + M(b)
  FlatWitness witness;
  std::string strategy;
};

struct FlatLower {
  double value = 0.0;
  std::string method;
};

struct FlatBracket {
  double lower = 0.0;
  double upper = 0.0;
  std::optional<FlatWitness> witness;
  std::string lower_method;
  std::string upper_strategy;
  /// lower == upper is the flat norm itself.
  bool exact = false;
};

/// Certified lower bound. k = 0: |chi(A)|, or the transport optimum for
/// real and integer coefficients (which is the flat norm). k >= 1: the
/// largest mass of a coordinate projection Pi_# A onto a k-plane, i.e. the
/// exact integral of |chi(A cap Pi^-1 x)| over that plane.
FlatLower flat_lower_detail(const Chain& a);
double flat_lower_bound(const Chain& a);

/// Best witness found among: B = 0; cones over A from the centroid and from
/// support vertices; prisms joining translated copies with opposite
/// coefficients; for k >= 1 a cone over A - B' where B' is the witness for
/// dA (boundary fill); for k = 0 additionally the transport optimum (R, Z), the
/// enumeration optimum (Z/p, small) and greedy coefficient merging.
FlatUpper flat_upper_bound(const Chain& a);

FlatBracket flat_bracket(const Chain& a);

/// Minimum of M(A - dB) + M(B) over 1-chains B on straight segments between
/// atoms. Reals and Integers: transport linear program. IntegersModP:
/// exhaustive edge labels. At most 12 atoms; otherwise Unsupported.
double flat_exact_zero_chain(const ZeroChain& a);
inline constexpr std::size_t kMaxExactAtoms = 12;
/// Largest number of edge labelings the Z/p enumeration visits.
inline constexpr double kMaxEnumeration = 16777216.0;

FlatBracket flat_distance(const Chain& a, const Chain& b);

/// g[x, v0, ..., vk] for each term g[v0, ..., vk]; d(x * A) = A - x * dA for
/// k >= 1 and A - chi(A)[x] for k = 0.
Chain cone_over(const Chain& a, const Point& x);
/// Homotopy chain of the straight-line translation by y, triangulated as
/// sum_i (-1)^i [v0..vi, vi+y..vk+y].
Chain prism(const Chain& a, const Point& y);

}  // namespace flatchain
