#pragma once

#include <map>
#include <string>
#include <vector>

#include "flatchain/coeffgroup.hpp"
#include "flatchain/polychain.hpp"

namespace flatchain {

struct Atom {
  GroupElement coeff;
  Point point;
};

/// Finite atomic 0-chain sum g_i [x_i] with distinct points and nonzero
/// coefficients, atoms sorted by point.
class ZeroChain {
 public:
  ZeroChain(GroupDescriptor group, std::size_t ambient);

  /// Merges atoms at equal points and drops zero coefficients.
  static ZeroChain from_atoms(GroupDescriptor group, std::size_t ambient, std::vector<Atom> atoms,
                              std::vector<std::string>* warnings = nullptr);
  static ZeroChain from_chain(const Chain& a);
  Chain to_chain() const;

  const GroupDescriptor& group() const { return group_; }
  std::size_t ambient() const { return ambient_; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  bool is_zero() const { return atoms_.empty(); }

  friend bool operator==(const ZeroChain& a, const ZeroChain& b);

 private:
  GroupDescriptor group_;
  std::size_t ambient_;
  std::vector<Atom> atoms_;
};

ZeroChain add(const ZeroChain& a, const ZeroChain& b);
ZeroChain subtract(const ZeroChain& a, const ZeroChain& b);
double mass(const ZeroChain& a);

/// Sum of the coefficients.
GroupElement chi(const ZeroChain& a);
GroupElement chi(const Chain& a);

struct ConeBound {
  /// |chi(A)| + M(C), an upper bound for the flat norm of A.
  double bound = 0.0;
  /// C = sum g_i [x, x_i]; satisfies boundary(C) = A - chi(A)[x].
  Chain cone;
};

/// Cone over A with the given vertex. The boundary identity is checked
/// exactly and an InvariantViolation is raised if it fails.
ConeBound cone_flat_bound(const ZeroChain& a, const Point& vertex);

/// Greedy extraction order: largest |g| first, lexicographically smallest
/// point on ties. A permutation of the atoms.
std::vector<Atom> canonical_representation(const ZeroChain& a);

// ------------------------------------------------------------ dyadic cubes

using CubeIndex = std::vector<long>;

/// Index of the half-open cube prod (i 2^-n, (i+1) 2^-n] containing x.
CubeIndex dyadic_index(const Point& x, int level);
Point cube_center(const CubeIndex& index, int level);
/// Index of the level-`coarse` cube containing the level-`fine` cube.
CubeIndex parent_index(const CubeIndex& index, int fine, int coarse);

/// G-valued measure: atoms plus values on the half-open dyadic cubes of one
/// finest level. Coarser cube values are obtained by aggregation.
class GMeasure {
 public:
  GMeasure(GroupDescriptor group, std::size_t ambient, int level);

  static GMeasure from_parts(GroupDescriptor group, std::size_t ambient, int level,
                             std::map<CubeIndex, GroupElement> cubes, std::vector<Atom> atoms);

  const GroupDescriptor& group() const { return group_; }
  std::size_t ambient() const { return ambient_; }
  int level() const { return level_; }
  const std::map<CubeIndex, GroupElement>& cubes() const { return cubes_; }
  const ZeroChain& atoms() const { return atoms_; }

  /// Nonzero values nu(Q) for Q in the level-m partition (atoms folded in).
  /// m may exceed the finest level only when there is no cube part.
  std::map<CubeIndex, GroupElement> aggregate(int m) const;

  /// sum |cube values| + sum |atoms|.
  double total_variation() const;

  friend bool operator==(const GMeasure& a, const GMeasure& b);

 private:
  GroupDescriptor group_;
  std::size_t ambient_;
  int level_;
  std::map<CubeIndex, GroupElement> cubes_;
  ZeroChain atoms_;
};

struct DyadicLevel {
  int level = 0;
  /// A_n = sum nu(Q) [z_Q].
  ZeroChain approximation;
  /// T_n = sum nu(Q) [z'_Q, z_Q] (zero at level 0); boundary(T_n) = A_n - A_{n-1}.
  Chain transport;
  /// M(T_n), a flat-norm bound for A_n - A_{n-1}.
  double transport_mass = 0.0;
  /// sum_Q |nu(Q)| 2^{-n-1} sqrt(N), evaluated independently of T_n.
  double closed_form = 0.0;
  /// Largest atom norm of A_n.
  double max_atom_norm = 0.0;
  double approximation_mass = 0.0;
};

/// Approximating atomic chains A_0, ..., A_{n_max} of a G-valued measure with
/// their connecting 1-chains.
std::vector<DyadicLevel> measure_to_chain_dyadic(const GMeasure& nu, int n_max);

/// Q -> chi(A restricted to Q) on the level-n dyadic cubes.
GMeasure chain_to_measure(const ZeroChain& a, int level);

}  // namespace flatchain
