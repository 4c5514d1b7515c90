#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "flatchain/coeffgroup.hpp"
#include "flatchain/polychain.hpp"
#include "flatchain/zerochain.hpp"

namespace flatchain {

// ------------------------------------------------------------ ball growth

/// A polyhedral 1-chain T with boundary g[a] + E.
struct BallGrowthInstance {
  Chain t;
  Point a;
  GroupElement g;
  ZeroChain e;
  std::vector<Rational> radii;
};

/// Splits the boundary of T into g[a] (the coefficient of the atom at a,
/// possibly zero) and E.
BallGrowthInstance make_ball_growth_instance(const Chain& t, const Point& a, std::vector<Rational> radii);

struct BallGrowthRow {
  Rational radius;
  /// mu_T B(a, R).
  double chain_measure = 0.0;
  /// int_0^R |chi(boundary(T) restricted to B(a, r))| dr.
  double integral = 0.0;
  /// R (|g| - mu_E B(a, R)).
  double bound = 0.0;
  /// chain_measure - bound.
  double margin = 0.0;
  bool holds = true;
};

struct BallGrowthReport {
  std::vector<BallGrowthRow> rows;
  double min_margin = 0.0;
  bool holds = true;
};

/// Evaluates mu_T B(a, R) >= int |chi| dr >= R (|g| - mu_E B(a, R)) at every
/// radius with a 1e-12 guard. Balls are closed. Throws InvariantViolation
/// when boundary(T) != g[a] + E.
BallGrowthReport ball_growth_check(const BallGrowthInstance& inst);

/// Total variation of a 1-chain inside the closed ball B(a, R): exact
/// segment-ball intersection, square roots taken last.
double ball_measure(const Chain& t, const Point& a, const Rational& radius);
/// Total variation of a 0-chain inside the closed ball B(a, R) (exact).
double ball_measure(const ZeroChain& e, const Point& a, const Rational& radius);

// ------------------------------------------------- non-rectifiable witness

struct NonrectLevel {
  int level = 0;
  std::size_t atoms = 0;
  double max_atom_norm = 0.0;
  double mass = 0.0;
  /// 2^{-n-1} sqrt(N) sum |nu(Q)|, bounding F(A_n - A_{n-1}).
  double cauchy_bound = 0.0;
  /// M(T_n), the mass of the connecting 1-chain.
  double transport_mass = 0.0;
};

struct NonrectDiagnostics {
  GroupDescriptor group;
  int finest_level = 0;
  double measure_variation = 0.0;
  std::vector<NonrectLevel> levels;
};

/// Builds the G-valued measure nu((s, t]) = gamma(t) - gamma(s) on the
/// level-`levels` dyadic intervals of [a, b] and the dyadic approximating
/// chains A_0, ..., A_levels. a and b must be multiples of 2^-levels.
NonrectDiagnostics build_nonrectifiable_chain(const GroupDescriptor& d, const PathEvaluator& path, const Rational& a,
                                              const Rational& b, int levels);
/// Same, from samples at consecutive multiples of 2^-levels.
NonrectDiagnostics build_nonrectifiable_chain(const GroupDescriptor& d, const PathSamples& path, int levels);

// -------------------------------------------------------- slice statistics

struct FiberRecord {
  /// Coordinates fixed by the fiber, in the order of `indices`.
  std::vector<std::size_t> indices;
  Point x;
  std::size_t atoms = 0;
  double total_norm = 0.0;
  double max_norm = 0.0;
  bool resampled = false;
};

struct SliceStats {
  std::vector<FiberRecord> records;
  std::size_t planes = 0;
  std::size_t resamples = 0;
  std::size_t max_atoms = 0;
  /// Every sampled fiber gave a finite atomic slice.
  bool all_atomic = true;
};

/// Slices A by `fibers_per_plane` random fibers, uniform over the bounding
/// box (flat extents widened by 1/2 each way), for every
/// coordinate projection onto k axes (the first `planes` of them in
/// lexicographic order; 0 means all). A non-transverse fiber is resampled
/// once; a second failure throws TransversalityError.
SliceStats slice_statistics(const Chain& a, std::size_t fibers_per_plane, std::size_t planes, std::uint64_t seed);

// ----------------------------------------------------------- classification

struct ClassificationRow {
  std::string group;
  std::string weight;
  bool rectifiable = false;
  std::string witness;
  double value = 0.0;
  std::string detail;
};

/// One row per builtin group (Z, Z/3, Q_3, Z_3, R^1/2, R) plus the
/// (R, flat size) row, each with a computed witness.
std::vector<ClassificationRow> classification_report(int profile_levels = 10);

}  // namespace flatchain
