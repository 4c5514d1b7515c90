#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "flatchain/coeffgroup.hpp"
#include "flatchain/polychain.hpp"

namespace flatchain {

enum class WeightKind { FlatSize, GroupNorm, Table };

std::string to_string(WeightKind kind);

/// Even, subadditive, lower-semicontinuous weight phi: G -> [0, inf] with
/// phi(0) = 0. Table weights are looked up by exact coefficient value and
/// are undefined off the table.
class WeightFunction {
 public:
  static WeightFunction flat_size();
  static WeightFunction group_norm();
  /// Entries keyed by the canonical rational value of the element. A value of
  /// +infinity is allowed.
  static WeightFunction table(std::map<Rational, double> entries);

  WeightKind kind() const { return kind_; }
  const std::map<Rational, double>& entries() const { return table_; }

  /// nullopt when the table has no entry for g.
  std::optional<double> evaluate(const GroupElement& g) const;
  /// Like evaluate, but throws InputError on a missing table entry.
  double operator()(const GroupElement& g) const;

 private:
  explicit WeightFunction(WeightKind kind) : kind_(kind) {}

  WeightKind kind_;
  std::map<Rational, double> table_;
};

struct WeightViolation {
  std::string property;
  std::string detail;
};

struct WeightReport {
  bool passed = true;
  std::vector<WeightViolation> violations;
  std::size_t pairs_checked = 0;
  /// Never established from finite samples.
  bool lower_semicontinuity_verified = false;
};

/// Checks phi(0) = 0, evenness (exactly) and phi(g + h) <= phi(g) + phi(h)
/// + 1e-12 over all pairs of samples. Pairs whose sum or negation falls
/// outside a table are skipped.
WeightReport validate_weight(const WeightFunction& phi, const std::vector<GroupElement>& samples);

/// sum phi(g_i) vol_k(sigma_i) on a canonical chain.
double phi_mass(const Chain& a, const WeightFunction& phi);

/// sum vol_k(sigma_i) over the (nonzero) terms.
double flat_size(const Chain& a);

/// Whether every flat chain of finite mass and finite phi-size over the group
/// is rectifiable. Table weights are rejected with Unsupported.
GroupClassification classify_phi_rectifiability(const GroupDescriptor& d, const WeightFunction& phi);

}  // namespace flatchain
