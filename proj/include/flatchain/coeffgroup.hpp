#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "flatchain/rational.hpp"

namespace flatchain {

enum class GroupKind { Integers, IntegersModP, Reals, RealsAlphaNorm, PAdicRationals, PAdicIntegers };

std::string to_string(GroupKind kind);
GroupKind parse_group_kind(std::string_view name);

/// A complete normed abelian group from the builtin catalogue. The descriptor
/// fully determines the norm.
class GroupDescriptor {
 public:
  static GroupDescriptor integers();
  static GroupDescriptor integers_mod(long p);
  static GroupDescriptor reals();
  /// R with |x| = |x|_usual^alpha, 0 < alpha < 1.
  static GroupDescriptor reals_alpha(const Rational& alpha);
  static GroupDescriptor padic_rationals(long p);
  static GroupDescriptor padic_integers(long p);

  GroupKind kind() const { return kind_; }
  /// Prime for modular and p-adic kinds, 0 otherwise.
  long p() const { return p_; }
  const Rational& alpha() const { return alpha_; }
  double alpha_value() const { return alpha_double_; }

  bool is_padic() const { return kind_ == GroupKind::PAdicRationals || kind_ == GroupKind::PAdicIntegers; }
  /// Short human-readable label: Z, Z/3, R, R^1/2, Q_3, Z_3.
  std::string label() const;

  friend bool operator==(const GroupDescriptor& a, const GroupDescriptor& b) {
    return a.kind_ == b.kind_ && a.p_ == b.p_ && a.alpha_ == b.alpha_;
  }

 private:
  GroupDescriptor(GroupKind kind, long p, Rational alpha);

  GroupKind kind_;
  long p_ = 0;
  Rational alpha_ = 0;
  double alpha_double_ = 0.0;
};

bool is_prime(long n);

/// Element of a builtin group held in canonical form: integers for Z,
/// residues in [0, p) for Z/p, reduced rationals otherwise. p-adic elements
/// cache their p-valuation.
class GroupElement {
 public:
  static GroupElement zero(const GroupDescriptor& d);
  static GroupElement from_integer(const GroupDescriptor& d, long value);
  /// Canonicalizes `value` for the group; throws InputError when the value is
  /// not a member (non-integer in Z or Z/p, negative valuation in Z_p).
  static GroupElement from_rational(const GroupDescriptor& d, const Rational& value);

  const GroupDescriptor& descriptor() const { return desc_; }
  const Rational& value() const { return value_; }
  bool is_zero() const { return sgn(value_) == 0; }
  /// p-adic valuation; meaningful for nonzero elements of p-adic groups.
  long valuation() const { return valuation_; }

  GroupElement operator-() const;
  friend GroupElement operator+(const GroupElement& a, const GroupElement& b);
  friend GroupElement operator-(const GroupElement& a, const GroupElement& b);
  GroupElement& operator+=(const GroupElement& b) { return *this = *this + b; }
  GroupElement& operator-=(const GroupElement& b) { return *this = *this - b; }

  friend bool operator==(const GroupElement& a, const GroupElement& b) {
    return a.desc_ == b.desc_ && a.value_ == b.value_;
  }

  std::string to_string() const;

 private:
  GroupElement(GroupDescriptor d, Rational value, long valuation)
      : desc_(std::move(d)), value_(std::move(value)), valuation_(valuation) {}

  GroupDescriptor desc_;
  Rational value_;
  long valuation_ = 0;
};

enum class GroupOp { Add, Subtract };

/// g + h or g - h; throws DescriptorMismatch when the groups differ.
GroupElement group_op(const GroupElement& g, const GroupElement& h, GroupOp op);

/// Group norm. Exact for every kind except R^alpha, where it is evaluated
/// in floating point (comparisons use a 1e-12 tolerance).
double norm(const GroupElement& g);

/// The norm as an exact rational when it is one (all kinds but R^alpha).
std::optional<Rational> exact_norm(const GroupElement& g);

/// Exact three-way comparison of |g| and |h| (same group).
int compare_norms(const GroupElement& g, const GroupElement& h);

/// p-adic valuation of a nonzero rational.
long padic_valuation(const Rational& q, long p);

inline constexpr double kNormTolerance = 1e-12;

// ---------------------------------------------------------------- paths

struct PathSample {
  Rational t;
  GroupElement value;
};

/// Samples of a path t -> gamma(t) in a group, with strictly increasing t.
class PathSamples {
 public:
  explicit PathSamples(std::vector<PathSample> samples);
  const std::vector<PathSample>& samples() const { return samples_; }
  std::size_t size() const { return samples_.size(); }

 private:
  std::vector<PathSample> samples_;
};

using PathEvaluator = std::function<GroupElement(const Rational&)>;

/// sum_i |gamma(t_i) - gamma(t_{i-1})| over the given partition. This is a
/// lower bound for the length of the path and never decreases under
/// refinement.
double path_length_lower_bound(const PathSamples& path);

struct LengthProfileEntry {
  int level = 0;
  double length = 0.0;
  /// log2(length_n / length_{n-1}); absent at level 0. Zero when both
  /// lengths vanish.
  std::optional<double> slope;
};

/// Length lower bounds of `path` on [a, b] at dyadic partitions of
/// 2^0, ..., 2^n_max pieces.
std::vector<LengthProfileEntry> dyadic_length_profile(const PathEvaluator& path, const Rational& a,
                                                      const Rational& b, int n_max);

struct GroupClassification {
  bool every_finite_mass_chain_rectifiable = false;
  std::string rationale;
};

/// Whether every finite-mass flat chain over the group is rectifiable,
/// i.e. whether the group has no nonconstant continuous path of finite
/// length. Hard-coded for the builtin catalogue; the experiments module
/// produces the witnesses.
GroupClassification classify_group(const GroupDescriptor& d);

}  // namespace flatchain
