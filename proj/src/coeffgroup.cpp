#include "flatchain/coeffgroup.hpp"

#include <cmath>
#include <limits>

#include "flatchain/errors.hpp"

namespace flatchain {

std::string to_string(GroupKind kind) {
  switch (kind) {
    case GroupKind::Integers: return "Integers";
    case GroupKind::IntegersModP: return "IntegersModP";
    case GroupKind::Reals: return "Reals";
    case GroupKind::RealsAlphaNorm: return "RealsAlphaNorm";
    case GroupKind::PAdicRationals: return "PAdicRationals";
    case GroupKind::PAdicIntegers: return "PAdicIntegers";
  }
  return "?";
}

GroupKind parse_group_kind(std::string_view name) {
  for (auto k : {GroupKind::Integers, GroupKind::IntegersModP, GroupKind::Reals, GroupKind::RealsAlphaNorm,
                 GroupKind::PAdicRationals, GroupKind::PAdicIntegers})
    if (to_string(k) == name) return k;
  throw InputError("unknown group kind '" + std::string(name) + "'");
}

bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

GroupDescriptor::GroupDescriptor(GroupKind kind, long p, Rational alpha)
    : kind_(kind), p_(p), alpha_(std::move(alpha)), alpha_double_(to_double(alpha_)) {}

GroupDescriptor GroupDescriptor::integers() { return {GroupKind::Integers, 0, 0}; }
GroupDescriptor GroupDescriptor::reals() { return {GroupKind::Reals, 0, 0}; }

GroupDescriptor GroupDescriptor::integers_mod(long p) {
  if (!is_prime(p)) throw InputError("Z/p requires a prime p, got " + std::to_string(p));
  return {GroupKind::IntegersModP, p, 0};
}

GroupDescriptor GroupDescriptor::reals_alpha(const Rational& alpha) {
  if (!(alpha > 0 && alpha < 1)) throw InputError("alpha must lie in (0, 1), got " + format_rational(alpha));
  return {GroupKind::RealsAlphaNorm, 0, alpha};
}

GroupDescriptor GroupDescriptor::padic_rationals(long p) {
  if (!is_prime(p)) throw InputError("p-adic group requires a prime p, got " + std::to_string(p));
  return {GroupKind::PAdicRationals, p, 0};
}

GroupDescriptor GroupDescriptor::padic_integers(long p) {
  if (!is_prime(p)) throw InputError("p-adic group requires a prime p, got " + std::to_string(p));
  return {GroupKind::PAdicIntegers, p, 0};
}

std::string GroupDescriptor::label() const {
  switch (kind_) {
    case GroupKind::Integers: return "Z";
    case GroupKind::IntegersModP: return "Z/" + std::to_string(p_);
    case GroupKind::Reals: return "R";
    case GroupKind::RealsAlphaNorm: return "R^" + format_rational(alpha_);
    case GroupKind::PAdicRationals: return "Q_" + std::to_string(p_);
    case GroupKind::PAdicIntegers: return "Z_" + std::to_string(p_);
  }
  return "?";
}

long padic_valuation(const Rational& q, long p) {
  if (sgn(q) == 0) throw InputError("valuation of zero");
  auto count = [p](Integer n) {
    long v = 0;
    n = abs(n);
    Integer pp(p);
    while (n % pp == 0) {
      n /= pp;
      ++v;
    }
    return v;
  };
  return count(q.get_num()) - count(q.get_den());
}

GroupElement GroupElement::zero(const GroupDescriptor& d) { return GroupElement(d, 0, 0); }

GroupElement GroupElement::from_integer(const GroupDescriptor& d, long value) {
  return from_rational(d, Rational(value));
}

GroupElement GroupElement::from_rational(const GroupDescriptor& d, const Rational& raw) {
  Rational value = raw;
  value.canonicalize();
  switch (d.kind()) {
    case GroupKind::Integers:
      if (value.get_den() != 1) throw InputError("non-integer coefficient " + format_rational(value) + " in Z");
      return GroupElement(d, value, 0);
    case GroupKind::IntegersModP: {
      if (value.get_den() != 1)
        throw InputError("non-integer coefficient " + format_rational(value) + " in " + d.label());
      Integer r = value.get_num() % Integer(d.p());
      if (r < 0) r += d.p();
      return GroupElement(d, Rational(r), 0);
    }
    case GroupKind::Reals:
    case GroupKind::RealsAlphaNorm:
      return GroupElement(d, value, 0);
    case GroupKind::PAdicRationals:
    case GroupKind::PAdicIntegers: {
      if (sgn(value) == 0) return GroupElement(d, value, 0);
      long v = padic_valuation(value, d.p());
      if (d.kind() == GroupKind::PAdicIntegers && v < 0)
        throw InputError("element " + format_rational(value) + " has negative valuation in " + d.label());
      return GroupElement(d, value, v);
    }
  }
  throw InputError("unknown group kind");
}

GroupElement GroupElement::operator-() const { return from_rational(desc_, -value_); }

GroupElement operator+(const GroupElement& a, const GroupElement& b) { return group_op(a, b, GroupOp::Add); }
GroupElement operator-(const GroupElement& a, const GroupElement& b) { return group_op(a, b, GroupOp::Subtract); }

std::string GroupElement::to_string() const { return format_rational(value_); }

GroupElement group_op(const GroupElement& g, const GroupElement& h, GroupOp op) {
  if (!(g.descriptor() == h.descriptor()))
    throw DescriptorMismatch("group operation between " + g.descriptor().label() + " and " + h.descriptor().label());
  Rational v = op == GroupOp::Add ? Rational(g.value() + h.value()) : Rational(g.value() - h.value());
  return GroupElement::from_rational(g.descriptor(), v);
}

namespace {

Rational rational_pow(long base, long exponent) {
  Integer b(base);
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(std::labs(exponent)));
  return exponent >= 0 ? Rational(r) : make_rational(Integer(1), r);
}

}  // namespace

std::optional<Rational> exact_norm(const GroupElement& g) {
  const auto& d = g.descriptor();
  if (g.is_zero()) return Rational(0);
  switch (d.kind()) {
    case GroupKind::Integers:
    case GroupKind::Reals:
      return Rational(abs(g.value()));
    case GroupKind::IntegersModP: {
      Rational r = g.value();
      Rational other = Rational(d.p()) - r;
      return r < other ? r : other;
    }
    case GroupKind::RealsAlphaNorm:
      return std::nullopt;
    case GroupKind::PAdicRationals:
    case GroupKind::PAdicIntegers:
      return rational_pow(d.p(), -g.valuation());
  }
  return std::nullopt;
}

double norm(const GroupElement& g) {
  if (g.is_zero()) return 0.0;
  if (g.descriptor().kind() == GroupKind::RealsAlphaNorm)
    return std::pow(std::fabs(to_double(g.value())), g.descriptor().alpha_value());
  return to_double(*exact_norm(g));
}

int compare_norms(const GroupElement& g, const GroupElement& h) {
  if (!(g.descriptor() == h.descriptor())) throw DescriptorMismatch("comparing norms across groups");
  if (g.is_zero() || h.is_zero()) return static_cast<int>(!g.is_zero()) - static_cast<int>(!h.is_zero());
  Rational a, b;
  switch (g.descriptor().kind()) {
    case GroupKind::RealsAlphaNorm:
      a = abs(g.value());
      b = abs(h.value());
      break;
    case GroupKind::PAdicRationals:
    case GroupKind::PAdicIntegers:
      a = -g.valuation();
      b = -h.valuation();
      break;
    default:
      a = *exact_norm(g);
      b = *exact_norm(h);
  }
  return a < b ? -1 : (b < a ? 1 : 0);
}

PathSamples::PathSamples(std::vector<PathSample> samples) : samples_(std::move(samples)) {
  if (samples_.empty()) throw InputError("path needs at least one sample");
  for (std::size_t i = 1; i < samples_.size(); ++i) {
    if (!(samples_[i - 1].t < samples_[i].t))
      throw InputError("path sample times must be strictly increasing (index " + std::to_string(i) + ")");
    if (!(samples_[i].value.descriptor() == samples_[0].value.descriptor()))
      throw DescriptorMismatch("path samples from different groups");
  }
}

double path_length_lower_bound(const PathSamples& path) {
  const auto& s = path.samples();
  if (s.size() < 2) throw InputError("path length needs at least two samples");
  Rational exact_total = 0;
  bool exact = true;
  ExactSum total;
  for (std::size_t i = 1; i < s.size(); ++i) {
    GroupElement step = s[i].value - s[i - 1].value;
    if (exact) {
      if (auto n = exact_norm(step))
        exact_total += *n;
      else
        exact = false;
    }
    total.add(norm(step));
  }
  return exact ? to_double(exact_total) : total.value();
}

std::vector<LengthProfileEntry> dyadic_length_profile(const PathEvaluator& path, const Rational& a,
                                                      const Rational& b, int n_max) {
  if (!(a < b)) throw InputError("length profile needs a < b");
  if (n_max < 0 || n_max > 24) throw InputError("length profile level must lie in [0, 24]");
  std::vector<LengthProfileEntry> out;
  for (int n = 0; n <= n_max; ++n) {
    const long pieces = 1L << n;
    std::vector<PathSample> samples;
    samples.reserve(pieces + 1);
    for (long i = 0; i <= pieces; ++i) {
      Rational t = a + (b - a) * make_rational(i, pieces);
      samples.push_back({t, path(t)});
    }
    LengthProfileEntry e;
    e.level = n;
    e.length = path_length_lower_bound(PathSamples(std::move(samples)));
    if (n > 0) {
      double prev = out.back().length;
      if (prev > 0.0)
        e.slope = std::log2(e.length / prev);
      else if (e.length == 0.0)
        e.slope = 0.0;
    }
    out.push_back(e);
  }
  return out;
}

GroupClassification classify_group(const GroupDescriptor& d) {
  switch (d.kind()) {
    case GroupKind::Integers:
    case GroupKind::IntegersModP:
      return {true, "norm-bounded-below"};
    case GroupKind::PAdicRationals:
    case GroupKind::PAdicIntegers:
      return {true, "discrete-norm-totally-disconnected"};
    case GroupKind::RealsAlphaNorm:
      return {true, "snowflake-norm-infinite-length"};
    case GroupKind::Reals:
      return {false, "finite-length-path-exists"};
  }
  return {false, "unknown"};
}

}  // namespace flatchain
