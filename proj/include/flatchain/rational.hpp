#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace flatchain {

using Rational = mpq_class;
using Integer = mpz_class;

/// Point in R^N with exact coordinates. Ordered lexicographically by
/// std::vector's operator<.
using Point = std::vector<Rational>;

Rational make_rational(const Integer& num, const Integer& den);
Rational make_rational(std::int64_t num, std::int64_t den = 1);

/// Accepts "p/q", "p", and plain decimals such as "-0.125" or "2.5e-3".
Rational parse_rational(std::string_view text);

/// "p/q" in lowest terms, or "p" when the denominator is 1.
std::string format_rational(const Rational& value);

/// Correctly rounded (nearest-even) conversion.
double to_double(const Rational& value);

/// Exact conversion of a finite double.
Rational from_double(double value);

Point make_point(std::initializer_list<Rational> coords);
std::string format_point(const Point& p);
std::vector<double> to_doubles(const Point& p);

Rational squared_distance(const Point& a, const Point& b);
double distance(const Point& a, const Point& b);

/// Exactly rounded sum of doubles (Shewchuk's partials, as in Python's
/// math.fsum). The result does not depend on insertion order.
class ExactSum {
 public:
  void add(double x);
  double value() const;

 private:
  std::vector<double> partials_;
  double special_ = 0.0;
  bool has_special_ = false;
};

double exact_sum(std::span<const double> values);

}  // namespace flatchain
