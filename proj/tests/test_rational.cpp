#include <doctest.h>

#include "flatchain/errors.hpp"
#include "flatchain/rational.hpp"

using namespace flatchain;

TEST_CASE("rational parsing and formatting") {
  CHECK(parse_rational("3/6") == make_rational(1, 2));
  CHECK(parse_rational("-4") == Rational(-4));
  CHECK(parse_rational("0.125") == make_rational(1, 8));
  CHECK(parse_rational("1e-2") == make_rational(1, 100));
  CHECK(format_rational(make_rational(-6, 4)) == "-3/2");
  CHECK(format_rational(Rational(7)) == "7");
  CHECK_THROWS_AS(parse_rational("1/0"), InputError);
  CHECK_THROWS_AS(parse_rational("abc"), InputError);
}

TEST_CASE("correctly rounded conversion") {
  CHECK(to_double(make_rational(1, 3)) == 1.0 / 3.0);
  CHECK(to_double(make_rational(1, 10)) == 0.1);
  CHECK(from_double(0.375) == make_rational(3, 8));
}

TEST_CASE("exact summation is order independent") {
  std::vector<double> a{1e16, 1.0, -1e16, 1e-3, 3.0};
  std::vector<double> b{1e-3, 3.0, 1.0, 1e16, -1e16};
  CHECK(exact_sum(a) == exact_sum(b));
  CHECK(exact_sum(a) == 4.001);
}

TEST_CASE("distances") {
  Point x{Rational(0), Rational(0)}, y{Rational(3), Rational(4)};
  CHECK(squared_distance(x, y) == Rational(25));
  CHECK(distance(x, y) == 5.0);
}
