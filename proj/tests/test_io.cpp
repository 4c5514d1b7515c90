#include <doctest.h>

#include "flatchain/errors.hpp"
#include "flatchain/io.hpp"
#include "flatchain/report.hpp"
#include "support.hpp"

using namespace flatchain;

TEST_CASE("chain JSON roundtrip is the identity on canonical files") {
  std::mt19937_64 rng(17);
  for (const auto& d : testing_support::all_groups()) {
    auto a = testing_support::random_chain(rng, d, 3, 2, 3);
    auto text = io::dump(io::to_json(a));
    auto b = io::chain_from_json(io::parse_text(text));
    CHECK(b == a);
    CHECK(io::dump(io::to_json(b)) == text);
  }
}

TEST_CASE("zero coefficients are dropped with a warning") {
  auto j = io::parse_text(R"({"group": {"kind": "Integers"}, "ambient": 1, "dim": 1,
    "terms": [{"coeff": 0, "simplex": [["0"], ["1"]]}, {"coeff": 2, "simplex": [["1"], ["3"]]}]})");
  std::vector<std::string> warnings;
  auto a = io::chain_from_json(j, &warnings);
  CHECK(a.terms().size() == 1);
  CHECK(warnings.size() == 1);
}

TEST_CASE("schema and invariant violations") {
  CHECK_THROWS_WITH_AS(io::chain_from_json(io::parse_text(R"({"group": {"kind": "Integers"}, "dim": 0, "terms": []})")),
                       doctest::Contains("ambient"), InputError);
  CHECK_THROWS_AS(io::parse_text("{"), InputError);
  auto overlap = io::parse_text(R"({"group": {"kind": "Integers"}, "ambient": 2, "dim": 2, "terms": [
    {"coeff": 1, "simplex": [["0","0"],["2","0"],["0","2"]]},
    {"coeff": 1, "simplex": [["1/2","1/2"],["3","1/2"],["1/2","3"]]}]})");
  CHECK_THROWS_WITH_AS(io::chain_from_json(overlap), doctest::Contains("1"), InvariantViolation);
}

TEST_CASE("measures, planes, grids, weights and paths") {
  auto d = GroupDescriptor::padic_rationals(3);
  auto nu = GMeasure::from_parts(d, 2, 3, {{{1, 2}, GroupElement::from_rational(d, Rational(2, 9))}}, {});
  CHECK(io::measure_from_json(io::to_json(nu)) == nu);
  OrientedAffinePlane p({Rational(1), Rational(0)}, {{Rational(0), Rational(1)}});
  CHECK(io::plane_from_json(io::to_json(p)).base() == p.base());
  GridSpec g{Rational(1, 4), {Rational(1, 3), Rational(0)}};
  CHECK(io::grid_from_json(io::to_json(g)).offset == g.offset);
  auto w = WeightFunction::table({{0, 0.0}, {Rational(1, 3), 1.5}});
  CHECK(io::weight_from_json(io::to_json(w, d), d).entries() == w.entries());
  auto path = io::path_from_json(io::parse_text(R"({"group": {"kind": "Reals"},
    "samples": [{"t": "0", "value": {"num": 0, "den": 1}}, {"t": "1/2", "value": "1/2"}]})"));
  CHECK(path.size() == 2);
  CHECK(io::group_from_json(io::to_json(GroupDescriptor::reals_alpha(Rational(1, 3)))) ==
        GroupDescriptor::reals_alpha(Rational(1, 3)));
}

TEST_CASE("report emission") {
  report::Table t{{"x", "q", "name"}, {}, {}};
  CHECK(report::to_csv(t) == "x,q,name\n");
  t.add_row({1.0 / 3.0, make_rational(2, 6), std::string("a,b")});
  CHECK(report::to_csv(t) == "x,q,name\n0.333333333333,1/3,\"a,b\"\n");
  CHECK(report::to_json(t) == report::to_json(t));
  CHECK_THROWS_AS(t.add_row({1.0}), InvariantViolation);
  CHECK(report::format_real(2.0) == "2");
}
