#include <doctest.h>

#include <cmath>

#include "flatchain/errors.hpp"
#include "flatchain/experiments.hpp"
#include "support.hpp"

using namespace flatchain;
using testing_support::pt;

TEST_CASE("ball growth on a single segment is tight") {
  auto r = GroupDescriptor::reals();
  auto g = GroupElement::from_integer(r, -3);
  auto t = Chain::from_terms(r, 2, 1, {{GroupElement::from_integer(r, 3), Simplex({pt({0, 0}), pt({4, 0})})}});
  auto inst = make_ball_growth_instance(t, pt({0, 0}), {0, Rational(1, 2), 1, 3, Rational(39, 10)});
  CHECK(inst.g == g);
  auto rep = ball_growth_check(inst);
  CHECK(rep.holds);
  for (const auto& row : rep.rows) {
    CHECK(row.chain_measure == doctest::Approx(3.0 * to_double(row.radius)));
    CHECK(row.margin == doctest::Approx(0.0));
  }
}

TEST_CASE("V-shaped chain gives strict inequality") {
  auto z = GroupDescriptor::integers();
  auto one = GroupElement::from_integer(z, 1);
  auto t = Chain::from_terms(z, 2, 1, {{one, Simplex({pt({0, 0}), pt({3, 1})})}, {-one, Simplex({pt({0, 0}), pt({-3, 1})})}});
  auto rep = ball_growth_check(make_ball_growth_instance(t, pt({0, 0}), {1, 2, 3}));
  CHECK(rep.holds);
  for (const auto& row : rep.rows) CHECK(row.margin == doctest::Approx(2.0 * to_double(row.radius)));
  auto bad = make_ball_growth_instance(t, pt({0, 0}), {1});
  bad.g = one + one;
  CHECK_THROWS_AS(ball_growth_check(bad), InvariantViolation);
}

TEST_CASE("ball growth on random chains") {
  std::mt19937_64 rng(9);
  auto r = GroupDescriptor::reals();
  for (int i = 0; i < 20; ++i) {
    std::vector<Term> terms;
    Point a = testing_support::random_point(rng, 2, 2);
    for (int s = 0; s < 4; ++s) {
      Point b = testing_support::random_point(rng, 2, 2);
      if (b == a) continue;
      terms.push_back({testing_support::random_element(rng, r), Simplex({a, b})});
    }
    auto t = Chain::from_terms(r, 2, 1, std::move(terms), nullptr, OverlapCheck::Resolve);
    std::vector<Rational> radii;
    for (int k = 0; k <= 20; ++k) radii.push_back(make_rational(k, 4));
    CHECK(ball_growth_check(make_ball_growth_instance(t, a, radii)).min_margin >= -1e-12);
  }
}

TEST_CASE("linear path gives the non-rectifiable witness") {
  auto r = GroupDescriptor::reals();
  auto diag = build_nonrectifiable_chain(r, [&](const Rational& t) { return GroupElement::from_rational(r, t); }, 0, 1, 8);
  REQUIRE(diag.levels.size() == 9);
  for (const auto& l : diag.levels) {
    CHECK(l.max_atom_norm == std::ldexp(1.0, -l.level));
    CHECK(l.mass == 1.0);
    if (l.level > 0) CHECK(l.cauchy_bound == std::ldexp(1.0, -l.level - 1));
  }
  auto flat = build_nonrectifiable_chain(r, [&](const Rational&) { return GroupElement::zero(r); }, 0, 1, 4);
  for (const auto& l : flat.levels) CHECK(l.atoms == 0);
  CHECK_THROWS_AS(build_nonrectifiable_chain(r, [&](const Rational& t) { return GroupElement::from_rational(r, t); },
                                             Rational(1, 3), 1, 4),
                  InputError);
}

TEST_CASE("slice statistics of polyhedral chains") {
  auto z = GroupDescriptor::integers();
  auto one = GroupElement::from_integer(z, 1);
  auto seg = Chain::from_terms(z, 2, 1, {{one, Simplex({pt({0, 0}), pt({1, 0})})}});
  auto st = slice_statistics(seg, 100, 0, 3);
  CHECK(st.all_atomic);
  CHECK(st.max_atoms <= 1);
  auto tri = boundary(Chain::from_terms(z, 2, 2, {{one, Simplex({pt({0, 0}), pt({3, 1}), pt({1, 4})})}}));
  auto ts = slice_statistics(tri, 50, 1, 4);
  for (const auto& rec : ts.records) CHECK((rec.atoms == 0 || rec.atoms == 2));
  auto empty = slice_statistics(Chain(z, 2, 1), 5, 0, 1);
  for (const auto& rec : empty.records) CHECK(rec.atoms == 0);
  auto again = slice_statistics(seg, 100, 0, 3);
  CHECK(again.records.front().x == st.records.front().x);
}

TEST_CASE("classification report") {
  auto rows = classification_report(10);
  REQUIRE(rows.size() == 7);
  for (const auto& row : rows) {
    if (row.group == "R" && row.weight == "norm") {
      CHECK_FALSE(row.rectifiable);
      CHECK(row.value == 1.0);
    } else {
      CHECK(row.rectifiable);
    }
    if (row.witness == "dyadic_slope") CHECK(std::fabs(row.value - 0.5) < 0.025);
  }
}
