#include <doctest.h>

#include <cmath>

#include "flatchain/errors.hpp"
#include "flatchain/zerochain.hpp"
#include "support.hpp"

using namespace flatchain;
using testing_support::pt;

namespace {

GMeasure random_measure(std::mt19937_64& rng, const GroupDescriptor& d, std::size_t n, int level) {
  std::map<CubeIndex, GroupElement> cubes;
  std::uniform_int_distribution<long> idx(-3, 1L << level);
  for (int i = 0; i < 12; ++i) {
    CubeIndex c(n);
    for (auto& x : c) x = idx(rng);
    auto g = testing_support::random_element(rng, d);
    if (!g.is_zero()) cubes.insert_or_assign(c, g);
  }
  return GMeasure::from_parts(d, n, level, std::move(cubes), {});
}

}  // namespace

TEST_CASE("atoms merge and chi sums coefficients") {
  auto z = GroupDescriptor::integers();
  std::vector<std::string> warnings;
  auto a = ZeroChain::from_atoms(z, 1,
                                 {{GroupElement::from_integer(z, 2), pt({0})},
                                  {GroupElement::from_integer(z, 3), pt({1})},
                                  {GroupElement::from_integer(z, -3), pt({1})},
                                  {GroupElement::from_integer(z, 0), pt({4})}},
                                 &warnings);
  CHECK(a.atoms().size() == 1);
  CHECK(chi(a) == GroupElement::from_integer(z, 2));
  CHECK_FALSE(warnings.empty());
  CHECK(mass(a) == 2.0);
}

TEST_CASE("cone boundary identity") {
  std::mt19937_64 rng(5);
  for (const auto& d : testing_support::all_groups()) {
    std::vector<Atom> atoms;
    for (int i = 0; i < 6; ++i) atoms.push_back({testing_support::random_element(rng, d), testing_support::random_point(rng, 2)});
    auto a = ZeroChain::from_atoms(d, 2, atoms);
    auto x = testing_support::random_point(rng, 2);
    auto cb = cone_flat_bound(a, x);
    auto expect = subtract(a, ZeroChain::from_atoms(d, 2, {{chi(a), x}}));
    CHECK(ZeroChain::from_chain(boundary(cb.cone)) == expect);
    CHECK(cb.bound >= norm(chi(a)) - 1e-12);
  }
}

TEST_CASE("canonical representation orders by norm") {
  auto r = GroupDescriptor::reals();
  auto a = ZeroChain::from_atoms(r, 1,
                                 {{GroupElement::from_integer(r, 1), pt({0})},
                                  {GroupElement::from_integer(r, -5), pt({3})},
                                  {GroupElement::from_integer(r, 5), pt({2})}});
  auto rep = canonical_representation(a);
  REQUIRE(rep.size() == 3);
  CHECK(rep[0].point == pt({2}));
  CHECK(rep[1].point == pt({3}));
  CHECK(rep[2].point == pt({0}));
}

TEST_CASE("dyadic indices are half-open on the left") {
  CHECK(dyadic_index(pt({1}), 0) == CubeIndex{0});
  CHECK(dyadic_index(pt({0}), 0) == CubeIndex{-1});
  CHECK(dyadic_index({Rational(1, 2)}, 1) == CubeIndex{0});
  CHECK(parent_index({5, -3}, 3, 1) == CubeIndex{1, -1});
}

TEST_CASE("dyadic approximations telescope exactly") {
  std::mt19937_64 rng(21);
  for (const auto& d : testing_support::all_groups()) {
    for (std::size_t n = 1; n <= 2; ++n) {
      CAPTURE(d.label());
      CAPTURE(n);
      auto nu = random_measure(rng, d, n, 4);
      auto levels = measure_to_chain_dyadic(nu, 4);
      REQUIRE(levels.size() == 5);
      for (std::size_t i = 1; i < levels.size(); ++i) {
        auto diff = subtract(levels[i].approximation, levels[i - 1].approximation);
        CHECK(ZeroChain::from_chain(boundary(levels[i].transport)) == diff);
        CHECK(levels[i].transport_mass == doctest::Approx(levels[i].closed_form).epsilon(1e-12));
      }
      for (const auto& lv : levels)
        CHECK(chain_to_measure(lv.approximation, lv.level).aggregate(lv.level) == nu.aggregate(lv.level));
    }
  }
}

TEST_CASE("measure roundtrip from atoms") {
  auto z = GroupDescriptor::integers();
  auto a = ZeroChain::from_atoms(z, 2, {{GroupElement::from_integer(z, 2), {Rational(1, 3), Rational(1, 5)}},
                                        {GroupElement::from_integer(z, -1), {Rational(3, 4), Rational(1, 8)}}});
  auto nu = chain_to_measure(a, 2);
  CHECK(nu.cubes().size() == 2);
  CHECK(nu.total_variation() == 3.0);
  auto back = measure_to_chain_dyadic(nu, 2).back().approximation;
  CHECK(chi(back) == chi(a));
}
