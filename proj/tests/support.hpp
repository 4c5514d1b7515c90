#pragma once

#include <random>

#include "flatchain/polychain.hpp"

namespace testing_support {

using namespace flatchain;

// Uniform on the grid (1/den) Z cap [-range, range].
inline Rational random_rational(std::mt19937_64& rng, long range = 8, long den = 7) {
  std::uniform_int_distribution<long> num(-range * den, range * den);
  return make_rational(num(rng), den);
}

inline Point random_point(std::mt19937_64& rng, std::size_t n, long range = 8) {
  Point p(n);
  for (auto& c : p) c = random_rational(rng, range);
  return p;
}

inline std::vector<Point> random_simplex(std::mt19937_64& rng, std::size_t n, std::size_t k) {
  while (true) {
    std::vector<Point> v;
    for (std::size_t i = 0; i <= k; ++i) v.push_back(random_point(rng, n, 3));
    if (!Simplex(v).is_degenerate()) return v;
  }
}

// Sum of `count` random simplices placed in disjoint slabs along axis 0.
inline Chain random_chain(std::mt19937_64& rng, const GroupDescriptor& g, std::size_t n, std::size_t k,
                          std::size_t count) {
  std::uniform_int_distribution<long> coeff(-5, 5);
  std::vector<Term> terms;
  for (std::size_t i = 0; i < count; ++i) {
    auto v = random_simplex(rng, n, k);
    for (auto& p : v) p[0] += Rational(static_cast<long>(10 * i));
    long c = 0;
    while (c == 0) c = coeff(rng);
    terms.push_back({GroupElement::from_integer(g, c), Simplex(std::move(v))});
  }
  return Chain::from_terms(g, n, k, std::move(terms));
}

inline Point pt(std::initializer_list<long> xs) {
  Point p;
  for (long x : xs) p.emplace_back(x);
  return p;
}

}  // namespace testing_support

namespace testing_support {

inline std::vector<GroupDescriptor> all_groups() {
  return {GroupDescriptor::integers(),           GroupDescriptor::integers_mod(5),
          GroupDescriptor::reals(),              GroupDescriptor::reals_alpha(Rational(1, 2)),
          GroupDescriptor::padic_rationals(3),   GroupDescriptor::padic_integers(3)};
}

// Small elements with varied p-adic valuations; Z_p denominators avoid p.
inline GroupElement random_element(std::mt19937_64& rng, const GroupDescriptor& d) {
  std::uniform_int_distribution<long> num(-40, 40);
  switch (d.kind()) {
    case GroupKind::Integers:
    case GroupKind::IntegersModP:
      return GroupElement::from_integer(d, num(rng));
    case GroupKind::PAdicIntegers: {
      static const long dens[] = {1, 2, 4, 5, 7, 8};
      return GroupElement::from_rational(d, make_rational(num(rng), dens[rng() % 6]));
    }
    default: {
      static const long dens[] = {1, 2, 3, 9, 27, 5, 6};
      return GroupElement::from_rational(d, make_rational(num(rng), dens[rng() % 7]));
    }
  }
}

}  // namespace testing_support
