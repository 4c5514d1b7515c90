// Property checks at desk scale; one PASS/FAIL line per criterion.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "flatchain/errors.hpp"
#include "flatchain/experiments.hpp"
#include "flatchain/flatnorm.hpp"
#include "flatchain/sizefunc.hpp"
#include "flatchain/slicing.hpp"
#include "flatchain/zerochain.hpp"
#include "oracles.hpp"

using namespace flatchain;
using testing_support::all_groups;
using testing_support::pt;
using testing_support::random_element;
using testing_support::random_point;

namespace {

constexpr double kBudgetSeconds = 10.0;

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Collects failures with the first few messages.
struct Tally {
  std::size_t checks = 0, failures = 0;
  std::string first;
  void expect(bool ok, const std::string& what) {
    ++checks;
    if (ok) return;
    if (failures++ == 0) first = what;
  }
  Outcome outcome(const std::string& summary) const {
    if (failures == 0) return {true, summary};
    return {false, summary + "; " + std::to_string(failures) + "/" + std::to_string(checks) + " checks failed, first: " +
                       first};
  }
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

ZeroChain random_atoms(std::mt19937_64& rng, const GroupDescriptor& d, std::size_t count, std::size_t n) {
  std::vector<Atom> atoms;
  for (std::size_t i = 0; i < count; ++i) atoms.push_back({random_element(rng, d), random_point(rng, n, 2)});
  return ZeroChain::from_atoms(d, n, std::move(atoms));
}

OrientedAffinePlane random_plane(std::mt19937_64& rng, std::size_t n, std::size_t m) {
  while (true) {
    std::vector<linalg::Vector> dirs;
    for (std::size_t i = 0; i < m; ++i) dirs.push_back(random_point(rng, n, 3));
    if (linalg::rank(dirs) != m) continue;
    return OrientedAffinePlane(random_point(rng, n, 2), dirs);
  }
}

GMeasure random_measure(std::mt19937_64& rng, const GroupDescriptor& d, std::size_t n, int level) {
  std::map<CubeIndex, GroupElement> cubes;
  std::uniform_int_distribution<long> idx(-2, (1L << level) + 1);
  for (int i = 0; i < 10; ++i) {
    CubeIndex c(n);
    for (auto& x : c) x = idx(rng);
    auto g = random_element(rng, d);
    if (!g.is_zero()) cubes.insert_or_assign(c, g);
  }
  return GMeasure::from_parts(d, n, level, std::move(cubes), {});
}

// ------------------------------------------------------------------ criteria

Outcome norm_axioms() {
  std::mt19937_64 rng(1001);
  Tally t;
  for (const auto& d : all_groups())
    for (int i = 0; i < 10000; ++i) {
      auto g = random_element(rng, d), h = random_element(rng, d);
      t.expect(norm(-g) == norm(g), d.label() + " evenness at " + g.to_string());
      t.expect(norm(g + h) <= norm(g) + norm(h) + kNormTolerance, d.label() + " triangle at " + g.to_string());
      t.expect((norm(g) == 0.0) == g.is_zero(), d.label() + " definiteness at " + g.to_string());
    }
  return t.outcome("6 groups x 10^4 pairs");
}

Outcome chi_sandwich() {
  std::mt19937_64 rng(1002);
  Tally t;
  for (const auto& d : all_groups())
    for (int i = 0; i < 200; ++i) {
      auto a = random_atoms(rng, d, 1 + i % 6, 1 + i % 3);
      const double c = norm(chi(a));
      const double up = flat_upper_bound(a.to_chain()).value;
      const double cap = c + mass(a) * support_diameter(a.to_chain()).diameter + 1e-12;
      t.expect(c <= up + 1e-12 && up <= cap, d.label() + " sandwich " + fmt(c) + " <= " + fmt(up) + " <= " + fmt(cap));
      Point x = random_point(rng, a.ambient(), 2);
      auto cb = cone_flat_bound(a, x);
      auto expect = subtract(a, ZeroChain::from_atoms(d, a.ambient(), {{chi(a), x}}));
      t.expect(ZeroChain::from_chain(boundary(cb.cone)) == expect, d.label() + " cone boundary identity");
    }
  return t.outcome("6 groups x 200 zero-chains, cone identity exact");
}

Outcome flat_oracle() {
  std::mt19937_64 rng(1003);
  auto r = GroupDescriptor::reals();
  Tally t;
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    std::vector<Atom> atoms;
    const std::size_t n = 1 + i % 2;
    for (int j = 0; j < 1 + i % 5; ++j)
      atoms.push_back({GroupElement::from_rational(r, testing_support::random_rational(rng, 3, 4)),
                       random_point(rng, n, 2)});
    auto a = ZeroChain::from_atoms(r, n, std::move(atoms));
    const double lp = flat_exact_zero_chain(a), brute = testing_support::spanning_tree_oracle(a);
    worst = std::max(worst, std::fabs(lp - brute));
    t.expect(std::fabs(lp - brute) <= 1e-6, "instance " + std::to_string(i) + ": " + fmt(lp) + " vs " + fmt(brute));
  }
  for (int i = 0; i < 50; ++i) {
    auto g = GroupElement::from_rational(r, testing_support::random_rational(rng, 4, 5));
    if (g.is_zero()) continue;
    Point x = random_point(rng, 2, 2), y = random_point(rng, 2, 2);
    if (x == y) continue;
    auto a = ZeroChain::from_atoms(r, 2, {{g, x}, {-g, y}});
    const double expect = std::min(2.0 * norm(g), norm(g) * distance(x, y));
    auto br = flat_bracket(a.to_chain());
    t.expect(std::fabs(flat_exact_zero_chain(a) - expect) <= 1e-9 && std::fabs(br.upper - expect) <= 1e-9 &&
                 std::fabs(br.lower - expect) <= 1e-9,
             "dipole " + fmt(br.lower) + ".." + fmt(br.upper) + " vs " + fmt(expect));
  }
  return t.outcome("100 instances, max |LP - oracle| = " + fmt(worst) + "; dipole formula");
}

Outcome boundary_slice() {
  std::mt19937_64 rng(1004);
  auto z = GroupDescriptor::integers();
  struct Shape {
    std::size_t n, k, m;
  };
  const Shape shapes[] = {{2, 1, 1}, {3, 1, 2}, {2, 2, 1}, {3, 2, 2}};
  Tally t;
  std::size_t nontrivial = 0, done = 0;
  for (const auto& sh : shapes)
    for (int i = 0; i < 25; ++i) {
      for (int attempt = 0; attempt < 50; ++attempt) {
        auto a = testing_support::random_chain(rng, z, sh.n, sh.k, 2);
        auto p = random_plane(rng, sh.n, sh.m);
        auto ba = boundary(a);
        if (!is_transverse(a, p) || !is_transverse(ba, p)) continue;
        auto s = slice_by_plane(a, p);
        auto lhs = boundary(s);
        if (sh.k + sh.m == sh.n) {
          t.expect(lhs.is_zero(), "boundary of a 0-dimensional slice");
        } else {
          auto rhs = slice_by_plane(ba, p);
          t.expect(lhs == rhs, "shape " + std::to_string(sh.n) + std::to_string(sh.k) + std::to_string(sh.m));
          if (!rhs.is_zero()) ++nontrivial;
        }
        ++done;
        break;
      }
    }
  t.expect(done == 100, "only " + std::to_string(done) + " transverse instances found");
  return t.outcome(std::to_string(done) + " transverse chains, " + std::to_string(nontrivial) + " with nonzero slices");
}

Outcome slice_integral() {
  std::mt19937_64 rng(1005);
  auto r = GroupDescriptor::reals();
  Tally t;
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const std::size_t n = 2 + i % 2, k = 1 + (i % 4 == 3);
    auto a = testing_support::random_chain(rng, r, n, k, 2);
    auto axes = coordinate_subsets(n, k);
    auto prof = slice_mass_profile(a, CoordinateProjection(n, axes[rng() % axes.size()]), k == 1 ? 64 : 24);
    worst = std::max(worst, prof.integral / prof.chain_mass);
    t.expect(prof.integral <= 1.01 * prof.chain_mass, "integral " + fmt(prof.integral) + " > 1.01 M " + fmt(prof.chain_mass));
  }
  for (int i = 0; i < 20; ++i) {
    const std::size_t n = 2 + i % 2, axis = i % n;
    Point p = random_point(rng, n, 2), q = p;
    q[axis] += make_rational(1 + i, 3);
    auto seg = single_term(random_element(rng, r), {p, q});
    if (seg.is_zero()) continue;
    auto prof = slice_mass_profile(seg, CoordinateProjection(n, {axis}), 64);
    t.expect(std::fabs(prof.integral - prof.chain_mass) <= 0.01 * prof.chain_mass, "axis segment " + fmt(prof.integral));
  }
  return t.outcome("50 chains, max integral/M = " + fmt(worst) + "; axis-aligned segments within 1%");
}

bool exact_transport_mass(const DyadicLevel& lv, std::size_t n, const GMeasure& nu) {
  const auto cubes = nu.aggregate(lv.level);
  if (nu.group().kind() == GroupKind::RealsAlphaNorm)
    return std::fabs(lv.transport_mass - lv.closed_form) <= 1e-12 * std::max(1.0, lv.closed_form);
  const Rational unit = Rational(static_cast<long>(n)) / Rational(Integer(1) << (2 * (lv.level + 1)));
  Rational lhs = 0, rhs = 0;
  for (const auto& term : lv.transport.terms()) {
    Rational ratio = term.simplex.gram_determinant() / unit;
    if (ratio.get_den() != 1 || !mpz_perfect_square_p(ratio.get_num_mpz_t())) return false;
    lhs += *exact_norm(term.coeff) * Rational(sqrt(ratio.get_num()));
  }
  for (const auto& [idx, v] : cubes) rhs += *exact_norm(v);
  return lhs == rhs;
}

Outcome dyadic_machinery() {
  std::mt19937_64 rng(1006);
  Tally t;
  std::size_t measures = 0;
  for (const auto& d : all_groups())
    for (std::size_t n = 1; n <= 2; ++n)
      for (int i = 0; i < 5; ++i) {
        auto nu = random_measure(rng, d, n, 4);
        ++measures;
        auto levels = measure_to_chain_dyadic(nu, 4);
        for (const auto& lv : levels) {
          const std::string where = d.label() + " N=" + std::to_string(n) + " level " + std::to_string(lv.level);
          if (lv.level > 0) {
            auto diff = subtract(lv.approximation, levels[lv.level - 1].approximation);
            t.expect(ZeroChain::from_chain(boundary(lv.transport)) == diff, where + " boundary identity");
            t.expect(exact_transport_mass(lv, n, nu), where + " transport mass");
          }
          t.expect(chain_to_measure(lv.approximation, lv.level).aggregate(lv.level) == nu.aggregate(lv.level),
                   where + " roundtrip");
        }
      }
  return t.outcome(std::to_string(measures) + " level-4 measures over 6 groups, N = 1, 2");
}

Outcome deformation() {
  std::mt19937_64 rng(1007);
  auto z = GroupDescriptor::integers();
  Tally t;
  std::size_t fixed = 0;
  for (std::size_t n = 1; n <= 3; ++n)
    for (std::size_t k = 1; k <= n; ++k)
      for (int i = 0; i < 4; ++i) {
        const Rational eps = i % 2 ? Rational(1, 2) : Rational(1);
        auto axes_list = coordinate_subsets(n, k);
        Chain a(z, n, k);
        for (int c = 0; c < 3; ++c) {
          Point corner(n);
          std::uniform_int_distribution<long> cell(-2, 2);
          for (auto& x : corner) x = eps * cell(rng);
          a = add_chains(a, grid_cube(GroupElement::from_integer(z, 1 + c), corner, eps,
                                      axes_list[rng() % axes_list.size()]));
        }
        auto p = deformation_sample(a, random_grid(eps, n, rng));
        t.expect(p == a, "cube chain N=" + std::to_string(n) + " k=" + std::to_string(k) + " not fixed");
        ++fixed;
      }
  std::size_t monotone = 0;
  for (int i = 0; i < 20; ++i) {
    Point a0, b0;
    while (true) {
      a0 = random_point(rng, 2, 1);
      Point d = random_point(rng, 2, 3);
      Rational l2 = d[0] * d[0] + d[1] * d[1];
      if (l2 < 4 || l2 > 9) continue;
      b0 = {a0[0] + d[0], a0[1] + d[1]};
      break;
    }
    auto a = single_term(GroupElement::from_integer(z, 1), {a0, b0});
    double prev = std::numeric_limits<double>::infinity();
    bool mono = true;
    for (long den : {1, 2, 4, 8}) {
      Chain p(z, 2, 1);
      for (int attempt = 0;; ++attempt) {
        try {
          p = deformation_sample(a, random_grid(make_rational(1, den), 2, rng));
          break;
        } catch (const TransversalityError&) {
          if (attempt == 4) throw;
        }
      }
      const double up = flat_distance(p, a).upper;
      if (up > prev + 1e-12) mono = false;
      prev = up;
    }
    monotone += mono;
  }
  t.expect(monotone >= 18, "only " + std::to_string(monotone) + "/20 monotone");
  return t.outcome(std::to_string(fixed) + " cube chains fixed; " + std::to_string(monotone) +
                   "/20 segments with nonincreasing flat-distance bound");
}

Outcome ball_growth() {
  std::mt19937_64 rng(1008);
  Tally t;
  double worst = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 100; ++i) {
    const auto d = i % 2 ? GroupDescriptor::reals() : GroupDescriptor::integers();
    const std::size_t n = 2 + i % 2;
    Point a = random_point(rng, n, 2);
    std::vector<Term> terms;
    Point prev = a;
    for (int s = 0; s < 5; ++s) {
      Point next = random_point(rng, n, 2);
      if (next == prev) continue;
      // a path from a with occasional spokes back to a
      terms.push_back({random_element(rng, d), Simplex({s % 3 == 2 ? a : prev, next})});
      prev = next;
    }
    auto tc = Chain::from_terms(d, n, 1, std::move(terms), nullptr, OverlapCheck::Resolve);
    std::vector<Rational> radii;
    for (int k = 0; k < 50; ++k) radii.push_back(make_rational(k, 8));
    auto rep = ball_growth_check(make_ball_growth_instance(tc, a, radii));
    worst = std::min(worst, rep.min_margin);
    t.expect(rep.min_margin >= -1e-12 && rep.holds, "chain " + std::to_string(i) + " margin " + fmt(rep.min_margin));
  }
  return t.outcome("100 chains x 50 radii, min margin " + fmt(worst));
}

Outcome nonrectifiable() {
  auto r = GroupDescriptor::reals();
  Tally t;
  auto diag = build_nonrectifiable_chain(r, [&](const Rational& s) { return GroupElement::from_rational(r, s); }, 0, 1, 12);
  t.expect(diag.levels.size() == 13, "level count");
  for (const auto& l : diag.levels) {
    const std::string where = "level " + std::to_string(l.level);
    t.expect(l.max_atom_norm == std::ldexp(1.0, -l.level), where + " max atom norm " + fmt(l.max_atom_norm));
    t.expect(l.mass == 1.0, where + " mass " + fmt(l.mass));
    if (l.level > 0) t.expect(l.cauchy_bound == std::ldexp(1.0, -l.level - 1), where + " Cauchy bound " + fmt(l.cauchy_bound));
  }
  return t.outcome("levels 0..12 exact (max atom 2^-n, mass 1, Cauchy 2^-n-1)");
}

Outcome classification() {
  Tally t;
  const std::map<std::string, bool> expected = {{"Z", true},   {"Z/3", true},   {"Q_3", true},
                                                {"Z_3", true}, {"R^1/2", true}, {"R", false}};
  bool phi_row = false;
  for (const auto& row : classification_report(10)) {
    if (row.weight == "flat-size") {
      phi_row = true;
      t.expect(row.rectifiable, "(R, flat size) not rectifiable");
      continue;
    }
    auto it = expected.find(row.group);
    t.expect(it != expected.end() && it->second == row.rectifiable, "flag for " + row.group);
    if (row.group == "R") t.expect(row.value == 1.0, "R path length " + fmt(row.value));
    if (row.witness == "dyadic_slope") t.expect(std::fabs(row.value - 0.5) <= 0.05 * 0.5, "slope " + fmt(row.value));
  }
  t.expect(phi_row, "missing flat-size row");
  return t.outcome("6 group flags, R length 1, R^1/2 slope, (R, flat size)");
}

Outcome size() {
  std::mt19937_64 rng(1011);
  Tally t;
  for (const auto& d : all_groups())
    for (std::size_t k = 1; k <= 2; ++k) {
      auto a = testing_support::random_chain(rng, d, 3, k, 4);
      ExactSum vol;
      for (const auto& term : a.terms()) vol.add(term.simplex.volume());
      t.expect(flat_size(a) == vol.value(), d.label() + " flat size vs volume sum");
      auto scaled = scale_coefficients(a, [&](const GroupElement& g) {
        GroupElement h = g + g + g;
        return h.is_zero() ? g : h;
      });
      t.expect(flat_size(scaled) == flat_size(a), d.label() + " coefficient independence");
    }
  auto z = GroupDescriptor::integers();
  for (int i = 0; i < 20; ++i) {
    auto a = testing_support::random_chain(rng, z, 2 + i % 2, 1 + i % 2, 3);
    auto unit = scale_coefficients(a, [&](const GroupElement& g) {
      return GroupElement::from_integer(z, sgn(g.value()));
    });
    t.expect(flat_size(unit) == mass(unit), "unit coefficients: size " + fmt(flat_size(unit)) + " vs mass " + fmt(mass(unit)));
    t.expect(phi_mass(unit, WeightFunction::flat_size()) == flat_size(unit), "phi_s mass");
  }
  return t.outcome("exact volume sums, coefficient independence, size = mass for unit coefficients");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"group-norm axioms", norm_axioms},
      {"chi sandwich and cone identity", chi_sandwich},
      {"flat norm of 0-chains against brute force", flat_oracle},
      {"boundary commutes with slicing", boundary_slice},
      {"slice mass integral", slice_integral},
      {"dyadic measure machinery", dyadic_machinery},
      {"deformation sampler", deformation},
      {"ball growth", ball_growth},
      {"non-rectifiable witness", nonrectifiable},
      {"classification table", classification},
      {"size functional", size},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > kBudgetSeconds) {
      o.pass = false;
      o.detail += "; exceeded the " + fmt(kBudgetSeconds) + " s budget";
    }
    failed += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << i + 1 << " (" << criteria[i].first << "): " << o.detail
              << " [" << fmt(secs) << " s]" << std::endl;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
