#include "flatchain/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "flatchain/errors.hpp"
#include "flatchain/sizefunc.hpp"
#include "flatchain/slicing.hpp"

namespace flatchain {

namespace {

bool tolerably_geq(double lhs, double rhs) {
  return lhs >= rhs - kNormTolerance * std::max({1.0, std::fabs(lhs), std::fabs(rhs)});
}

}  // namespace

BallGrowthInstance make_ball_growth_instance(const Chain& t, const Point& a, std::vector<Rational> radii) {
  if (t.dim() != 1) throw DimensionMismatch("ball growth needs a 1-chain");
  if (a.size() != t.ambient()) throw DimensionMismatch("center has the wrong ambient dimension");
  ZeroChain bd = ZeroChain::from_chain(boundary(t));
  GroupElement g = GroupElement::zero(t.group());
  std::vector<Atom> rest;
  for (const auto& at : bd.atoms()) {
    if (at.point == a)
      g = at.coeff;
    else
      rest.push_back(at);
  }
  ZeroChain e = ZeroChain::from_atoms(t.group(), t.ambient(), std::move(rest));
  return {t, a, g, std::move(e), std::move(radii)};
}

double ball_measure(const Chain& t, const Point& a, const Rational& radius) {
  if (t.dim() != 1) throw DimensionMismatch("ball measure of a chain needs a 1-chain");
  if (sgn(radius) < 0) throw InputError("negative radius");
  const Rational r2 = radius * radius;
  double total = 0.0;
  for (const auto& term : t.terms()) {
    const Point& p = term.simplex.vertices()[0];
    const Point& q = term.simplex.vertices()[1];
    Rational qa = 0, qb = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      Rational d = q[i] - p[i];
      qa += d * d;
      qb += (p[i] - a[i]) * d;
    }
    const Rational qc = squared_distance(p, a) - r2;
    const bool p_in = sgn(qc) <= 0, q_in = squared_distance(q, a) <= r2;
    double fraction;
    if (p_in && q_in) {
      fraction = 1.0;
    } else {
      // |p + s (q - p) - a|^2 - R^2 = qa s^2 + 2 qb s + qc
      const Rational disc = qb * qb - qa * qc;
      if (sgn(disc) <= 0) continue;
      const double root = std::sqrt(to_double(disc));
      const double da = to_double(qa), db = to_double(qb);
      double lo = p_in ? 0.0 : std::max(0.0, (-db - root) / da);
      double hi = q_in ? 1.0 : std::min(1.0, (-db + root) / da);
      if (hi <= lo) continue;
      fraction = hi - lo;
    }
    total += norm(term.coeff) * fraction * std::sqrt(to_double(qa));
  }
  return total;
}

double ball_measure(const ZeroChain& e, const Point& a, const Rational& radius) {
  if (sgn(radius) < 0) throw InputError("negative radius");
  const Rational r2 = radius * radius;
  double total = 0.0;
  for (const auto& at : e.atoms())
    if (squared_distance(at.point, a) <= r2) total += norm(at.coeff);
  return total;
}

BallGrowthReport ball_growth_check(const BallGrowthInstance& inst) {
  ZeroChain expected = ZeroChain::from_atoms(inst.t.group(), inst.t.ambient(), {{inst.g, inst.a}});
  expected = add(expected, inst.e);
  const ZeroChain bd = ZeroChain::from_chain(boundary(inst.t));
  if (!(bd == expected)) throw InvariantViolation("boundary of T is not g[a] + E");

  // chi(boundary(T) restricted to B(a, r)) is constant between atom distances
  std::vector<std::pair<Rational, GroupElement>> shells;
  for (const auto& at : bd.atoms())
    shells.emplace_back(squared_distance(at.point, inst.a), at.coeff);
  std::sort(shells.begin(), shells.end(), [](const auto& x, const auto& y) { return x.first < y.first; });

  const double g_norm = norm(inst.g);
  BallGrowthReport rep;
  bool first = true;
  for (const auto& radius : inst.radii) {
    if (sgn(radius) < 0) throw InputError("negative radius");
    BallGrowthRow row;
    row.radius = radius;
    row.chain_measure = ball_measure(inst.t, inst.a, radius);
    const double big_r = to_double(radius);
    row.bound = big_r * (g_norm - ball_measure(inst.e, inst.a, radius));

    const Rational r2 = radius * radius;
    GroupElement partial = GroupElement::zero(inst.t.group());
    double integral = 0.0;
    std::size_t i = 0;
    while (i < shells.size() && shells[i].first <= r2) {
      const Rational here = shells[i].first;
      while (i < shells.size() && shells[i].first == here) partial += shells[i++].second;
      const double from = std::sqrt(to_double(here));
      const double to = (i < shells.size() && shells[i].first <= r2) ? std::sqrt(to_double(shells[i].first)) : big_r;
      integral += norm(partial) * (to - from);
    }
    row.integral = integral;
    row.margin = row.chain_measure - row.bound;
    row.holds = tolerably_geq(row.chain_measure, row.integral) && tolerably_geq(row.integral, row.bound);
    rep.holds = rep.holds && row.holds;
    rep.min_margin = first ? row.margin : std::min(rep.min_margin, row.margin);
    first = false;
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

namespace {

NonrectDiagnostics diagnostics_from_measure(const GMeasure& nu, int levels) {
  NonrectDiagnostics out{nu.group(), levels, nu.total_variation(), {}};
  for (const auto& lv : measure_to_chain_dyadic(nu, levels))
    out.levels.push_back({lv.level, lv.approximation.atoms().size(), lv.max_atom_norm, lv.approximation_mass,
                          lv.closed_form, lv.transport_mass});
  return out;
}

void check_levels(int levels) {
  if (levels < 0 || levels > 20) throw InputError("nonrectifiable demo level must lie in [0, 20]");
}

}  // namespace

NonrectDiagnostics build_nonrectifiable_chain(const GroupDescriptor& d, const PathEvaluator& path, const Rational& a,
                                              const Rational& b, int levels) {
  check_levels(levels);
  if (!(a < b)) throw InputError("path interval needs a < b");
  const Rational step(1, 1L << levels);
  const Rational lo = a / step, hi = b / step;
  if (lo.get_den() != 1 || hi.get_den() != 1)
    throw InputError("path interval ends must be multiples of 2^-" + std::to_string(levels));
  std::vector<PathSample> samples;
  for (Integer i = lo.get_num(); i <= hi.get_num(); ++i) {
    Rational t = Rational(i) * step;
    samples.push_back({t, path(t)});
  }
  return build_nonrectifiable_chain(d, PathSamples(std::move(samples)), levels);
}

NonrectDiagnostics build_nonrectifiable_chain(const GroupDescriptor& d, const PathSamples& path, int levels) {
  check_levels(levels);
  const auto& s = path.samples();
  if (s.size() < 2) throw InputError("path needs at least two samples");
  if (!(s.front().value.descriptor() == d)) throw DescriptorMismatch("path values are not in the requested group");
  const Rational step(1, 1L << levels);
  std::map<CubeIndex, GroupElement> cubes;
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (s[i].t - s[i - 1].t != step)
      throw InputError("path samples must sit at consecutive multiples of 2^-" + std::to_string(levels) +
                       " (index " + std::to_string(i) + ")");
    Rational idx = s[i - 1].t / step;
    if (idx.get_den() != 1) throw InputError("path sample times must be multiples of the dyadic step");
    GroupElement inc = s[i].value - s[i - 1].value;
    if (!inc.is_zero()) cubes.emplace(CubeIndex{idx.get_num().get_si()}, std::move(inc));
  }
  return diagnostics_from_measure(GMeasure::from_parts(d, 1, levels, std::move(cubes), {}), levels);
}

SliceStats slice_statistics(const Chain& a, std::size_t fibers_per_plane, std::size_t planes, std::uint64_t seed) {
  const std::size_t n = a.ambient(), k = a.dim();
  SliceStats stats;
  std::mt19937_64 rng(seed);
  const long resolution = 1L << 30;
  std::uniform_int_distribution<long> pick(0, resolution);
  Point lo(n, Rational(0)), hi(n, Rational(1));
  if (auto box = bounding_box(a)) std::tie(lo, hi) = *box;
  for (std::size_t i = 0; i < n; ++i)
    if (lo[i] == hi[i]) {
      lo[i] -= Rational(1, 2);
      hi[i] += Rational(1, 2);
    }

  auto subsets = coordinate_subsets(n, k);
  if (planes > 0 && planes < subsets.size()) subsets.resize(planes);
  stats.planes = subsets.size();
  for (const auto& axes : subsets) {
    CoordinateProjection proj(n, axes);
    for (std::size_t f = 0; f < fibers_per_plane; ++f) {
      FiberRecord rec;
      rec.indices = axes;
      std::optional<Chain> slice;
      for (int attempt = 0; attempt < 2 && !slice; ++attempt) {
        rec.x.assign(k, Rational(0));
        for (std::size_t i = 0; i < k; ++i)
          rec.x[i] = lo[axes[i]] + (hi[axes[i]] - lo[axes[i]]) * make_rational(pick(rng), resolution);
        try {
          slice = slice_fiber(a, proj, rec.x);
        } catch (const TransversalityError&) {
          if (attempt == 1) throw;
          rec.resampled = true;
          ++stats.resamples;
        }
      }
      if (slice->dim() != 0) stats.all_atomic = false;
      rec.atoms = slice->terms().size();
      for (const auto& t : slice->terms()) {
        const double v = norm(t.coeff);
        rec.total_norm += v;
        rec.max_norm = std::max(rec.max_norm, v);
      }
      stats.max_atoms = std::max(stats.max_atoms, rec.atoms);
      stats.records.push_back(std::move(rec));
    }
  }
  return stats;
}

std::vector<ClassificationRow> classification_report(int profile_levels) {
  std::vector<ClassificationRow> rows;
  auto row = [&](const GroupDescriptor& d, std::string weight, std::string witness, double value,
                 std::string detail) {
    rows.push_back({d.label(), std::move(weight), classify_group(d).every_finite_mass_chain_rectifiable,
                    std::move(witness), value, std::move(detail)});
  };
  auto min_nonzero = [](const GroupDescriptor& d, long count) {
    double m = 0.0;
    for (long v = 1; v <= count; ++v) {
      auto g = GroupElement::from_integer(d, v);
      if (!g.is_zero()) m = (m == 0.0) ? norm(g) : std::min(m, norm(g));
    }
    return m;
  };
  auto norm_values = [](const GroupDescriptor& d, long from, long to) {
    std::ostringstream os;
    os << "0";
    for (long e = from; e <= to; ++e) {
      Rational v(1);
      for (long i = 0; i < std::labs(e); ++i) v = e >= 0 ? Rational(v * d.p()) : Rational(v / d.p());
      os << " " << *exact_norm(GroupElement::from_rational(d, v));
    }
    return os.str();
  };

  const auto z = GroupDescriptor::integers();
  row(z, "norm", "min_nonzero_norm", min_nonzero(z, 16), "norm values are integers; a continuous path is constant");
  const auto z3 = GroupDescriptor::integers_mod(3);
  row(z3, "norm", "min_nonzero_norm", min_nonzero(z3, 2), "finite group with discrete norm");
  const auto q3 = GroupDescriptor::padic_rationals(3);
  row(q3, "norm", "norm_ratio", 3.0, "norm values {" + norm_values(q3, -3, 3) + "}; discrete away from 0");
  const auto zp3 = GroupDescriptor::padic_integers(3);
  row(zp3, "norm", "norm_ratio", 3.0, "norm values {" + norm_values(zp3, 0, 4) + "}; discrete away from 0");

  const auto ra = GroupDescriptor::reals_alpha(Rational(1, 2));
  auto identity = [](const GroupDescriptor& d) {
    return [d](const Rational& t) { return GroupElement::from_rational(d, t); };
  };
  auto prof_a = dyadic_length_profile(identity(ra), 0, 1, profile_levels);
  {
    std::ostringstream os;
    os << "gamma(t)=t; length 2^(n(1-alpha)) = " << prof_a.back().length << " at level " << profile_levels
       << "; expected slope " << 1.0 - ra.alpha_value();
    row(ra, "norm", "dyadic_slope", prof_a.back().slope.value_or(0.0), os.str());
  }

  const auto r = GroupDescriptor::reals();
  auto prof_r = dyadic_length_profile(identity(r), 0, 1, profile_levels);
  {
    auto diag = build_nonrectifiable_chain(r, identity(r), 0, 1, profile_levels);
    std::ostringstream os;
    os << "gamma(t)=t on [0,1]; level " << profile_levels << " chain: max atom norm " << diag.levels.back().max_atom_norm
       << ", mass " << diag.levels.back().mass;
    row(r, "norm", "path_length", prof_r.back().length, os.str());
  }

  const auto phi = WeightFunction::flat_size();
  rows.push_back({r.label(), to_string(phi.kind()), classify_phi_rectifiability(r, phi).every_finite_mass_chain_rectifiable,
                  "min_metric_step", 1.0, "d(g,h) = phi_s(g-h) + |g-h| >= 1 for g != h"});
  return rows;
}

}  // namespace flatchain
