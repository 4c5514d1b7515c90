#include "flatchain/flatnorm.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "flatchain/errors.hpp"
#include "flatchain/slicing.hpp"
#include "mincostflow.hpp"

namespace flatchain {

namespace {

constexpr std::size_t kTransportLimit = 400;
constexpr std::size_t kConeVertexLimit = 16;
constexpr std::size_t kPrismCandidateLimit = 16;

bool transport_group(const GroupDescriptor& g) {
  return g.kind() == GroupKind::Reals || g.kind() == GroupKind::Integers;
}

FlatUpper evaluate(const Chain& a, Chain b, std::string strategy) {
  Chain residual = b.is_zero() ? a : subtract_chains(a, boundary(b));
  const double value = mass(residual) + mass(b);
  return FlatUpper{value, FlatWitness{std::move(b), std::move(residual)}, std::move(strategy)};
}

Chain segment_chain(const GroupDescriptor& g, std::size_t n, std::vector<Term> terms) {
  return Chain::from_terms(g, n, 1, std::move(terms), nullptr, OverlapCheck::Resolve);
}

// Optimal transport with a ground node at cost 1; the witness moves flow
// f from x to y as f [y, x].
Chain transport_witness(const ZeroChain& z) {
  const auto& atoms = z.atoms();
  const std::size_t n = atoms.size();
  std::vector<std::vector<double>> cost(n + 1, std::vector<double>(n + 1, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) cost[i][j] = cost[j][i] = distance(atoms[i].point, atoms[j].point);
    cost[i][n] = cost[n][i] = 1.0;
  }
  std::vector<Rational> supply(n + 1, Rational(0));
  for (std::size_t i = 0; i < n; ++i) {
    supply[i] = atoms[i].coeff.value();
    supply[n] -= supply[i];
  }
  auto flow = detail::dense_min_cost_flow(cost, std::move(supply));
  std::vector<Term> terms;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (sgn(flow[i][j]) > 0)
        terms.push_back({GroupElement::from_rational(z.group(), flow[i][j]), Simplex({atoms[j].point, atoms[i].point})});
  return segment_chain(z.group(), z.ambient(), std::move(terms));
}

// Exhaustive Z/p labels on the segments between atoms.
Chain enumeration_witness(const ZeroChain& z) {
  const auto& atoms = z.atoms();
  const std::size_t n = atoms.size();
  const long p = z.group().p();
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) edges.push_back({i, j});
  if (std::pow(static_cast<double>(p), static_cast<double>(edges.size())) > kMaxEnumeration)
    throw Unsupported("Z/" + std::to_string(p) + " enumeration over " + std::to_string(edges.size()) +
                      " segments exceeds the search limit");
  std::vector<double> len(edges.size());
  for (std::size_t e = 0; e < edges.size(); ++e) len[e] = distance(atoms[edges[e].first].point, atoms[edges[e].second].point);
  std::vector<long> base(n);
  for (std::size_t i = 0; i < n; ++i) base[i] = atoms[i].coeff.value().get_num().get_si();
  auto nrm = [p](long r) {
    r %= p;
    if (r < 0) r += p;
    return static_cast<double>(std::min(r, p - r));
  };
  double isolated = 0.0;
  // an atom is settled once its last incident edge has a label
  std::vector<std::vector<std::size_t>> settles(edges.size());
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t last = 0;
    bool any = false;
    for (std::size_t e = 0; e < edges.size(); ++e)
      if (edges[e].first == i || edges[e].second == i) last = e, any = true;
    if (any)
      settles[last].push_back(i);
    else
      isolated += nrm(base[i]);
  }
  std::vector<long> label(edges.size(), 0), best(edges.size(), 0), res = base;
  double best_cost = 0.0;
  for (auto r : base) best_cost += nrm(r);
  // depth-first over labels, pruned by the settled part of the cost
  auto search = [&](auto&& self, std::size_t e, double partial) -> void {
    if (partial >= best_cost - 1e-12) return;
    if (e == edges.size()) {
      best_cost = partial;
      best = label;
      return;
    }
    const auto [i, j] = edges[e];
    for (long b = 0; b < p; ++b) {
      label[e] = b;
      res[i] += b;
      res[j] -= b;
      double c = partial + nrm(b) * len[e];
      for (auto s : settles[e]) c += nrm(res[s]);
      self(self, e + 1, c);
      res[i] -= b;
      res[j] += b;
    }
    label[e] = 0;
  };
  search(search, 0, isolated);
  std::vector<Term> terms;
  for (std::size_t e = 0; e < edges.size(); ++e)
    if (best[e] != 0)
      terms.push_back({GroupElement::from_integer(z.group(), best[e]),
                       Simplex({atoms[edges[e].first].point, atoms[edges[e].second].point})});
  return segment_chain(z.group(), z.ambient(), std::move(terms));
}

// Repeatedly moves the whole residual coefficient of one atom onto another
// while that lowers the cost.
Chain greedy_witness(const ZeroChain& z) {
  std::vector<Atom> res = z.atoms();
  std::vector<Term> terms;
  while (true) {
    double best = -1e-12;
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = 0; i < res.size(); ++i) {
      if (res[i].coeff.is_zero()) continue;
      const double ni = norm(res[i].coeff);
      for (std::size_t j = 0; j < res.size(); ++j) {
        if (i == j) continue;
        const double delta =
            norm(res[i].coeff + res[j].coeff) - ni - norm(res[j].coeff) + ni * distance(res[i].point, res[j].point);
        if (delta < best) {
          best = delta;
          bi = i;
          bj = j;
        }
      }
    }
    if (best >= -1e-12) break;
    terms.push_back({res[bi].coeff, Simplex({res[bj].point, res[bi].point})});
    res[bj].coeff += res[bi].coeff;
    res[bi].coeff = GroupElement::zero(z.group());
  }
  return segment_chain(z.group(), z.ambient(), std::move(terms));
}

Point centroid(const std::vector<Point>& pts) {
  Point c(pts.front().size(), Rational(0));
  for (const auto& p : pts)
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += p[i];
  for (auto& x : c) x /= Rational(static_cast<long>(pts.size()));
  return c;
}

// Translations y for which some term g[s] has a partner -g[s + y]; each
// comes with the subchain of such source terms.
std::vector<std::pair<Point, Chain>> prism_candidates(const Chain& a) {
  std::map<Point, std::vector<Term>> sources;
  const auto& terms = a.terms();
  for (std::size_t i = 0; i < terms.size(); ++i)
    for (std::size_t j = 0; j < terms.size(); ++j) {
      if (i == j || !(terms[i].coeff + terms[j].coeff).is_zero()) continue;
      const auto& u = terms[i].simplex.vertices();
      const auto& v = terms[j].simplex.vertices();
      Point y = linalg::sub(v[0], u[0]);
      bool match = true;
      for (std::size_t r = 1; r < u.size() && match; ++r) match = linalg::sub(v[r], u[r]) == y;
      if (!match) continue;
      if (sources.size() >= kPrismCandidateLimit && !sources.count(y)) continue;
      sources[y].push_back(terms[i]);
    }
  std::vector<std::pair<Point, Chain>> out;
  for (auto& [y, ts] : sources)
    out.push_back({y, Chain::from_terms(a.group(), a.ambient(), a.dim(), std::move(ts), nullptr, OverlapCheck::Trusted)});
  return out;
}

// The unique compactly supported 2-chain D in R^2 with dD = c, for a 1-cycle
// c: vertical slabs between vertex and crossing abscissae, winding number
// accumulated upward across the segments of each slab.
Chain planar_fill(const Chain& c) {
  const auto& g = c.group();
  if (!boundary(c).is_zero()) throw InvariantViolation("planar fill needs a cycle");
  struct Seg {
    Point lo, hi;  // lo has the smaller x
    GroupElement rise;
  };
  std::vector<Seg> segs;
  std::set<Rational> xs;
  for (const auto& t : c.terms()) {
    const Point& p = t.simplex.vertices()[0];
    const Point& q = t.simplex.vertices()[1];
    xs.insert(p[0]);
    xs.insert(q[0]);
    if (p[0] == q[0]) continue;
    // upward crossing of a rightward edge enters the region it bounds
    if (p[0] < q[0])
      segs.push_back({p, q, t.coeff});
    else
      segs.push_back({q, p, -t.coeff});
  }
  auto y_at = [](const Seg& s, const Rational& x) -> Rational {
    return s.lo[1] + (s.hi[1] - s.lo[1]) * (x - s.lo[0]) / (s.hi[0] - s.lo[0]);
  };
  for (std::size_t i = 0; i < segs.size(); ++i)
    for (std::size_t j = i + 1; j < segs.size(); ++j) {
      const Rational l = std::max(segs[i].lo[0], segs[j].lo[0]), r = std::min(segs[i].hi[0], segs[j].hi[0]);
      if (!(l < r)) continue;
      const Rational dl = y_at(segs[i], l) - y_at(segs[j], l), dr = y_at(segs[i], r) - y_at(segs[j], r);
      if (sgn(dl) * sgn(dr) < 0) xs.insert(l + (r - l) * dl / (dl - dr));
    }
  const std::vector<Rational> xv(xs.begin(), xs.end());
  std::vector<Term> terms;
  for (std::size_t k = 0; k + 1 < xv.size(); ++k) {
    const Rational &x0 = xv[k], &x1 = xv[k + 1];
    struct Cut {
      Rational y0, y1;
      GroupElement rise;
    };
    std::vector<Cut> cuts;
    for (const auto& s : segs)
      if (s.lo[0] <= x0 && s.hi[0] >= x1) cuts.push_back({y_at(s, x0), y_at(s, x1), s.rise});
    std::sort(cuts.begin(), cuts.end(), [](const Cut& a, const Cut& b) { return a.y0 + a.y1 < b.y0 + b.y1; });
    GroupElement w = GroupElement::zero(g);
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      w += cuts[i].rise;
      if (w.is_zero()) continue;
      const Point a{x0, cuts[i].y0}, b{x1, cuts[i].y1}, cc{x1, cuts[i + 1].y1}, d{x0, cuts[i + 1].y0};
      terms.push_back({w, Simplex({a, b, cc})});
      terms.push_back({w, Simplex({a, cc, d})});
    }
  }
  return Chain::from_terms(g, 2, 2, std::move(terms), nullptr, OverlapCheck::Trusted);
}

void consider(FlatUpper& best, FlatUpper candidate) {
  if (candidate.value < best.value) best = std::move(candidate);
}

}  // namespace

Chain cone_over(const Chain& a, const Point& x) {
  if (x.size() != a.ambient()) throw DimensionMismatch("cone vertex of wrong dimension");
  if (a.dim() + 1 > a.ambient()) return Chain(a.group(), a.ambient(), a.ambient());
  if (a.dim() == 1 && a.ambient() == 2) return planar_fill(subtract_chains(a, cone_over(boundary(a), x)));
  std::vector<Term> terms;
  for (const auto& t : a.terms()) {
    std::vector<Point> v{x};
    v.insert(v.end(), t.simplex.vertices().begin(), t.simplex.vertices().end());
    terms.push_back({t.coeff, Simplex(std::move(v))});
  }
  return Chain::from_terms(a.group(), a.ambient(), a.dim() + 1, std::move(terms), nullptr, OverlapCheck::Resolve);
}

Chain prism(const Chain& a, const Point& y) {
  if (y.size() != a.ambient()) throw DimensionMismatch("prism offset of wrong dimension");
  if (a.dim() + 1 > a.ambient()) return Chain(a.group(), a.ambient(), a.ambient());
  std::vector<Term> terms;
  for (const auto& t : a.terms()) {
    const auto& v = t.simplex.vertices();
    for (std::size_t i = 0; i < v.size(); ++i) {
      std::vector<Point> cell(v.begin(), v.begin() + static_cast<long>(i) + 1);
      for (std::size_t j = i; j < v.size(); ++j) {
        Point w = v[j];
        for (std::size_t c = 0; c < w.size(); ++c) w[c] += y[c];
        cell.push_back(std::move(w));
      }
      terms.push_back({i % 2 == 0 ? t.coeff : -t.coeff, Simplex(std::move(cell))});
    }
  }
  return Chain::from_terms(a.group(), a.ambient(), a.dim() + 1, std::move(terms), nullptr, OverlapCheck::Resolve);
}

FlatLower flat_lower_detail(const Chain& a) {
  if (a.is_zero()) return {0.0, "zero"};
  const std::size_t n = a.ambient(), k = a.dim();
  if (k == 0) {
    auto z = ZeroChain::from_chain(a);
    if (transport_group(a.group()) && z.atoms().size() <= kTransportLimit) {
      auto w = transport_witness(z);
      auto u = evaluate(a, std::move(w), "transport");
      return {u.value, "transport"};
    }
    return {norm(chi(z)), "chi"};
  }
  FlatLower best{0.0, "projection"};
  for (const auto& axes : coordinate_subsets(n, k)) {
    AffineMap f;
    for (auto i : axes) {
      linalg::Vector row(n, Rational(0));
      row[i] = 1;
      f.linear.push_back(std::move(row));
    }
    f.offset.assign(k, Rational(0));
    const double m = mass(pushforward_affine(a, f));
    if (m > best.value) {
      std::string label = "projection[";
      for (std::size_t i = 0; i < axes.size(); ++i) label += (i ? "," : "") + std::to_string(axes[i]);
      best = {m, label + "]"};
    }
  }
  return best;
}

double flat_lower_bound(const Chain& a) { return flat_lower_detail(a).value; }

FlatUpper flat_upper_bound(const Chain& a) {
  const std::size_t n = a.ambient(), k = a.dim();
  FlatUpper best = evaluate(a, Chain(a.group(), n, std::min(k + 1, n)), "mass");
  if (a.is_zero() || k + 1 > n) return best;
  auto attempt = [&](auto&& make, const std::string& name) {
    try {
      consider(best, evaluate(a, make(), name));
    } catch (const InvariantViolation&) {
    } catch (const Unsupported&) {
    }
  };
  auto info = support_diameter(a);
  if (k == 0) {
    auto z = ZeroChain::from_chain(a);
    if (transport_group(a.group()) && z.atoms().size() <= kTransportLimit)
      attempt([&] { return transport_witness(z); }, "transport");
    if (a.group().kind() == GroupKind::IntegersModP && z.atoms().size() <= kMaxExactAtoms)
      attempt([&] { return enumeration_witness(z); }, "enumeration");
    attempt([&] { return greedy_witness(z); }, "greedy-merge");
  }
  attempt([&] { return cone_over(a, centroid(info.vertices)); }, "cone-centroid");
  for (std::size_t i = 0; i < info.vertices.size() && i < kConeVertexLimit; ++i)
    attempt([&] { return cone_over(a, info.vertices[i]); }, "cone-vertex");
  if (k >= 1) {
    // close A up with the witness of dA, then fill the near-cycle by a cone
    FlatUpper inner = flat_upper_bound(boundary(a));
    if (!inner.witness.b.is_zero()) {
      Chain loop = subtract_chains(a, inner.witness.b);
      attempt([&] { return cone_over(loop, centroid(info.vertices)); }, "boundary-fill");
      attempt([&] { return cone_over(loop, info.vertices.front()); }, "boundary-fill");
    } else {
      attempt([&] { return cone_over(a, info.vertices.front()); }, "boundary-fill");
    }
  }
  for (const auto& [y, src] : prism_candidates(a)) {
    attempt([&] { return prism(src, y); }, "prism");
    attempt([&] { return -prism(src, y); }, "prism");
  }
  return best;
}

FlatBracket flat_bracket(const Chain& a) {
  FlatBracket br;
  auto lo = flat_lower_detail(a);
  auto up = flat_upper_bound(a);
  br.lower = lo.value;
  br.lower_method = lo.method;
  br.upper = up.value;
  br.upper_strategy = up.strategy;
  br.witness = std::move(up.witness);
  if (br.lower > br.upper) {
    // the transport optimum is the upper bound's own witness; any excess is rounding
    if (br.lower - br.upper > 1e-9 * std::max(1.0, br.upper))
      throw InvariantViolation("flat lower bound " + std::to_string(br.lower) + " exceeds upper bound " +
                               std::to_string(br.upper));
    br.lower = br.upper;
  }
  br.exact = a.is_zero() || lo.method == "transport" || br.upper - br.lower <= 1e-12 * std::max(1.0, br.upper);
  return br;
}

double flat_exact_zero_chain(const ZeroChain& a) {
  const auto kind = a.group().kind();
  if (kind != GroupKind::Reals && kind != GroupKind::Integers && kind != GroupKind::IntegersModP)
    throw Unsupported("exact 0-chain flat norm needs coefficients in R, Z or Z/p, got " + a.group().label());
  if (a.atoms().size() > kMaxExactAtoms)
    throw Unsupported("exact 0-chain flat norm supports at most " + std::to_string(kMaxExactAtoms) + " atoms");
  if (a.is_zero()) return 0.0;
  Chain c = a.to_chain();
  Chain w = kind == GroupKind::IntegersModP ? enumeration_witness(a) : transport_witness(a);
  return evaluate(c, std::move(w), "exact").value;
}

FlatBracket flat_distance(const Chain& a, const Chain& b) {
  if (!(a.group() == b.group())) throw DescriptorMismatch("chains over " + a.group().label() + " and " + b.group().label());
  if (a.dim() != b.dim() || a.ambient() != b.ambient()) throw DimensionMismatch("chains of different dimensions");
  return flat_bracket(subtract_chains(a, b));
}

}  // namespace flatchain
