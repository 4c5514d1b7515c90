#include "flatchain/slicing.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "flatchain/errors.hpp"
#include "flatchain/polytope.hpp"
#include "flatchain/zerochain.hpp"

namespace flatchain {

OrientedAffinePlane::OrientedAffinePlane(Point base, std::vector<linalg::Vector> directions)
    : base_(std::move(base)), directions_(std::move(directions)) {
  for (const auto& d : directions_)
    if (d.size() != base_.size()) throw DimensionMismatch("plane direction of wrong dimension");
  if (linalg::rank(directions_) != directions_.size()) throw InputError("plane directions are linearly dependent");
  normals_ = linalg::nullspace(directions_, base_.size());
}

bool OrientedAffinePlane::contains(const Point& x) const {
  auto d = linalg::sub(x, base_);
  return std::all_of(normals_.begin(), normals_.end(), [&](const auto& n) { return sgn(linalg::dot(n, d)) == 0; });
}

CoordinateProjection::CoordinateProjection(std::size_t ambient, std::vector<std::size_t> indices)
    : ambient_(ambient), indices_(std::move(indices)) {
  for (std::size_t i = 0; i < indices_.size(); ++i) {
    if (indices_[i] >= ambient_) throw InputError("projection axis out of range");
    if (i > 0 && indices_[i] <= indices_[i - 1]) throw InputError("projection axes must be strictly increasing");
  }
}

std::vector<std::size_t> CoordinateProjection::complement() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < ambient_; ++i)
    if (!std::binary_search(indices_.begin(), indices_.end(), i)) out.push_back(i);
  return out;
}

Point CoordinateProjection::project(const Point& x) const {
  Point out;
  for (auto i : indices_) out.push_back(x[i]);
  return out;
}

OrientedAffinePlane CoordinateProjection::fiber(const Point& x) const {
  if (x.size() != indices_.size()) throw DimensionMismatch("fiber point must have dim L coordinates");
  Point base(ambient_, Rational(0));
  for (std::size_t i = 0; i < indices_.size(); ++i) base[indices_[i]] = x[i];
  auto rest = complement();
  std::vector<std::size_t> order = indices_;
  order.insert(order.end(), rest.begin(), rest.end());
  int parity = 1;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (std::size_t j = i + 1; j < order.size(); ++j)
      if (order[i] > order[j]) parity = -parity;
  std::vector<linalg::Vector> dirs;
  for (auto j : rest) {
    linalg::Vector e(ambient_, Rational(0));
    e[j] = 1;
    dirs.push_back(std::move(e));
  }
  if (parity < 0 && !dirs.empty())
    for (auto& c : dirs.front()) c = -c;
  return OrientedAffinePlane(std::move(base), std::move(dirs));
}

namespace {

std::vector<polytope::Constraint> plane_constraints(const std::vector<Point>& verts, const OrientedAffinePlane& p) {
  std::vector<polytope::Constraint> cons;
  for (const auto& n : p.normals()) {
    linalg::Vector c(verts.size());
    for (std::size_t i = 0; i < verts.size(); ++i) c[i] = linalg::dot(n, verts[i]);
    cons.push_back({std::move(c), linalg::dot(n, p.base()), polytope::Relation::Equal});
  }
  return cons;
}

int sign_of(const Rational& r) { return sgn(r) > 0 ? 1 : (sgn(r) < 0 ? -1 : 0); }

// Greedily extends `basis` with vectors from `candidates` until it spans
// their span; returns only the added vectors.
std::vector<linalg::Vector> complete_basis(const std::vector<linalg::Vector>& basis,
                                           const std::vector<linalg::Vector>& candidates) {
  std::vector<linalg::Vector> rows = basis;
  std::vector<linalg::Vector> added;
  for (const auto& c : candidates) {
    rows.push_back(c);
    if (linalg::rank(rows) == rows.size())
      added.push_back(c);
    else
      rows.pop_back();
  }
  return added;
}

// Orientation of the ordered vectors relative to the oriented basis `frame`
// of the same subspace.
int relative_orientation(const std::vector<linalg::Vector>& vectors, const std::vector<linalg::Vector>& frame) {
  if (vectors.empty()) return 1;
  linalg::Matrix m;
  for (const auto& v : vectors) {
    auto c = linalg::coordinates(frame, v);
    if (!c) throw InvariantViolation("vector outside the expected subspace");
    m.push_back(std::move(*c));
  }
  return sign_of(linalg::determinant(std::move(m)));
}

// +1 when `w` is the correctly oriented basis of L cap M.
int intersection_orientation(std::size_t ambient, const std::vector<linalg::Vector>& l_frame,
                             const std::vector<linalg::Vector>& m_frame, const std::vector<linalg::Vector>& w) {
  auto u = complete_basis(w, l_frame);
  auto v = complete_basis(w, m_frame);
  std::vector<linalg::Vector> uw = u;
  uw.insert(uw.end(), w.begin(), w.end());
  std::vector<linalg::Vector> vw = v;
  vw.insert(vw.end(), w.begin(), w.end());
  std::vector<linalg::Vector> vuw = v;
  vuw.insert(vuw.end(), u.begin(), u.end());
  vuw.insert(vuw.end(), w.begin(), w.end());
  if (vuw.size() != ambient) throw TransversalityError("cell and plane do not span R^N");
  return relative_orientation(uw, l_frame) * relative_orientation(vw, m_frame) * sign_of(linalg::determinant(vuw));
}

std::vector<linalg::Vector> edges_of(const std::vector<Point>& verts) {
  std::vector<linalg::Vector> e;
  for (std::size_t i = 1; i < verts.size(); ++i) e.push_back(linalg::sub(verts[i], verts[0]));
  return e;
}

}  // namespace

bool is_transverse(const Simplex& s, const OrientedAffinePlane& p) {
  if (s.ambient() != p.ambient()) throw DimensionMismatch("simplex and plane in different spaces");
  const auto& verts = s.vertices();
  const long n = static_cast<long>(p.ambient());
  const long m = static_cast<long>(p.dim());
  if (m == n) return true;
  const std::size_t count = verts.size();
  for (unsigned long mask = 1; mask < (1UL << count); ++mask) {
    std::vector<Point> face;
    for (std::size_t i = 0; i < count; ++i)
      if (mask & (1UL << i)) face.push_back(verts[i]);
    const long j = static_cast<long>(face.size()) - 1;
    auto poly = polytope::cut(face.size(), plane_constraints(face, p), false);
    if (poly.dimension >= 0 && poly.dimension > j + m - n) return false;
  }
  return true;
}

bool is_transverse(const Chain& a, const OrientedAffinePlane& p) {
  return std::all_of(a.terms().begin(), a.terms().end(), [&](const Term& t) { return is_transverse(t.simplex, p); });
}

Chain slice_by_plane(const Chain& a, const OrientedAffinePlane& p) {
  if (a.ambient() != p.ambient()) throw DimensionMismatch("chain and plane in different spaces");
  const long k = static_cast<long>(a.dim());
  const long c = k + static_cast<long>(p.dim()) - static_cast<long>(p.ambient());
  if (c < 0) throw InputError("slice dimension k + m - N is negative");
  std::vector<Term> pieces;
  for (std::size_t ti = 0; ti < a.terms().size(); ++ti) {
    const auto& t = a.terms()[ti];
    if (!is_transverse(t.simplex, p))
      throw TransversalityError("term " + std::to_string(ti) + " is not transverse to the slicing plane");
    const auto& verts = t.simplex.vertices();
    auto poly = polytope::cut(verts.size(), plane_constraints(verts, p), true);
    if (poly.dimension < 0) continue;
    if (poly.dimension != c) throw TransversalityError("slice of term " + std::to_string(ti) + " has wrong dimension");
    const auto l_frame = edges_of(verts);
    std::vector<linalg::Vector> m_frame = p.directions();
    std::vector<std::vector<Point>> cells;
    for (const auto& idx : poly.simplices) {
      std::vector<Point> pts;
      for (auto i : idx) pts.push_back(polytope::to_ambient(verts, poly.vertices[i]));
      cells.push_back(std::move(pts));
    }
    const auto w = edges_of(cells.front());
    int base_sign = intersection_orientation(p.ambient(), l_frame, m_frame, w);
    for (auto& cell : cells) {
      int s = base_sign * relative_orientation(edges_of(cell), w);
      pieces.push_back({s > 0 ? t.coeff : -t.coeff, Simplex(std::move(cell))});
    }
  }
  return Chain::from_terms(a.group(), a.ambient(), static_cast<std::size_t>(c), std::move(pieces), nullptr,
                           OverlapCheck::Trusted);
}

Chain slice_fiber(const Chain& a, const CoordinateProjection& proj, const Point& x) {
  if (proj.ambient() != a.ambient()) throw DimensionMismatch("projection and chain in different spaces");
  if (proj.dim() > a.dim()) throw InputError("fiber slice needs dim L <= dim A");
  return slice_by_plane(a, proj.fiber(x));
}

SliceMassProfile slice_mass_profile(const Chain& a, const CoordinateProjection& proj, std::size_t samples_per_axis) {
  if (proj.dim() != a.dim()) throw InputError("slice mass profile needs dim A = dim L");
  if (samples_per_axis == 0) throw InputError("need at least one sample per axis");
  SliceMassProfile out;
  out.chain_mass = mass(a);
  auto box = bounding_box(a);
  const std::size_t k = proj.dim();
  if (!box) {
    out.margin = out.chain_mass;
    return out;
  }
  Point lo = proj.project(box->first), hi = proj.project(box->second);
  std::vector<Rational> h(k);
  for (std::size_t i = 0; i < k; ++i) {
    h[i] = (hi[i] - lo[i]) / Rational(static_cast<long>(samples_per_axis));
    out.resolution.push_back(to_double(h[i]));
  }
  bool flat_box = std::any_of(h.begin(), h.end(), [](const Rational& r) { return sgn(r) == 0; });
  if (flat_box) {
    out.margin = out.chain_mass;
    return out;
  }
  double cell = 1.0;
  for (const auto& r : h) cell *= to_double(r);
  ExactSum total;
  std::vector<std::size_t> counter(k, 0);
  const Rational half(1, 2);
  const std::vector<Rational> jitters = {Rational(0), make_rational(1, 1009), make_rational(-1, 2003),
                                         make_rational(1, 4001)};
  while (true) {
    bool done = false;
    for (const auto& j : jitters) {
      Point x(k);
      for (std::size_t i = 0; i < k; ++i) x[i] = lo[i] + (Rational(static_cast<long>(counter[i])) + half + j) * h[i];
      try {
        Chain s = slice_fiber(a, proj, x);
        SliceSample rec{x, mass(s), s.terms().size()};
        total.add(rec.slice_mass * cell);
        out.samples.push_back(std::move(rec));
        done = true;
        break;
      } catch (const TransversalityError&) {
      }
    }
    if (!done) ++out.skipped;
    std::size_t axis = 0;
    while (axis < k && ++counter[axis] == samples_per_axis) counter[axis++] = 0;
    if (axis == k) break;
  }
  out.integral = total.value();
  out.margin = out.chain_mass - out.integral;
  return out;
}

GridSpec random_grid(const Rational& eps, std::size_t ambient, std::mt19937_64& rng) {
  if (sgn(eps) <= 0) throw InputError("grid side must be positive");
  const long resolution = 1L << 30;
  std::uniform_int_distribution<long> pick(1, resolution - 1);
  GridSpec g{eps, Point(ambient)};
  for (auto& z : g.offset) z = (make_rational(pick(rng), resolution) - Rational(1, 2)) * eps;
  return g;
}

std::vector<std::vector<std::size_t>> coordinate_subsets(std::size_t n, std::size_t size) {
  std::vector<std::vector<std::size_t>> out;
  if (size > n) return out;
  std::vector<std::size_t> idx(size);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    out.push_back(idx);
    std::size_t i = size;
    while (i > 0 && idx[i - 1] == n - size + i - 1) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < size; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

Chain grid_cube(const GroupElement& g, const Point& corner, const Rational& eps, const std::vector<std::size_t>& axes) {
  const std::size_t n = corner.size();
  std::vector<std::size_t> perm(axes.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<Term> terms;
  do {
    std::vector<Point> verts{corner};
    for (auto p : perm) {
      Point next = verts.back();
      next[axes[p]] += eps;
      verts.push_back(std::move(next));
    }
    int parity = 1;
    for (std::size_t i = 0; i < perm.size(); ++i)
      for (std::size_t j = i + 1; j < perm.size(); ++j)
        if (perm[i] > perm[j]) parity = -parity;
    terms.push_back({parity > 0 ? g : -g, Simplex(std::move(verts))});
  } while (std::next_permutation(perm.begin(), perm.end()));
  return Chain::from_terms(g.descriptor(), n, axes.size(), std::move(terms), nullptr, OverlapCheck::Trusted);
}

Chain deformation_sample(const Chain& a, const GridSpec& grid) {
  if (sgn(grid.eps) <= 0) throw InputError("grid side must be positive");
  if (grid.offset.size() != a.ambient()) throw DimensionMismatch("grid offset of wrong dimension");
  const std::size_t n = a.ambient(), k = a.dim();
  Chain moved = translate(a, grid.offset);
  auto box = bounding_box(moved);
  if (!box) return Chain(a.group(), n, k);
  const Rational half(1, 2);
  auto ceil_q = [](const Rational& q) {
    Integer r;
    mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
  };
  auto floor_q = [](const Rational& q) {
    Integer r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
  };
  std::vector<Term> terms;
  for (const auto& axes : coordinate_subsets(n, k)) {
    CoordinateProjection proj(n, axes);
    const auto dual = proj.complement();
    // lattice cubes Q = eps * (c + [0,1]^axes); the dual plane sits at the
    // center (c_i + 1/2) eps along each axis
    std::vector<Integer> first(k), last(k);
    for (std::size_t i = 0; i < k; ++i) {
      first[i] = ceil_q(box->first[axes[i]] / grid.eps - half);
      last[i] = floor_q(box->second[axes[i]] / grid.eps - half);
    }
    if (std::any_of(first.begin(), first.end(), [&, i = std::size_t{0}](const Integer& f) mutable { return f > last[i++]; }))
      continue;
    std::map<std::vector<Integer>, GroupElement> weights;
    std::vector<Integer> c = first;
    while (true) {
      Point center(k);
      for (std::size_t i = 0; i < k; ++i) center[i] = (Rational(c[i]) + half) * grid.eps;
      auto plane = proj.fiber(center);
      if ((k * (n - k)) % 2 == 1) {
        auto dirs = plane.directions();
        for (auto& x : dirs.front()) x = -x;
        plane = OrientedAffinePlane(plane.base(), std::move(dirs));
      }
      Chain s = slice_by_plane(moved, plane);
      for (const auto& t : s.terms()) {
        const auto& y = t.simplex.vertices().front();
        std::vector<Integer> cell(n);
        for (std::size_t i = 0; i < k; ++i) cell[axes[i]] = c[i];
        // dual cube coordinates in (c eps - eps/2, c eps + eps/2]
        for (auto j : dual) cell[j] = ceil_q(y[j] / grid.eps - half);
        auto it = weights.find(cell);
        if (it == weights.end())
          weights.emplace(std::move(cell), t.coeff);
        else
          it->second += t.coeff;
      }
      std::size_t axis = 0;
      while (axis < k && c[axis] == last[axis]) {
        c[axis] = first[axis];
        ++axis;
      }
      if (axis == k) break;
      ++c[axis];
    }
    for (const auto& [cell, g] : weights) {
      if (g.is_zero()) continue;
      Point corner(n);
      for (std::size_t i = 0; i < n; ++i) corner[i] = Rational(cell[i]) * grid.eps;
      auto cube = grid_cube(g, corner, grid.eps, axes);
      terms.insert(terms.end(), cube.terms().begin(), cube.terms().end());
    }
  }
  return Chain::from_terms(a.group(), n, k, std::move(terms), nullptr, OverlapCheck::Trusted);
}

}  // namespace flatchain
