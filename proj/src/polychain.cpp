#include "flatchain/polychain.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "flatchain/errors.hpp"
#include "flatchain/polytope.hpp"

namespace flatchain {

// ------------------------------------------------------------------ Simplex

Simplex::Simplex(std::vector<Point> vertices) : vertices_(std::move(vertices)) {
  if (vertices_.empty()) throw InputError("simplex needs at least one vertex");
  for (const auto& v : vertices_)
    if (v.size() != vertices_.front().size()) throw DimensionMismatch("simplex vertices of different dimension");
}

std::vector<linalg::Vector> Simplex::edge_vectors() const {
  std::vector<linalg::Vector> e;
  for (std::size_t i = 1; i < vertices_.size(); ++i) e.push_back(linalg::sub(vertices_[i], vertices_[0]));
  return e;
}

Rational Simplex::gram_determinant() const {
  auto e = edge_vectors();
  if (e.empty()) return 1;
  linalg::Matrix g(e.size(), linalg::Vector(e.size()));
  for (std::size_t i = 0; i < e.size(); ++i)
    for (std::size_t j = i; j < e.size(); ++j) g[i][j] = g[j][i] = linalg::dot(e[i], e[j]);
  return linalg::determinant(std::move(g));
}

bool Simplex::is_degenerate() const {
  if (dim() > ambient()) return true;
  return linalg::rank(edge_vectors()) != dim();
}

double Simplex::volume() const {
  double factorial = 1.0;
  for (std::size_t i = 2; i <= dim(); ++i) factorial *= static_cast<double>(i);
  return std::sqrt(to_double(gram_determinant())) / factorial;
}

int sort_with_parity(std::vector<Point>& v) {
  // insertion sort counting transpositions; vertex lists are short
  int sign = 1;
  for (std::size_t i = 1; i < v.size(); ++i)
    for (std::size_t j = i; j > 0 && v[j] < v[j - 1]; --j) {
      std::swap(v[j], v[j - 1]);
      sign = -sign;
    }
  return sign;
}

// -------------------------------------------------------------------- Chain

namespace {

struct IndexedTerm {
  GroupElement coeff;
  std::vector<Point> vertices;
  std::size_t origin;
};

// Rewrites the segments of each line as the coarsest partition on which
// the summed coefficient is constant; zero stretches disappear.
std::vector<IndexedTerm> resolve_segment_overlaps(std::vector<IndexedTerm> terms) {
  struct LineKey {
    Point dir;
    Point base;
    bool operator<(const LineKey& o) const { return std::tie(dir, base) < std::tie(o.dir, o.base); }
  };
  std::map<LineKey, std::vector<std::size_t>> lines;
  std::vector<std::size_t> param_axis(terms.size());
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const auto& v0 = terms[i].vertices[0];
    const auto& v1 = terms[i].vertices[1];
    Point d = linalg::sub(v1, v0);
    std::size_t j = 0;
    while (sgn(d[j]) == 0) ++j;
    Rational lead = d[j];
    for (auto& c : d) c /= lead;
    Point base(v0.size());
    Rational t0 = v0[j];
    for (std::size_t c = 0; c < v0.size(); ++c) base[c] = v0[c] - t0 * d[c];
    param_axis[i] = j;
    lines[{std::move(d), std::move(base)}].push_back(i);
  }
  std::vector<IndexedTerm> out;
  for (auto& [key, members] : lines) {
    if (members.size() == 1) {
      out.push_back(std::move(terms[members.front()]));
      continue;
    }
    const std::size_t axis = param_axis[members.front()];
    std::vector<Rational> breaks;
    for (auto i : members) {
      breaks.push_back(terms[i].vertices[0][axis]);
      breaks.push_back(terms[i].vertices[1][axis]);
    }
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
    auto point_at = [&](const Rational& t) {
      Point p(key.base.size());
      for (std::size_t c = 0; c < p.size(); ++c) p[c] = key.base[c] + t * key.dir[c];
      return p;
    };
    const auto& group = terms[members.front()].coeff.descriptor();
    std::vector<GroupElement> level(breaks.size() - 1, GroupElement::zero(group));
    std::vector<std::size_t> origin(breaks.size() - 1, terms[members.front()].origin);
    for (auto i : members) {
      auto first = std::lower_bound(breaks.begin(), breaks.end(), terms[i].vertices[0][axis]) - breaks.begin();
      auto last = std::lower_bound(breaks.begin(), breaks.end(), terms[i].vertices[1][axis]) - breaks.begin();
      for (auto s = first; s < last; ++s) {
        level[s] += terms[i].coeff;
        origin[s] = std::min(origin[s], terms[i].origin);
      }
    }
    std::size_t s = 0;
    while (s < level.size()) {
      if (level[s].is_zero()) {
        ++s;
        continue;
      }
      std::size_t e = s + 1;
      while (e < level.size() && level[e] == level[s]) ++e;
      out.push_back({level[s], {point_at(breaks[s]), point_at(breaks[e])}, origin[s]});
      s = e;
    }
  }
  return out;
}

bool boxes_separated(const std::vector<Point>& a, const std::vector<Point>& b) {
  const std::size_t n = a.front().size();
  for (std::size_t c = 0; c < n; ++c) {
    Rational amin = a[0][c], amax = a[0][c], bmin = b[0][c], bmax = b[0][c];
    for (const auto& v : a) {
      if (v[c] < amin) amin = v[c];
      if (v[c] > amax) amax = v[c];
    }
    for (const auto& v : b) {
      if (v[c] < bmin) bmin = v[c];
      if (v[c] > bmax) bmax = v[c];
    }
    if (amax < bmin || bmax < amin) return true;
  }
  return false;
}

// True when two nondegenerate k-simplices share interior points of their
// common k-flat.
bool interiors_overlap(const std::vector<Point>& a, const std::vector<Point>& b) {
  const std::size_t k = a.size() - 1;
  std::vector<linalg::Vector> edges;
  for (std::size_t i = 1; i < a.size(); ++i) edges.push_back(linalg::sub(a[i], a[0]));
  for (const auto& v : b) {
    auto rows = edges;
    rows.push_back(linalg::sub(v, a[0]));
    if (linalg::rank(rows) != k) return false;
  }
  // barycentric coordinates of a's vertices with respect to b
  const std::size_t n = a.front().size();
  std::vector<linalg::Vector> mu;  // mu[i][j]: coordinate j of vertex a_i
  for (const auto& v : a) {
    linalg::Matrix m(n + 1, linalg::Vector(b.size()));
    linalg::Vector rhs(n + 1);
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t j = 0; j < b.size(); ++j) m[r][j] = b[j][r];
      rhs[r] = v[r];
    }
    for (std::size_t j = 0; j < b.size(); ++j) m[n][j] = 1;
    rhs[n] = 1;
    auto sol = linalg::solve_unique(std::move(m), std::move(rhs));
    if (!sol) throw InvariantViolation("barycentric solve failed in overlap test");
    mu.push_back(std::move(*sol));
  }
  std::vector<polytope::Constraint> cons;
  for (std::size_t j = 0; j < b.size(); ++j) {
    linalg::Vector c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = -mu[i][j];
    cons.push_back({std::move(c), 0, polytope::Relation::LessEqual});
  }
  return polytope::cut(a.size(), cons, false).dimension == static_cast<int>(k);
}

// Affine functions on R^N restricting to the barycentric coordinates of s
// on its affine hull: lambda_i(x) = a_i . x + b_i.
std::vector<std::pair<linalg::Vector, Rational>> barycentric_functions(const std::vector<Point>& s) {
  const std::size_t k = s.size() - 1, n = s.front().size();
  std::vector<linalg::Vector> e;
  for (std::size_t i = 1; i <= k; ++i) e.push_back(linalg::sub(s[i], s[0]));
  linalg::Matrix gram(k, linalg::Vector(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) gram[i][j] = linalg::dot(e[i], e[j]);
  // mu(x) = gram^{-1} E (x - s0); solve one column of E at a time
  linalg::Matrix rows(k, linalg::Vector(n));
  for (std::size_t c = 0; c < n; ++c) {
    linalg::Vector col(k);
    for (std::size_t i = 0; i < k; ++i) col[i] = e[i][c];
    auto sol = linalg::solve_unique(gram, col);
    if (!sol) throw InvariantViolation("singular Gram matrix in barycentric coordinates");
    for (std::size_t i = 0; i < k; ++i) rows[i][c] = (*sol)[i];
  }
  std::vector<std::pair<linalg::Vector, Rational>> out;
  linalg::Vector a0(n, Rational(0));
  Rational b0 = 1;
  for (std::size_t i = 0; i < k; ++i) {
    Rational b = -linalg::dot(rows[i], s[0]);
    for (std::size_t c = 0; c < n; ++c) a0[c] -= rows[i][c];
    b0 -= b;
    out.push_back({rows[i], b});
  }
  out.insert(out.begin(), {a0, b0});
  return out;
}


// Full-dimensional pieces of s cut by barycentric constraints, triangulated
// and oriented like s.
std::vector<std::vector<Point>> clip_lambda(const std::vector<Point>& s, const std::vector<polytope::Constraint>& cons) {
  const std::size_t k = s.size() - 1;
  auto poly = polytope::cut(s.size(), cons, true);
  std::vector<std::vector<Point>> out;
  if (poly.dimension != static_cast<int>(k)) return out;
  for (auto idx : poly.simplices) {
    if (k >= 1) {
      linalg::Matrix m(k, linalg::Vector(k));
      for (std::size_t r = 0; r < k; ++r)
        for (std::size_t c = 0; c < k; ++c) m[r][c] = poly.vertices[idx[r + 1]][c + 1] - poly.vertices[idx[0]][c + 1];
      if (sgn(linalg::determinant(std::move(m))) < 0) std::swap(idx[0], idx[1]);
    }
    std::vector<Point> pts;
    for (auto i : idx) pts.push_back(polytope::to_ambient(s, poly.vertices[i]));
    out.push_back(std::move(pts));
  }
  return out;
}

// +1 when the two simplices of a common k-flat induce the same orientation.
int same_orientation(const std::vector<Point>& a, const std::vector<Point>& b) {
  std::vector<linalg::Vector> ea, eb;
  for (std::size_t i = 1; i < a.size(); ++i) {
    ea.push_back(linalg::sub(a[i], a[0]));
    eb.push_back(linalg::sub(b[i], b[0]));
  }
  linalg::Matrix m;
  for (const auto& v : eb) {
    auto c = linalg::coordinates(ea, v);
    if (!c) throw InvariantViolation("simplices do not share an affine hull");
    m.push_back(std::move(*c));
  }
  return sgn(linalg::determinant(std::move(m))) > 0 ? 1 : -1;
}

// Common refinement of possibly overlapping k-simplices (k >= 2). Each
// simplex is split by the facet hyperplanes of the simplices overlapping
// it; every resulting cell is owned by the lowest-index simplex containing
// it and carries the oriented sum of the coefficients of all simplices
// containing an interior point.
std::vector<IndexedTerm> overlay(std::vector<IndexedTerm> terms) {
  const std::size_t count = terms.size();
  if (count < 2) return terms;
  const std::size_t k = terms.front().vertices.size() - 1;
  std::vector<std::vector<std::size_t>> partners(count);
  bool any = false;
  for (std::size_t i = 0; i < count; ++i)
    for (std::size_t j = i + 1; j < count; ++j)
      if (!boxes_separated(terms[i].vertices, terms[j].vertices) && interiors_overlap(terms[i].vertices, terms[j].vertices)) {
        partners[i].push_back(j);
        partners[j].push_back(i);
        any = true;
      }
  if (!any) return terms;
  std::vector<std::vector<std::pair<linalg::Vector, Rational>>> lam(count);
  for (std::size_t i = 0; i < count; ++i)
    if (!partners[i].empty()) lam[i] = barycentric_functions(terms[i].vertices);

  struct Cell {
    std::vector<polytope::Constraint> cons;
    std::vector<linalg::Vector> verts;  // barycentric on the host
  };
  auto facet_rank_ok = [&](const Cell& c, const polytope::Constraint& con) {
    std::vector<linalg::Vector> tight;
    for (const auto& v : c.verts)
      if (linalg::dot(con.coeffs, v) == con.rhs) tight.push_back(v);
    return linalg::affine_dimension(tight) == static_cast<int>(k) - 1;
  };
  auto make_cell = [&](std::size_t host_size, std::vector<polytope::Constraint> cons) {
    Cell c;
    auto poly = polytope::cut(host_size, cons, false);
    c.verts = std::move(poly.vertices);
    for (auto& con : cons)
      if (facet_rank_ok(c, con)) c.cons.push_back(std::move(con));
    return c;
  };

  std::vector<IndexedTerm> out;
  for (std::size_t i = 0; i < count; ++i) {
    if (partners[i].empty()) {
      out.push_back(std::move(terms[i]));
      continue;
    }
    const auto& host = terms[i].vertices;
    std::set<linalg::Vector> planes;
    for (auto j : partners[i])
      for (const auto& [a, b] : lam[j]) {
        // restriction of the affine function to the host, as values at its vertices
        linalg::Vector vals(host.size());
        for (std::size_t m = 0; m < host.size(); ++m) vals[m] = linalg::dot(a, host[m]) + b;
        Rational lead = 0;
        for (const auto& v : vals)
          if (sgn(v) != 0) {
            lead = abs(v);
            break;
          }
        if (sgn(lead) == 0) continue;
        for (auto& v : vals) v /= lead;
        planes.insert(std::move(vals));
      }
    auto owner_coeff = [&](const Point& p, GroupElement& coeff) {
      for (auto j : partners[i]) {
        bool inside = std::all_of(lam[j].begin(), lam[j].end(),
                                  [&](const auto& f) { return sgn(linalg::dot(f.first, p) + f.second) > 0; });
        if (!inside) continue;
        if (j < i) return false;
        coeff = same_orientation(host, terms[j].vertices) > 0 ? coeff + terms[j].coeff : coeff - terms[j].coeff;
      }
      return true;
    };
    if (k == 2) {
      // convex polygons in barycentric coordinates, counterclockwise in
      // (lambda_1, lambda_2), which is the host orientation
      using Polygon = std::vector<linalg::Vector>;
      std::vector<Polygon> polys{{{Rational(1), Rational(0), Rational(0)},
                                  {Rational(0), Rational(1), Rational(0)},
                                  {Rational(0), Rational(0), Rational(1)}}};
      auto clip = [](const Polygon& poly, const std::vector<Rational>& f, int side) {
        Polygon out;
        const std::size_t n = poly.size();
        for (std::size_t a = 0; a < n; ++a) {
          const std::size_t b = (a + 1) % n;
          const int sa = sgn(f[a]) * side, sb = sgn(f[b]) * side;
          if (sa <= 0) out.push_back(poly[a]);
          if ((sa < 0 && sb > 0) || (sa > 0 && sb < 0)) {
            Rational t = f[a] / (f[a] - f[b]);
            linalg::Vector v(poly[a].size());
            for (std::size_t m = 0; m < v.size(); ++m) v[m] = poly[a][m] + t * (poly[b][m] - poly[a][m]);
            out.push_back(std::move(v));
          }
        }
        return out;
      };
      for (const auto& vals : planes) {
        std::vector<Polygon> next;
        for (auto& poly : polys) {
          std::vector<Rational> f(poly.size());
          bool pos = false, neg = false;
          for (std::size_t a = 0; a < poly.size(); ++a) {
            f[a] = linalg::dot(vals, poly[a]);
            pos = pos || sgn(f[a]) > 0;
            neg = neg || sgn(f[a]) < 0;
          }
          if (!(pos && neg)) {
            next.push_back(std::move(poly));
            continue;
          }
          next.push_back(clip(poly, f, 1));
          next.push_back(clip(poly, f, -1));
        }
        polys = std::move(next);
      }
      for (const auto& poly : polys) {
        linalg::Vector mid(host.size(), Rational(0));
        for (const auto& v : poly)
          for (std::size_t m = 0; m < mid.size(); ++m) mid[m] += v[m];
        for (auto& x : mid) x /= Rational(static_cast<long>(poly.size()));
        GroupElement coeff = terms[i].coeff;
        if (!owner_coeff(polytope::to_ambient(host, mid), coeff) || coeff.is_zero()) continue;
        for (std::size_t a = 1; a + 1 < poly.size(); ++a) {
          std::vector<Point> cell{polytope::to_ambient(host, poly[0]), polytope::to_ambient(host, poly[a]),
                                  polytope::to_ambient(host, poly[a + 1])};
          int parity = sort_with_parity(cell);
          out.push_back({parity > 0 ? coeff : -coeff, std::move(cell), terms[i].origin});
        }
      }
      continue;
    }
    Cell whole;
    for (std::size_t m = 0; m < host.size(); ++m) {
      linalg::Vector e(host.size(), Rational(0));
      e[m] = 1;
      whole.verts.push_back(std::move(e));
    }
    std::vector<Cell> cells{std::move(whole)};
    for (const auto& vals : planes) {
      std::vector<Cell> next;
      for (auto& c : cells) {
        bool pos = false, neg = false;
        for (const auto& v : c.verts) {
          int sg = sgn(linalg::dot(vals, v));
          pos = pos || sg > 0;
          neg = neg || sg < 0;
        }
        if (!(pos && neg)) {
          next.push_back(std::move(c));
          continue;
        }
        linalg::Vector neg_vals = vals;
        for (auto& x : neg_vals) x = -x;
        auto below = c.cons;
        below.push_back({vals, 0, polytope::Relation::LessEqual});
        auto above = std::move(c.cons);
        above.push_back({std::move(neg_vals), 0, polytope::Relation::LessEqual});
        next.push_back(make_cell(host.size(), std::move(below)));
        next.push_back(make_cell(host.size(), std::move(above)));
      }
      cells = std::move(next);
    }
    for (const auto& c : cells) {
      linalg::Vector mid(host.size(), Rational(0));
      for (const auto& v : c.verts)
        for (std::size_t m = 0; m < mid.size(); ++m) mid[m] += v[m];
      for (auto& x : mid) x /= Rational(static_cast<long>(c.verts.size()));
      GroupElement coeff = terms[i].coeff;
      if (!owner_coeff(polytope::to_ambient(host, mid), coeff) || coeff.is_zero()) continue;
      for (auto& cell : clip_lambda(host, c.cons)) {
        int parity = sort_with_parity(cell);
        out.push_back({parity > 0 ? coeff : -coeff, std::move(cell), terms[i].origin});
      }
    }
  }
  return out;
}

}  // namespace

Chain::Chain(GroupDescriptor group, std::size_t ambient, std::size_t dim)
    : group_(std::move(group)), ambient_(ambient), dim_(dim) {
  if (dim > ambient) throw DimensionMismatch("chain dimension exceeds ambient dimension");
}

Chain Chain::from_terms(GroupDescriptor group, std::size_t ambient, std::size_t dim, std::vector<Term> terms,
                        std::vector<std::string>* warnings, OverlapCheck check) {
  Chain out(std::move(group), ambient, dim);
  std::vector<IndexedTerm> work;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    auto& t = terms[i];
    if (!(t.coeff.descriptor() == out.group_))
      throw DescriptorMismatch("term " + std::to_string(i) + " has coefficient in " + t.coeff.descriptor().label() +
                               ", chain group is " + out.group_.label());
    if (t.simplex.vertices().size() != dim + 1)
      throw DimensionMismatch("term " + std::to_string(i) + " has " + std::to_string(t.simplex.vertices().size()) +
                              " vertices, expected " + std::to_string(dim + 1));
    if (t.simplex.ambient() != ambient)
      throw DimensionMismatch("term " + std::to_string(i) + " lives in R^" + std::to_string(t.simplex.ambient()) +
                              ", expected R^" + std::to_string(ambient));
    if (t.coeff.is_zero()) {
      if (warnings) warnings->push_back("term " + std::to_string(i) + " has zero coefficient; dropped");
      continue;
    }
    if (t.simplex.is_degenerate()) {
      if (warnings) warnings->push_back("term " + std::to_string(i) + " is a degenerate simplex; dropped");
      continue;
    }
    std::vector<Point> verts = t.simplex.vertices();
    int parity = sort_with_parity(verts);
    work.push_back({parity > 0 ? t.coeff : -t.coeff, std::move(verts), i});
  }
  if (dim == 1) work = resolve_segment_overlaps(std::move(work));
  if (dim >= 2 && check == OverlapCheck::Resolve) work = overlay(std::move(work));

  std::map<std::vector<Point>, std::pair<GroupElement, std::size_t>> merged;
  for (auto& t : work) {
    auto it = merged.find(t.vertices);
    if (it == merged.end())
      merged.emplace(std::move(t.vertices), std::make_pair(t.coeff, t.origin));
    else
      it->second.first += t.coeff;
  }
  std::vector<std::pair<const std::vector<Point>*, std::size_t>> kept;
  for (auto& [verts, val] : merged) {
    if (val.first.is_zero()) continue;
    out.terms_.push_back({val.first, Simplex(verts)});
    kept.push_back({&verts, val.second});
  }

  if (dim >= 2 && check == OverlapCheck::Verify) {
    std::vector<std::size_t> order(kept.size());
    std::iota(order.begin(), order.end(), 0);
    auto min0 = [&](std::size_t i) {
      Rational m = (*kept[i].first)[0][0];
      for (const auto& v : *kept[i].first) m = v[0] < m ? v[0] : m;
      return m;
    };
    auto max0 = [&](std::size_t i) {
      Rational m = (*kept[i].first)[0][0];
      for (const auto& v : *kept[i].first) m = v[0] > m ? v[0] : m;
      return m;
    };
    std::vector<Rational> lo(kept.size()), hi(kept.size());
    for (std::size_t i = 0; i < kept.size(); ++i) {
      lo[i] = min0(i);
      hi[i] = max0(i);
    }
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return lo[a] < lo[b]; });
    for (std::size_t x = 0; x < order.size(); ++x) {
      for (std::size_t y = x + 1; y < order.size(); ++y) {
        const auto i = order[x], j = order[y];
        if (lo[j] > hi[i]) break;
        const auto& a = *kept[i].first;
        const auto& b = *kept[j].first;
        if (boxes_separated(a, b)) continue;
        if (interiors_overlap(a, b)) {
          auto p = std::minmax(kept[i].second, kept[j].second);
          throw InvariantViolation("terms " + std::to_string(p.first) + " and " + std::to_string(p.second) +
                                   " overlap in their interiors");
        }
      }
    }
  }
  return out;
}

Chain Chain::operator-() const {
  Chain out = *this;
  for (auto& t : out.terms_) t.coeff = -t.coeff;
  return out;
}

bool operator==(const Chain& a, const Chain& b) {
  if (!(a.group_ == b.group_) || a.ambient_ != b.ambient_ || a.dim_ != b.dim_) return false;
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (!(a.terms_[i].coeff == b.terms_[i].coeff) || !(a.terms_[i].simplex == b.terms_[i].simplex)) return false;
  return true;
}

Chain single_term(const GroupElement& g, std::vector<Point> vertices) {
  Simplex s(std::move(vertices));
  const auto n = s.ambient(), k = s.dim();
  return Chain::from_terms(g.descriptor(), n, k, {{g, std::move(s)}});
}

Chain boundary(const Chain& a) {
  if (a.dim() == 0) return Chain(a.group(), a.ambient(), 0);
  std::vector<Term> faces;
  for (const auto& t : a.terms()) {
    const auto& v = t.simplex.vertices();
    for (std::size_t i = 0; i < v.size(); ++i) {
      std::vector<Point> face;
      for (std::size_t j = 0; j < v.size(); ++j)
        if (j != i) face.push_back(v[j]);
      faces.push_back({i % 2 == 0 ? t.coeff : -t.coeff, Simplex(std::move(face))});
    }
  }
  return Chain::from_terms(a.group(), a.ambient(), a.dim() - 1, std::move(faces), nullptr, OverlapCheck::Resolve);
}

double mass(const Chain& a) {
  ExactSum total;
  for (const auto& t : a.terms()) total.add(norm(t.coeff) * t.simplex.volume());
  return total.value();
}

namespace {

void check_compatible(const Chain& a, const Chain& b) {
  if (!(a.group() == b.group()))
    throw DescriptorMismatch("chains over " + a.group().label() + " and " + b.group().label());
  if (a.dim() != b.dim() || a.ambient() != b.ambient())
    throw DimensionMismatch("chains of dimension " + std::to_string(a.dim()) + " in R^" + std::to_string(a.ambient()) +
                            " and " + std::to_string(b.dim()) + " in R^" + std::to_string(b.ambient()));
}

}  // namespace

Chain add_chains(const Chain& a, const Chain& b) {
  check_compatible(a, b);
  std::vector<Term> terms = a.terms();
  terms.insert(terms.end(), b.terms().begin(), b.terms().end());
  return Chain::from_terms(a.group(), a.ambient(), a.dim(), std::move(terms), nullptr, OverlapCheck::Resolve);
}

Chain subtract_chains(const Chain& a, const Chain& b) { return add_chains(a, -b); }

bool equivalent(const Chain& a, const Chain& b) { return a == b || subtract_chains(a, b).is_zero(); }

Chain scale_coefficients(const Chain& a, const std::function<GroupElement(const GroupElement&)>& f) {
  std::vector<Term> terms;
  for (const auto& t : a.terms()) terms.push_back({f(t.coeff), t.simplex});
  return Chain::from_terms(a.group(), a.ambient(), a.dim(), std::move(terms), nullptr, OverlapCheck::Trusted);
}

// ---------------------------------------------------------------- AffineMap

Point AffineMap::apply(const Point& x) const {
  if (x.size() != source_dim()) throw DimensionMismatch("affine map applied to a point of wrong dimension");
  Point y = offset;
  for (std::size_t r = 0; r < linear.size(); ++r) y[r] += linalg::dot(linear[r], x);
  return y;
}

AffineMap AffineMap::translation(const Point& y) {
  AffineMap f;
  f.linear.assign(y.size(), linalg::Vector(y.size(), Rational(0)));
  for (std::size_t i = 0; i < y.size(); ++i) f.linear[i][i] = 1;
  f.offset = y;
  return f;
}

AffineMap AffineMap::dilation(std::size_t ambient, const Rational& r) {
  AffineMap f;
  f.linear.assign(ambient, linalg::Vector(ambient, Rational(0)));
  for (std::size_t i = 0; i < ambient; ++i) f.linear[i][i] = r;
  f.offset.assign(ambient, Rational(0));
  return f;
}

AffineMap AffineMap::coordinate_projection(std::size_t ambient, const std::vector<std::size_t>& keep) {
  AffineMap f;
  f.linear.assign(ambient, linalg::Vector(ambient, Rational(0)));
  for (auto i : keep) {
    if (i >= ambient) throw InputError("projection index out of range");
    f.linear[i][i] = 1;
  }
  f.offset.assign(ambient, Rational(0));
  return f;
}

Chain pushforward_affine(const Chain& a, const AffineMap& f) {
  if (f.source_dim() != a.ambient() || f.offset.size() != f.target_dim())
    throw DimensionMismatch("affine map does not match the chain's ambient space");
  if (a.dim() > f.target_dim())
    throw DimensionMismatch("push-forward of a " + std::to_string(a.dim()) + "-chain into R^" +
                            std::to_string(f.target_dim()));
  std::vector<Term> terms;
  for (const auto& t : a.terms()) {
    std::vector<Point> img;
    for (const auto& v : t.simplex.vertices()) img.push_back(f.apply(v));
    terms.push_back({t.coeff, Simplex(std::move(img))});
  }
  return Chain::from_terms(a.group(), f.target_dim(), a.dim(), std::move(terms), nullptr, OverlapCheck::Resolve);
}

Chain translate(const Chain& a, const Point& y) { return pushforward_affine(a, AffineMap::translation(y)); }

// ---------------------------------------------------------------- regions

bool HalfSpace::contains(const Point& x) const {
  Rational v = linalg::dot(normal, x);
  return strict ? v < bound : v <= bound;
}

HalfSpace HalfSpace::complement() const {
  linalg::Vector n = normal;
  for (auto& c : n) c = -c;
  return {std::move(n), -bound, !strict};
}

bool ConvexRegion::contains(const Point& x) const {
  return std::all_of(constraints.begin(), constraints.end(), [&](const HalfSpace& h) { return h.contains(x); });
}

RegionSet RegionSet::box(const Point& lo, const Point& hi, bool lower_open, bool upper_open) {
  if (lo.size() != hi.size()) throw DimensionMismatch("box corners of different dimension");
  ConvexRegion r;
  for (std::size_t i = 0; i < lo.size(); ++i) {
    linalg::Vector e(lo.size(), Rational(0));
    e[i] = 1;
    r.constraints.push_back({e, hi[i], upper_open});
    e[i] = -1;
    r.constraints.push_back({e, -lo[i], lower_open});
  }
  return RegionSet({std::move(r)});
}

RegionSet RegionSet::dyadic_cube(int level, const std::vector<long>& index) {
  if (level < 0) throw InputError("negative dyadic level");
  Rational side = make_rational(Integer(1), Integer(1) << level);
  Point lo, hi;
  for (long i : index) {
    lo.push_back(Rational(i) * side);
    hi.push_back(Rational(i + 1) * side);
  }
  return box(lo, hi, true, false);
}

bool RegionSet::contains(const Point& x) const {
  return std::any_of(pieces_.begin(), pieces_.end(), [&](const ConvexRegion& r) { return r.contains(x); });
}

RegionSet RegionSet::unite(const RegionSet& other) const {
  auto pieces = pieces_;
  pieces.insert(pieces.end(), other.pieces_.begin(), other.pieces_.end());
  return RegionSet(std::move(pieces));
}

RegionSet RegionSet::intersect(const RegionSet& other) const {
  std::vector<ConvexRegion> pieces;
  for (const auto& a : pieces_)
    for (const auto& b : other.pieces_) {
      ConvexRegion r = a;
      r.constraints.insert(r.constraints.end(), b.constraints.begin(), b.constraints.end());
      pieces.push_back(std::move(r));
    }
  return RegionSet(std::move(pieces));
}

RegionSet RegionSet::complement() const {
  RegionSet result = whole();
  for (const auto& piece : pieces_) {
    std::vector<ConvexRegion> outside;
    for (const auto& h : piece.constraints) outside.push_back({{h.complement()}});
    result = result.intersect(RegionSet(std::move(outside)));
  }
  return result;
}

std::vector<ConvexRegion> RegionSet::disjoint_pieces() const {
  std::vector<ConvexRegion> out;
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    std::vector<ConvexRegion> parts{pieces_[i]};
    for (std::size_t j = 0; j < i; ++j) {
      std::vector<ConvexRegion> next;
      for (const auto& p : parts) {
        // p minus pieces_[j]: violate constraint c, satisfy all earlier ones
        const auto& cons = pieces_[j].constraints;
        for (std::size_t c = 0; c < cons.size(); ++c) {
          ConvexRegion r = p;
          for (std::size_t e = 0; e < c; ++e) r.constraints.push_back(cons[e]);
          r.constraints.push_back(cons[c].complement());
          next.push_back(std::move(r));
        }
      }
      parts = std::move(next);
    }
    out.insert(out.end(), parts.begin(), parts.end());
  }
  return out;
}

Chain restrict(const Chain& a, const RegionSet& s) {
  std::vector<Term> terms;
  if (a.dim() == 0) {
    for (const auto& t : a.terms())
      if (s.contains(t.simplex.vertices().front())) terms.push_back(t);
    return Chain::from_terms(a.group(), a.ambient(), 0, std::move(terms), nullptr, OverlapCheck::Trusted);
  }
  const auto pieces = s.disjoint_pieces();
  const std::size_t k = a.dim();
  for (const auto& t : a.terms()) {
    const auto& verts = t.simplex.vertices();
    for (const auto& piece : pieces) {
      std::vector<polytope::Constraint> cons;
      for (const auto& h : piece.constraints) {
        linalg::Vector c(verts.size());
        for (std::size_t i = 0; i < verts.size(); ++i) c[i] = linalg::dot(h.normal, verts[i]);
        cons.push_back({std::move(c), h.bound, h.strict ? polytope::Relation::Less : polytope::Relation::LessEqual});
      }
      auto poly = polytope::cut(verts.size(), cons, true);
      if (poly.dimension != static_cast<int>(k)) continue;
      for (auto idx : poly.simplices) {
        // orientation relative to the parent: sign of det over lambda_1..lambda_k
        linalg::Matrix m(k, linalg::Vector(k));
        for (std::size_t r = 0; r < k; ++r)
          for (std::size_t c = 0; c < k; ++c)
            m[r][c] = poly.vertices[idx[r + 1]][c + 1] - poly.vertices[idx[0]][c + 1];
        if (sgn(linalg::determinant(std::move(m))) < 0) std::swap(idx[0], idx[1]);
        std::vector<Point> pts;
        for (auto i : idx) pts.push_back(polytope::to_ambient(verts, poly.vertices[i]));
        terms.push_back({t.coeff, Simplex(std::move(pts))});
      }
    }
  }
  return Chain::from_terms(a.group(), a.ambient(), k, std::move(terms), nullptr, OverlapCheck::Trusted);
}

SupportInfo support_diameter(const Chain& a) {
  SupportInfo info;
  std::vector<Point> pts;
  for (const auto& t : a.terms())
    for (const auto& v : t.simplex.vertices()) pts.push_back(v);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  info.squared_diameter = 0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      Rational d = squared_distance(pts[i], pts[j]);
      if (d > info.squared_diameter) info.squared_diameter = d;
    }
  info.diameter = std::sqrt(to_double(info.squared_diameter));
  info.vertices = std::move(pts);
  return info;
}

std::optional<std::pair<Point, Point>> bounding_box(const Chain& a) {
  if (a.is_zero()) return std::nullopt;
  Point lo = a.terms().front().simplex.vertices().front();
  Point hi = lo;
  for (const auto& t : a.terms())
    for (const auto& v : t.simplex.vertices())
      for (std::size_t c = 0; c < v.size(); ++c) {
        if (v[c] < lo[c]) lo[c] = v[c];
        if (v[c] > hi[c]) hi[c] = v[c];
      }
  return std::make_pair(lo, hi);
}

}  // namespace flatchain
