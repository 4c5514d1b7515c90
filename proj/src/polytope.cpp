#include "flatchain/polytope.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "flatchain/errors.hpp"

namespace flatchain::polytope {

namespace {

struct Inequality {
  linalg::Vector coeffs;  // coeffs . lambda <= rhs
  Rational rhs;
};

void for_each_subset(std::size_t n, std::size_t size, const std::function<void(const std::vector<std::size_t>&)>& fn) {
  std::vector<std::size_t> idx(size);
  if (size > n) return;
  for (std::size_t i = 0; i < size; ++i) idx[i] = i;
  while (true) {
    fn(idx);
    std::size_t i = size;
    while (i > 0 && idx[i - 1] == n - size + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < size; ++j) idx[j] = idx[j - 1] + 1;
  }
}

class Triangulator {
 public:
  Triangulator(const std::vector<linalg::Vector>& vertices, const std::vector<std::vector<bool>>& tight)
      : vertices_(vertices), tight_(tight) {}

  std::vector<std::vector<std::size_t>> run(const std::vector<std::size_t>& face, int dim) {
    if (dim == 0) return {{face.front()}};
    std::vector<std::vector<std::size_t>> out;
    const std::size_t apex = face.front();
    std::set<std::vector<std::size_t>> seen;
    const std::size_t num_ineq = tight_.empty() ? 0 : tight_.front().size();
    for (std::size_t c = 0; c < num_ineq; ++c) {
      if (tight_[apex][c]) continue;
      std::vector<std::size_t> facet;
      for (auto v : face)
        if (tight_[v][c]) facet.push_back(v);
      if (facet.empty() || seen.count(facet)) continue;
      std::vector<linalg::Vector> pts;
      for (auto v : facet) pts.push_back(vertices_[v]);
      if (linalg::affine_dimension(pts) != dim - 1) continue;
      seen.insert(facet);
      for (auto& s : run(facet, dim - 1)) {
        s.insert(s.begin(), apex);
        out.push_back(std::move(s));
      }
    }
    return out;
  }

 private:
  const std::vector<linalg::Vector>& vertices_;
  const std::vector<std::vector<bool>>& tight_;
};

}  // namespace

Polytope cut(std::size_t n, const std::vector<Constraint>& constraints, bool triangulate) {
  if (n == 0) throw InputError("polytope cut on an empty simplex");
  std::vector<Inequality> ineqs;
  linalg::Matrix eq_rows;
  linalg::Vector eq_rhs;
  // barycentric simplex
  for (std::size_t i = 0; i < n; ++i) {
    linalg::Vector c(n, Rational(0));
    c[i] = -1;
    ineqs.push_back({std::move(c), 0});
  }
  eq_rows.push_back(linalg::Vector(n, Rational(1)));
  eq_rhs.push_back(1);

  for (const auto& con : constraints) {
    if (con.coeffs.size() != n) throw DimensionMismatch("constraint arity does not match simplex");
    auto [lo_it, hi_it] = std::minmax_element(con.coeffs.begin(), con.coeffs.end(),
                                              [](const Rational& a, const Rational& b) { return a < b; });
    const Rational& lo = *lo_it;
    const Rational& hi = *hi_it;
    switch (con.relation) {
      case Relation::Equal:
        if (lo == hi) {
          if (lo == con.rhs) continue;
          return {};
        }
        eq_rows.push_back(con.coeffs);
        eq_rhs.push_back(con.rhs);
        break;
      case Relation::LessEqual:
        if (hi <= con.rhs) continue;
        if (lo > con.rhs) return {};
        ineqs.push_back({con.coeffs, con.rhs});
        break;
      case Relation::Less:
        if (hi < con.rhs) continue;
        if (lo >= con.rhs) return {};
        ineqs.push_back({con.coeffs, con.rhs});
        break;
    }
  }

  const std::size_t eq_rank = linalg::rank(eq_rows);
  if (eq_rank > n) return {};
  const std::size_t need = n - eq_rank;

  std::set<linalg::Vector> found;
  for_each_subset(ineqs.size(), need, [&](const std::vector<std::size_t>& subset) {
    linalg::Matrix a = eq_rows;
    linalg::Vector b = eq_rhs;
    for (auto i : subset) {
      a.push_back(ineqs[i].coeffs);
      b.push_back(ineqs[i].rhs);
    }
    auto x = linalg::solve_unique(std::move(a), std::move(b));
    if (!x) return;
    for (const auto& in : ineqs)
      if (linalg::dot(in.coeffs, *x) > in.rhs) return;
    found.insert(std::move(*x));
  });

  Polytope out;
  out.vertices.assign(found.begin(), found.end());
  out.dimension = linalg::affine_dimension(out.vertices);
  if (!triangulate || out.dimension < 0) return out;

  std::vector<std::vector<bool>> tight(out.vertices.size(), std::vector<bool>(ineqs.size()));
  for (std::size_t v = 0; v < out.vertices.size(); ++v)
    for (std::size_t c = 0; c < ineqs.size(); ++c)
      tight[v][c] = linalg::dot(ineqs[c].coeffs, out.vertices[v]) == ineqs[c].rhs;
  std::vector<std::size_t> all(out.vertices.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  out.simplices = Triangulator(out.vertices, tight).run(all, out.dimension);
  return out;
}

linalg::Vector to_ambient(const std::vector<linalg::Vector>& simplex_vertices, const linalg::Vector& lambda) {
  const std::size_t dim = simplex_vertices.front().size();
  linalg::Vector x(dim, Rational(0));
  for (std::size_t i = 0; i < simplex_vertices.size(); ++i) {
    if (sgn(lambda[i]) == 0) continue;
    for (std::size_t j = 0; j < dim; ++j) x[j] += lambda[i] * simplex_vertices[i][j];
  }
  return x;
}

}  // namespace flatchain::polytope
