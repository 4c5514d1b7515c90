#include "flatchain/linalg.hpp"

#include <cassert>

#include "flatchain/errors.hpp"

namespace flatchain::linalg {

namespace {

// Reduced row echelon form in place; returns pivot column per pivot row.
std::vector<std::size_t> rref(Matrix& m, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
    std::size_t sel = row;
    while (sel < m.size() && sgn(m[sel][col]) == 0) ++sel;
    if (sel == m.size()) continue;
    std::swap(m[sel], m[row]);
    Rational inv = 1 / m[row][col];
    for (std::size_t j = col; j < m[row].size(); ++j) m[row][j] *= inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || sgn(m[r][col]) == 0) continue;
      Rational f = m[r][col];
      for (std::size_t j = col; j < m[r].size(); ++j) m[r][j] -= f * m[row][j];
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

std::size_t rank(Matrix m) {
  if (m.empty()) return 0;
  return rref(m, m.front().size()).size();
}

Rational determinant(Matrix m) {
  const std::size_t n = m.size();
  for (const auto& row : m)
    if (row.size() != n) throw DimensionMismatch("determinant of a non-square matrix");
  Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t sel = col;
    while (sel < n && sgn(m[sel][col]) == 0) ++sel;
    if (sel == n) return 0;
    if (sel != col) {
      std::swap(m[sel], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (sgn(m[r][col]) == 0) continue;
      Rational f = m[r][col] / m[col][col];
      for (std::size_t j = col; j < n; ++j) m[r][j] -= f * m[col][j];
    }
  }
  return det;
}

std::optional<Vector> solve_unique(Matrix a, Vector b) {
  if (a.size() != b.size()) throw DimensionMismatch("solve: row count mismatch");
  if (a.empty()) return std::nullopt;
  const std::size_t cols = a.front().size();
  for (std::size_t i = 0; i < a.size(); ++i) a[i].push_back(b[i]);
  auto pivots = rref(a, cols);
  // inconsistent if a pivot lands in the augmented column
  for (std::size_t r = pivots.size(); r < a.size(); ++r)
    if (sgn(a[r][cols]) != 0) return std::nullopt;
  if (pivots.size() != cols) return std::nullopt;
  Vector x(cols);
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = a[r][cols];
  return x;
}

std::vector<Vector> nullspace(const Matrix& a, std::size_t cols) {
  Matrix m = a;
  auto pivots = rref(m, cols);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<Vector> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    Vector v(cols, Rational(0));
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<Vector> coordinates(const std::vector<Vector>& basis, const Vector& v) {
  if (basis.empty()) {
    for (const auto& c : v)
      if (sgn(c) != 0) return std::nullopt;
    return Vector{};
  }
  Matrix a(v.size(), Vector(basis.size()));
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < basis.size(); ++j) a[i][j] = basis[j][i];
  return solve_unique(std::move(a), v);
}

Rational dot(const Vector& a, const Vector& b) {
  assert(a.size() == b.size());
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Vector sub(const Vector& a, const Vector& b) {
  assert(a.size() == b.size());
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

std::size_t rank_of(const std::vector<Vector>& rows) { return rank(rows); }

int affine_dimension(const std::vector<Vector>& points) {
  if (points.empty()) return -1;
  std::vector<Vector> diffs;
  for (std::size_t i = 1; i < points.size(); ++i) diffs.push_back(sub(points[i], points[0]));
  return static_cast<int>(rank(diffs));
}

}  // namespace flatchain::linalg
