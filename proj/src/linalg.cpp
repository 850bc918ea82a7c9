#include "pencil/linalg.hpp"

#include <set>

namespace pencil {

std::vector<std::size_t> row_reduce(Matrix& m) {
  std::vector<std::size_t> pivots;
  if (m.empty()) return pivots;
  const std::size_t rows = m.size(), cols = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c].is_zero()) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    TowerElement inv = m[r][c].inverse();
    for (std::size_t k = c; k < cols; ++k) m[r][k] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c].is_zero()) continue;
      TowerElement f = m[i][c];
      for (std::size_t k = c; k < cols; ++k) m[i][k] -= f * m[r][k];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::size_t rank(Matrix m) { return row_reduce(m).size(); }

TowerElement determinant(Matrix m) {
  const std::size_t n = m.size();
  TowerElement det(1);
  for (std::size_t c = 0; c < n; ++c) {
    if (m[c].size() != n) throw std::invalid_argument("determinant of a non-square matrix");
    std::size_t p = c;
    while (p < n && m[p][c].is_zero()) ++p;
    if (p == n) return TowerElement(0);
    if (p != c) {
      std::swap(m[p], m[c]);
      det = -det;
    }
    det *= m[c][c];
    TowerElement inv = m[c][c].inverse();
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m[i][c].is_zero()) continue;
      TowerElement f = m[i][c] * inv;
      for (std::size_t k = c; k < n; ++k) m[i][k] -= f * m[c][k];
    }
  }
  return det;
}

std::vector<Vector> nullspace(Matrix m) {
  if (m.empty()) return {};
  const std::size_t cols = m[0].size();
  auto pivots = row_reduce(m);
  std::set<std::size_t> pivot_set(pivots.begin(), pivots.end());
  std::vector<Vector> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (pivot_set.count(free)) continue;
    Vector v(cols, TowerElement(0));
    v[free] = TowerElement(1);
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<Vector> solve(Matrix m, const Vector& b) {
  if (m.size() != b.size()) throw std::invalid_argument("right-hand side size mismatch");
  if (m.empty()) return Vector{};
  const std::size_t cols = m[0].size();
  for (std::size_t i = 0; i < m.size(); ++i) m[i].push_back(b[i]);
  auto pivots = row_reduce(m);
  if (!pivots.empty() && pivots.back() == cols) return std::nullopt;
  Vector x(cols, TowerElement(0));
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = m[r][cols];
  return x;
}

Matrix coefficient_matrix(const std::vector<Form>& forms) {
  std::set<Monomial, GrlexGreater> monomials;
  for (auto& f : forms)
    for (auto& [mono, c] : f.terms()) monomials.insert(mono);
  Matrix m;
  for (auto& f : forms) {
    Vector row;
    for (auto& mono : monomials) row.push_back(f.coefficient(mono));
    m.push_back(std::move(row));
  }
  return m;
}

TowerElement det3(const Vector& a, const Vector& b, const Vector& c) {
  return a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) + a[2] * (b[0] * c[1] - b[1] * c[0]);
}

Vector cross(const Vector& a, const Vector& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

}  // namespace pencil
