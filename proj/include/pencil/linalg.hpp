#pragma once

// Dense linear algebra over a tower field.

#include "pencil/forms.hpp"
#include "pencil/tower.hpp"

#include <optional>
#include <vector>

namespace pencil {

using Matrix = std::vector<std::vector<TowerElement>>;
using Vector = std::vector<TowerElement>;

/// Row echelon form in place; returns the pivot columns.
std::vector<std::size_t> row_reduce(Matrix& m);

std::size_t rank(Matrix m);
TowerElement determinant(Matrix m);
/// A basis of {v : m v = 0}.
std::vector<Vector> nullspace(Matrix m);
/// Some solution of m x = b, or nullopt when inconsistent.
std::optional<Vector> solve(Matrix m, const Vector& b);

/// Rows are the coefficient vectors of the forms over the union of their monomials.
Matrix coefficient_matrix(const std::vector<Form>& forms);

/// Determinant of three points of the projective plane.
TowerElement det3(const Vector& a, const Vector& b, const Vector& c);
/// Cross product: the line through two points, or the point on two lines.
Vector cross(const Vector& a, const Vector& b);

}  // namespace pencil
