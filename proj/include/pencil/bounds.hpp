#pragma once

// Exact evaluation of the numeric inequalities bounding the number of
// reducible members of a pencil.

#include "pencil/nslattice.hpp"
#include "pencil/rational.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace pencil {

struct ComboPart {
  NSClass d;
  long long mult = 1;
  /// Euler number of the component; nullopt means a smooth curve in the class.
  std::optional<long long> euler;
};

struct ClassCombination {
  SurfacePtr surface;
  std::vector<ComboPart> parts;

  /// Throws std::invalid_argument when a negative curve carries multiplicity > 1.
  void validate() const;
  NSClass total() const;
  long long part_euler(const ComboPart& p) const;
  /// Sum of m_i * e(d_i).
  long long weighted_euler() const;
};

/// Reads lines "<class> <mult> <euler|smooth>".
ClassCombination parse_combination(const SurfacePtr& s, std::string_view text);

struct BoundReport {
  std::string eq;
  std::vector<std::pair<std::string, std::string>> inputs;
  Rational value;
  Integer floor;
  std::string verdict;
};

/// (e/3 + D^2 + 2/3 K.D) / (D^2 + sum m_i e_i + K.D).
Rational keyineq_lhs(const ClassCombination& c);

/// 2(e + 3D^2 + 2K.D) / (D^2 + K.D + sum m_i e_i).
BoundReport rank_bound(const ClassCombination& c);

/// floor of 6(d-1)^2 / ((d-d0)(d+d0-k)) for d = nk + d0 with n >= 2.
BoundReport rho_upper(long long d, long long k);

/// (a-6)k^2n^2 + (12 + a(2d0-k))kn - 6.
Rational h_alpha(long long k, long long n, long long d0, const Rational& alpha);

/// Maximum of rho_upper(nk+d0, k) over 2 <= n <= n_cap, 0 <= d0 < k.
BoundReport universal_rho(long long k, long long n_cap = 40);

/// The quadratics whose roots bound the multiplicities; first the one for the
/// distinguished class with positive square. Coefficients (a, b, c) of a m^2 + b m + c.
struct Quadratic {
  NSClass d;
  Rational a, b, c;
  Rational at(const Rational& m) const { return (a * m + b) * m + c; }
};
std::vector<Quadratic> k_delta_polynomials(const SurfaceModel& s, const ClassSet& delta);

/// Least integer >= 1 exceeding every real root of the quadratics above.
long long k_delta(const SurfaceModel& s, const ClassSet& delta);

/// 3(2 + 3mn - (m+n)) / (mn - n), for m >= n >= 1 and mn > n.
BoundReport p1p1_bound(long long m, long long n);

}  // namespace pencil
