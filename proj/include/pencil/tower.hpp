#pragma once

// Exact arithmetic in iterated extensions Q(t1)(t2)...(tk).
//
// An element of a tower with generators t1..tk of degrees n1..nk is stored as
// a flat vector of rationals over the monomial basis t1^e1 * ... * tk^ek with
// 0 <= ej < nj; index = e1 + n1*(e2 + n2*(e3 + ...)). An element of the first
// j levels therefore occupies the leading block of size n1*...*nj, which makes
// the embedding into a longer tower a zero-padding.

#include "pencil/errors.hpp"
#include "pencil/rational.hpp"

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pencil {

class TowerSpec;
class TowerElement;
using TowerPtr = std::shared_ptr<const TowerSpec>;

struct TowerLevel {
  std::string name;
  /// Monic minimal polynomial, constant term first. Coefficient j is a flat
  /// coordinate vector over the basis of the previous level.
  std::vector<std::vector<Rational>> minpoly;

  std::size_t degree() const { return minpoly.size() - 1; }
  bool operator==(const TowerLevel&) const = default;
};

class TowerSpec {
 public:
  static TowerPtr rationals();

  /// Accepts "Q(i: t^2+1, r3: t^2-3)", optionally prefixed by "field:".
  static TowerPtr parse(std::string_view header);

  std::size_t depth() const { return levels_.size(); }
  /// Absolute degree over Q.
  std::size_t degree() const { return blocks_.back(); }
  /// Absolute degree of the sub-tower made of the first `levels` generators.
  std::size_t block(std::size_t levels) const { return blocks_.at(levels); }
  const TowerLevel& level(std::size_t k) const { return levels_.at(k); }
  std::optional<std::size_t> find(std::string_view name) const;

  /// True when the levels of `smaller` are a prefix of the levels of this tower.
  bool extends(const TowerSpec& smaller) const;

  std::vector<unsigned> exponents(std::size_t basis_index) const;
  std::string to_string() const;

 private:
  friend TowerPtr extend(const TowerPtr&, std::string, const std::vector<TowerElement>&);
  std::vector<TowerLevel> levels_;
  std::vector<std::size_t> blocks_{1};
};

/// Adjoins a root of `minpoly` (constant term first, must be monic of degree >= 2)
/// to `base`. Irreducibility is not checked.
TowerPtr extend(const TowerPtr& base, std::string name, const std::vector<TowerElement>& minpoly);

/// Tower that both arguments embed into; throws TowerMismatch otherwise.
const TowerPtr& common_tower(const TowerPtr& a, const TowerPtr& b);

class TowerElement {
 public:
  TowerElement();
  TowerElement(int value);  // NOLINT(google-explicit-constructor)
  TowerElement(const Rational& value);  // NOLINT(google-explicit-constructor)
  TowerElement(TowerPtr tower, const Rational& value);
  TowerElement(TowerPtr tower, std::vector<Rational> coords);

  static TowerElement generator(const TowerPtr& tower, std::string_view name);
  static TowerElement generator(const TowerPtr& tower, std::size_t level);

  const TowerPtr& tower() const { return tower_; }
  std::span<const Rational> coords() const { return coords_; }

  bool is_zero() const;
  bool is_one() const;
  bool is_rational() const;
  /// Throws std::domain_error when the element is not rational.
  Rational to_rational() const;

  /// Embeds into a tower extending the current one.
  TowerElement lift(const TowerPtr& target) const;
  TowerElement inverse() const;

  std::string to_string() const;

  TowerElement operator-() const;
  TowerElement& operator+=(const TowerElement& o);
  TowerElement& operator-=(const TowerElement& o);
  TowerElement& operator*=(const TowerElement& o);
  TowerElement& operator/=(const TowerElement& o);

  friend TowerElement operator+(TowerElement a, const TowerElement& b) { return a += b; }
  friend TowerElement operator-(TowerElement a, const TowerElement& b) { return a -= b; }
  friend TowerElement operator*(TowerElement a, const TowerElement& b) { return a *= b; }
  friend TowerElement operator/(TowerElement a, const TowerElement& b) { return a /= b; }
  friend bool operator==(const TowerElement& a, const TowerElement& b);

 private:
  TowerPtr tower_;
  std::vector<Rational> coords_;
};

TowerElement pow(const TowerElement& a, int exponent);

/// A square root of `a` inside its own tower, when one exists among those the
/// level-by-level search can reach (every quadratic level, plus subfields of
/// higher-degree levels).
std::optional<TowerElement> sqrt_in_tower(const TowerElement& a);

struct SqrtResult {
  TowerElement root;
  TowerPtr tower;
  bool extended = false;
};

/// Returns s with s*s == a. When no square root is found in the current tower,
/// the tower is extended by t^2 - a and the new generator is returned.
SqrtResult try_sqrt(const TowerElement& a, std::string name = {});

/// Parses an element written in generator notation, e.g. "(1/2 - 1/2*i)".
TowerElement parse_element(const TowerPtr& tower, std::string_view text);

/// Cyclotomic polynomial Phi_n over Z, constant term first.
std::vector<Integer> cyclotomic(unsigned n);

}  // namespace pencil
