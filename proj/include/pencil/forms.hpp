#pragma once

// Sparse homogeneous polynomials over a tower field, graded by blocks of
// variables: [x,y,z] is a single block, [u,v;s,t] carries a bidegree.

#include "pencil/tower.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pencil {

class VarSet {
 public:
  /// `blocks` lists the variable names of each grading block, in order.
  explicit VarSet(std::vector<std::vector<std::string>> blocks);

  /// Parses "[x,y,z]" or "[u,v;s,t]", optionally prefixed by "vars:".
  static std::shared_ptr<const VarSet> parse(std::string_view text);
  static std::shared_ptr<const VarSet> make(std::vector<std::vector<std::string>> blocks);

  std::size_t size() const { return names_.size(); }
  std::size_t block_count() const { return block_sizes_.size(); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  const std::vector<std::string>& names() const { return names_; }
  std::size_t block_of(std::size_t var) const { return block_of_.at(var); }
  std::optional<std::size_t> index(std::string_view name) const;
  std::string to_string() const;

  bool operator==(const VarSet& o) const { return names_ == o.names_ && block_sizes_ == o.block_sizes_; }

 private:
  std::vector<std::string> names_;
  std::vector<std::size_t> block_sizes_;
  std::vector<std::size_t> block_of_;
};

using VarSetPtr = std::shared_ptr<const VarSet>;
using Monomial = std::vector<unsigned>;

/// Graded lexicographic order, descending: larger total degree first, then the
/// larger exponent of the earliest variable.
struct GrlexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

class Form {
 public:
  using Terms = std::map<Monomial, TowerElement, GrlexGreater>;

  /// The zero form in one placeholder variable.
  Form();
  Form(VarSetPtr vars, TowerPtr tower);  // the zero form
  Form(VarSetPtr vars, TowerPtr tower, Terms terms);

  static Form constant(VarSetPtr vars, const TowerElement& c);
  static Form variable(VarSetPtr vars, std::size_t index, TowerPtr tower = TowerSpec::rationals());
  static Form variable(VarSetPtr vars, std::string_view name, TowerPtr tower = TowerSpec::rationals());
  static Form monomial(VarSetPtr vars, Monomial m, const TowerElement& c);

  const VarSetPtr& vars() const { return vars_; }
  const TowerPtr& tower() const { return tower_; }
  const Terms& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  /// Degree per grading block; throws std::domain_error for the zero form.
  std::vector<unsigned> multidegree() const;
  unsigned total_degree() const;
  const Monomial& leading_monomial() const;
  const TowerElement& leading_coefficient() const;
  TowerElement coefficient(const Monomial& m) const;

  Form lift(const TowerPtr& target) const;
  /// Divides by the leading coefficient.
  Form monic() const;
  Form derivative(std::size_t var) const;
  TowerElement evaluate(const std::vector<TowerElement>& point) const;

  std::string to_string() const;

  Form operator-() const;
  Form& operator+=(const Form& o);
  Form& operator-=(const Form& o);
  Form& operator*=(const Form& o);
  Form& operator*=(const TowerElement& c);
  friend Form operator+(Form a, const Form& b) { return a += b; }
  friend Form operator-(Form a, const Form& b) { return a -= b; }
  friend Form operator*(Form a, const Form& b) { return a *= b; }
  friend Form operator*(Form a, const TowerElement& c) { return a *= c; }
  friend Form operator*(const TowerElement& c, Form a) { return a *= c; }
  friend bool operator==(const Form& a, const Form& b);

 private:
  VarSetPtr vars_;
  TowerPtr tower_;
  Terms terms_;

  void check_homogeneous() const;
  void unify(const Form& o);
};

Form pow(const Form& f, unsigned exponent);

/// Reads a form such as "x^2 + (1/2 - i)*y*z" over the given variables and field.
Form parse_form(const VarSetPtr& vars, const TowerPtr& tower, std::string_view text);

/// Replaces every variable of `f` by its image. All images share one VarSet;
/// images of variables in one grading block must have equal multidegree.
/// Variables missing from the map are kept only when the target VarSet is f's own.
Form substitute(const Form& f, const std::map<std::string, Form>& images);

/// Positional variant: images[i] replaces variable i.
Form substitute(const Form& f, const std::vector<Form>& images);

/// Composes `f` with a linear parametrization (one linear form per variable of f).
Form restrict(const Form& f, const std::vector<Form>& parametrization);

/// q with q*g == f exactly, or nullopt. Throws DivisionByZero when g is zero.
std::optional<Form> divide_exact(const Form& f, const Form& g);

/// b^2 - 4ac of a binary quadratic a*s^2 + b*s*t + c*t^2.
TowerElement disc2(const Form& q);

/// Determinant of the matrix of second partial derivatives of a ternary cubic.
Form hessian(const Form& cubic);

/// True iff every first partial of every form vanishes at the point.
bool jacobian_vanishes_at(const std::vector<Form>& forms, const std::vector<TowerElement>& point);

/// The scalar c with a == c*b, if the two forms are proportional (both nonzero).
std::optional<TowerElement> proportionality(const Form& a, const Form& b);

struct SquareRoot {
  Form root;            // monic
  TowerElement scalar;  // f == scalar * root^2
};
/// Decides whether f is a constant times the square of a form.
std::optional<SquareRoot> square_root_up_to_scalar(const Form& f);

/// Resultant of f and g with respect to the variable `var`, via the Sylvester matrix.
Form resultant(const Form& f, const Form& g, std::size_t var);

/// Coefficients of f as a polynomial in variable `var`: result[k] multiplies var^k.
std::vector<Form> coefficients_in(const Form& f, std::size_t var);

}  // namespace pencil
