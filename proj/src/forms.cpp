#include "pencil/forms.hpp"

#include "pencil/notation.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

namespace pencil {

namespace {

std::string_view trim_view(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

unsigned degree_of(const Monomial& m) { return std::accumulate(m.begin(), m.end(), 0U); }

std::vector<unsigned> multidegree_of(const VarSet& vars, const Monomial& m) {
  std::vector<unsigned> d(vars.block_count());
  for (std::size_t i = 0; i < m.size(); ++i) d[vars.block_of(i)] += m[i];
  return d;
}

bool same_vars(const VarSetPtr& a, const VarSetPtr& b) { return a == b || *a == *b; }

}  // namespace

VarSet::VarSet(std::vector<std::vector<std::string>> blocks) {
  if (blocks.empty()) throw std::invalid_argument("a variable set needs at least one block");
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    if (blocks[b].empty()) throw std::invalid_argument("empty grading block");
    block_sizes_.push_back(blocks[b].size());
    for (auto& n : blocks[b]) {
      if (index(n)) throw std::invalid_argument("duplicate variable '" + n + "'");
      names_.push_back(n);
      block_of_.push_back(b);
    }
  }
}

VarSetPtr VarSet::make(std::vector<std::vector<std::string>> blocks) {
  return std::make_shared<const VarSet>(std::move(blocks));
}

VarSetPtr VarSet::parse(std::string_view text) {
  std::string_view s = trim_view(text);
  if (s.substr(0, 5) == "vars:") s = trim_view(s.substr(5));
  if (s.size() < 2 || s.front() != '[' || s.back() != ']')
    throw ParseError("expected a variable list like [x,y,z], got '" + std::string(text) + "'");
  std::vector<std::vector<std::string>> blocks(1);
  std::string cur;
  auto flush = [&] {
    std::string_view n = trim_view(cur);
    if (n.empty()) throw ParseError("empty variable name in '" + std::string(text) + "'");
    blocks.back().emplace_back(n);
    cur.clear();
  };
  for (char c : s.substr(1, s.size() - 2)) {
    if (c == ',') flush();
    else if (c == ';') {
      flush();
      blocks.emplace_back();
    } else cur += c;
  }
  flush();
  try {
    return make(std::move(blocks));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

std::optional<std::size_t> VarSet::index(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  return std::nullopt;
}

std::string VarSet::to_string() const {
  std::string out = "[";
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (i) out += block_of_[i] != block_of_[i - 1] ? ";" : ",";
    out += names_[i];
  }
  return out + "]";
}

bool GrlexGreater::operator()(const Monomial& a, const Monomial& b) const {
  unsigned da = degree_of(a), db = degree_of(b);
  if (da != db) return da > db;
  return a > b;
}

Form::Form() : Form(VarSet::make({{"x"}}), TowerSpec::rationals()) {}

Form::Form(VarSetPtr vars, TowerPtr tower) : vars_(std::move(vars)), tower_(std::move(tower)) {}

Form::Form(VarSetPtr vars, TowerPtr tower, Terms terms)
    : vars_(std::move(vars)), tower_(std::move(tower)) {
  for (auto& [m, c] : terms) {
    if (m.size() != vars_->size()) throw std::invalid_argument("monomial arity does not match variables");
    if (c.is_zero()) continue;
    tower_ = common_tower(tower_, c.tower());
  }
  for (auto& [m, c] : terms)
    if (!c.is_zero()) terms_.emplace(m, c.lift(tower_));
  check_homogeneous();
}

Form Form::constant(VarSetPtr vars, const TowerElement& c) {
  std::size_t n = vars->size();
  return monomial(std::move(vars), Monomial(n), c);
}

Form Form::variable(VarSetPtr vars, std::size_t index, TowerPtr tower) {
  Monomial m(vars->size());
  m.at(index) = 1;
  return monomial(std::move(vars), std::move(m), TowerElement(tower, 1));
}

Form Form::variable(VarSetPtr vars, std::string_view name, TowerPtr tower) {
  auto i = vars->index(name);
  if (!i) throw std::invalid_argument("unknown variable '" + std::string(name) + "'");
  return variable(std::move(vars), *i, std::move(tower));
}

Form Form::monomial(VarSetPtr vars, Monomial m, const TowerElement& c) {
  TowerPtr t = c.tower();
  Terms terms;
  terms.emplace(std::move(m), c);
  return Form(std::move(vars), std::move(t), std::move(terms));
}

void Form::check_homogeneous() const {
  if (terms_.empty()) return;
  auto d = multidegree_of(*vars_, terms_.begin()->first);
  for (auto& [m, c] : terms_)
    if (multidegree_of(*vars_, m) != d) throw std::invalid_argument("form is not homogeneous: " + to_string());
}

std::vector<unsigned> Form::multidegree() const {
  if (terms_.empty()) throw std::domain_error("the zero form has no degree");
  return multidegree_of(*vars_, terms_.begin()->first);
}

unsigned Form::total_degree() const {
  if (terms_.empty()) throw std::domain_error("the zero form has no degree");
  return degree_of(terms_.begin()->first);
}

const Monomial& Form::leading_monomial() const {
  if (terms_.empty()) throw std::domain_error("the zero form has no leading term");
  return terms_.begin()->first;
}

const TowerElement& Form::leading_coefficient() const {
  if (terms_.empty()) throw std::domain_error("the zero form has no leading term");
  return terms_.begin()->second;
}

TowerElement Form::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? TowerElement(tower_, 0) : it->second;
}

Form Form::lift(const TowerPtr& target) const {
  if (target == tower_) return *this;
  Form r(vars_, target);
  for (auto& [m, c] : terms_) r.terms_.emplace(m, c.lift(target));
  return r;
}

Form Form::monic() const {
  Form r = *this;
  TowerElement inv = leading_coefficient().inverse();
  for (auto& [m, c] : r.terms_) c *= inv;
  return r;
}

Form Form::derivative(std::size_t var) const {
  if (var >= vars_->size()) throw std::out_of_range("derivative variable out of range");
  Form r(vars_, tower_);
  for (auto& [m, c] : terms_) {
    if (m[var] == 0) continue;
    Monomial d = m;
    --d[var];
    r.terms_.emplace(std::move(d), c * TowerElement(static_cast<int>(m[var])));
  }
  return r;
}

TowerElement Form::evaluate(const std::vector<TowerElement>& point) const {
  if (point.size() != vars_->size()) throw std::invalid_argument("point arity does not match variables");
  std::vector<std::vector<TowerElement>> powers(point.size());
  auto power = [&](std::size_t i, unsigned e) -> const TowerElement& {
    auto& p = powers[i];
    if (p.empty()) p.push_back(TowerElement(point[i].tower(), 1));
    while (p.size() <= e) p.push_back(p.back() * point[i]);
    return p[e];
  };
  TowerElement sum(tower_, 0);
  for (auto& [m, c] : terms_) {
    TowerElement t = c;
    for (std::size_t i = 0; i < m.size(); ++i)
      if (m[i]) t *= power(i, m[i]);
    sum += t;
  }
  return sum;
}

std::string Form::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (auto& [m, c] : terms_) {
    std::string mono;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += vars_->name(i);
      if (m[i] > 1) mono += "^" + std::to_string(m[i]);
    }
    append_term(out, c.to_string(), mono);
  }
  return out;
}

void Form::unify(const Form& o) {
  if (!same_vars(vars_, o.vars_))
    throw std::invalid_argument("forms over different variables: " + vars_->to_string() + " vs " +
                                o.vars_->to_string());
  const TowerPtr& t = common_tower(tower_, o.tower_);
  if (t != tower_) *this = lift(t);
}

Form Form::operator-() const {
  Form r = *this;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

Form& Form::operator+=(const Form& o) {
  unify(o);
  if (!terms_.empty() && !o.terms_.empty() && multidegree() != o.multidegree())
    throw std::invalid_argument("sum of forms of different degrees");
  for (auto& [m, c] : o.terms_) {
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    } else if (it->second.tower() != tower_) {
      it->second = it->second.lift(tower_);
    }
  }
  return *this;
}

Form& Form::operator-=(const Form& o) { return *this += -o; }

Form& Form::operator*=(const Form& o) {
  unify(o);
  Terms out;
  for (auto& [ma, ca] : terms_) {
    for (auto& [mb, cb] : o.terms_) {
      Monomial m(ma.size());
      for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
      TowerElement c = ca * cb;
      auto [it, inserted] = out.try_emplace(std::move(m), c);
      if (!inserted) it->second += c;
    }
  }
  std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
  for (auto& [m, c] : out)
    if (c.tower() != tower_) c = c.lift(tower_);
  terms_ = std::move(out);
  return *this;
}

Form& Form::operator*=(const TowerElement& k) {
  if (k.is_zero()) {
    terms_.clear();
    return *this;
  }
  const TowerPtr& t = common_tower(tower_, k.tower());
  if (t != tower_) *this = lift(t);
  for (auto& [m, c] : terms_) c *= k;
  return *this;
}

bool operator==(const Form& a, const Form& b) {
  if (!same_vars(a.vars_, b.vars_) || a.terms_.size() != b.terms_.size()) return false;
  auto ia = a.terms_.begin();
  for (auto ib = b.terms_.begin(); ib != b.terms_.end(); ++ia, ++ib)
    if (ia->first != ib->first || !(ia->second == ib->second)) return false;
  return true;
}

Form pow(const Form& f, unsigned exponent) {
  Form r = Form::constant(f.vars(), TowerElement(f.tower(), 1));
  Form base = f;
  for (unsigned e = exponent; e; e >>= 1) {
    if (e & 1U) r *= base;
    if (e > 1) base *= base;
  }
  return r;
}

namespace {

struct FormValue {
  Form f;
  FormValue operator-() const { return {-f}; }
  friend FormValue operator+(const FormValue& a, const FormValue& b) { return {a.f + b.f}; }
  friend FormValue operator-(const FormValue& a, const FormValue& b) { return {a.f - b.f}; }
  friend FormValue operator*(const FormValue& a, const FormValue& b) { return {a.f * b.f}; }
  friend FormValue operator/(const FormValue& a, const FormValue& b) {
    if (b.f.is_zero()) throw DivisionByZero();
    if (b.f.total_degree() != 0) throw ParseError("division by a non-constant form");
    return {a.f * b.f.leading_coefficient().inverse()};
  }
};

}  // namespace

Form parse_form(const VarSetPtr& vars, const TowerPtr& tower, std::string_view text) {
  auto ident = [&](std::string_view id) -> FormValue {
    if (auto i = vars->index(id)) return {Form::variable(vars, *i, tower)};
    return {Form::constant(vars, TowerElement::generator(tower, id))};
  };
  auto constant = [&](const Rational& q) { return FormValue{Form::constant(vars, TowerElement(tower, q))}; };
  try {
    return read_expression<FormValue>(text, ident, constant).f.lift(tower);
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(std::string(e.what()) + " in '" + std::string(text) + "'");
  }
}

Form substitute(const Form& f, const std::vector<Form>& images) {
  const VarSet& src = *f.vars();
  if (images.size() != src.size()) throw std::invalid_argument("one image per variable is required");
  const VarSetPtr& target = images.front().vars();
  TowerPtr tower = f.tower();
  for (auto& img : images) {
    if (!same_vars(img.vars(), target)) throw std::invalid_argument("substitution images use different variables");
    tower = common_tower(tower, img.tower());
  }
  for (std::size_t i = 0; i < images.size(); ++i) {
    if (images[i].is_zero()) continue;
    for (std::size_t j = 0; j < i; ++j) {
      if (images[j].is_zero() || src.block_of(i) != src.block_of(j)) continue;
      if (images[i].multidegree() != images[j].multidegree())
        throw std::invalid_argument("images of '" + src.name(j) + "' and '" + src.name(i) +
                                    "' have different degrees");
    }
  }
  std::vector<std::vector<Form>> powers(images.size());
  auto power = [&](std::size_t i, unsigned e) -> const Form& {
    auto& p = powers[i];
    if (p.empty()) p.push_back(Form::constant(target, TowerElement(tower, 1)));
    while (p.size() <= e) p.push_back(p.back() * images[i]);
    return p[e];
  };
  Form out(target, tower);
  for (auto& [m, c] : f.terms()) {
    Form t = Form::constant(target, c);
    for (std::size_t i = 0; i < m.size(); ++i)
      if (m[i]) t *= power(i, m[i]);
    out += t;
  }
  return out;
}

Form substitute(const Form& f, const std::map<std::string, Form>& images) {
  if (images.empty()) return f;
  const VarSetPtr& target = images.begin()->second.vars();
  std::vector<Form> positional;
  for (const auto& name : f.vars()->names()) {
    auto it = images.find(name);
    if (it != images.end()) {
      positional.push_back(it->second);
    } else if (same_vars(target, f.vars())) {
      positional.push_back(Form::variable(target, name));
    } else {
      throw std::invalid_argument("no image given for variable '" + name + "'");
    }
  }
  for (auto& [name, img] : images)
    if (!f.vars()->index(name)) throw std::invalid_argument("image given for unknown variable '" + name + "'");
  return substitute(f, positional);
}

Form restrict(const Form& f, const std::vector<Form>& parametrization) {
  for (auto& p : parametrization)
    if (!p.is_zero() && p.total_degree() != 1) throw std::invalid_argument("parametrization must be linear");
  return substitute(f, parametrization);
}

std::optional<Form> divide_exact(const Form& f, const Form& g) {
  if (g.is_zero()) throw DivisionByZero();
  if (!same_vars(f.vars(), g.vars())) throw std::invalid_argument("division of forms over different variables");
  const Monomial& lg = g.leading_monomial();
  TowerElement lc_inv = g.leading_coefficient().inverse();
  Form q(f.vars(), common_tower(f.tower(), g.tower()));
  Form r = f;
  while (!r.is_zero()) {
    const Monomial& lr = r.leading_monomial();
    Monomial m(lr.size());
    for (std::size_t i = 0; i < lr.size(); ++i) {
      if (lr[i] < lg[i]) return std::nullopt;
      m[i] = lr[i] - lg[i];
    }
    Form t = Form::monomial(f.vars(), std::move(m), r.leading_coefficient() * lc_inv);
    q += t;
    r -= t * g;
  }
  return q;
}

TowerElement disc2(const Form& q) {
  if (q.vars()->size() != 2 || q.is_zero() || q.total_degree() != 2)
    throw std::invalid_argument("disc2 expects a binary quadratic form");
  TowerElement a = q.coefficient({2, 0}), b = q.coefficient({1, 1}), c = q.coefficient({0, 2});
  return b * b - TowerElement(4) * a * c;
}

Form hessian(const Form& cubic) {
  if (cubic.vars()->size() != 3 || cubic.is_zero() || cubic.total_degree() != 3)
    throw std::invalid_argument("hessian expects a ternary cubic form");
  std::vector<std::vector<Form>> h(3, std::vector<Form>(3, Form(cubic.vars(), cubic.tower())));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) h[i][j] = cubic.derivative(i).derivative(j);
  return h[0][0] * (h[1][1] * h[2][2] - h[1][2] * h[2][1]) - h[0][1] * (h[1][0] * h[2][2] - h[1][2] * h[2][0]) +
         h[0][2] * (h[1][0] * h[2][1] - h[1][1] * h[2][0]);
}

bool jacobian_vanishes_at(const std::vector<Form>& forms, const std::vector<TowerElement>& point) {
  if (forms.empty()) throw std::invalid_argument("jacobian test needs at least one form");
  for (auto& f : forms) {
    if (point.size() != f.vars()->size()) throw std::invalid_argument("point arity does not match variables");
    for (std::size_t i = 0; i < point.size(); ++i)
      if (!f.derivative(i).evaluate(point).is_zero()) return false;
  }
  return true;
}

std::optional<TowerElement> proportionality(const Form& a, const Form& b) {
  if (a.is_zero() || b.is_zero() || !same_vars(a.vars(), b.vars())) return std::nullopt;
  if (a.leading_monomial() != b.leading_monomial() || a.term_count() != b.term_count()) return std::nullopt;
  TowerElement k = a.leading_coefficient() / b.leading_coefficient();
  if (!(a == b * k)) return std::nullopt;
  return k;
}

std::optional<SquareRoot> square_root_up_to_scalar(const Form& f) {
  if (f.is_zero()) return std::nullopt;
  Form g = f.monic();
  const Monomial& lm = g.leading_monomial();
  Monomial half(lm.size());
  for (std::size_t i = 0; i < lm.size(); ++i) {
    if (lm[i] % 2) return std::nullopt;
    half[i] = lm[i] / 2;
  }
  Form root = Form::monomial(g.vars(), half, TowerElement(g.tower(), 1));
  Form lead2 = root * TowerElement(2);
  Monomial last = half;
  GrlexGreater greater;
  for (Form rem = g - root * root; !rem.is_zero(); rem = g - root * root) {
    auto t = divide_exact(Form::monomial(g.vars(), rem.leading_monomial(), rem.leading_coefficient()), lead2);
    if (!t || !greater(last, t->leading_monomial())) return std::nullopt;
    last = t->leading_monomial();
    root += *t;
  }
  return SquareRoot{root, f.leading_coefficient()};
}

std::vector<Form> coefficients_in(const Form& f, std::size_t var) {
  std::vector<Form> out;
  for (auto& [m, c] : f.terms()) {
    if (out.size() <= m[var]) out.resize(m[var] + 1, Form(f.vars(), f.tower()));
    Monomial rest = m;
    rest[var] = 0;
    out[m[var]] += Form::monomial(f.vars(), rest, c);
  }
  return out;
}

namespace {

Form determinant(const std::vector<std::vector<Form>>& m, const Form& zero) {
  const std::size_t n = m.size();
  if (n == 1) return m[0][0];
  Form det = zero;
  for (std::size_t j = 0; j < n; ++j) {
    if (m[0][j].is_zero()) continue;
    std::vector<std::vector<Form>> minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<Form> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(m[i][k]);
      minor.push_back(std::move(row));
    }
    Form term = m[0][j] * determinant(minor, zero);
    if (j % 2) det -= term;
    else det += term;
  }
  return det;
}

}  // namespace

Form resultant(const Form& f, const Form& g, std::size_t var) {
  if (f.is_zero() || g.is_zero()) throw std::invalid_argument("resultant of a zero form");
  auto cf = coefficients_in(f, var), cg = coefficients_in(g, var);
  const std::size_t m = cf.size() - 1, n = cg.size() - 1;
  Form zero(f.vars(), common_tower(f.tower(), g.tower()));
  if (m == 0 && n == 0) return Form::constant(f.vars(), TowerElement(zero.tower(), 1));
  if (m == 0) return pow(cf[0], static_cast<unsigned>(n));
  if (n == 0) return pow(cg[0], static_cast<unsigned>(m));
  const std::size_t size = m + n;
  std::vector<std::vector<Form>> s(size, std::vector<Form>(size, zero));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k <= m; ++k) s[i][i + k] = cf[m - k];
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 0; k <= n; ++k) s[n + i][i + k] = cg[n - k];
  return determinant(s, zero);
}

}  // namespace pencil
