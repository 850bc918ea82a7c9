#include "pencil/tower.hpp"

#include "pencil/notation.hpp"

#include <algorithm>
#include <cctype>

namespace pencil {

namespace {

using Coords = std::vector<Rational>;
using Span = std::span<const Rational>;

// Arithmetic on the sub-tower made of the first `levels` generators. Elements
// are flat coordinate blocks of length spec.block(levels).
class Kernel {
 public:
  explicit Kernel(const TowerSpec& spec) : spec_(spec) {}

  Coords mul(std::size_t levels, Span a, Span b) const {
    if (levels == 0) return {a[0] * b[0]};
    const TowerLevel& lv = spec_.level(levels - 1);
    const std::size_t n = lv.degree();
    const std::size_t B = spec_.block(levels - 1);
    std::vector<Coords> c(2 * n - 1, Coords(B));
    for (std::size_t i = 0; i < n; ++i) {
      Span ai = a.subspan(i * B, B);
      if (is_zero(ai)) continue;
      for (std::size_t j = 0; j < n; ++j) {
        Span bj = b.subspan(j * B, B);
        if (is_zero(bj)) continue;
        add_into(c[i + j], mul(levels - 1, ai, bj));
      }
    }
    for (std::size_t m = 2 * n - 2; m >= n; --m) {
      if (is_zero(c[m])) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (is_zero(lv.minpoly[j])) continue;
        sub_into(c[m - n + j], mul(levels - 1, c[m], lv.minpoly[j]));
      }
    }
    Coords out;
    out.reserve(n * B);
    for (std::size_t i = 0; i < n; ++i) out.insert(out.end(), c[i].begin(), c[i].end());
    return out;
  }

  Coords inverse(std::size_t levels, Span a) const {
    if (is_zero(a)) throw DivisionByZero();
    if (levels == 0) return {1 / a[0]};
    const TowerLevel& lv = spec_.level(levels - 1);
    const std::size_t B = spec_.block(levels - 1);
    const std::size_t sub = levels - 1;
    Poly r0(lv.minpoly.begin(), lv.minpoly.end());
    Poly r1 = split(a, B);
    trim(r1);
    Poly s0;
    Poly s1{one(B)};
    while (r1.size() > 1) {
      auto [q, r] = divmod(sub, r0, r1);
      Poly s2 = poly_sub(s0, poly_mul(sub, q, s1));
      r0 = std::move(r1);
      r1 = std::move(r);
      s0 = std::move(s1);
      s1 = std::move(s2);
    }
    if (r1.empty())
      throw NonFieldModulus("minimal polynomial of '" + lv.name + "' is reducible");
    Coords c_inv = inverse(sub, r1[0]);
    for (auto& coef : s1) coef = mul(sub, coef, c_inv);
    Poly reduced = divmod(sub, s1, Poly(lv.minpoly.begin(), lv.minpoly.end())).second;
    reduced.resize(lv.degree(), Coords(B));
    Coords out;
    for (auto& coef : reduced) out.insert(out.end(), coef.begin(), coef.end());
    return out;
  }

  std::optional<Coords> sqrt(std::size_t levels, Span a) const {
    if (levels == 0) {
      auto r = rational_sqrt(a[0]);
      if (!r) return std::nullopt;
      return Coords{*r};
    }
    const TowerLevel& lv = spec_.level(levels - 1);
    const std::size_t n = lv.degree();
    const std::size_t B = spec_.block(levels - 1);
    const std::size_t sub = levels - 1;
    Span a0 = a.subspan(0, B);
    bool in_subfield = is_zero(a.subspan(B));

    if (in_subfield) {
      if (auto r = sqrt(sub, a0)) return pad(*r, n * B);
    }
    if (n != 2) return std::nullopt;

    // Complete the square: w = t + p1/2 satisfies w^2 = c, and a = alpha + beta*w.
    Coords half_p1 = scale(lv.minpoly[1], Rational(1, 2));
    Coords c = sub_c(mul(sub, half_p1, half_p1), lv.minpoly[0]);
    Coords beta(a.begin() + B, a.begin() + 2 * B);
    Coords alpha = sub_c(Coords(a0.begin(), a0.end()), mul(sub, beta, half_p1));

    std::optional<std::pair<Coords, Coords>> xy;  // root = x + y*w
    if (in_subfield) {
      if (auto y = sqrt(sub, mul(sub, alpha, inverse(sub, c)))) xy = std::pair{Coords(B), *y};
    } else {
      Coords norm = sub_c(mul(sub, alpha, alpha), mul(sub, c, mul(sub, beta, beta)));
      if (auto N = sqrt(sub, norm)) {
        for (int sgn : {1, -1}) {
          Coords half = scale(add_c(alpha, scale(*N, Rational(sgn))), Rational(1, 2));
          auto x = sqrt(sub, half);
          if (!x || is_zero(*x)) continue;
          Coords y = mul(sub, beta, inverse(sub, scale(*x, Rational(2))));
          xy = std::pair{*x, y};
          break;
        }
      }
    }
    if (!xy) return std::nullopt;
    auto& [x, y] = *xy;
    Coords root = add_c(x, mul(sub, y, half_p1));
    root.insert(root.end(), y.begin(), y.end());
    if (mul(levels, root, root) != Coords(a.begin(), a.end())) return std::nullopt;
    return root;
  }

 private:
  using Poly = std::vector<Coords>;  // coefficients over the sub-tower, constant first
  const TowerSpec& spec_;

  static bool is_zero(Span s) {
    return std::all_of(s.begin(), s.end(), [](const Rational& q) { return q == 0; });
  }
  static void add_into(Coords& acc, const Coords& x) {
    for (std::size_t i = 0; i < x.size(); ++i) acc[i] += x[i];
  }
  static void sub_into(Coords& acc, const Coords& x) {
    for (std::size_t i = 0; i < x.size(); ++i) acc[i] -= x[i];
  }
  static Coords add_c(Coords a, const Coords& b) {
    add_into(a, b);
    return a;
  }
  static Coords sub_c(Coords a, const Coords& b) {
    sub_into(a, b);
    return a;
  }
  static Coords scale(Coords a, const Rational& k) {
    for (auto& q : a) q *= k;
    return a;
  }
  static Coords one(std::size_t B) {
    Coords c(B);
    c[0] = 1;
    return c;
  }
  static Coords pad(Coords c, std::size_t size) {
    c.resize(size);
    return c;
  }
  static Poly split(Span a, std::size_t B) {
    Poly p;
    for (std::size_t i = 0; i < a.size(); i += B) p.emplace_back(a.begin() + i, a.begin() + i + B);
    return p;
  }
  static void trim(Poly& p) {
    while (!p.empty() && is_zero(p.back())) p.pop_back();
  }
  Poly poly_mul(std::size_t sub, const Poly& a, const Poly& b) const {
    if (a.empty() || b.empty()) return {};
    std::size_t B = spec_.block(sub);
    Poly c(a.size() + b.size() - 1, Coords(B));
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) add_into(c[i + j], mul(sub, a[i], b[j]));
    trim(c);
    return c;
  }
  static Poly poly_sub(Poly a, const Poly& b) {
    if (a.size() < b.size()) a.resize(b.size(), Coords(b.front().size()));
    for (std::size_t i = 0; i < b.size(); ++i) sub_into(a[i], b[i]);
    trim(a);
    return a;
  }
  std::pair<Poly, Poly> divmod(std::size_t sub, Poly r, const Poly& d) const {
    trim(r);
    std::size_t B = spec_.block(sub);
    if (r.size() < d.size()) return {Poly{}, r};
    Coords lead_inv = inverse(sub, d.back());
    Poly q(r.size() - d.size() + 1, Coords(B));
    while (r.size() >= d.size()) {
      std::size_t shift = r.size() - d.size();
      Coords k = mul(sub, r.back(), lead_inv);
      for (std::size_t j = 0; j < d.size(); ++j) sub_into(r[shift + j], mul(sub, k, d[j]));
      q[shift] = k;
      r.pop_back();
      trim(r);
    }
    trim(q);
    return {q, r};
  }
};

bool valid_name(std::string_view name) {
  if (name.empty() || !(std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_')) return false;
  return std::all_of(name.begin(), name.end(),
                     [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

// Univariate polynomial in `t` over a tower; the value type for reading minimal polynomials.
struct UPoly {
  TowerPtr tower;
  std::vector<TowerElement> c;

  void trim() {
    while (!c.empty() && c.back().is_zero()) c.pop_back();
  }
  UPoly operator-() const {
    UPoly r = *this;
    for (auto& x : r.c) x = -x;
    return r;
  }
  friend UPoly operator+(UPoly a, const UPoly& b) {
    if (a.c.size() < b.c.size()) a.c.resize(b.c.size(), TowerElement(a.tower, 0));
    for (std::size_t i = 0; i < b.c.size(); ++i) a.c[i] += b.c[i];
    a.trim();
    return a;
  }
  friend UPoly operator-(const UPoly& a, const UPoly& b) { return a + (-b); }
  friend UPoly operator*(const UPoly& a, const UPoly& b) {
    UPoly r{a.tower, {}};
    if (a.c.empty() || b.c.empty()) return r;
    r.c.assign(a.c.size() + b.c.size() - 1, TowerElement(a.tower, 0));
    for (std::size_t i = 0; i < a.c.size(); ++i)
      for (std::size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
    r.trim();
    return r;
  }
  friend UPoly operator/(const UPoly& a, const UPoly& b) {
    if (b.c.size() != 1) throw ParseError("division by a non-constant in a polynomial");
    UPoly r = a;
    for (auto& x : r.c) x /= b.c[0];
    return r;
  }
};

std::vector<std::string> split_top_level(std::string_view s) {
  std::vector<std::string> parts;
  int depth = 0;
  std::string cur;
  for (char ch : s) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (ch == ',' && depth == 0) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  parts.push_back(cur);
  return parts;
}

std::string_view trim_view(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

TowerPtr TowerSpec::rationals() {
  static const TowerPtr q = std::make_shared<const TowerSpec>();
  return q;
}

std::optional<std::size_t> TowerSpec::find(std::string_view name) const {
  for (std::size_t k = 0; k < levels_.size(); ++k)
    if (levels_[k].name == name) return k;
  return std::nullopt;
}

bool TowerSpec::extends(const TowerSpec& smaller) const {
  if (smaller.depth() > depth()) return false;
  for (std::size_t k = 0; k < smaller.depth(); ++k)
    if (!(levels_[k] == smaller.levels_[k])) return false;
  return true;
}

std::vector<unsigned> TowerSpec::exponents(std::size_t basis_index) const {
  std::vector<unsigned> e(depth());
  for (std::size_t k = 0; k < depth(); ++k) {
    e[k] = static_cast<unsigned>(basis_index % levels_[k].degree());
    basis_index /= levels_[k].degree();
  }
  return e;
}

TowerPtr extend(const TowerPtr& base, std::string name, const std::vector<TowerElement>& minpoly) {
  if (minpoly.size() < 3) throw std::invalid_argument("minimal polynomial must have degree >= 2");
  if (!valid_name(name)) throw std::invalid_argument("invalid generator name '" + name + "'");
  if (base->find(name)) throw std::invalid_argument("generator '" + name + "' already exists");
  auto lifted_lead = minpoly.back().lift(base);
  if (!lifted_lead.is_one()) throw std::invalid_argument("minimal polynomial must be monic");
  auto spec = std::make_shared<TowerSpec>(*base);
  TowerLevel lv{std::move(name), {}};
  for (const auto& c : minpoly) {
    auto l = c.lift(base);
    lv.minpoly.emplace_back(l.coords().begin(), l.coords().end());
  }
  spec->blocks_.push_back(spec->blocks_.back() * lv.degree());
  spec->levels_.push_back(std::move(lv));
  return spec;
}

const TowerPtr& common_tower(const TowerPtr& a, const TowerPtr& b) {
  if (a == b || a->extends(*b)) return a;
  if (b->extends(*a)) return b;
  throw TowerMismatch("incompatible towers " + a->to_string() + " and " + b->to_string());
}

TowerElement::TowerElement() : TowerElement(TowerSpec::rationals(), Rational(0)) {}
TowerElement::TowerElement(int value) : TowerElement(TowerSpec::rationals(), Rational(value)) {}
TowerElement::TowerElement(const Rational& value) : TowerElement(TowerSpec::rationals(), value) {}

TowerElement::TowerElement(TowerPtr tower, const Rational& value)
    : tower_(std::move(tower)), coords_(tower_->degree()) {
  coords_[0] = value;
}

TowerElement::TowerElement(TowerPtr tower, std::vector<Rational> coords)
    : tower_(std::move(tower)), coords_(std::move(coords)) {
  if (coords_.size() != tower_->degree())
    throw std::invalid_argument("coordinate vector does not match the tower degree");
  for (auto& q : coords_) q.canonicalize();
}

TowerElement TowerElement::generator(const TowerPtr& tower, std::string_view name) {
  auto k = tower->find(name);
  if (!k) throw ParseError("unknown generator '" + std::string(name) + "'");
  return generator(tower, *k);
}

TowerElement TowerElement::generator(const TowerPtr& tower, std::size_t level) {
  std::vector<Rational> c(tower->degree());
  c.at(tower->block(level)) = 1;
  return TowerElement(tower, std::move(c));
}

bool TowerElement::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(), [](const Rational& q) { return q == 0; });
}

bool TowerElement::is_one() const { return coords_[0] == 1 && is_rational(); }

bool TowerElement::is_rational() const {
  return std::all_of(coords_.begin() + 1, coords_.end(), [](const Rational& q) { return q == 0; });
}

Rational TowerElement::to_rational() const {
  if (!is_rational()) throw std::domain_error("element " + to_string() + " is not rational");
  return coords_[0];
}

TowerElement TowerElement::lift(const TowerPtr& target) const {
  if (target == tower_) return *this;
  if (!target->extends(*tower_))
    throw TowerMismatch("cannot embed " + tower_->to_string() + " into " + target->to_string());
  std::vector<Rational> c(coords_);
  c.resize(target->degree());
  return TowerElement(target, std::move(c));
}

TowerElement TowerElement::inverse() const {
  return TowerElement(tower_, Kernel(*tower_).inverse(tower_->depth(), coords_));
}

TowerElement TowerElement::operator-() const {
  TowerElement r = *this;
  for (auto& q : r.coords_) q = -q;
  return r;
}

TowerElement& TowerElement::operator+=(const TowerElement& o) {
  const TowerPtr& t = common_tower(tower_, o.tower_);
  if (t != tower_) *this = lift(t);
  for (std::size_t i = 0; i < o.coords_.size(); ++i) coords_[i] += o.coords_[i];
  return *this;
}

TowerElement& TowerElement::operator-=(const TowerElement& o) {
  const TowerPtr& t = common_tower(tower_, o.tower_);
  if (t != tower_) *this = lift(t);
  for (std::size_t i = 0; i < o.coords_.size(); ++i) coords_[i] -= o.coords_[i];
  return *this;
}

TowerElement& TowerElement::operator*=(const TowerElement& o) {
  TowerPtr t = common_tower(tower_, o.tower_);
  if (o.is_rational()) {
    if (t != tower_) *this = lift(t);
    for (auto& q : coords_) q *= o.coords_[0];
    return *this;
  }
  if (is_rational()) {
    Rational k = coords_[0];
    *this = o.lift(t);
    for (auto& q : coords_) q *= k;
    return *this;
  }
  TowerElement a = lift(t), b = o.lift(t);
  coords_ = Kernel(*t).mul(t->depth(), a.coords_, b.coords_);
  tower_ = t;
  return *this;
}

TowerElement& TowerElement::operator/=(const TowerElement& o) {
  if (o.is_zero()) throw DivisionByZero();
  if (o.is_rational()) {
    for (auto& q : coords_) q /= o.coords_[0];
    if (o.tower_ != tower_) *this = lift(common_tower(tower_, o.tower_));
    return *this;
  }
  return *this *= o.inverse();
}

bool operator==(const TowerElement& a, const TowerElement& b) {
  if (a.tower_ == b.tower_) return a.coords_ == b.coords_;
  const TowerPtr& t = common_tower(a.tower_, b.tower_);
  return a.lift(t).coords_ == b.lift(t).coords_;
}

std::string TowerElement::to_string() const {
  std::string out;
  std::size_t terms = 0;
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (coords_[i] == 0) continue;
    ++terms;
    std::string mono;
    auto e = tower_->exponents(i);
    for (std::size_t k = 0; k < e.size(); ++k) {
      if (e[k] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += tower_->level(k).name;
      if (e[k] > 1) mono += "^" + std::to_string(e[k]);
    }
    append_term(out, pencil::to_string(coords_[i]), mono);
  }
  if (terms == 0) return "0";
  return terms > 1 ? "(" + out + ")" : out;
}

std::string TowerSpec::to_string() const {
  if (levels_.empty()) return "Q";
  std::string out = "Q(";
  for (std::size_t k = 0; k < levels_.size(); ++k) {
    // Minimal polynomial coefficients live in the tower of the first k levels.
    auto sub = std::make_shared<TowerSpec>();
    sub->levels_.assign(levels_.begin(), levels_.begin() + static_cast<std::ptrdiff_t>(k));
    sub->blocks_.assign(blocks_.begin(), blocks_.begin() + static_cast<std::ptrdiff_t>(k) + 1);
    const auto& mp = levels_[k].minpoly;
    std::string poly;
    for (std::size_t j = mp.size(); j-- > 0;) {
      TowerElement c(sub, mp[j]);
      if (c.is_zero()) continue;
      std::string mono = j == 0 ? "" : (j == 1 ? "t" : "t^" + std::to_string(j));
      append_term(poly, c.to_string(), mono);
    }
    if (k) out += ", ";
    out += levels_[k].name + ": " + poly;
  }
  return out + ")";
}

TowerPtr TowerSpec::parse(std::string_view header) {
  std::string_view s = trim_view(header);
  if (s.substr(0, 6) == "field:") s = trim_view(s.substr(6));
  if (s == "Q" || s == "QQ") return rationals();
  if (s.size() < 3 || s[0] != 'Q' || s[1] != '(' || s.back() != ')')
    throw ParseError("expected a field header like Q(i: t^2+1), got '" + std::string(header) + "'");
  TowerPtr tower = rationals();
  for (const auto& part : split_top_level(s.substr(2, s.size() - 3))) {
    std::string_view p = trim_view(part);
    auto colon = p.find(':');
    if (colon == std::string_view::npos) throw ParseError("missing ':' in generator '" + std::string(p) + "'");
    std::string name(trim_view(p.substr(0, colon)));
    if (name == "t") throw ParseError("'t' is reserved for the polynomial variable");
    const TowerPtr base = tower;
    auto ident = [&](std::string_view id) -> UPoly {
      if (id == "t") return UPoly{base, {TowerElement(base, 0), TowerElement(base, 1)}};
      return UPoly{base, {TowerElement::generator(base, id)}};
    };
    auto constant = [&](const Rational& q) {
      UPoly r{base, {TowerElement(base, q)}};
      r.trim();
      return r;
    };
    UPoly mp = read_expression<UPoly>(p.substr(colon + 1), ident, constant);
    for (auto& c : mp.c) c = c.lift(base);
    try {
      tower = extend(base, name, mp.c);
    } catch (const std::invalid_argument& e) {
      throw ParseError(std::string("bad generator '") + name + "': " + e.what());
    }
  }
  return tower;
}

TowerElement parse_element(const TowerPtr& tower, std::string_view text) {
  auto ident = [&](std::string_view id) { return TowerElement::generator(tower, id); };
  auto constant = [&](const Rational& q) { return TowerElement(tower, q); };
  return read_expression<TowerElement>(text, ident, constant).lift(tower);
}

TowerElement pow(const TowerElement& a, int exponent) {
  if (exponent < 0) return pow(a.inverse(), -exponent);
  TowerElement result(a.tower(), 1);
  TowerElement base = a;
  for (unsigned e = static_cast<unsigned>(exponent); e; e >>= 1) {
    if (e & 1U) result *= base;
    if (e > 1) base *= base;
  }
  return result;
}

std::optional<TowerElement> sqrt_in_tower(const TowerElement& a) {
  const TowerPtr& t = a.tower();
  auto r = Kernel(*t).sqrt(t->depth(), a.coords());
  if (!r) return std::nullopt;
  return TowerElement(t, std::move(*r));
}

namespace {

// Writes |n| = k^2 * m with m squarefree; returns {k, m}.
std::pair<Integer, Integer> squarefree_split(Integer n) {
  n = abs(n);
  Integer k = 1, m = 1;
  for (Integer p = 2; p * p <= n; ++p) {
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    for (unsigned i = 0; i + 1 < e; i += 2) k *= p;
    if (e % 2) m *= p;
  }
  return {k, m * n};
}

}  // namespace

SqrtResult try_sqrt(const TowerElement& a, std::string name) {
  if (a.is_zero()) return {a, a.tower(), false};
  if (auto r = sqrt_in_tower(a)) return {*r, a.tower(), false};
  const TowerPtr& base = a.tower();
  TowerElement radicand = a;
  TowerElement scale(base, 1);
  if (a.is_rational()) {
    // sqrt(n/d) = (k/d) * sqrt(+-m) with n*d = k^2 m and m squarefree.
    Rational q = a.to_rational();
    auto [k, m] = squarefree_split(q.get_num() * q.get_den());
    Integer signed_m = q < 0 ? Integer(-m) : m;
    radicand = TowerElement(base, Rational(signed_m));
    scale = TowerElement(base, Rational(k, q.get_den()));
    if (auto r = sqrt_in_tower(radicand)) return {*r * scale, base, false};
    if (name.empty()) name = signed_m > 0 ? "r" + signed_m.get_str() : "rm" + m.get_str();
  }
  if (name.empty()) name = "s" + std::to_string(base->depth() + 1);
  while (base->find(name)) name += "p";
  TowerPtr t = extend(base, name, {-radicand, TowerElement(base, 0), TowerElement(base, 1)});
  return {TowerElement::generator(t, t->depth() - 1) * scale.lift(t), t, true};
}

std::vector<Integer> cyclotomic(unsigned n) {
  if (n == 0) throw std::invalid_argument("cyclotomic index must be positive");
  // t^n - 1 divided by Phi_d for every proper divisor d of n.
  std::vector<Integer> p(n + 1);
  p[0] = -1;
  p[n] = 1;
  for (unsigned d = 1; d < n; ++d) {
    if (n % d) continue;
    auto phi = cyclotomic(d);
    std::vector<Integer> q(p.size() - phi.size() + 1);
    for (std::size_t k = q.size(); k-- > 0;) {
      q[k] = p[k + phi.size() - 1];
      for (std::size_t j = 0; j < phi.size(); ++j) p[k + j] -= q[k] * phi[j];
    }
    p = std::move(q);
  }
  return p;
}

}  // namespace pencil
