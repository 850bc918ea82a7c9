#include "pencil/pencilcert.hpp"

#include "pencil/errors.hpp"
#include "pencil/linalg.hpp"

#include <algorithm>
#include <cctype>

namespace pencil {

void Pencil::validate() const {
  if (F.is_zero() || G.is_zero()) throw std::invalid_argument("pencil generators must be nonzero");
  if (!(*F.vars() == *G.vars())) throw std::invalid_argument("pencil generators use different variables");
  if (F.multidegree() != G.multidegree()) throw std::invalid_argument("pencil generators have different degrees");
  if (rank(coefficient_matrix({F, G})) != 2) throw std::invalid_argument("pencil generators are proportional");
  surface->check(D);
  if (auto deg = surface->form_degree(D); deg && *deg != F.multidegree())
    throw std::invalid_argument("generator degree does not represent the class " + D.to_string());
}

Form fiber_at(const Pencil& p, const TowerElement& a, const TowerElement& b) {
  if (a.is_zero() && b.is_zero()) throw std::invalid_argument("pencil parameter [0:0]");
  return p.F * a + p.G * b;
}

namespace {

std::string first_mismatch(const Form& lhs, const Form& rhs) {
  Form diff = lhs - rhs;
  if (diff.is_zero()) return {};
  const Monomial& m = diff.leading_monomial();
  std::string mono = Form::monomial(lhs.vars(), m, TowerElement(1)).to_string();
  return "coefficients differ at " + mono + ": " + lhs.coefficient(m).to_string() + " vs " +
         rhs.coefficient(m).to_string();
}

}  // namespace

CertifyOutcome certify_fiber(const Pencil& p, const TowerElement& a, const TowerElement& b,
                             const std::vector<CertFactor>& claimed, const std::optional<TowerElement>& scalar) {
  if (claimed.empty()) return {std::nullopt, "no factors claimed"};
  Form fiber = fiber_at(p, a, b);
  Form product = Form::constant(p.F.vars(), TowerElement(1));
  for (std::size_t i = 0; i < claimed.size(); ++i) {
    const CertFactor& f = claimed[i];
    std::string tag = "factor " + std::to_string(i + 1) + ": ";
    if (f.form.is_zero() || f.form.total_degree() == 0) return {std::nullopt, tag + "constant factor"};
    if (!(*f.form.vars() == *p.F.vars())) return {std::nullopt, tag + "variables differ from the pencil"};
    if (f.mult < 1) return {std::nullopt, tag + "multiplicity must be positive"};
    if (f.cls.size() != p.surface->rank()) return {std::nullopt, tag + "class has the wrong rank"};
    if (auto deg = p.surface->form_degree(f.cls); !deg || *deg != f.form.multidegree()) {
      if (p.surface->form_degree(p.D)) return {std::nullopt, tag + "degree does not match class " + f.cls.to_string()};
    }
    if (f.mult > 1 && p.surface->pair(f.cls, f.cls) < 0)
      return {std::nullopt, tag + "negative curve with multiplicity > 1"};
    product *= pow(f.form, f.mult);
  }
  TowerElement k(0);
  if (scalar) {
    k = *scalar;
  } else {
    if (fiber.is_zero()) return {std::nullopt, "the member is the zero form"};
    if (product.leading_monomial() != fiber.leading_monomial())
      return {std::nullopt, first_mismatch(fiber.monic(), product.monic())};
    k = fiber.leading_coefficient() / product.leading_coefficient();
  }
  Form scaled = product * k;
  if (!(scaled == fiber)) return {std::nullopt, first_mismatch(scaled, fiber)};
  return {FiberCertificate{a, b, claimed, k}, {}};
}

CertifyOutcome verify_certificate(const Pencil& p, const FiberCertificate& cert) {
  return certify_fiber(p, cert.a, cert.b, cert.factors, cert.scalar);
}

bool completely_reducible(const FiberCertificate& cert, const ClassSet& delta) {
  return std::all_of(cert.factors.begin(), cert.factors.end(), [&](const CertFactor& f) { return delta.count(f.cls); });
}

MutationReport mutation_check(const Pencil& p, const FiberCertificate& cert) {
  MutationReport r;
  for (std::size_t i = 0; i < cert.factors.size(); ++i) {
    for (auto& [m, c] : cert.factors[i].form.terms()) {
      FiberCertificate mutated = cert;
      Form delta = Form::monomial(cert.factors[i].form.vars(), m, TowerElement(1));
      mutated.factors[i].form = cert.factors[i].form + delta;
      ++r.mutations;
      if (!verify_certificate(p, mutated)) ++r.rejected;
    }
  }
  return r;
}

BasePointReport base_point_count(const Pencil& p, const std::vector<std::vector<TowerElement>>& points) {
  BasePointReport r;
  r.expected = p.surface->pair(p.D, p.D);
  r.supplied = points.size();
  const std::size_t n = p.F.vars()->size();
  for (auto& pt : points) {
    if (!p.F.evaluate(pt).is_zero() || !p.G.evaluate(pt).is_zero()) {
      std::string s;
      for (auto& x : pt) s += (s.empty() ? "" : ", ") + x.to_string();
      throw std::domain_error("(" + s + ") is not a base point");
    }
    Matrix grads(2);
    for (std::size_t i = 0; i < n; ++i) {
      grads[0].push_back(p.F.derivative(i).evaluate(pt));
      grads[1].push_back(p.G.derivative(i).evaluate(pt));
    }
    if (rank(grads) == 2) ++r.transversal;
  }
  return r;
}

EulerLedger euler_ledger(long long e_ambient_blowup, long long e_generic,
                         std::vector<std::pair<std::string, long long>> e_rel) {
  EulerLedger l{e_ambient_blowup, e_generic, std::move(e_rel), 0};
  l.leftover = e_ambient_blowup - 2 * e_generic;
  for (auto& [label, e] : l.e_rel) l.leftover -= e;
  return l;
}

namespace {

// Normalizes "I_3" to "I3" and validates the tag.
std::string normalize_type(std::string t) {
  t.erase(std::remove(t.begin(), t.end(), '_'), t.end());
  if (t == "II" || t == "III" || t == "IV") return t;
  if (t.size() >= 2 && t[0] == 'I' &&
      std::all_of(t.begin() + 1, t.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }) &&
      std::stoll(t.substr(1)) >= 1)
    return t;
  throw std::invalid_argument("unknown fiber type '" + t + "'");
}

long long type_euler(const std::string& t) {
  if (t == "II") return 2;
  if (t == "III") return 3;
  if (t == "IV") return 4;
  return std::stoll(t.substr(1));
}

}  // namespace

std::vector<std::string> parse_fiber_types(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  auto flush = [&] {
    std::size_t k = 0;
    while (k < cur.size() && std::isspace(static_cast<unsigned char>(cur[k]))) ++k;
    std::size_t start = k;
    while (k < cur.size() && std::isdigit(static_cast<unsigned char>(cur[k]))) ++k;
    long long count = k > start ? std::stoll(cur.substr(start, k - start)) : 1;
    std::string tag;
    for (; k < cur.size(); ++k)
      if (!std::isspace(static_cast<unsigned char>(cur[k]))) tag += cur[k];
    if (tag.empty()) throw std::invalid_argument("empty fiber type in '" + std::string(text) + "'");
    for (long long i = 0; i < count; ++i) out.push_back(tag);
    cur.clear();
  };
  for (char c : text) {
    if (c == '+') flush();
    else cur += c;
  }
  flush();
  return out;
}

KodairaBudget kodaira_budget(const std::vector<std::string>& types) {
  KodairaBudget b;
  std::vector<std::string> norm;
  for (auto& t : types) {
    auto expanded = parse_fiber_types(t);
    for (auto& e : expanded) norm.push_back(normalize_type(e));
  }
  for (auto& t : norm) b.total += type_euler(t);
  b.sums_to_twelve = b.total == 12;
  std::sort(norm.begin(), norm.end());
  // Absent from the classification of rational elliptic surfaces.
  const std::vector<std::string> excluded{"I3", "I3", "I3", "III"};
  b.exists = norm != excluded;
  return b;
}

std::pair<long long, long long> plane_genus_euler(long long d) {
  if (d < 1) throw std::invalid_argument("degree must be positive");
  long long g = (d - 1) * (d - 2) / 2;
  return {g, 2 - 2 * g};
}

}  // namespace pencil
