#include "pencil/bounds.hpp"

#include "pencil/errors.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace pencil {

void ClassCombination::validate() const {
  if (parts.empty()) throw std::invalid_argument("empty class combination");
  for (auto& p : parts) {
    surface->check(p.d);
    if (p.mult < 1) throw std::invalid_argument("multiplicities must be positive");
    if (surface->pair(p.d, p.d) < 0 && p.mult != 1)
      throw std::invalid_argument("component " + p.d.to_string() + " has negative square and multiplicity " +
                                  std::to_string(p.mult));
  }
}

NSClass ClassCombination::total() const {
  NSClass D{std::vector<long long>(surface->rank())};
  for (auto& p : parts) D += p.mult * p.d;
  return D;
}

long long ClassCombination::part_euler(const ComboPart& p) const {
  return p.euler ? *p.euler : curve_euler(*surface, p.d, {});
}

long long ClassCombination::weighted_euler() const {
  long long s = 0;
  for (auto& p : parts) s += p.mult * part_euler(p);
  return s;
}

ClassCombination parse_combination(const SurfacePtr& s, std::string_view text) {
  ClassCombination c{s, {}};
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string cls, mult, euler;
    if (!(fields >> cls)) continue;
    if (!(fields >> mult >> euler)) throw ParseError("expected '<class> <mult> <euler|smooth>': " + line);
    ComboPart p;
    p.d = s->parse_class(cls);
    try {
      p.mult = std::stoll(mult);
      if (euler != "smooth") p.euler = std::stoll(euler);
    } catch (const std::exception&) {
      throw ParseError("bad number in combination line: " + line);
    }
    c.parts.push_back(std::move(p));
  }
  try {
    c.validate();
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
  return c;
}

Rational keyineq_lhs(const ClassCombination& c) {
  c.validate();
  const SurfaceModel& s = *c.surface;
  NSClass D = c.total();
  Rational D2 = ratio(s.pair(D, D)), KD = ratio(s.pair(s.K(), D));
  Rational den = D2 + ratio(c.weighted_euler()) + KD;
  if (den == 0) throw std::domain_error("inequality vacuous: zero denominator");
  Rational num = ratio(s.euler(), 3) + D2 + Rational(2, 3) * KD;
  return Rational(num / den);
}

BoundReport rank_bound(const ClassCombination& c) {
  c.validate();
  const SurfaceModel& s = *c.surface;
  NSClass D = c.total();
  long long D2 = s.pair(D, D), KD = s.pair(s.K(), D);
  long long den = D2 + KD + c.weighted_euler();
  if (den <= 0) throw std::domain_error("bound vacuous for this combination: denominator " + std::to_string(den));
  Rational value = ratio(2 * (s.euler() + 3 * D2 + 2 * KD), den);
  BoundReport r{"rank-bound", {{"surface", s.name()}, {"D", D.to_string()}, {"D^2", std::to_string(D2)},
                               {"K.D", std::to_string(KD)}, {"sum m_i e(d_i)", std::to_string(c.weighted_euler())}},
                value, floor(value), ""};
  r.verdict = "at most " + floor(value).get_str() + " reducible members with components of these classes";
  return r;
}

BoundReport rho_upper(long long d, long long k) {
  if (k < 1) throw std::invalid_argument("k must be positive");
  long long n = d / k, d0 = d % k;
  if (d < 0 || n < 2) throw std::invalid_argument("need d = nk + d0 with n >= 2");
  Rational value(6 * big(d - 1) * big(d - 1), big(d - d0) * big(d + d0 - k));
  value.canonicalize();
  return {"rho-upper",
          {{"d", std::to_string(d)}, {"k", std::to_string(k)}, {"n", std::to_string(n)}, {"d0", std::to_string(d0)}},
          value, floor(value), "at most " + floor(value).get_str() + " fibers made of curves of degree <= k"};
}

Rational h_alpha(long long k, long long n, long long d0, const Rational& alpha) {
  if (k < 1 || n < 2 || d0 < 0 || d0 >= k) throw std::invalid_argument("need k >= 1, n >= 2, 0 <= d0 < k");
  Rational K = ratio(k), N = ratio(n), D0 = ratio(d0);
  return Rational((alpha - 6) * K * K * N * N + (12 + alpha * (2 * D0 - K)) * K * N - 6);
}

BoundReport universal_rho(long long k, long long n_cap) {
  if (k < 1) throw std::invalid_argument("k must be positive");
  BoundReport best;
  bool have = false;
  for (long long n = 2; n <= n_cap; ++n)
    for (long long d0 = 0; d0 < k; ++d0) {
      BoundReport r = rho_upper(n * k + d0, k);
      if (!have || r.floor > best.floor) {
        best = r;
        have = true;
      }
    }
  BoundReport out{"universal-rho", {{"k", std::to_string(k)}, {"n_cap", std::to_string(n_cap)}}, best.value,
                  best.floor, ""};
  for (auto& [key, v] : best.inputs)
    if (key == "d") out.inputs.emplace_back("attained_at_d", v);
  out.verdict = "at most " + best.floor.get_str() + " fibers made of curves of degree <= " + std::to_string(k);
  return out;
}

std::vector<Quadratic> k_delta_polynomials(const SurfaceModel& s, const ClassSet& delta) {
  for (auto& d : delta)
    if (!s.is_effective(d)) throw std::invalid_argument("class " + d.to_string() + " is not effective");
  auto first = std::find_if(delta.begin(), delta.end(), [&](const NSClass& d) { return s.pair(d, d) > 0; });
  if (first == delta.end()) throw std::domain_error("corollary inapplicable: no class with positive square");
  Rational correction = ratio(-s.euler(), 3);
  for (auto& d : delta) {
    long long KD = s.pair(s.K(), d);
    if (s.pair(d, d) <= 0 && KD > 0) correction += Rational(2, 3) * ratio(KD);
  }
  std::vector<Quadratic> out;
  auto make = [&](const NSClass& d, const Rational& c) {
    Rational d2 = ratio(s.pair(d, d)), KD = ratio(s.pair(s.K(), d));
    Rational b = -2 * d2 - Rational(2, 3) * KD;
    return Quadratic{d, d2, b, c};
  };
  out.push_back(make(*first, correction));
  for (auto& d : delta)
    if (d != *first && s.pair(d, d) > 0) out.push_back(make(d, 0));
  return out;
}

long long k_delta(const SurfaceModel& s, const ClassSet& delta) {
  long long K = 1;
  for (auto& f : k_delta_polynomials(s, delta)) {
    Rational disc = f.b * f.b - 4 * f.a * f.c;
    if (disc < 0) continue;
    // f has positive leading coefficient, so past the vertex it is increasing
    // and positive exactly beyond the largest root.
    Rational vertex = -f.b / (2 * f.a);
    Integer m = ceil(vertex);
    if (m == vertex && disc == 0) ++m;
    while (f.at(Rational(m)) <= 0) ++m;
    K = std::max<long long>(K, m.get_si());
  }
  return K;
}

BoundReport p1p1_bound(long long m, long long n) {
  if (n < 1 || m < n) throw std::invalid_argument("need m >= n >= 1");
  if (m * n == n) throw std::domain_error("bound undefined for mn = n");
  Rational value = ratio(3 * (2 + 3 * m * n - (m + n)), m * n - n);
  return {"p1p1-bound", {{"m", std::to_string(m)}, {"n", std::to_string(n)}}, value, floor(value),
          "at most " + floor(value).get_str() + " completely reducible fibers in bidegree (" + std::to_string(m) +
              "," + std::to_string(n) + ")"};
}

}  // namespace pencil
