#include "pencil/constructions.hpp"

#include <algorithm>

namespace pencil {

namespace {

bool distinct(std::vector<Rational> v) {
  std::sort(v.begin(), v.end());
  return std::adjacent_find(v.begin(), v.end()) == v.end();
}

}  // namespace

ConstructionResult sfg_certify(const SfgData& data) {
  const unsigned d = data.d;
  if (d < 1) throw std::invalid_argument("degree must be positive");
  if (data.f_roots.size() != d || data.g_roots.size() != d)
    throw std::invalid_argument("need exactly d roots for f and for g");
  if (!distinct(data.f_roots)) throw std::invalid_argument("f has a repeated root");
  if (!distinct(data.g_roots)) throw std::invalid_argument("g has a repeated root");

  ConstructionResult out;
  auto Q = TowerSpec::rationals();
  auto space = VarSet::parse("[x,y,z,t]");
  auto plane = VarSet::parse("[w,z,t]");
  auto var = [&](const VarSetPtr& vs, const char* name) { return Form::variable(vs, name, Q); };
  auto binary = [](const Form& a, const Form& b, const std::vector<Rational>& roots) {
    Form p = a - b * TowerElement(roots[0]);
    for (std::size_t i = 1; i < roots.size(); ++i) p *= a - b * TowerElement(roots[i]);
    return p;
  };
  Form surface = binary(var(space, "x"), var(space, "y"), data.f_roots) -
                 binary(var(space, "z"), var(space, "t"), data.g_roots);

  // Each hyperplane x = a*y through the line x = y = 0, in coordinates (w, z, t), cuts
  // f(a,1) w^d - g(z,t): a member of the plane pencil spanned by w^d and -g.
  Form g = binary(var(plane, "z"), var(plane, "t"), data.g_roots);
  Pencil pencil{SurfaceModel::p2(), pow(var(plane, "w"), d), -g, NSClass{{static_cast<long long>(d)}}};
  pencil.validate();

  std::vector<CertFactor> lines;
  for (auto& b : data.g_roots) lines.push_back({var(plane, "z") - var(plane, "t") * TowerElement(b), 1, NSClass{{1}}});

  std::size_t certified = 0;
  for (std::size_t i = 0; i < d; ++i) {
    const Rational& a = data.f_roots[i];
    Form w = var(plane, "w");
    Form section = substitute(surface, {w * TowerElement(a), w, var(plane, "z"), var(plane, "t")});
    std::string id = "sfg.fiber." + std::to_string(i + 1);
    Form hyperplane = var(space, "x") - var(space, "y") * TowerElement(a);
    json det = {{"hyperplane", hyperplane.to_string()}, {"section", section.to_string()}};
    bool restricted_ok = section == fiber_at(pencil, 0, 1);
    auto outcome = certify_fiber(pencil, 0, 1, lines);
    if (outcome && restricted_ok) {
      ++certified;
      out.certificates.push_back({id, pencil, *outcome.cert});
    } else if (!outcome) {
      det["reason"] = outcome.failure;
    } else {
      det["reason"] = "hyperplane section is not -g";
    }
    out.items.push_back(item(id, "the hyperplane section is a union of d lines", outcome && restricted_ok, det));
  }
  out.items.push_back(item("sfg.count", "at least d completely reducible members", certified == d,
                           {{"d", d}, {"certified", certified}}));

  auto params = VarSet::parse("[s,r]");
  Form s = var(params, "s"), r = var(params, "r");
  std::size_t on_surface = 0;
  json off = json::array();
  for (auto& a : data.f_roots)
    for (auto& b : data.g_roots) {
      if (substitute(surface, {s * TowerElement(a), s, r * TowerElement(b), r}).is_zero()) ++on_surface;
      else off.push_back("[" + to_string(a) + ":1:0:0]-[0:0:" + to_string(b) + ":1]");
    }
  if (!off.empty()) throw ConstructionError("lines off the surface: " + off.dump());
  out.items.push_back(item("sfg.lines", "the d^2 lines joining the roots lie on the surface", on_surface == d * d,
                           {{"lines", on_surface}, {"surface", surface.to_string()}}));
  return out;
}

ConstructionResult cubic27_certify(const NSClass& line) {
  auto cubic = SurfaceModel::cubic27();
  cubic->check(line);
  auto all = cubic_lines();
  if (std::find(all.begin(), all.end(), line) == all.end())
    throw std::invalid_argument(line.to_string() + " is not the class of a line");
  ConstructionResult out;
  NSClass residual = cubic->H() - line;

  auto pairs = line_pairs_residual(*cubic, line);
  json listed = json::array();
  bool pairs_ok = true;
  for (auto& [a, b] : pairs) {
    listed.push_back({a.to_string(), b.to_string()});
    pairs_ok = pairs_ok && a + b == residual && cubic->pair(a, b) == 1 && cubic->pair(a, a) == -1 &&
               cubic->pair(b, b) == -1;
  }
  out.items.push_back(item("cubic27.pairs", "the conic pencil residual to a line has 5 members splitting into two lines",
                           pairs_ok && pairs.size() == 5,
                           {{"line", line.to_string()}, {"residual", residual.to_string()}, {"pairs", listed}}));

  if (!pairs.empty()) {
    ClassCombination combo{cubic, {{pairs[0].first, 1, std::nullopt}, {pairs[0].second, 1, std::nullopt}}};
    auto bound = rank_bound(combo);
    out.items.push_back(item("cubic27.rank-bound", "the bound on completely reducible members equals 5",
                             bound.value == Rational(5), to_json(bound)));
  }

  ClassSet lines(all.begin(), all.end());
  auto sat = is_saturated(*cubic, lines);
  json det = {{"classes", lines.size()}};
  if (sat.witness) det["witness"] = {sat.witness->first.to_string(), sat.witness->second.to_string()};
  out.items.push_back(item("cubic27.saturated", "the 27 line classes form a saturated set", sat.saturated, det));
  return out;
}

}  // namespace pencil
