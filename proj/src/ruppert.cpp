#include "pencil/constructions.hpp"

#include <random>

namespace pencil {

namespace {

const std::size_t kPairs[3][2] = {{0, 1}, {1, 2}, {2, 0}};

json point_json(const Point& p) {
  json a = json::array();
  for (auto& x : p) a.push_back(x.to_string());
  return a;
}

Form plane_divisor(const RuppertNet& net, std::size_t a, std::size_t b, unsigned k) {
  TowerElement coef = pow(net.zeta, -static_cast<int>(k));
  return Form::variable(net.plane_vars, a, net.tower) - Form::variable(net.plane_vars, b, net.tower) * coef;
}

}  // namespace

Form RuppertNet::member(const Point& lambda) const {
  std::vector<Form> images;
  for (std::size_t i = 0; i < 3; ++i) images.push_back(Form::constant(plane_vars, lambda.at(i)));
  for (std::size_t i = 0; i < 3; ++i) images.push_back(Form::variable(plane_vars, i, tower));
  return substitute(F, images);
}

RuppertNet ruppert_build(unsigned d) {
  if (d < 2) throw std::invalid_argument("Ruppert nets need d >= 2");
  RuppertNet net;
  net.d = d;
  const unsigned order = d - 1;
  if (order <= 2) {
    net.tower = TowerSpec::rationals();
    net.zeta = TowerElement(order == 1 ? 1 : -1);
  } else {
    std::vector<TowerElement> phi;
    for (auto& c : cyclotomic(order)) phi.emplace_back(Rational(c));
    net.tower = extend(TowerSpec::rationals(), "z" + std::to_string(order), phi);
    net.zeta = TowerElement::generator(net.tower, std::size_t{0});
  }
  net.lambda_vars = VarSet::make({{"l0", "l1", "l2"}});
  net.plane_vars = VarSet::make({{"x0", "x1", "x2"}});
  net.net_vars = VarSet::make({{"l0", "l1", "l2"}, {"x0", "x1", "x2"}});

  auto var = [&](const VarSetPtr& vs, std::size_t i) { return Form::variable(vs, i, net.tower); };
  net.F = Form(net.net_vars, net.tower);
  for (std::size_t a = 0; a < 3; ++a) {
    std::size_t b = (a + 1) % 3, c = (a + 2) % 3;
    net.F += var(net.net_vars, a) * var(net.net_vars, 3 + a) *
             (pow(var(net.net_vars, 3 + b), order) - pow(var(net.net_vars, 3 + c), order));
  }
  net.S = Form::constant(net.lambda_vars, TowerElement(net.tower, 1));
  for (auto& [a, b] : kPairs) net.S *= pow(var(net.lambda_vars, a), order) - pow(var(net.lambda_vars, b), order);
  return net;
}

LineDivision ruppert_line_divides(const RuppertNet& net, std::size_t a, std::size_t b, unsigned k) {
  if (a > 2 || b > 2 || a == b) throw std::invalid_argument("need two distinct coordinate indices");
  if (!pow(net.zeta, static_cast<int>(net.d - 1)).is_one()) throw std::logic_error("zeta is not a root of unity");
  std::size_t c = 3 - a - b;
  // The free parameter of the locus l_a = zeta^k l_b becomes the variables p, q.
  auto locus = VarSet::make({{"p", "q"}, {"x0", "x1", "x2"}});
  auto var = [&](std::size_t i) { return Form::variable(locus, i, net.tower); };
  std::vector<Form> images(6, Form(locus, net.tower));
  images[a] = var(0) * pow(net.zeta, static_cast<int>(k));
  images[b] = var(0);
  images[c] = var(1);
  for (std::size_t i = 0; i < 3; ++i) images[3 + i] = var(2 + i);
  Form restricted = substitute(net.F, images);
  LineDivision out{a, b, k, var(2 + a) - var(2 + b) * pow(net.zeta, -static_cast<int>(k)), std::nullopt};
  out.cofactor = divide_exact(restricted, out.divisor);
  return out;
}

std::vector<std::pair<LineDivision, Point>> ruppert_factor_lines(const RuppertNet& net) {
  std::vector<std::pair<LineDivision, Point>> out;
  for (auto& [a, b] : kPairs) {
    for (unsigned k = 0; k + 1 < net.d; ++k) {
      Point line(3, TowerElement(net.tower, 0));
      line[a] = TowerElement(net.tower, 1);
      line[b] = -pow(net.zeta, static_cast<int>(k));
      out.emplace_back(ruppert_line_divides(net, a, b, k), line);
    }
  }
  return out;
}

ConstructionResult ruppert_certify(const RuppertNet& net, const std::vector<long long>& line, std::uint64_t seed) {
  if (line.size() != 3 || (line[0] == 0 && line[1] == 0 && line[2] == 0))
    throw std::invalid_argument("the pencil line needs three coefficients, not all zero");
  ConstructionResult out;
  const unsigned d = net.d;
  Point L;
  for (auto c : line) L.emplace_back(Rational(big(c)));

  auto factors = ruppert_factor_lines(net);
  auto name = [](const LineDivision& f) {
    return "l" + std::to_string(f.a) + " - zeta^" + std::to_string(f.k) + "*l" + std::to_string(f.b);
  };

  // General position: L meets the factor lines of S in pairwise distinct points.
  std::vector<Point> meets;
  for (auto& [f, ell] : factors) {
    Point p = cross(L, ell);
    if (std::all_of(p.begin(), p.end(), [](const TowerElement& x) { return x.is_zero(); }))
      throw std::invalid_argument("pencil line coincides with the factor " + name(f) + " of S");
    meets.push_back(p);
  }
  for (std::size_t i = 0; i < meets.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (same_point(meets[i], meets[j]))
        throw std::invalid_argument("pencil line passes through the intersection of factors " + name(factors[j].first) +
                                    " and " + name(factors[i].first));

  Form S_check = Form::constant(net.lambda_vars, TowerElement(net.tower, 1));
  for (auto& [f, ell] : factors) {
    Form lin(net.lambda_vars, net.tower);
    for (std::size_t i = 0; i < 3; ++i) lin += Form::variable(net.lambda_vars, i, net.tower) * ell[i];
    S_check *= lin;
  }
  out.items.push_back(item("ruppert.S-factors", "S splits into 3(d-1) linear factors",
                           S_check == net.S && factors.size() == 3 * (d - 1),
                           {{"S", net.S.to_string()}, {"factor_count", factors.size()}}));

  bool all_divide = std::all_of(factors.begin(), factors.end(), [](auto& f) { return f.first.cofactor.has_value(); });
  json division_details = json::array();
  for (auto& [f, ell] : factors)
    division_details.push_back({{"locus", name(f)}, {"divisor", f.divisor.to_string()}, {"divides", f.cofactor.has_value()}});
  out.items.push_back(item("ruppert.line-divides", "on each factor locus of S the member contains a line", all_divide,
                           {{"loci", division_details}}));

  auto basis = nullspace(Matrix{L});
  Pencil pencil{SurfaceModel::p2(), net.member(basis[0]), net.member(basis[1]), NSClass{{static_cast<long long>(d)}}};
  pencil.validate();
  Matrix M(3);
  for (std::size_t i = 0; i < 3; ++i) M[i] = {basis[0][i], basis[1][i]};

  std::size_t certified = 0;
  for (std::size_t j = 0; j < factors.size(); ++j) {
    const auto& f = factors[j].first;
    auto ab = solve(M, meets[j]);
    if (!ab) throw std::logic_error("intersection point is not on the pencil line");
    Form fiber = fiber_at(pencil, (*ab)[0], (*ab)[1]);
    Form divisor = plane_divisor(net, f.a, f.b, f.k);
    auto cofactor = divide_exact(fiber, divisor);
    std::string id = "ruppert.fiber." + std::to_string(j + 1);
    if (!cofactor) {
      out.items.push_back(item(id, "reducible member on " + name(f), false, {{"reason", "line does not divide member"}}));
      continue;
    }
    auto outcome = certify_fiber(pencil, (*ab)[0], (*ab)[1],
                                 {{divisor, 1, NSClass{{1}}}, {*cofactor, 1, NSClass{{static_cast<long long>(d) - 1}}}});
    json det = {{"locus", name(f)}, {"lambda", point_json(meets[j])}, {"param", point_json(*ab)}};
    if (outcome) {
      ++certified;
      det["line"] = divisor.to_string();
      out.certificates.push_back({id, pencil, *outcome.cert});
    } else {
      det["reason"] = outcome.failure;
    }
    out.items.push_back(item(id, "reducible member on " + name(f), outcome.cert.has_value(), det));
  }
  out.items.push_back(item("ruppert.count", "a generic pencil of the net has exactly 3(d-1) reducible members",
                           certified == 3 * (d - 1), {{"d", d}, {"certified", certified}, {"expected", 3 * (d - 1)}}));

  // Base points of the net: the coordinate points and [1:zeta^i:zeta^j].
  std::vector<Point> base;
  for (std::size_t i = 0; i < 3; ++i) {
    Point p(3, TowerElement(net.tower, 0));
    p[i] = TowerElement(net.tower, 1);
    base.push_back(p);
  }
  for (unsigned i = 0; i + 1 < d; ++i)
    for (unsigned j = 0; j + 1 < d; ++j)
      base.push_back({TowerElement(net.tower, 1), pow(net.zeta, static_cast<int>(i)), pow(net.zeta, static_cast<int>(j))});
  auto bp = base_point_count(pencil, base);
  out.items.push_back(item("ruppert.base-points", "(d-1)^2+3 listed base points, at most D^2",
                           bp.supplied == (d - 1) * (d - 1) + 3 && static_cast<long long>(bp.supplied) <= bp.expected,
                           {{"listed", bp.supplied}, {"D^2", bp.expected}, {"transversal", bp.transversal}}));

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coef(-50, 50);
  int alpha = 0, beta = 0;
  while (alpha == 0 && beta == 0) {
    alpha = coef(rng);
    beta = coef(rng);
  }
  Form sample = fiber_at(pencil, TowerElement(alpha), TowerElement(beta));
  std::size_t smooth = 0;
  for (auto& p : base)
    if (!jacobian_vanishes_at({sample}, p)) ++smooth;
  out.items.push_back(item("ruppert.sampled-smoothness", "a sampled member is smooth at every base point",
                           smooth == base.size(),
                           {{"seed", seed}, {"param", {alpha, beta}}, {"smooth_at", smooth}, {"base_points", base.size()}}));
  return out;
}

}  // namespace pencil
