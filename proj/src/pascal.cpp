#include "pencil/constructions.hpp"

#include <array>

namespace pencil {

namespace {

json point_json(const Point& p) {
  json a = json::array();
  for (auto& x : p) a.push_back(x.to_string());
  return a;
}

Point line_coeffs(const Form& line) {
  if (line.total_degree() != 1) throw std::invalid_argument("not a linear form: " + line.to_string());
  Point p;
  for (std::size_t j = 0; j < line.vars()->size(); ++j) {
    Monomial m(line.vars()->size(), 0);
    m[j] = 1;
    p.push_back(line.coefficient(m));
  }
  return p;
}

Point meet(const Form& a, const Form& b) {
  Point p = cross(line_coeffs(a), line_coeffs(b));
  if (std::all_of(p.begin(), p.end(), [](const TowerElement& x) { return x.is_zero(); }))
    throw std::invalid_argument("lines coincide: " + a.to_string());
  return p;
}

bool collinear(const Point& a, const Point& b, const Point& c) { return det3(a, b, c).is_zero(); }

// (a, b) with a*F + b*G == target, if the target lies in the pencil.
std::optional<std::pair<TowerElement, TowerElement>> pencil_param(const Form& F, const Form& G, const Form& target) {
  Matrix cols = coefficient_matrix({F, G, target});
  Matrix system(cols[0].size());
  Vector rhs;
  for (std::size_t r = 0; r < cols[0].size(); ++r) {
    system[r] = {cols[0][r], cols[1][r]};
    rhs.push_back(cols[2][r]);
  }
  auto ab = solve(system, rhs);
  if (!ab) return std::nullopt;
  return std::make_pair((*ab)[0], (*ab)[1]);
}

Form product(const std::vector<Form>& fs) {
  Form p = fs.at(0);
  for (std::size_t i = 1; i < fs.size(); ++i) p *= fs[i];
  return p;
}

}  // namespace

bool same_point(const Point& p, const Point& q) {
  if (p.size() != q.size()) return false;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (!(p[i] * q[j] - p[j] * q[i]).is_zero()) return false;
  return true;
}

Point third_intersection(const Form& cubic, const Point& p, const Point& q) {
  if (cubic.total_degree() != 3 || cubic.vars()->size() != 3) throw std::invalid_argument("need a plane cubic");
  if (same_point(p, q)) throw std::invalid_argument("third_intersection needs two distinct points");
  if (!cubic.evaluate(p).is_zero() || !cubic.evaluate(q).is_zero())
    throw std::invalid_argument("points are not on the cubic");
  auto params = VarSet::make({{"s", "t"}});
  TowerPtr tower = cubic.tower();
  for (auto& x : p) tower = common_tower(tower, x.tower());
  for (auto& x : q) tower = common_tower(tower, x.tower());
  Form s = Form::variable(params, 0, tower), t = Form::variable(params, 1, tower);
  std::vector<Form> line;
  for (std::size_t i = 0; i < 3; ++i) line.push_back(s * p[i] + t * q[i]);
  Form c = restrict(cubic, line);
  if (c.is_zero()) throw std::invalid_argument("the line through the points lies on the cubic");
  auto rest = divide_exact(c, s * t);
  if (!rest) throw std::logic_error("restricted cubic does not vanish at both points");
  TowerElement alpha = rest->coefficient({1, 0}), beta = rest->coefficient({0, 1});
  Point out;
  for (std::size_t i = 0; i < 3; ++i) out.push_back(beta * p[i] - alpha * q[i]);
  return out;
}

PascalConfig pascal_build(const Form& cubic, const std::vector<Point>& Q, const Point& P1) {
  if (Q.size() != 3) throw std::invalid_argument("need three points Q1, Q2, Q3");
  PascalConfig c{cubic, {P1}, Q};
  const std::size_t chain[5] = {0, 1, 2, 0, 1};
  for (std::size_t k : chain) c.P.push_back(third_intersection(cubic, c.P.back(), Q[k]));
  return c;
}

std::vector<ReportItem> pascal_verify(const PascalConfig& config, const std::string& prefix) {
  std::vector<ReportItem> out;
  const auto& P = config.P;
  const auto& Q = config.Q;
  std::vector<Point> all = P;
  all.insert(all.end(), Q.begin(), Q.end());

  bool on = true, smooth = true, distinct = true;
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (!config.cubic.evaluate(all[i]).is_zero()) on = false;
    else if (jacobian_vanishes_at({config.cubic}, all[i])) smooth = false;
    for (std::size_t j = 0; j < i; ++j)
      if (same_point(all[i], all[j])) distinct = false;
  }
  out.push_back(item(prefix + ".on-cubic", "nine distinct smooth points of the cubic", on && smooth && distinct,
                     {{"cubic", config.cubic.to_string()}, {"on", on}, {"smooth", smooth}, {"distinct", distinct}}));

  auto triples = [&](const std::vector<std::array<const Point*, 3>>& ts, const std::vector<std::string>& names) {
    json d = json::object();
    bool ok = true;
    for (std::size_t i = 0; i < ts.size(); ++i) {
      bool c = collinear(*ts[i][0], *ts[i][1], *ts[i][2]);
      ok = ok && c;
      d[names[i]] = c;
    }
    return std::make_pair(ok, d);
  };
  auto [r1, d1] = triples({{&P[0], &P[1], &Q[0]}, {&P[3], &P[4], &Q[0]}, {&P[1], &P[2], &Q[1]},
                           {&P[4], &P[5], &Q[1]}, {&P[2], &P[3], &Q[2]}, {&P[0], &P[5], &Q[2]}},
                          {"P1P2Q1", "P4P5Q1", "P2P3Q2", "P5P6Q2", "P3P4Q3", "P1P6Q3"});
  out.push_back(item(prefix + ".chords", "six chord collinearities through the Q points", r1, d1));

  Matrix conic(6);
  for (std::size_t i = 0; i < 6; ++i) {
    const auto& p = P[i];
    conic[i] = {p[0] * p[0], p[1] * p[1], p[2] * p[2], p[0] * p[1], p[0] * p[2], p[1] * p[2]};
  }
  bool on_conic = determinant(conic).is_zero();
  bool q_line = collinear(Q[0], Q[1], Q[2]);
  out.push_back(item(prefix + ".pascal", "P1..P6 lie on a conic and Q1, Q2, Q3 are collinear", on_conic && q_line,
                     {{"conic_rank", rank(conic)}, {"q_collinear", q_line}}));

  auto [r3, d3] = triples({{&P[0], &P[3], &Q[1]}, {&P[1], &P[4], &Q[2]}, {&P[2], &P[5], &Q[0]}},
                          {"P1P4Q2", "P2P5Q3", "P3P6Q1"});
  out.push_back(item(prefix + ".diagonals", "three diagonal collinearities", r3, d3));

  Form h = hessian(config.cubic);
  json flex = json::array();
  bool all_flex = true;
  for (auto& q : Q) {
    bool f = h.evaluate(q).is_zero();
    all_flex = all_flex && f;
    flex.push_back(f);
  }
  out.push_back(item(prefix + ".inflection", "Q1, Q2, Q3 are inflection points", all_flex, {{"flex", flex}}));
  return out;
}

PascalConfig pascal_from_lines(const PascalLines& lines, const Form& cubic) {
  if (lines.first.size() != 3 || lines.second.size() != 3) throw std::invalid_argument("need three lines in each cubic");
  // The partner of a line of the first cubic: the line of the second meeting it on L.
  auto partner = [&](const Form& a) -> std::size_t {
    for (std::size_t j = 0; j < 3; ++j)
      if (lines.line.evaluate(meet(a, lines.second[j])).is_zero()) return j;
    throw std::invalid_argument("no partner on L for " + a.to_string());
  };
  std::vector<std::size_t> match(3);
  for (std::size_t i = 0; i < 3; ++i) match[i] = partner(lines.first[i]);
  std::size_t l45 = match[0];
  auto first_of = [&](std::size_t b) {
    for (std::size_t i = 0; i < 3; ++i)
      if (match[i] == b) return i;
    throw std::invalid_argument("lines of the two cubics do not pair up on L");
  };
  // The two remaining lines of the second cubic can play L16 or L23; prefer the
  // labelling whose diagonals are concurrent with the Q points.
  std::optional<PascalConfig> fallback;
  for (std::size_t l16 : {std::size_t{0}, std::size_t{1}, std::size_t{2}}) {
    if (l16 == l45) continue;
    std::size_t l23 = 3 - l45 - l16;
    const Form& L12 = lines.first[0];
    const Form& L34 = lines.first[first_of(l16)];
    const Form& L56 = lines.first[first_of(l23)];
    const Form& L45 = lines.second[l45];
    const Form& L16 = lines.second[l16];
    const Form& L23 = lines.second[l23];
    PascalConfig c{cubic, {}, {}};
    c.P = {meet(L12, L16), meet(L12, L23), meet(L23, L34), meet(L34, L45), meet(L45, L56), meet(L56, L16)};
    c.Q = {meet(L12, L45), meet(L23, L56), meet(L34, L16)};
    if (collinear(c.P[0], c.P[3], c.Q[1]) && collinear(c.P[1], c.P[4], c.Q[2]) && collinear(c.P[2], c.P[5], c.Q[0]))
      return c;
    if (!fallback) fallback = c;
  }
  return *fallback;
}

Form HesseP1P1Data::pullback(const Form& f) const { return substitute(f, cover_images); }

HesseP1P1Data hesse_build() {
  HesseP1P1Data d;
  d.tower = TowerSpec::parse("Q(r3: t^2 - 3)");
  d.plane_vars = VarSet::parse("[x,y,z]");
  d.cover_vars = VarSet::parse("[u,v;s,t]");
  auto plane = [&](const char* s) { return parse_form(d.plane_vars, d.tower, s); };
  auto cover = [&](const char* s) { return parse_form(d.cover_vars, d.tower, s); };
  d.plane.first = {plane("2*y - r3*z"), plane("r3*x + y + r3*z"), plane("-r3*x + y + r3*z")};
  d.plane.second = {plane("2*y + r3*z"), plane("r3*x + y - r3*z"), plane("-r3*x + y - r3*z")};
  d.plane.third = {plane("3*x - r3*y"), plane("3*x + r3*y"), plane("y")};
  d.plane.conic = plane("x^2 + y^2 - z^2");
  d.plane.line = plane("z");
  d.cover_images = {cover("2*u*t + 2*v*s"), cover("u*s - v*t"), cover("u*s + v*t")};
  d.branch_conic = plane("x^2 + 4*y^2 - 4*z^2");
  return d;
}

PascalLines pascal_generic_example(const TowerPtr& tower, const VarSetPtr& plane_vars) {
  auto f = [&](const char* s) { return parse_form(plane_vars, tower, s); };
  PascalLines l;
  l.first = {f("2*y + (2 - 2*r3)*z"), f("r3*x + y + r3*z"), f("-r3*x + y + r3*z")};
  l.second = {f("2*y + 2*z"), f("r3*x + y - r3*z"), f("-r3*x + y - r3*z")};
  l.third = {f("r3*x - y - (2 - r3)*z"), f("r3*x + y + (2 - r3)*z"), f("y")};
  l.conic = f("3*x^2 + 3*y^2 - 3*z^2 + 2*(2 - r3)*y*z");
  l.line = f("z");
  return l;
}

namespace {

// Relations among the four special members and the Pascal checks for one configuration.
std::vector<ReportItem> configuration_items(const PascalLines& l, const std::string& prefix) {
  std::vector<ReportItem> out;
  Form C1 = product(l.first), C2 = product(l.second), C3 = product(l.third), QL = l.conic * l.line;
  auto p3 = pencil_param(C1, C2, C3);
  auto pq = pencil_param(C1, C2, QL);
  json d = json::object();
  std::size_t rank3 = rank(coefficient_matrix({C1, C2, C3})), rank_ql = rank(coefficient_matrix({C1, C2, QL}));
  d["rank_C1_C2_C3"] = rank3;
  d["rank_C1_C2_QL"] = rank_ql;
  if (p3) d["C3"] = point_json({p3->first, p3->second});
  if (pq) d["QL"] = point_json({pq->first, pq->second});
  out.push_back(item(prefix + ".members", "C3 and Q*L lie in the pencil spanned by C1 and C2",
                     p3 && pq && rank3 == 2 && rank_ql == 2, d));

  Form cubic = C1 + C2 * TowerElement(2);
  PascalConfig config = pascal_from_lines(l, cubic);
  auto checks = pascal_verify(config, prefix);
  out.insert(out.end(), checks.begin(), checks.end());

  bool rebuilt = true;
  try {
    PascalConfig again = pascal_build(cubic, config.Q, config.P[0]);
    for (std::size_t i = 0; i < 6; ++i) rebuilt = rebuilt && same_point(again.P[i], config.P[i]);
  } catch (const std::invalid_argument&) {
    rebuilt = false;
  }
  json pts = json::object();
  for (std::size_t i = 0; i < 6; ++i) pts["P" + std::to_string(i + 1)] = point_json(config.P[i]);
  for (std::size_t i = 0; i < 3; ++i) pts["Q" + std::to_string(i + 1)] = point_json(config.Q[i]);
  out.push_back(item(prefix + ".chain", "P2..P6 are recovered from P1 and the Q points by third intersections", rebuilt,
                     pts));
  return out;
}

struct BinarySplit {
  std::vector<Form> factors;
};

// Splits a form in the monomials X = u*t, Y = v*s (a binary quadratic in X, Y) into two (1,1) forms.
std::optional<BinarySplit> split_in_ut_vs(const Form& f, const VarSetPtr& vars) {
  auto tower = f.tower();
  Form X = parse_form(vars, tower, "u*t"), Y = parse_form(vars, tower, "v*s");
  TowerElement a = f.coefficient({2, 0, 0, 2}), b = f.coefficient({1, 1, 1, 1}), c = f.coefficient({0, 2, 2, 0});
  if (!(X * X * a + X * Y * b + Y * Y * c == f) || a.is_zero()) return std::nullopt;
  auto root = try_sqrt(b * b - TowerElement(4) * a * c);
  TowerElement two_a = TowerElement(2) * a;
  TowerElement r1 = (-b + root.root) / two_a, r2 = (-b - root.root) / two_a;
  return BinarySplit{{X.lift(root.tower) - Y * r1, X.lift(root.tower) - Y * r2}};
}

json compare_printed(const Form& recomputed, const Form& printed) {
  auto k = proportionality(recomputed, printed);
  json d = {{"printed", printed.to_string()}, {"recomputed", recomputed.to_string()}, {"agrees", k.has_value()}};
  if (k) d["scalar"] = k->to_string();
  return d;
}

}  // namespace

ConstructionResult hesse_certify(const HesseP1P1Data& data) {
  ConstructionResult out;
  const auto& l = data.plane;
  auto cover = data.cover_vars;

  Form ram = data.pullback(data.branch_conic);
  Form expected = parse_form(cover, data.tower, "4*(u*t - v*s)^2");
  auto sq = square_root_up_to_scalar(ram);
  out.items.push_back(item("hesse.ramification", "the branch conic pulls back to 4 times a square", ram == expected && sq,
                           {{"pullback", ram.to_string()},
                            {"root", sq ? sq->root.to_string() : ""},
                            {"scalar", sq ? sq->scalar.to_string() : ""}}));

  // Bitangency: the z-resultant of the branch conic and Q is a perfect square.
  Form res = resultant(data.branch_conic, l.conic, 2);
  auto res_root = square_root_up_to_scalar(res);
  Matrix gram(3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      gram[i].push_back(data.branch_conic.derivative(i).derivative(j).evaluate({0, 0, 0}));
  bool branch_smooth = !determinant(gram).is_zero();
  out.items.push_back(item("hesse.bitangent", "the smooth branch conic is bitangent to Q",
                           res_root.has_value() && branch_smooth && !res.is_zero(),
                           {{"resultant", res.to_string()}, {"branch_smooth", branch_smooth}}));

  Form C1 = product(l.first), C2 = product(l.second), C3 = product(l.third), QL = l.conic * l.line;
  auto rel_diff = proportionality(C1 - C2, QL);
  auto rel_sum = proportionality(C1 + C2, C3);
  out.items.push_back(item("hesse.relations", "C1 - C2 is proportional to Q*L and C1 + C2 to C3",
                           rel_diff.has_value() && rel_sum.has_value(),
                           {{"C1-C2 / QL", rel_diff ? rel_diff->to_string() : "none"},
                            {"C1+C2 / C3", rel_sum ? rel_sum->to_string() : "none"}}));

  auto cfg2 = configuration_items(l, "hesse.config");
  out.items.insert(out.items.end(), cfg2.begin(), cfg2.end());
  auto generic = pascal_generic_example(data.tower, data.plane_vars);
  auto cfg1 = configuration_items(generic, "hesse.generic-config");
  out.items.insert(out.items.end(), cfg1.begin(), cfg1.end());

  auto p1p1 = SurfaceModel::p1xp1();
  Pencil pencil{p1p1, data.pullback(C1), data.pullback(C2), NSClass{{3, 3}}};
  pencil.validate();
  const NSClass diag{{1, 1}};
  const ClassSet delta{NSClass{{1, 0}}, NSClass{{0, 1}}, diag};

  struct Member {
    std::string label;
    Form plane;
    std::vector<Form> cover_factors;
  };
  std::vector<Member> members;
  auto pulled = [&](const std::vector<Form>& fs) {
    std::vector<Form> out;
    for (auto& f : fs) out.push_back(data.pullback(f));
    return out;
  };
  members.push_back({"C1", C1, pulled(l.first)});
  members.push_back({"C2", C2, pulled(l.second)});
  members.push_back({"C3", C3, pulled(l.third)});
  Form q_pulled = data.pullback(l.conic);
  auto q_split = split_in_ut_vs(q_pulled, cover);
  out.items.push_back(item("hesse.conic-split", "the pullback of Q splits into two (1,1) forms", q_split.has_value(),
                           {{"pullback", q_pulled.to_string()}}));
  if (q_split) {
    auto fs = q_split->factors;
    fs.push_back(data.pullback(l.line));
    members.push_back({"QL", QL, fs});
  }

  std::size_t complete = 0;
  for (std::size_t n = 0; n < members.size(); ++n) {
    auto& m = members[n];
    auto ab = pencil_param(C1, C2, m.plane);
    std::string id = "hesse.fiber." + std::to_string(n + 1);
    if (!ab) {
      out.items.push_back(item(id, m.label + " lies in the pencil", false));
      continue;
    }
    std::vector<CertFactor> factors;
    for (auto& f : m.cover_factors) factors.push_back({f, 1, diag});
    auto outcome = certify_fiber(pencil, ab->first, ab->second, factors);
    json det = {{"member", m.label}, {"param", point_json({ab->first, ab->second})}};
    json fs = json::array();
    for (auto& f : m.cover_factors) fs.push_back(f.to_string());
    det["factors"] = fs;
    bool ok = outcome.cert.has_value();
    if (ok) {
      bool cr = completely_reducible(*outcome.cert, delta);
      det["completely_reducible"] = cr;
      if (cr) ++complete;
      ok = cr;
      out.certificates.push_back({id, pencil, *outcome.cert});
    } else {
      det["reason"] = outcome.failure;
    }
    out.items.push_back(item(id, "the pullback of " + m.label + " is a union of (1,1) curves", ok, det));
  }
  out.items.push_back(item("hesse.count", "four completely reducible members of the (3,3) pencil", complete == 4,
                           {{"completely_reducible", complete}}));

  // The printed factorizations, compared with the recomputed members.
  TowerPtr wide = q_split ? q_split->factors[0].tower() : data.tower;
  auto printed = [&](const char* s) { return parse_form(cover, wide, s); };
  out.items.push_back(item("hesse.printed.C1", "comparison with the displayed factorization of the first member", true,
                           compare_printed(pencil.F.lift(wide),
                                           printed("(6*u*t + 6*v*s - (3 + r3)*u*s - (3 - r3)*v*t)*"
                                                   "(6*u*t + 6*v*s + (3 + r3)*u*s + (3 - r3)*v*t)*"
                                                   "(v*t - (7 - 4*r3)*u*s)"))));
  out.items.push_back(item("hesse.printed.C2", "comparison with the displayed factorization of the second member", true,
                           compare_printed(pencil.G.lift(wide),
                                           printed("(6*u*t + 6*v*s - (3 - r3)*u*s - (3 + r3)*v*t)*"
                                                   "(6*u*t + 6*v*s + (3 - r3)*u*s + (3 + r3)*v*t)*"
                                                   "(v*t - (7 + 4*r3)*u*s)"))));
  out.items.push_back(item("hesse.printed.C3", "comparison with the displayed factorization of the third member", true,
                           compare_printed(data.pullback(C3).lift(wide),
                                           printed("(6*u*t + 6*v*s - r3*u*s + r3*v*t)*"
                                                   "(6*u*t + 6*v*s + r3*u*s - r3*v*t)*(u*s - v*t)"))));
  if (q_split)
    out.items.push_back(item("hesse.printed.Q", "comparison with the displayed factorization of the conic", true,
                             compare_printed(q_pulled.lift(wide),
                                             printed("(2*u*t - (1 - rm3)*v*s)*(2*u*t - (1 + rm3)*v*s)"))));

  json budgets = json::object();
  bool budgets_ok = true;
  for (const char* types : {"I1+I2+3I3", "I2+2I3+IV", "4I3"}) {
    auto b = kodaira_budget({types});
    budgets[types] = b.total;
    budgets_ok = budgets_ok && b.sums_to_twelve && b.exists;
  }
  auto excluded = kodaira_budget({"3I3+III"});
  budgets["3I3+III"] = excluded.total;
  out.items.push_back(item("hesse.kodaira", "the three configurations have Euler budget 12; 3I3+III is excluded",
                           budgets_ok && excluded.sums_to_twelve && !excluded.exists, budgets));
  return out;
}

}  // namespace pencil
