#include "pencil/constructions.hpp"

namespace pencil {

namespace {

json point_json(const Point& p) {
  json a = json::array();
  for (auto& x : p) a.push_back(x.to_string());
  return a;
}

std::vector<Form> factor_forms(const std::vector<CertFactor>& fs) {
  std::vector<Form> out;
  for (auto& f : fs) out.push_back(f.form);
  return out;
}

// Coefficient of U_i U_j (i <= j) in a form of the squares U_i = u_i^2.
TowerElement square_coef(const Form& q, std::size_t i, std::size_t j) {
  Monomial m(3, 0);
  m[i] += 2;
  m[j] += 2;
  return q.coefficient(m);
}

Form U(const VarSetPtr& vars, std::size_t i, const TowerPtr& t) {
  Form v = Form::variable(vars, i, t);
  return v * v;
}

// The factorization of a ternary quadratic form in U of rank <= 2 into linear factors in U.
std::optional<ConicSplit> invariant_split(const Form& q, const std::vector<std::vector<TowerElement>>& c) {
  auto vars = q.vars();
  auto tower = q.tower();
  for (std::size_t i = 0; i < 3; ++i) {
    if (c[i][i].is_zero()) continue;
    std::size_t j = (i + 1) % 3, k = (i + 2) % 3;
    // q / c_ii = (U_i + l)^2 - R with l = (c_ij U_j + c_ik U_k) / (2 c_ii).
    TowerElement inv = c[i][i].inverse();
    TowerElement lj = c[i][j] * inv / TowerElement(2), lk = c[i][k] * inv / TowerElement(2);
    TowerElement alpha = lj * lj - c[j][j] * inv;
    TowerElement beta = TowerElement(2) * lj * lk - c[j][k] * inv;
    TowerElement gamma = lk * lk - c[k][k] * inv;
    if (!(beta * beta - TowerElement(4) * alpha * gamma).is_zero()) return std::nullopt;
    TowerElement mj, mk;
    if (!alpha.is_zero()) {
      auto r = try_sqrt(alpha);
      mj = r.root;
      mk = beta / (TowerElement(2) * mj);
    } else {
      auto r = try_sqrt(gamma);
      mj = TowerElement(0);
      mk = r.root;
    }
    Form base = U(vars, i, tower) + U(vars, j, tower) * lj + U(vars, k, tower) * lk;
    Form m = U(vars, j, tower) * mj + U(vars, k, tower) * mk;
    return ConicSplit{base - m, base + m};
  }
  for (std::size_t i = 0; i < 3; ++i) {
    std::size_t j = (i + 1) % 3, k = (i + 2) % 3;
    if (c[j][k].is_zero())
      return ConicSplit{U(vars, i, tower), U(vars, j, tower) * c[i][j] + U(vars, k, tower) * c[i][k]};
  }
  return std::nullopt;
}

}  // namespace

std::optional<ConicSplit> conic_split(const Form& q) {
  if (q.vars()->size() != 3 || q.total_degree() != 4) throw std::invalid_argument("conic_split needs a ternary quartic");
  for (auto& [m, coef] : q.terms())
    for (unsigned e : m)
      if (e % 2) throw std::invalid_argument("quartic is not invariant under the sign changes");
  // c[i][j]: the symmetric matrix of q as a quadratic form in U, off-diagonal entries doubled.
  std::vector<std::vector<TowerElement>> c(3, std::vector<TowerElement>(3));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) c[i][j] = square_coef(q, std::min(i, j), std::max(i, j));
  if (auto s = invariant_split(q, c)) return s;

  // q = S^2 - T^2 with S linear in the U's and T = e u_p u_q.
  auto vars = q.vars();
  for (std::size_t r = 0; r < 3; ++r) {
    std::size_t p = (r + 1) % 3, pp = (r + 2) % 3;
    std::vector<std::vector<TowerElement>> sols;
    if (!c[r][r].is_zero()) {
      TowerElement n = c[r][r].inverse();
      std::vector<TowerElement> s(3);
      s[r] = TowerElement(1);
      s[p] = c[p][r] * n / TowerElement(2);
      s[pp] = c[pp][r] * n / TowerElement(2);
      if (s[p] * s[p] == c[p][p] * n && s[pp] * s[pp] == c[pp][pp] * n) {
        s.push_back(n);
        sols.push_back(s);
      }
    } else if (c[p][r].is_zero() && c[pp][r].is_zero() && !c[p][p].is_zero()) {
      TowerElement n = c[p][p].inverse();
      auto b = try_sqrt(c[pp][pp] * n);
      for (int sign : {1, -1}) {
        std::vector<TowerElement> s(3, TowerElement(0));
        s[p] = TowerElement(1);
        s[pp] = b.root * TowerElement(sign);
        s.push_back(n);
        sols.push_back(s);
      }
    }
    for (auto& s : sols) {
      TowerElement n = s[3];
      TowerElement e2 = TowerElement(2) * s[p] * s[pp] - c[p][pp] * n;
      if (e2.is_zero()) continue;
      auto e = try_sqrt(e2);
      auto tower = e.tower;
      Form S(vars, tower);
      for (std::size_t i = 0; i < 3; ++i) S += U(vars, i, tower) * s[i];
      Form T = Form::variable(vars, p, tower) * Form::variable(vars, pp, tower) * e.root;
      Form first = S + T, second = S - T;
      if (proportionality(q.lift(tower), first * second)) return ConicSplit{first, second};
    }
  }
  return std::nullopt;
}

std::vector<Form> line_parametrization(const Point& line, const VarSetPtr& params) {
  if (params->size() != 2) throw std::invalid_argument("a line is parametrized by two variables");
  auto basis = nullspace(Matrix{line});
  if (basis.size() != 2) throw std::invalid_argument("coefficient vector does not define a line");
  TowerPtr tower = TowerSpec::rationals();
  for (auto& x : line) tower = common_tower(tower, x.tower());
  std::vector<Form> out;
  for (std::size_t i = 0; i < line.size(); ++i)
    out.push_back(Form::variable(params, 0, tower) * basis[0][i] + Form::variable(params, 1, tower) * basis[1][i]);
  return out;
}

Form KummerQuarticData::pullback(const Form& f) const {
  std::vector<Form> images;
  for (std::size_t i = 0; i < 3; ++i) {
    Form img(cover_vars, tower);
    for (std::size_t j = 0; j < 3; ++j) img += U(cover_vars, j, tower) * A_inv[i][j];
    images.push_back(img);
  }
  return substitute(f, images);
}

KummerQuarticData kummer_build() {
  KummerQuarticData d;
  d.tower = TowerSpec::parse("Q(i: t^2 + 1, r2: t^2 - 2, r3: t^2 - 3)");
  d.plane_vars = VarSet::parse("[x,y,z]");
  d.cover_vars = VarSet::parse("[u1,u2,u3]");
  auto form = [&](const char* s) { return parse_form(d.plane_vars, d.tower, s); };
  d.lambda_F = form("x^2 - z^2");
  d.lambda_G = form("y^2 - z^2");
  d.lines = {form("r2*x + i*r2*y + r3*z"), form("2*x + i*y + r3*z"), form("r2*x + r2*y - 3*z")};
  d.conics = {form("x^2 + 2*y^2 - 3*z^2"), form("2*x^2 + y^2 - 3*z^2"), form("2*x^2 - y^2 - z^2")};
  d.A = Matrix(3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      Monomial m(3, 0);
      m[j] = 1;
      d.A[i].push_back(d.lines[i].coefficient(m).lift(d.tower));
    }
  if (determinant(d.A).is_zero()) throw ConstructionError("the three lines are concurrent");
  d.A_inv = Matrix(3, Vector(3));
  for (std::size_t j = 0; j < 3; ++j) {
    Vector e(3, TowerElement(d.tower, 0));
    e[j] = TowerElement(d.tower, 1);
    auto col = solve(d.A, e);
    for (std::size_t i = 0; i < 3; ++i) d.A_inv[i][j] = (*col)[i];
  }
  return d;
}

ConstructionResult kummer_certify(const KummerQuarticData& data) {
  ConstructionResult out;
  auto params = VarSet::parse("[s,t]");
  auto coeffs = [](const Form& line) {
    Point p;
    for (std::size_t j = 0; j < 3; ++j) {
      Monomial m(3, 0);
      m[j] = 1;
      p.push_back(line.coefficient(m));
    }
    return p;
  };

  // Tangency table via the discriminant of each conic restricted to each line.
  json table = json::array();
  std::vector<int> row_count(3, 0), col_count(3, 0);
  json pairing = json::object();
  for (std::size_t i = 0; i < 3; ++i) {
    json row = json::array();
    json tangent_to = json::array();
    auto param = line_parametrization(coeffs(data.lines[i]), params);
    for (std::size_t j = 0; j < 3; ++j) {
      bool tangent = disc2(restrict(data.conics[j], param)).is_zero();
      row.push_back(tangent);
      if (tangent) {
        ++row_count[i];
        ++col_count[j];
        tangent_to.push_back("C" + std::to_string(j + 1));
      }
    }
    table.push_back(row);
    pairing["L" + std::to_string(i + 1)] = tangent_to;
  }
  bool regular = std::all_of(row_count.begin(), row_count.end(), [](int c) { return c == 2; }) &&
                 std::all_of(col_count.begin(), col_count.end(), [](int c) { return c == 2; });
  out.items.push_back(item("kummer.tangency", "each line is tangent to two of the conics and each conic to two lines",
                           regular, {{"table", table}, {"pairing", pairing}}));

  // The conics lie in the pencil, at the parameters found by solving.
  std::vector<std::pair<std::string, Form>> members = {
      {"x^2-z^2", data.lambda_F},
      {"y^2-z^2", data.lambda_G},
      {"x^2-y^2", data.lambda_F - data.lambda_G},
  };
  for (std::size_t j = 0; j < 3; ++j) members.push_back({"C" + std::to_string(j + 1), data.conics[j]});

  Pencil pencil{SurfaceModel::p2(), data.pullback(data.lambda_F), data.pullback(data.lambda_G), NSClass{{4}}};
  pencil.validate();
  out.items.push_back(item("kummer.pullback", "the pullbacks of the pencil generators are quartics",
                           pencil.F.total_degree() == 4 && pencil.G.total_degree() == 4,
                           {{"F", pencil.F.to_string()}, {"G", pencil.G.to_string()}}));
  bool lines_pull_to_squares = true;
  for (std::size_t i = 0; i < 3; ++i) {
    Form sq = U(data.cover_vars, i, data.tower);
    if (!(data.pullback(data.lines[i]) == sq)) lines_pull_to_squares = false;
  }
  out.items.push_back(item("kummer.branch-lines", "each branch line pulls back to the square of a coordinate",
                           lines_pull_to_squares));

  std::size_t certified = 0;
  for (std::size_t n = 0; n < members.size(); ++n) {
    const auto& [label, conic] = members[n];
    Matrix cols = coefficient_matrix({data.lambda_F, data.lambda_G, conic});
    Matrix system(cols[0].size());
    Vector rhs;
    for (std::size_t r = 0; r < cols[0].size(); ++r) {
      system[r] = {cols[0][r], cols[1][r]};
      rhs.push_back(cols[2][r]);
    }
    auto ab = solve(system, rhs);
    std::string id = "kummer.fiber." + std::to_string(n + 1);
    if (!ab) {
      out.items.push_back(item(id, label + " lies in the pencil", false));
      continue;
    }
    Form quartic = fiber_at(pencil, (*ab)[0], (*ab)[1]);
    std::vector<CertFactor> factors;
    if (n < 3) {
      // A line pair of the pencil: each line pulls back to a conic.
      auto plane = data.plane_vars;
      std::vector<Form> lines;
      const char* xs[3][2] = {{"x - z", "x + z"}, {"y - z", "y + z"}, {"x - y", "x + y"}};
      for (auto* s : xs[n]) lines.push_back(parse_form(plane, data.tower, s));
      if (!((lines[0] * lines[1]) == conic)) {
        out.items.push_back(item(id, label + " is a pair of lines", false));
        continue;
      }
      for (auto& l : lines) factors.push_back({data.pullback(l), 1, NSClass{{2}}});
    } else {
      auto split = conic_split(quartic);
      if (!split) {
        out.items.push_back(item(id, "the pullback of " + label + " splits into two conics", false,
                                 {{"reason", "no equivariant splitting"}}));
        continue;
      }
      factors = {{split->first, 1, NSClass{{2}}}, {split->second, 1, NSClass{{2}}}};
    }
    auto outcome = certify_fiber(pencil, (*ab)[0], (*ab)[1], factors);
    json det = {{"member", label}, {"param", point_json(*ab)}};
    if (outcome) {
      ++certified;
      json fs = json::array();
      for (auto& f : factor_forms(factors)) fs.push_back(f.to_string());
      det["factors"] = fs;
      det["scalar"] = outcome.cert->scalar.to_string();
      out.certificates.push_back({id, pencil, *outcome.cert});
    } else {
      det["reason"] = outcome.failure;
    }
    out.items.push_back(item(id, "the pullback of " + label + " is a union of two conics", outcome.cert.has_value(), det));
  }
  out.items.push_back(item("kummer.count", "six members of the quartic pencil split into two conics", certified == 6,
                           {{"certified", certified}}));

  auto genus = plane_genus_euler(4);
  std::vector<std::pair<std::string, long long>> rel;
  for (std::size_t n = 0; n < 6; ++n) rel.push_back({members[n].first, (2 + 2 - 4) - genus.second});
  auto ledger = euler_ledger(3 + 16, genus.second, rel);
  out.items.push_back(item("kummer.euler", "Euler characteristic ledger leaves 3 for the remaining singular members",
                           ledger.consistent() && ledger.leftover == 3,
                           {{"e_blowup", ledger.e_ambient_blowup}, {"e_generic", ledger.e_generic},
                            {"e_rel_each", rel.front().second}, {"leftover", ledger.leftover}}));

  // The four base points of the conic pencil, each off the branch lines, give 16 = D^2 on the cover.
  Pencil conics{SurfaceModel::p2(), data.lambda_F, data.lambda_G, NSClass{{2}}};
  std::vector<Point> base;
  for (int sx : {1, -1})
    for (int sy : {1, -1}) base.push_back({TowerElement(sx), TowerElement(sy), TowerElement(1)});
  auto bp = base_point_count(conics, base);
  bool off_lines = true;
  for (auto& p : base)
    for (auto& l : data.lines)
      if (l.evaluate(p).is_zero()) off_lines = false;
  long long d2 = pencil.surface->pair(pencil.D, pencil.D);
  out.items.push_back(item("kummer.base-points", "the quartic pencil has 16 transversal base points",
                           bp.supplied == 4 && bp.transversal == 4 && off_lines && d2 == 16 &&
                               static_cast<long long>(4 * bp.transversal) == d2,
                           {{"conic_base_points", bp.supplied}, {"transversal", bp.transversal},
                            {"off_branch_lines", off_lines}, {"preimages_each", 4}, {"D^2", d2}}));
  return out;
}

}  // namespace pencil
