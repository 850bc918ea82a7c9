#include "oracle.hpp"
#include "pencil/errors.hpp"
#include "pencil/forms.hpp"
#include "pencil/linalg.hpp"

#include <doctest.h>

using namespace pencil;

namespace {

const TowerPtr Q = TowerSpec::rationals();
VarSetPtr xyz() { return VarSet::parse("[x,y,z]"); }

}  // namespace

TEST_CASE("variable sets") {
  auto v = VarSet::parse("vars: [u,v;s,t]");
  CHECK(v->size() == 4);
  CHECK(v->block_count() == 2);
  CHECK(v->block_of(2) == 1);
  CHECK(*v->index("t") == 3);
  CHECK(VarSet::parse(v->to_string())->names() == v->names());
  CHECK_THROWS_AS(VarSet::parse("[x,x]"), std::invalid_argument);
}

TEST_CASE("parsing and printing forms") {
  auto t = TowerSpec::parse("Q(i: t^2 + 1)");
  auto f = parse_form(xyz(), t, "x^2 + (1/2 - i)*y*z - 3*z^2");
  CHECK(f.total_degree() == 2);
  CHECK(f.to_string() == "x^2 + (1/2 - i)*y*z - 3*z^2");
  CHECK(parse_form(xyz(), t, f.to_string()) == f);
  CHECK(parse_form(xyz(), Q, "(x + y)^2 - (x - y)^2") == parse_form(xyz(), Q, "4*x*y"));
  CHECK_THROWS_AS(parse_form(xyz(), Q, "x^2 + y"), std::invalid_argument);
  auto uv = VarSet::parse("[u,v;s,t]");
  CHECK(parse_form(uv, Q, "u*s + v*t").multidegree() == std::vector<unsigned>{1, 1});
  CHECK_THROWS_AS(parse_form(uv, Q, "u*s + u*v"), std::invalid_argument);
}

TEST_CASE("grlex order puts larger degrees and earlier variables first") {
  GrlexGreater gt;
  CHECK(gt({2, 0, 0}, {1, 1, 0}));
  CHECK(gt({0, 1, 1}, {0, 0, 2}));
  CHECK(gt({1, 0, 1}, {0, 2, 0}));
  CHECK_FALSE(gt({0, 2, 0}, {1, 0, 1}));
}

TEST_CASE("exact division") {
  auto f = parse_form(xyz(), Q, "x^2 - y^2");
  auto q = divide_exact(f, parse_form(xyz(), Q, "x + y"));
  REQUIRE(q);
  CHECK(*q == parse_form(xyz(), Q, "x - y"));
  CHECK_FALSE(divide_exact(parse_form(xyz(), Q, "x^2 + y^2"), parse_form(xyz(), Q, "x")));
  CHECK_THROWS_AS(divide_exact(f, Form(xyz(), Q)), DivisionByZero);
}

TEST_CASE("divide_exact round trip on random sparse forms") {
  std::mt19937_64 rng(1001);
  auto towers = {Q, TowerSpec::parse("Q(i: t^2 + 1, r2: t^2 - 2)")};
  auto vars = VarSet::parse("[a,b,c,d]");
  int checked = 0;
  for (auto& t : towers)
    for (int k = 0; k < 500; ++k) {
      std::uniform_int_distribution<unsigned> deg(1, 3), terms(1, 4);
      Form g = oracle::random_form(rng, vars, t, deg(rng), terms(rng));
      Form h = oracle::random_form(rng, vars, t, deg(rng), terms(rng));
      if (g.is_zero() || h.is_zero()) continue;
      auto q = divide_exact(g * h, g);
      REQUIRE(q);
      CHECK(*q == h);
      ++checked;
    }
  CHECK(checked > 900);
}

TEST_CASE("substitution agrees with numeric composition") {
  std::mt19937_64 rng(42);
  auto t = TowerSpec::parse("Q(r2: t^2 - 2)");
  oracle::Embedding phi(t);
  auto src = xyz();
  auto dst = VarSet::parse("[s,t]");
  for (int k = 0; k < 50; ++k) {
    Form f = oracle::random_form(rng, src, t, 3, 5);
    std::vector<Form> lin;
    for (int i = 0; i < 3; ++i) lin.push_back(oracle::random_form(rng, dst, t, 1, 2));
    Form g = substitute(f, lin);
    std::vector<oracle::cplx> st{{0.3, 0.1}, {-1.2, 0.7}};
    std::vector<oracle::cplx> img;
    for (auto& l : lin) img.push_back(phi(l, st));
    CHECK(oracle::close(phi(g, st), phi(f, img), 1e-6));
  }
}

TEST_CASE("discriminant of binary quadratics") {
  auto st = VarSet::parse("[s,t]");
  CHECK(disc2(parse_form(st, Q, "s*t")) == TowerElement(1));
  CHECK(disc2(parse_form(st, Q, "(s + t)^2")).is_zero());
  CHECK(disc2(parse_form(st, Q, "s^2 + t^2")) == TowerElement(-4));
}

TEST_CASE("hessian matches second differences") {
  auto f = parse_form(xyz(), Q, "x^3 + y^3 + z^3");
  CHECK(hessian(f) == parse_form(xyz(), Q, "216*x*y*z"));
  std::mt19937_64 rng(3);
  oracle::Embedding phi(Q);
  for (int k = 0; k < 20; ++k) {
    Form c = oracle::random_form(rng, xyz(), Q, 3, 6);
    std::vector<oracle::cplx> p{0.7, -0.4, 1.3};
    const double h = 1e-3;
    double m[3][3];
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        auto at = [&](double di, double dj) {
          auto q = p;
          q[i] += di;
          q[j] += dj;
          return phi(c, q).real();
        };
        m[i][j] = (at(h, h) - at(h, -h) - at(-h, h) + at(-h, -h)) / (4 * h * h);
      }
    double det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                 m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    CHECK(oracle::close(phi(hessian(c), p), det, 1e-4));
  }
}

TEST_CASE("resultant equals the product over roots") {
  CHECK(resultant(parse_form(xyz(), Q, "x^2 + y^2 - 2*z^2"), parse_form(xyz(), Q, "x^2 - y^2"), 0) ==
        parse_form(xyz(), Q, "4*y^4 - 8*y^2*z^2 + 4*z^4"));
  std::mt19937_64 rng(11);
  auto xy = VarSet::parse("[x,y]");
  oracle::Embedding phi(Q);
  for (int k = 0; k < 30; ++k) {
    Form f = oracle::random_form(rng, xy, Q, 3, 4), g = oracle::random_form(rng, xy, Q, 2, 3);
    auto cf = coefficients_in(f, 0), cg = coefficients_in(g, 0);
    if (cf.size() != 4 || cg.size() != 3 || cf[3].is_zero() || cg[2].is_zero()) continue;
    Form r = resultant(f, g, 0);
    // Res(f, g) = lc(f)^deg g * prod g(alpha) over the roots alpha of f(., 1).
    std::vector<oracle::cplx> fc;
    for (auto& c : cf) fc.push_back(phi(c, {0, 1}));
    oracle::cplx expect = fc.back() * fc.back();
    for (auto& a : oracle::roots(fc)) expect *= phi(g, {a, 1});
    INFO(f.to_string(), " ; ", g.to_string(), " ; ", r.to_string(), " ; ", expect.real(), " ", expect.imag());
    CHECK(oracle::close(phi(r, {0, 1}), expect, 1e-6));
  }
}

TEST_CASE("square roots of forms up to scalar") {
  auto uv = VarSet::parse("[u,v;s,t]");
  auto f = parse_form(uv, Q, "4*u^2*t^2 - 8*u*v*s*t + 4*v^2*s^2");
  auto r = square_root_up_to_scalar(f);
  REQUIRE(r);
  CHECK(r->scalar * pow(r->root, 2) == f);
  CHECK_FALSE(square_root_up_to_scalar(parse_form(uv, Q, "u^2*t^2 + v^2*s^2")));
}

TEST_CASE("proportionality and jacobian") {
  auto a = parse_form(xyz(), Q, "2*x^2 - 4*y*z"), b = parse_form(xyz(), Q, "x^2 - 2*y*z");
  CHECK(*proportionality(a, b) == TowerElement(2));
  CHECK_FALSE(proportionality(a, parse_form(xyz(), Q, "x^2")));
  auto node = parse_form(xyz(), Q, "y^2*z - x^3 - x^2*z");
  CHECK(jacobian_vanishes_at({node}, {0, 0, 1}));
  CHECK_FALSE(jacobian_vanishes_at({node}, {0, 1, 0}));
}

TEST_CASE("linear algebra") {
  Matrix m{{1, 2, 3}, {2, 4, 6}, {1, 0, 1}};
  CHECK(rank(m) == 2);
  CHECK(determinant(m).is_zero());
  auto ns = nullspace(m);
  REQUIRE(ns.size() == 1);
  for (auto& row : m) {
    TowerElement s(0);
    for (std::size_t j = 0; j < 3; ++j) s += row[j] * ns[0][j];
    CHECK(s.is_zero());
  }
  auto x = solve({{1, 1}, {1, -1}}, {3, 1});
  REQUIRE(x);
  CHECK((*x)[0] == TowerElement(2));
  CHECK_FALSE(solve({{1, 1}, {1, 1}}, {1, 2}));
  CHECK(det3({1, 0, 0}, {0, 1, 0}, {0, 0, 1}) == TowerElement(1));
  auto c = cross({1, 0, 0}, {0, 1, 0});
  CHECK(c == Vector{0, 0, 1});
}
