#include "oracle.hpp"
#include "pencil/errors.hpp"
#include "pencil/constructions.hpp"

#include <doctest.h>

using namespace pencil;

namespace {

bool all_verified(const ConstructionResult& r) {
  bool ok = true;
  for (auto& i : r.items)
    if (i.status != Status::Verified) {
      MESSAGE(i.id << ": " << i.details.dump());
      ok = false;
    }
  return ok;
}

const TowerPtr Q = TowerSpec::rationals();

}  // namespace

TEST_CASE("Ruppert nets have 3(d-1) certified reducible members") {
  for (unsigned d = 2; d <= 6; ++d) {
    auto net = ruppert_build(d);
    CHECK(pow(net.zeta, static_cast<int>(d - 1)).is_one());
    CHECK(net.S.total_degree() == 3 * (d - 1));
    auto r = ruppert_certify(net, {1, 2, 5}, 1);
    CHECK(r.certificates.size() == 3 * (d - 1));
    CHECK(all_verified(r));
    for (auto& c : r.certificates) {
      CHECK(verify_certificate(c.pencil, c.cert));
      CHECK(mutation_check(c.pencil, c.cert).sound());
    }
  }
}

TEST_CASE("Ruppert genericity is checked") {
  auto net = ruppert_build(3);
  CHECK_THROWS_AS(ruppert_certify(net, {1, -1, 0}, 1), std::invalid_argument);  // a factor of S
  CHECK_THROWS_AS(ruppert_certify(net, {0, 0, 1}, 1), std::invalid_argument);   // through l0 = l1 = 0 crossings
  CHECK_THROWS_AS(ruppert_certify(net, {0, 0, 0}, 1), std::invalid_argument);
}

TEST_CASE("Ruppert member on a factor locus contains a line") {
  auto net = ruppert_build(4);
  auto div = ruppert_line_divides(net, 0, 1, 1);
  REQUIRE(div.cofactor);
  CHECK(div.cofactor->multidegree() == std::vector<unsigned>{1, 3});
}

TEST_CASE("third intersection follows the chord law") {
  auto vars = VarSet::parse("[x,y,z]");
  auto cubic = parse_form(vars, Q, "y^2*z - x^3 + x*z^2");  // y^2 = x^3 - x
  CHECK(same_point(third_intersection(cubic, {0, 0, 1}, {1, 0, 1}), {-1, 0, 1}));
  CHECK_THROWS(third_intersection(cubic, {0, 0, 1}, {0, 0, 2}));
  CHECK_THROWS(third_intersection(cubic, {0, 0, 1}, {2, 0, 1}));

  // On y^2 = x^3 - 2x + 5 the chord through (x1,y1), (x2,y2) of slope m meets the
  // curve again at x3 = m^2 - x1 - x2, y3 = y1 + m (x3 - x1).
  auto E = parse_form(vars, Q, "y^2*z - x^3 + 2*x*z^2 - 5*z^3");
  std::vector<std::pair<double, double>> pts{{2, 3}, {1, 2}, {1, -2}, {2, -3}};
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = 0; j < pts.size(); ++j) {
      auto [x1, y1] = pts[i];
      auto [x2, y2] = pts[j];
      if (x1 == x2) continue;
      double m = (y2 - y1) / (x2 - x1), x3 = m * m - x1 - x2, y3 = y1 + m * (x3 - x1);
      Point r = third_intersection(E, {Rational(x1), Rational(y1), 1}, {Rational(x2), Rational(y2), 1});
      double rx = r[0].to_rational().get_d() / r[2].to_rational().get_d();
      double ry = r[1].to_rational().get_d() / r[2].to_rational().get_d();
      CHECK(std::abs(rx - x3) < 1e-12);
      CHECK(std::abs(ry - y3) < 1e-12);
    }
}

TEST_CASE("conic splitting") {
  auto vars = VarSet::parse("[u,v,w]");
  CHECK_FALSE(conic_split(parse_form(vars, Q, "u^4 + v^4 + w^4 + u^2*v^2")));
  auto q = parse_form(vars, Q, "(u^2 + v^2 - w^2)*(u^2 - 2*v^2 + 3*w^2)");
  auto s = conic_split(q);
  REQUIRE(s);
  CHECK(proportionality(q.lift(s->first.tower()), s->first * s->second));
  auto swapped = parse_form(vars, Q, "(u^2 + v^2 + w^2)^2 - 2*u^2*v^2");
  auto s2 = conic_split(swapped);
  REQUIRE(s2);
  CHECK(proportionality(swapped.lift(s2->first.tower()), s2->first * s2->second));
  CHECK_THROWS(conic_split(parse_form(vars, Q, "u^3*v")));
}

TEST_CASE("Kummer quartic pencil") {
  auto data = kummer_build();
  auto r = kummer_certify(data);
  CHECK(r.certificates.size() == 6);
  CHECK(all_verified(r));

  // Numeric tangency oracle: the line meets the conic in a double point iff the
  // restricted quadratic has a repeated complex root.
  oracle::Embedding phi(data.tower);
  int tangencies = 0;
  for (auto& line : data.lines) {
    std::vector<oracle::cplx> l;
    for (std::size_t j = 0; j < 3; ++j) {
      Monomial m(3, 0);
      m[j] = 1;
      l.push_back(phi(line.coefficient(m)));
    }
    for (auto& conic : data.conics) {
      // Points on the line: (x, y, z) with z = -(l0 x + l1 y)/l2, in the chart y = 1.
      auto at = [&](oracle::cplx x) {
        oracle::cplx z = -(l[0] * x + l[1]) / l[2];
        return phi(conic, {x, 1.0, z});
      };
      oracle::cplx c0 = at(0), c1p = at(1), c1m = at(-1);
      oracle::cplx a = (c1p + c1m) / 2.0 - c0, b = (c1p - c1m) / 2.0;
      if (std::abs(b * b - 4.0 * a * c0) < 1e-8 * std::max(1.0, std::abs(b * b))) ++tangencies;
    }
  }
  CHECK(tangencies == 6);
}

TEST_CASE("Hesse pencil on P1xP1") {
  auto data = hesse_build();
  auto r = hesse_certify(data);
  CHECK(r.certificates.size() == 4);
  CHECK(all_verified(r));
  for (auto& i : r.items)
    if (i.id == "hesse.printed.Q") CHECK(i.details["agrees"] == false);
  for (auto& c : r.certificates) CHECK(mutation_check(c.pencil, c.cert).sound());
}

TEST_CASE("Pascal configurations built on a cubic") {
  auto d = hesse_build();
  auto l = pascal_generic_example(d.tower, d.plane_vars);
  Form C1 = l.first[0] * l.first[1] * l.first[2], C2 = l.second[0] * l.second[1] * l.second[2];
  auto config = pascal_from_lines(l, C1 + C2 * TowerElement(2));
  for (auto& i : pascal_verify(config, "p")) CHECK(i.status == Status::Verified);
  // Moving P1 along the cubic keeps the chord and Pascal relations.
  auto moved = pascal_build(config.cubic, config.Q, config.P[1]);
  auto checks = pascal_verify(moved, "m");
  CHECK(checks[1].status == Status::Verified);  // chords
  CHECK(checks[2].status == Status::Verified);  // conic and collinear Q
  CHECK(checks[4].status == Status::Verified);  // inflection
}

TEST_CASE("lines on S_fg") {
  auto r = sfg_certify({3, {0, 1, -1}, {0, 2, 3}});
  CHECK(r.certificates.size() == 3);
  CHECK(all_verified(r));
  auto quad = sfg_certify({2, {0, 1}, {Rational(1, 2), 5}});
  CHECK(quad.certificates.size() == 2);
  CHECK_THROWS_AS(sfg_certify({5, {0, 1, 2, 3, 4}, {0, 1, 1, 2, 3}}), std::invalid_argument);
  CHECK_THROWS_AS(sfg_certify({3, {0, 1}, {0, 2, 3}}), std::invalid_argument);

  // Line-meeting oracle: L_ij and L_kl meet iff i == k or j == l; count meeting pairs numerically.
  std::vector<double> a{0, 1, -1}, b{0, 2, 3};
  int meetings = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int m = 0; m < 3; ++m) {
          if (i * 3 + j >= k * 3 + m) continue;
          // Points (a_i,1,0,0), (0,0,b_j,1), (a_k,1,0,0), (0,0,b_m,1) are coplanar iff the lines meet.
          double M[4][4] = {{a[i], 1, 0, 0}, {0, 0, b[j], 1}, {a[k], 1, 0, 0}, {0, 0, b[m], 1}};
          double det = 0;
          int perm[4] = {0, 1, 2, 3};
          do {
            int inv = 0;
            for (int p = 0; p < 4; ++p)
              for (int q = p + 1; q < 4; ++q) inv += perm[p] > perm[q];
            double t = inv % 2 ? -1 : 1;
            for (int p = 0; p < 4; ++p) t *= M[p][perm[p]];
            det += t;
          } while (std::next_permutation(perm, perm + 4));
          if (std::abs(det) < 1e-12) ++meetings;
        }
  CHECK(meetings == 18);  // 9 lines, each meeting the 4 sharing an index
}

TEST_CASE("conic pencils on the cubic surface") {
  auto cubic = SurfaceModel::cubic27();
  for (auto* l : {"e1", "l-e1-e2", "2l-e2-e3-e4-e5-e6"}) CHECK(all_verified(cubic27_certify(cubic->parse_class(l))));
  CHECK_THROWS_AS(cubic27_certify(cubic->parse_class("l")), std::invalid_argument);
}
