#include "oracle.hpp"
#include "pencil/errors.hpp"
#include "pencil/tower.hpp"

#include <doctest.h>

using namespace pencil;

namespace {

TowerPtr Qi() { return TowerSpec::parse("Q(i: t^2 + 1)"); }

std::vector<TowerPtr> sample_towers() {
  return {
      TowerSpec::parse("Q(i: t^2 + 1)"),
      TowerSpec::parse("Q(i: t^2 + 1, r2: t^2 - 2, r3: t^2 - 3)"),
      TowerSpec::parse("Q(z5: t^4 + t^3 + t^2 + t + 1)"),
      TowerSpec::parse("Q(q: t^4 - 2)"),
      TowerSpec::parse("Q(i: t^2 + 1, s: t^2 - 1 - i)"),
      TowerSpec::parse("Q(w: t^3 - 2, i: t^2 + 1)"),
  };
}

}  // namespace

TEST_CASE("rational helpers") {
  CHECK(parse_rational("-6/4") == Rational(-3, 2));
  CHECK(to_string(parse_rational("68/12")) == "17/3");
  CHECK(floor(Rational(-7, 2)) == -4);
  CHECK(ceil(Rational(7, 2)) == 4);
  CHECK(rational_sqrt(Rational(9, 4)) == Rational(3, 2));
  CHECK_FALSE(rational_sqrt(Rational(2)));
  CHECK_THROWS_AS(parse_rational("1/0"), std::exception);
  CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
}

TEST_CASE("tower arithmetic on generators") {
  auto t = TowerSpec::parse("Q(i: t^2 + 1, r3: t^2 - 3)");
  auto i = TowerElement::generator(t, "i"), r3 = TowerElement::generator(t, "r3");
  CHECK(i * i == TowerElement(-1));
  CHECK(r3 * r3 == TowerElement(3));
  CHECK((TowerElement(1) + i).inverse().to_string() == "(1/2 - 1/2*i)");
  CHECK(t->degree() == 4);
  CHECK(t->to_string() == "Q(i: t^2 + 1, r3: t^2 - 3)");
  CHECK(TowerSpec::parse(t->to_string())->to_string() == t->to_string());
  CHECK(parse_element(t, "(1/2 - 1/2*i)") == (TowerElement(1) + i).inverse());
  CHECK_THROWS_AS(TowerElement(t, 0).inverse(), DivisionByZero);
}

TEST_CASE("embedding into longer towers is zero padding") {
  auto a = TowerSpec::parse("Q(i: t^2 + 1)");
  auto b = TowerSpec::parse("Q(i: t^2 + 1, r2: t^2 - 2)");
  auto x = TowerElement::generator(a, "i") + TowerElement(3);
  auto y = x.lift(b);
  CHECK(y.coords().size() == 4);
  CHECK(y.coords()[0] == 3);
  CHECK(y.coords()[1] == 1);
  CHECK(y.coords()[2] == 0);
  CHECK(x * TowerElement::generator(b, "r2") == TowerElement::generator(b, "r2") * y);
  auto c = TowerSpec::parse("Q(r2: t^2 - 2)");
  CHECK_THROWS_AS(TowerElement::generator(a, "i") + TowerElement::generator(c, "r2"), TowerMismatch);
}

TEST_CASE("reducible modulus surfaces as a non-field error") {
  auto t = TowerSpec::parse("Q(x: t^2 - 4)");
  auto x = TowerElement::generator(t, "x");
  CHECK_THROWS_AS((x - TowerElement(2)).inverse(), NonFieldModulus);
}

TEST_CASE("square roots") {
  auto t = TowerSpec::parse("Q(i: t^2 + 1, r3: t^2 - 3)");
  auto s = sqrt_in_tower(TowerElement(t, -3));
  REQUIRE(s);
  CHECK(*s * *s == TowerElement(-3));
  CHECK_FALSE(sqrt_in_tower(TowerElement(t, 2)));

  auto r = try_sqrt(TowerElement(-48));
  CHECK(r.extended);
  CHECK(r.root.to_string() == "4*rm3");
  CHECK(r.root * r.root == TowerElement(-48));
  auto q = try_sqrt(TowerElement(Rational(3, 8)));
  CHECK(q.root * q.root == TowerElement(Rational(3, 8)));

  auto qi = Qi();
  auto i = TowerElement::generator(qi, "i");
  auto sq = try_sqrt(TowerElement(2) * i);  // (1+i)^2
  CHECK_FALSE(sq.extended);
  CHECK(sq.root * sq.root == TowerElement(2) * i);
  auto ext = try_sqrt(TowerElement(1) + i);
  CHECK(ext.extended);
  CHECK(ext.root * ext.root == (TowerElement(1) + i).lift(ext.tower));
}

TEST_CASE("cyclotomic polynomials") {
  auto c = cyclotomic(5);
  CHECK(c == std::vector<Integer>{1, 1, 1, 1, 1});
  CHECK(cyclotomic(6) == std::vector<Integer>{1, -1, 1});
  CHECK(cyclotomic(1) == std::vector<Integer>{-1, 1});
  auto t = TowerSpec::parse("Q(z3: t^2 + t + 1)");
  CHECK(pow(TowerElement::generator(t, "z3"), 3).is_one());
}

TEST_CASE("field axioms agree with a complex embedding") {
  std::mt19937_64 rng(20261015);
  for (auto& t : sample_towers()) {
    oracle::Embedding phi(t);
    for (int k = 0; k < 60; ++k) {
      auto a = oracle::random_element(rng, t), b = oracle::random_element(rng, t), c = oracle::random_element(rng, t);
      CHECK(oracle::close(phi(a * b), phi(a) * phi(b)));
      CHECK(oracle::close(phi(a + b), phi(a) + phi(b)));
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      if (!a.is_zero()) {
        CHECK((a * a.inverse()).is_one());
        CHECK(oracle::close(phi(a.inverse()), 1.0 / phi(a)));
      }
    }
  }
}

TEST_CASE("to_string and parse_element round trip") {
  std::mt19937_64 rng(7);
  for (auto& t : sample_towers())
    for (int k = 0; k < 20; ++k) {
      auto a = oracle::random_element(rng, t);
      CHECK(parse_element(t, a.to_string()) == a);
    }
}
