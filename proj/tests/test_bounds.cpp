#include "pencil/errors.hpp"
#include "pencil/bounds.hpp"

#include <doctest.h>

#include <cmath>

using namespace pencil;

namespace {

ClassCombination lines_of_p2(long long d) {
  ClassCombination c{SurfaceModel::p2(), {}};
  for (long long i = 0; i < d; ++i) c.parts.push_back({NSClass{{1}}, 1, std::nullopt});
  return c;
}

// Independent evaluation of the universal bound with machine integers.
long long universal_reference(long long k) {
  long long best = 0;
  for (long long n = 2; n <= 40; ++n)
    for (long long d0 = 0; d0 < k; ++d0) {
      long long d = n * k + d0;
      long long num = 6 * (d - 1) * (d - 1), den = (d - d0) * (d + d0 - k);
      best = std::max(best, num / den);
    }
  return best;
}

}  // namespace

TEST_CASE("rank bound for d lines in the plane is 6(d-1)/d") {
  for (long long d = 2; d <= 50; ++d) CHECK(rank_bound(lines_of_p2(d)).value == ratio(6 * (d - 1), d));
  CHECK(rank_bound(lines_of_p2(3)).value == 4);
}

TEST_CASE("key inequality left side") {
  CHECK(keyineq_lhs(lines_of_p2(3)) == Rational(2, 3));
  auto cubic = SurfaceModel::cubic27();
  auto c = parse_combination(cubic, "l-e1-e2 1 smooth\n2l-e1-e3-e4-e5-e6 1 smooth\n");
  auto b = rank_bound(c);
  CHECK(b.value == 5);
  CHECK(b.floor == 5);
  CHECK_THROWS_AS(parse_combination(cubic, "e1 2 smooth\n"), ParseError);
}

TEST_CASE("bound for (d, k)") {
  auto r = rho_upper(24, 12);
  CHECK(r.floor == 11);
  CHECK(r.value == ratio(6 * 23 * 23, 24 * 12));
  CHECK_THROWS(rho_upper(5, 3));
}

TEST_CASE("universal bounds agree with the integer reference") {
  for (long long k = 1; k <= 30; ++k) CHECK(universal_rho(k).floor == big(universal_reference(k)));
}

TEST_CASE("positivity function") {
  CHECK(h_alpha(1, 2, 0, 12) == 18);
  // (a-6)k^2n^2 + (12 + a(2d0-k))kn - 6 at a = 6 collapses to the linear part.
  CHECK(h_alpha(2, 3, 1, 6) == Rational((12 + 6 * 0) * 6 - 6));
}

TEST_CASE("multiplicity threshold brackets the roots") {
  struct Case {
    SurfacePtr s;
    ClassSet delta;
  };
  auto p1 = SurfaceModel::p1xp1();
  std::vector<Case> cases{{SurfaceModel::p2(), {NSClass{{1}}}},
                          {p1, {NSClass{{0, 1}}, NSClass{{1, 0}}, NSClass{{1, 1}}}}};
  for (auto& c : cases) {
    long long K = k_delta(*c.s, c.delta);
    CHECK(K == 2);
    for (auto& q : k_delta_polynomials(*c.s, c.delta)) {
      CHECK(q.at(ratio(K)) > 0);
      if (K > 1) CHECK(q.at(ratio(K - 1)) <= 0);
    }
  }
}

TEST_CASE("bidegree bound on P1xP1") {
  CHECK(p1p1_bound(3, 3).value == Rational(23, 2));
  CHECK(p1p1_bound(7, 1).value == Rational(15, 2));
  CHECK(p1p1_bound(2, 2).value == 15);
  for (long long m = 2; m <= 20; ++m)
    for (long long n = 1; n <= m; ++n)
      CHECK(p1p1_bound(m, n).value == ratio(3 * (2 + 3 * m * n - (m + n)), m * n - n));
  CHECK_THROWS(p1p1_bound(1, 1));
  CHECK_THROWS(p1p1_bound(2, 3));
}
