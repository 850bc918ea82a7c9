// One PASS/FAIL line per acceptance criterion.

#include "oracle.hpp"
#include "pencil/errors.hpp"
#include "pencil/cli.hpp"
#include "pencil/constructions.hpp"

#include <chrono>
#include <functional>
#include <iostream>

using namespace pencil;

namespace {

struct Outcome {
  bool pass = false;
  std::string note;
};

int failures = 0;

void criterion(const std::string& id, const std::string& title, double limit_s, const std::function<Outcome()>& body) {
  auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (limit_s > 0 && secs > limit_s) {
    o.pass = false;
    o.note += " (over time limit)";
  }
  if (!o.pass) ++failures;
  std::cout << (o.pass ? "PASS" : "FAIL") << " " << id << " " << title << " [" << secs << " s]";
  if (!o.note.empty()) std::cout << ": " << o.note;
  std::cout << std::endl;
}

const ReportItem* find(const std::vector<ReportItem>& items, const std::string& id) {
  for (auto& i : items)
    if (i.id == id) return &i;
  return nullptr;
}

bool verified(const std::vector<ReportItem>& items, const std::string& id) {
  auto* i = find(items, id);
  return i && i->status == Status::Verified;
}

bool recheck(const std::vector<CertifiedFiber>& certs) {
  for (auto& c : certs)
    if (!verify_certificate(c.pencil, c.cert)) return false;
  return true;
}

std::vector<CertifiedFiber> all_certificates() {
  std::vector<CertifiedFiber> out;
  auto take = [&](ConstructionResult r) { out.insert(out.end(), r.certificates.begin(), r.certificates.end()); };
  for (unsigned d = 2; d <= 6; ++d) take(ruppert_certify(ruppert_build(d), {1, 2, 5}, 1));
  take(kummer_certify(kummer_build()));
  take(hesse_certify(hesse_build()));
  for (unsigned d = 2; d <= 6; ++d) {
    SfgData s{d, {}, {}};
    for (unsigned i = 0; i < d; ++i) {
      s.f_roots.push_back(Rational(static_cast<long>(i)));
      s.g_roots.push_back(ratio(2 * i + 1, 3));
    }
    take(sfg_certify(s));
  }
  return out;
}

}  // namespace

int main() {
  criterion("1", "universal bound table", 1, [] {
    auto r = run({"bounds", "table", "--kmax", "30"});
    auto j = json::parse(r.output);
    std::string bad;
    for (long long k = 2; k <= 30; ++k) {
      long long expect = k == 2 ? 6 : k == 3 ? 8 : k <= 5 ? 9 : k <= 11 ? 10 : 11;
      std::string got = j["items"][k - 1]["details"]["floor"];
      if (got != std::to_string(expect)) bad += " k=" + std::to_string(k) + ":" + got;
    }
    return Outcome{bad.empty() && r.exit_code == 0, bad};
  });

  criterion("2", "Ruppert nets d=2..6", 30, [] {
    std::string note;
    bool ok = true;
    for (unsigned d = 2; d <= 6; ++d) {
      auto r = ruppert_certify(ruppert_build(d), {1, 2, 5}, 1);
      bool good = r.certificates.size() == 3 * (d - 1) && recheck(r.certificates);
      note += " d=" + std::to_string(d) + ":" + std::to_string(r.certificates.size());
      ok = ok && good;
    }
    return Outcome{ok, note};
  });

  criterion("3", "Kummer quartic pencil", 30, [] {
    auto r = kummer_certify(kummer_build());
    bool ok = verified(r.items, "kummer.tangency") && r.certificates.size() == 6 && recheck(r.certificates) &&
              verified(r.items, "kummer.base-points") && verified(r.items, "kummer.euler") &&
              find(r.items, "kummer.euler")->details["leftover"] == 3;
    return Outcome{ok, "certificates " + std::to_string(r.certificates.size())};
  });

  criterion("4", "Hesse pencil on P1xP1 and Pascal relations", 30, [] {
    auto r = hesse_certify(hesse_build());
    bool ok = verified(r.items, "hesse.ramification") && verified(r.items, "hesse.count") &&
              r.certificates.size() == 4 && recheck(r.certificates);
    for (auto* id : {"hesse.config.members", "hesse.config.on-cubic", "hesse.config.chords", "hesse.config.pascal",
                     "hesse.config.diagonals", "hesse.config.inflection"})
      ok = ok && verified(r.items, id);
    return Outcome{ok, "completely reducible members " +
                           find(r.items, "hesse.count")->details["completely_reducible"].dump()};
  });

  criterion("5", "cubic surface line pairs", 10, [] {
    auto cubic = SurfaceModel::cubic27();
    bool ok = true;
    for (auto* l : {"e1", "l-e1-e2", "2l-e2-e3-e4-e5-e6"}) {
      auto r = cubic27_certify(cubic->parse_class(l));
      ok = ok && verified(r.items, "cubic27.pairs") && verified(r.items, "cubic27.rank-bound") &&
           verified(r.items, "cubic27.saturated");
    }
    return Outcome{ok, ""};
  });

  criterion("6", "surfaces f(x,y) = g(z,t), d=2..6", 10, [] {
    bool ok = true;
    for (unsigned d = 2; d <= 6; ++d) {
      SfgData s{d, {}, {}};
      for (unsigned i = 0; i < d; ++i) {
        s.f_roots.push_back(ratio(static_cast<long long>(i) - 2, 1));
        s.g_roots.push_back(ratio(3 * i + 1, 2));
      }
      auto r = sfg_certify(s);
      ok = ok && r.certificates.size() == d && recheck(r.certificates) && verified(r.items, "sfg.lines") &&
           find(r.items, "sfg.lines")->details["lines"] == d * d;
    }
    return Outcome{ok, ""};
  });

  criterion("7a", "rank bound of d lines in the plane is 6(d-1)/d", 0, [] {
    bool ok = true;
    for (long long d = 2; d <= 50; ++d) {
      ClassCombination c{SurfaceModel::p2(), {}};
      for (long long i = 0; i < d; ++i) c.parts.push_back({NSClass{{1}}, 1, std::nullopt});
      ok = ok && rank_bound(c).value == ratio(6 * (d - 1), d);
      if (d == 3) ok = ok && rank_bound(c).value == 4;
    }
    return Outcome{ok, ""};
  });

  criterion("7b", "P1xP1 bidegree bound <= 12, and <= 10 for m > 6", 0, [] {
    Rational worst = 0, worst_large = 0;
    std::string at, at_large;
    for (long long m = 2; m <= 50; ++m)
      for (long long n = 2; n <= m; ++n) {
        Rational v = p1p1_bound(m, n).value;
        std::string where = "(" + std::to_string(m) + "," + std::to_string(n) + ")";
        if (v > worst) worst = v, at = where;
        if (m > 6 && v > worst_large) worst_large = v, at_large = where;
      }
    return Outcome{worst <= 12 && worst_large <= 10,
                   "max " + to_string(worst) + " at " + at + ", max for m>6 " + to_string(worst_large) + " at " +
                       at_large};
  });

  criterion("7c", "multiplicity thresholds with bracketing signs", 0, [] {
    auto p1 = SurfaceModel::p1xp1();
    std::vector<std::pair<SurfacePtr, ClassSet>> cases{
        {SurfaceModel::p2(), {NSClass{{1}}}}, {p1, saturated_closure(p1, {NSClass{{1, 1}}}).classes}};
    bool ok = true;
    std::string note;
    for (auto& [s, delta] : cases) {
      long long K = k_delta(*s, delta);
      note += " " + s->name() + ":" + std::to_string(K);
      ok = ok && K == 2;
      for (auto& q : k_delta_polynomials(*s, delta)) ok = ok && q.at(ratio(K - 1)) <= 0 && q.at(ratio(K)) > 0;
    }
    return Outcome{ok, note};
  });

  criterion("8", "saturated closures", 0, [] {
    auto p2 = SurfaceModel::p2();
    bool ok = true;
    for (long long k = 1; k <= 10; ++k) {
      ClassSet expect;
      for (long long j = 1; j <= k; ++j) expect.insert(NSClass{{j}});
      ok = ok && saturated_closure(p2, {NSClass{{k}}}).classes == expect;
    }
    std::mt19937_64 rng(88);
    std::vector<SurfacePtr> surfaces{p2, SurfaceModel::p1xp1(), SurfaceModel::cubic27()};
    auto lines = cubic_lines();
    std::size_t largest = 0;
    for (auto& s : surfaces)
      for (int trial = 0; trial < 100; ++trial) {
        NSClass seed;
        std::uniform_int_distribution<long long> deg(1, 10);
        if (s == p2) {
          seed = NSClass{{deg(rng)}};
        } else if (s->oracle() == Oracle::P1xP1) {
          long long total = deg(rng);
          std::uniform_int_distribution<long long> split(0, total);
          long long a = split(rng);
          seed = NSClass{{a, total - a}};
        } else {
          // A sum of lines has H-degree equal to the number of lines.
          std::uniform_int_distribution<std::size_t> pick(0, lines.size() - 1);
          seed = lines[pick(rng)];
          for (long long j = 1, n = deg(rng); j < n; ++j) seed += lines[pick(rng)];
        }
        auto once = saturated_closure(s, {seed});
        largest = std::max(largest, once.classes.size());
        ok = ok && once.classes.count(seed) && saturated_closure(s, once.classes).classes == once.classes;
      }
    return Outcome{ok, "largest closure " + std::to_string(largest)};
  });

  criterion("9", "mutation soundness of shipped certificates", 0, [] {
    std::size_t mutations = 0, rejected = 0;
    auto certs = all_certificates();
    for (auto& c : certs) {
      auto m = mutation_check(c.pencil, c.cert);
      mutations += m.mutations;
      rejected += m.rejected;
    }
    return Outcome{mutations > 0 && mutations == rejected,
                   std::to_string(certs.size()) + " certificates, " + std::to_string(rejected) + "/" +
                       std::to_string(mutations) + " mutations rejected"};
  });

  criterion("10", "arithmetic property suite", 60, [] {
    std::mt19937_64 rng(10);
    std::vector<TowerPtr> towers{TowerSpec::parse("Q(i: t^2 + 1)"),
                                 TowerSpec::parse("Q(i: t^2 + 1, r2: t^2 - 2, r3: t^2 - 3)"),
                                 TowerSpec::parse("Q(z5: t^4 + t^3 + t^2 + t + 1)"),
                                 TowerSpec::parse("Q(z7: t^6 + t^5 + t^4 + t^3 + t^2 + t + 1)"),
                                 TowerSpec::parse("Q(i: t^2 + 1, s: t^2 - 1 - i)"),
                                 TowerSpec::parse("Q(q: t^8 - 3)")};
    std::size_t checks = 0, failed = 0;
    for (int k = 0; k < 10000; ++k) {
      auto& t = towers[k % towers.size()];
      auto a = oracle::random_element(rng, t), b = oracle::random_element(rng, t), c = oracle::random_element(rng, t);
      bool ok = (a * b) * c == a * (b * c) && a * (b + c) == a * b + a * c;
      if (!a.is_zero()) ok = ok && (a * a.inverse()).is_one();
      ++checks;
      if (!ok) ++failed;
    }
    auto vars = VarSet::parse("[a,b,c]");
    std::size_t divisions = 0, div_failed = 0;
    std::uniform_int_distribution<unsigned> deg(1, 3), terms(1, 4);
    while (divisions < 1000) {
      auto& t = towers[divisions % 2];
      Form g = oracle::random_form(rng, vars, t, deg(rng), terms(rng));
      Form h = oracle::random_form(rng, vars, t, deg(rng), terms(rng));
      if (g.is_zero() || h.is_zero()) continue;
      auto q = divide_exact(g * h, g);
      if (!q || !(*q == h)) ++div_failed;
      ++divisions;
    }
    return Outcome{failed == 0 && div_failed == 0,
                   std::to_string(checks) + " field checks, " + std::to_string(divisions) + " divisions"};
  });

  return failures == 0 ? 0 : 1;
}
