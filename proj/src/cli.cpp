#include "pencil/cli.hpp"

#include "pencil/bounds.hpp"
#include "pencil/constructions.hpp"
#include "pencil/errors.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <sstream>

namespace pencil {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
}

std::vector<std::string> split_csv(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::vector<Rational> rationals_csv(const std::string& text) {
  std::vector<Rational> out;
  for (auto& s : split_csv(text)) out.push_back(parse_rational(s));
  return out;
}

ReportItem bound_item(const std::string& id, const std::string& claim, const BoundReport& b) {
  return item(id, claim, true, to_json(b));
}

json quadratic_json(const Quadratic& q) {
  return {{"class", q.d.to_string()}, {"a", to_string(q.a)}, {"b", to_string(q.b)}, {"c", to_string(q.c)}};
}

json classes_json(const ClassSet& s) {
  json a = json::array();
  for (auto& c : s) a.push_back(c.to_string());
  return a;
}

void add_construction(Report& r, ConstructionResult c) {
  r.append(std::move(c.items));
  for (auto& cert : c.certificates) r.certificates.push_back(std::move(cert));
}

struct Options {
  std::string format = "json";
  std::string out;
  std::uint64_t seed = 1;

  long long kmax = 12, d = 0, k = 0, m = 0, n = 0, sweep = 0;
  std::string surface, combo, delta, seeds, set, line, f_roots, g_roots, in;
  bool line_given = false;
};

}  // namespace

RunResult run(const std::vector<std::string>& args) {
  RunResult result;
  Options o;
  std::function<void(Report&)> action;

  CLI::App app{"Certify reducible members of pencils and evaluate the bounds on their number", "pencil"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--format", o.format, "Report format")->check(CLI::IsMember({"json", "md"}));
  app.add_option("--out", o.out, "Write the report to this path");
  app.add_option("--seed", o.seed, "Seed for sampled checks");

  auto* bounds = app.add_subcommand("bounds", "Evaluate bounds on the number of reducible members");
  bounds->require_subcommand(1);
  auto* table = bounds->add_subcommand("table", "Universal bounds for k = 1..kmax");
  table->add_option("--kmax", o.kmax)->required()->check(CLI::PositiveNumber);
  table->callback([&] {
    action = [&](Report& r) {
      for (long long k = 1; k <= o.kmax; ++k)
        r.add(bound_item("bounds.table.k" + std::to_string(k), "universal bound for curves of degree <= k",
                         universal_rho(k)));
    };
  });
  auto* rho = bounds->add_subcommand("rho", "Bound for degree d and component degree k");
  rho->add_option("--d", o.d)->required();
  rho->add_option("--k", o.k)->required();
  rho->callback([&] { action = [&](Report& r) { r.add(bound_item("bounds.rho", "bound for (d, k)", rho_upper(o.d, o.k))); }; });
  auto* rank = bounds->add_subcommand("rank", "Rank bound for a class combination");
  rank->add_option("--surface", o.surface)->required();
  rank->add_option("--combo", o.combo)->required();
  rank->callback([&] {
    action = [&](Report& r) {
      auto s = SurfaceModel::from_tag(o.surface);
      auto c = parse_combination(s, read_file(o.combo));
      auto b = rank_bound(c);
      json d = to_json(b);
      d["keyineq_lhs"] = to_string(keyineq_lhs(c));
      r.add(item("bounds.rank", "rank bound for the combination", true, d));
    };
  });
  auto* kdelta = bounds->add_subcommand("kdelta", "Multiplicity threshold for a set of classes");
  kdelta->add_option("--surface", o.surface)->required();
  kdelta->add_option("--delta", o.delta)->required();
  kdelta->callback([&] {
    action = [&](Report& r) {
      auto s = SurfaceModel::from_tag(o.surface);
      auto list = parse_class_list(*s, read_file(o.delta));
      auto closure = saturated_closure(s, ClassSet(list.begin(), list.end()));
      json polys = json::array();
      for (auto& q : k_delta_polynomials(*s, closure.classes)) polys.push_back(quadratic_json(q));
      long long K = k_delta(*s, closure.classes);
      r.add(item("bounds.kdelta", "threshold above every root of the multiplicity quadratics", true,
                 {{"surface", s->name()}, {"delta", classes_json(closure.classes)}, {"quadratics", polys}, {"K", K}}));
    };
  });
  auto* p1p1 = bounds->add_subcommand("p1p1", "Bound for bidegree (m,n) pencils on P1xP1");
  p1p1->add_option("--m", o.m)->required();
  p1p1->add_option("--n", o.n)->required();
  p1p1->add_option("--sweep", o.sweep, "Also sweep 2 <= n <= m <= max");
  p1p1->callback([&] {
    action = [&](Report& r) {
      r.add(bound_item("bounds.p1p1", "bound for bidegree (m,n)", p1p1_bound(o.m, o.n)));
      if (o.sweep <= 0) return;
      Rational worst = 0, worst_large = 0;
      std::pair<long long, long long> at{0, 0}, at_large{0, 0};
      for (long long m = 2; m <= o.sweep; ++m)
        for (long long n = 2; n <= m; ++n) {
          Rational v = p1p1_bound(m, n).value;
          if (v > worst) worst = v, at = {m, n};
          if (m > 6 && v > worst_large) worst_large = v, at_large = {m, n};
        }
      r.add(item("bounds.p1p1.sweep-12", "the bidegree bound never exceeds 12", worst <= 12,
                 {{"max", o.sweep}, {"largest", to_string(worst)}, {"at", {at.first, at.second}}}));
      r.add(item("bounds.p1p1.sweep-10", "the bidegree bound is at most 10 for m > 6", worst_large <= 10,
                 {{"max", o.sweep}, {"largest", to_string(worst_large)}, {"at", {at_large.first, at_large.second}}}));
    };
  });

  auto* lattice = app.add_subcommand("lattice", "Saturated sets of divisor classes");
  lattice->require_subcommand(1);
  auto* saturate = lattice->add_subcommand("saturate", "Saturated closure of seed classes");
  saturate->add_option("--surface", o.surface)->required();
  saturate->add_option("--seeds", o.seeds)->required();
  saturate->callback([&] {
    action = [&](Report& r) {
      auto s = SurfaceModel::from_tag(o.surface);
      auto list = parse_class_list(*s, read_file(o.seeds));
      auto closure = saturated_closure(s, ClassSet(list.begin(), list.end()));
      bool sat = is_saturated(*s, closure.classes).saturated;
      r.add(item("lattice.closure", "the closure is saturated", sat,
                 {{"surface", s->name()}, {"size", closure.classes.size()}, {"classes", classes_json(closure.classes)}}));
    };
  });
  auto* check = lattice->add_subcommand("check-saturated", "Decide whether a set of classes is saturated");
  check->add_option("--surface", o.surface)->required();
  check->add_option("--set", o.set)->required();
  check->callback([&] {
    action = [&](Report& r) {
      auto s = SurfaceModel::from_tag(o.surface);
      auto list = parse_class_list(*s, read_file(o.set));
      ClassSet set(list.begin(), list.end());
      auto c = is_saturated(*s, set);
      json d = {{"surface", s->name()}, {"size", set.size()}};
      if (c.witness) d["witness"] = {{"member", c.witness->first.to_string()}, {"split", c.witness->second.to_string()}};
      r.add(item("lattice.saturated", "the set is saturated", c.saturated, d));
    };
  });

  auto* verify = app.add_subcommand("verify", "Certify the explicit pencil constructions");
  verify->require_subcommand(1);
  auto* ruppert = verify->add_subcommand("ruppert", "Pencil of a Ruppert net");
  ruppert->add_option("--d", o.d)->required()->check(CLI::Range(2, 64));
  ruppert->add_option("--line", o.line, "Coefficients a,b,c of the pencil line");
  ruppert->callback([&] {
    action = [&](Report& r) {
      std::vector<long long> line{1, 2, 5};
      if (!o.line.empty()) {
        line.clear();
        for (auto& s : split_csv(o.line)) line.push_back(std::stoll(s));
      }
      add_construction(r, ruppert_certify(ruppert_build(static_cast<unsigned>(o.d)), line, o.seed));
    };
  });
  verify->add_subcommand("kummer-quartic", "Quartic pencil pulled back by the Kummer cover")->callback([&] {
    action = [&](Report& r) { add_construction(r, kummer_certify(kummer_build())); };
  });
  verify->add_subcommand("hesse-p1p1", "Special Pascal configuration and its (3,3) pencil on P1xP1")->callback([&] {
    action = [&](Report& r) { add_construction(r, hesse_certify(hesse_build())); };
  });
  auto* cubic = verify->add_subcommand("cubic27", "Conic pencil residual to a line on the cubic surface");
  cubic->add_option("--line", o.line)->required();
  cubic->callback([&] {
    action = [&](Report& r) { add_construction(r, cubic27_certify(SurfaceModel::cubic27()->parse_class(o.line))); };
  });
  auto* sfg = verify->add_subcommand("sfg", "Hyperplane pencil on the surface f(x,y) = g(z,t)");
  sfg->add_option("--d", o.d)->required()->check(CLI::PositiveNumber);
  sfg->add_option("--f-roots", o.f_roots)->required();
  sfg->add_option("--g-roots", o.g_roots)->required();
  sfg->callback([&] {
    action = [&](Report& r) {
      add_construction(r, sfg_certify({static_cast<unsigned>(o.d), rationals_csv(o.f_roots), rationals_csv(o.g_roots)}));
    };
  });
  auto* bundle = verify->add_subcommand("bundle", "Re-verify a certificate bundle");
  bundle->add_option("--in", o.in)->required();
  bundle->callback([&] {
    action = [&](Report& r) {
      auto certs = bundle_from_json(json::parse(read_file(o.in)));
      for (std::size_t i = 0; i < certs.size(); ++i) {
        auto& c = certs[i];
        c.pencil.validate();
        auto outcome = verify_certificate(c.pencil, c.cert);
        json d = {{"label", c.label}};
        if (!outcome) d["reason"] = outcome.failure;
        r.add(item("bundle." + std::to_string(i + 1), "stored certificate re-verifies", outcome.cert.has_value(), d));
      }
    };
  });

  std::vector<std::string> argv_store{"pencil"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (auto& a : argv_store) argv.push_back(a.c_str());

  std::ostringstream out, err;
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    result.output = out.str();
    return result;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    result.output = out.str();
    return result;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    result.diagnostics = err.str() + out.str();
    result.report.error = e.what();
    result.exit_code = 2;
    return result;
  }

  Report& report = result.report;
  report.command = "pencil";
  for (auto& a : args) report.command += " " + a;
  try {
    if (!action) throw std::logic_error("no action selected");
    action(report);
  } catch (const std::exception& e) {
    report.error = e.what();
    result.diagnostics = std::string("error: ") + e.what() + "\n";
  }

  try {
    if (!o.out.empty()) {
      if (!report.certificates.empty()) {
        std::string path = o.out + ".certificates.json";
        write_file(path, bundle_to_json(report.certificates).dump(2) + "\n");
        report.artifacts.push_back(path);
      }
      report.artifacts.push_back(o.out);
    }
    result.output = o.format == "md" ? to_markdown(report) : to_json(report).dump(2) + "\n";
    if (!o.out.empty()) write_file(o.out, result.output);
  } catch (const std::exception& e) {
    report.error = e.what();
    result.diagnostics += std::string("error: ") + e.what() + "\n";
    result.output = o.format == "md" ? to_markdown(report) : to_json(report).dump(2) + "\n";
  }
  result.exit_code = report.exit_code();
  return result;
}

}  // namespace pencil
