#include "pencil/report.hpp"

#include "pencil/errors.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace pencil {

std::string to_string(Status s) {
  switch (s) {
    case Status::Verified: return "verified";
    case Status::Failed: return "failed";
    case Status::Error: return "error";
  }
  return "error";
}

Status Report::status() const {
  if (!error.empty()) return Status::Error;
  Status s = Status::Verified;
  for (auto& i : items) {
    if (i.status == Status::Error) return Status::Error;
    if (i.status == Status::Failed) s = Status::Failed;
  }
  return s;
}

int Report::exit_code() const {
  switch (status()) {
    case Status::Verified: return 0;
    case Status::Failed: return 1;
    case Status::Error: return 2;
  }
  return 2;
}

void Report::append(std::vector<ReportItem> more) {
  for (auto& i : more) items.push_back(std::move(i));
}

namespace {

// Compares ids with embedded numbers by value, so "fiber.2" sorts before "fiber.10".
bool natural_less(const std::string& a, const std::string& b) {
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    bool da = std::isdigit(static_cast<unsigned char>(a[i])), db = std::isdigit(static_cast<unsigned char>(b[j]));
    if (da && db) {
      std::size_t ie = i, je = j;
      while (ie < a.size() && std::isdigit(static_cast<unsigned char>(a[ie]))) ++ie;
      while (je < b.size() && std::isdigit(static_cast<unsigned char>(b[je]))) ++je;
      Integer x(a.substr(i, ie - i)), y(b.substr(j, je - j));
      if (x != y) return x < y;
      i = ie;
      j = je;
    } else {
      if (a[i] != b[j]) return a[i] < b[j];
      ++i;
      ++j;
    }
  }
  return a.size() - i < b.size() - j;
}

std::vector<const ReportItem*> sorted_items(const Report& r) {
  std::vector<const ReportItem*> out;
  for (auto& i : r.items) out.push_back(&i);
  std::stable_sort(out.begin(), out.end(), [](auto* x, auto* y) { return natural_less(x->id, y->id); });
  return out;
}

std::string detail_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

}  // namespace

json to_json(const Report& r) {
  json j;
  j["command"] = r.command;
  j["status"] = to_string(r.status());
  json items = json::array();
  for (auto* i : sorted_items(r))
    items.push_back({{"id", i->id}, {"paper_ref", i->claim}, {"status", to_string(i->status)}, {"details", i->details}});
  j["items"] = items;
  j["artifacts"] = r.artifacts;
  if (!r.error.empty()) j["error"] = r.error;
  return j;
}

std::string to_markdown(const Report& r) {
  std::ostringstream out;
  out << "# " << r.command << "\n\n";
  out << "Status: **" << to_string(r.status()) << "**\n\n";
  if (!r.error.empty()) out << "Error: " << r.error << "\n\n";
  if (!r.items.empty()) {
    out << "| id | claim | status | details |\n|---|---|---|---|\n";
    for (auto* i : sorted_items(r)) {
      std::string det;
      if (i->details.is_object()) {
        for (auto& [k, v] : i->details.items()) det += (det.empty() ? "" : "; ") + k + ": " + detail_text(v);
      } else {
        det = detail_text(i->details);
      }
      std::replace(det.begin(), det.end(), '|', '/');
      out << "| " << i->id << " | " << i->claim << " | " << to_string(i->status) << " | " << det << " |\n";
    }
  }
  if (!r.artifacts.empty()) {
    out << "\nArtifacts:\n";
    for (auto& a : r.artifacts) out << "- " << a << "\n";
  }
  return out.str();
}

json to_json(const BoundReport& b) {
  json j;
  j["eq"] = b.eq;
  json inputs = json::object();
  for (auto& [k, v] : b.inputs) inputs[k] = v;
  j["inputs"] = inputs;
  j["value"] = to_string(b.value);
  j["floor"] = b.floor.get_str();
  j["verdict"] = b.verdict;
  return j;
}

namespace {

json class_json(const NSClass& c) { return c.coords; }

NSClass class_from(const json& j) { return NSClass{j.get<std::vector<long long>>()}; }

json surface_json(const SurfaceModel& s) {
  if (s.oracle() != Oracle::Custom) return s.name();
  json gens = json::array();
  for (auto& g : s.generators()) gens.push_back(class_json(g));
  return {{"name", s.name()}, {"gram", s.gram()}, {"K", class_json(s.K())}, {"H", class_json(s.H())},
          {"e", s.euler()}, {"generators", gens}};
}

SurfacePtr surface_from(const json& j) {
  if (j.is_string()) return SurfaceModel::from_tag(j.get<std::string>());
  SurfaceModel::Data d;
  d.name = j.at("name").get<std::string>();
  d.gram = j.at("gram").get<std::vector<std::vector<long long>>>();
  d.K = class_from(j.at("K"));
  d.H = class_from(j.at("H"));
  d.e = j.at("e").get<long long>();
  for (auto& g : j.at("generators")) d.generators.push_back(class_from(g));
  return std::make_shared<const SurfaceModel>(std::move(d));
}

}  // namespace

json certificate_to_json(const CertifiedFiber& c) {
  const Pencil& p = c.pencil;
  json j;
  j["label"] = c.label;
  // Factors may live in an extension of the pencil's field.
  TowerPtr field = common_tower(p.F.tower(), p.G.tower());
  field = common_tower(field, c.cert.a.tower());
  field = common_tower(field, c.cert.b.tower());
  field = common_tower(field, c.cert.scalar.tower());
  for (auto& f : c.cert.factors) field = common_tower(field, f.form.tower());
  j["field"] = field->to_string();
  j["vars"] = p.F.vars()->to_string();
  j["surface"] = surface_json(*p.surface);
  j["pencil"] = {{"F", p.F.to_string()}, {"G", p.G.to_string()}, {"D", class_json(p.D)}};
  j["param"] = {c.cert.a.to_string(), c.cert.b.to_string()};
  json factors = json::array();
  for (auto& f : c.cert.factors)
    factors.push_back({{"form", f.form.to_string()}, {"mult", f.mult}, {"class", class_json(f.cls)}});
  j["factors"] = factors;
  j["scalar"] = c.cert.scalar.to_string();
  return j;
}

CertifiedFiber certificate_from_json(const json& j) {
  try {
    auto tower = TowerSpec::parse(j.at("field").get<std::string>());
    auto vars = VarSet::parse(j.at("vars").get<std::string>());
    auto form = [&](const json& v) { return parse_form(vars, tower, v.get<std::string>()); };
    auto elem = [&](const json& v) { return parse_element(tower, v.get<std::string>()); };
    CertifiedFiber c{j.value("label", std::string{}),
                     Pencil{surface_from(j.at("surface")), form(j.at("pencil").at("F")), form(j.at("pencil").at("G")),
                            class_from(j.at("pencil").at("D"))},
                     FiberCertificate{elem(j.at("param").at(0)), elem(j.at("param").at(1)), {}, elem(j.at("scalar"))}};
    for (auto& f : j.at("factors"))
      c.cert.factors.push_back({form(f.at("form")), f.at("mult").get<unsigned>(), class_from(f.at("class"))});
    return c;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed certificate: ") + e.what());
  }
}

json bundle_to_json(const std::vector<CertifiedFiber>& certs) {
  json arr = json::array();
  for (auto& c : certs) arr.push_back(certificate_to_json(c));
  return {{"certificates", arr}};
}

std::vector<CertifiedFiber> bundle_from_json(const json& j) {
  if (!j.contains("certificates") || !j["certificates"].is_array())
    throw ParseError("bundle needs a \"certificates\" array");
  std::vector<CertifiedFiber> out;
  for (auto& c : j["certificates"]) out.push_back(certificate_from_json(c));
  return out;
}

}  // namespace pencil
