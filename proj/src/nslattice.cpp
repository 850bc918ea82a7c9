#include "pencil/nslattice.hpp"

#include "pencil/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <deque>
#include <fstream>
#include <sstream>

namespace pencil {

namespace {

std::string_view trim_view(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

NSClass unit(std::size_t rank, std::size_t i, long long v = 1) {
  NSClass c{std::vector<long long>(rank)};
  c.coords[i] = v;
  return c;
}

}  // namespace

bool NSClass::is_zero() const {
  return std::all_of(coords.begin(), coords.end(), [](long long v) { return v == 0; });
}

std::string NSClass::to_string() const {
  std::string out = "[";
  for (std::size_t i = 0; i < coords.size(); ++i) out += (i ? "," : "") + std::to_string(coords[i]);
  return out + "]";
}

NSClass& NSClass::operator+=(const NSClass& o) {
  if (o.size() != size()) throw std::invalid_argument("classes of different lattices");
  for (std::size_t i = 0; i < size(); ++i) coords[i] += o.coords[i];
  return *this;
}

NSClass& NSClass::operator-=(const NSClass& o) {
  if (o.size() != size()) throw std::invalid_argument("classes of different lattices");
  for (std::size_t i = 0; i < size(); ++i) coords[i] -= o.coords[i];
  return *this;
}

NSClass operator*(long long k, NSClass a) {
  for (auto& v : a.coords) v *= k;
  return a;
}

SurfaceModel::SurfaceModel(Data data) : d_(std::move(data)) {
  const std::size_t r = d_.gram.size();
  if (r == 0) throw std::invalid_argument("empty intersection form");
  for (std::size_t i = 0; i < r; ++i) {
    if (d_.gram[i].size() != r) throw std::invalid_argument("intersection form is not square");
    for (std::size_t j = 0; j < i; ++j)
      if (d_.gram[i][j] != d_.gram[j][i]) throw std::invalid_argument("intersection form is not symmetric");
  }
  check(d_.K);
  check(d_.H);
  for (auto& g : d_.generators) {
    check(g);
    if (degree(g) < 1)
      throw std::invalid_argument("generator " + g.to_string() + " has non-positive degree against H");
  }
}

void SurfaceModel::check(const NSClass& c) const {
  if (c.size() != rank())
    throw std::invalid_argument("class " + c.to_string() + " does not have rank " + std::to_string(rank()));
}

SurfacePtr SurfaceModel::p2() {
  static const SurfacePtr s = std::make_shared<const SurfaceModel>(
      Data{"p2", {{1}}, NSClass{{-3}}, NSClass{{1}}, 3, Oracle::P2, {NSClass{{1}}}});
  return s;
}

SurfacePtr SurfaceModel::p1xp1() {
  static const SurfacePtr s = std::make_shared<const SurfaceModel>(Data{
      "p1xp1", {{0, 1}, {1, 0}}, NSClass{{-2, -2}}, NSClass{{1, 1}}, 4, Oracle::P1xP1, {NSClass{{1, 0}}, NSClass{{0, 1}}}});
  return s;
}

SurfacePtr SurfaceModel::cubic27() {
  static const SurfacePtr s = [] {
    std::vector<std::vector<long long>> gram(7, std::vector<long long>(7));
    gram[0][0] = 1;
    for (std::size_t i = 1; i < 7; ++i) gram[i][i] = -1;
    NSClass K{{-3, 1, 1, 1, 1, 1, 1}};
    return std::make_shared<const SurfaceModel>(
        Data{"cubic27", gram, K, -1 * K, 9, Oracle::Cubic27, cubic_lines()});
  }();
  return s;
}

SurfacePtr SurfaceModel::parse_config(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::map<std::string, std::string> fields;
  std::string kind;
  while (std::getline(in, line)) {
    std::string_view l = trim_view(line);
    if (l.empty() || l.front() == '#') continue;
    if (l.substr(0, 8) == "surface ") {
      kind = std::string(trim_view(l.substr(8)));
      continue;
    }
    auto eq = l.find('=');
    if (eq == std::string_view::npos) throw ParseError("expected 'key = value' in surface description: " + line);
    fields[std::string(trim_view(l.substr(0, eq)))] = std::string(trim_view(l.substr(eq + 1)));
  }
  if (kind == "p2") return p2();
  if (kind == "p1xp1") return p1xp1();
  if (kind == "cubic27" || kind == "cubic") return cubic27();
  if (kind != "custom") throw ParseError("unknown surface kind '" + kind + "'");
  auto need = [&](const char* key) {
    auto it = fields.find(key);
    if (it == fields.end()) throw ParseError(std::string("custom surface is missing '") + key + "'");
    try {
      return nlohmann::json::parse(it->second);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string("bad value for '") + key + "': " + e.what());
    }
  };
  try {
    Data d;
    d.name = fields.count("name") ? fields["name"] : "custom";
    d.gram = need("gram").get<std::vector<std::vector<long long>>>();
    d.K = NSClass{need("K").get<std::vector<long long>>()};
    d.H = NSClass{need("H").get<std::vector<long long>>()};
    d.e = need("e").get<long long>();
    d.oracle = Oracle::Custom;
    for (auto& g : need("generators").get<std::vector<std::vector<long long>>>()) d.generators.push_back(NSClass{g});
    return std::make_shared<const SurfaceModel>(std::move(d));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed custom surface: ") + e.what());
  } catch (const ParseError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("inconsistent custom surface: ") + e.what());
  }
}

SurfacePtr SurfaceModel::from_tag(const std::string& tag) {
  if (tag == "p2") return p2();
  if (tag == "p1xp1") return p1xp1();
  if (tag == "cubic27" || tag == "cubic") return cubic27();
  std::ifstream in(tag);
  if (!in) throw ParseError("unknown surface '" + tag + "' (not a catalog name or readable file)");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

long long SurfaceModel::pair(const NSClass& a, const NSClass& b) const {
  check(a);
  check(b);
  long long s = 0;
  for (std::size_t i = 0; i < rank(); ++i)
    for (std::size_t j = 0; j < rank(); ++j) s += a.coords[i] * d_.gram[i][j] * b.coords[j];
  return s;
}

bool SurfaceModel::is_effective(const NSClass& c) const {
  check(c);
  if (c.is_zero()) return false;
  switch (d_.oracle) {
    case Oracle::P2:
      return c.coords[0] >= 1;
    case Oracle::P1xP1:
      return c.coords[0] >= 0 && c.coords[1] >= 0;
    case Oracle::Cubic27:
    case Oracle::Custom:
      return search_effective(c);
  }
  return false;
}

// Decides whether c is a nonnegative combination of generators. Every
// generator has H-degree >= 1, so each subtraction lowers the degree.
bool SurfaceModel::search_effective(const NSClass& c) const {
  if (c.is_zero()) return true;
  const long long deg = degree(c);
  if (deg < 1) return false;
  if (d_.oracle == Oracle::Cubic27) {
    const long long a = c.coords[0];
    if (a < 0) return false;
    for (std::size_t i = 1; i < 7; ++i)
      if (c.coords[i] < -a || c.coords[i] > deg) return false;
  }
  {
    std::lock_guard lock(cache_mutex_);
    auto it = cache_.find(c);
    if (it != cache_.end()) return it->second;
  }
  bool found = false;
  for (auto& g : d_.generators) {
    if (search_effective(c - g)) {
      found = true;
      break;
    }
  }
  std::lock_guard lock(cache_mutex_);
  cache_.emplace(c, found);
  return found;
}

ClassSet SurfaceModel::split_remainders(const NSClass& d) const {
  ClassSet seen;
  std::deque<NSClass> queue{d};
  while (!queue.empty()) {
    NSClass cur = queue.front();
    queue.pop_front();
    for (auto& g : d_.generators) {
      NSClass r = cur - g;
      if (!is_effective(r) || seen.count(r)) continue;
      seen.insert(r);
      queue.push_back(r);
    }
  }
  return seen;
}

std::optional<std::vector<unsigned>> SurfaceModel::form_degree(const NSClass& c) const {
  check(c);
  if (std::any_of(c.coords.begin(), c.coords.end(), [](long long v) { return v < 0; })) return std::nullopt;
  switch (d_.oracle) {
    case Oracle::P2:
      return std::vector<unsigned>{static_cast<unsigned>(c.coords[0])};
    case Oracle::P1xP1:
      return std::vector<unsigned>{static_cast<unsigned>(c.coords[0]), static_cast<unsigned>(c.coords[1])};
    default:
      return std::nullopt;
  }
}

NSClass SurfaceModel::parse_class(std::string_view text) const {
  std::string_view s = trim_view(text);
  if (!s.empty() && s.front() == '[') {
    NSClass c;
    try {
      c.coords = nlohmann::json::parse(s).get<std::vector<long long>>();
    } catch (const nlohmann::json::exception&) {
      throw ParseError("bad class '" + std::string(text) + "'");
    }
    check(c);
    return c;
  }
  // Symbolic sum of integer multiples of l, e1..e6, H and K.
  NSClass c{std::vector<long long>(rank())};
  std::size_t pos = 0;
  auto fail = [&] { throw ParseError("bad class '" + std::string(text) + "'"); };
  if (s.empty()) fail();
  while (pos < s.size()) {
    long long sign = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      sign = s[pos] == '-' ? -1 : 1;
      ++pos;
    } else if (pos != 0) {
      fail();
    }
    long long k = 1;
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos > start) k = std::stoll(std::string(s.substr(start, pos - start)));
    if (pos < s.size() && s[pos] == '*') ++pos;
    start = pos;
    while (pos < s.size() && std::isalnum(static_cast<unsigned char>(s[pos]))) ++pos;
    std::string_view sym = s.substr(start, pos - start);
    NSClass term;
    if (sym == "H") term = d_.H;
    else if (sym == "K") term = d_.K;
    else if (d_.oracle == Oracle::Cubic27 && sym == "l") term = unit(7, 0);
    else if (d_.oracle == Oracle::Cubic27 && sym.size() == 2 && sym[0] == 'e' && sym[1] >= '1' && sym[1] <= '6')
      term = unit(7, static_cast<std::size_t>(sym[1] - '0'));
    else fail();
    c += (sign * k) * term;
  }
  return c;
}

SaturatedSet saturated_closure(const SurfacePtr& s, const ClassSet& seeds) {
  std::vector<NSClass> order;
  for (auto& d : seeds) {
    if (!s->is_effective(d)) throw std::invalid_argument("seed " + d.to_string() + " is not effective");
    order.push_back(d);
  }
  // Remainders of a remainder of d are remainders of d, so a class inside an
  // expanded down-set needs no expansion of its own.
  std::stable_sort(order.begin(), order.end(),
                   [&](const NSClass& a, const NSClass& b) { return s->degree(a) > s->degree(b); });
  ClassSet out;
  for (auto& d : order) {
    if (!out.insert(d).second) continue;
    for (auto& r : s->split_remainders(d)) {
      out.insert(r);
      out.insert(d - r);
    }
  }
  return {s, out};
}

SaturationCheck is_saturated(const SurfaceModel& s, const ClassSet& set) {
  for (auto& d : set) {
    // Both parts of a split occur as remainders, so checking remainders suffices.
    for (auto& r : s.split_remainders(d))
      if (!set.count(r)) return {false, std::pair{d, r}};
  }
  return {};
}

long long curve_euler(const SurfaceModel& s, const NSClass& c, const std::vector<SingularityDatum>& sing) {
  long long e = -s.pair(s.K(), c) - s.pair(c, c);
  for (auto& p : sing) e += 2 * p.delta - p.branches + 1;
  return e;
}

std::vector<NSClass> cubic_lines() {
  std::vector<NSClass> lines;
  for (std::size_t i = 1; i <= 6; ++i) lines.push_back(unit(7, i));
  for (std::size_t i = 1; i <= 6; ++i)
    for (std::size_t j = i + 1; j <= 6; ++j) lines.push_back(unit(7, 0) - unit(7, i) - unit(7, j));
  for (std::size_t i = 1; i <= 6; ++i) {
    NSClass c{{2, -1, -1, -1, -1, -1, -1}};
    c.coords[i] = 0;
    lines.push_back(c);
  }
  return lines;
}

std::vector<std::pair<NSClass, NSClass>> line_pairs_residual(const SurfaceModel& cubic, const NSClass& line) {
  auto lines = cubic_lines();
  if (std::find(lines.begin(), lines.end(), line) == lines.end())
    throw std::invalid_argument(line.to_string() + " is not a line class");
  NSClass residual = cubic.H() - line;
  std::vector<std::pair<NSClass, NSClass>> out;
  for (std::size_t i = 0; i < lines.size(); ++i)
    for (std::size_t j = i + 1; j < lines.size(); ++j)
      if (lines[i] + lines[j] == residual && cubic.pair(lines[i], lines[j]) == 1) out.emplace_back(lines[i], lines[j]);
  return out;
}

std::vector<NSClass> parse_class_list(const SurfaceModel& s, std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::vector<NSClass> out;
  while (std::getline(in, line)) {
    std::string_view l = trim_view(line);
    if (l.empty() || l.front() == '#') continue;
    out.push_back(s.parse_class(l));
  }
  return out;
}

}  // namespace pencil
