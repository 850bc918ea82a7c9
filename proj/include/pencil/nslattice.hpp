#pragma once

// Neron-Severi lattices of the catalog surfaces (P2, P1xP1, the cubic surface
// in the blow-up basis l,e1..e6) and of user-described surfaces, with
// effectivity oracles, saturated sets and curve Euler characteristics.

#include <compare>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pencil {

struct NSClass {
  std::vector<long long> coords;

  std::size_t size() const { return coords.size(); }
  bool is_zero() const;
  std::string to_string() const;

  NSClass& operator+=(const NSClass& o);
  NSClass& operator-=(const NSClass& o);
  friend NSClass operator+(NSClass a, const NSClass& b) { return a += b; }
  friend NSClass operator-(NSClass a, const NSClass& b) { return a -= b; }
  friend NSClass operator*(long long k, NSClass a);
  friend auto operator<=>(const NSClass&, const NSClass&) = default;
  friend bool operator==(const NSClass&, const NSClass&) = default;
};

using ClassSet = std::set<NSClass>;

enum class Oracle { P2, P1xP1, Cubic27, Custom };

class SurfaceModel {
 public:
  struct Data {
    std::string name;
    std::vector<std::vector<long long>> gram;
    NSClass K;
    NSClass H;
    long long e = 0;
    Oracle oracle = Oracle::Custom;
    std::vector<NSClass> generators;
  };

  explicit SurfaceModel(Data data);

  static std::shared_ptr<const SurfaceModel> p2();
  static std::shared_ptr<const SurfaceModel> p1xp1();
  static std::shared_ptr<const SurfaceModel> cubic27();
  /// Reads the plain-text surface description (`surface p2|p1xp1|cubic27` or `surface custom` + fields).
  static std::shared_ptr<const SurfaceModel> parse_config(std::string_view text);
  /// A catalog name, or otherwise a path to a surface description file.
  static std::shared_ptr<const SurfaceModel> from_tag(const std::string& tag);

  const std::string& name() const { return d_.name; }
  std::size_t rank() const { return d_.gram.size(); }
  const std::vector<std::vector<long long>>& gram() const { return d_.gram; }
  const NSClass& K() const { return d_.K; }
  const NSClass& H() const { return d_.H; }
  long long euler() const { return d_.e; }
  Oracle oracle() const { return d_.oracle; }
  /// Classes whose nonnegative combinations are the effective classes.
  const std::vector<NSClass>& generators() const { return d_.generators; }

  long long pair(const NSClass& a, const NSClass& b) const;
  long long degree(const NSClass& c) const { return pair(d_.H, c); }
  bool is_effective(const NSClass& c) const;

  /// Remainders r = d - delta over all splits of d into two effective classes.
  ClassSet split_remainders(const NSClass& d) const;

  /// Degree vector of forms representing the class, where the surface has a form model.
  std::optional<std::vector<unsigned>> form_degree(const NSClass& c) const;

  /// Reads "[1,0]" or, on the cubic model, symbolic sums like "2l-e1-e2" (also "H", "K").
  NSClass parse_class(std::string_view text) const;

  void check(const NSClass& c) const;

 private:
  Data d_;
  mutable std::mutex cache_mutex_;
  mutable std::map<NSClass, bool> cache_;

  bool search_effective(const NSClass& c) const;
};

using SurfacePtr = std::shared_ptr<const SurfaceModel>;

struct SaturatedSet {
  SurfacePtr surface;
  ClassSet classes;
};

SaturatedSet saturated_closure(const SurfacePtr& s, const ClassSet& seeds);

struct SaturationCheck {
  bool saturated = true;
  /// A member d and an effective delta with d - delta effective but not both in the set.
  std::optional<std::pair<NSClass, NSClass>> witness;
};
SaturationCheck is_saturated(const SurfaceModel& s, const ClassSet& set);

struct SingularityDatum {
  long long delta = 0;
  long long branches = 1;
};

/// Euler number of a curve in the class: -K.c - c.c + sum(2 delta - branches + 1).
long long curve_euler(const SurfaceModel& s, const NSClass& c, const std::vector<SingularityDatum>& sing);

/// The 27 line classes of the cubic surface: e_i, l-e_i-e_j, 2l-sum(e)+e_i.
std::vector<NSClass> cubic_lines();

/// Unordered pairs of distinct lines summing to H - line and meeting once.
std::vector<std::pair<NSClass, NSClass>> line_pairs_residual(const SurfaceModel& cubic, const NSClass& line);

/// One class per line, e.g. "[1,0]"; blank lines and '#' comments ignored.
std::vector<NSClass> parse_class_list(const SurfaceModel& s, std::string_view text);

}  // namespace pencil
