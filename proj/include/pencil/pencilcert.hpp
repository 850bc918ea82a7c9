#pragma once

// Pencils of forms and certificates for their reducible members.

#include "pencil/forms.hpp"
#include "pencil/nslattice.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace pencil {

struct Pencil {
  SurfacePtr surface;
  Form F;
  Form G;
  NSClass D;

  /// Throws std::invalid_argument when F, G are dependent, of different
  /// degrees, or of a degree that does not represent D.
  void validate() const;
};

struct CertFactor {
  Form form;
  unsigned mult = 1;
  NSClass cls;
};

struct FiberCertificate {
  TowerElement a;
  TowerElement b;
  std::vector<CertFactor> factors;
  /// scalar * prod(factor^mult) == a*F + b*G, literally.
  TowerElement scalar;
};

Form fiber_at(const Pencil& p, const TowerElement& a, const TowerElement& b);

struct CertifyOutcome {
  std::optional<FiberCertificate> cert;
  std::string failure;
  explicit operator bool() const { return cert.has_value(); }
};

/// Checks the claimed factorization of the member [a:b]. Without a given
/// scalar the scalar is read off the leading coefficients; with one, it is used as is.
CertifyOutcome certify_fiber(const Pencil& p, const TowerElement& a, const TowerElement& b,
                             const std::vector<CertFactor>& claimed,
                             const std::optional<TowerElement>& scalar = std::nullopt);

/// Re-checks a stored certificate literally, including its scalar.
CertifyOutcome verify_certificate(const Pencil& p, const FiberCertificate& cert);

bool completely_reducible(const FiberCertificate& cert, const ClassSet& delta);

struct MutationReport {
  std::size_t mutations = 0;
  std::size_t rejected = 0;
  bool sound() const { return mutations == rejected; }
};
/// Adds 1 to each coefficient of each factor in turn and re-verifies.
MutationReport mutation_check(const Pencil& p, const FiberCertificate& cert);

struct BasePointReport {
  long long expected = 0;  // D.D
  std::size_t supplied = 0;
  std::size_t transversal = 0;
};
/// Verifies that every supplied point is a base point (throws std::domain_error
/// otherwise) and counts those where the gradients of F and G are independent.
BasePointReport base_point_count(const Pencil& p, const std::vector<std::vector<TowerElement>>& points);

struct EulerLedger {
  long long e_ambient_blowup = 0;
  long long e_generic = 0;
  std::vector<std::pair<std::string, long long>> e_rel;
  long long leftover = 0;
  bool consistent() const { return leftover >= 0; }
};
EulerLedger euler_ledger(long long e_ambient_blowup, long long e_generic,
                         std::vector<std::pair<std::string, long long>> e_rel);

struct KodairaBudget {
  long long total = 0;
  bool sums_to_twelve = false;
  /// False for configurations excluded by the classification of rational elliptic surfaces.
  bool exists = true;
};
/// Tags like "I1", "I_3", "II", "III", "IV", optionally with a count prefix ("3I3").
KodairaBudget kodaira_budget(const std::vector<std::string>& types);
/// Splits "I_1+I_2+3I_3" into tags.
std::vector<std::string> parse_fiber_types(std::string_view text);

/// Genus and Euler number of a smooth plane curve of degree d.
std::pair<long long, long long> plane_genus_euler(long long d);

}  // namespace pencil
