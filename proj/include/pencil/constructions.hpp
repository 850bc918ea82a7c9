#pragma once

// The explicit pencil families: Ruppert nets, the Kummer quartic pencil,
// special Pascal configurations with their double covers of P1xP1, conic
// pencils on the cubic surface and the surfaces f(x,y) = g(z,t).

#include "pencil/forms.hpp"
#include "pencil/linalg.hpp"
#include "pencil/pencilcert.hpp"
#include "pencil/report.hpp"

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace pencil {

using Point = std::vector<TowerElement>;

struct ConstructionResult {
  std::vector<ReportItem> items;
  std::vector<CertifiedFiber> certificates;
};

// ---- Ruppert nets ----

struct RuppertNet {
  unsigned d = 0;
  TowerPtr tower;
  TowerElement zeta;        // primitive (d-1)-th root of unity
  VarSetPtr lambda_vars;    // [l0,l1,l2]
  VarSetPtr plane_vars;     // [x0,x1,x2]
  VarSetPtr net_vars;       // [l0,l1,l2; x0,x1,x2]
  Form F;                   // linear in the l's, degree d in the x's
  Form S;                   // degree 3(d-1) in the l's

  /// The member of the net at a parameter point.
  Form member(const Point& lambda) const;
};

RuppertNet ruppert_build(unsigned d);

struct LineDivision {
  std::size_t a = 0, b = 0;
  unsigned k = 0;           // the locus l_a = zeta^k l_b
  Form divisor;             // x_a - zeta^-k x_b over the locus variables
  std::optional<Form> cofactor;
};
LineDivision ruppert_line_divides(const RuppertNet& net, std::size_t a, std::size_t b, unsigned k);

/// The 3(d-1) linear factors of S as coefficient vectors in the l's.
std::vector<std::pair<LineDivision, Point>> ruppert_factor_lines(const RuppertNet& net);

/// Certificates of the reducible members of the pencil {L(l) = 0} of the net;
/// throws std::invalid_argument when L is not in general position.
ConstructionResult ruppert_certify(const RuppertNet& net, const std::vector<long long>& line, std::uint64_t seed);

// ---- Kummer quartic pencil ----

struct KummerQuarticData {
  TowerPtr tower;
  VarSetPtr plane_vars;  // [x,y,z]
  VarSetPtr cover_vars;  // [u1,u2,u3]
  Form lambda_F, lambda_G;
  std::vector<Form> lines;   // L1, L2, L3
  std::vector<Form> conics;  // C1, C2, C3
  Matrix A;                  // rows L1, L2, L3
  Matrix A_inv;

  /// f composed with x = A^-1 (u1^2, u2^2, u3^2).
  Form pullback(const Form& f) const;
};

KummerQuarticData kummer_build();
ConstructionResult kummer_certify(const KummerQuarticData& data);

struct ConicSplit {
  Form first;
  Form second;
};
/// Splits a quartic invariant under all sign changes of the variables into two
/// conics (up to scalar) via the equivariant ansatz; nullopt when none exists.
std::optional<ConicSplit> conic_split(const Form& q);

/// Parametrization (s,t) -> s*p + t*q of the line with coefficient vector `line`.
std::vector<Form> line_parametrization(const Point& line, const VarSetPtr& params);

// ---- Pascal configurations and the P1xP1 example ----

Point third_intersection(const Form& cubic, const Point& p, const Point& q);
bool same_point(const Point& p, const Point& q);

struct PascalConfig {
  Form cubic;
  std::vector<Point> P;  // P1..P6
  std::vector<Point> Q;  // Q1..Q3
};

PascalConfig pascal_build(const Form& cubic, const std::vector<Point>& Q, const Point& P1);
std::vector<ReportItem> pascal_verify(const PascalConfig& config, const std::string& prefix);

struct PascalLines {
  std::vector<Form> first;   // line factors of C1
  std::vector<Form> second;  // line factors of C2
  std::vector<Form> third;   // line factors of C3
  Form conic;                // Q
  Form line;                 // L
};

/// Recovers the labelled configuration from the line factors of C1 and C2 and the line L.
PascalConfig pascal_from_lines(const PascalLines& lines, const Form& cubic);

struct HesseP1P1Data {
  TowerPtr tower;
  VarSetPtr plane_vars;  // [x,y,z]
  VarSetPtr cover_vars;  // [u,v;s,t]
  PascalLines plane;
  std::vector<Form> cover_images;  // x, y, z in terms of u,v,s,t
  Form branch_conic;

  Form pullback(const Form& f) const;
};

HesseP1P1Data hesse_build();
/// The first displayed configuration, of type I1+I2+3I3.
PascalLines pascal_generic_example(const TowerPtr& tower, const VarSetPtr& plane_vars);
ConstructionResult hesse_certify(const HesseP1P1Data& data);

// ---- cubic surface ----

ConstructionResult cubic27_certify(const NSClass& line);

// ---- surfaces f(x,y) = g(z,t) ----

struct SfgData {
  unsigned d = 0;
  std::vector<Rational> f_roots;
  std::vector<Rational> g_roots;
};
ConstructionResult sfg_certify(const SfgData& data);

}  // namespace pencil
