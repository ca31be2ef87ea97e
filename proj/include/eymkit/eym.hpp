#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "eymkit/conn.hpp"

namespace eymkit {

// Diagonal metric on the holonomy algebra; alpha is labelled 5..4+dim.
struct HolonomyMetric {
  RatFunc default_value = RatFunc(2);
  std::map<int, RatFunc> overrides;
  RatFunc at(int alpha) const;
};

// Parses "5=2,6=3/2". Throws BadArgument on malformed input or a zero entry.
HolonomyMetric parse_holonomy_metric(std::string_view text);

// T_ij = 1/2 sum_alpha g_aa (R^a_ik R^a_jl g^kl - 1/4 g_ij R^a_kl R^a_hm g^kh g^lm).
FieldMatrix stress_tensor(const CurvatureForm& f, const MetricFamily& m, const HolonomyMetric& hm);
FieldMatrix stress_tensor(const std::vector<FieldMatrix>& coeffs, const FieldMatrix& g,
                          const FieldMatrix& g_inv, const HolonomyMetric& hm);

struct EymVerdict {
  bool solution = false;
  NoSolutionReason reason = NoSolutionReason::InconsistentSystem;  // meaningful when !solution
  RatFunc lambda;
  RatFunc kappa;
  // Must be nonzero for the solution to hold: needed pivots, then the factors
  // of the denominators of lambda and kappa and of the numerator of kappa.
  std::vector<RatFunc> conditions;
  std::vector<std::string> steps;   // elimination trace, in order
};

std::string to_string(const EymVerdict& v);

// Solves r + (lambda - s/2) g = kappa T for (lambda, kappa). Flat curvature is
// tested before the T = 0 exclusion; kappa = 0 does not count as a solution.
EymVerdict solve_first_eym(const CurvatureReport& r, const MetricFamily& m, const FieldMatrix& T);

// Residual r + (lambda - s/2) g - kappa T.
FieldMatrix first_eym_residual(const FieldMatrix& ricci, const RatFunc& scalar, const FieldMatrix& g,
                               const FieldMatrix& T, const RatFunc& lambda, const RatFunc& kappa);

// Densitized star: (*R)_kl = 1/2 sum eps_ijkl g^ii' g^jj' R_i'j', eps_1234 = 1.
CurvatureGrid hodge_star(const CurvatureGrid& R, const FieldMatrix& g_inv);
CurvatureGrid hodge_star(const CurvatureGrid& R, const MetricFamily& m);

// Values on the triples (1,2,3), (1,2,4), (1,3,4), (2,3,4).
using ThreeForm = std::vector<FieldMatrix>;
bool is_zero(const ThreeForm& w);

// Covariant exterior derivative of an invariant 2-form W with values in the
// holonomy algebra: sum_cyc ([L(X), W(Y,Z)] - W([X,Y]_m, Z)).
ThreeForm second_eym_residual(const LiePair& p, const std::vector<FieldMatrix>& maps, const CurvatureGrid& W);
// Same derivative written with the slot corrections
// sum_cyc (-W([X,Y]_m, Z) - W(L(X)Y, Z) - W(Y, L(X)Z)).
ThreeForm second_eym_slot_residual(const LiePair& p, const std::vector<FieldMatrix>& maps,
                                   const CurvatureGrid& W);

// Yang-Mills test of a connection family against its own curvature, exact and
// identically in all parameters. A nonzero value at a random point refutes
// quickly; otherwise the symbolic residual is computed.
bool family_is_yang_mills(const LiePair& p, const std::vector<FieldMatrix>& maps, const FieldMatrix& g,
                          bool slot_form, std::uint64_t seed = 5);
// Same test with a fixed 2-form W in place of the family curvature.
bool family_preserves(const LiePair& p, const std::vector<FieldMatrix>& maps, const FieldMatrix& g,
                      const CurvatureGrid& R, std::uint64_t seed = 5);

enum class GoldenStatus { Pass, Fail, Absent };
std::string to_string(GoldenStatus s);

struct GoldenCheck {
  std::string name;
  GoldenStatus status = GoldenStatus::Absent;
  std::string detail;
};

struct CaseReport {
  std::string id;
  ValidationReport validation;
  std::vector<FieldMatrix> rho;
  MetricFamily metric;
  LorentzAudit lorentz;
  CurvatureReport levi_civita;

  // General invariant metric connection and its own curvature.
  ConnectionFamily family;
  bool family_equivariant = false;
  bool family_skew = false;
  CurvatureForm family_curvature;
  bool family_second_eym = false;       // D *R = 0 with R the family curvature
  bool family_second_eym_slot = false;  // slot-form derivative, same data
  bool family_canonical_star = false;   // family derivative of *R(canonical)
  std::optional<bool> golden_family_second_eym;

  // Canonical connection (Lambda = 0), which carries the EYM analysis.
  HolonomyMetric holonomy_metric;
  CurvatureForm canonical;
  FieldMatrix T;
  RatFunc T_trace;
  EymVerdict verdict;
  CurvatureGrid star;
  bool second_eym = false;
  bool second_eym_slot = false;

  std::vector<GoldenCheck> golden;
  bool golden_pass() const;
  const GoldenCheck* golden_check(std::string_view name) const;
};

CaseReport run_case(const LiePair& p, const HolonomyMetric& hm = {});

// Structural invariants of a computed case: metric invariance, equivariance and
// skewness of the family (symbolically and at a random member), holonomy
// closure and skewness, T symmetric and traceless, and for solutions the
// vanishing residual and lambda = s/4.
std::vector<ValidationCheck> invariant_suite(const LiePair& p, const CaseReport& r);

}  // namespace eymkit
