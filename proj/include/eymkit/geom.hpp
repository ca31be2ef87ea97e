#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "eymkit/liecat.hpp"

namespace eymkit {

struct MetricFamily {
  FieldMatrix g;
  std::vector<std::string> params;  // free metric parameters, in naming order
  RatFunc det;
  std::optional<std::string> lorentz_condition;
  bool golden_aligned = false;  // parameter letters taken from the catalog shape
};

// Ad(H)-invariant symmetric forms on m. Throws NoInvariantMetric when only the
// zero form exists.
MetricFamily solve_invariant_metric(const LiePair& p);

// Max over generators of the residual of t(rho)·g + g·rho; zero matrix iff invariant.
bool metric_is_invariant(const std::vector<FieldMatrix>& rho, const FieldMatrix& g);

enum class SignatureKind { Lorentzian, Riemannian, Neutral, Degenerate };
std::string to_string(SignatureKind k);

struct SignatureVerdict {
  SignatureKind kind;
  int positive = 0;
  int negative = 0;
  int zero = 0;
};

// Inertia of a symmetric rational matrix by congruence elimination.
SignatureVerdict signature_of(const QMatrix& g);
// Throws DegenerateAtSample when det g vanishes at the sample.
SignatureVerdict lorentz_check(const MetricFamily& m, const Assignment& sample);

// Evaluates a condition such as "b*d > c^2" or "a*b != 0" at a point.
bool eval_condition(const std::string& condition, const Assignment& at);

// Curvature operators indexed [i][j], as 4x4 matrices acting on m:
// R(u_i,u_j) = [L_i, L_j] - L([u_i,u_j]_m) - rho([u_i,u_j]_h) for a Nomizu map L.
using CurvatureGrid = std::vector<std::vector<FieldMatrix>>;
CurvatureGrid curvature_operators(const LiePair& p, const std::vector<FieldMatrix>& rho,
                                  const std::vector<FieldMatrix>& nomizu);

// ricci(Y,Z) = trace(X -> R(X,Y)Z).
FieldMatrix ricci_from(const CurvatureGrid& R);

struct CurvatureReport {
  std::vector<FieldMatrix> nomizu;  // alpha(u_i); column j is alpha(u_i)u_j
  CurvatureGrid R;
  FieldMatrix ricci;
  RatFunc scalar;
  FieldMatrix g_inv;
};

// Levi-Civita data from the Koszul formula. Throws SingularMetric.
CurvatureReport levi_civita(const LiePair& p, const MetricFamily& m);

}  // namespace eymkit

namespace eymkit {

// Sampled agreement between the catalog's Lorentz condition and the computed
// signature: where the condition holds the metric must be Lorentzian, where it
// fails (and det g != 0) it must not be. Samples with det g = 0 are skipped.
struct LorentzAudit {
  int inside = 0;
  int outside = 0;
  int mismatches = 0;
  std::string witness;  // first mismatching sample
  bool pass() const { return mismatches == 0 && inside > 0; }
};
LorentzAudit audit_lorentz(const MetricFamily& m, int per_side, std::uint64_t seed);

}  // namespace eymkit
