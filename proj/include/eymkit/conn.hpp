#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "eymkit/geom.hpp"

namespace eymkit {

// Invariant metric connection: Lambda(u_1..u_4) as endomorphisms of m, entries
// linear in the free parameters.
struct ConnectionFamily {
  std::vector<FieldMatrix> maps;
  std::vector<std::string> params;
  std::size_t dim() const { return params.size(); }
  bool is_zero() const;
};

ConnectionFamily zero_connection();

// General solution of equivariance plus g-skewness. A free entry (r, c) of
// Lambda(u_i) is named by the letter of u_i (x, v, y, z) and "<r+1><c+1>".
ConnectionFamily solve_connections(const LiePair& p, const MetricFamily& m);

// Lambda([e,u]) = [rho(e), Lambda(u)] for every generator e and basis vector u.
bool connection_is_equivariant(const LiePair& p, const std::vector<FieldMatrix>& maps);
// t(Lambda(u))·g + g·Lambda(u) = 0 for every u.
bool connection_is_skew(const FieldMatrix& g, const std::vector<FieldMatrix>& maps);

// Substitutes the parameters of a family.
std::vector<FieldMatrix> instantiate(const ConnectionFamily& c, const Assignment& at);

// Seeded substitution of distinct small nonzero rationals for the given names.
Assignment random_assignment(const std::vector<std::string>& names, std::uint64_t seed);

struct HolonomyAlgebra {
  std::vector<FieldMatrix> basis;
  std::size_t dim() const { return basis.size(); }
  bool substituted = false;  // parameters were replaced by random values first
  bool from_isotropy = false;  // basis is a subset of the rho(e_i)
};

struct CurvatureForm {
  CurvatureGrid R;  // R[i][j] = R(u_i, u_j), antisymmetric in (i, j)
  bool depends_on_params = false;
  HolonomyAlgebra holonomy;
  // coeffs[alpha](i, j) = R^alpha_ij in the holonomy basis; empty when the
  // basis came from a substitution and the components do not expand in it.
  std::vector<FieldMatrix> coeffs;
};

// R(u_i,u_j) = [L_i, L_j] - L([u_i,u_j]_m) - rho([u_i,u_j]_h) with L = Lambda.
CurvatureGrid connection_curvature(const LiePair& p, const std::vector<FieldMatrix>& maps);

// Lie algebra generated by the curvature components. When `params` occur in
// them, every parameter is first replaced by a seeded random assignment. `preferred`
// matrices are used as the basis whenever they span the result.
HolonomyAlgebra holonomy(const CurvatureGrid& R, const std::vector<FieldMatrix>& preferred,
                         const std::vector<std::string>& params = {}, std::uint64_t seed = 1);

// True iff [b_i, b_j] lies in the span of the basis for all i, j.
bool holonomy_is_closed(const std::vector<FieldMatrix>& basis);

// Coefficients of M in the basis, or nullopt when M is outside the span.
std::optional<std::vector<RatFunc>> expand_in(const std::vector<FieldMatrix>& basis,
                                              const FieldMatrix& M);

CurvatureForm curvature_form(const LiePair& p, const ConnectionFamily& c, std::uint64_t seed = 1);

// Whether two families span the same space of maps (each read as the image of
// its parameter vector), compared with parameters treated as coordinates.
bool same_family(const ConnectionFamily& a, const std::vector<FieldMatrix>& b);

}  // namespace eymkit
