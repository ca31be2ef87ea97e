#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "eymkit/matrix.hpp"

namespace eymkit {

using Vec = std::vector<RatFunc>;

struct CaseParam {
  std::string name;
  std::string range;  // ">=0", ">0", "(0,1]" or empty for unrestricted
};

enum class NoSolutionReason { TrivialStressEnergy, InconsistentSystem, FlatCurvature };
std::string to_string(NoSolutionReason r);
std::optional<NoSolutionReason> parse_reason(std::string_view s);

struct CaseGolden {
  std::optional<FieldMatrix> metric;
  std::optional<std::string> lorentz;
  std::optional<FieldMatrix> ricci;
  std::optional<RatFunc> scalar;
  // Index 0..3 for u1..u4; set when the catalog states a connection family.
  std::optional<std::vector<FieldMatrix>> connection;
  std::optional<int> holonomy_dim;
  // nullopt reason means the golden verdict is a solution.
  bool has_verdict = false;
  std::optional<NoSolutionReason> no_solution;
  std::optional<RatFunc> lambda;
  std::optional<RatFunc> kappa;
  std::optional<std::string> space;
};

// Reductive pair with basis e1..en, u1..u4; basis index k < n is e_{k+1},
// k >= n is u_{k-n+1}.
class LiePair {
 public:
  LiePair() = default;
  LiePair(std::string id, std::size_t dim_h);

  const std::string& id() const { return id_; }
  std::size_t dim_h() const { return n_; }
  std::size_t dim() const { return n_ + 4; }
  std::string label(std::size_t k) const;
  std::optional<std::size_t> index(std::string_view label) const;

  // Stores [x,y] = v; [y,x] = -v is implied unless declared separately.
  void set_bracket(std::size_t x, std::size_t y, Vec v);
  const Vec& bracket(std::size_t x, std::size_t y) const { return c_[x * dim() + y]; }
  Vec bracket(const Vec& x, const Vec& y) const;
  // Declared entries, for the antisymmetry audit.
  struct Declared {
    std::size_t x, y;
    Vec v;
  };
  const std::vector<Declared>& declared() const { return declared_; }

  Vec m_part(const Vec& v) const;  // zeroes the e-components
  Vec h_part(const Vec& v) const;  // zeroes the u-components
  Vec basis_vector(std::size_t k) const;

  std::vector<CaseParam> params;
  std::vector<std::string> notes;
  CaseGolden golden;

 private:
  std::string id_;
  std::size_t n_ = 0;
  std::vector<Vec> c_;
  std::vector<Declared> declared_;
};

struct ValidationCheck {
  std::string name;
  bool pass = true;
  std::string witness;  // empty when passing
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;  // antisymmetry, jacobi, subalgebra, reductive, symmetric, faithful
  bool symmetric = false;
  bool all_pass() const;
  const ValidationCheck& get(std::string_view name) const;
};

ValidationReport validate_pair(const LiePair& p);
bool is_reductive(const LiePair& p);
bool is_symmetric(const LiePair& p);

// rho(e_i) = ad(e_i) restricted to m: entry (r, c) is the u_r coefficient of [e_i, u_c].
std::vector<FieldMatrix> isotropy_rep(const LiePair& p);

// Residual of rho([e_i,e_j]) - [rho(e_i), rho(e_j)] for the worst pair; zero matrix when a homomorphism.
bool isotropy_is_homomorphism(const LiePair& p, std::string* witness = nullptr);
bool isotropy_is_faithful(const LiePair& p);

struct Table1Row {
  std::string family;
  std::string cases;
  std::string condition;
};

struct Catalog {
  std::vector<LiePair> pairs;
  std::vector<Table1Row> table1;
  const LiePair* find(std::string_view id) const;
};

// Throws Error(CatalogParse) with "<source>:<line>: ..." context.
Catalog parse_catalog(std::string_view text, const std::string& source);
Catalog load_catalog_file(const std::string& path);
const Catalog& builtin_catalog();
std::string_view builtin_catalog_text();

// Glob over case labels: '*' any run, '?' one character; everything else literal.
bool glob_match(std::string_view pattern, std::string_view text);

}  // namespace eymkit
