#include "eymkit/eym.hpp"

#include <algorithm>
#include <array>
#include <tuple>

#include "eymkit/error.hpp"
#include "eymkit/linalg.hpp"

namespace eymkit {

RatFunc HolonomyMetric::at(int alpha) const {
  auto it = overrides.find(alpha);
  return it == overrides.end() ? default_value : it->second;
}

HolonomyMetric parse_holonomy_metric(std::string_view text) {
  HolonomyMetric hm;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find(',', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view item = text.substr(pos, end - pos);
    pos = end + 1;
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string_view::npos) throw Error(ErrorKind::BadArgument, "expected alpha=value in '" + std::string(item) + "'");
    int alpha = 0;
    try {
      std::size_t used = 0;
      alpha = std::stoi(std::string(item.substr(0, eq)), &used);
      if (used != eq) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw Error(ErrorKind::BadArgument, "bad holonomy index in '" + std::string(item) + "'");
    }
    if (alpha < 5) throw Error(ErrorKind::BadArgument, "holonomy indices start at 5");
    Rational v;
    try {
      v = Rational::parse(std::string(item.substr(eq + 1)));
    } catch (const Error&) {
      throw Error(ErrorKind::BadArgument, "bad holonomy value in '" + std::string(item) + "'");
    }
    if (v.is_zero()) throw Error(ErrorKind::BadArgument, "holonomy metric entries must be nonzero");
    hm.overrides[alpha] = RatFunc(v);
  }
  return hm;
}

FieldMatrix stress_tensor(const std::vector<FieldMatrix>& coeffs, const FieldMatrix& g, const FieldMatrix& g_inv,
                          const HolonomyMetric& hm) {
  FieldMatrix T(4, 4);
  for (std::size_t a = 0; a < coeffs.size(); ++a) {
    const FieldMatrix& Ra = coeffs[a];
    if (Ra.is_zero()) continue;
    FieldMatrix P = Ra * g_inv * Ra.transpose();
    RatFunc sq = (P * g_inv).trace();
    T += (RatFunc(Rational(1, 2)) * hm.at(static_cast<int>(a) + 5)) * (P - (RatFunc(Rational(1, 4)) * sq) * g);
  }
  return T;
}

FieldMatrix stress_tensor(const CurvatureForm& f, const MetricFamily& m, const HolonomyMetric& hm) {
  if (f.coeffs.size() != f.holonomy.dim())
    throw Error(ErrorKind::BadArgument, "curvature is not expanded in its holonomy basis");
  return stress_tensor(f.coeffs, m.g, inverse(m.g), hm);
}

FieldMatrix first_eym_residual(const FieldMatrix& ricci, const RatFunc& scalar, const FieldMatrix& g,
                               const FieldMatrix& T, const RatFunc& lambda, const RatFunc& kappa) {
  return ricci + (lambda - RatFunc(Rational(1, 2)) * scalar) * g - kappa * T;
}

namespace {

bool all_zero(const CurvatureGrid& R) {
  for (const auto& row : R)
    for (const auto& m : row)
      if (!m.is_zero()) return false;
  return true;
}

std::size_t den_vars(const RatFunc& x) { return x.den().variables().size(); }

// Smaller is simpler: parameters in the denominator, then all parameters, then length.
std::tuple<std::size_t, std::size_t, std::size_t> complexity(const RatFunc& c) {
  return {den_vars(c), c.variables().size(), c.str().size()};
}

// Monomial-content variables and primitive part of a polynomial, each a
// separate nonzero requirement.
void split_factors(const Poly& p, std::vector<Poly>& out) {
  if (p.is_constant()) return;
  Monomial content = p.terms().front().mono;
  for (const auto& t : p.terms()) content = Monomial::gcd(content, t.mono);
  for (const auto& [v, e] : content.powers()) out.push_back(Poly::variable(*v));
  std::vector<Term> rest;
  for (const auto& t : p.terms()) rest.push_back({*t.mono.divide(content), t.coef});
  Poly q = Poly::from_terms(std::move(rest)).primitive();
  if (!q.is_constant()) out.push_back(q);
}

// A sum of positive even-power terms is nonzero once one of its terms is.
bool implied_nonzero(const Poly& q, const std::vector<Poly>& kept) {
  if (q.terms().size() < 2) return false;
  for (const auto& t : q.terms()) {
    if (t.coef.sign() <= 0) return false;
    for (const auto& [v, e] : t.mono.powers())
      if (e % 2) return false;
  }
  for (const auto& t : q.terms()) {
    bool forced = true;  // a positive constant term needs no assumption
    for (const auto& [v, e] : t.mono.powers())
      forced = forced && std::any_of(kept.begin(), kept.end(), [&](const Poly& k) { return k == Poly::variable(*v); });
    if (forced) return true;
  }
  return false;
}

// Pivot factors are kept only when they also occur in a denominator of the
// data or of the result: otherwise the solution extends across their zero set.
std::vector<RatFunc> genericity(const std::vector<Poly>& pivots, const std::vector<Poly>& required,
                                const std::vector<Poly>& data_dens) {
  std::vector<Poly> present;
  for (const auto& p : data_dens) split_factors(p, present);
  for (const auto& p : required) split_factors(p, present);
  std::vector<Poly> factors;
  std::vector<Poly> pf;
  for (const auto& p : pivots) split_factors(p, pf);
  for (const auto& f : pf)
    if (std::find(present.begin(), present.end(), f) != present.end()) factors.push_back(f);
  for (const auto& p : required) split_factors(p, factors);
  std::vector<Poly> uniq;
  for (const auto& f : factors)
    if (std::find(uniq.begin(), uniq.end(), f) == uniq.end()) uniq.push_back(f);
  std::vector<Poly> simple, compound;
  for (const auto& f : uniq) (f.terms().size() == 1 ? simple : compound).push_back(f);
  std::vector<RatFunc> out;
  for (const auto& f : uniq)
    if (f.terms().size() == 1 || !implied_nonzero(f, simple)) out.emplace_back(f);
  return out;
}

struct Equation {
  std::size_t i, j;
  RatFunc cl, ck, rhs;  // cl*lambda + ck*kappa = rhs
};

std::string slot(const Equation& e) { return "(" + std::to_string(e.i + 1) + "," + std::to_string(e.j + 1) + ")"; }

}  // namespace

EymVerdict solve_first_eym(const CurvatureReport& r, const MetricFamily& m, const FieldMatrix& T) {
  EymVerdict v;
  if (all_zero(r.R)) {
    v.reason = NoSolutionReason::FlatCurvature;
    v.steps.push_back("curvature vanishes identically");
    return v;
  }
  if (T.is_zero()) {
    v.reason = NoSolutionReason::TrivialStressEnergy;
    v.steps.push_back("energy-momentum tensor vanishes identically");
    return v;
  }
  const RatFunc half_s = RatFunc(Rational(1, 2)) * r.scalar;
  std::vector<Equation> eqs;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i; j < 4; ++j) eqs.push_back({i, j, m.g(i, j), -T(i, j), half_s * m.g(i, j) - r.ricci(i, j)});

  std::vector<Poly> divisors;
  auto pick = [&](auto coef_of) -> std::optional<std::size_t> {
    std::optional<std::size_t> best;
    for (std::size_t k = 0; k < eqs.size(); ++k) {
      const RatFunc& c = coef_of(eqs[k]);
      if (c.is_zero()) continue;
      if (!best || complexity(c) < complexity(coef_of(eqs[*best]))) best = k;
    }
    return best;
  };

  // First pivot: lambda where g_ij != 0, otherwise kappa.
  auto p1 = pick([](const Equation& e) -> const RatFunc& { return e.cl; });
  bool first_is_lambda = p1.has_value();
  if (!p1) p1 = pick([](const Equation& e) -> const RatFunc& { return e.ck; });
  if (!p1) {
    v.steps.push_back("no equation involves lambda or kappa");
    return v;
  }
  const Equation piv = eqs[*p1];
  eqs.erase(eqs.begin() + static_cast<std::ptrdiff_t>(*p1));
  const RatFunc cu = first_is_lambda ? piv.cl : piv.ck;
  const RatFunc cw = first_is_lambda ? piv.ck : piv.cl;
  divisors.push_back(cu.num());
  v.steps.push_back("component " + slot(piv) + " solved for " + (first_is_lambda ? "lambda" : "kappa"));
  // u = (rhs - cw*w)/cu; substitute into the rest.
  for (auto& e : eqs) {
    RatFunc& eu = first_is_lambda ? e.cl : e.ck;
    RatFunc& ew = first_is_lambda ? e.ck : e.cl;
    if (eu.is_zero()) continue;
    RatFunc f = eu / cu;
    ew -= f * cw;
    e.rhs -= f * piv.rhs;
    eu = RatFunc();
  }
  auto p2 = pick([&](const Equation& e) -> const RatFunc& { return first_is_lambda ? e.ck : e.cl; });
  if (!p2) {
    bool consistent = std::all_of(eqs.begin(), eqs.end(), [](const Equation& e) { return e.rhs.is_zero(); });
    v.steps.push_back(consistent ? "second unknown undetermined" : "remaining components contradict");
    return v;
  }
  const Equation& second = eqs[*p2];
  const RatFunc c2 = first_is_lambda ? second.ck : second.cl;
  RatFunc w = second.rhs / c2;
  divisors.push_back(c2.num());
  v.steps.push_back("component " + slot(second) + " solved for " + (first_is_lambda ? "kappa" : "lambda"));
  for (const auto& e : eqs) {
    const RatFunc& ew = first_is_lambda ? e.ck : e.cl;
    if (!(e.rhs - ew * w).is_zero()) {
      v.steps.push_back("component " + slot(e) + " is not satisfied");
      return v;
    }
  }
  RatFunc u = (piv.rhs - cw * w) / cu;
  v.lambda = first_is_lambda ? u : w;
  v.kappa = first_is_lambda ? w : u;
  if (v.kappa.is_zero()) {
    v.steps.push_back("kappa vanishes identically");
    return v;
  }
  std::vector<Poly> data_dens{r.scalar.den()};
  for (const auto* M : {&r.ricci, &T})
    for (const auto& x : M->entries()) data_dens.push_back(x.den());
  v.conditions = genericity(divisors, {v.lambda.den(), v.kappa.den(), v.kappa.num()}, data_dens);
  v.solution = true;
  return v;
}

std::string to_string(const EymVerdict& v) {
  if (!v.solution) return "NoSolution(" + to_string(v.reason) + ")";
  return "Solution(lambda = " + v.lambda.str() + ", kappa = " + v.kappa.str() + ")";
}

namespace {

// Sign of the permutation (i j k l) of (0 1 2 3); 0 on a repeated index.
int levi_civita_sign(std::size_t i, std::size_t j, std::size_t k, std::size_t l) {
  std::array<std::size_t, 4> q{i, j, k, l};
  int sign = 1;
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = a + 1; b < 4; ++b) {
      if (q[a] == q[b]) return 0;
      if (q[a] > q[b]) sign = -sign;
    }
  return sign;
}

}  // namespace

CurvatureGrid hodge_star(const CurvatureGrid& R, const FieldMatrix& gi) {
  // Raised components R^{ij} for i < j.
  CurvatureGrid up(4, std::vector<FieldMatrix>(4, FieldMatrix(4, 4)));
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j) {
      FieldMatrix acc(4, 4);
      for (std::size_t a = 0; a < 4; ++a) {
        if (gi(i, a).is_zero()) continue;
        for (std::size_t b = 0; b < 4; ++b) {
          if (gi(j, b).is_zero() || a == b || R[a][b].is_zero()) continue;
          acc += (gi(i, a) * gi(j, b)) * R[a][b];
        }
      }
      up[i][j] = std::move(acc);
    }
  CurvatureGrid out(4, std::vector<FieldMatrix>(4, FieldMatrix(4, 4)));
  for (std::size_t k = 0; k < 4; ++k)
    for (std::size_t l = k + 1; l < 4; ++l) {
      FieldMatrix acc(4, 4);
      for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = i + 1; j < 4; ++j) {
          int e = levi_civita_sign(i, j, k, l);
          if (e == 0 || up[i][j].is_zero()) continue;
          acc += RatFunc(e) * up[i][j];
        }
      out[l][k] = -acc;
      out[k][l] = std::move(acc);
    }
  return out;
}

CurvatureGrid hodge_star(const CurvatureGrid& R, const MetricFamily& m) {
  if (m.det.is_zero()) throw Error(ErrorKind::SingularMetric, "hodge star needs a nondegenerate metric");
  return hodge_star(R, inverse(m.g));
}

bool is_zero(const ThreeForm& w) {
  return std::all_of(w.begin(), w.end(), [](const FieldMatrix& m) { return m.is_zero(); });
}

namespace {

constexpr std::size_t kTriples[4][3] = {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}};

// W([u_x,u_y]_m, u_z).
FieldMatrix w_of_bracket(const LiePair& p, const CurvatureGrid& W, std::size_t x, std::size_t y, std::size_t z) {
  const std::size_t n = p.dim_h();
  const Vec& b = p.bracket(n + x, n + y);
  FieldMatrix acc(4, 4);
  for (std::size_t k = 0; k < 4; ++k)
    if (!b[n + k].is_zero()) acc += b[n + k] * W[k][z];
  return acc;
}

}  // namespace

ThreeForm second_eym_residual(const LiePair& p, const std::vector<FieldMatrix>& L, const CurvatureGrid& W) {
  ThreeForm out;
  for (const auto& t : kTriples) {
    FieldMatrix acc(4, 4);
    for (int c = 0; c < 3; ++c) {
      std::size_t x = t[c], y = t[(c + 1) % 3], z = t[(c + 2) % 3];
      acc += commutator(L[x], W[y][z]) - w_of_bracket(p, W, x, y, z);
    }
    out.push_back(std::move(acc));
  }
  return out;
}

ThreeForm second_eym_slot_residual(const LiePair& p, const std::vector<FieldMatrix>& L, const CurvatureGrid& W) {
  ThreeForm out;
  for (const auto& t : kTriples) {
    FieldMatrix acc(4, 4);
    for (int c = 0; c < 3; ++c) {
      std::size_t x = t[c], y = t[(c + 1) % 3], z = t[(c + 2) % 3];
      acc -= w_of_bracket(p, W, x, y, z);
      for (std::size_t s = 0; s < 4; ++s) {
        if (!L[x](s, y).is_zero()) acc -= L[x](s, y) * W[s][z];
        if (!L[x](s, z).is_zero()) acc -= L[x](s, z) * W[y][s];
      }
    }
    out.push_back(std::move(acc));
  }
  return out;
}

namespace {

std::vector<std::string> names_in(const std::vector<FieldMatrix>& ms) {
  std::vector<std::string> out;
  for (const auto& m : ms)
    for (const auto& x : m.entries())
      for (Var v : x.variables())
        if (std::find(out.begin(), out.end(), *v) == out.end()) out.push_back(*v);
  std::sort(out.begin(), out.end());
  return out;
}

// compute(at) with at == nullptr means fully symbolic.
template <class F>
bool identically_zero(F&& compute, const std::vector<std::string>& names, std::uint64_t seed) {
  for (int attempt = 0; attempt < 4; ++attempt) {
    Assignment at = random_assignment(names, seed + attempt);
    try {
      if (!is_zero(compute(&at))) return false;
      break;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Singular) throw;
    }
  }
  return is_zero(compute(nullptr));
}

}  // namespace

bool family_is_yang_mills(const LiePair& p, const std::vector<FieldMatrix>& maps, const FieldMatrix& g,
                          bool slot_form, std::uint64_t seed) {
  std::vector<FieldMatrix> all = maps;
  all.push_back(g);
  auto compute = [&](const Assignment* at) {
    std::vector<FieldMatrix> L = maps;
    FieldMatrix gg = g;
    if (at) {
      for (auto& m : L) m = partial_eval(m, *at);
      gg = partial_eval(g, *at);
    }
    CurvatureGrid W = hodge_star(connection_curvature(p, L), inverse(gg));
    return slot_form ? second_eym_slot_residual(p, L, W) : second_eym_residual(p, L, W);
  };
  return identically_zero(compute, names_in(all), seed);
}

bool family_preserves(const LiePair& p, const std::vector<FieldMatrix>& maps, const FieldMatrix& g,
                      const CurvatureGrid& R, std::uint64_t seed) {
  std::vector<FieldMatrix> all = maps;
  all.push_back(g);
  for (const auto& row : R) all.insert(all.end(), row.begin(), row.end());
  auto compute = [&](const Assignment* at) {
    std::vector<FieldMatrix> L = maps;
    FieldMatrix gg = g;
    CurvatureGrid RR = R;
    if (at) {
      for (auto& m : L) m = partial_eval(m, *at);
      gg = partial_eval(g, *at);
      for (auto& row : RR)
        for (auto& m : row) m = partial_eval(m, *at);
    }
    return second_eym_residual(p, L, hodge_star(RR, inverse(gg)));
  };
  return identically_zero(compute, names_in(all), seed);
}

std::string to_string(GoldenStatus s) {
  switch (s) {
    case GoldenStatus::Pass: return "PASS";
    case GoldenStatus::Fail: return "FAIL";
    case GoldenStatus::Absent: return "n/a";
  }
  return "?";
}

bool CaseReport::golden_pass() const {
  return std::none_of(golden.begin(), golden.end(), [](const GoldenCheck& c) { return c.status == GoldenStatus::Fail; });
}

const GoldenCheck* CaseReport::golden_check(std::string_view name) const {
  for (const auto& c : golden)
    if (c.name == name) return &c;
  return nullptr;
}

namespace {

GoldenCheck check(std::string name, bool present, bool ok, std::string detail = {}) {
  GoldenCheck c{std::move(name), GoldenStatus::Absent, {}};
  if (!present) return c;
  c.status = ok ? GoldenStatus::Pass : GoldenStatus::Fail;
  if (!ok) c.detail = std::move(detail);
  return c;
}

bool verdict_matches(const CaseGolden& g, const EymVerdict& v) {
  if (!g.no_solution) return v.solution;
  if (v.solution) return false;
  // R = 0 forces T = 0, so a flat case also satisfies the T = 0 exclusion.
  if (*g.no_solution == NoSolutionReason::TrivialStressEnergy)
    return v.reason == NoSolutionReason::TrivialStressEnergy || v.reason == NoSolutionReason::FlatCurvature;
  return v.reason == *g.no_solution;
}

void fill_golden(const LiePair& p, CaseReport& r) {
  const CaseGolden& g = p.golden;
  r.golden.push_back(check("metric", g.metric.has_value(), r.metric.golden_aligned,
                           "solved family " + to_string(r.metric.g)));
  r.golden.push_back(check("lorentz", g.lorentz.has_value(), r.lorentz.pass(),
                           std::to_string(r.lorentz.mismatches) + " mismatching samples, e.g. " + r.lorentz.witness));
  r.golden.push_back(check("ricci", g.ricci.has_value(), g.ricci && *g.ricci == r.levi_civita.ricci,
                           "computed " + to_string(r.levi_civita.ricci)));
  r.golden.push_back(check("scalar", g.scalar.has_value(), g.scalar && *g.scalar == r.levi_civita.scalar,
                           "computed " + r.levi_civita.scalar.str()));
  r.golden.push_back(check("connection", g.connection.has_value(), g.connection && same_family(r.family, *g.connection),
                           "computed family of dimension " + std::to_string(r.family.dim())));
  r.golden.push_back(check("holonomy_dim", g.holonomy_dim.has_value(),
                           g.holonomy_dim && static_cast<std::size_t>(*g.holonomy_dim) == r.canonical.holonomy.dim(),
                           "computed " + std::to_string(r.canonical.holonomy.dim())));
  r.golden.push_back(check("verdict", g.has_verdict, verdict_matches(g, r.verdict), "computed " + to_string(r.verdict)));
  r.golden.push_back(check("lambda", g.lambda.has_value(), g.lambda && r.verdict.solution && *g.lambda == r.verdict.lambda,
                           "computed " + (r.verdict.solution ? r.verdict.lambda.str() : std::string("none"))));
  r.golden.push_back(check("kappa", g.kappa.has_value(), g.kappa && r.verdict.solution && *g.kappa == r.verdict.kappa,
                           "computed " + (r.verdict.solution ? r.verdict.kappa.str() : std::string("none"))));
}

}  // namespace

CaseReport run_case(const LiePair& p, const HolonomyMetric& hm) {
  CaseReport r;
  r.id = p.id();
  try {
    r.validation = validate_pair(p);
    r.rho = isotropy_rep(p);
    r.metric = solve_invariant_metric(p);
    r.lorentz = audit_lorentz(r.metric, 20, 7);
    r.levi_civita = levi_civita(p, r.metric);
    const FieldMatrix& gi = r.levi_civita.g_inv;

    r.family = solve_connections(p, r.metric);
    r.family_equivariant = connection_is_equivariant(p, r.family.maps);
    r.family_skew = connection_is_skew(r.metric.g, r.family.maps);
    r.family_curvature = curvature_form(p, r.family, 11);

    r.holonomy_metric = hm;
    r.canonical = curvature_form(p, zero_connection());
    r.T = stress_tensor(r.canonical.coeffs, r.metric.g, gi, hm);
    r.T_trace = (gi * r.T).trace();
    r.verdict = solve_first_eym(r.levi_civita, r.metric, r.T);
    r.star = hodge_star(r.canonical.R, gi);
    const auto zero = zero_connection().maps;
    r.second_eym = is_zero(second_eym_residual(p, zero, r.star));
    r.second_eym_slot = is_zero(second_eym_slot_residual(p, zero, r.star));

    r.family_second_eym = family_is_yang_mills(p, r.family.maps, r.metric.g, false);
    r.family_second_eym_slot = family_is_yang_mills(p, r.family.maps, r.metric.g, true);
    r.family_canonical_star = family_preserves(p, r.family.maps, r.metric.g, r.canonical.R);
    if (p.golden.connection)
      r.golden_family_second_eym = family_is_yang_mills(p, *p.golden.connection, r.metric.g, false);
    fill_golden(p, r);
  } catch (const Error& e) {
    throw Error(e.kind(), p.id() + ": " + e.what());
  }
  return r;
}

std::vector<ValidationCheck> invariant_suite(const LiePair& p, const CaseReport& r) {
  std::vector<ValidationCheck> out;
  auto add = [&](std::string name, bool ok, std::string witness = {}) {
    out.push_back({std::move(name), ok, ok ? std::string() : std::move(witness)});
  };
  const FieldMatrix& g = r.metric.g;
  add("metric_invariant", metric_is_invariant(r.rho, g), to_string(g));
  add("connection_equivariant", r.family_equivariant);
  add("connection_skew", r.family_skew);
  const auto member = instantiate(r.family, random_assignment(r.family.params, 17));
  add("connection_member", connection_is_equivariant(p, member) && connection_is_skew(g, member));
  bool skew = true;
  for (const auto& b : r.canonical.holonomy.basis) skew = skew && (b.transpose() * g + g * b).is_zero();
  add("holonomy_closed", holonomy_is_closed(r.canonical.holonomy.basis) &&
                             holonomy_is_closed(r.family_curvature.holonomy.basis));
  add("holonomy_skew", skew);
  add("curvature_expanded", r.canonical.coeffs.size() == r.canonical.holonomy.dim());
  add("stress_symmetric", r.T == r.T.transpose(), to_string(r.T));
  add("stress_traceless", r.T_trace.is_zero(), r.T_trace.str());
  if (r.verdict.solution) {
    const RatFunc quarter_s = RatFunc(Rational(1, 4)) * r.levi_civita.scalar;
    add("lambda_is_quarter_scalar", r.verdict.lambda == quarter_s, r.verdict.lambda.str());
    FieldMatrix res = first_eym_residual(r.levi_civita.ricci, r.levi_civita.scalar, g, r.T, r.verdict.lambda,
                                         r.verdict.kappa);
    add("first_eym_residual", res.is_zero(), to_string(res));
  }
  return out;
}

}  // namespace eymkit
