#include "eymkit/geom.hpp"

#include <random>

#include "eymkit/error.hpp"
#include "eymkit/linalg.hpp"

namespace eymkit {

namespace {

// Upper-triangle positions of a symmetric 4x4 matrix, row-major.
const std::vector<std::pair<std::size_t, std::size_t>>& sym_slots() {
  static const auto slots = [] {
    std::vector<std::pair<std::size_t, std::size_t>> s;
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = i; j < 4; ++j) s.emplace_back(i, j);
    return s;
  }();
  return slots;
}

FieldMatrix sym_unit(std::size_t k) {
  auto [i, j] = sym_slots()[k];
  FieldMatrix e(4, 4);
  e(i, j) = RatFunc(1);
  e(j, i) = RatFunc(1);
  return e;
}

const char* const kMetricLetters[] = {"a", "b", "c", "d", "f", "h", "k", "m", "n", "p"};

// Coefficient vectors (over the 10 slots) of a matrix linear in its parameters;
// nullopt if any entry is not homogeneous linear.
std::optional<std::vector<std::vector<RatFunc>>> linear_directions(const FieldMatrix& g,
                                                                    std::vector<Var>& vars) {
  vars.clear();
  for (const auto& x : g.entries()) {
    if (!x.is_polynomial()) return std::nullopt;
    for (Var v : x.variables())
      if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
  }
  std::sort(vars.begin(), vars.end(), [](Var a, Var b) { return *a < *b; });
  std::vector<std::vector<RatFunc>> dirs(vars.size(), std::vector<RatFunc>(10));
  for (std::size_t s = 0; s < 10; ++s) {
    auto [i, j] = sym_slots()[s];
    const RatFunc& x = g(i, j);
    Rational inv = Rational(1) / x.den().constant_value();
    for (const auto& t : x.num().terms()) {
      if (t.mono.degree() != 1) return std::nullopt;
      Var v = t.mono.powers()[0].first;
      auto k = std::find(vars.begin(), vars.end(), v) - vars.begin();
      dirs[k][s] += RatFunc(t.coef * inv);
    }
  }
  return dirs;
}

bool same_span(const std::vector<std::vector<RatFunc>>& a, const std::vector<std::vector<RatFunc>>& b) {
  auto stack = [](const std::vector<std::vector<RatFunc>>& rows) {
    FieldMatrix m(std::max<std::size_t>(rows.size(), 1), 10);
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < 10; ++j) m(i, j) = rows[i][j];
    return m;
  };
  std::vector<std::vector<RatFunc>> both = a;
  both.insert(both.end(), b.begin(), b.end());
  std::size_t ra = rank(stack(a)), rb = rank(stack(b)), rab = rank(stack(both));
  return ra == a.size() && rb == b.size() && ra == rb && rab == ra;
}

}  // namespace

bool metric_is_invariant(const std::vector<FieldMatrix>& rho, const FieldMatrix& g) {
  for (const auto& r : rho)
    if (!(r.transpose() * g + g * r).is_zero()) return false;
  return true;
}

MetricFamily solve_invariant_metric(const LiePair& p) {
  auto rho = isotropy_rep(p);
  const auto& slots = sym_slots();
  FieldMatrix sys(std::max<std::size_t>(rho.size() * slots.size(), 1), slots.size());
  for (std::size_t k = 0; k < slots.size(); ++k) {
    FieldMatrix e = sym_unit(k);
    for (std::size_t i = 0; i < rho.size(); ++i) {
      FieldMatrix r = rho[i].transpose() * e + e * rho[i];
      for (std::size_t s = 0; s < slots.size(); ++s) sys(i * slots.size() + s, k) = r(slots[s].first, slots[s].second);
    }
  }
  auto sol = solve_homogeneous_earliest_free(sys);
  if (sol.free.empty()) throw Error(ErrorKind::NoInvariantMetric, p.id() + " admits no invariant metric");

  std::vector<std::vector<RatFunc>> dirs(sol.free.size(), std::vector<RatFunc>(10));
  for (std::size_t k = 0; k < sol.free.size(); ++k)
    for (std::size_t s = 0; s < 10; ++s) dirs[k][s] = sol.value[s][k];

  MetricFamily fam;
  fam.lorentz_condition = p.golden.lorentz;
  if (p.golden.metric && p.golden.metric->rows() == 4 && p.golden.metric->cols() == 4 &&
      *p.golden.metric == p.golden.metric->transpose()) {
    std::vector<Var> vars;
    auto gd = linear_directions(*p.golden.metric, vars);
    if (gd && same_span(dirs, *gd)) {
      fam.g = *p.golden.metric;
      for (Var v : vars) fam.params.push_back(*v);
      fam.golden_aligned = true;
    }
  }
  if (!fam.golden_aligned) {
    fam.g = FieldMatrix(4, 4);
    for (std::size_t k = 0; k < sol.free.size(); ++k) {
      RatFunc x = RatFunc::variable(kMetricLetters[k]);
      fam.params.push_back(kMetricLetters[k]);
      for (std::size_t s = 0; s < 10; ++s) {
        if (dirs[k][s].is_zero()) continue;
        auto [i, j] = slots[s];
        fam.g(i, j) += dirs[k][s] * x;
        if (i != j) fam.g(j, i) = fam.g(i, j);
      }
    }
  }
  fam.det = det(fam.g);
  return fam;
}

std::string to_string(SignatureKind k) {
  switch (k) {
    case SignatureKind::Lorentzian: return "Lorentzian";
    case SignatureKind::Riemannian: return "Riemannian";
    case SignatureKind::Neutral: return "Neutral";
    case SignatureKind::Degenerate: return "Degenerate";
  }
  return "?";
}

SignatureVerdict signature_of(const QMatrix& g0) {
  QMatrix a = g0;
  const std::size_t n = a.rows();
  SignatureVerdict v{SignatureKind::Degenerate};
  auto swap_rc = [&](std::size_t x, std::size_t y) {
    for (std::size_t j = 0; j < n; ++j) std::swap(a(x, j), a(y, j));
    for (std::size_t i = 0; i < n; ++i) std::swap(a(i, x), a(i, y));
  };
  for (std::size_t k = 0; k < n; ++k) {
    if (a(k, k).is_zero()) {
      std::size_t j = k + 1;
      while (j < n && a(j, j).is_zero()) ++j;
      if (j < n) {
        swap_rc(k, j);
      } else {
        j = k + 1;
        while (j < n && a(k, j).is_zero()) ++j;
        if (j == n) {
          ++v.zero;
          continue;
        }
        // a_kk = a_jj = 0, a_kj != 0: adding row/col j makes a_kk = 2 a_kj.
        for (std::size_t c = 0; c < n; ++c) a(k, c) += a(j, c);
        for (std::size_t r = 0; r < n; ++r) a(r, k) += a(r, j);
      }
    }
    const Rational piv = a(k, k);
    (piv.sign() > 0 ? v.positive : v.negative) += 1;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a(i, k).is_zero()) continue;
      Rational f = a(i, k) / piv;
      for (std::size_t c = k; c < n; ++c) a(i, c) -= f * a(k, c);
      for (std::size_t r = k; r < n; ++r) a(r, i) -= f * a(r, k);
    }
  }
  if (v.zero > 0)
    v.kind = SignatureKind::Degenerate;
  else if (v.positive == 0 || v.negative == 0)
    v.kind = SignatureKind::Riemannian;
  else if (v.positive == 1 || v.negative == 1)
    v.kind = SignatureKind::Lorentzian;
  else
    v.kind = SignatureKind::Neutral;
  return v;
}

SignatureVerdict lorentz_check(const MetricFamily& m, const Assignment& sample) {
  if (m.det.eval(sample).is_zero())
    throw Error(ErrorKind::DegenerateAtSample, "metric degenerate at the sample point");
  return signature_of(eval(m.g, sample));
}

bool eval_condition(const std::string& cond, const Assignment& at) {
  static const char* const ops[] = {">=", "<=", "!=", "==", ">", "<"};
  for (const char* op : ops) {
    auto pos = cond.find(op);
    if (pos == std::string::npos) continue;
    Rational l = RatFunc::parse(cond.substr(0, pos)).eval(at);
    Rational r = RatFunc::parse(cond.substr(pos + std::string(op).size())).eval(at);
    std::string o(op);
    if (o == ">=") return l >= r;
    if (o == "<=") return l <= r;
    if (o == "!=") return l != r;
    if (o == "==") return l == r;
    if (o == ">") return l > r;
    return l < r;
  }
  throw Error(ErrorKind::Parse, "no comparison in condition '" + cond + "'");
}

CurvatureGrid curvature_operators(const LiePair& p, const std::vector<FieldMatrix>& rho,
                                  const std::vector<FieldMatrix>& L) {
  const std::size_t n = p.dim_h();
  CurvatureGrid R(4, std::vector<FieldMatrix>(4, FieldMatrix(4, 4)));
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j) {
      FieldMatrix r = commutator(L[i], L[j]);
      const Vec& b = p.bracket(n + i, n + j);
      for (std::size_t k = 0; k < 4; ++k)
        if (!b[n + k].is_zero()) r -= b[n + k] * L[k];
      for (std::size_t k = 0; k < n; ++k)
        if (!b[k].is_zero()) r -= b[k] * rho[k];
      R[j][i] = -r;
      R[i][j] = std::move(r);
    }
  return R;
}

FieldMatrix ricci_from(const CurvatureGrid& R) {
  FieldMatrix r(4, 4);
  for (std::size_t y = 0; y < 4; ++y)
    for (std::size_t z = 0; z < 4; ++z)
      for (std::size_t x = 0; x < 4; ++x) r(y, z) += R[x][y](x, z);
  return r;
}

CurvatureReport levi_civita(const LiePair& p, const MetricFamily& m) {
  if (m.det.is_zero()) throw Error(ErrorKind::SingularMetric, p.id() + ": singular metric");
  const std::size_t n = p.dim_h();
  CurvatureReport rep;
  rep.g_inv = inverse(m.g);
  // gm(x, v) = g([u_x, u_v]_m-component dotted with column), via bracket coefficients.
  auto gb = [&](std::size_t x, std::size_t y, std::size_t z) {
    // g([u_x,u_y]_m, u_z)
    RatFunc s;
    const Vec& b = p.bracket(n + x, n + y);
    for (std::size_t k = 0; k < 4; ++k)
      if (!b[n + k].is_zero()) s += b[n + k] * m.g(k, z);
    return s;
  };
  rep.nomizu.assign(4, FieldMatrix(4, 4));
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      std::vector<RatFunc> w(4);
      bool any = false;
      for (std::size_t k = 0; k < 4; ++k) {
        w[k] = RatFunc(Rational(1, 2)) * (gb(i, j, k) - gb(j, k, i) + gb(k, i, j));
        any = any || !w[k].is_zero();
      }
      if (!any) continue;
      for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t k = 0; k < 4; ++k)
          if (!w[k].is_zero()) rep.nomizu[i](r, j) += rep.g_inv(r, k) * w[k];
    }
  rep.R = curvature_operators(p, isotropy_rep(p), rep.nomizu);
  rep.ricci = ricci_from(rep.R);
  rep.scalar = (rep.g_inv * rep.ricci).trace();
  return rep;
}

}  // namespace eymkit

namespace eymkit {

LorentzAudit audit_lorentz(const MetricFamily& m, int per_side, std::uint64_t seed) {
  LorentzAudit out;
  if (!m.lorentz_condition) return out;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> num(-12, 12), den(1, 5);
  for (int draw = 0; draw < 400 * per_side && (out.inside < per_side || out.outside < per_side); ++draw) {
    Assignment at;
    for (const auto& p : m.params) at[p] = Rational(num(rng), den(rng));
    if (m.det.eval(at).is_zero()) continue;
    const bool cond = eval_condition(*m.lorentz_condition, at);
    int& side = cond ? out.inside : out.outside;
    if (side >= per_side) continue;
    ++side;
    const bool lorentzian = signature_of(eval(m.g, at)).kind == SignatureKind::Lorentzian;
    if (lorentzian != cond) {
      if (out.mismatches++ == 0) {
        for (const auto& [k, v] : at) out.witness += k + "=" + v.str() + " ";
      }
    }
  }
  return out;
}

}  // namespace eymkit
