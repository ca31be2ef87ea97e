#include "eymkit/conn.hpp"

#include <algorithm>
#include <random>

#include "eymkit/error.hpp"
#include "eymkit/linalg.hpp"

namespace eymkit {

namespace {

constexpr const char* kLetters = "xvyz";

std::vector<RatFunc> flatten(const FieldMatrix& m) { return m.entries(); }

FieldMatrix stack_rows(const std::vector<std::vector<RatFunc>>& rows, std::size_t width) {
  FieldMatrix out(std::max<std::size_t>(rows.size(), 1), width);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < width; ++j) out(i, j) = rows[i][j];
  return out;
}

std::size_t span_rank(const std::vector<FieldMatrix>& ms) {
  if (ms.empty()) return 0;
  std::vector<std::vector<RatFunc>> rows;
  for (const auto& m : ms) rows.push_back(flatten(m));
  return rank(stack_rows(rows, rows[0].size()));
}

bool in_span(const std::vector<FieldMatrix>& basis, const FieldMatrix& m) {
  if (m.is_zero()) return true;
  auto with = basis;
  with.push_back(m);
  return span_rank(with) == basis.size();
}

// Greedy independent subset, in input order.
std::vector<FieldMatrix> independent(const std::vector<FieldMatrix>& ms) {
  std::vector<FieldMatrix> out;
  for (const auto& m : ms)
    if (!in_span(out, m)) out.push_back(m);
  return out;
}

bool mentions(const FieldMatrix& m, const std::vector<std::string>& names) {
  for (const auto& x : m.entries())
    for (Var v : x.variables())
      if (std::find(names.begin(), names.end(), *v) != names.end()) return true;
  return false;
}

// Parameter directions of linear maps: one 64-vector per parameter name.
std::vector<std::vector<RatFunc>> directions(const std::vector<FieldMatrix>& maps,
                                             const std::vector<std::string>& names) {
  std::vector<std::vector<RatFunc>> out;
  for (const auto& n : names) {
    Assignment at;
    for (const auto& o : names) at[o] = Rational(o == n ? 1 : 0);
    std::vector<RatFunc> d;
    for (const auto& m : maps)
      for (const auto& x : m.entries()) d.push_back(x.partial_eval(at));
    out.push_back(std::move(d));
  }
  return out;
}

}  // namespace

bool ConnectionFamily::is_zero() const {
  return std::all_of(maps.begin(), maps.end(), [](const FieldMatrix& m) { return m.is_zero(); });
}

ConnectionFamily zero_connection() { return {std::vector<FieldMatrix>(4, FieldMatrix(4, 4)), {}}; }

ConnectionFamily solve_connections(const LiePair& p, const MetricFamily& m) {
  const std::size_t n = p.dim_h();
  const auto rho = isotropy_rep(p);
  auto unknown = [](std::size_t i, std::size_t r, std::size_t c) { return 16 * i + 4 * r + c; };
  std::vector<std::vector<RatFunc>> rows;
  auto push = [&](std::vector<RatFunc> row) {
    if (std::any_of(row.begin(), row.end(), [](const RatFunc& x) { return !x.is_zero(); }))
      rows.push_back(std::move(row));
  };
  // Lambda([e_j,u_i]) - rho_j Lambda(u_i) + Lambda(u_i) rho_j, entry (r, c).
  for (std::size_t j = 0; j < n; ++j) {
    const auto& R = rho[j];
    for (std::size_t i = 0; i < 4; ++i) {
      const Vec& b = p.bracket(j, n + i);
      for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c) {
          std::vector<RatFunc> row(64);
          for (std::size_t k = 0; k < 4; ++k)
            if (!b[n + k].is_zero()) row[unknown(k, r, c)] += b[n + k];
          for (std::size_t s = 0; s < 4; ++s) {
            if (!R(r, s).is_zero()) row[unknown(i, s, c)] -= R(r, s);
            if (!R(s, c).is_zero()) row[unknown(i, r, s)] += R(s, c);
          }
          push(std::move(row));
        }
    }
  }
  // (t(L) g + g L)(r, c) = sum_s L(s,r) g(s,c) + g(r,s) L(s,c), for r <= c.
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t r = 0; r < 4; ++r)
      for (std::size_t c = r; c < 4; ++c) {
        std::vector<RatFunc> row(64);
        for (std::size_t s = 0; s < 4; ++s) {
          if (!m.g(s, c).is_zero()) row[unknown(i, s, r)] += m.g(s, c);
          if (!m.g(r, s).is_zero()) row[unknown(i, s, c)] += m.g(r, s);
        }
        push(std::move(row));
      }

  ConnectionFamily fam = zero_connection();
  if (rows.empty()) throw Error(ErrorKind::BadArgument, "connection system is empty");
  auto sol = solve_homogeneous_earliest_free(stack_rows(rows, 64));
  for (std::size_t k = 0; k < sol.free.size(); ++k) {
    const std::size_t f = sol.free[k];
    std::string name = std::string(1, kLetters[f / 16]) + std::to_string((f % 16) / 4 + 1) +
                       std::to_string(f % 4 + 1);
    fam.params.push_back(name);
    RatFunc x = RatFunc::variable(name);
    for (std::size_t u = 0; u < 64; ++u)
      if (!sol.value[u][k].is_zero()) fam.maps[u / 16]((u % 16) / 4, u % 4) += sol.value[u][k] * x;
  }
  return fam;
}

bool connection_is_equivariant(const LiePair& p, const std::vector<FieldMatrix>& maps) {
  const std::size_t n = p.dim_h();
  const auto rho = isotropy_rep(p);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < 4; ++i) {
      const Vec& b = p.bracket(j, n + i);
      FieldMatrix lhs(4, 4);
      for (std::size_t k = 0; k < 4; ++k)
        if (!b[n + k].is_zero()) lhs += b[n + k] * maps[k];
      if (!(lhs - commutator(rho[j], maps[i])).is_zero()) return false;
    }
  return true;
}

bool connection_is_skew(const FieldMatrix& g, const std::vector<FieldMatrix>& maps) {
  return std::all_of(maps.begin(), maps.end(),
                     [&](const FieldMatrix& L) { return (L.transpose() * g + g * L).is_zero(); });
}

std::vector<FieldMatrix> instantiate(const ConnectionFamily& c, const Assignment& at) {
  std::vector<FieldMatrix> out;
  for (const auto& m : c.maps) out.push_back(partial_eval(m, at));
  return out;
}

Assignment random_assignment(const std::vector<std::string>& names, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> num(1, 97), den(1, 13);
  Assignment at;
  std::vector<Rational> used;
  for (const auto& n : names) {
    Rational v;
    do {
      v = Rational(num(rng), den(rng));
      if (rng() & 1) v = -v;
    } while (std::find(used.begin(), used.end(), v) != used.end());
    used.push_back(v);
    at[n] = v;
  }
  return at;
}

CurvatureGrid connection_curvature(const LiePair& p, const std::vector<FieldMatrix>& maps) {
  return curvature_operators(p, isotropy_rep(p), maps);
}

std::optional<std::vector<RatFunc>> expand_in(const std::vector<FieldMatrix>& basis, const FieldMatrix& M) {
  if (basis.empty()) {
    if (M.is_zero()) return std::vector<RatFunc>{};
    return std::nullopt;
  }
  FieldMatrix A(16, basis.size());
  for (std::size_t a = 0; a < basis.size(); ++a)
    for (std::size_t e = 0; e < 16; ++e) A(e, a) = basis[a](e / 4, e % 4);
  return solve(A, flatten(M));
}

bool holonomy_is_closed(const std::vector<FieldMatrix>& basis) {
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = i + 1; j < basis.size(); ++j)
      if (!expand_in(basis, commutator(basis[i], basis[j]))) return false;
  return true;
}

HolonomyAlgebra holonomy(const CurvatureGrid& R, const std::vector<FieldMatrix>& preferred,
                         const std::vector<std::string>& params, std::uint64_t seed) {
  HolonomyAlgebra out;
  std::vector<FieldMatrix> comps;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j) comps.push_back(R[i][j]);
  if (std::any_of(comps.begin(), comps.end(), [&](const FieldMatrix& m) { return mentions(m, params); })) {
    // Metric parameters are sampled too: the generic dimension is the same and
    // the closure then runs over Q.
    std::vector<std::string> names;
    for (const auto& m : comps)
      for (const auto& x : m.entries())
        for (Var v : x.variables())
          if (std::find(names.begin(), names.end(), *v) == names.end()) names.push_back(*v);
    std::sort(names.begin(), names.end());
    Assignment at = random_assignment(names, seed);
    for (auto& m : comps) m = partial_eval(m, at);
    out.substituted = true;
  }
  std::vector<FieldMatrix> span = independent(comps);
  // so(1,3) has dimension 6, so closure stabilises within a few rounds.
  for (int round = 0;; ++round) {
    if (round > 16) throw Error(ErrorKind::NonClosing, "holonomy closure did not stabilise");
    std::vector<FieldMatrix> grown = span;
    for (std::size_t i = 0; i < span.size(); ++i)
      for (std::size_t j = i + 1; j < span.size(); ++j) {
        FieldMatrix c = commutator(span[i], span[j]);
        if (!in_span(grown, c)) grown.push_back(std::move(c));
      }
    if (grown.size() == span.size()) break;
    span = std::move(grown);
  }
  std::vector<FieldMatrix> pick;
  for (const auto& r : preferred)
    if (!r.is_zero() && in_span(span, r) && !in_span(pick, r)) pick.push_back(r);
  if (!span.empty() && pick.size() == span.size()) {
    out.basis = std::move(pick);
    out.from_isotropy = true;
    return out;
  }
  // Otherwise the nonzero rows of the RREF of the vectorised span.
  if (!span.empty()) {
    std::vector<std::vector<RatFunc>> rows;
    for (const auto& m : span) rows.push_back(flatten(m));
    auto red = rref(stack_rows(rows, 16));
    for (std::size_t i = 0; i < red.pivots.size(); ++i) {
      FieldMatrix b(4, 4);
      for (std::size_t e = 0; e < 16; ++e) b(e / 4, e % 4) = red.m(i, e);
      out.basis.push_back(std::move(b));
    }
  }
  return out;
}

CurvatureForm curvature_form(const LiePair& p, const ConnectionFamily& c, std::uint64_t seed) {
  CurvatureForm f;
  f.R = connection_curvature(p, c.maps);
  for (std::size_t i = 0; i < 4 && !f.depends_on_params; ++i)
    for (std::size_t j = i + 1; j < 4; ++j)
      if (mentions(f.R[i][j], c.params)) {
        f.depends_on_params = true;
        break;
      }
  f.holonomy = holonomy(f.R, isotropy_rep(p), c.params, seed);
  if (f.holonomy.substituted) return f;  // a sampled basis need not contain the symbolic components
  std::vector<FieldMatrix> coeffs(f.holonomy.dim(), FieldMatrix(4, 4));
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j) {
      auto x = expand_in(f.holonomy.basis, f.R[i][j]);
      if (!x) return f;
      for (std::size_t a = 0; a < coeffs.size(); ++a) {
        coeffs[a](i, j) = (*x)[a];
        coeffs[a](j, i) = -(*x)[a];
      }
    }
  f.coeffs = std::move(coeffs);
  return f;
}

bool same_family(const ConnectionFamily& a, const std::vector<FieldMatrix>& b) {
  std::vector<std::string> bnames;
  for (const auto& m : b)
    for (const auto& x : m.entries())
      for (Var v : x.variables())
        if (std::find(bnames.begin(), bnames.end(), *v) == bnames.end()) bnames.push_back(*v);
  auto da = directions(a.maps, a.params);
  auto db = directions(b, bnames);
  auto r = [](const std::vector<std::vector<RatFunc>>& rows) {
    return rows.empty() ? std::size_t{0} : rank(stack_rows(rows, 64));
  };
  auto both = da;
  both.insert(both.end(), db.begin(), db.end());
  return r(da) == r(db) && r(both) == r(da);
}

}  // namespace eymkit
