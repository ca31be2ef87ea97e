#include "eymkit/poly.hpp"

#include <algorithm>
#include <iterator>
#include <mutex>
#include <unordered_set>

#include "eymkit/error.hpp"

namespace eymkit {

Var var(std::string_view name) {
  static std::mutex mu;
  static std::unordered_set<std::string> pool;
  std::lock_guard<std::mutex> lock(mu);
  return &*pool.emplace(name).first;
}

namespace {

bool name_less(Var a, Var b) { return a != b && *a < *b; }

}  // namespace

// ---- Monomial ----

Monomial Monomial::of(Var v, unsigned e) {
  Monomial m;
  if (e > 0) {
    m.p_.emplace_back(v, e);
    m.deg_ = e;
  }
  return m;
}

unsigned Monomial::exponent(Var v) const {
  for (const auto& [w, e] : p_)
    if (w == v) return e;
  return 0;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r;
  r.p_.reserve(p_.size() + o.p_.size());
  auto i = p_.begin(), j = o.p_.begin();
  while (i != p_.end() || j != o.p_.end()) {
    if (j == o.p_.end() || (i != p_.end() && name_less(i->first, j->first))) {
      r.p_.push_back(*i++);
    } else if (i == p_.end() || name_less(j->first, i->first)) {
      r.p_.push_back(*j++);
    } else {
      r.p_.emplace_back(i->first, i->second + j->second);
      ++i;
      ++j;
    }
  }
  r.deg_ = deg_ + o.deg_;
  return r;
}

std::optional<Monomial> Monomial::divide(const Monomial& o) const {
  Monomial r;
  auto j = o.p_.begin();
  for (const auto& [v, e] : p_) {
    if (j != o.p_.end() && j->first == v) {
      if (j->second > e) return std::nullopt;
      if (j->second < e) r.p_.emplace_back(v, e - j->second);
      ++j;
    } else {
      if (j != o.p_.end() && name_less(j->first, v)) return std::nullopt;
      r.p_.emplace_back(v, e);
    }
  }
  if (j != o.p_.end()) return std::nullopt;
  r.deg_ = deg_ - o.deg_;
  return r;
}

Monomial Monomial::without(Var v) const {
  Monomial r;
  for (const auto& pe : p_)
    if (pe.first != v) r.p_.push_back(pe);
  r.deg_ = deg_ - exponent(v);
  return r;
}

Monomial Monomial::gcd(const Monomial& a, const Monomial& b) {
  Monomial r;
  for (const auto& [v, e] : a.p_) {
    unsigned f = b.exponent(v);
    if (f > 0) {
      r.p_.emplace_back(v, std::min(e, f));
      r.deg_ += std::min(e, f);
    }
  }
  return r;
}

int grlex_compare(const Monomial& a, const Monomial& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
  const auto& p = a.powers();
  const auto& q = b.powers();
  std::size_t n = std::min(p.size(), q.size());
  for (std::size_t k = 0; k < n; ++k) {
    if (p[k].first != q[k].first) return name_less(p[k].first, q[k].first) ? 1 : -1;
    if (p[k].second != q[k].second) return p[k].second > q[k].second ? 1 : -1;
  }
  // Equal degree and equal common prefix forces equal length.
  return 0;
}

// ---- Poly ----

Poly::Poly(const Rational& c) {
  if (!c.is_zero()) t_.push_back({Monomial(), c});
}

Poly Poly::variable(std::string_view name) { return monomial(Monomial::of(var(name)), 1); }

Poly Poly::monomial(const Monomial& m, const Rational& c) {
  Poly p;
  if (!c.is_zero()) p.t_.push_back({m, c});
  return p;
}

Poly Poly::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& x, const Term& y) { return grlex_compare(x.mono, y.mono) > 0; });
  Poly p;
  for (auto& t : terms) {
    if (!p.t_.empty() && p.t_.back().mono == t.mono) {
      p.t_.back().coef += t.coef;
      if (p.t_.back().coef.is_zero()) p.t_.pop_back();
    } else if (!t.coef.is_zero()) {
      p.t_.push_back(std::move(t));
    }
  }
  return p;
}

Rational Poly::constant_value() const { return t_.empty() ? Rational(0) : t_[0].coef; }

unsigned Poly::total_degree() const { return t_.empty() ? 0 : t_.front().mono.degree(); }

unsigned Poly::degree_in(Var v) const {
  unsigned d = 0;
  for (const auto& t : t_) d = std::max(d, t.mono.exponent(v));
  return d;
}

std::vector<Var> Poly::variables() const {
  std::vector<Var> vs;
  for (const auto& t : t_)
    for (const auto& pe : t.mono.powers())
      if (std::find(vs.begin(), vs.end(), pe.first) == vs.end()) vs.push_back(pe.first);
  std::sort(vs.begin(), vs.end(), name_less);
  return vs;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& t : r.t_) t.coef = -t.coef;
  return r;
}

Poly operator+(const Poly& a, const Poly& b) {
  Poly r;
  r.t_.reserve(a.t_.size() + b.t_.size());
  auto i = a.t_.begin(), j = b.t_.begin();
  while (i != a.t_.end() && j != b.t_.end()) {
    int c = grlex_compare(i->mono, j->mono);
    if (c > 0) {
      r.t_.push_back(*i++);
    } else if (c < 0) {
      r.t_.push_back(*j++);
    } else {
      Rational s = i->coef + j->coef;
      if (!s.is_zero()) r.t_.push_back({i->mono, s});
      ++i;
      ++j;
    }
  }
  r.t_.insert(r.t_.end(), i, a.t_.end());
  r.t_.insert(r.t_.end(), j, b.t_.end());
  return r;
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  if (a.is_constant()) return b.scaled(a.t_[0].coef);
  if (b.is_constant()) return a.scaled(b.t_[0].coef);
  std::map<Monomial, Rational, GrlexGreater> acc;
  for (const auto& x : a.t_)
    for (const auto& y : b.t_) {
      auto [it, fresh] = acc.try_emplace(x.mono * y.mono, x.coef * y.coef);
      if (!fresh) it->second += x.coef * y.coef;
    }
  Poly r;
  for (auto& [m, c] : acc)
    if (!c.is_zero()) r.t_.push_back({m, c});
  return r;
}

Poly Poly::scaled(const Rational& c) const {
  if (c.is_zero()) return Poly();
  Poly r = *this;
  for (auto& t : r.t_) t.coef *= c;
  return r;
}

Poly Poly::times(const Monomial& m) const {
  Poly r = *this;
  for (auto& t : r.t_) t.mono = t.mono * m;
  return r;
}

Poly Poly::pow(unsigned e) const {
  Poly r(1), base = *this;
  while (e > 0) {
    if (e & 1U) r *= base;
    e >>= 1U;
    if (e > 0) base *= base;
  }
  return r;
}

Rational Poly::eval(const Assignment& at) const {
  Rational s;
  for (const auto& t : t_) {
    Rational m = t.coef;
    for (const auto& [v, e] : t.mono.powers()) {
      auto it = at.find(*v);
      if (it == at.end()) throw Error(ErrorKind::MissingParam, "no value for parameter '" + *v + "'");
      m *= it->second.pow(e);
    }
    s += m;
  }
  return s;
}

Poly Poly::partial_eval(const Assignment& at) const {
  std::vector<Term> out;
  out.reserve(t_.size());
  for (const auto& t : t_) {
    Term n{Monomial(), t.coef};
    for (const auto& [v, e] : t.mono.powers()) {
      auto it = at.find(*v);
      if (it == at.end())
        n.mono = n.mono * Monomial::of(v, e);
      else
        n.coef *= it->second.pow(e);
    }
    out.push_back(std::move(n));
  }
  return from_terms(std::move(out));
}

Rational Poly::normalizer() const {
  if (t_.empty()) return Rational(1);
  mpz_class l = 1, g = 0;
  for (const auto& t : t_) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.coef.raw().get_den_mpz_t());
  for (const auto& t : t_) {
    mpz_class n = t.coef.num() * (l / t.coef.den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
  }
  Rational f(l, g);
  return t_.front().coef.sign() < 0 ? -f : f;
}

Poly Poly::primitive() const { return scaled(normalizer()); }

std::string Poly::str() const {
  if (t_.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& t : t_) {
    Rational c = t.coef;
    if (first) {
      if (c.sign() < 0) s += "-";
    } else {
      s += c.sign() < 0 ? " - " : " + ";
    }
    first = false;
    c = c.abs();
    std::string m;
    for (const auto& [v, e] : t.mono.powers()) {
      if (!m.empty()) m += "*";
      m += *v;
      if (e > 1) m += "^" + std::to_string(e);
    }
    if (m.empty())
      s += c.str();
    else if (c.is_one())
      s += m;
    else
      s += c.str() + "*" + m;
  }
  return s;
}

// ---- division and gcd ----

std::optional<Poly> divide_exact(const Poly& p, const Poly& q) {
  if (q.is_zero()) throw Error(ErrorKind::DivisionByZero, "polynomial division by zero");
  if (q.is_constant()) return p.scaled(Rational(1) / q.constant_value());
  std::vector<Term> quot;
  Poly r = p;
  const Term& lq = q.leading();
  while (!r.is_zero()) {
    const Term& lr = r.leading();
    auto m = lr.mono.divide(lq.mono);
    if (!m) return std::nullopt;
    Rational c = lr.coef / lq.coef;
    quot.push_back({*m, c});
    r -= q.times(*m).scaled(c);
  }
  return Poly::from_terms(std::move(quot));
}

namespace {

using Univ = std::vector<Poly>;  // index = power of the main variable

Univ to_univ(const Poly& p, Var x) {
  std::vector<std::vector<Term>> bins(p.degree_in(x) + 1);
  for (const auto& t : p.terms()) bins[t.mono.exponent(x)].push_back({t.mono.without(x), t.coef});
  Univ u;
  u.reserve(bins.size());
  for (auto& b : bins) u.push_back(Poly::from_terms(std::move(b)));
  return u;
}

Poly from_univ(const Univ& u, Var x) {
  Poly r;
  for (std::size_t i = 0; i < u.size(); ++i) r += u[i].times(Monomial::of(x, static_cast<unsigned>(i)));
  return r;
}

void trim(Univ& u) {
  while (!u.empty() && u.back().is_zero()) u.pop_back();
}

Poly content(const Univ& u) {
  Poly g;
  for (const auto& c : u) {
    g = gcd(g, c);
    if (g.is_constant() && !g.is_zero()) break;
  }
  return g;
}

// Divides out the polynomial content and the joint integer content, so that
// pseudo-remainder sequences keep bounded coefficients.
Univ primitive_part(const Univ& u) {
  Poly c = content(u);
  Univ r;
  r.reserve(u.size());
  for (const auto& x : u) r.push_back(*divide_exact(x, c));
  mpz_class l = 1, g = 0;
  for (const auto& x : r)
    for (const auto& t : x.terms()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.coef.raw().get_den_mpz_t());
  for (const auto& x : r)
    for (const auto& t : x.terms()) {
      mpz_class n = t.coef.num() * (l / t.coef.den());
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
    }
  if (g != 0 && !(l == 1 && g == 1)) {
    Rational f(l, g);
    for (auto& x : r) x = x.scaled(f);
  }
  return r;
}

Univ pseudo_remainder(Univ a, const Univ& b) {
  const Poly& lb = b.back();
  std::size_t db = b.size() - 1;
  trim(a);
  while (!a.empty() && a.size() - 1 >= db) {
    Poly la = a.back();
    std::size_t shift = a.size() - 1 - db;
    for (auto& c : a) c *= lb;
    for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= la * b[i];
    trim(a);
  }
  return a;
}

Poly content_in(const Poly& p, Var x) { return content(to_univ(p, x)); }

using QUniv = std::vector<Rational>;  // index = power

void trim(QUniv& u) {
  while (!u.empty() && u.back().is_zero()) u.pop_back();
}

std::size_t univariate_gcd_degree(QUniv a, QUniv b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    while (a.size() >= b.size()) {
      Rational f = a.back() / b.back();
      std::size_t shift = a.size() - b.size();
      for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= f * b[i];
      trim(a);
      if (a.empty()) break;
    }
    std::swap(a, b);
  }
  return a.empty() ? 0 : a.size() - 1;
}

// Exact coprimality certificate. A nonconstant common factor G involves some
// shared variable v; substituting the other variables where both leading
// coefficients in v survive keeps deg_v G, so every image gcd being constant
// proves gcd(p, q) = 1. A false result only means "not certified".
bool certified_coprime(const Poly& p, const Poly& q) {
  std::vector<Var> pv = p.variables(), qv = q.variables(), shared;
  std::set_intersection(pv.begin(), pv.end(), qv.begin(), qv.end(), std::back_inserter(shared),
                        [](Var a, Var b) { return *a < *b; });
  std::vector<Var> all;
  std::set_union(pv.begin(), pv.end(), qv.begin(), qv.end(), std::back_inserter(all),
                 [](Var a, Var b) { return *a < *b; });
  for (Var v : shared) {
    Univ u = to_univ(p, v), w = to_univ(q, v);
    bool done = false;
    for (int attempt = 0; attempt < 4 && !done; ++attempt) {
      Assignment at;
      std::size_t k = 0;
      for (Var o : all)
        if (o != v) at[*o] = Rational(static_cast<long>(3 + 7 * k++ + 11 * attempt), 2 + attempt);
      if (u.back().eval(at).is_zero() || w.back().eval(at).is_zero()) continue;
      QUniv a, b;
      for (const auto& c : u) a.push_back(c.eval(at));
      for (const auto& c : w) b.push_back(c.eval(at));
      if (univariate_gcd_degree(a, b) > 0) return false;
      done = true;
    }
    if (!done) return false;
  }
  return true;
}

}  // namespace

Poly gcd(const Poly& p, const Poly& q) {
  if (p.is_zero()) return q.primitive();
  if (q.is_zero()) return p.primitive();
  if (p.is_constant() || q.is_constant()) return Poly(1);
  if (p.is_monomial() || q.is_monomial()) {
    const Poly& m = p.is_monomial() ? p : q;
    const Poly& o = p.is_monomial() ? q : p;
    Monomial g = m.leading().mono;
    for (const auto& t : o.terms()) g = Monomial::gcd(g, t.mono);
    return Poly::monomial(g, 1);
  }
  if (p == q) return p.primitive();
  if (certified_coprime(p, q)) return Poly(1);
  // One operand dividing the other is common in elimination; trial division
  // is far cheaper than a pseudo-remainder sequence.
  if (q.total_degree() <= p.total_degree() && divide_exact(p, q)) return q.primitive();
  if (p.total_degree() <= q.total_degree() && divide_exact(q, p)) return p.primitive();
  Var x = p.variables().front();
  if (!q.contains(x)) return gcd(content_in(p, x), q);
  Univ u = to_univ(p, x), v = to_univ(q, x);
  Poly c = gcd(content(u), content(v));
  u = primitive_part(u);
  v = primitive_part(v);
  if (u.size() < v.size()) std::swap(u, v);
  Univ g;
  for (;;) {
    Univ r = pseudo_remainder(u, v);
    if (r.empty()) {
      g = primitive_part(v);
      break;
    }
    if (r.size() == 1) {
      g = {Poly(1)};
      break;
    }
    u = std::move(v);
    v = primitive_part(r);
  }
  return (c * from_univ(g, x)).primitive();
}

}  // namespace eymkit
