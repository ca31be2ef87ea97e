#include "eymkit/liecat.hpp"

#include <fstream>
#include <sstream>

#include "eymkit/error.hpp"
#include "eymkit/linalg.hpp"

namespace eymkit {

std::string to_string(NoSolutionReason r) {
  switch (r) {
    case NoSolutionReason::TrivialStressEnergy: return "TrivialStressEnergy";
    case NoSolutionReason::InconsistentSystem: return "InconsistentSystem";
    case NoSolutionReason::FlatCurvature: return "FlatCurvature";
  }
  return "?";
}

std::optional<NoSolutionReason> parse_reason(std::string_view s) {
  for (auto r : {NoSolutionReason::TrivialStressEnergy, NoSolutionReason::InconsistentSystem,
                 NoSolutionReason::FlatCurvature})
    if (s == to_string(r)) return r;
  return std::nullopt;
}

// ---- LiePair ----

LiePair::LiePair(std::string id, std::size_t dim_h)
    : id_(std::move(id)), n_(dim_h), c_(dim() * dim(), Vec(dim(), RatFunc())) {}

std::string LiePair::label(std::size_t k) const {
  return k < n_ ? "e" + std::to_string(k + 1) : "u" + std::to_string(k - n_ + 1);
}

std::optional<std::size_t> LiePair::index(std::string_view label) const {
  for (std::size_t k = 0; k < dim(); ++k)
    if (this->label(k) == label) return k;
  return std::nullopt;
}

void LiePair::set_bracket(std::size_t x, std::size_t y, Vec v) {
  // Redeclaring an ordered pair replaces the earlier statement.
  std::erase_if(declared_, [&](const Declared& d) { return d.x == x && d.y == y; });
  bool reverse_declared = false;
  for (const auto& d : declared_)
    if (d.x == y && d.y == x) reverse_declared = true;
  c_[x * dim() + y] = v;
  if (!reverse_declared && x != y) {
    Vec neg(v.size());
    for (std::size_t k = 0; k < v.size(); ++k) neg[k] = -v[k];
    c_[y * dim() + x] = std::move(neg);
  }
  declared_.push_back({x, y, std::move(v)});
}

Vec LiePair::bracket(const Vec& x, const Vec& y) const {
  Vec r(dim(), RatFunc());
  for (std::size_t i = 0; i < dim(); ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t j = 0; j < dim(); ++j) {
      if (y[j].is_zero()) continue;
      RatFunc f = x[i] * y[j];
      const Vec& b = bracket(i, j);
      for (std::size_t k = 0; k < dim(); ++k)
        if (!b[k].is_zero()) r[k] += f * b[k];
    }
  }
  return r;
}

Vec LiePair::m_part(const Vec& v) const {
  Vec r = v;
  for (std::size_t k = 0; k < n_; ++k) r[k] = RatFunc();
  return r;
}

Vec LiePair::h_part(const Vec& v) const {
  Vec r = v;
  for (std::size_t k = n_; k < dim(); ++k) r[k] = RatFunc();
  return r;
}

Vec LiePair::basis_vector(std::size_t k) const {
  Vec v(dim(), RatFunc());
  v[k] = RatFunc(1);
  return v;
}

// ---- validation ----

namespace {

bool all_zero(const Vec& v) {
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

std::string vec_str(const LiePair& p, const Vec& v) {
  std::string s;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (v[k].is_zero()) continue;
    if (!s.empty()) s += " + ";
    s += "(" + v[k].str() + ")*" + p.label(k);
  }
  return s.empty() ? "0" : s;
}

}  // namespace

bool ValidationReport::all_pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

const ValidationCheck& ValidationReport::get(std::string_view name) const {
  for (const auto& c : checks)
    if (c.name == name) return c;
  throw Error(ErrorKind::BadArgument, "no validation check named " + std::string(name));
}

bool is_reductive(const LiePair& p) {
  for (std::size_t i = 0; i < p.dim_h(); ++i)
    for (std::size_t j = p.dim_h(); j < p.dim(); ++j)
      if (!all_zero(p.h_part(p.bracket(i, j)))) return false;
  return true;
}

bool is_symmetric(const LiePair& p) {
  for (std::size_t i = p.dim_h(); i < p.dim(); ++i)
    for (std::size_t j = p.dim_h(); j < p.dim(); ++j)
      if (!all_zero(p.m_part(p.bracket(i, j)))) return false;
  return true;
}

ValidationReport validate_pair(const LiePair& p) {
  ValidationReport rep;
  const std::size_t N = p.dim(), n = p.dim_h();

  ValidationCheck anti{"antisymmetry", true, {}};
  for (const auto& d : p.declared()) {
    const Vec& other = p.bracket(d.y, d.x);
    bool ok = true;
    for (std::size_t k = 0; k < N; ++k)
      if (!(d.v[k] + other[k]).is_zero()) ok = false;
    if (d.x == d.y && !all_zero(d.v)) ok = false;
    if (!ok && anti.pass) {
      anti.pass = false;
      anti.witness = "(" + p.label(d.x) + "," + p.label(d.y) + ")";
    }
  }
  rep.checks.push_back(anti);

  ValidationCheck jac{"jacobi", true, {}};
  for (std::size_t i = 0; i < N && jac.pass; ++i)
    for (std::size_t j = i + 1; j < N && jac.pass; ++j)
      for (std::size_t k = j + 1; k < N && jac.pass; ++k) {
        Vec x = p.basis_vector(i), y = p.basis_vector(j), z = p.basis_vector(k);
        Vec s = p.bracket(x, p.bracket(y, z));
        Vec t = p.bracket(y, p.bracket(z, x));
        Vec u = p.bracket(z, p.bracket(x, y));
        for (std::size_t l = 0; l < N; ++l) s[l] += t[l] + u[l];
        if (!all_zero(s)) {
          jac.pass = false;
          jac.witness = "(" + p.label(i) + "," + p.label(j) + "," + p.label(k) + ") -> " + vec_str(p, s);
        }
      }
  rep.checks.push_back(jac);

  ValidationCheck sub{"subalgebra", true, {}};
  for (std::size_t i = 0; i < n && sub.pass; ++i)
    for (std::size_t j = i + 1; j < n && sub.pass; ++j)
      if (!all_zero(p.m_part(p.bracket(i, j)))) {
        sub.pass = false;
        sub.witness = "(" + p.label(i) + "," + p.label(j) + ")";
      }
  rep.checks.push_back(sub);

  ValidationCheck red{"reductive", true, {}};
  for (std::size_t i = 0; i < n && red.pass; ++i)
    for (std::size_t j = n; j < N && red.pass; ++j)
      if (!all_zero(p.h_part(p.bracket(i, j)))) {
        red.pass = false;
        red.witness = "(" + p.label(i) + "," + p.label(j) + ")";
      }
  rep.checks.push_back(red);

  ValidationCheck sym{"symmetric", true, {}};
  for (std::size_t i = n; i < N && sym.pass; ++i)
    for (std::size_t j = i + 1; j < N && sym.pass; ++j)
      if (!all_zero(p.m_part(p.bracket(i, j)))) {
        sym.pass = false;
        sym.witness = "(" + p.label(i) + "," + p.label(j) + ")";
      }
  rep.symmetric = sym.pass;
  rep.checks.push_back(sym);

  ValidationCheck hom{"homomorphism", true, {}};
  ValidationCheck faith{"faithful", true, {}};
  if (red.pass && sub.pass) {
    std::string w;
    hom.pass = isotropy_is_homomorphism(p, &w);
    hom.witness = w;
    faith.pass = isotropy_is_faithful(p);
    if (!faith.pass) faith.witness = "isotropy matrices linearly dependent";
  } else {
    hom.pass = faith.pass = false;
    hom.witness = faith.witness = "pair not reductive";
  }
  rep.checks.push_back(hom);
  rep.checks.push_back(faith);
  return rep;
}

std::vector<FieldMatrix> isotropy_rep(const LiePair& p) {
  if (!is_reductive(p)) throw Error(ErrorKind::NotReductive, p.id() + " is not reductive");
  const std::size_t n = p.dim_h();
  std::vector<FieldMatrix> out;
  for (std::size_t i = 0; i < n; ++i) {
    FieldMatrix m(4, 4);
    for (std::size_t c = 0; c < 4; ++c) {
      const Vec& b = p.bracket(i, n + c);
      for (std::size_t r = 0; r < 4; ++r) m(r, c) = b[n + r];
    }
    out.push_back(std::move(m));
  }
  return out;
}

bool isotropy_is_homomorphism(const LiePair& p, std::string* witness) {
  auto rho = isotropy_rep(p);
  const std::size_t n = p.dim_h();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      FieldMatrix lhs(4, 4);
      const Vec& b = p.bracket(i, j);
      for (std::size_t k = 0; k < n; ++k)
        if (!b[k].is_zero()) lhs += b[k] * rho[k];
      if (!(lhs - commutator(rho[i], rho[j])).is_zero()) {
        if (witness) *witness = "(" + p.label(i) + "," + p.label(j) + ")";
        return false;
      }
    }
  return true;
}

bool isotropy_is_faithful(const LiePair& p) {
  auto rho = isotropy_rep(p);
  if (rho.empty()) return true;
  FieldMatrix m(rho.size(), 16);
  for (std::size_t i = 0; i < rho.size(); ++i)
    for (std::size_t k = 0; k < 16; ++k) m(i, k) = rho[i].entries()[k];
  return rank(m) == rho.size();
}

// ---- catalog ----

const LiePair* Catalog::find(std::string_view id) const {
  for (const auto& p : pairs)
    if (p.id() == id) return &p;
  return nullptr;
}

namespace {

class LineParser {
 public:
  LineParser(std::string_view line, std::string where) : s_(line), where_(std::move(where)) {}

  [[noreturn]] void fail(const std::string& why) const {
    throw Error(ErrorKind::CatalogParse, where_ + ": " + why);
  }
  void skip() {
    while (i_ < s_.size() && (s_[i_] == ' ' || s_[i_] == '\t')) ++i_;
  }
  bool done() {
    skip();
    return i_ >= s_.size();
  }
  std::string word() {
    skip();
    std::size_t st = i_;
    while (i_ < s_.size() && s_[i_] != ' ' && s_[i_] != '\t' && s_[i_] != '=') ++i_;
    if (st == i_) fail("expected a word");
    return std::string(s_.substr(st, i_ - st));
  }
  std::string quoted() {
    skip();
    if (i_ >= s_.size() || s_[i_] != '"') fail("expected a quoted string");
    std::size_t st = ++i_;
    while (i_ < s_.size() && s_[i_] != '"') ++i_;
    if (i_ >= s_.size()) fail("unterminated string");
    return std::string(s_.substr(st, i_++ - st));
  }
  bool peek(char c) {
    skip();
    return i_ < s_.size() && s_[i_] == c;
  }
  void expect(char c) {
    skip();
    if (i_ >= s_.size() || s_[i_] != c) fail(std::string("expected '") + c + "'");
    ++i_;
  }
  std::string rest() {
    skip();
    std::string r(s_.substr(i_));
    i_ = s_.size();
    while (!r.empty() && (r.back() == ' ' || r.back() == '\t' || r.back() == '\r')) r.pop_back();
    if (r.empty()) fail("expected a value");
    return r;
  }
  void end() {
    if (!done()) fail("trailing text '" + std::string(s_.substr(i_)) + "'");
  }
  const std::string& where() const { return where_; }

 private:
  std::string_view s_;
  std::size_t i_ = 0;
  std::string where_;
};

// Splits a linear combination of basis labels into coefficients.
Vec parse_combination(const LiePair& p, const std::string& text, const LineParser& lp) {
  RatFunc f;
  try {
    f = RatFunc::parse(text);
  } catch (const Error& e) {
    lp.fail(e.what());
  }
  std::vector<Var> labels;
  for (std::size_t k = 0; k < p.dim(); ++k) labels.push_back(var(p.label(k)));
  for (Var v : f.den().variables())
    for (Var l : labels)
      if (v == l) lp.fail("basis label in a denominator");
  std::vector<std::vector<Term>> parts(p.dim());
  for (const auto& t : f.num().terms()) {
    int hit = -1;
    Monomial rest;
    for (const auto& [v, e] : t.mono.powers()) {
      bool is_label = false;
      for (std::size_t k = 0; k < labels.size(); ++k)
        if (labels[k] == v) {
          if (hit >= 0 || e != 1) lp.fail("bracket value is not linear in the basis");
          hit = static_cast<int>(k);
          is_label = true;
        }
      if (!is_label) rest = rest * Monomial::of(v, e);
    }
    if (hit < 0) {
      std::string names;
      for (const auto& [v, e] : t.mono.powers()) names += " " + *v;
      lp.fail("term without a basis label (unknown label?" + names + ")");
    }
    parts[hit].push_back({rest, t.coef});
  }
  Vec out(p.dim());
  for (std::size_t k = 0; k < p.dim(); ++k) out[k] = RatFunc(Poly::from_terms(parts[k]), f.den());
  return out;
}

void parse_golden(LiePair& p, LineParser& lp) {
  std::string key = lp.word();
  std::string sub;
  if (key == "connection") {
    if (lp.peek('=')) {
      lp.expect('=');
      if (lp.rest() != "zero") lp.fail("expected 'zero'");
      p.golden.connection = std::vector<FieldMatrix>(4, FieldMatrix(4, 4));
      return;
    }
    sub = lp.word();
  }
  lp.expect('=');
  std::string v = lp.rest();
  auto rf = [&]() {
    try {
      return RatFunc::parse(v);
    } catch (const Error& e) {
      lp.fail(e.what());
    }
  };
  auto mat = [&]() {
    try {
      return parse_matrix(v);
    } catch (const Error& e) {
      lp.fail(e.what());
    }
  };
  auto& g = p.golden;
  if (key == "metric") {
    g.metric = mat();
  } else if (key == "ricci") {
    g.ricci = mat();
  } else if (key == "lorentz") {
    g.lorentz = v;
  } else if (key == "scalar") {
    g.scalar = rf();
  } else if (key == "lambda") {
    g.lambda = rf();
  } else if (key == "kappa") {
    g.kappa = rf();
  } else if (key == "holonomy_dim") {
    try {
      g.holonomy_dim = std::stoi(v);
    } catch (const std::exception&) {
      lp.fail("bad integer '" + v + "'");
    }
  } else if (key == "verdict") {
    g.has_verdict = true;
    if (v == "solution") {
      g.no_solution.reset();
    } else if (v.rfind("no_solution:", 0) == 0) {
      auto r = parse_reason(v.substr(12));
      if (!r) lp.fail("unknown reason '" + v.substr(12) + "'");
      g.no_solution = r;
    } else {
      lp.fail("verdict must be 'solution' or 'no_solution:<reason>'");
    }
  } else if (key == "connection") {
    auto idx = p.index(sub);
    if (!idx || *idx < p.dim_h()) lp.fail("connection key must be u1..u4");
    if (!g.connection) g.connection = std::vector<FieldMatrix>(4, FieldMatrix(4, 4));
    FieldMatrix m = mat();
    if (m.rows() != 4 || m.cols() != 4) lp.fail("connection matrix must be 4x4");
    (*g.connection)[*idx - p.dim_h()] = m;
  } else {
    lp.fail("unknown golden key '" + key + "'");
  }
}

}  // namespace

Catalog parse_catalog(std::string_view text, const std::string& source) {
  Catalog cat;
  LiePair* cur = nullptr;
  std::size_t lineno = 0, pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++lineno;
    LineParser lp(line, source + ":" + std::to_string(lineno));
    if (lp.done()) continue;
    std::string head = lp.word();
    if (head[0] == '#') continue;
    if (head == "table1") {
      Table1Row r;
      r.family = lp.quoted();
      r.cases = lp.quoted();
      r.condition = lp.quoted();
      lp.end();
      cat.table1.push_back(r);
    } else if (head == "case") {
      std::string id = lp.quoted();
      if (lp.word() != "dim_h") lp.fail("expected dim_h");
      std::string n = lp.word();
      lp.end();
      std::size_t dim_h = 0;
      try {
        dim_h = std::stoul(n);
      } catch (const std::exception&) {
        lp.fail("bad dim_h '" + n + "'");
      }
      if (cat.find(id)) lp.fail("duplicate case '" + id + "'");
      cat.pairs.emplace_back(id, dim_h);
      cur = &cat.pairs.back();
    } else {
      if (!cur) lp.fail("'" + head + "' outside a case");
      if (head == "param") {
        CaseParam cp;
        cp.name = lp.word();
        if (lp.word() != "range") lp.fail("expected range");
        cp.range = lp.quoted();
        lp.end();
        cur->params.push_back(cp);
      } else if (head == "bracket") {
        std::string x = lp.word(), y = lp.word();
        lp.expect('=');
        auto ix = cur->index(x), iy = cur->index(y);
        if (!ix) lp.fail("unknown basis label '" + x + "'");
        if (!iy) lp.fail("unknown basis label '" + y + "'");
        cur->set_bracket(*ix, *iy, parse_combination(*cur, lp.rest(), lp));
      } else if (head == "golden") {
        parse_golden(*cur, lp);
      } else if (head == "space") {
        cur->golden.space = lp.quoted();
        lp.end();
      } else if (head == "note") {
        cur->notes.push_back(lp.quoted());
        lp.end();
      } else {
        lp.fail("unknown statement '" + head + "'");
      }
    }
  }
  return cat;
}

Catalog load_catalog_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::CatalogParse, path + ": cannot open catalog file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_catalog(ss.str(), path);
}

const Catalog& builtin_catalog() {
  static const Catalog cat = parse_catalog(builtin_catalog_text(), "catalog.txt");
  return cat;
}

bool glob_match(std::string_view pat, std::string_view s) {
  std::size_t p = 0, t = 0, star = std::string_view::npos, mark = 0;
  while (t < s.size()) {
    if (p < pat.size() && (pat[p] == '?' || pat[p] == s[t])) {
      ++p;
      ++t;
    } else if (p < pat.size() && pat[p] == '*') {
      star = p++;
      mark = t;
    } else if (star != std::string_view::npos) {
      p = star + 1;
      t = ++mark;
    } else {
      return false;
    }
  }
  while (p < pat.size() && pat[p] == '*') ++p;
  return p == pat.size();
}

}  // namespace eymkit
