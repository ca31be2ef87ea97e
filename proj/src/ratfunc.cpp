#include "eymkit/ratfunc.hpp"

#include <algorithm>
#include <cctype>

#include "eymkit/error.hpp"

namespace eymkit {

RatFunc::RatFunc(const Poly& num, const Poly& den) {
  if (den.is_zero()) throw Error(ErrorKind::DivisionByZero, "rational function with zero denominator");
  if (num.is_zero()) {
    den_ = Poly(1);
    return;
  }
  if (!num.is_constant() && !den.is_constant()) {
    // Exact quotients (fraction-free elimination produces many) skip the gcd.
    if (auto q = divide_exact(num, den)) {
      *this = from_coprime(*q, Poly(1));
      return;
    }
    Poly g = gcd(num, den);
    if (!g.is_constant()) {
      *this = from_coprime(*divide_exact(num, g), *divide_exact(den, g));
      return;
    }
  }
  *this = from_coprime(num, den);
}

RatFunc RatFunc::from_coprime(const Poly& n, const Poly& d) {
  if (n.is_zero()) return RatFunc();
  // Joint scaling: clear denominators of both, then remove the common integer
  // content, then fix the sign by den's leading coefficient.
  mpz_class l = 1, c = 0;
  for (const Poly* p : {&n, &d})
    for (const auto& t : p->terms()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.coef.raw().get_den_mpz_t());
  for (const Poly* p : {&n, &d})
    for (const auto& t : p->terms()) {
      mpz_class z = t.coef.num() * (l / t.coef.den());
      mpz_gcd(c.get_mpz_t(), c.get_mpz_t(), z.get_mpz_t());
    }
  Rational f(l, c);
  if (d.leading().coef.sign() < 0) f = -f;
  return RatFunc(Raw{}, n.scaled(f), d.scaled(f));
}

Rational RatFunc::constant_value() const { return num_.constant_value() / den_.constant_value(); }

std::vector<Var> RatFunc::variables() const {
  auto a = num_.variables();
  for (Var v : den_.variables())
    if (std::find(a.begin(), a.end(), v) == a.end()) a.push_back(v);
  std::sort(a.begin(), a.end(), [](Var x, Var y) { return *x < *y; });
  return a;
}

RatFunc RatFunc::operator-() const { return RatFunc(Raw{}, -num_, den_); }

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
  // Both operands are reduced, so a common factor of the sum can only come
  // from g = gcd(den a, den b).
  Poly g = gcd(a.den_, b.den_);
  if (g.is_constant()) return RatFunc::from_coprime(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  Poly da = *divide_exact(a.den_, g), db = *divide_exact(b.den_, g);
  Poly t = a.num_ * db + b.num_ * da;
  if (t.is_zero()) return RatFunc();
  Poly h = gcd(t, g);
  if (h.is_constant()) return RatFunc::from_coprime(t, da * b.den_);
  return RatFunc::from_coprime(*divide_exact(t, h), da * *divide_exact(b.den_, h));
}

RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
  if (a.is_zero() || b.is_zero()) return RatFunc();
  if (a.is_constant() && a.constant_value().is_one()) return b;
  if (b.is_constant() && b.constant_value().is_one()) return a;
  // Cross-cancel the reduced operands; the product is then coprime.
  Poly g1 = gcd(a.num_, b.den_), g2 = gcd(b.num_, a.den_);
  Poly an = a.num_, bd = b.den_, bn = b.num_, ad = a.den_;
  if (!g1.is_constant()) {
    an = *divide_exact(an, g1);
    bd = *divide_exact(bd, g1);
  }
  if (!g2.is_constant()) {
    bn = *divide_exact(bn, g2);
    ad = *divide_exact(ad, g2);
  }
  return RatFunc::from_coprime(an * bn, ad * bd);
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) {
  if (b.is_zero()) throw Error(ErrorKind::DivisionByZero, "division by the zero function");
  return a * RatFunc::from_coprime(b.den_, b.num_);
}

RatFunc RatFunc::pow(int e) const {
  if (e < 0) return RatFunc(1) / pow(-e);
  return RatFunc(Raw{}, num_.pow(static_cast<unsigned>(e)), den_.pow(static_cast<unsigned>(e)));
}

Rational RatFunc::eval(const Assignment& at) const {
  Rational d = den_.eval(at);
  if (d.is_zero()) throw Error(ErrorKind::PoleAtPoint, "pole of " + str());
  return num_.eval(at) / d;
}

RatFunc RatFunc::partial_eval(const Assignment& at) const {
  Poly d = den_.partial_eval(at);
  if (d.is_zero()) throw Error(ErrorKind::PoleAtPoint, "pole of " + str());
  return RatFunc(num_.partial_eval(at), d);
}

std::string RatFunc::str() const {
  if (den_.is_constant() && den_.constant_value().is_one()) return num_.str();
  std::string n = num_.terms().size() > 1 ? "(" + num_.str() + ")" : num_.str();
  bool bare = den_.is_monomial() && den_.leading().coef.is_one() && den_.leading().mono.powers().size() == 1;
  bool plain_int = den_.is_constant();
  std::string d = (bare || plain_int) ? den_.str() : "(" + den_.str() + ")";
  return n + "/" + d;
}

// ---- parser ----

namespace {

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  RatFunc parse_all() {
    RatFunc r = expr();
    skip();
    if (i_ != s_.size()) fail("unexpected '" + std::string(1, s_[i_]) + "'");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw Error(ErrorKind::Parse, "parse error at column " + std::to_string(i_ + 1) + " in '" +
                                      std::string(s_) + "': " + why);
  }
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool eat(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }
  RatFunc expr() {
    RatFunc r = term();
    for (;;) {
      if (eat('+'))
        r += term();
      else if (eat('-'))
        r -= term();
      else
        return r;
    }
  }
  RatFunc term() {
    RatFunc r = unary();
    for (;;) {
      if (eat('*')) {
        r *= unary();
      } else if (eat('/')) {
        RatFunc d = unary();
        if (d.is_zero()) fail("division by zero");
        r /= d;
      } else {
        return r;
      }
    }
  }
  RatFunc unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }
  RatFunc power() {
    RatFunc b = atom();
    if (eat('^')) {
      bool neg = eat('-');
      skip();
      std::size_t st = i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      if (st == i_) fail("expected integer exponent");
      int e = std::stoi(std::string(s_.substr(st, i_ - st)));
      if (neg && b.is_zero()) fail("division by zero");
      return b.pow(neg ? -e : e);
    }
    return b;
  }
  RatFunc atom() {
    skip();
    if (i_ >= s_.size()) fail("unexpected end of input");
    char c = s_[i_];
    if (c == '(') {
      ++i_;
      RatFunc r = expr();
      if (!eat(')')) fail("expected ')'");
      return r;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t st = i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      return RatFunc(Rational::parse(s_.substr(st, i_ - st)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t st = i_;
      while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) ++i_;
      return RatFunc::variable(s_.substr(st, i_ - st));
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view s_;
  std::size_t i_ = 0;
};

}  // namespace

RatFunc RatFunc::parse(std::string_view text) { return Parser(text).parse_all(); }

}  // namespace eymkit
