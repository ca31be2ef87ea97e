#include "eymkit/rational.hpp"

#include <cctype>

#include "eymkit/error.hpp"

namespace eymkit {

namespace {

bool parse_integer(std::string_view s, mpz_class& out) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (std::size_t k = i; k < s.size(); ++k)
    if (!std::isdigit(static_cast<unsigned char>(s[k]))) return false;
  return out.set_str(std::string(s[0] == '+' ? s.substr(1) : s), 10) == 0;
}

}  // namespace

Rational::Rational(const mpz_class& n, const mpz_class& d) {
  if (d == 0) throw Error(ErrorKind::DivisionByZero, "rational with zero denominator");
  q_ = mpq_class(n, d);
  q_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  auto slash = text.find('/');
  mpz_class n, d = 1;
  bool ok = parse_integer(text.substr(0, slash), n);
  if (ok && slash != std::string_view::npos) ok = parse_integer(text.substr(slash + 1), d) && d > 0;
  if (!ok) throw Error(ErrorKind::Parse, "not a rational: '" + std::string(text) + "'");
  return Rational(n, d);
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw Error(ErrorKind::DivisionByZero, "rational division by zero");
  q_ /= o.q_;
  return *this;
}

Rational Rational::pow(unsigned e) const {
  mpz_class n, d;
  mpz_pow_ui(n.get_mpz_t(), q_.get_num_mpz_t(), e);
  mpz_pow_ui(d.get_mpz_t(), q_.get_den_mpz_t(), e);
  return Rational(n, d);
}

std::string Rational::str() const { return q_.get_str(); }

}  // namespace eymkit
