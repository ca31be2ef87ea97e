#pragma once

#include <gmpxx.h>

#include <compare>
#include <string>
#include <string_view>

namespace eymkit {

// Arbitrary-precision rational, always in lowest terms with positive denominator.
class Rational {
 public:
  Rational() = default;
  Rational(long v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  Rational(int v) : q_(v) {}   // NOLINT(google-explicit-constructor)
  Rational(const mpz_class& n, const mpz_class& d);
  explicit Rational(const mpq_class& q) : q_(q) { q_.canonicalize(); }

  // Accepts "p" or "p/q" with optional sign; throws Error(Parse) otherwise.
  static Rational parse(std::string_view text);

  mpz_class num() const { return q_.get_num(); }
  mpz_class den() const { return q_.get_den(); }
  const mpq_class& raw() const { return q_; }

  bool is_zero() const { return sgn(q_) == 0; }
  bool is_one() const { return q_ == 1; }
  bool is_integer() const { return q_.get_den() == 1; }
  int sign() const { return sgn(q_); }

  Rational operator-() const { return Rational(mpq_class(-q_)); }
  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  Rational pow(unsigned e) const;
  Rational abs() const { return Rational(mpq_class(::abs(q_))); }
  std::string str() const;

 private:
  mpq_class q_;
};

}  // namespace eymkit
