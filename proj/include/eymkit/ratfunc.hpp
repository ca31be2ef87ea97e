#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "eymkit/poly.hpp"

namespace eymkit {

// Rational function in canonical form: num and den coprime with integer
// coefficients whose joint content is 1, den's leading coefficient positive.
// Zero is 0/1.
class RatFunc {
 public:
  RatFunc() : den_(1) {}
  RatFunc(const Rational& c) : num_(Rational(c.num(), 1)), den_(Rational(c.den(), 1)) {}  // NOLINT(google-explicit-constructor)
  RatFunc(long c) : RatFunc(Rational(c)) {}         // NOLINT(google-explicit-constructor)
  RatFunc(int c) : RatFunc(Rational(c)) {}          // NOLINT(google-explicit-constructor)
  RatFunc(const Poly& p) : RatFunc(p, Poly(1)) {}   // NOLINT(google-explicit-constructor)
  RatFunc(const Poly& num, const Poly& den);        // throws DivisionByZero on den = 0
  static RatFunc variable(std::string_view name) { return RatFunc(Poly::variable(name)); }
  // Parses the infix grammar produced by str(); throws Error(Parse).
  static RatFunc parse(std::string_view text);

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  Rational constant_value() const;  // requires is_constant()
  bool is_polynomial() const { return den_.is_constant(); }
  std::vector<Var> variables() const;
  bool contains(Var v) const { return num_.contains(v) || den_.contains(v); }

  RatFunc operator-() const;
  friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
  RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }
  RatFunc pow(int e) const;

  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  // Throws MissingParam, or PoleAtPoint when den vanishes at the point.
  Rational eval(const Assignment& at) const;
  // Substitutes the assigned parameters only; throws PoleAtPoint.
  RatFunc partial_eval(const Assignment& at) const;

  // Re-runs canonicalization; observably identity for valid values.
  RatFunc normalized() const { return RatFunc(num_, den_); }

  std::string str() const;

 private:
  struct Raw {};
  RatFunc(Raw, Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {}
  // Scales an already coprime pair into canonical form.
  static RatFunc from_coprime(const Poly& num, const Poly& den);
  Poly num_;
  Poly den_;
};

inline bool is_zero(const RatFunc& x) { return x.is_zero(); }
inline bool is_zero(const Rational& x) { return x.is_zero(); }

}  // namespace eymkit
