#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "eymkit/rational.hpp"

namespace eymkit {

// Parameter handle: an interned name. Equal names share one address, and the
// pointee never changes, so handles are freely shareable across threads.
using Var = const std::string*;
Var var(std::string_view name);

using Assignment = std::map<std::string, Rational>;

class Monomial {
 public:
  Monomial() = default;
  static Monomial of(Var v, unsigned e = 1);

  // (var, exponent) pairs sorted by name; exponents are positive.
  const std::vector<std::pair<Var, unsigned>>& powers() const { return p_; }
  unsigned degree() const { return deg_; }
  unsigned exponent(Var v) const;
  bool is_one() const { return p_.empty(); }

  Monomial operator*(const Monomial& o) const;
  // nullopt when o does not divide *this.
  std::optional<Monomial> divide(const Monomial& o) const;
  Monomial without(Var v) const;
  static Monomial gcd(const Monomial& a, const Monomial& b);

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.p_ == b.p_; }

 private:
  std::vector<std::pair<Var, unsigned>> p_;
  unsigned deg_ = 0;
};

// Graded lexicographic comparison over name-sorted variables: -1, 0 or 1.
int grlex_compare(const Monomial& a, const Monomial& b);

struct GrlexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const { return grlex_compare(a, b) > 0; }
};

struct Term {
  Monomial mono;
  Rational coef;
  friend bool operator==(const Term&, const Term&) = default;
};

// Sparse multivariate polynomial over Q; terms strictly descending in grlex,
// no zero coefficients.
class Poly {
 public:
  Poly() = default;
  Poly(const Rational& c);  // NOLINT(google-explicit-constructor)
  Poly(long c) : Poly(Rational(c)) {}  // NOLINT(google-explicit-constructor)
  Poly(int c) : Poly(Rational(c)) {}  // NOLINT(google-explicit-constructor)
  static Poly variable(std::string_view name);
  static Poly monomial(const Monomial& m, const Rational& c);
  // Terms in any order, duplicates summed.
  static Poly from_terms(std::vector<Term> terms);

  const std::vector<Term>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  bool is_constant() const { return t_.empty() || (t_.size() == 1 && t_[0].mono.is_one()); }
  bool is_monomial() const { return t_.size() == 1; }
  Rational constant_value() const;  // requires is_constant()
  const Term& leading() const { return t_.front(); }
  unsigned total_degree() const;
  unsigned degree_in(Var v) const;
  std::vector<Var> variables() const;  // name-sorted
  bool contains(Var v) const { return degree_in(v) > 0; }

  Poly operator-() const;
  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  Poly scaled(const Rational& c) const;
  Poly times(const Monomial& m) const;
  Poly pow(unsigned e) const;

  friend bool operator==(const Poly& a, const Poly& b) { return a.t_ == b.t_; }

  Rational eval(const Assignment& at) const;  // throws MissingParam
  Poly partial_eval(const Assignment& at) const;

  // Integer-coefficient multiple with coprime coefficients and positive leading
  // coefficient; zero stays zero.
  Poly primitive() const;
  // lcm of coefficient denominators over gcd of numerators, signed so that
  // scaled(normalizer()) == primitive().
  Rational normalizer() const;

  std::string str() const;

 private:
  std::vector<Term> t_;
};

// Exact quotient, nullopt if q does not divide p. q must be nonzero.
std::optional<Poly> divide_exact(const Poly& p, const Poly& q);
// Greatest common divisor, returned primitive (see Poly::primitive); gcd(0,0) = 0.
Poly gcd(const Poly& p, const Poly& q);

}  // namespace eymkit
