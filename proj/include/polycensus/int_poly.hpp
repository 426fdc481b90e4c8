#pragma once

#include <gmpxx.h>

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace polycensus {

// Degree reported for the zero polynomial.
inline constexpr int kZeroPolynomialDegree = -1;

// Exact integer polynomial a_0 X^n + a_1 X^{n-1} + ... + a_n.
//
// Storage is by ascending power (powers()[i] is the coefficient of X^i), the
// layout every algorithm here wants. The display and serialization order is
// leading coefficient first, matching "a_0,a_1,...,a_n". The representation
// is always trimmed: the top stored coefficient is nonzero, and the zero
// polynomial stores nothing.
class IntPolynomial {
 public:
  IntPolynomial() = default;

  static IntPolynomial from_powers(std::vector<mpz_class> ascending);
  static IntPolynomial from_leading_first(std::span<const mpz_class> coeffs);
  static IntPolynomial from_leading_first(std::initializer_list<long> coeffs);
  static IntPolynomial from_leading_first_ll(std::span<const long long> coeffs);
  // Parses "a_0,a_1,...,a_n" (whitespace tolerated). Throws ParseError.
  static IntPolynomial parse(std::string_view text);
  static IntPolynomial constant(const mpz_class& c);
  static IntPolynomial monomial(const mpz_class& c, int power);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }

  // Coefficient of X^power (zero outside the stored range).
  const mpz_class& coeff(int power) const;
  // a(i) is the coefficient of X^{n-i}.
  const mpz_class& a(int i) const { return coeff(degree() - i); }
  const mpz_class& leading() const;
  const mpz_class& constant_term() const { return coeff(0); }

  const std::vector<mpz_class>& powers() const { return c_; }
  std::vector<mpz_class> leading_first() const;

  mpz_class height() const;
  // Number of zero roots (the X-adic valuation). Zero polynomial: 0.
  int zero_root_multiplicity() const;
  // True when every coefficient fits a double exactly (|a_i| <= 2^53).
  bool fits_double() const;

  std::string to_string() const;  // "a_0,a_1,...,a_n"; "0" for the zero polynomial
  std::string pretty() const;     // e.g. "X^3 - X - 1"

  IntPolynomial operator-() const;
  IntPolynomial& operator+=(const IntPolynomial& g);
  IntPolynomial& operator-=(const IntPolynomial& g);
  IntPolynomial& operator*=(const mpz_class& s);

  friend IntPolynomial operator+(IntPolynomial f, const IntPolynomial& g) { return f += g; }
  friend IntPolynomial operator-(IntPolynomial f, const IntPolynomial& g) { return f -= g; }
  friend IntPolynomial operator*(const IntPolynomial& f, const IntPolynomial& g);
  friend IntPolynomial operator*(IntPolynomial f, const mpz_class& s) { return f *= s; }
  friend bool operator==(const IntPolynomial& f, const IntPolynomial& g) { return f.c_ == g.c_; }

  // Canonical total order (degree, then coefficients from the top).
  friend bool operator<(const IntPolynomial& f, const IntPolynomial& g);

 private:
  explicit IntPolynomial(std::vector<mpz_class> ascending) : c_(std::move(ascending)) { trim(); }
  void trim();

  std::vector<mpz_class> c_;
};

}  // namespace polycensus
