#pragma once

#include <gmpxx.h>

#include <cmath>

#include "polycensus/big_float.hpp"

namespace polycensus::detail {

// Uniform scalar interface for the templated root iterations. `prec` is the
// working precision in bits; double ignores it.
template <class R>
struct Num;

template <>
struct Num<double> {
  static double make(double v, long) { return v; }
  static double from_mpz(const mpz_class& z, long) { return z.get_d(); }
  static double unit(long) { return 0x1p-53; }
  static double abs(double x) { return std::fabs(x); }
  static double sqrt(double x) { return std::sqrt(x); }
  static double hypot(double a, double b) { return std::hypot(a, b); }
  static bool finite(double x) { return std::isfinite(x); }
  static double to_double(double x) { return x; }
  static BigFloat to_big(double x, long prec) { return BigFloat(x, prec); }
  static long bits(long) { return 53; }
};

template <>
struct Num<BigFloat> {
  static BigFloat make(double v, long prec) { return BigFloat(v, prec); }
  static BigFloat from_mpz(const mpz_class& z, long prec) { return BigFloat(z, prec); }
  static BigFloat unit(long prec) { return BigFloat::pow2(1 - prec, prec); }
  static BigFloat abs(const BigFloat& x) { return BigFloat::abs(x); }
  static BigFloat sqrt(const BigFloat& x) { return BigFloat::sqrt(x); }
  static BigFloat hypot(const BigFloat& a, const BigFloat& b) { return BigFloat::hypot(a, b); }
  static bool finite(const BigFloat& x) { return x.is_finite(); }
  static double to_double(const BigFloat& x) { return x.to_double(); }
  static BigFloat to_big(const BigFloat& x, long) { return x; }
  static long bits(long prec) { return prec; }
};

template <class R>
struct Cx {
  R re;
  R im;
};

template <class R>
Cx<R> operator+(const Cx<R>& a, const Cx<R>& b) {
  return {a.re + b.re, a.im + b.im};
}
template <class R>
Cx<R> operator-(const Cx<R>& a, const Cx<R>& b) {
  return {a.re - b.re, a.im - b.im};
}
template <class R>
Cx<R> operator*(const Cx<R>& a, const Cx<R>& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
template <class R>
Cx<R> scale(const Cx<R>& a, const R& s) {
  return {a.re * s, a.im * s};
}
template <class R>
Cx<R> operator/(const Cx<R>& a, const Cx<R>& b) {
  // Smith-free form is enough here: operands stay well within range.
  R d = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}
template <class R>
Cx<R> conj(const Cx<R>& a) {
  return {a.re, -a.im};
}
template <class R>
R modulus(const Cx<R>& a) {
  return Num<R>::hypot(a.re, a.im);
}

}  // namespace polycensus::detail
