#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <compare>
#include <string>

namespace polycensus {

enum class Round { Nearest, Down, Up };

// RAII wrapper around an MPFR number. Arithmetic results carry the larger of
// the operand precisions; constants are created at the thread's working
// precision unless a precision is passed explicitly.
class BigFloat {
 public:
  BigFloat();
  explicit BigFloat(mpfr_prec_t prec);
  BigFloat(double v, mpfr_prec_t prec);
  BigFloat(const mpz_class& v, mpfr_prec_t prec, Round rnd = Round::Nearest);
  BigFloat(const mpq_class& v, mpfr_prec_t prec, Round rnd = Round::Nearest);
  BigFloat(const BigFloat& other);
  BigFloat(BigFloat&& other) noexcept;
  BigFloat& operator=(const BigFloat& other);
  BigFloat& operator=(BigFloat&& other) noexcept;
  ~BigFloat();

  static BigFloat from_double(double v) { return BigFloat(v, working_precision()); }
  static BigFloat from_string(const std::string& s, mpfr_prec_t prec);

  // Thread-local default precision used by the default constructor.
  static mpfr_prec_t working_precision();
  static void set_working_precision(mpfr_prec_t prec);

  mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
  // Rounds the stored value to a new precision.
  void set_precision(mpfr_prec_t prec, Round rnd = Round::Nearest);

  mpfr_srcptr get() const { return v_; }
  mpfr_ptr get() { return v_; }

  double to_double(Round rnd = Round::Nearest) const;
  // Exact conversion (every finite binary float is a dyadic rational).
  mpq_class to_rational() const;
  std::string to_string(int digits = 0) const;

  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  long exponent2() const;  // floor(log2|x|) + 1, or a very negative value for 0

  BigFloat& operator+=(const BigFloat& b);
  BigFloat& operator-=(const BigFloat& b);
  BigFloat& operator*=(const BigFloat& b);
  BigFloat& operator/=(const BigFloat& b);
  BigFloat operator-() const;

  friend BigFloat operator+(const BigFloat& a, const BigFloat& b) { return add(a, b); }
  friend BigFloat operator-(const BigFloat& a, const BigFloat& b) { return sub(a, b); }
  friend BigFloat operator*(const BigFloat& a, const BigFloat& b) { return mul(a, b); }
  friend BigFloat operator/(const BigFloat& a, const BigFloat& b) { return div(a, b); }

  friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  friend std::partial_ordering operator<=>(const BigFloat& a, const BigFloat& b);

  static BigFloat add(const BigFloat& a, const BigFloat& b, Round rnd = Round::Nearest);
  static BigFloat sub(const BigFloat& a, const BigFloat& b, Round rnd = Round::Nearest);
  static BigFloat mul(const BigFloat& a, const BigFloat& b, Round rnd = Round::Nearest);
  static BigFloat div(const BigFloat& a, const BigFloat& b, Round rnd = Round::Nearest);
  static BigFloat sqrt(const BigFloat& a, Round rnd = Round::Nearest);
  static BigFloat root(const BigFloat& a, unsigned long k, Round rnd = Round::Nearest);
  static BigFloat pow_ui(const BigFloat& a, unsigned long k, Round rnd = Round::Nearest);
  static BigFloat abs(const BigFloat& a);
  static BigFloat hypot(const BigFloat& a, const BigFloat& b, Round rnd = Round::Nearest);
  static BigFloat max(const BigFloat& a, const BigFloat& b);
  static BigFloat min(const BigFloat& a, const BigFloat& b);
  // 2^e at the given precision.
  static BigFloat pow2(long e, mpfr_prec_t prec);
  static BigFloat pi(mpfr_prec_t prec);
  static BigFloat cos(const BigFloat& a);
  static BigFloat sin(const BigFloat& a);

 private:
  mpfr_t v_;
};

// Sets the working precision for the current scope and restores it on exit.
class PrecisionScope {
 public:
  explicit PrecisionScope(mpfr_prec_t prec) : saved_(BigFloat::working_precision()) {
    BigFloat::set_working_precision(prec);
  }
  ~PrecisionScope() { BigFloat::set_working_precision(saved_); }
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  mpfr_prec_t saved_;
};

inline BigFloat abs(const BigFloat& a) { return BigFloat::abs(a); }
inline BigFloat sqrt(const BigFloat& a) { return BigFloat::sqrt(a); }

}  // namespace polycensus
