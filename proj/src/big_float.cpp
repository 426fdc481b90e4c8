#include "polycensus/big_float.hpp"

#include <algorithm>
#include <limits>
#include <memory>

namespace polycensus {

namespace {

thread_local mpfr_prec_t tl_working_precision = 128;

mpfr_rnd_t to_mpfr(Round r) {
  switch (r) {
    case Round::Down:
      return MPFR_RNDD;
    case Round::Up:
      return MPFR_RNDU;
    case Round::Nearest:
      break;
  }
  return MPFR_RNDN;
}

mpfr_prec_t joint(const BigFloat& a, const BigFloat& b) {
  return std::max(a.precision(), b.precision());
}

}  // namespace

BigFloat::BigFloat() : BigFloat(tl_working_precision) {}

BigFloat::BigFloat(mpfr_prec_t prec) {
  mpfr_init2(v_, prec);
  mpfr_set_zero(v_, 1);
}

BigFloat::BigFloat(double v, mpfr_prec_t prec) {
  mpfr_init2(v_, prec);
  mpfr_set_d(v_, v, MPFR_RNDN);
}

BigFloat::BigFloat(const mpz_class& v, mpfr_prec_t prec, Round rnd) {
  mpfr_init2(v_, prec);
  mpfr_set_z(v_, v.get_mpz_t(), to_mpfr(rnd));
}

BigFloat::BigFloat(const mpq_class& v, mpfr_prec_t prec, Round rnd) {
  mpfr_init2(v_, prec);
  mpfr_set_q(v_, v.get_mpq_t(), to_mpfr(rnd));
}

BigFloat::BigFloat(const BigFloat& other) {
  mpfr_init2(v_, other.precision());
  mpfr_set(v_, other.v_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& other) noexcept {
  // Steal the limbs; leave `other` as a valid zero of minimal precision.
  *v_ = *other.v_;
  mpfr_init2(other.v_, MPFR_PREC_MIN);
  mpfr_set_zero(other.v_, 1);
}

BigFloat& BigFloat::operator=(const BigFloat& other) {
  if (this != &other) {
    mpfr_set_prec(v_, other.precision());
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }
  return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept {
  if (this != &other) mpfr_swap(v_, other.v_);
  return *this;
}

BigFloat::~BigFloat() { mpfr_clear(v_); }

BigFloat BigFloat::from_string(const std::string& s, mpfr_prec_t prec) {
  BigFloat r(prec);
  mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN);
  return r;
}

mpfr_prec_t BigFloat::working_precision() { return tl_working_precision; }

void BigFloat::set_working_precision(mpfr_prec_t prec) { tl_working_precision = prec; }

void BigFloat::set_precision(mpfr_prec_t prec, Round rnd) {
  mpfr_prec_round(v_, prec, to_mpfr(rnd));
}

double BigFloat::to_double(Round rnd) const { return mpfr_get_d(v_, to_mpfr(rnd)); }

mpq_class BigFloat::to_rational() const {
  mpq_class q;
  if (mpfr_zero_p(v_)) return q;
  mpz_class m;
  mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), v_);
  if (e >= 0) {
    mpz_mul_2exp(m.get_mpz_t(), m.get_mpz_t(), static_cast<mp_bitcnt_t>(e));
    q = m;
  } else {
    mpz_class den = 1;
    mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), static_cast<mp_bitcnt_t>(-e));
    q = mpq_class(m, den);
    q.canonicalize();
  }
  return q;
}

std::string BigFloat::to_string(int digits) const {
  if (digits <= 0) {
    digits = static_cast<int>(static_cast<double>(precision()) * 0.30103) + 2;
  }
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*Rg", digits, v_);
  std::string s(buf);
  mpfr_free_str(buf);
  return s;
}

long BigFloat::exponent2() const {
  if (mpfr_zero_p(v_)) return std::numeric_limits<long>::min() / 2;
  return static_cast<long>(mpfr_get_exp(v_));
}

BigFloat& BigFloat::operator+=(const BigFloat& b) { return *this = add(*this, b); }
BigFloat& BigFloat::operator-=(const BigFloat& b) { return *this = sub(*this, b); }
BigFloat& BigFloat::operator*=(const BigFloat& b) { return *this = mul(*this, b); }
BigFloat& BigFloat::operator/=(const BigFloat& b) { return *this = div(*this, b); }

BigFloat BigFloat::operator-() const {
  BigFloat r(precision());
  mpfr_neg(r.v_, v_, MPFR_RNDN);
  return r;
}

std::partial_ordering operator<=>(const BigFloat& a, const BigFloat& b) {
  if (mpfr_unordered_p(a.v_, b.v_)) return std::partial_ordering::unordered;
  int c = mpfr_cmp(a.v_, b.v_);
  if (c < 0) return std::partial_ordering::less;
  if (c > 0) return std::partial_ordering::greater;
  return std::partial_ordering::equivalent;
}

BigFloat BigFloat::add(const BigFloat& a, const BigFloat& b, Round rnd) {
  BigFloat r(joint(a, b));
  mpfr_add(r.v_, a.v_, b.v_, to_mpfr(rnd));
  return r;
}

BigFloat BigFloat::sub(const BigFloat& a, const BigFloat& b, Round rnd) {
  BigFloat r(joint(a, b));
  mpfr_sub(r.v_, a.v_, b.v_, to_mpfr(rnd));
  return r;
}

BigFloat BigFloat::mul(const BigFloat& a, const BigFloat& b, Round rnd) {
  BigFloat r(joint(a, b));
  mpfr_mul(r.v_, a.v_, b.v_, to_mpfr(rnd));
  return r;
}

BigFloat BigFloat::div(const BigFloat& a, const BigFloat& b, Round rnd) {
  BigFloat r(joint(a, b));
  mpfr_div(r.v_, a.v_, b.v_, to_mpfr(rnd));
  return r;
}

BigFloat BigFloat::sqrt(const BigFloat& a, Round rnd) {
  BigFloat r(a.precision());
  mpfr_sqrt(r.v_, a.v_, to_mpfr(rnd));
  return r;
}

BigFloat BigFloat::root(const BigFloat& a, unsigned long k, Round rnd) {
  BigFloat r(a.precision());
  mpfr_rootn_ui(r.v_, a.v_, k, to_mpfr(rnd));
  return r;
}

BigFloat BigFloat::pow_ui(const BigFloat& a, unsigned long k, Round rnd) {
  BigFloat r(a.precision());
  mpfr_pow_ui(r.v_, a.v_, k, to_mpfr(rnd));
  return r;
}

BigFloat BigFloat::abs(const BigFloat& a) {
  BigFloat r(a.precision());
  mpfr_abs(r.v_, a.v_, MPFR_RNDN);
  return r;
}

BigFloat BigFloat::hypot(const BigFloat& a, const BigFloat& b, Round rnd) {
  BigFloat r(joint(a, b));
  mpfr_hypot(r.v_, a.v_, b.v_, to_mpfr(rnd));
  return r;
}

BigFloat BigFloat::max(const BigFloat& a, const BigFloat& b) { return a < b ? b : a; }
BigFloat BigFloat::min(const BigFloat& a, const BigFloat& b) { return b < a ? b : a; }

BigFloat BigFloat::pow2(long e, mpfr_prec_t prec) {
  BigFloat r(prec);
  mpfr_set_ui_2exp(r.v_, 1, e, MPFR_RNDN);
  return r;
}

BigFloat BigFloat::pi(mpfr_prec_t prec) {
  BigFloat r(prec);
  mpfr_const_pi(r.v_, MPFR_RNDN);
  return r;
}

BigFloat BigFloat::cos(const BigFloat& a) {
  BigFloat r(a.precision());
  mpfr_cos(r.v_, a.v_, MPFR_RNDN);
  return r;
}

BigFloat BigFloat::sin(const BigFloat& a) {
  BigFloat r(a.precision());
  mpfr_sin(r.v_, a.v_, MPFR_RNDN);
  return r;
}

}  // namespace polycensus
