#include "polycensus/int_poly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "polycensus/error.hpp"

namespace polycensus {

namespace {

const mpz_class& zero_mpz() {
  static const mpz_class z = 0;
  return z;
}

}  // namespace

IntPolynomial IntPolynomial::from_powers(std::vector<mpz_class> ascending) {
  return IntPolynomial(std::move(ascending));
}

IntPolynomial IntPolynomial::from_leading_first(std::span<const mpz_class> coeffs) {
  std::vector<mpz_class> c(coeffs.rbegin(), coeffs.rend());
  return IntPolynomial(std::move(c));
}

IntPolynomial IntPolynomial::from_leading_first(std::initializer_list<long> coeffs) {
  std::vector<mpz_class> c;
  c.reserve(coeffs.size());
  for (auto it = std::rbegin(coeffs); it != std::rend(coeffs); ++it) c.emplace_back(*it);
  return IntPolynomial(std::move(c));
}

IntPolynomial IntPolynomial::from_leading_first_ll(std::span<const long long> coeffs) {
  std::vector<mpz_class> c;
  c.reserve(coeffs.size());
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) c.emplace_back(static_cast<long>(*it));
  return IntPolynomial(std::move(c));
}

IntPolynomial IntPolynomial::parse(std::string_view text) {
  std::vector<mpz_class> lead_first;
  std::string token;
  auto flush = [&](bool final_token) {
    std::string t;
    for (char ch : token) {
      if (!std::isspace(static_cast<unsigned char>(ch))) t.push_back(ch);
    }
    token.clear();
    if (t.empty()) {
      if (final_token && lead_first.empty()) fail(ErrorCode::ParseError, "empty coefficient list");
      fail(ErrorCode::ParseError, "empty coefficient in list");
    }
    if (t[0] == '+') t.erase(0, 1);
    mpz_class v;
    if (t.empty() || v.set_str(t, 10) != 0) {
      fail(ErrorCode::ParseError, "bad integer coefficient '" + t + "'");
    }
    lead_first.push_back(v);
  };
  for (char ch : text) {
    if (ch == ',') {
      flush(false);
    } else {
      token.push_back(ch);
    }
  }
  flush(true);
  return from_leading_first(lead_first);
}

IntPolynomial IntPolynomial::constant(const mpz_class& c) { return IntPolynomial({c}); }

IntPolynomial IntPolynomial::monomial(const mpz_class& c, int power) {
  std::vector<mpz_class> v(static_cast<size_t>(power) + 1);
  v.back() = c;
  return IntPolynomial(std::move(v));
}

void IntPolynomial::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

const mpz_class& IntPolynomial::coeff(int power) const {
  if (power < 0 || power >= static_cast<int>(c_.size())) return zero_mpz();
  return c_[static_cast<size_t>(power)];
}

const mpz_class& IntPolynomial::leading() const {
  return c_.empty() ? zero_mpz() : c_.back();
}

std::vector<mpz_class> IntPolynomial::leading_first() const {
  if (c_.empty()) return {mpz_class(0)};
  return {c_.rbegin(), c_.rend()};
}

mpz_class IntPolynomial::height() const {
  mpz_class h = 0;
  for (const auto& a : c_) {
    if (mpz_cmpabs(a.get_mpz_t(), h.get_mpz_t()) > 0) h = abs(a);
  }
  return h;
}

int IntPolynomial::zero_root_multiplicity() const {
  int v = 0;
  while (v < static_cast<int>(c_.size()) && c_[static_cast<size_t>(v)] == 0) ++v;
  return c_.empty() ? 0 : v;
}

bool IntPolynomial::fits_double() const {
  for (const auto& a : c_) {
    if (mpz_sizeinbase(a.get_mpz_t(), 2) > 53) return false;
  }
  return true;
}

std::string IntPolynomial::to_string() const {
  if (c_.empty()) return "0";
  std::string s;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    if (!s.empty()) s.push_back(',');
    s += it->get_str();
  }
  return s;
}

std::string IntPolynomial::pretty() const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int k = degree(); k >= 0; --k) {
    const mpz_class& a = coeff(k);
    if (a == 0) continue;
    mpz_class mag = abs(a);
    if (first) {
      if (a < 0) os << "-";
    } else {
      os << (a < 0 ? " - " : " + ");
    }
    first = false;
    if (mag != 1 || k == 0) os << mag.get_str();
    if (k >= 1) os << "X";
    if (k >= 2) os << "^" << k;
  }
  return os.str();
}

IntPolynomial IntPolynomial::operator-() const {
  std::vector<mpz_class> v = c_;
  for (auto& a : v) a = -a;
  return IntPolynomial(std::move(v));
}

IntPolynomial& IntPolynomial::operator+=(const IntPolynomial& g) {
  if (g.c_.size() > c_.size()) c_.resize(g.c_.size());
  for (size_t i = 0; i < g.c_.size(); ++i) c_[i] += g.c_[i];
  trim();
  return *this;
}

IntPolynomial& IntPolynomial::operator-=(const IntPolynomial& g) {
  if (g.c_.size() > c_.size()) c_.resize(g.c_.size());
  for (size_t i = 0; i < g.c_.size(); ++i) c_[i] -= g.c_[i];
  trim();
  return *this;
}

IntPolynomial& IntPolynomial::operator*=(const mpz_class& s) {
  if (s == 0) {
    c_.clear();
    return *this;
  }
  for (auto& a : c_) a *= s;
  return *this;
}

IntPolynomial operator*(const IntPolynomial& f, const IntPolynomial& g) {
  if (f.is_zero() || g.is_zero()) return {};
  std::vector<mpz_class> r(f.c_.size() + g.c_.size() - 1);
  for (size_t i = 0; i < f.c_.size(); ++i) {
    if (f.c_[i] == 0) continue;
    for (size_t j = 0; j < g.c_.size(); ++j) mpz_addmul(r[i + j].get_mpz_t(), f.c_[i].get_mpz_t(), g.c_[j].get_mpz_t());
  }
  return IntPolynomial(std::move(r));
}

bool operator<(const IntPolynomial& f, const IntPolynomial& g) {
  if (f.degree() != g.degree()) return f.degree() < g.degree();
  for (int k = f.degree(); k >= 0; --k) {
    int c = cmp(f.coeff(k), g.coeff(k));
    if (c != 0) return c < 0;
  }
  return false;
}

}  // namespace polycensus
