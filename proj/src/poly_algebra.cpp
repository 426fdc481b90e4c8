#include "polycensus/poly_algebra.hpp"

#include <algorithm>
#include <numeric>

#include "polycensus/error.hpp"

namespace polycensus {

namespace {

std::vector<mpz_class> coeffs_of(const IntPolynomial& f) { return f.powers(); }

IntPolynomial shift_mul(const IntPolynomial& g, const mpz_class& c, int shift) {
  std::vector<mpz_class> v(static_cast<size_t>(g.degree() + 1 + shift));
  for (int i = 0; i <= g.degree(); ++i) v[static_cast<size_t>(i + shift)] = g.coeff(i) * c;
  return IntPolynomial::from_powers(std::move(v));
}

// Determinant of a square integer matrix by fraction-free Gaussian
// elimination (Bareiss) with row pivoting.
mpz_class bareiss_determinant(std::vector<std::vector<mpz_class>> m) {
  const size_t n = m.size();
  if (n == 0) return 1;
  int sign = 1;
  mpz_class prev = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      size_t p = k + 1;
      while (p < n && m[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(m[k], m[p]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i) {
      for (size_t j = k + 1; j < n; ++j) {
        mpz_class t = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        mpz_divexact(m[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = m[k][k];
  }
  mpz_class d = m[n - 1][n - 1];
  return sign > 0 ? d : mpz_class(-d);
}

}  // namespace

IntPolynomial derivative(const IntPolynomial& f) {
  if (f.degree() <= 0) return {};
  std::vector<mpz_class> v(static_cast<size_t>(f.degree()));
  for (int i = 1; i <= f.degree(); ++i) v[static_cast<size_t>(i - 1)] = f.coeff(i) * i;
  return IntPolynomial::from_powers(std::move(v));
}

mpz_class content(const IntPolynomial& f) {
  mpz_class g = 0;
  for (const auto& a : f.powers()) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), a.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

IntPolynomial primitive_part(const IntPolynomial& f) {
  if (f.is_zero()) return f;
  mpz_class c = content(f);
  if (f.leading() < 0) c = -c;
  if (c == 1) return f;
  std::vector<mpz_class> v = f.powers();
  for (auto& a : v) mpz_divexact(a.get_mpz_t(), a.get_mpz_t(), c.get_mpz_t());
  return IntPolynomial::from_powers(std::move(v));
}

IntPolynomial negate_variable(const IntPolynomial& f) {
  std::vector<mpz_class> v = f.powers();
  for (size_t i = 1; i < v.size(); i += 2) v[i] = -v[i];
  return IntPolynomial::from_powers(std::move(v));
}

IntPolynomial pseudo_remainder(const IntPolynomial& f, const IntPolynomial& g) {
  if (g.is_zero()) fail(ErrorCode::ZeroPolynomial, "pseudo-remainder by the zero polynomial");
  if (f.degree() < g.degree()) return f;
  const mpz_class& lg = g.leading();
  int missing = f.degree() - g.degree() + 1;
  IntPolynomial r = f;
  while (!r.is_zero() && r.degree() >= g.degree()) {
    mpz_class lr = r.leading();
    int shift = r.degree() - g.degree();
    r *= lg;
    r -= shift_mul(g, lr, shift);
    --missing;
  }
  if (missing > 0 && !r.is_zero()) {
    mpz_class s;
    mpz_pow_ui(s.get_mpz_t(), lg.get_mpz_t(), static_cast<unsigned long>(missing));
    r *= s;
  }
  return r;
}

bool try_divide_exact(const IntPolynomial& f, const IntPolynomial& g, IntPolynomial& quotient) {
  if (g.is_zero()) fail(ErrorCode::ZeroPolynomial, "division by the zero polynomial");
  if (f.is_zero()) {
    quotient = {};
    return true;
  }
  if (f.degree() < g.degree()) return false;
  std::vector<mpz_class> r = coeffs_of(f);
  std::vector<mpz_class> q(static_cast<size_t>(f.degree() - g.degree() + 1));
  const int dg = g.degree();
  const mpz_class& lg = g.leading();
  for (int k = f.degree(); k >= dg; --k) {
    mpz_class& top = r[static_cast<size_t>(k)];
    if (top == 0) continue;
    if (!mpz_divisible_p(top.get_mpz_t(), lg.get_mpz_t())) return false;
    mpz_class t;
    mpz_divexact(t.get_mpz_t(), top.get_mpz_t(), lg.get_mpz_t());
    q[static_cast<size_t>(k - dg)] = t;
    for (int i = 0; i <= dg; ++i) {
      mpz_submul(r[static_cast<size_t>(k - dg + i)].get_mpz_t(), t.get_mpz_t(), g.coeff(i).get_mpz_t());
    }
  }
  for (int i = 0; i < dg; ++i) {
    if (r[static_cast<size_t>(i)] != 0) return false;
  }
  quotient = IntPolynomial::from_powers(std::move(q));
  return true;
}

IntPolynomial divide_exact(const IntPolynomial& f, const IntPolynomial& g) {
  IntPolynomial q;
  if (!try_divide_exact(f, g, q)) {
    throw std::logic_error("divide_exact: " + g.to_string() + " does not divide " + f.to_string());
  }
  return q;
}

mpq_class eval_at(const IntPolynomial& f, const mpq_class& x) {
  mpq_class s = 0;
  for (int k = f.degree(); k >= 0; --k) {
    s *= x;
    s += f.coeff(k);
  }
  return s;
}

int sign_at(const IntPolynomial& f, const mpq_class& x) {
  if (f.is_zero()) return 0;
  const mpz_class& p = x.get_num();
  const mpz_class& q = x.get_den();
  mpz_class s = f.leading();
  mpz_class qpow = 1;
  for (int k = f.degree() - 1; k >= 0; --k) {
    qpow *= q;
    s *= p;
    mpz_addmul(s.get_mpz_t(), f.coeff(k).get_mpz_t(), qpow.get_mpz_t());
  }
  return sgn(s);
}

IntPolynomial subresultant_gcd(const IntPolynomial& f, const IntPolynomial& g) {
  if (f.is_zero() && g.is_zero()) fail(ErrorCode::ZeroPolynomial, "gcd of two zero polynomials");
  if (g.is_zero()) return primitive_part(f);
  if (f.is_zero()) return primitive_part(g);
  IntPolynomial a = primitive_part(f);
  IntPolynomial b = primitive_part(g);
  if (a.degree() < b.degree()) std::swap(a, b);
  while (!b.is_zero()) {
    if (b.degree() == 0) return IntPolynomial::constant(1);
    IntPolynomial r = pseudo_remainder(a, b);
    a = std::move(b);
    b = primitive_part(r);
  }
  if (a.degree() == 0) return IntPolynomial::constant(1);
  return primitive_part(a);
}

IntPolynomial SquarefreeDecomposition::reconstruct() const {
  IntPolynomial r = IntPolynomial::constant(unit);
  for (const auto& sf : factors) {
    for (int i = 0; i < sf.multiplicity; ++i) r = r * sf.factor;
  }
  return r;
}

SquarefreeDecomposition squarefree_decomposition(const IntPolynomial& f) {
  if (f.is_zero()) fail(ErrorCode::ZeroPolynomial, "squarefree decomposition of the zero polynomial");
  SquarefreeDecomposition out;
  IntPolynomial a = primitive_part(f);
  if (a.degree() >= 1) {
    IntPolynomial b = derivative(a);
    IntPolynomial c = subresultant_gcd(a, b);
    IntPolynomial w = divide_exact(a, c);
    IntPolynomial y = divide_exact(b, c);
    int i = 1;
    while (w.degree() >= 1) {
      IntPolynomial z = y - derivative(w);
      IntPolynomial g = subresultant_gcd(w, z);
      if (g.degree() >= 1) out.factors.push_back({g, i});
      w = divide_exact(w, g);
      y = divide_exact(z, g);
      ++i;
    }
  }
  IntPolynomial prod = IntPolynomial::constant(1);
  for (const auto& sf : out.factors) {
    for (int k = 0; k < sf.multiplicity; ++k) prod = prod * sf.factor;
  }
  IntPolynomial u = divide_exact(f, prod);
  out.unit = u.leading();
  return out;
}

IntPolynomial squarefree_part(const IntPolynomial& f) {
  SquarefreeDecomposition d = squarefree_decomposition(f);
  IntPolynomial r = IntPolynomial::constant(1);
  for (const auto& sf : d.factors) r = r * sf.factor;
  return r;
}

mpz_class resultant(const IntPolynomial& f, const IntPolynomial& g) {
  if (f.is_zero() || g.is_zero()) return 0;
  const int m = f.degree();
  const int n = g.degree();
  if (m == 0 && n == 0) return 1;
  if (m == 0) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), f.leading().get_mpz_t(), static_cast<unsigned long>(n));
    return r;
  }
  if (n == 0) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), g.leading().get_mpz_t(), static_cast<unsigned long>(m));
    return r;
  }
  const size_t size = static_cast<size_t>(m + n);
  std::vector<std::vector<mpz_class>> s(size, std::vector<mpz_class>(size));
  for (int row = 0; row < n; ++row) {
    for (int k = 0; k <= m; ++k) s[static_cast<size_t>(row)][static_cast<size_t>(row + k)] = f.coeff(m - k);
  }
  for (int row = 0; row < m; ++row) {
    for (int k = 0; k <= n; ++k) s[static_cast<size_t>(n + row)][static_cast<size_t>(row + k)] = g.coeff(n - k);
  }
  return bareiss_determinant(std::move(s));
}

mpz_class discriminant(const IntPolynomial& f) {
  if (f.degree() < 1) fail(ErrorCode::DegreeTooSmall, "discriminant needs degree >= 1");
  const long n = f.degree();
  mpz_class r = resultant(f, derivative(f));
  mpz_class d;
  mpz_divexact(d.get_mpz_t(), r.get_mpz_t(), f.leading().get_mpz_t());
  if (((n * (n - 1)) / 2) % 2 != 0) d = -d;
  return d;
}

IntPolynomial graeffe_transform(const IntPolynomial& f) {
  if (f.degree() < 1) fail(ErrorCode::DegreeTooSmall, "Graeffe transform needs degree >= 1");
  IntPolynomial h = f * negate_variable(f);
  std::vector<mpz_class> v(static_cast<size_t>(f.degree() + 1));
  const bool flip = f.degree() % 2 != 0;
  for (int k = 0; k <= f.degree(); ++k) {
    v[static_cast<size_t>(k)] = flip ? mpz_class(-h.coeff(2 * k)) : h.coeff(2 * k);
  }
  return IntPolynomial::from_powers(std::move(v));
}

IntPolynomial reciprocal(const IntPolynomial& f) {
  if (f.is_zero()) fail(ErrorCode::ZeroPolynomial, "reciprocal of the zero polynomial");
  if (f.constant_term() == 0) fail(ErrorCode::ZeroConstantTerm, "reciprocal needs a nonzero constant term");
  std::vector<mpz_class> v(f.powers().rbegin(), f.powers().rend());
  return IntPolynomial::from_powers(std::move(v));
}

PowerSubstitution power_substitution(const IntPolynomial& f) {
  int m = 0;
  for (int k = 0; k <= f.degree(); ++k) {
    if (f.coeff(k) != 0) m = std::gcd(m, k);
  }
  if (m <= 1) return {1, f};
  std::vector<mpz_class> v(static_cast<size_t>(f.degree() / m + 1));
  for (int k = 0; k <= f.degree(); k += m) v[static_cast<size_t>(k / m)] = f.coeff(k);
  return {m, IntPolynomial::from_powers(std::move(v))};
}

IntPolynomial interpolate_integer(const std::vector<mpz_class>& xs, const std::vector<mpz_class>& ys) {
  const size_t n = xs.size();
  // Newton divided differences.
  std::vector<mpq_class> dd(ys.begin(), ys.end());
  for (size_t j = 1; j < n; ++j) {
    for (size_t i = n - 1; i >= j; --i) {
      dd[i] = (dd[i] - dd[i - 1]) / mpq_class(xs[i] - xs[i - j]);
      if (i == j) break;
    }
  }
  // Expand the Newton form into the monomial basis.
  std::vector<mpq_class> poly(1, dd[n - 1]);
  for (size_t k = n - 1; k-- > 0;) {
    std::vector<mpq_class> next(poly.size() + 1);
    for (size_t i = 0; i < poly.size(); ++i) {
      next[i + 1] += poly[i];
      next[i] -= poly[i] * xs[k];
    }
    next[0] += dd[k];
    poly = std::move(next);
  }
  std::vector<mpz_class> out(poly.size());
  for (size_t i = 0; i < poly.size(); ++i) {
    poly[i].canonicalize();
    if (poly[i].get_den() != 1) throw std::logic_error("interpolate_integer: non-integral coefficient");
    out[i] = poly[i].get_num();
  }
  return IntPolynomial::from_powers(std::move(out));
}

IntPolynomial ordered_pair_product_poly(const IntPolynomial& f) {
  if (f.degree() < 1) fail(ErrorCode::DegreeTooSmall, "pair products need degree >= 1");
  if (f.constant_term() == 0) fail(ErrorCode::ZeroConstantTerm, "pair products need f(0) != 0");
  const int n = f.degree();
  const int points = n * n + 1;
  std::vector<mpz_class> xs, ys;
  xs.reserve(static_cast<size_t>(points));
  ys.reserve(static_cast<size_t>(points));
  for (int t = 0; t < points; ++t) {
    mpz_class x = t;
    // y^n f(x/y) = sum_i c_i x^i y^{n-i}
    std::vector<mpz_class> g(static_cast<size_t>(n + 1));
    mpz_class xp = 1;
    for (int i = 0; i <= n; ++i) {
      g[static_cast<size_t>(n - i)] = f.coeff(i) * xp;
      xp *= x;
    }
    IntPolynomial gy = IntPolynomial::from_powers(std::move(g));
    xs.push_back(x);
    ys.push_back(resultant(f, gy));
  }
  return interpolate_integer(xs, ys);
}

bool try_exact_sqrt(const IntPolynomial& s, IntPolynomial& root) {
  if (s.is_zero()) {
    root = {};
    return true;
  }
  if (s.degree() % 2 != 0) return false;
  mpz_class lead = s.leading();
  if (lead < 0 || !mpz_perfect_square_p(lead.get_mpz_t())) return false;
  const int m = s.degree() / 2;
  std::vector<mpz_class> t(static_cast<size_t>(m + 1));
  mpz_sqrt(t[static_cast<size_t>(m)].get_mpz_t(), lead.get_mpz_t());
  const mpz_class two_lead = 2 * t[static_cast<size_t>(m)];
  for (int k = 1; k <= m; ++k) {
    // coefficient of X^{2m-k}: sum_{i+j=2m-k} t_i t_j, unknown t_{m-k}.
    mpz_class acc = s.coeff(2 * m - k);
    for (int i = m - k + 1; i <= m; ++i) {
      int j = 2 * m - k - i;
      if (j <= m - k || j > m) continue;
      acc -= t[static_cast<size_t>(i)] * t[static_cast<size_t>(j)];
    }
    if (!mpz_divisible_p(acc.get_mpz_t(), two_lead.get_mpz_t())) return false;
    mpz_divexact(t[static_cast<size_t>(m - k)].get_mpz_t(), acc.get_mpz_t(), two_lead.get_mpz_t());
  }
  IntPolynomial r = IntPolynomial::from_powers(std::move(t));
  if (!(r * r == s)) return false;
  root = std::move(r);
  return true;
}

IntPolynomial root_product_poly(const IntPolynomial& f) {
  if (f.is_zero()) fail(ErrorCode::ZeroPolynomial, "root products of the zero polynomial");
  const int n = f.degree();
  if (n < 2) fail(ErrorCode::DegreeTooSmall, "root products need degree >= 2");
  const int v = f.zero_root_multiplicity();
  const int d = n - v;
  // Products with a zero root vanish: they contribute X^{v d + v(v-1)/2}.
  const int zero_pairs = v * d + v * (v - 1) / 2;
  IntPolynomial nonzero_part = IntPolynomial::constant(1);
  if (d >= 2) {
    std::vector<mpz_class> tail(f.powers().begin() + v, f.powers().end());
    IntPolynomial g = IntPolynomial::from_powers(std::move(tail));
    IntPolynomial full = ordered_pair_product_poly(g);
    IntPolynomial squares = graeffe_transform(g);
    IntPolynomial sq = divide_exact(full, squares);
    IntPolynomial t;
    if (!try_exact_sqrt(sq, t)) throw std::logic_error("root_product_poly: quotient is not a square");
    // t = |a_0|^{d-1} R (positive leading); strip the powers of a_0 that are not needed.
    mpz_class a0 = abs(g.leading());
    if (a0 > 1) {
      for (int k = 0; k < d - 1; ++k) {
        bool divisible = true;
        for (const auto& c : t.powers()) {
          if (!mpz_divisible_p(c.get_mpz_t(), a0.get_mpz_t())) {
            divisible = false;
            break;
          }
        }
        if (!divisible) break;
        std::vector<mpz_class> w = t.powers();
        for (auto& c : w) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), a0.get_mpz_t());
        t = IntPolynomial::from_powers(std::move(w));
      }
    }
    nonzero_part = std::move(t);
  }
  if (zero_pairs == 0) return nonzero_part;
  return nonzero_part * IntPolynomial::monomial(1, zero_pairs);
}

}  // namespace polycensus
