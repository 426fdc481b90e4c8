#pragma once

// Independent reference computations for the unit tests. Nothing here calls
// into the library beyond IntPolynomial accessors.

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "polycensus/int_poly.hpp"

namespace oracle {

using cld = std::complex<long double>;

// Durand-Kerner in long double. Fine for the small, well-separated test inputs.
inline std::vector<cld> roots(const polycensus::IntPolynomial& f) {
  const int n = f.degree();
  std::vector<long double> a(n + 1);  // monic, leading first
  const long double lead = f.leading().get_d();
  for (int i = 0; i <= n; ++i) a[i] = f.a(i).get_d() / lead;
  auto eval = [&](cld z) {
    cld v = 1;
    for (int i = 1; i <= n; ++i) v = v * z + a[i];
    return v;
  };
  std::vector<cld> z(n);
  const cld seed(0.4L, 0.9L);
  for (int i = 0; i < n; ++i) z[i] = std::pow(seed, i) * (1.0L + i * 0.01L);
  for (int it = 0; it < 2000; ++it) {
    long double step = 0;
    for (int i = 0; i < n; ++i) {
      cld d = 1;
      for (int j = 0; j < n; ++j)
        if (j != i) d *= z[i] - z[j];
      cld dz = eval(z[i]) / d;
      z[i] -= dz;
      step = std::max(step, std::abs(dz));
    }
    if (step < 1e-17L) break;
  }
  return z;
}

// Power sums p_k = sum alpha^k from Newton's identities, exact.
inline std::vector<mpq_class> power_sums(const polycensus::IntPolynomial& f, int kmax) {
  const int n = f.degree();
  std::vector<mpq_class> e(n + 1);  // elementary symmetric functions
  for (int i = 0; i <= n; ++i) {
    e[i] = mpq_class(f.a(i), f.leading());
    e[i].canonicalize();
    if (i % 2) e[i] = -e[i];
  }
  std::vector<mpq_class> p(kmax + 1);
  p[0] = n;
  for (int k = 1; k <= kmax; ++k) {
    mpq_class s = 0;
    for (int i = 1; i < k && i <= n; ++i) s += (i % 2 ? 1 : -1) * e[i] * p[k - i];
    if (k <= n) s += (k % 2 ? 1 : -1) * mpq_class(k) * e[k];
    p[k] = s;
  }
  return p;
}

// Brute-force discriminant from roots: a0^(2n-2) prod_{i<j} (ai - aj)^2.
inline long double discriminant(const polycensus::IntPolynomial& f) {
  auto r = roots(f);
  cld prod = 1;
  for (size_t i = 0; i < r.size(); ++i)
    for (size_t j = i + 1; j < r.size(); ++j) prod *= (r[i] - r[j]) * (r[i] - r[j]);
  return (prod * std::pow(f.leading().get_d(), 2.0L * f.degree() - 2)).real();
}

// Every integer coefficient vector with |a_i| <= H, leading first, a_0 != 0.
template <class F>
void for_each_poly(int n, int H, bool monic, F&& fn) {
  std::vector<long> c(n + 1, -H);
  c[0] = monic ? 1 : -H;
  while (true) {
    if (c[0] != 0) {
      std::vector<mpz_class> z(c.begin(), c.end());
      fn(polycensus::IntPolynomial::from_leading_first(z));
    }
    int i = n;
    while (i >= 0) {
      if (i == 0 && monic) return;
      if (c[i] < H) {
        ++c[i];
        break;
      }
      c[i] = -H;
      --i;
    }
    if (i < 0) return;
  }
}

}  // namespace oracle
