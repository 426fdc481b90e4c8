#include "polycensus/prime_field.hpp"

#include <algorithm>
#include <stdexcept>

namespace polycensus::fp {

uint64_t Field::pow(uint64_t a, uint64_t e) const {
  uint64_t r = 1 % p;
  a %= p;
  while (e > 0) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

int degree(const ModPoly& f) { return static_cast<int>(f.size()) - 1; }

void trim(ModPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

ModPoly reduce(const IntPolynomial& f, uint64_t p) {
  ModPoly r(f.powers().size());
  for (size_t i = 0; i < r.size(); ++i) r[i] = mpz_fdiv_ui(f.powers()[i].get_mpz_t(), p);
  trim(r);
  return r;
}

ModPoly mul(const Field& F, const ModPoly& a, const ModPoly& b) {
  if (a.empty() || b.empty()) return {};
  ModPoly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
  }
  trim(r);
  return r;
}

ModPoly sub(const Field& F, const ModPoly& a, const ModPoly& b) {
  ModPoly r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < r.size(); ++i) {
    uint64_t x = i < a.size() ? a[i] : 0;
    uint64_t y = i < b.size() ? b[i] : 0;
    r[i] = F.sub(x, y);
  }
  trim(r);
  return r;
}

ModPoly divmod(const Field& F, const ModPoly& a, const ModPoly& b, ModPoly* quotient) {
  if (b.empty()) throw std::domain_error("fp::divmod by zero polynomial");
  ModPoly r = a;
  const int db = degree(b);
  const uint64_t inv_lead = F.inv(b.back());
  ModPoly q;
  if (degree(r) >= db) q.assign(static_cast<size_t>(degree(r) - db + 1), 0);
  while (!r.empty() && degree(r) >= db) {
    const int shift = degree(r) - db;
    const uint64_t c = F.mul(r.back(), inv_lead);
    q[static_cast<size_t>(shift)] = c;
    for (int i = 0; i <= db; ++i) {
      uint64_t& t = r[static_cast<size_t>(shift + i)];
      t = F.sub(t, F.mul(c, b[static_cast<size_t>(i)]));
    }
    trim(r);
  }
  if (quotient) {
    trim(q);
    *quotient = std::move(q);
  }
  return r;
}

ModPoly make_monic(const Field& F, const ModPoly& a) {
  if (a.empty()) return a;
  const uint64_t inv = F.inv(a.back());
  ModPoly r = a;
  for (auto& c : r) c = F.mul(c, inv);
  return r;
}

ModPoly gcd(const Field& F, ModPoly a, ModPoly b) {
  while (!b.empty()) {
    ModPoly r = divmod(F, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return make_monic(F, a);
}

ModPoly ext_gcd(const Field& F, const ModPoly& a, const ModPoly& b, ModPoly& s, ModPoly& t) {
  ModPoly r0 = a, r1 = b;
  ModPoly s0{1}, s1{}, t0{}, t1{1};
  while (!r1.empty()) {
    ModPoly q;
    ModPoly r2 = divmod(F, r0, r1, &q);
    ModPoly s2 = sub(F, s0, mul(F, q, s1));
    ModPoly t2 = sub(F, t0, mul(F, q, t1));
    r0 = std::move(r1);
    r1 = std::move(r2);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  const uint64_t inv = F.inv(r0.back());
  for (auto& c : s0) c = F.mul(c, inv);
  for (auto& c : t0) c = F.mul(c, inv);
  s = std::move(s0);
  t = std::move(t0);
  return make_monic(F, r0);
}

ModPoly derivative(const Field& F, const ModPoly& a) {
  if (a.size() <= 1) return {};
  ModPoly r(a.size() - 1);
  for (size_t i = 1; i < a.size(); ++i) r[i - 1] = F.mul(a[i], i % F.p);
  trim(r);
  return r;
}

ModPoly powmod(const Field& F, const ModPoly& base, uint64_t e, const ModPoly& mod) {
  ModPoly result{1};
  result = divmod(F, result, mod);
  ModPoly b = divmod(F, base, mod);
  while (e > 0) {
    if (e & 1) result = divmod(F, mul(F, result, b), mod);
    b = divmod(F, mul(F, b, b), mod);
    e >>= 1;
  }
  return result;
}

bool is_squarefree(const Field& F, const ModPoly& f) {
  ModPoly d = derivative(F, f);
  if (d.empty()) return degree(f) <= 0;
  return degree(gcd(F, f, d)) == 0;
}

std::vector<std::pair<int, ModPoly>> distinct_degree_factorization(const Field& F, const ModPoly& f) {
  std::vector<std::pair<int, ModPoly>> out;
  ModPoly rest = make_monic(F, f);
  const ModPoly x{0, 1};
  ModPoly h = divmod(F, x, rest);
  int d = 0;
  while (degree(rest) >= 2 * (d + 1)) {
    ++d;
    h = powmod(F, h, F.p, rest);
    ModPoly g = gcd(F, rest, sub(F, h, x));
    if (degree(g) >= 1) {
      out.emplace_back(d, g);
      ModPoly q;
      divmod(F, rest, g, &q);
      rest = std::move(q);
      h = divmod(F, h, rest);
    }
  }
  if (degree(rest) >= 1) out.emplace_back(degree(rest), rest);
  return out;
}

std::vector<int> factor_degree_pattern(const Field& F, const ModPoly& f) {
  std::vector<int> pattern;
  for (const auto& [d, g] : distinct_degree_factorization(F, f)) {
    for (int k = 0; k < degree(g) / d; ++k) pattern.push_back(d);
  }
  std::sort(pattern.begin(), pattern.end());
  return pattern;
}

namespace {

void equal_degree_split(const Field& F, const ModPoly& g, int d, std::mt19937_64& rng, std::vector<ModPoly>& out) {
  if (degree(g) == d) {
    out.push_back(g);
    return;
  }
  std::uniform_int_distribution<uint64_t> coef(0, F.p - 1);
  // (p^d - 1) / 2 as a sequence of exponentiations: a^{(p^d-1)/2} = prod of
  // a^{p^i (p-1)/2}. Compute via repeated p-th powers.
  for (;;) {
    ModPoly a(static_cast<size_t>(degree(g)));
    for (auto& c : a) c = coef(rng);
    trim(a);
    if (degree(a) < 1) continue;
    // b = a^{(p^d - 1)/2} mod g
    ModPoly power = a;  // a^{p^i}
    ModPoly acc{1};      // a^{1 + p + ... + p^{d-1}}
    for (int i = 0; i < d; ++i) {
      acc = divmod(F, mul(F, acc, power), g);
      power = powmod(F, power, F.p, g);
    }
    ModPoly b = powmod(F, acc, (F.p - 1) / 2, g);
    ModPoly bm1 = sub(F, b, ModPoly{1});
    ModPoly h = gcd(F, g, bm1);
    if (degree(h) >= 1 && degree(h) < degree(g)) {
      ModPoly q;
      divmod(F, g, h, &q);
      equal_degree_split(F, h, d, rng, out);
      equal_degree_split(F, make_monic(F, q), d, rng, out);
      return;
    }
  }
}

}  // namespace

std::vector<ModPoly> factor_squarefree(const Field& F, const ModPoly& f, uint64_t seed) {
  if (F.p == 2) throw std::domain_error("fp::factor_squarefree needs an odd prime");
  std::mt19937_64 rng(seed ^ F.p);
  std::vector<ModPoly> out;
  for (const auto& [d, g] : distinct_degree_factorization(F, f)) equal_degree_split(F, g, d, rng, out);
  std::sort(out.begin(), out.end(), [](const ModPoly& a, const ModPoly& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
  });
  return out;
}

std::vector<uint64_t> primes_up_to(uint64_t bound) {
  std::vector<uint64_t> primes;
  if (bound < 2) return primes;
  std::vector<bool> composite(bound + 1, false);
  for (uint64_t i = 2; i <= bound; ++i) {
    if (composite[i]) continue;
    primes.push_back(i);
    for (uint64_t j = i * i; j <= bound; j += i) composite[j] = true;
  }
  return primes;
}

}  // namespace polycensus::fp
