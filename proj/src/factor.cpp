// Factorization over Z: content, squarefree split, rational roots, a
// degree-pattern sieve, then Zassenhaus (Cantor-Zassenhaus mod p, Hensel
// lifting, subset recombination).
#include <algorithm>
#include <set>

#include "polycensus/classify.hpp"
#include "polycensus/error.hpp"
#include "polycensus/poly_algebra.hpp"
#include "polycensus/prime_field.hpp"

namespace polycensus {

namespace {

using ZPoly = std::vector<mpz_class>;  // ascending, modulo some P

void ztrim(ZPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

void zreduce(ZPoly& a, const mpz_class& P) {
  for (auto& c : a) mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), P.get_mpz_t());
  ztrim(a);
}

ZPoly zmul(const ZPoly& a, const ZPoly& b, const mpz_class& P) {
  if (a.empty() || b.empty()) return {};
  ZPoly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  zreduce(r, P);
  return r;
}

ZPoly zsub(const ZPoly& a, const ZPoly& b, const mpz_class& P) {
  ZPoly r(std::max(a.size(), b.size()), 0);
  for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  zreduce(r, P);
  return r;
}

// Division by a monic polynomial modulo P; returns the remainder.
ZPoly zdivmod_monic(const ZPoly& a, const ZPoly& b, const mpz_class& P, ZPoly* q) {
  ZPoly r = a;
  const size_t db = b.size() - 1;
  ZPoly quot(r.size() >= b.size() ? r.size() - db : 0, 0);
  while (r.size() >= b.size()) {
    size_t shift = r.size() - b.size();
    mpz_class c = r.back();
    quot[shift] = c;
    for (size_t i = 0; i <= db; ++i) r[shift + i] -= c * b[i];
    zreduce(r, P);
  }
  if (q) {
    zreduce(quot, P);
    *q = std::move(quot);
  }
  return r;
}

ZPoly from_mod(const fp::ModPoly& a) {
  ZPoly r;
  r.reserve(a.size());
  for (uint64_t c : a) r.emplace_back(static_cast<unsigned long>(c));
  return r;
}

fp::ModPoly to_mod(const ZPoly& a, uint64_t p) {
  fp::ModPoly r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = mpz_fdiv_ui(a[i].get_mpz_t(), p);
  fp::trim(r);
  return r;
}

// Lifts T = g h (mod p^j), g and h monic, to modulus p^k.
void hensel_lift_pair(const ZPoly& T, ZPoly& g, ZPoly& h, uint64_t p, int k) {
  const fp::Field F{p};
  fp::ModPoly s, t;
  fp::ext_gcd(F, to_mod(g, p), to_mod(h, p), s, t);  // s g + t h = 1 mod p
  const ZPoly zs = from_mod(s), zt = from_mod(t);
  const mpz_class pz = static_cast<unsigned long>(p);
  mpz_class pj = pz;
  for (int j = 1; j < k; ++j) {
    mpz_class next = pj * pz;
    ZPoly gh = zmul(g, h, next);
    ZPoly e = zsub(T, gh, next);
    for (auto& c : e) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), pj.get_mpz_t());
    zreduce(e, pz);
    // a = t e mod g, b = (e - a h) / g, all mod p
    ZPoly a = zdivmod_monic(zmul(zt, e, pz), g, pz, nullptr);
    ZPoly rest = zsub(e, zmul(a, h, pz), pz);
    ZPoly b;
    zdivmod_monic(rest, g, pz, &b);
    ZPoly ng = g, nh = h;
    for (size_t i = 0; i < a.size(); ++i) ng[i] += pj * a[i];
    for (size_t i = 0; i < b.size(); ++i) nh[i] += pj * b[i];
    zreduce(ng, next);
    zreduce(nh, next);
    g = std::move(ng);
    h = std::move(nh);
    pj = std::move(next);
  }
  (void)zs;
}

// Lifts the monic mod-p factors of the monic (mod p^k) target to p^k.
std::vector<ZPoly> hensel_lift(const ZPoly& target, std::vector<fp::ModPoly> factors, uint64_t p, int k) {
  std::vector<ZPoly> lifted;
  const fp::Field F{p};
  ZPoly T = target;
  for (size_t i = 0; i + 1 < factors.size(); ++i) {
    fp::ModPoly rest{1};
    for (size_t j = i + 1; j < factors.size(); ++j) rest = fp::mul(F, rest, factors[j]);
    ZPoly g = from_mod(factors[i]);
    ZPoly h = from_mod(rest);
    hensel_lift_pair(T, g, h, p, k);
    lifted.push_back(std::move(g));
    T = std::move(h);
  }
  lifted.push_back(std::move(T));
  return lifted;
}

IntPolynomial symmetric_lift(const ZPoly& a, const mpz_class& P) {
  mpz_class half = P / 2;
  std::vector<mpz_class> v = a;
  for (auto& c : v) {
    mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), P.get_mpz_t());
    if (c > half) c -= P;
  }
  return IntPolynomial::from_powers(std::move(v));
}

bool good_prime(const IntPolynomial& f, uint64_t p) {
  if (mpz_fdiv_ui(f.leading().get_mpz_t(), p) == 0) return false;
  const fp::Field F{p};
  return fp::is_squarefree(F, fp::reduce(f, p));
}

// Divisors of |n| (n != 0), bounded enumeration; empty when too large.
std::vector<mpz_class> small_divisors(const mpz_class& n) {
  std::vector<mpz_class> out;
  mpz_class a = abs(n);
  if (a > mpz_class("1000000000000")) return out;
  unsigned long long v = a.get_ui();
  for (unsigned long long d = 1; d * d <= v; ++d) {
    if (v % d == 0) {
      out.emplace_back(static_cast<unsigned long>(d));
      if (d * d != v) out.emplace_back(static_cast<unsigned long>(v / d));
    }
  }
  return out;
}

// Splits off linear factors q X - p found among the rational root candidates.
void extract_rational_roots(IntPolynomial& f, std::vector<IntPolynomial>& out) {
  if (f.degree() < 1) return;
  if (f.constant_term() == 0) {
    out.push_back(IntPolynomial::from_leading_first({1, 0}));
    f = divide_exact(f, out.back());
  }
  if (f.degree() < 1) return;
  std::vector<mpz_class> ps = small_divisors(f.constant_term());
  std::vector<mpz_class> qs = small_divisors(f.leading());
  if (ps.empty() || qs.empty()) return;
  for (const auto& q : qs) {
    for (const auto& p0 : ps) {
      for (int sign : {1, -1}) {
        if (f.degree() < 1) return;
        mpz_class p = p0 * sign;
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
        if (g != 1) continue;
        if (sign_at(f, mpq_class(p, q)) != 0) continue;
        std::vector<mpz_class> lin{-p, q};
        IntPolynomial L = IntPolynomial::from_powers(std::move(lin));
        out.push_back(L);
        f = divide_exact(f, L);
      }
    }
  }
}

// True when the mod-p degree patterns over several primes leave no room for
// a proper factor.
bool sieve_irreducible(const IntPolynomial& f) {
  const int n = f.degree();
  std::vector<bool> possible(static_cast<size_t>(n + 1), true);
  int used = 0;
  for (uint64_t p : fp::primes_up_to(400)) {
    if (!good_prime(f, p)) continue;
    const fp::Field F{p};
    std::vector<int> pattern = fp::factor_degree_pattern(F, fp::reduce(f, p));
    std::vector<bool> sums(static_cast<size_t>(n + 1), false);
    sums[0] = true;
    for (int d : pattern) {
      for (int s = n; s >= d; --s) {
        if (sums[static_cast<size_t>(s - d)]) sums[static_cast<size_t>(s)] = true;
      }
    }
    bool any = false;
    for (int s = 1; s < n; ++s) {
      possible[static_cast<size_t>(s)] = possible[static_cast<size_t>(s)] && sums[static_cast<size_t>(s)];
      any = any || possible[static_cast<size_t>(s)];
    }
    if (!any) return true;
    if (++used >= 7) break;
  }
  return false;
}

// Zassenhaus on a primitive squarefree f with f(0) != 0 and positive lead.
std::vector<IntPolynomial> zassenhaus(const IntPolynomial& f) {
  const int n = f.degree();
  // Prime with the fewest modular factors among a few candidates.
  uint64_t best_p = 0;
  std::vector<fp::ModPoly> best;
  int tried = 0;
  for (uint64_t p : fp::primes_up_to(2000)) {
    if (p == 2 || !good_prime(f, p)) continue;
    const fp::Field F{p};
    fp::ModPoly fm = fp::make_monic(F, fp::reduce(f, p));
    std::vector<fp::ModPoly> fac = fp::factor_squarefree(F, fm);
    if (best_p == 0 || fac.size() < best.size()) {
      best_p = p;
      best = std::move(fac);
    }
    if (best.size() == 1 || ++tried >= 5) break;
  }
  if (best_p == 0) throw std::logic_error("zassenhaus: no good prime below 2000");
  if (best.size() == 1) return {f};

  // Coefficient bound for lc * (any factor): |lc| 2^n ||f||_2.
  mpz_class norm_sq = 0;
  for (const auto& c : f.powers()) norm_sq += c * c;
  mpz_class norm;
  mpz_sqrt(norm.get_mpz_t(), norm_sq.get_mpz_t());
  norm += 1;
  const mpz_class lc = f.leading();
  mpz_class bound = 2 * abs(lc) * norm;
  mpz_mul_2exp(bound.get_mpz_t(), bound.get_mpz_t(), static_cast<unsigned long>(n));
  int k = 1;
  mpz_class P = static_cast<unsigned long>(best_p);
  while (P <= bound) {
    P *= static_cast<unsigned long>(best_p);
    ++k;
  }
  // Monic target lc^{-1} f modulo P.
  mpz_class lc_inv;
  mpz_invert(lc_inv.get_mpz_t(), lc.get_mpz_t(), P.get_mpz_t());
  ZPoly target = f.powers();
  for (auto& c : target) c *= lc_inv;
  zreduce(target, P);
  std::vector<ZPoly> lifted = hensel_lift(target, best, best_p, k);

  std::vector<IntPolynomial> found;
  IntPolynomial rest = f;
  std::vector<ZPoly> pool = lifted;
  for (size_t size = 1; 2 * size <= pool.size();) {
    bool progress = false;
    std::vector<size_t> idx(size);
    for (size_t i = 0; i < size; ++i) idx[i] = i;
    while (true) {
      ZPoly prod{mpz_class(rest.leading())};
      for (size_t i : idx) prod = zmul(prod, pool[i], P);
      IntPolynomial cand = primitive_part(symmetric_lift(prod, P));
      IntPolynomial q;
      if (cand.degree() >= 1 && try_divide_exact(rest, cand, q)) {
        found.push_back(cand);
        rest = q;
        std::vector<ZPoly> next;
        for (size_t i = 0; i < pool.size(); ++i) {
          if (std::find(idx.begin(), idx.end(), i) == idx.end()) next.push_back(pool[i]);
        }
        pool = std::move(next);
        progress = true;
        break;
      }
      // next combination
      int pos = static_cast<int>(size) - 1;
      while (pos >= 0 && idx[static_cast<size_t>(pos)] == pool.size() - size + static_cast<size_t>(pos)) --pos;
      if (pos < 0) break;
      ++idx[static_cast<size_t>(pos)];
      for (size_t i = static_cast<size_t>(pos) + 1; i < size; ++i) idx[i] = idx[i - 1] + 1;
    }
    if (!progress) ++size;
  }
  if (rest.degree() >= 1) found.push_back(primitive_part(rest));
  return found;
}

void factor_squarefree_primitive(IntPolynomial f, std::vector<IntPolynomial>& out) {
  extract_rational_roots(f, out);
  if (f.degree() < 1) return;
  f = primitive_part(f);
  if (f.degree() <= 3 || sieve_irreducible(f)) {
    out.push_back(f);
    return;
  }
  for (auto& g : zassenhaus(f)) out.push_back(primitive_part(g));
}

}  // namespace

IntPolynomial FactorizationResult::reconstruct() const {
  IntPolynomial r = IntPolynomial::constant(unit);
  for (const auto& fac : factors) {
    for (int k = 0; k < fac.multiplicity; ++k) r = r * fac.factor;
  }
  return r;
}

FactorizationResult factorize(const IntPolynomial& f, int degree_cap) {
  if (f.is_zero()) fail(ErrorCode::ZeroPolynomial, "cannot factor the zero polynomial");
  if (f.degree() > degree_cap) {
    fail(ErrorCode::DegreeCapExceeded,
         "degree " + std::to_string(f.degree()) + " exceeds the factorization cap " + std::to_string(degree_cap));
  }
  FactorizationResult res;
  SquarefreeDecomposition dec = squarefree_decomposition(f);
  res.unit = dec.unit;
  for (const auto& sf : dec.factors) {
    if (sf.factor.degree() < 1) continue;
    std::vector<IntPolynomial> parts;
    factor_squarefree_primitive(sf.factor, parts);
    for (auto& g : parts) {
      g = primitive_part(g);
      // Linear factors extracted as (q X - p) may carry a negative leading sign.
      res.factors.push_back({g, sf.multiplicity});
    }
  }
  // Fix the unit so the product reproduces f exactly.
  IntPolynomial prod = IntPolynomial::constant(1);
  for (const auto& fac : res.factors) {
    for (int k = 0; k < fac.multiplicity; ++k) prod = prod * fac.factor;
  }
  res.unit = f.leading() / prod.leading();
  std::sort(res.factors.begin(), res.factors.end(),
            [](const IrreducibleFactor& a, const IrreducibleFactor& b) { return a.factor < b.factor; });
  int nonconstant = 0;
  res.smallest_factor_degree = f.degree();
  for (const auto& fac : res.factors) {
    nonconstant += fac.multiplicity;
    res.smallest_factor_degree = std::min(res.smallest_factor_degree, fac.factor.degree());
  }
  res.irreducible = nonconstant == 1;
  return res;
}

std::optional<int> smallest_factor_degree(const IntPolynomial& f, int degree_cap) {
  FactorizationResult r = factorize(f, degree_cap);
  if (r.irreducible) return std::nullopt;
  return r.smallest_factor_degree;
}

}  // namespace polycensus
