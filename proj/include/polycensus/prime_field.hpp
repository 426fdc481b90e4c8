#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "polycensus/int_poly.hpp"

// Univariate polynomial arithmetic over prime fields F_p, p < 2^31. Internal
// utility for factorization and Frobenius cycle patterns.
namespace polycensus::fp {

// Ascending coefficients in [0, p); trimmed (no trailing zeros).
using ModPoly = std::vector<uint64_t>;

struct Field {
  uint64_t p;

  uint64_t add(uint64_t a, uint64_t b) const { uint64_t s = a + b; return s >= p ? s - p : s; }
  uint64_t sub(uint64_t a, uint64_t b) const { return a >= b ? a - b : a + p - b; }
  uint64_t mul(uint64_t a, uint64_t b) const { return (a * b) % p; }
  uint64_t neg(uint64_t a) const { return a == 0 ? 0 : p - a; }
  uint64_t pow(uint64_t a, uint64_t e) const;
  uint64_t inv(uint64_t a) const { return pow(a, p - 2); }
};

int degree(const ModPoly& f);
void trim(ModPoly& f);

ModPoly reduce(const IntPolynomial& f, uint64_t p);
ModPoly mul(const Field& F, const ModPoly& a, const ModPoly& b);
ModPoly sub(const Field& F, const ModPoly& a, const ModPoly& b);
// Returns the remainder; stores the quotient when requested.
ModPoly divmod(const Field& F, const ModPoly& a, const ModPoly& b, ModPoly* quotient = nullptr);
ModPoly make_monic(const Field& F, const ModPoly& a);
ModPoly gcd(const Field& F, ModPoly a, ModPoly b);  // monic
ModPoly derivative(const Field& F, const ModPoly& a);
ModPoly powmod(const Field& F, const ModPoly& base, uint64_t e, const ModPoly& mod);
// Extended gcd: s a + t b = g (monic).
ModPoly ext_gcd(const Field& F, const ModPoly& a, const ModPoly& b, ModPoly& s, ModPoly& t);

bool is_squarefree(const Field& F, const ModPoly& f);

// Distinct-degree factorization of a monic squarefree f: pairs (d, product of
// all irreducible factors of degree d).
std::vector<std::pair<int, ModPoly>> distinct_degree_factorization(const Field& F, const ModPoly& f);

// Sorted multiset of irreducible factor degrees of a squarefree f (p odd or 2).
std::vector<int> factor_degree_pattern(const Field& F, const ModPoly& f);

// Complete factorization of a monic squarefree f into monic irreducibles
// (Cantor-Zassenhaus; p must be odd). Deterministic for a given seed.
std::vector<ModPoly> factor_squarefree(const Field& F, const ModPoly& f, uint64_t seed = 0x5eed);

// Primes in increasing order up to `bound` (sieve).
std::vector<uint64_t> primes_up_to(uint64_t bound);

}  // namespace polycensus::fp
