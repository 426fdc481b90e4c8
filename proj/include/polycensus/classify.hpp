#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "polycensus/int_poly.hpp"
#include "polycensus/roots.hpp"

namespace polycensus {

enum class ProfileDecision { Exact, NumericCertified };

struct ModulusProfile {
  int k_max = 0;
  int k_min = 0;
  bool dominant = false;
  ProfileDecision decision = ProfileDecision::NumericCertified;
};

struct RootSignature {
  int r = 0;  // real roots, with multiplicity
  int s = 0;  // conjugate pairs, with multiplicity
};

struct IrreducibleFactor {
  IntPolynomial factor;  // primitive, positive leading coefficient
  int multiplicity = 1;
};

struct FactorizationResult {
  mpz_class unit = 1;  // signed content
  std::vector<IrreducibleFactor> factors;  // sorted by (degree, coefficients)
  int smallest_factor_degree = 0;
  bool irreducible = false;  // exactly one nonconstant factor, multiplicity 1

  IntPolynomial reconstruct() const;
};

enum class SnVerdict { CertifiedSn, Undecided };

struct SnWitness {
  uint64_t prime = 0;
  std::vector<int> pattern;  // sorted factor degrees mod prime
};

struct SnCertificate {
  SnVerdict verdict = SnVerdict::Undecided;
  std::vector<SnWitness> witnesses;
};

struct RelationResult {
  bool value = false;
  // "repeated-root", "zero-root", "pair-products-coincide", "numeric-distinct"
  // or "none".
  std::string reason;
};

inline constexpr int kDefaultDegreeCap = 8;

// Maximal/minimal-modulus root counts with multiplicity. Zero roots form the
// minimal class.
ModulusProfile modulus_profile(const IntPolynomial& f, const RootsConfig& cfg = {});

// Exact (Sturm on each squarefree factor).
RootSignature root_signature(const IntPolynomial& f);

// Complete factorization over Z of the primitive part; content in `unit`.
FactorizationResult factorize(const IntPolynomial& f, int degree_cap = kDefaultDegreeCap);

// Minimal irreducible factor degree of a reducible f; empty when irreducible.
std::optional<int> smallest_factor_degree(const IntPolynomial& f, int degree_cap = kDefaultDegreeCap);

// One-sided Galois certificate from Frobenius cycle types. Applies to the
// primitive part. Throws NotIrreducible for reducible input.
SnCertificate sn_certificate(const IntPolynomial& f, uint64_t prime_bound);

// Non-throwing variant for counting: reducible or non-squarefree input gives
// Undecided.
SnVerdict sn_verdict(const IntPolynomial& f, uint64_t prime_bound);

// TRUE iff prod_{i<j}(X - alpha_i alpha_j) has a repeated root.
bool has_multiplicative_relation(const IntPolynomial& f);
RelationResult multiplicative_relation(const IntPolynomial& f);

// (m >= 2, m) from the largest m with f(X) = g(X^m).
std::pair<bool, int> is_power_substitution_structured(const IntPolynomial& f);

// Closed form for degree 2: both roots share a modulus iff the discriminant
// is nonpositive or the middle coefficient vanishes.
bool quadratic_moduli_tied(long long a, long long b, long long c);

}  // namespace polycensus
