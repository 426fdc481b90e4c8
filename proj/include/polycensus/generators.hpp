#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "polycensus/big_float.hpp"
#include "polycensus/int_poly.hpp"

namespace polycensus {

// Rouche data for a polynomial with roots alpha_j of multiplicity e_j: any
// coefficientwise perturbation strictly below eps keeps exactly e_j roots in
// each open disk |z - alpha_j| < gamma. gamma and delta are rounded down,
// M up, eps down.
struct PerturbationBounds {
  BigFloat gamma;
  BigFloat M;
  BigFloat delta;
  BigFloat eps;

  double eps_down() const { return eps.to_double(Round::Down); }
};

// A conjugation-closed multiset of distinct complex points.
struct TargetSpec {
  std::vector<std::complex<double>> points;

  // "re,im;re,im;..." (a bare "re" means a real point).
  static TargetSpec parse(const std::string& text);
  // Throws BadParameters (not conjugation-closed, empty) or
  // TargetNotSeparated (repeated point).
  void validate() const;
  int degree() const { return static_cast<int>(points.size()); }
  // Exact coefficients of prod (X - beta_i), leading first.
  std::vector<mpq_class> monic_coefficients() const;
};

// gamma unset: a quarter of the minimal root gap (0.5 for a single root).
PerturbationBounds perturbation_bounds(const IntPolynomial& h, std::optional<double> gamma = std::nullopt);
PerturbationBounds perturbation_bounds(const TargetSpec& target, std::optional<double> gamma = std::nullopt);

// Lazy polynomial source; returns nullopt when exhausted.
using PolyStream = std::function<std::optional<IntPolynomial>()>;

PolyStream stream_of(std::vector<IntPolynomial> members);

struct NearTargetOptions {
  bool monic = false;
  bool enumerate = false;  // lexicographic enumeration instead of sampling
  uint64_t count = 1000;   // members to emit (enumeration: 0 means all)
  uint64_t seed = 1;
  std::optional<double> gamma;
  uint64_t sn_prime_bound = 0;  // > 0: keep only certified S_n members
};

struct NearTargetFamily {
  PerturbationBounds bounds;
  mpq_class scale;  // H for the plain family, the root scale c for monic
  std::vector<std::pair<mpz_class, mpz_class>> ranges;  // inclusive, leading first
  mpz_class box_points;
  mpz_class height_bound;  // every member has height <= this
  std::vector<IntPolynomial> members;
  uint64_t discarded_undecided = 0;
};

// Integer points of prod_i (H(b_i - eps), H(b_i + eps)) where h = sum b_i X^{n-i}
// has the target as roots. The monic variant fixes a_0 = 1 and uses
// a_i in (c^i (b_i - eps), c^i (b_i + eps)) for the largest rational c keeping
// the height at most H; its roots lie near c * beta_i.
// Throws HTooSmall, TargetNotSeparated, BudgetExceeded.
NearTargetFamily near_target_family(const TargetSpec& target, int H, const NearTargetOptions& opt = {});

// Monic X^n + a_1 X^{n-1} + ... + a_n with -delta sqrt(H) <= a_1 < 0,
// 1 <= a_i <= H, a_2 >= delta^2 H and the chain a_2 >= a_3, a_4 >= a_5, ...
// no_real_roots adds min a_{2i} >= max a_{2i+1} (even n >= 4).
struct Theorem31Region {
  int n = 2;
  int H = 1;
  mpq_class delta;
  bool no_real_roots = false;
};
// Throws EmptyRegion, BadParameters.
PolyStream theorem31_family(const Theorem31Region& region);
mpz_class theorem31_count(const Theorem31Region& region);

enum class Showcase { A3Star3, X3Plus8 };
Showcase parse_showcase(const std::string& name);

struct ShowcaseParams {
  mpq_class delta1{1, 36}, delta2{1, 18}, lambda1{1, 12}, lambda2{1, 9};
};

// A3Star3 (n = 3): a_0 X^3 + a_3 with a_0, a_3 nonzero in [-H, H].
// X3Plus8 (n >= 4): (X^3 + 8)(a_0 X^{n-3} + ... + a_{n-3}) with
// lambda1 H < a_0 < lambda2 H and delta1 H < a_i < delta2 H.
// Throws BadParameters, EmptyRegion.
PolyStream showcase_family(Showcase which, int n, int H, const ShowcaseParams& params = {});

// Predicates: kmax=K, kmin=K, dominant, nondominant, b=M1,M2, rs=R,S, sn,
// sn=BOUND, height<=H; joined with '&'. Bare sn uses prime bound 1000.
struct FamilyPredicate {
  struct Term {
    std::string key;
    std::vector<long> args;
  };
  std::string text;
  std::vector<Term> terms;
  static FamilyPredicate parse(const std::string& text);  // throws ParseError
  bool holds(const IntPolynomial& f) const;
};

struct ValidationReport {
  std::string predicate;
  uint64_t examined = 0;
  uint64_t passed = 0;
  double pass_fraction = 0.0;
  std::optional<IntPolynomial> counterexample;
};

// Throws EmptyStream when the stream yields nothing.
ValidationReport validate_family(const PolyStream& stream, const FamilyPredicate& predicate, uint64_t sample);

}  // namespace polycensus
