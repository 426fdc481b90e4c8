#include "doctest.h"

#include <algorithm>
#include <set>

#include "helpers.hpp"
#include "oracles.hpp"
#include "polycensus/classify.hpp"
#include "polycensus/poly_algebra.hpp"

using namespace polycensus;
using P = IntPolynomial;
using testing::code_of;

namespace {

// k_max, k_min from numeric moduli; nullopt when any two moduli are too close
// to call but not clearly equal.
std::optional<std::pair<int, int>> numeric_profile(const P& f) {
  auto r = oracle::roots(f);
  std::vector<long double> m;
  for (auto z : r) m.push_back(std::abs(z));
  std::sort(m.begin(), m.end());
  for (size_t i = 1; i < m.size(); ++i) {
    long double d = m[i] - m[i - 1];
    if (d > 1e-7L && d < 1e-3L) return std::nullopt;
  }
  int kmax = 0, kmin = 0;
  for (auto x : m) {
    kmax += x > m.back() - 1e-7L;
    kmin += x < m.front() + 1e-7L;
  }
  return std::make_pair(kmax, kmin);
}

}  // namespace

TEST_CASE("modulus profile examples") {
  auto p1 = modulus_profile(P::parse("1,-3,2"));
  CHECK(p1.k_max == 1);
  CHECK(p1.k_min == 1);
  CHECK(p1.dominant);
  auto p2 = modulus_profile(P::parse("1,0,0,0,1"));
  CHECK(p2.k_max == 4);
  CHECK(p2.k_min == 4);
  CHECK_FALSE(p2.dominant);
  auto p3 = modulus_profile(P::parse("1,1,0"));
  CHECK(p3.k_max == 1);
  CHECK(p3.k_min == 1);
  CHECK(p3.dominant);
  // moduli {2, 2, 2, 4/9}
  auto p4 = modulus_profile(P::parse("9,4,0,72,32"));
  CHECK(p4.k_max == 3);
  CHECK(p4.k_min == 1);
  CHECK(modulus_profile(P::parse("2,0,0,5")).k_max == 3);
}

TEST_CASE("monic quadratics of height one") {
  // Hand enumeration: X^2 + bX + c with b, c in {-1, 0, 1}. Dominant exactly
  // when the roots are real with distinct moduli.
  std::set<std::string> dominant{"1,1,0", "1,-1,0", "1,1,-1", "1,-1,-1"};
  int count = 0;
  oracle::for_each_poly(2, 1, true, [&](const P& f) {
    ++count;
    CHECK(modulus_profile(f).dominant == dominant.count(f.to_string()));
  });
  CHECK(count == 9);
}

TEST_CASE("profile agrees with numeric moduli") {
  for (int n = 2; n <= 4; ++n)
    oracle::for_each_poly(n, n == 4 ? 1 : 2, false, [](const P& f) {
      auto p = modulus_profile(f);
      CHECK(p.dominant == (p.k_max == 1));
      CHECK(p.k_max >= 1);
      CHECK(p.k_min >= 1);
      if (!testing::squarefree(f)) return;
      auto ref = numeric_profile(f);
      if (!ref) return;
      CHECK(p.k_max == ref->first);
      CHECK(p.k_min == ref->second);
    });
}

TEST_CASE("quadratic closed form agrees with the general profile") {
  for (long a = -3; a <= 3; ++a)
    for (long b = -3; b <= 3; ++b)
      for (long c = -3; c <= 3; ++c) {
        if (a == 0 || c == 0) continue;
        auto p = modulus_profile(P::from_leading_first({a, b, c}));
        CHECK(quadratic_moduli_tied(a, b, c) == (p.k_max == 2));
      }
}

TEST_CASE("root signature") {
  auto s1 = root_signature(P::parse("1,0,1"));
  CHECK(s1.r == 0);
  CHECK(s1.s == 1);
  auto s2 = root_signature(P::parse("1,0,-1,0"));
  CHECK(s2.r == 3);
  CHECK(s2.s == 0);
  auto s3 = root_signature(P::parse("1,0,2,0,1"));
  CHECK(s3.r == 0);
  CHECK(s3.s == 2);
  for (int n = 1; n <= 4; ++n)
    oracle::for_each_poly(n, 2, false, [n](const P& f) {
      auto s = root_signature(f);
      CHECK(s.r + 2 * s.s == n);
    });
}

TEST_CASE("factorization examples") {
  auto f1 = factorize(P::parse("1,-3,2"));
  REQUIRE(f1.factors.size() == 2);
  CHECK(f1.smallest_factor_degree == 1);
  CHECK_FALSE(f1.irreducible);
  auto f2 = factorize(P::parse("1,0,-1,-1"));
  CHECK(f2.irreducible);
  auto f3 = factorize(P::parse("1,0,5,0,4"));
  REQUIRE(f3.factors.size() == 2);
  CHECK(f3.factors[0].factor.to_string() == "1,0,1");
  CHECK(f3.factors[1].factor.to_string() == "1,0,4");
  CHECK(smallest_factor_degree(P::parse("1,-3,2")) == 1);
  CHECK(smallest_factor_degree(P::parse("1,0,5,0,4")) == 2);
  CHECK_FALSE(smallest_factor_degree(P::parse("1,0,-1,-1")).has_value());
  CHECK(factorize(P::parse("1,0,0,0,1")).irreducible);
  // Swinnerton-Dyer: irreducible but splits mod every prime
  CHECK(factorize(P::parse("1,0,-10,0,1")).irreducible);
  auto f4 = factorize(P::parse("-6,0,6"));
  CHECK(f4.unit == -6);
  CHECK(f4.reconstruct() == P::parse("-6,0,6"));
}

TEST_CASE("factorization reconstructs over a small box") {
  for (int n = 1; n <= 4; ++n)
    oracle::for_each_poly(n, n == 4 ? 2 : 3, false, [](const P& f) {
      auto r = factorize(f);
      CHECK(r.reconstruct() == f);
      for (auto& fac : r.factors) {
        CHECK(fac.factor.leading() > 0);
        CHECK(content(fac.factor) == 1);
        // an irreducible factor of degree >= 2 has no rational root
        if (fac.factor.degree() >= 2) {
          for (long p = -3; p <= 3; ++p)
            for (long q = 1; q <= 3; ++q)
              CHECK(eval_at(fac.factor, mpq_class(p, q)) != 0);
        }
      }
    });
}

TEST_CASE("Galois certificate") {
  auto c1 = sn_certificate(P::parse("1,0,-1,-1"), 10);
  CHECK(c1.verdict == SnVerdict::CertifiedSn);
  REQUIRE(c1.witnesses.size() == 2);
  CHECK(c1.witnesses[0].prime == 2);
  CHECK(c1.witnesses[0].pattern == std::vector<int>{3});
  CHECK(c1.witnesses[1].prime == 5);
  CHECK(c1.witnesses[1].pattern == std::vector<int>{1, 2});
  CHECK(sn_certificate(P::parse("1,0,1"), 10).verdict == SnVerdict::CertifiedSn);
  CHECK(sn_certificate(P::parse("1,0,0,0,1"), 10000).verdict == SnVerdict::Undecided);
  CHECK(sn_certificate(P::parse("1,1,1,1,1"), 1000).verdict == SnVerdict::Undecided);  // cyclic
  CHECK(code_of([] { sn_certificate(P::parse("1,-3,2"), 10); }) == ErrorCode::NotIrreducible);
  CHECK(sn_verdict(P::parse("1,-3,2"), 10) == SnVerdict::Undecided);
  CHECK(sn_verdict(P::parse("1,0,0,-1,-1"), 1000) == SnVerdict::CertifiedSn);
}

TEST_CASE("multiplicative relations") {
  CHECK(has_multiplicative_relation(P::parse("1,0,5,0,4")));
  CHECK(has_multiplicative_relation(P::parse("1,0,-3,0,1")));
  CHECK(has_multiplicative_relation(P::parse("2,0,7,0,-1")));
  CHECK_FALSE(has_multiplicative_relation(P::parse("1,0,0,-1,-1")));
  CHECK(multiplicative_relation(P::parse("1,0,0,-1,-1")).reason == "none");
}

TEST_CASE("relations agree with numeric pair products") {
  oracle::for_each_poly(4, 1, false, [](const P& f) {
    if (f.constant_term() == 0 || !testing::squarefree(f)) return;
    auto r = oracle::roots(f);
    std::vector<oracle::cld> prods;
    for (size_t i = 0; i < r.size(); ++i)
      for (size_t j = i + 1; j < r.size(); ++j) prods.push_back(r[i] * r[j]);
    long double closest = 1e300L;
    for (size_t i = 0; i < prods.size(); ++i)
      for (size_t j = i + 1; j < prods.size(); ++j) closest = std::min(closest, std::abs(prods[i] - prods[j]));
    if (closest > 1e-6L && closest < 1e-3L) return;
    CHECK(has_multiplicative_relation(f) == (closest <= 1e-6L));
  });
}

TEST_CASE("power substitution structure") {
  CHECK(is_power_substitution_structured(P::parse("1,0,0,3,0,0,2")) == std::make_pair(true, 3));
  CHECK(is_power_substitution_structured(P::parse("1,0,-1,-1")) == std::make_pair(false, 1));
  CHECK(is_power_substitution_structured(P::parse("2,0,0,5")) == std::make_pair(true, 3));
}
