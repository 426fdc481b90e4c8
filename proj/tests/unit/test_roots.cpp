#include "doctest.h"

#include <algorithm>

#include "helpers.hpp"
#include "oracles.hpp"
#include "polycensus/poly_algebra.hpp"
#include "polycensus/roots.hpp"

using namespace polycensus;
using P = IntPolynomial;
using testing::code_of;

namespace {

long double dist(const RootDisk& d, oracle::cld z) {
  return std::abs(oracle::cld(d.center_re.to_double(), d.center_im.to_double()) - z);
}

// Every numeric root lies in exactly one disk and the multiplicities add up.
void check_against_oracle(const P& f) {
  auto set = isolate_roots(f);
  CHECK(set.status == RootSetStatus::Certified);
  int total = 0;
  for (auto& d : set.disks) total += d.multiplicity;
  CHECK(total == f.degree());
  auto sq = primitive_part(squarefree_part(f));
  for (auto z : oracle::roots(sq)) {
    int hits = 0;
    for (auto& d : set.disks)
      if (dist(d, z) <= d.radius.to_double() + 1e-9) ++hits;
    CHECK(hits == 1);
  }
}

}  // namespace

TEST_CASE("Fujiwara bound encloses every root") {
  CHECK(fujiwara_bound(P::parse("1,0,-2")) == doctest::Approx(2.0));
  CHECK(fujiwara_bound(P::parse("2,0,-8")) == doctest::Approx(2.0 * std::sqrt(2.0)));
  CHECK(fujiwara_bound(P::parse("1,0,0,0,0,0")) == 0.0);
  for (auto s : {"1,-10,1", "3,0,0,0,-7", "1,1,1,1,1,1", "1,-55,1320,-18150,157773"}) {
    P f = P::parse(s);
    double B = fujiwara_bound(f);
    for (auto z : oracle::roots(f)) CHECK(std::abs(z) <= B);
  }
}

TEST_CASE("isolation of textbook examples") {
  auto s1 = isolate_roots(P::parse("1,0,-2"));
  REQUIRE(s1.disks.size() == 2);
  for (auto& d : s1.disks) {
    CHECK(d.is_real);
    CHECK(std::abs(std::abs(d.center_re.to_double()) - std::sqrt(2.0)) < 1e-20 + d.radius.to_double());
  }
  auto s2 = isolate_roots(P::parse("1,0,1"));
  REQUIRE(s2.disks.size() == 2);
  CHECK_FALSE(s2.disks[0].is_real);
  CHECK(s2.disks[0].conjugate_of == 1);
  CHECK(s2.disks[1].conjugate_of == 0);
  // (X - 1)^3 X^2
  auto s3 = isolate_roots(P::parse("1,-3,3,-1,0,0"));
  REQUIRE(s3.disks.size() == 2);
  int zero_mult = 0, one_mult = 0;
  for (auto& d : s3.disks) (d.center_re.is_zero() && d.radius.is_zero() ? zero_mult : one_mult) = d.multiplicity;
  CHECK(zero_mult == 2);
  CHECK(one_mult == 3);
}

TEST_CASE("isolation agrees with Durand-Kerner") {
  for (auto s : {"1,-55,1320,-18150,157773,-902055,3416930,-8409500,12753576,-10628640,3628800", "1,0,0,0,0,0,1",
                 "2,-3,0,5,-1", "1,1,1,1,1,1,1,1", "7,0,-1,3", "1,0,0,0,2,0,1"})
    check_against_oracle(P::parse(s));
  oracle::for_each_poly(3, 2, false, [](const P& f) { check_against_oracle(f); });
}

TEST_CASE("precision cap") {
  // Mignotte: X^8 - 2(100X - 1)^2 has two roots about 1e-10 apart.
  P f = P::parse("1,0,0,0,0,0,-20000,400,-2");
  auto set = isolate_roots(f, 64, 4096);
  CHECK(set.disks.size() == 8);
  CHECK(code_of([&] { isolate_roots(f, 8, 16); }) == ErrorCode::PrecisionCapExceeded);
}

TEST_CASE("refine shrinks radii") {
  auto s = isolate_roots(P::parse("1,-1,-1"));
  BigFloat target = BigFloat::pow2(-200, 256);
  auto r = refine(s, target, 8192);
  for (auto& d : r.disks) CHECK(d.radius <= target);
  double phi = (1 + std::sqrt(5.0)) / 2;
  bool found = false;
  for (auto& d : r.disks) found |= std::abs(d.center_re.to_double() - phi) < 1e-15;
  CHECK(found);
}

TEST_CASE("modulus separation bound is below the true gap") {
  for (auto s : {"1,-3,2", "1,0,-5,0,4", "2,1,3,1", "1,-1,0,1,1", "1,3,-2,5"}) {
    P f = P::parse(s);
    auto r = oracle::roots(f);
    std::vector<long double> m;
    for (auto z : r) m.push_back(std::norm(z));
    std::sort(m.begin(), m.end());
    long double gap = 1e300L;
    for (size_t i = 1; i < m.size(); ++i)
      if (m[i] - m[i - 1] > 1e-9L) gap = std::min(gap, m[i] - m[i - 1]);
    mpq_class b = modulus_separation_bound(f);
    CHECK(b > 0);
    CHECK(b.get_d() <= gap);
  }
}

TEST_CASE("modulus enclosures contain the squared moduli") {
  P f = P::parse("1,2,3,4,5");
  auto set = isolate_roots(f);
  auto r = oracle::roots(f);
  for (auto& d : set.disks) {
    auto ms = modulus_squared(d);
    bool hit = false;
    for (auto z : r)
      if (dist(d, z) < 1e-6) hit |= ms.lo.to_double() - 1e-12 <= std::norm(z) && std::norm(z) <= ms.hi.to_double() + 1e-12;
    CHECK(hit);
  }
}

TEST_CASE("Mahler measure enclosure") {
  auto m = mahler_measure(isolate_roots(P::parse("1,-1,-1")));
  double phi = (1 + std::sqrt(5.0)) / 2;
  CHECK(m.lo <= phi);
  CHECK(phi <= m.hi);
  CHECK(m.hi - m.lo < 1e-9);
}

TEST_CASE("fast isolation matches exact isolation") {
  oracle::for_each_poly(4, 2, false, [](const P& f) {
    if (f.constant_term() == 0 || !testing::squarefree(f)) return;
    std::vector<double> asc;
    for (auto& c : f.powers()) asc.push_back(c.get_d());
    auto fast = isolate_fast(asc);
    if (!fast) return;
    auto exact = isolate_roots(f);
    REQUIRE(fast->centers.size() == exact.disks.size());
    int fr = 0, er = 0;
    for (bool b : fast->is_real) fr += b;
    for (auto& d : exact.disks) er += d.is_real;
    CHECK(fr == er);
  });
}

TEST_CASE("ball evaluation contains the value") {
  ComplexBall x{BigFloat(1.5, 128), BigFloat(-0.5, 128), BigFloat(0.0, 128)};
  auto v = eval_at(P::parse("1,0,1"), x);  // (1.5 - 0.5i)^2 + 1 = 3 - 1.5i
  CHECK(std::abs(v.re.to_double() - 3.0) <= v.radius.to_double() + 1e-30);
  CHECK(std::abs(v.im.to_double() + 1.5) <= v.radius.to_double() + 1e-30);
}

TEST_CASE("isolation and refinement examples") {
  auto a = isolate_roots(P::parse("1,-3,2"));
  REQUIRE(a.disks.size() == 2);
  for (auto& d : a.disks) {
    CHECK(d.is_real);
    CHECK(d.multiplicity == 1);
  }
  auto b = isolate_roots(P::parse("1,-2,1"));
  REQUIRE(b.disks.size() == 1);
  CHECK(b.disks[0].multiplicity == 2);
  CHECK(std::abs(b.disks[0].center_re.to_double() - 1.0) <= b.disks[0].radius.to_double() + 1e-300);
  auto c = isolate_roots(P::parse("1,0,0,0,1"));
  REQUIRE(c.disks.size() == 4);
  for (auto& d : c.disks) {
    CHECK_FALSE(d.is_real);
    auto m = modulus_squared(d);
    CHECK(m.lo.to_double() <= 1.0);
    CHECK(m.hi.to_double() >= 1.0);
  }

  // centers within 1e-30 of +-sqrt 2: compare exactly via c^2 - 2
  auto r = refine(isolate_roots(P::parse("1,0,-2")), BigFloat(mpq_class(1, mpz_class("1000000000000000000000000000000")), 256, Round::Down));
  for (auto& d : r.disks) {
    mpq_class x = d.center_re.to_rational();
    mpq_class err = x * x - 2;
    if (err < 0) err = -err;
    CHECK(err < mpq_class(3, mpz_class("1000000000000000000000000000000")));
  }
  CHECK(refine(r, BigFloat(1.0, 64)).disks.size() == r.disks.size());
  CHECK(code_of([] {
          auto s = isolate_roots(P::parse("1,0,0,0,0,0,-20000,400,-2"), 64, 256);
          refine(s, BigFloat::pow2(-400, 512), 256);
        }) == ErrorCode::PrecisionCapExceeded);

  CHECK(modulus_separation_bound(P::parse("1,-3,2")) <= 3);
  CHECK(modulus_separation_bound(P::parse("1,0,0,0,1")) > 0);
  CHECK(modulus_separation_bound(P::parse("1,-1,-1")).get_d() <= std::sqrt(5.0));
}
