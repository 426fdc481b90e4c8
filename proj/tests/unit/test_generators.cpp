#include "doctest.h"

#include <cmath>

#include "helpers.hpp"
#include "oracles.hpp"
#include "polycensus/census.hpp"
#include "polycensus/classify.hpp"
#include "polycensus/generators.hpp"

using namespace polycensus;
using P = IntPolynomial;
using testing::code_of;

namespace {

std::vector<P> drain(const PolyStream& s, size_t cap = 1000000) {
  std::vector<P> out;
  while (out.size() < cap) {
    auto f = s();
    if (!f) break;
    out.push_back(*f);
  }
  return out;
}

}  // namespace

TEST_CASE("perturbation bounds examples") {
  auto b = perturbation_bounds(P::parse("1,0,-1"), 0.5);
  CHECK(b.M.to_double() == doctest::Approx(4.75).epsilon(1e-12));
  CHECK(b.delta.to_double() == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(b.eps_down() == doctest::Approx(3.0 / 19.0).epsilon(1e-12));
  CHECK(b.eps_down() <= 3.0 / 19.0);

  auto c = perturbation_bounds(P::parse("1,-5"), 1.0);
  CHECK(c.delta.to_double() == doctest::Approx(1.0));
  CHECK(c.M.to_double() == doctest::Approx(7.0));
  CHECK(c.eps_down() <= 1.0 / 7.0);
  CHECK(c.eps_down() == doctest::Approx(1.0 / 7.0).epsilon(1e-12));

  CHECK(code_of([] { perturbation_bounds(P::parse("1,0,-1"), 1.2); }) == ErrorCode::GammaTooLarge);
  auto d = perturbation_bounds(P::parse("1,0,-1"));
  CHECK(d.gamma.to_double() == doctest::Approx(0.5));
}

TEST_CASE("perturbations below eps keep the roots in their disks") {
  // X^3 - 2X^2 + X - 2 = (X - 2)(X^2 + 1)
  P h = P::parse("1,-2,1,-2");
  auto b = perturbation_bounds(h, 0.2);
  const double eps = b.eps_down();
  std::vector<oracle::cld> centers{{2, 0}, {0, 1}, {0, -1}};
  for (int mask = 0; mask < 81; ++mask) {
    // scale by 1e6 to keep integer coefficients
    const long S = 1000000;
    std::vector<mpz_class> c;
    int m = mask;
    for (int i = 0; i <= 3; ++i, m /= 3) {
      long off = static_cast<long>((m % 3 - 1) * 0.999 * eps * S);
      c.push_back(mpz_class(h.a(i) * S + off));
    }
    P g = P::from_leading_first(c);
    for (auto z : oracle::roots(g)) {
      int inside = 0;
      for (auto ctr : centers) inside += std::abs(z - ctr) < 0.2;
      CHECK(inside == 1);
    }
  }
}

TEST_CASE("target parsing") {
  auto t = TargetSpec::parse("0,1;0,-1;2");
  CHECK(t.degree() == 3);
  auto c = t.monic_coefficients();
  REQUIRE(c.size() == 4);
  CHECK(c[0] == 1);
  CHECK(c[1] == -2);
  CHECK(c[2] == 1);
  CHECK(c[3] == -2);
  CHECK(code_of([] { TargetSpec::parse("0,1").validate(); }) == ErrorCode::BadParameters);
  CHECK(code_of([] { TargetSpec::parse("1;1").validate(); }) == ErrorCode::TargetNotSeparated);
  CHECK(code_of([] { TargetSpec::parse("1,;x"); }) == ErrorCode::ParseError);
}

TEST_CASE("near-target family around (X^2+1)(X^2+5)") {
  auto t = TargetSpec::parse("0,1;0,-1;0,2.2360679774997896964;0,-2.2360679774997896964");
  NearTargetOptions opt;
  opt.enumerate = true;
  opt.count = 0;
  auto fam = near_target_family(t, 50, opt);
  CHECK(fam.members.size() == fam.box_points.get_ui());
  CHECK_FALSE(fam.members.empty());
  for (auto& f : fam.members) {
    CHECK(f.height() <= fam.height_bound);
    auto p = modulus_profile(f);
    CHECK(p.k_min == 2);
    CHECK(p.k_max == 2);
  }
  auto v = validate_family(stream_of(fam.members), FamilyPredicate::parse("b=2,2"), 10000);
  CHECK(v.pass_fraction == 1.0);
}

TEST_CASE("near-target signatures") {
  NearTargetOptions opt;
  opt.count = 200;
  auto real = near_target_family(TargetSpec::parse("1;-1"), 100, opt);
  for (auto& f : real.members) {
    auto s = root_signature(f);
    CHECK(s.r == 2);
    CHECK(s.s == 0);
  }
  auto mixed = near_target_family(TargetSpec::parse("2;0,1;0,-1"), 100, opt);
  CHECK_FALSE(mixed.members.empty());
  for (auto& f : mixed.members) {
    auto s = root_signature(f);
    CHECK(s.r == 1);
    CHECK(s.s == 1);
    CHECK(modulus_profile(f).dominant);
  }
  CHECK(code_of([] { near_target_family(TargetSpec::parse("0.5;-0.5"), 1); }) == ErrorCode::HTooSmall);
}

TEST_CASE("monic near-target family") {
  NearTargetOptions opt;
  opt.monic = true;
  opt.count = 100;
  auto fam = near_target_family(TargetSpec::parse("2;0,1;0,-1"), 1000000, opt);
  for (auto& f : fam.members) {
    CHECK(f.leading() == 1);
    CHECK(f.height() <= 1000000);
    CHECK(modulus_profile(f).dominant);
  }
}

TEST_CASE("non-dominant monic family") {
  Theorem31Region r{2, 100, mpq_class(1, 2), false};
  auto members = drain(theorem31_family(r));
  CHECK(mpz_class(members.size()) == theorem31_count(r));
  for (auto& f : members) {
    CHECK(f.leading() == 1);
    CHECK(f.a(1) >= -5);
    CHECK(f.a(1) < 0);
    CHECK(f.a(2) >= 25);
    CHECK(modulus_profile(f).k_max == 2);
  }
  auto v = validate_family(theorem31_family(r), FamilyPredicate::parse("kmax=2"), 100000);
  CHECK(v.pass_fraction == 1.0);

  Theorem31Region small{2, 4, mpq_class(1, 2), false};
  auto s = drain(theorem31_family(small));
  CHECK_FALSE(s.empty());
  for (auto& f : s) CHECK(modulus_profile(f).k_max == 2);

  for (int n = 3; n <= 4; ++n) {
    Theorem31Region q{n, 6, mpq_class(1, 2), false};
    CHECK(mpz_class(drain(theorem31_family(q)).size()) == theorem31_count(q));
  }
  CHECK(code_of([] { theorem31_family({2, 1, mpq_class(1, 2), false}); }) == ErrorCode::EmptyRegion);
  CHECK(code_of([] { theorem31_family({2, 100, mpq_class(3, 2), false}); }) == ErrorCode::BadParameters);
}

TEST_CASE("non-dominant family grows like H^(n-1/2)") {
  std::vector<std::pair<double, double>> pts;
  for (int H : {100, 400, 1600, 6400}) pts.push_back({double(H), theorem31_count({3, H, mpq_class(1, 2), false}).get_d()});
  auto fit = fit_growth_exponent(pts);
  CHECK(fit.slope >= 2.35);
  CHECK(fit.slope <= 2.65);
}

TEST_CASE("showcase families") {
  bool seen = false;
  for (auto& f : drain(showcase_family(Showcase::A3Star3, 3, 10))) {
    CHECK(modulus_profile(f).k_max == 3);
    seen |= f.to_string() == "7,0,0,3";
  }
  CHECK(seen);
  auto x = drain(showcase_family(Showcase::X3Plus8, 4, 90));
  bool found = false;
  for (auto& f : x) {
    CHECK(f.height() <= 90);
    CHECK(modulus_profile(f).k_max == 3);
    found |= f == P::parse("1,0,0,8") * P::parse("9,4");
  }
  CHECK(found);
  ShowcaseParams bad;
  bad.lambda2 = mpq_class(1, 8);
  CHECK(code_of([&] { showcase_family(Showcase::X3Plus8, 4, 90, bad); }) == ErrorCode::BadParameters);
  CHECK(parse_showcase("a3star3") == Showcase::A3Star3);
}

TEST_CASE("validation") {
  auto v = validate_family(showcase_family(Showcase::A3Star3, 3, 5), FamilyPredicate::parse("kmax=1"), 1000);
  CHECK(v.pass_fraction == 0.0);
  REQUIRE(v.counterexample.has_value());
  CHECK(modulus_profile(*v.counterexample).k_max == 3);
  CHECK(code_of([] { validate_family(stream_of({}), FamilyPredicate::parse("dominant"), 10); }) ==
        ErrorCode::EmptyStream);
  CHECK(code_of([] { FamilyPredicate::parse("kmax"); }) == ErrorCode::ParseError);
  auto p = FamilyPredicate::parse("rs=1,1&sn&height<=3");
  CHECK(p.holds(P::parse("1,0,-1,-1")));
  CHECK(p.holds(P::parse("1,0,0,-2")));
  CHECK_FALSE(p.holds(P::parse("1,0,-1,0")));
  CHECK_FALSE(p.holds(P::parse("1,0,-1,-4")));
}
