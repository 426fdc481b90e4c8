#include "doctest.h"

#include "helpers.hpp"
#include "oracles.hpp"
#include "polycensus/error.hpp"
#include "polycensus/int_poly.hpp"
#include "polycensus/poly_algebra.hpp"
#include "polycensus/sturm.hpp"

using namespace polycensus;
using P = IntPolynomial;

using testing::code_of;

TEST_CASE("parse and print round trip") {
  P f = P::parse(" 2, 0,-3 ,1");
  CHECK(f.degree() == 3);
  CHECK(f.to_string() == "2,0,-3,1");
  CHECK(f.a(0) == 2);
  CHECK(f.a(2) == -3);
  CHECK(f.coeff(0) == 1);
  CHECK(f.height() == 3);
  CHECK(P::parse("0,0,1").degree() == 0);
  CHECK(P::parse("0").is_zero());
  CHECK(code_of([] { P::parse("1,,2"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { P::parse("x"); }) == ErrorCode::ParseError);
}

TEST_CASE("ring operations") {
  P f = P::from_leading_first({1, 1});
  P g = P::from_leading_first({1, -1});
  CHECK((f * g).to_string() == "1,0,-1");
  CHECK((f - f).is_zero());
  CHECK((f + g).to_string() == "2,0");
  P q;
  CHECK(try_divide_exact(f * g * g, g, q));
  CHECK(q == f * g);
  CHECK_FALSE(try_divide_exact(f * g, P::from_leading_first({2, 1}), q));
  CHECK(derivative(P::from_leading_first({3, 0, 2, 7})).to_string() == "9,0,2");
  CHECK(content(P::from_leading_first({-4, 6, 10})) == 2);
  CHECK(primitive_part(P::from_leading_first({-4, 6, 10})).to_string() == "2,-3,-5");
}

TEST_CASE("gcd matches known factorizations") {
  P a = P::from_leading_first({1, -1});
  P b = P::from_leading_first({1, 0, 1});
  P c = P::from_leading_first({2, 3});
  P g = subresultant_gcd(a * b * c, a * c * c * P::from_leading_first({1, 5}));
  CHECK(primitive_part(g) == primitive_part(a * c));
  CHECK(subresultant_gcd(a, b).degree() == 0);
}

TEST_CASE("discriminant against closed forms") {
  // quadratics: b^2 - 4ac
  oracle::for_each_poly(2, 4, false, [](const P& f) {
    mpz_class a = f.a(0), b = f.a(1), c = f.a(2);
    CHECK(discriminant(f) == b * b - 4 * a * c);
  });
  // cubics: b^2c^2 - 4ac^3 - 4b^3d - 27a^2d^2 + 18abcd
  oracle::for_each_poly(3, 2, false, [](const P& f) {
    mpz_class a = f.a(0), b = f.a(1), c = f.a(2), d = f.a(3);
    CHECK(discriminant(f) == b * b * c * c - 4 * a * c * c * c - 4 * b * b * b * d - 27 * a * a * d * d +
                                 18 * a * b * c * d);
  });
}

TEST_CASE("discriminant against products of root differences") {
  for (auto s : {"1,0,0,0,1", "2,-1,3,0,5", "1,2,3,4,5,6", "3,0,-7,1,1"}) {
    P f = P::parse(s);
    long double ref = oracle::discriminant(f);
    long double got = discriminant(f).get_d();
    CHECK(std::abs(got - ref) <= 1e-9L * std::max(1.0L, std::abs(ref)));
  }
}

TEST_CASE("resultant vanishes exactly on common roots") {
  P f = P::from_leading_first({1, 0, -2});
  CHECK(resultant(f, P::from_leading_first({1, 0, -2}) * P::from_leading_first({1, 1})) == 0);
  // Res(X - r, g) = g(r)
  P g = P::from_leading_first({2, -3, 5});
  CHECK(resultant(P::from_leading_first({1, -4}), g) == 2 * 16 - 12 + 5);
}

TEST_CASE("squarefree decomposition reconstructs") {
  P a = P::from_leading_first({1, 1});
  P b = P::from_leading_first({1, 0, 1});
  P f = a * b * b * P::constant(-3);
  auto d = squarefree_decomposition(f);
  CHECK(d.reconstruct() == f);
  REQUIRE(d.factors.size() == 2);
  CHECK(d.factors[0].multiplicity == 1);
  CHECK(d.factors[1].multiplicity == 2);
  CHECK(primitive_part(squarefree_part(f)) == primitive_part(a * b));
  oracle::for_each_poly(3, 2, false, [](const P& g) { CHECK(squarefree_decomposition(g).reconstruct() == g); });
}

TEST_CASE("graeffe squares the roots") {
  P f = P::from_leading_first({1, -3, 2});  // roots 1, 2
  CHECK(graeffe_transform(f).to_string() == "1,-5,4");
  // power sums of the transform are p_{2k} of f
  P g = P::parse("2,1,-3,4");
  auto pf = oracle::power_sums(g, 8);
  auto pg = oracle::power_sums(graeffe_transform(g), 4);
  for (int k = 1; k <= 4; ++k) CHECK(pg[k] == pf[2 * k]);
}

TEST_CASE("reciprocal") {
  CHECK(reciprocal(P::from_leading_first({1, 2, 3})).to_string() == "3,2,1");
  CHECK(code_of([] { reciprocal(P::from_leading_first({1, 2, 0})); }) == ErrorCode::ZeroConstantTerm);
}

TEST_CASE("power substitution") {
  auto s = power_substitution(P::parse("1,0,0,0,0,0,1"));
  CHECK(s.m == 6);
  CHECK(s.g.to_string() == "1,1");
  CHECK(power_substitution(P::parse("1,0,0,1,0,0,1")).m == 3);
  CHECK(power_substitution(P::parse("1,0,1,0,1")).m == 2);
  CHECK(power_substitution(P::parse("1,1,1")).m == 1);
}

TEST_CASE("pair product polynomial has the pair power sums") {
  for (auto s : {"1,0,1", "1,-1,-1", "2,3,-1,5", "1,0,0,2,1", "3,1,4,1,5", "1,2,0,-1,3,1"}) {
    P f = P::parse(s);
    const int n = f.degree();
    P R = root_product_poly(f);
    CHECK(R.degree() == n * (n - 1) / 2);
    CHECK(R.leading() > 0);
    auto pf = oracle::power_sums(f, 2 * R.degree());
    auto pr = oracle::power_sums(R, R.degree());
    for (int k = 1; k <= R.degree(); ++k) CHECK(pr[k] == (pf[k] * pf[k] - pf[2 * k]) / 2);
  }
  CHECK(code_of([] { root_product_poly(P::from_leading_first({1, 1})); }) == ErrorCode::DegreeTooSmall);
}

TEST_CASE("ordered pair products include the squares") {
  P f = P::parse("1,-3,2");  // roots 1, 2 -> products 1, 2, 2, 4
  P R = ordered_pair_product_poly(f);
  CHECK(primitive_part(R) == primitive_part(P::from_leading_first({1, -1}) * P::from_leading_first({1, -2}) *
                                             P::from_leading_first({1, -2}) * P::from_leading_first({1, -4})));
}

TEST_CASE("exact square root and interpolation") {
  P r;
  P a = P::parse("2,-1,3");
  CHECK(try_exact_sqrt(a * a, r));
  CHECK(r == a);
  CHECK_FALSE(try_exact_sqrt(a, r));
  std::vector<mpz_class> xs{0, 1, 2, 3}, ys;
  P g = P::parse("1,-2,0,7");
  for (auto& x : xs) ys.push_back(eval_at(g, mpq_class(x)).get_num());
  CHECK(interpolate_integer(xs, ys) == g);
}

TEST_CASE("sturm counts match numeric roots") {
  oracle::for_each_poly(4, 2, false, [](const P& f) {
    if (!testing::squarefree(f) || f.zero_root_multiplicity() > 0) return;
    int real = 0;
    for (auto z : oracle::roots(f))
      if (std::abs(z.imag()) < 1e-7L) ++real;
    INFO(f.to_string());
    CHECK(distinct_real_root_count(f) == real);
  });
  P f = P::parse("1,0,-5,0,4");  // roots -2, -1, 1, 2
  CHECK(sturm_real_root_count(f, ExtendedRational::finite(0), ExtendedRational::finite(3)) == 2);
  CHECK(sturm_real_root_count(f, ExtendedRational::neg_infinity(), ExtendedRational::finite(mpq_class(-3, 2))) == 1);
}

TEST_CASE("normalization examples") {
  P f = P::from_leading_first({0, 1, 0, -2});
  CHECK(f.degree() == 2);
  CHECK(f.to_string() == "1,0,-2");
  CHECK(f.height() == 2);
  CHECK(P::from_leading_first({0, 0}).is_zero());
  CHECK(P::from_leading_first({3, -1, 4}).height() == 4);
}

TEST_CASE("exact evaluation") {
  CHECK(eval_at(P::parse("1,0,-2"), mpq_class(2)) == 2);
  CHECK(eval_at(P::parse("1,0,-2"), mpq_class(0)) == -2);
  // 64/27 - 36/27 - 27/27
  CHECK(eval_at(P::parse("1,0,-1,-1"), mpq_class(4, 3)) == mpq_class(1, 27));
  CHECK(sign_at(P::parse("1,0,-1,-1"), mpq_class(4, 3)) == 1);
  CHECK(eval_at(P::parse("1,0,-1,-1"), mpq_class(5, 4)) == mpq_class(125 - 80 - 64, 64));
}

TEST_CASE("small algebra examples") {
  CHECK(subresultant_gcd(P::parse("1,0,-1"), P::parse("1,-1")).to_string() == "1,-1");
  CHECK(subresultant_gcd(P::parse("1,0,1"), P::parse("1,0,-1")).degree() == 0);
  CHECK(subresultant_gcd(P::parse("1,0,-1,0"), P::parse("3,0,-1")).degree() == 0);

  auto d1 = squarefree_decomposition(P::parse("1,-2,1"));
  REQUIRE(d1.factors.size() == 1);
  CHECK(d1.factors[0].factor.to_string() == "1,-1");
  CHECK(d1.factors[0].multiplicity == 2);
  auto d2 = squarefree_decomposition(P::parse("1,0,-2,0,1"));
  REQUIRE(d2.factors.size() == 1);
  CHECK(d2.factors[0].factor.to_string() == "1,0,-1");
  CHECK(d2.factors[0].multiplicity == 2);
  CHECK(squarefree_decomposition(P::parse("1,0,-1,0")).factors.size() == 1);

  CHECK(resultant(P::parse("1,-2"), P::parse("1,-3")) == -1);
  CHECK(resultant(P::parse("1,0,1"), P::parse("1,0,-1")) == 4);
  CHECK(resultant(P::parse("1,0,-2"), P::parse("1,0,-2")) == 0);

  CHECK(discriminant(P::parse("1,1,1")) == -3);
  CHECK(discriminant(P::parse("1,-2,1")) == 0);
  CHECK(discriminant(P::parse("1,0,-1,-1")) == -23);

  CHECK(graeffe_transform(P::parse("1,0,-2")).to_string() == "1,-4,4");
  CHECK(graeffe_transform(P::parse("1,-3")).to_string() == "1,-9");
  CHECK(graeffe_transform(P::parse("1,0,1")).to_string() == "1,2,1");

  CHECK(reciprocal(P::parse("2,3,5")).to_string() == "5,3,2");
  CHECK(reciprocal(P::parse("1,-3,2")).to_string() == "2,-3,1");
  CHECK(code_of([] { reciprocal(P::parse("1,0,1,0")); }) == ErrorCode::ZeroConstantTerm);

  auto s = power_substitution(P::parse("1,0,0,3,0,0,2"));
  CHECK(s.m == 3);
  CHECK(s.g.to_string() == "1,3,2");
  CHECK(power_substitution(P::parse("1,0,-1,-1")).m == 1);
  CHECK(power_substitution(P::parse("1,0,0,0,1")).g.to_string() == "1,1");

  auto all = [](const char* t) {
    return sturm_real_root_count(P::parse(t), ExtendedRational::neg_infinity(), ExtendedRational::pos_infinity());
  };
  CHECK(all("1,0,-1,0") == 3);
  CHECK(all("1,0,1") == 0);
  CHECK(sturm_real_root_count(P::parse("1,0,-1,-1"), ExtendedRational::finite(1), ExtendedRational::finite(2)) == 1);

  CHECK(primitive_part(root_product_poly(P::parse("1,0,1"))).to_string() == "1,-1");
  CHECK(primitive_part(root_product_poly(P::parse("1,-3,2"))).to_string() == "1,-2");
  P r6 = root_product_poly(P::parse("1,0,5,0,4"));
  CHECK(r6.degree() == 6);
  // value set {1, 2, 2, -2, -2, 4}
  CHECK(primitive_part(r6) == P::parse("1,-1") * P::parse("1,-4") * P::parse("1,-2") * P::parse("1,-2") *
                                  P::parse("1,2") * P::parse("1,2"));
}
