#include "polycensus/sturm.hpp"

#include "polycensus/error.hpp"
#include "polycensus/poly_algebra.hpp"

namespace polycensus {

namespace {

int sign_at_point(const IntPolynomial& p, const ExtendedRational& x) {
  if (p.is_zero()) return 0;
  switch (x.kind) {
    case ExtendedRational::Kind::PosInfinity:
      return sgn(p.leading());
    case ExtendedRational::Kind::NegInfinity:
      return (p.degree() % 2 == 0) ? sgn(p.leading()) : -sgn(p.leading());
    case ExtendedRational::Kind::Finite:
      break;
  }
  return sign_at(p, x.value);
}

// Content with the sign of the leading coefficient discarded: division keeps
// every sign pattern intact.
IntPolynomial divide_positive_content(const IntPolynomial& p) {
  mpz_class c = content(p);
  if (c <= 1) return p;
  std::vector<mpz_class> v = p.powers();
  for (auto& a : v) mpz_divexact(a.get_mpz_t(), a.get_mpz_t(), c.get_mpz_t());
  return IntPolynomial::from_powers(std::move(v));
}

}  // namespace

int SturmChain::sign_variations(const ExtendedRational& x) const {
  int variations = 0;
  int last = 0;
  for (const auto& p : sequence) {
    int s = sign_at_point(p, x);
    if (s == 0) continue;
    if (last != 0 && s != last) ++variations;
    last = s;
  }
  return variations;
}

SturmChain sturm_chain(const IntPolynomial& f) {
  if (f.is_zero()) fail(ErrorCode::ZeroPolynomial, "Sturm chain of the zero polynomial");
  SturmChain chain;
  IntPolynomial p0 = squarefree_part(f);
  chain.sequence.push_back(p0);
  if (p0.degree() < 1) return chain;
  chain.sequence.push_back(divide_positive_content(derivative(p0)));
  while (chain.sequence.back().degree() > 0) {
    const IntPolynomial& a = chain.sequence[chain.sequence.size() - 2];
    const IntPolynomial& b = chain.sequence.back();
    // lc(b)^k a = q b + r. A positive multiplier is needed to keep the
    // sign of the remainder, so flip when lc(b)^k is negative.
    IntPolynomial r = pseudo_remainder(a, b);
    int k = a.degree() - b.degree() + 1;
    bool multiplier_negative = b.leading() < 0 && (k % 2 != 0);
    if (!multiplier_negative) r = -r;
    if (r.is_zero()) break;
    chain.sequence.push_back(divide_positive_content(r));
  }
  return chain;
}

int sturm_real_root_count(const IntPolynomial& f, const ExtendedRational& lo, const ExtendedRational& hi) {
  if (f.is_zero()) fail(ErrorCode::ZeroPolynomial, "root count of the zero polynomial");
  for (const auto* e : {&lo, &hi}) {
    if (e->kind == ExtendedRational::Kind::Finite && sign_at(f, e->value) == 0) {
      fail(ErrorCode::EndpointIsRoot, "interval endpoint " + e->value.get_str() + " is a root");
    }
  }
  SturmChain chain = sturm_chain(f);
  int count = chain.sign_variations(lo) - chain.sign_variations(hi);
  return count < 0 ? 0 : count;
}

int distinct_real_root_count(const IntPolynomial& f) {
  return sturm_real_root_count(f, ExtendedRational::neg_infinity(), ExtendedRational::pos_infinity());
}

}  // namespace polycensus
