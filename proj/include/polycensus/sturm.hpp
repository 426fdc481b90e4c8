#pragma once

#include <gmpxx.h>

#include <vector>

#include "polycensus/int_poly.hpp"

namespace polycensus {

// A point of the extended rational line.
struct ExtendedRational {
  enum class Kind { NegInfinity, Finite, PosInfinity };
  Kind kind = Kind::Finite;
  mpq_class value;

  static ExtendedRational neg_infinity() { return {Kind::NegInfinity, 0}; }
  static ExtendedRational pos_infinity() { return {Kind::PosInfinity, 0}; }
  static ExtendedRational finite(const mpq_class& v) { return {Kind::Finite, v}; }
};

// Signed remainder sequence of the squarefree part of f and its derivative,
// each element divided by its positive content.
struct SturmChain {
  std::vector<IntPolynomial> sequence;

  int sign_variations(const ExtendedRational& x) const;
};

SturmChain sturm_chain(const IntPolynomial& f);

// Number of distinct real roots of f in the open interval (lo, hi). Finite
// endpoints must not be roots of f (EndpointIsRoot otherwise).
int sturm_real_root_count(const IntPolynomial& f, const ExtendedRational& lo, const ExtendedRational& hi);

// Distinct real roots on the whole line.
int distinct_real_root_count(const IntPolynomial& f);

}  // namespace polycensus
