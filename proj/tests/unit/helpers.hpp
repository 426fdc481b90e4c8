#pragma once

#include "doctest.h"
#include "polycensus/error.hpp"
#include "polycensus/poly_algebra.hpp"

namespace testing {

// Code of the polycensus::Error thrown by fn.
template <class F>
polycensus::ErrorCode code_of(F&& fn) {
  try {
    fn();
  } catch (const polycensus::Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return polycensus::ErrorCode::ParseError;
}

inline bool squarefree(const polycensus::IntPolynomial& f) {
  auto d = polycensus::squarefree_decomposition(f);
  return d.factors.size() == 1 && d.factors[0].multiplicity == 1;
}

}  // namespace testing
