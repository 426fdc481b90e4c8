#pragma once

#include <gmpxx.h>

#include <utility>
#include <vector>

#include "polycensus/int_poly.hpp"

namespace polycensus {

/// Exact polynomial algebra over Z (and Q where needed). Every function is a
/// pure function of its arguments.

IntPolynomial derivative(const IntPolynomial& f);

// Positive gcd of the coefficients (0 for the zero polynomial).
mpz_class content(const IntPolynomial& f);

// f / content(f), sign-normalized to a positive leading coefficient.
IntPolynomial primitive_part(const IntPolynomial& f);

// f(-X).
IntPolynomial negate_variable(const IntPolynomial& f);

// Pseudo-remainder: lc(g)^(deg f - deg g + 1) f = q g + r.
IntPolynomial pseudo_remainder(const IntPolynomial& f, const IntPolynomial& g);

// Exact division over Q. Returns false if g does not divide f in Q[X] or
// the quotient is not integral.
bool try_divide_exact(const IntPolynomial& f, const IntPolynomial& g, IntPolynomial& quotient);
IntPolynomial divide_exact(const IntPolynomial& f, const IntPolynomial& g);

// Horner evaluation at a rational point, exact.
mpq_class eval_at(const IntPolynomial& f, const mpq_class& x);

// Sign of f(x) for rational x (avoids building the full rational value).
int sign_at(const IntPolynomial& f, const mpq_class& x);

// Primitive gcd over Q with a positive leading coefficient, computed by a
// primitive-part normalized pseudo-remainder sequence. gcd(f, 0) = pp(f).
IntPolynomial subresultant_gcd(const IntPolynomial& f, const IntPolynomial& g);

struct SquarefreeFactor {
  IntPolynomial factor;  // primitive, positive leading coefficient, squarefree
  int multiplicity = 1;
};

struct SquarefreeDecomposition {
  mpz_class unit = 1;  // signed content: f = unit * prod factor^multiplicity
  std::vector<SquarefreeFactor> factors;  // multiplicities strictly increasing

  IntPolynomial reconstruct() const;
};

// Yun's algorithm. Requires f nonzero.
SquarefreeDecomposition squarefree_decomposition(const IntPolynomial& f);

// Product of the distinct irreducible factors (primitive, positive leading).
IntPolynomial squarefree_part(const IntPolynomial& f);

// Res(f, g) = a_0^{deg g} prod g(alpha_i); determinant of the Sylvester matrix.
mpz_class resultant(const IntPolynomial& f, const IntPolynomial& g);

// (-1)^{n(n-1)/2} Res(f, f') / a_0. Requires deg f >= 1.
mpz_class discriminant(const IntPolynomial& f);

// Polynomial with roots alpha_i^2: (-1)^n f(sqrt X) f(-sqrt X).
IntPolynomial graeffe_transform(const IntPolynomial& f);

// X^n f(1/X). Throws ZeroConstantTerm when f(0) = 0.
IntPolynomial reciprocal(const IntPolynomial& f);

struct PowerSubstitution {
  int m = 1;
  IntPolynomial g;  // f(X) = g(X^m)
};

// Largest m with f(X) = g(X^m): the gcd of all exponents carrying nonzero
// coefficients.
PowerSubstitution power_substitution(const IntPolynomial& f);

// Res_y(f(y), y^n f(X/y)) = a_0^{2n} prod_{i,j} (X - alpha_i alpha_j) over all
// ordered pairs. Requires f(0) != 0, deg f >= 1.
IntPolynomial ordered_pair_product_poly(const IntPolynomial& f);

// Integer polynomial proportional to prod_{i<j} (X - alpha_i alpha_j): the
// result is a_0^t times that product (sign-normalized to a positive leading
// coefficient) with t the least exponent making it integral. Zero roots are
// allowed. Throws DegreeTooSmall when deg f < 2.
IntPolynomial root_product_poly(const IntPolynomial& f);

// Exact square root of a polynomial square in Z[X], up to sign (positive
// leading coefficient). Returns false when s is not a square.
bool try_exact_sqrt(const IntPolynomial& s, IntPolynomial& root);

// Interpolates the unique polynomial of degree <= points-1 through
// (x_i, y_i); every value must yield integer coefficients.
IntPolynomial interpolate_integer(const std::vector<mpz_class>& xs, const std::vector<mpz_class>& ys);

}  // namespace polycensus
