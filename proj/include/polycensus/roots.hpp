#pragma once

#include <gmpxx.h>

#include <complex>
#include <optional>
#include <vector>

#include "polycensus/big_float.hpp"
#include "polycensus/error.hpp"
#include "polycensus/int_poly.hpp"

namespace polycensus {

// Closed disk holding exactly `multiplicity` roots (one distinct root) of the
// polynomial it was computed for.
struct RootDisk {
  BigFloat center_re;
  BigFloat center_im;
  BigFloat radius;
  int multiplicity = 1;
  bool is_real = false;
  // Squarefree factor this root belongs to; -1 for the exact zero root.
  int factor_index = -1;
  // Index of the disk holding the complex conjugate; -1 for real roots.
  int conjugate_of = -1;
};

enum class RootSetStatus { Certified, RefinementCapReached };

struct CertifiedRootSet {
  IntPolynomial polynomial;
  std::vector<RootDisk> disks;
  long precision_bits = 0;
  RootSetStatus status = RootSetStatus::Certified;

  int distinct_count() const { return static_cast<int>(disks.size()); }
};

struct RootsConfig {
  long initial_bits = 128;
  long cap_bits = 4096;
};

// Thrown by refine() when the cap is hit; carries the best set reached.
class RefinementCapExceeded : public Error {
 public:
  RefinementCapExceeded(const std::string& message, CertifiedRootSet partial)
      : Error(ErrorCode::PrecisionCapExceeded, message), partial_(std::move(partial)) {}
  const CertifiedRootSet& partial() const { return partial_; }

 private:
  CertifiedRootSet partial_;
};

// Fujiwara's bound 2 max{|a_1/a_0|, |a_2/a_0|^{1/2}, ..., |a_n/(2 a_0)|^{1/n}},
// rounded upward. Requires deg f >= 1.
double fujiwara_bound(const IntPolynomial& f);

// Certified isolation: one disk per distinct root, multiplicities from the
// squarefree decomposition, zero roots exact. Starts at `precision_bits` and
// doubles up to the cap (PrecisionCapExceeded past it).
CertifiedRootSet isolate_roots(const IntPolynomial& f, long precision_bits = 128, long cap_bits = 4096);
inline CertifiedRootSet isolate_roots(const IntPolynomial& f, const RootsConfig& cfg) {
  return isolate_roots(f, cfg.initial_bits, cfg.cap_bits);
}

// Shrinks every radius to at most target_radius. Returns the input unchanged
// when it already qualifies.
CertifiedRootSet refine(const CertifiedRootSet& set, const BigFloat& target_radius, long cap_bits = 4096);

// Lower bound on |x - y| over distinct values x, y in {|alpha_i|^2}. Every
// such value is a product alpha_i alpha_j of two roots (the conjugate is a
// root too), so Mahler's separation bound
//   sep(Q) >= sqrt(3) d^{-(d+2)/2} ||Q||_2^{-(d-1)}
// for the squarefree part Q of prod_{i,j}(X - alpha_i alpha_j) applies.
// Zero roots are dropped first; their modulus is exactly known.
mpq_class modulus_separation_bound(const IntPolynomial& f);

// Enclosure [lo, hi] of |alpha|^2 for the root in a disk, outward rounded.
struct ModulusSquared {
  BigFloat lo;
  BigFloat hi;
};
ModulusSquared modulus_squared(const RootDisk& d);

// Interval-valued Mahler measure |a_0| prod max(1, |alpha_i|) from a set.
struct MahlerEnclosure {
  double lo;
  double hi;
};
MahlerEnclosure mahler_measure(const CertifiedRootSet& set);

// Double-precision certified isolation of a squarefree polynomial with
// nonzero constant term (ascending coefficients, exactly representable).
// Empty when certification fails; callers fall back to isolate_roots.
struct FastIsolation {
  std::vector<std::complex<double>> centers;
  std::vector<double> radii;
  std::vector<bool> is_real;
  std::vector<int> conjugate_of;
};
std::optional<FastIsolation> isolate_fast(const std::vector<double>& ascending);

// Complex ball with outward-rounded radius.
struct ComplexBall {
  BigFloat re;
  BigFloat im;
  BigFloat radius;
};

// Horner in ball arithmetic: the result contains f(z) for every z in x.
ComplexBall eval_at(const IntPolynomial& f, const ComplexBall& x);

}  // namespace polycensus
