#include "polycensus/roots.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "polycensus/detail/aberth.hpp"
#include "polycensus/poly_algebra.hpp"
#include "polycensus/sturm.hpp"

namespace polycensus {

using detail::Cx;
using detail::Num;
using BCx = Cx<BigFloat>;

namespace {

uint64_t coefficient_seed(const IntPolynomial& f) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (const auto& c : f.powers()) {
    uint64_t part = mpz_fdiv_ui(c.get_mpz_t(), 4294967291UL) + (sgn(c) < 0 ? 0x100000000ULL : 0);
    h = (h ^ part) * 0x100000001b3ULL;
  }
  return h;
}

uint64_t coefficient_seed(const std::vector<double>& c) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (double v : c) {
    h = (h ^ static_cast<uint64_t>(static_cast<int64_t>(v))) * 0x100000001b3ULL;
  }
  return h;
}

// Fujiwara-type radius for starting guesses; no rounding discipline needed.
double guess_radius(const std::vector<double>& c) {
  const int n = static_cast<int>(c.size()) - 1;
  const double lead = std::fabs(c.back());
  double m = 0.0;
  for (int i = 1; i <= n; ++i) {
    double t = std::fabs(c[static_cast<size_t>(n - i)]) / lead;
    if (i == n) t *= 0.5;
    m = std::max(m, std::pow(t, 1.0 / i));
  }
  double r = 2.0 * m * 1.01;
  return (r > 0.0 && std::isfinite(r)) ? r : 1.0;
}

std::vector<double> to_doubles(const IntPolynomial& g, bool& ok) {
  std::vector<double> c;
  c.reserve(g.powers().size());
  ok = true;
  for (const auto& a : g.powers()) {
    double v = a.get_d();
    if (!std::isfinite(v) || std::fabs(v) > 1e300) ok = false;
    c.push_back(v);
  }
  return c;
}

long coefficient_bits(const IntPolynomial& g) {
  long bits = 1;
  for (const auto& a : g.powers()) bits = std::max<long>(bits, static_cast<long>(mpz_sizeinbase(a.get_mpz_t(), 2)));
  return bits;
}

struct FactorState {
  IntPolynomial g;
  int multiplicity = 1;
  std::vector<BCx> z;
  std::vector<BigFloat> r;
  detail::Realness realness;
};

// Runs the iteration for one squarefree factor at `prec` from the current
// approximations and certifies. True when disks are disjoint and realness is
// fully decided.
bool certify_factor(FactorState& st, long prec) {
  const int d = st.g.degree();
  const long work = std::max(prec, coefficient_bits(st.g) + 2);
  std::vector<BigFloat> c;
  c.reserve(static_cast<size_t>(d + 1));
  for (const auto& a : st.g.powers()) c.emplace_back(a, work);
  for (auto& w : st.z) {
    w.re.set_precision(work);
    w.im.set_precision(work);
  }
  detail::aberth_iterate<BigFloat>(c, st.z, 40 + 4 * d, work);
  if (!detail::certify_radii<BigFloat>(c, st.z, st.r, work)) return false;
  if (!detail::all_disjoint<BigFloat>(st.z, st.r, work)) return false;
  st.realness = detail::classify_realness<BigFloat>(st.z, st.r, work);
  return st.realness.complete;
}

void seed_factor(FactorState& st, long prec) {
  const int d = st.g.degree();
  bool ok = false;
  std::vector<double> cd = to_doubles(st.g, ok);
  if (ok) {
    auto z = detail::circle_guesses<double>(d, guess_radius(cd), coefficient_seed(st.g), 53);
    detail::aberth_iterate<double>(cd, z, 60 + 10 * d, 53);
    bool finite = true;
    for (const auto& w : z) finite = finite && std::isfinite(w.re) && std::isfinite(w.im);
    if (finite) {
      st.z.clear();
      for (const auto& w : z) st.z.push_back({BigFloat(w.re, prec), BigFloat(w.im, prec)});
      return;
    }
  }
  // Coefficients beyond double range: start from the circle directly.
  BigFloat bound(fujiwara_bound(st.g), prec);
  double radius = std::isfinite(bound.to_double()) ? bound.to_double() : 1e300;
  st.z = detail::circle_guesses<BigFloat>(d, radius, coefficient_seed(st.g), prec);
}

bool disk_excludes_origin(const BCx& c, const BigFloat& r, long prec) {
  BCx origin{BigFloat(0.0, prec), BigFloat(0.0, prec)};
  return detail::disks_disjoint<BigFloat>(c, r, origin, BigFloat(0.0, prec), prec);
}

bool cross_factor_disjoint(const std::vector<FactorState>& fs, bool has_zero, long prec) {
  for (size_t a = 0; a < fs.size(); ++a) {
    for (size_t i = 0; i < fs[a].z.size(); ++i) {
      if (has_zero && !disk_excludes_origin(fs[a].z[i], fs[a].r[i], prec)) return false;
      for (size_t b = a + 1; b < fs.size(); ++b) {
        for (size_t j = 0; j < fs[b].z.size(); ++j) {
          if (!detail::disks_disjoint<BigFloat>(fs[a].z[i], fs[a].r[i], fs[b].z[j], fs[b].r[j], prec)) return false;
        }
      }
    }
  }
  return true;
}

// Certifies every factor at a common precision, doubling on failure.
// Returns the precision reached or 0 when the cap was hit.
long certify_all(std::vector<FactorState>& fs, bool has_zero, long prec, long cap,
                 const std::vector<BigFloat>* target_radius = nullptr) {
  for (; prec <= cap; prec *= 2) {
    bool ok = true;
    for (auto& st : fs) {
      if (!certify_factor(st, prec)) ok = false;
    }
    if (ok && !cross_factor_disjoint(fs, has_zero, prec)) ok = false;
    if (ok && target_radius) {
      for (const auto& st : fs) {
        for (const auto& r : st.r) {
          if (r > (*target_radius)[0]) ok = false;
        }
      }
    }
    if (ok) return prec;
  }
  return 0;
}

BigFloat up_sum(const BigFloat& a, const BigFloat& b) { return BigFloat::add(a, b, Round::Up); }

CertifiedRootSet assemble(const IntPolynomial& f, const std::vector<FactorState>& fs, int zero_mult, long prec) {
  CertifiedRootSet set;
  set.polynomial = f;
  set.precision_bits = prec;
  set.status = RootSetStatus::Certified;
  if (zero_mult > 0) {
    RootDisk z0{BigFloat(0.0, prec), BigFloat(0.0, prec), BigFloat(0.0, prec), zero_mult, true, -1, -1};
    set.disks.push_back(std::move(z0));
  }
  for (size_t fi = 0; fi < fs.size(); ++fi) {
    const auto& st = fs[fi];
    const int base = static_cast<int>(set.disks.size());
    for (size_t i = 0; i < st.z.size(); ++i) {
      RootDisk d{st.z[i].re, st.z[i].im, st.r[i], st.multiplicity,
                 st.realness.flags[i] == detail::RealFlag::Real, static_cast<int>(fi), -1};
      if (!d.is_real) d.conjugate_of = base + st.realness.partner[i];
      set.disks.push_back(std::move(d));
    }
  }
  return set;
}

bool set_disjoint_except(const CertifiedRootSet& set, size_t skip_a, size_t skip_b, const BCx& c, const BigFloat& r,
                         long prec) {
  for (size_t k = 0; k < set.disks.size(); ++k) {
    if (k == skip_a || k == skip_b) continue;
    const auto& o = set.disks[k];
    if (!detail::disks_disjoint<BigFloat>(c, r, BCx{o.center_re, o.center_im}, o.radius, prec)) return false;
  }
  return true;
}

// Cosmetic normalization that keeps every certificate: real disks are
// recentered on the axis (the widened disk still holds the root), and each
// conjugate pair is made exactly symmetric (the conjugate of a disk holding
// alpha holds conj(alpha)). Each change is kept only if disjointness holds.
void normalize_symmetry(CertifiedRootSet& set, long prec) {
  for (size_t i = 0; i < set.disks.size(); ++i) {
    auto& d = set.disks[i];
    if (!d.is_real || d.center_im.is_zero()) continue;
    BCx c{d.center_re, BigFloat(0.0, prec)};
    BigFloat r = up_sum(d.radius, BigFloat::abs(d.center_im));
    if (set_disjoint_except(set, i, i, c, r, prec)) {
      d.center_im = BigFloat(0.0, prec);
      d.radius = r;
    }
  }
  for (size_t i = 0; i < set.disks.size(); ++i) {
    auto& d = set.disks[i];
    if (d.is_real || d.conjugate_of < static_cast<int>(i)) continue;
    auto& e = set.disks[static_cast<size_t>(d.conjugate_of)];
    BigFloat r = BigFloat::max(d.radius, e.radius);
    BCx ce{d.center_re, -d.center_im};
    BCx cd{d.center_re, d.center_im};
    if (set_disjoint_except(set, i, static_cast<size_t>(d.conjugate_of), cd, r, prec) &&
        set_disjoint_except(set, i, static_cast<size_t>(d.conjugate_of), ce, r, prec) &&
        detail::disks_disjoint<BigFloat>(cd, r, ce, r, prec)) {
      d.radius = r;
      e.radius = r;
      e.center_re = ce.re;
      e.center_im = ce.im;
    }
  }
}

void sturm_cross_check(const std::vector<FactorState>& fs) {
  for (const auto& st : fs) {
    int real = 0;
    for (auto flag : st.realness.flags) real += flag == detail::RealFlag::Real ? 1 : 0;
    if (real != distinct_real_root_count(st.g)) {
      throw std::logic_error("realness certificate disagrees with Sturm count for " + st.g.to_string());
    }
  }
}

std::vector<FactorState> factor_states(const IntPolynomial& g) {
  std::vector<FactorState> fs;
  if (g.degree() < 1) return fs;
  SquarefreeDecomposition dec = squarefree_decomposition(g);
  for (const auto& sf : dec.factors) {
    if (sf.factor.degree() < 1) continue;
    FactorState st;
    st.g = sf.factor;
    st.multiplicity = sf.multiplicity;
    fs.push_back(std::move(st));
  }
  return fs;
}

IntPolynomial strip_zero_roots(const IntPolynomial& f, int v) {
  if (v == 0) return f;
  std::vector<mpz_class> c(f.powers().begin() + v, f.powers().end());
  return IntPolynomial::from_powers(std::move(c));
}

}  // namespace

double fujiwara_bound(const IntPolynomial& f) {
  if (f.is_zero()) fail(ErrorCode::ZeroPolynomial, "Fujiwara bound of the zero polynomial");
  const int n = f.degree();
  if (n < 1) fail(ErrorCode::DegreeTooSmall, "Fujiwara bound needs degree >= 1");
  const long prec = 64;
  const mpz_class lead = abs(f.leading());
  BigFloat best(0.0, prec);
  for (int i = 1; i <= n; ++i) {
    mpz_class num = abs(f.a(i));
    if (num == 0) continue;
    mpq_class q(num, i == n ? mpz_class(2 * lead) : lead);
    q.canonicalize();
    BigFloat t(q, prec, Round::Up);
    if (i > 1) t = BigFloat::root(t, static_cast<unsigned long>(i), Round::Up);
    best = BigFloat::max(best, t);
  }
  return BigFloat::mul(best, BigFloat(2.0, prec), Round::Up).to_double(Round::Up);
}

CertifiedRootSet isolate_roots(const IntPolynomial& f, long precision_bits, long cap_bits) {
  if (f.is_zero()) fail(ErrorCode::ZeroPolynomial, "cannot isolate roots of the zero polynomial");
  if (f.degree() < 1) fail(ErrorCode::DegreeTooSmall, "constant polynomial has no roots");
  if (precision_bits < 2) precision_bits = 2;
  const int v = f.zero_root_multiplicity();
  std::vector<FactorState> fs = factor_states(strip_zero_roots(f, v));
  for (auto& st : fs) seed_factor(st, precision_bits);
  long prec = certify_all(fs, v > 0, precision_bits, cap_bits);
  if (prec == 0) {
    fail(ErrorCode::PrecisionCapExceeded,
         "root isolation of " + f.to_string() + " not certified within " + std::to_string(cap_bits) + " bits");
  }
  sturm_cross_check(fs);
  CertifiedRootSet set = assemble(f, fs, v, prec);
  normalize_symmetry(set, prec);
  return set;
}

CertifiedRootSet refine(const CertifiedRootSet& set, const BigFloat& target_radius, long cap_bits) {
  if (!(target_radius > BigFloat(0.0, 64))) fail(ErrorCode::BadParameters, "target radius must be positive");
  bool done = true;
  for (const auto& d : set.disks) done = done && !(d.radius > target_radius);
  if (done) return set;

  const IntPolynomial& f = set.polynomial;
  const int v = f.zero_root_multiplicity();
  std::vector<FactorState> fs = factor_states(strip_zero_roots(f, v));
  for (const auto& d : set.disks) {
    if (d.factor_index < 0) continue;
    fs[static_cast<size_t>(d.factor_index)].z.push_back({d.center_re, d.center_im});
  }
  std::vector<BigFloat> target{target_radius};
  long start = std::max<long>(set.precision_bits * 2, 2);
  long prec = 0;
  long p = start;
  for (; p <= cap_bits; p *= 2) {
    prec = certify_all(fs, v > 0, p, p, &target);
    if (prec != 0) break;
  }
  if (prec == 0) {
    // Best effort at the cap for the partial result.
    CertifiedRootSet partial = set;
    long last = certify_all(fs, v > 0, cap_bits, cap_bits);
    if (last != 0) {
      partial = assemble(f, fs, v, last);
      normalize_symmetry(partial, last);
    }
    partial.status = RootSetStatus::RefinementCapReached;
    throw RefinementCapExceeded("refinement of " + f.to_string() + " to the requested radius exceeds " +
                                    std::to_string(cap_bits) + " bits",
                                std::move(partial));
  }
  CertifiedRootSet out = assemble(f, fs, v, prec);
  normalize_symmetry(out, prec);
  for (const auto& d : out.disks) {
    if (d.radius > target_radius) {
      // Symmetrization may widen a disk slightly; fall back to the raw disks.
      out = assemble(f, fs, v, prec);
      break;
    }
  }
  return out;
}

mpq_class modulus_separation_bound(const IntPolynomial& f) {
  if (f.is_zero()) fail(ErrorCode::ZeroPolynomial, "separation bound of the zero polynomial");
  if (f.degree() < 1) fail(ErrorCode::DegreeTooSmall, "separation bound needs degree >= 1");
  IntPolynomial g = strip_zero_roots(f, f.zero_root_multiplicity());
  if (g.degree() < 1) return 1;
  IntPolynomial q = squarefree_part(ordered_pair_product_poly(g));
  const int d = q.degree();
  if (d < 2) return 1;
  mpz_class norm_sq = 0;
  for (const auto& c : q.powers()) norm_sq += c * c;
  const long prec = 128;
  mpz_class dpow;
  mpz_ui_pow_ui(dpow.get_mpz_t(), static_cast<unsigned long>(d), static_cast<unsigned long>(d + 2));
  mpz_class npow;
  mpz_pow_ui(npow.get_mpz_t(), norm_sq.get_mpz_t(), static_cast<unsigned long>(d - 1));
  // sqrt(3) / (sqrt(d^{d+2}) sqrt(||Q||^{2(d-1)})), rounded down.
  BigFloat num = BigFloat::sqrt(BigFloat(3.0, prec), Round::Down);
  BigFloat den = BigFloat::mul(BigFloat::sqrt(BigFloat(dpow, prec, Round::Up), Round::Up),
                               BigFloat::sqrt(BigFloat(npow, prec, Round::Up), Round::Up), Round::Up);
  return BigFloat::div(num, den, Round::Down).to_rational();
}

ModulusSquared modulus_squared(const RootDisk& d) {
  const long prec = std::max<long>(d.center_re.precision(), 64);
  BigFloat zero(0.0, prec);
  if (d.center_re.is_zero() && d.center_im.is_zero() && d.radius.is_zero()) return {zero, zero};
  BigFloat m_lo = BigFloat::hypot(d.center_re, d.center_im, Round::Down);
  BigFloat m_hi = BigFloat::hypot(d.center_re, d.center_im, Round::Up);
  BigFloat lo = BigFloat::sub(m_lo, d.radius, Round::Down);
  if (lo.sign() < 0) lo = zero;
  BigFloat hi = BigFloat::add(m_hi, d.radius, Round::Up);
  return {BigFloat::mul(lo, lo, Round::Down), BigFloat::mul(hi, hi, Round::Up)};
}

MahlerEnclosure mahler_measure(const CertifiedRootSet& set) {
  const long prec = 64;
  const IntPolynomial& f = set.polynomial;
  BigFloat lead(mpz_class(abs(f.leading())), prec);
  BigFloat lo(lead), hi(lead);
  BigFloat one(1.0, prec);
  for (const auto& d : set.disks) {
    ModulusSquared m = modulus_squared(d);
    BigFloat mlo = BigFloat::max(one, BigFloat::sqrt(m.lo, Round::Down));
    BigFloat mhi = BigFloat::max(one, BigFloat::sqrt(m.hi, Round::Up));
    for (int k = 0; k < d.multiplicity; ++k) {
      lo = BigFloat::mul(lo, mlo, Round::Down);
      hi = BigFloat::mul(hi, mhi, Round::Up);
    }
  }
  return {lo.to_double(Round::Down), hi.to_double(Round::Up)};
}

std::optional<FastIsolation> isolate_fast(const std::vector<double>& c) {
  const int n = static_cast<int>(c.size()) - 1;
  if (n < 1 || c.back() == 0.0 || c.front() == 0.0) return std::nullopt;
  auto z = detail::circle_guesses<double>(n, guess_radius(c), coefficient_seed(c), 53);
  detail::aberth_iterate<double>(c, z, 60 + 10 * n, 53);
  std::vector<double> r;
  if (!detail::certify_radii<double>(c, z, r, 53)) return std::nullopt;
  if (!detail::all_disjoint<double>(z, r, 53)) return std::nullopt;
  detail::Realness real = detail::classify_realness<double>(z, r, 53);
  if (!real.complete) return std::nullopt;
  FastIsolation out;
  out.radii = std::move(r);
  out.conjugate_of = real.partner;
  for (int i = 0; i < n; ++i) {
    out.centers.emplace_back(z[static_cast<size_t>(i)].re, z[static_cast<size_t>(i)].im);
    out.is_real.push_back(real.flags[static_cast<size_t>(i)] == detail::RealFlag::Real);
  }
  return out;
}

namespace {

// Upper bound on the rounding error of a product of two balls' centers.
BigFloat product_slack(const BigFloat& amag, const BigFloat& bmag, long prec) {
  BigFloat u = BigFloat::pow2(3 - prec, prec);
  return BigFloat::mul(BigFloat::mul(amag, bmag, Round::Up), u, Round::Up);
}

}  // namespace

ComplexBall eval_at(const IntPolynomial& f, const ComplexBall& x) {
  const long prec = std::max<long>({x.re.precision(), x.im.precision(), 64});
  BigFloat zero(0.0, prec);
  if (f.is_zero()) return {zero, zero, zero};
  const BigFloat xmag = BigFloat::add(BigFloat::hypot(x.re, x.im, Round::Up), zero, Round::Up);
  const BigFloat u = BigFloat::pow2(2 - prec, prec);
  ComplexBall acc{BigFloat(f.leading(), prec), zero, zero};
  {
    // Exact only when the coefficient fits the precision.
    BigFloat err = BigFloat::mul(BigFloat::abs(acc.re), u, Round::Up);
    acc.radius = err;
  }
  for (int k = f.degree() - 1; k >= 0; --k) {
    BigFloat amag = BigFloat::hypot(acc.re, acc.im, Round::Up);
    // (a + da)(x + dx) = a x + a dx + x da + da dx
    BigFloat re = acc.re * x.re - acc.im * x.im;
    BigFloat im = acc.re * x.im + acc.im * x.re;
    BigFloat rad = BigFloat::mul(amag, x.radius, Round::Up);
    rad = BigFloat::add(rad, BigFloat::mul(xmag, acc.radius, Round::Up), Round::Up);
    rad = BigFloat::add(rad, BigFloat::mul(acc.radius, x.radius, Round::Up), Round::Up);
    rad = BigFloat::add(rad, product_slack(amag, xmag, prec), Round::Up);
    BigFloat ck(f.coeff(k), prec);
    BigFloat ck_err = BigFloat::mul(BigFloat::abs(ck), u, Round::Up);
    re = re + ck;
    BigFloat sum_err = BigFloat::mul(BigFloat::add(BigFloat::abs(re), BigFloat::abs(ck), Round::Up), u, Round::Up);
    rad = BigFloat::add(rad, BigFloat::add(ck_err, sum_err, Round::Up), Round::Up);
    acc = {std::move(re), std::move(im), std::move(rad)};
  }
  return acc;
}

}  // namespace polycensus
