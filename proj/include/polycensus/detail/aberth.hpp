#pragma once

#include <cstdint>
#include <vector>

#include "polycensus/detail/numeric.hpp"

namespace polycensus::detail {

enum class RealFlag { Real, NonReal, Undecided };

// Equally spaced points on a circle of the given radius, rotated by an angle
// drawn from `seed`.
template <class R>
std::vector<Cx<R>> circle_guesses(int n, double radius, uint64_t seed, long prec) {
  std::vector<Cx<R>> z;
  z.reserve(static_cast<size_t>(n));
  // splitmix64 step for the rotation offset
  uint64_t s = seed + 0x9e3779b97f4a7c15ULL;
  s = (s ^ (s >> 30)) * 0xbf58476d1ce4e5b9ULL;
  s = (s ^ (s >> 27)) * 0x94d049bb133111ebULL;
  s ^= s >> 31;
  const double two_pi = 6.283185307179586;
  const double offset = (static_cast<double>(s >> 11) * 0x1p-53 + 0.25) * two_pi / n;
  for (int k = 0; k < n; ++k) {
    double theta = two_pi * k / n + offset;
    z.push_back({Num<R>::make(radius * std::cos(theta), prec), Num<R>::make(radius * std::sin(theta), prec)});
  }
  return z;
}

// Evaluates p(z) and p'(z) by Horner. `c` holds ascending coefficients.
template <class R>
void horner_with_derivative(const std::vector<R>& c, const Cx<R>& z, Cx<R>& p, Cx<R>& dp, long prec) {
  const int n = static_cast<int>(c.size()) - 1;
  p = {c[static_cast<size_t>(n)], Num<R>::make(0.0, prec)};
  dp = {Num<R>::make(0.0, prec), Num<R>::make(0.0, prec)};
  for (int k = n - 1; k >= 0; --k) {
    dp = dp * z + p;
    p = p * z;
    p.re = p.re + c[static_cast<size_t>(k)];
  }
}

// Aberth-Ehrlich simultaneous iteration, in place. Returns the last maximal
// relative correction as a double (for diagnostics).
template <class R>
double aberth_iterate(const std::vector<R>& c, std::vector<Cx<R>>& z, int max_iter, long prec) {
  const int n = static_cast<int>(z.size());
  const double tol = 4.0 * std::ldexp(1.0, static_cast<int>(-Num<R>::bits(prec)));
  const double noise_zone = std::ldexp(1.0, static_cast<int>(-Num<R>::bits(prec) / 2));
  const R one = Num<R>::make(1.0, prec);
  double prev = 1e300;
  int stalls = 0;
  double worst = 0.0;
  for (int it = 0; it < max_iter; ++it) {
    worst = 0.0;
    for (int i = 0; i < n; ++i) {
      Cx<R> p, dp;
      horner_with_derivative(c, z[static_cast<size_t>(i)], p, dp, prec);
      if (p.re == Num<R>::make(0.0, prec) && p.im == Num<R>::make(0.0, prec)) continue;
      Cx<R> sum{Num<R>::make(0.0, prec), Num<R>::make(0.0, prec)};
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        Cx<R> d = z[static_cast<size_t>(i)] - z[static_cast<size_t>(j)];
        sum = sum + Cx<R>{one, Num<R>::make(0.0, prec)} / d;
      }
      Cx<R> newton = p / dp;
      Cx<R> denom = Cx<R>{one, Num<R>::make(0.0, prec)} - newton * sum;
      Cx<R> delta = newton / denom;
      if (!Num<R>::finite(delta.re) || !Num<R>::finite(delta.im)) {
        // Degenerate step: nudge the approximation and keep going.
        R mag = modulus(z[static_cast<size_t>(i)]);
        R nudge = Num<R>::make(1e-3, prec) * (mag + one);
        z[static_cast<size_t>(i)].re = z[static_cast<size_t>(i)].re + nudge;
        z[static_cast<size_t>(i)].im = z[static_cast<size_t>(i)].im + nudge;
        worst = 1.0;
        continue;
      }
      z[static_cast<size_t>(i)] = z[static_cast<size_t>(i)] - delta;
      double rel = Num<R>::to_double(modulus(delta)) / (Num<R>::to_double(modulus(z[static_cast<size_t>(i)])) + 1e-300);
      if (rel > worst) worst = rel;
    }
    if (worst <= tol) break;
    if (worst < noise_zone) {
      stalls = (worst > 0.5 * prev) ? stalls + 1 : 0;
      if (stalls >= 2) break;
    }
    prev = worst;
  }
  return worst;
}

// Certified inclusion radii. With w_i = p(z_i) / (a_0 prod_{j != i}(z_i - z_j))
// the matrix diag(z) - w 1^T has characteristic polynomial p / a_0, so by
// Gerschgorin every root lies in the union of D(z_i - w_i, (n-1)|w_i|) and a
// connected component of k such disks holds exactly k roots. We return radii
// of the enclosing disks D(z_i, n |w_i|), with every floating-point error in
// |p(z_i)|, the product and the division bounded by explicit inflation.
// Returns false if some radius could not be bounded (coincident centers).
template <class R>
bool certify_radii(const std::vector<R>& c, const std::vector<Cx<R>>& z, std::vector<R>& radii, long prec) {
  const int n = static_cast<int>(z.size());
  const R u = Num<R>::unit(prec);
  const R one = Num<R>::make(1.0, prec);
  const R zero = Num<R>::make(0.0, prec);
  const R horner_err = u * Num<R>::make(8.0 * n + 8.0, prec);
  const R up4 = one + u * Num<R>::make(4.0, prec);
  const R up8 = one + u * Num<R>::make(8.0, prec);
  const R dn = one - u * Num<R>::make(4.0 * n + 8.0, prec);
  const R lead = Num<R>::abs(c.back());
  radii.assign(static_cast<size_t>(n), zero);
  for (int i = 0; i < n; ++i) {
    const Cx<R>& zi = z[static_cast<size_t>(i)];
    const R zabs = modulus(zi) * up4;
    // p(z_i) and the absolute-value majorant sum |c_k| |z|^k.
    Cx<R> p{c.back(), zero};
    R s = Num<R>::abs(c.back());
    for (int k = n - 1; k >= 0; --k) {
      p = p * zi;
      p.re = p.re + c[static_cast<size_t>(k)];
      s = s * zabs + Num<R>::abs(c[static_cast<size_t>(k)]);
    }
    s = s * (one + u * Num<R>::make(4.0 * n + 8.0, prec));
    R pup = modulus(p) * up4 + horner_err * s;
    R den = lead;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      den = den * modulus(zi - z[static_cast<size_t>(j)]);
    }
    den = den * dn;
    if (!(den > zero) || !Num<R>::finite(den) || !Num<R>::finite(pup)) return false;
    radii[static_cast<size_t>(i)] = Num<R>::make(static_cast<double>(n), prec) * pup / den * up8;
    if (!Num<R>::finite(radii[static_cast<size_t>(i)])) return false;
  }
  return true;
}

// Lower bound on |a - b|.
template <class R>
R distance_lower(const Cx<R>& a, const Cx<R>& b, long prec) {
  const R u = Num<R>::unit(prec);
  return modulus(a - b) * (Num<R>::make(1.0, prec) - u * Num<R>::make(6.0, prec));
}

// Upper bound on r1 + r2.
template <class R>
R radius_sum_upper(const R& r1, const R& r2, long prec) {
  const R u = Num<R>::unit(prec);
  return (r1 + r2) * (Num<R>::make(1.0, prec) + u * Num<R>::make(2.0, prec));
}

template <class R>
bool disks_disjoint(const Cx<R>& a, const R& ra, const Cx<R>& b, const R& rb, long prec) {
  return distance_lower(a, b, prec) > radius_sum_upper(ra, rb, prec);
}

template <class R>
bool all_disjoint(const std::vector<Cx<R>>& z, const std::vector<R>& r, long prec) {
  for (size_t i = 0; i < z.size(); ++i) {
    for (size_t j = i + 1; j < z.size(); ++j) {
      if (!disks_disjoint(z[i], r[i], z[j], r[j], prec)) return false;
    }
  }
  return true;
}

template <class R>
bool misses_real_axis(const Cx<R>& c, const R& r, long prec) {
  const R u = Num<R>::unit(prec);
  return Num<R>::abs(c.im) > r * (Num<R>::make(1.0, prec) + u * Num<R>::make(2.0, prec));
}

struct Realness {
  std::vector<RealFlag> flags;
  std::vector<int> partner;  // conjugate partner for non-real disks, -1 otherwise
  bool complete = true;
};

// For a real polynomial whose disks are pairwise disjoint and each hold one
// simple root: a disk whose mirror image meets no other disk holds a real
// root (a non-real root would put its conjugate in some other disk), and a
// disk missing the real axis holds a non-real root whose conjugate lies in
// the unique disk meeting the mirror image.
template <class R>
Realness classify_realness(const std::vector<Cx<R>>& z, const std::vector<R>& r, long prec) {
  const size_t n = z.size();
  Realness out;
  out.flags.assign(n, RealFlag::Undecided);
  out.partner.assign(n, -1);
  std::vector<std::vector<int>> mirror_hits(n);
  for (size_t i = 0; i < n; ++i) {
    Cx<R> mirror = conj(z[i]);
    for (size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      if (!disks_disjoint(mirror, r[i], z[j], r[j], prec)) mirror_hits[i].push_back(static_cast<int>(j));
    }
  }
  for (size_t i = 0; i < n; ++i) {
    if (misses_real_axis(z[i], r[i], prec)) {
      out.flags[i] = RealFlag::NonReal;
      if (mirror_hits[i].size() == 1) out.partner[i] = mirror_hits[i][0];
    } else if (mirror_hits[i].empty()) {
      out.flags[i] = RealFlag::Real;
    }
  }
  for (size_t i = 0; i < n; ++i) {
    if (out.flags[i] == RealFlag::Undecided) {
      out.complete = false;
      continue;
    }
    if (out.flags[i] == RealFlag::NonReal) {
      int j = out.partner[i];
      if (j < 0 || out.flags[static_cast<size_t>(j)] != RealFlag::NonReal || out.partner[static_cast<size_t>(j)] != static_cast<int>(i)) {
        out.complete = false;
      }
    }
  }
  return out;
}

}  // namespace polycensus::detail
