#include "polycensus/classify.hpp"

#include <algorithm>
#include <numeric>

#include "polycensus/detail/aberth.hpp"
#include "polycensus/error.hpp"
#include "polycensus/poly_algebra.hpp"
#include "polycensus/sturm.hpp"

namespace polycensus {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[static_cast<size_t>(x)] != x) {
      parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
      x = parent[static_cast<size_t>(x)];
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[static_cast<size_t>(std::max(a, b))] = std::min(a, b);
  }
};

// A class of roots known to share one modulus.
struct ModClass {
  int id = 0;
  int weight = 0;  // roots with multiplicity
  BigFloat lo, hi;  // intersection of member enclosures of |alpha|^2
};

std::vector<ModClass> build_classes(const CertifiedRootSet& set, UnionFind& uf) {
  std::vector<ModClass> classes;
  std::vector<int> slot(set.disks.size(), -1);
  for (size_t i = 0; i < set.disks.size(); ++i) {
    const RootDisk& d = set.disks[i];
    if (d.factor_index < 0) continue;  // zero root handled apart
    ModulusSquared m = modulus_squared(d);
    int root = uf.find(static_cast<int>(i));
    int& s = slot[static_cast<size_t>(root)];
    if (s < 0) {
      s = static_cast<int>(classes.size());
      classes.push_back({root, 0, m.lo, m.hi});
    }
    ModClass& c = classes[static_cast<size_t>(s)];
    c.weight += d.multiplicity;
    c.lo = BigFloat::max(c.lo, m.lo);
    c.hi = BigFloat::min(c.hi, m.hi);
  }
  return classes;
}

// Weight of the extreme class when it is certainly separated from the
// others; 0 when some other class still overlaps.
int resolve_extreme(const std::vector<ModClass>& classes, bool top) {
  if (classes.empty()) return 0;
  size_t best = 0;
  for (size_t i = 1; i < classes.size(); ++i) {
    if (top ? classes[i].lo > classes[best].lo : classes[i].hi < classes[best].hi) best = i;
  }
  for (size_t i = 0; i < classes.size(); ++i) {
    if (i == best) continue;
    bool overlap = top ? !(classes[i].hi < classes[best].lo) : !(classes[i].lo > classes[best].hi);
    if (overlap) return 0;
  }
  return classes[best].weight;
}

IntPolynomial strip_zero(const IntPolynomial& f, int v) {
  if (v == 0) return f;
  std::vector<mpz_class> c(f.powers().begin() + v, f.powers().end());
  return IntPolynomial::from_powers(std::move(c));
}

bool disk_meets(const RootDisk& d, const BigFloat& re, const BigFloat& im, const BigFloat& r) {
  const long prec = d.center_re.precision();
  detail::Cx<BigFloat> a{d.center_re, d.center_im}, b{re, im};
  return !detail::disks_disjoint<BigFloat>(a, d.radius, b, r, prec);
}

// Joins roots alpha and -alpha using the exact common part of G(X), G(-X).
void join_opposite_roots(const CertifiedRootSet& set, const IntPolynomial& g, const RootsConfig& cfg, UnionFind& uf) {
  IntPolynomial G = squarefree_part(g);
  IntPolynomial common = subresultant_gcd(G, negate_variable(G));
  if (common.degree() < 1) return;
  CertifiedRootSet cs = isolate_roots(common, std::max(cfg.initial_bits, set.precision_bits), cfg.cap_bits);
  for (const auto& d : cs.disks) {
    int here = -1, there = -1, hits_here = 0, hits_there = 0;
    BigFloat nre = -d.center_re, nim = -d.center_im;
    for (size_t i = 0; i < set.disks.size(); ++i) {
      if (set.disks[i].factor_index < 0) continue;
      if (disk_meets(set.disks[i], d.center_re, d.center_im, d.radius)) {
        here = static_cast<int>(i);
        ++hits_here;
      }
      if (disk_meets(set.disks[i], nre, nim, d.radius)) {
        there = static_cast<int>(i);
        ++hits_there;
      }
    }
    if (hits_here == 1 && hits_there == 1) uf.unite(here, there);
  }
}

}  // namespace

bool quadratic_moduli_tied(long long a, long long b, long long c) {
  (void)a;
  if (b == 0) return true;
  // disc <= 0 with 128-bit headroom
  __int128 disc = static_cast<__int128>(b) * b - static_cast<__int128>(4) * a * c;
  return disc <= 0;
}

ModulusProfile modulus_profile(const IntPolynomial& f, const RootsConfig& cfg) {
  if (f.is_zero()) fail(ErrorCode::ZeroPolynomial, "modulus profile of the zero polynomial");
  const int n = f.degree();
  if (n < 1) fail(ErrorCode::DegreeTooSmall, "modulus profile needs degree >= 1");
  ModulusProfile prof;
  auto finish = [&](int kmax, int kmin, ProfileDecision dec) {
    prof.k_max = kmax;
    prof.k_min = kmin;
    prof.dominant = kmax == 1;
    prof.decision = dec;
    return prof;
  };
  if (n == 1) return finish(1, 1, ProfileDecision::Exact);
  const int v = f.zero_root_multiplicity();
  if (v == n) return finish(n, n, ProfileDecision::Exact);
  if (n == 2) {
    mpz_class b = f.coeff(1);
    mpz_class disc = b * b - 4 * f.coeff(2) * f.coeff(0);
    int k = (b == 0 || disc <= 0) ? 2 : 1;
    return finish(k, k, ProfileDecision::Exact);
  }

  CertifiedRootSet set = isolate_roots(f, cfg);
  UnionFind uf(set.disks.size());
  for (size_t i = 0; i < set.disks.size(); ++i) {
    if (set.disks[i].conjugate_of >= 0) uf.unite(static_cast<int>(i), set.disks[i].conjugate_of);
  }
  ProfileDecision decision = ProfileDecision::NumericCertified;
  std::vector<ModClass> classes = build_classes(set, uf);
  int kmax = resolve_extreme(classes, true);
  int kmin = v > 0 ? v : resolve_extreme(classes, false);

  const IntPolynomial g = strip_zero(f, v);
  if (kmax == 0 || kmin == 0) {
    join_opposite_roots(set, g, cfg, uf);
    classes = build_classes(set, uf);
    decision = ProfileDecision::Exact;
    if (kmax == 0) kmax = resolve_extreme(classes, true);
    if (kmin == 0) kmin = resolve_extreme(classes, false);
  }
  if (kmax == 0 || kmin == 0) {
    // Refine until enclosures are narrower than a quarter of the modulus
    // separation bound; overlapping classes are then exactly tied.
    const mpq_class sep = modulus_separation_bound(f);
    const long prec0 = 64;
    BigFloat quarter = BigFloat::div(BigFloat(sep, prec0, Round::Down), BigFloat(4.0, prec0), Round::Down);
    BigFloat bound = BigFloat(fujiwara_bound(f), prec0) + BigFloat(1.0, prec0);
    BigFloat target = BigFloat::div(quarter, BigFloat::mul(bound, BigFloat(4.0, prec0), Round::Up), Round::Down);
    for (int attempt = 0;; ++attempt) {
      set = refine(set, target, cfg.cap_bits);
      classes = build_classes(set, uf);
      bool narrow = true;
      for (const auto& c : classes) narrow = narrow && (BigFloat::sub(c.hi, c.lo, Round::Up) < quarter);
      if (narrow) break;
      if (attempt > 8) fail(ErrorCode::PrecisionCapExceeded, "modulus enclosures did not narrow for " + f.to_string());
      target = BigFloat::div(target, BigFloat(16.0, prec0), Round::Down);
    }
    // Merge overlapping classes transitively.
    for (bool merged = true; merged;) {
      merged = false;
      for (size_t i = 0; i < classes.size() && !merged; ++i) {
        for (size_t j = i + 1; j < classes.size() && !merged; ++j) {
          if (!(classes[i].hi < classes[j].lo) && !(classes[j].hi < classes[i].lo)) {
            uf.unite(classes[i].id, classes[j].id);
            classes = build_classes(set, uf);
            merged = true;
          }
        }
      }
    }
    kmax = resolve_extreme(classes, true);
    if (v == 0) kmin = resolve_extreme(classes, false);
    decision = ProfileDecision::Exact;
    if (kmax == 0 || kmin == 0) throw std::logic_error("modulus classes unresolved after separation refinement");
  }
  if (v > 0 && classes.size() == 0) kmax = v;
  return finish(kmax, kmin, decision);
}

RootSignature root_signature(const IntPolynomial& f) {
  if (f.is_zero()) fail(ErrorCode::ZeroPolynomial, "root signature of the zero polynomial");
  const int n = f.degree();
  if (n < 1) fail(ErrorCode::DegreeTooSmall, "root signature needs degree >= 1");
  SquarefreeDecomposition dec = squarefree_decomposition(f);
  int r = 0;
  for (const auto& sf : dec.factors) {
    if (sf.factor.degree() < 1) continue;
    r += sf.multiplicity * distinct_real_root_count(sf.factor);
  }
  return {r, (n - r) / 2};
}

RelationResult multiplicative_relation(const IntPolynomial& f) {
  if (f.is_zero()) fail(ErrorCode::ZeroPolynomial, "relation test of the zero polynomial");
  const int n = f.degree();
  if (n < 4) fail(ErrorCode::DegreeTooSmall, "the relation a1 a2 = a3 a4 needs degree >= 4");
  if (discriminant(f) == 0) return {true, "repeated-root"};
  // With a zero root, 0 * alpha_j vanishes for n - 1 >= 3 partners.
  if (f.constant_term() == 0) return {true, "zero-root"};
  if (n >= 5) {
    // Certified numeric filter: disjoint product enclosures settle FALSE.
    CertifiedRootSet set = isolate_roots(f);
    const long prec = set.precision_bits;
    std::vector<detail::Cx<BigFloat>> c;
    std::vector<BigFloat> r;
    const BigFloat slack = BigFloat::pow2(6 - prec, prec);
    for (size_t i = 0; i < set.disks.size(); ++i) {
      for (size_t j = i + 1; j < set.disks.size(); ++j) {
        const RootDisk& a = set.disks[i];
        const RootDisk& b = set.disks[j];
        detail::Cx<BigFloat> ca{a.center_re, a.center_im}, cb{b.center_re, b.center_im};
        detail::Cx<BigFloat> p = ca * cb;
        BigFloat ma = BigFloat::hypot(ca.re, ca.im, Round::Up);
        BigFloat mb = BigFloat::hypot(cb.re, cb.im, Round::Up);
        BigFloat rad = BigFloat::add(BigFloat::mul(ma, b.radius, Round::Up), BigFloat::mul(mb, a.radius, Round::Up),
                                     Round::Up);
        rad = BigFloat::add(rad, BigFloat::mul(a.radius, b.radius, Round::Up), Round::Up);
        rad = BigFloat::add(rad, BigFloat::mul(BigFloat::mul(ma, mb, Round::Up), slack, Round::Up), Round::Up);
        c.push_back(p);
        r.push_back(rad);
      }
    }
    if (detail::all_disjoint<BigFloat>(c, r, prec)) return {false, "numeric-distinct"};
  }
  IntPolynomial R = root_product_poly(f);
  if (discriminant(R) == 0) return {true, "pair-products-coincide"};
  return {false, "none"};
}

bool has_multiplicative_relation(const IntPolynomial& f) { return multiplicative_relation(f).value; }

std::pair<bool, int> is_power_substitution_structured(const IntPolynomial& f) {
  if (f.is_zero()) fail(ErrorCode::ZeroPolynomial, "power substitution of the zero polynomial");
  PowerSubstitution ps = power_substitution(f);
  return {ps.m >= 2, ps.m};
}

}  // namespace polycensus
