#include <algorithm>

#include "polycensus/classify.hpp"
#include "polycensus/error.hpp"
#include "polycensus/poly_algebra.hpp"
#include "polycensus/prime_field.hpp"

namespace polycensus {

namespace {

const std::vector<uint64_t>& prime_table(uint64_t bound) {
  // Built once, shared read-only; grows only under the static init lock.
  static const std::vector<uint64_t> table = fp::primes_up_to(100000);
  if (bound > 100000) {
    thread_local std::vector<uint64_t> big;
    if (big.empty() || big.back() < bound) big = fp::primes_up_to(bound);
    return big;
  }
  return table;
}

enum class Scan { Certified, Undecided, Reducible };

// Collects Frobenius cycle types until {n}, {1, n-1} and {1, ..., 1, 2} are
// all present. An n-cycle pattern also proves irreducibility.
Scan scan_patterns(const IntPolynomial& g, uint64_t prime_bound, std::vector<SnWitness>* witnesses) {
  const int n = g.degree();
  const mpz_class bad = g.leading() * discriminant(g);
  bool full = false, almost = false, transposition = false;
  std::vector<int> want_almost{1, n - 1};
  std::vector<int> want_transposition(static_cast<size_t>(n - 1), 1);
  want_transposition.back() = 2;
  std::sort(want_almost.begin(), want_almost.end());
  for (uint64_t p : prime_table(prime_bound)) {
    if (p > prime_bound) break;
    if (mpz_divisible_ui_p(bad.get_mpz_t(), p)) continue;
    const fp::Field F{p};
    std::vector<int> pattern = fp::factor_degree_pattern(F, fp::reduce(g, p));
    bool useful = false;
    if (!full && pattern.size() == 1) full = useful = true;
    if (!almost && pattern == want_almost) almost = useful = true;
    if (!transposition && pattern == want_transposition) transposition = useful = true;
    if (useful && witnesses) witnesses->push_back({p, pattern});
    if (full && almost && transposition) return Scan::Certified;
  }
  return Scan::Undecided;
}

}  // namespace

SnCertificate sn_certificate(const IntPolynomial& f, uint64_t prime_bound) {
  if (f.is_zero()) fail(ErrorCode::ZeroPolynomial, "Galois certificate of the zero polynomial");
  if (f.degree() < 2) fail(ErrorCode::DegreeTooSmall, "Galois certificate needs degree >= 2");
  IntPolynomial g = primitive_part(f);
  SnCertificate cert;
  if (discriminant(g) == 0) fail(ErrorCode::NotIrreducible, f.to_string() + " is not squarefree");
  if (g.degree() == 2) {
    if (!factorize(g).irreducible) fail(ErrorCode::NotIrreducible, f.to_string() + " is reducible");
    cert.verdict = SnVerdict::CertifiedSn;
    return cert;
  }
  Scan s = scan_patterns(g, prime_bound, &cert.witnesses);
  if (s == Scan::Certified) {
    cert.verdict = SnVerdict::CertifiedSn;
    return cert;
  }
  const bool saw_full = std::any_of(cert.witnesses.begin(), cert.witnesses.end(),
                                    [](const SnWitness& w) { return w.pattern.size() == 1; });
  if (!saw_full && g.degree() <= 64 && !factorize(g, 64).irreducible) {
    fail(ErrorCode::NotIrreducible, f.to_string() + " is reducible");
  }
  cert.verdict = SnVerdict::Undecided;
  return cert;
}

SnVerdict sn_verdict(const IntPolynomial& f, uint64_t prime_bound) {
  if (f.is_zero() || f.degree() < 2) return SnVerdict::Undecided;
  IntPolynomial g = primitive_part(f);
  if (discriminant(g) == 0) return SnVerdict::Undecided;
  if (g.degree() == 2) return factorize(g).irreducible ? SnVerdict::CertifiedSn : SnVerdict::Undecided;
  return scan_patterns(g, prime_bound, nullptr) == Scan::Certified ? SnVerdict::CertifiedSn : SnVerdict::Undecided;
}

}  // namespace polycensus
