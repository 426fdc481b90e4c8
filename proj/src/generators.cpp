#include "polycensus/generators.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <memory>
#include <random>
#include <sstream>

#include "polycensus/classify.hpp"
#include "polycensus/error.hpp"
#include "polycensus/roots.hpp"

namespace polycensus {

namespace {

constexpr long kPrec = 256;

struct RootData {
  mpq_class re, im;
  BigFloat rad;
  int mult = 1;
};

BigFloat sqrt_of(const mpq_class& q, Round rnd) { return BigFloat::sqrt(BigFloat(q, kPrec, rnd), rnd); }

mpz_class floor_q(const mpq_class& q) {
  mpz_class r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

mpz_class ceil_q(const mpq_class& q) {
  mpz_class r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

PerturbationBounds bounds_from(const mpq_class& lead, const std::vector<RootData>& roots, std::optional<double> gamma_in) {
  const size_t m = roots.size();
  int n = 0;
  for (const auto& r : roots) n += r.mult;
  const BigFloat zero(0.0, kPrec);
  std::vector<std::vector<BigFloat>> dist(m, std::vector<BigFloat>(m, zero));
  std::optional<BigFloat> min_gap;
  for (size_t i = 0; i < m; ++i) {
    for (size_t j = i + 1; j < m; ++j) {
      mpq_class dr = roots[i].re - roots[j].re, di = roots[i].im - roots[j].im;
      BigFloat d = sqrt_of(dr * dr + di * di, Round::Down);
      d = BigFloat::sub(d, BigFloat::add(roots[i].rad, roots[j].rad, Round::Up), Round::Down);
      if (d.sign() <= 0) fail(ErrorCode::TargetNotSeparated, "roots could not be certified distinct");
      dist[i][j] = dist[j][i] = d;
      min_gap = min_gap ? BigFloat::min(*min_gap, d) : d;
    }
  }
  PerturbationBounds b;
  if (gamma_in) {
    if (!(*gamma_in > 0.0) || !std::isfinite(*gamma_in)) fail(ErrorCode::BadParameters, "gamma must be positive");
    b.gamma = BigFloat(*gamma_in, kPrec);
  } else {
    b.gamma = min_gap ? BigFloat::div(*min_gap, BigFloat(4.0, kPrec), Round::Down) : BigFloat(0.5, kPrec);
  }
  if (min_gap && !(BigFloat::mul(b.gamma, BigFloat(2.0, kPrec), Round::Up) < *min_gap)) {
    fail(ErrorCode::GammaTooLarge, "gamma " + b.gamma.to_string(12) + " is not below half the minimal root gap " +
                                       BigFloat::div(*min_gap, BigFloat(2.0, kPrec), Round::Up).to_string(12));
  }
  const BigFloat one(1.0, kPrec);
  const BigFloat a0(abs(lead), kPrec, Round::Down);
  std::optional<BigFloat> M, delta;
  for (size_t j = 0; j < m; ++j) {
    BigFloat modulus = BigFloat::add(sqrt_of(roots[j].re * roots[j].re + roots[j].im * roots[j].im, Round::Up),
                                     roots[j].rad, Round::Up);
    BigFloat base = BigFloat::add(b.gamma, modulus, Round::Up);
    BigFloat sum = one, power = one;
    for (int i = 1; i <= n; ++i) {
      power = BigFloat::mul(power, base, Round::Up);
      sum = BigFloat::add(sum, power, Round::Up);
    }
    M = M ? BigFloat::max(*M, sum) : sum;
    BigFloat d = BigFloat::mul(a0, BigFloat::pow_ui(b.gamma, static_cast<unsigned long>(roots[j].mult), Round::Down),
                               Round::Down);
    for (size_t i = 0; i < m; ++i) {
      if (i == j) continue;
      BigFloat gap = BigFloat::sub(dist[i][j], b.gamma, Round::Down);
      d = BigFloat::mul(d, BigFloat::pow_ui(gap, static_cast<unsigned long>(roots[i].mult), Round::Down), Round::Down);
    }
    delta = delta ? BigFloat::min(*delta, d) : d;
  }
  b.M = *M;
  b.delta = *delta;
  b.eps = BigFloat::div(b.delta, b.M, Round::Down);
  if (b.eps.sign() <= 0) fail(ErrorCode::TargetNotSeparated, "perturbation radius underflowed");
  return b;
}

}  // namespace

// ---------------------------------------------------------------------------
// Targets

TargetSpec TargetSpec::parse(const std::string& text) {
  TargetSpec t;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ';')) {
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    double re = 0, im = 0;
    auto comma = item.find(',');
    try {
      size_t used = 0;
      std::string a = item.substr(0, comma);
      re = std::stod(a, &used);
      if (a.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(a);
      if (comma != std::string::npos) {
        std::string b = item.substr(comma + 1);
        im = std::stod(b, &used);
        if (b.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(b);
      }
    } catch (const std::exception&) {
      fail(ErrorCode::ParseError, "bad target point '" + item + "'");
    }
    t.points.emplace_back(re, im);
  }
  if (t.points.empty()) fail(ErrorCode::ParseError, "empty target");
  return t;
}

void TargetSpec::validate() const {
  if (points.empty()) fail(ErrorCode::BadParameters, "empty target");
  for (const auto& p : points) {
    if (!std::isfinite(p.real()) || !std::isfinite(p.imag())) fail(ErrorCode::BadParameters, "non-finite target point");
  }
  for (size_t i = 0; i < points.size(); ++i) {
    for (size_t j = i + 1; j < points.size(); ++j) {
      if (points[i] == points[j]) fail(ErrorCode::TargetNotSeparated, "target has a repeated point");
    }
  }
  for (const auto& p : points) {
    if (std::find(points.begin(), points.end(), std::conj(p)) == points.end()) {
      fail(ErrorCode::BadParameters, "target is not closed under conjugation");
    }
  }
}

std::vector<mpq_class> TargetSpec::monic_coefficients() const {
  validate();
  // ascending complex coefficients as (re, im) rational pairs
  std::vector<mpq_class> re{1}, im{0};
  for (const auto& p : points) {
    mpq_class pr(p.real()), pi(p.imag());
    std::vector<mpq_class> nr(re.size() + 1, 0), ni(re.size() + 1, 0);
    for (size_t k = 0; k < re.size(); ++k) {
      nr[k + 1] += re[k];
      ni[k + 1] += im[k];
      nr[k] -= pr * re[k] - pi * im[k];
      ni[k] -= pr * im[k] + pi * re[k];
    }
    re.swap(nr);
    im.swap(ni);
  }
  for (const auto& x : im) {
    if (x != 0) throw std::logic_error("conjugation-closed target produced a non-real coefficient");
  }
  std::reverse(re.begin(), re.end());
  return re;
}

PerturbationBounds perturbation_bounds(const TargetSpec& target, std::optional<double> gamma) {
  target.validate();
  std::vector<RootData> roots;
  for (const auto& p : target.points) roots.push_back({mpq_class(p.real()), mpq_class(p.imag()), BigFloat(0.0, kPrec), 1});
  return bounds_from(1, roots, gamma);
}

PerturbationBounds perturbation_bounds(const IntPolynomial& h, std::optional<double> gamma) {
  if (h.is_zero()) fail(ErrorCode::ZeroPolynomial, "perturbation bounds of the zero polynomial");
  if (h.degree() < 1) fail(ErrorCode::DegreeTooSmall, "perturbation bounds need degree >= 1");
  CertifiedRootSet set = refine(isolate_roots(h), BigFloat::pow2(-120, kPrec));
  std::vector<RootData> roots;
  for (const auto& d : set.disks) {
    roots.push_back({d.center_re.to_rational(), d.center_im.to_rational(), d.radius, d.multiplicity});
  }
  return bounds_from(mpq_class(h.leading()), roots, gamma);
}

// ---------------------------------------------------------------------------
// Streams

PolyStream stream_of(std::vector<IntPolynomial> members) {
  auto data = std::make_shared<std::vector<IntPolynomial>>(std::move(members));
  auto pos = std::make_shared<size_t>(0);
  return [data, pos]() -> std::optional<IntPolynomial> {
    if (*pos >= data->size()) return std::nullopt;
    return (*data)[(*pos)++];
  };
}

namespace {

// Lexicographic walk of integer boxes whose bounds may depend on earlier
// coordinates.
class BoxWalker {
 public:
  using Bounds = std::function<std::pair<long long, long long>(size_t pos, const std::vector<long long>& cur)>;

  BoxWalker(size_t dims, Bounds bounds) : cur_(dims), bounds_(std::move(bounds)) {}

  bool next() {
    if (done_) return false;
    if (!started_) {
      started_ = true;
      done_ = !fill_from(0);
      return !done_;
    }
    for (size_t pos = cur_.size(); pos-- > 0;) {
      auto [lo, hi] = bounds_(pos, cur_);
      (void)lo;
      while (cur_[pos] < hi) {
        ++cur_[pos];
        if (fill_from(pos + 1)) return true;
      }
    }
    done_ = true;
    return false;
  }

  const std::vector<long long>& current() const { return cur_; }

 private:
  // Sets positions >= pos to their smallest feasible values.
  bool fill_from(size_t pos) {
    if (pos == cur_.size()) return true;
    auto [lo, hi] = bounds_(pos, cur_);
    for (long long v = lo; v <= hi; ++v) {
      cur_[pos] = v;
      if (fill_from(pos + 1)) return true;
    }
    return false;
  }

  std::vector<long long> cur_;
  Bounds bounds_;
  bool started_ = false;
  bool done_ = false;
};

long long to_ll(const mpz_class& z) {
  if (!z.fits_slong_p()) fail(ErrorCode::BadParameters, "coefficient range exceeds machine integers");
  return z.get_si();
}

}  // namespace

// ---------------------------------------------------------------------------
// Near-target families

NearTargetFamily near_target_family(const TargetSpec& target, int H, const NearTargetOptions& opt) {
  if (H < 1) fail(ErrorCode::BadParameters, "height must be >= 1");
  const std::vector<mpq_class> b = target.monic_coefficients();
  const int n = target.degree();
  NearTargetFamily fam;
  fam.bounds = perturbation_bounds(target, opt.gamma);
  const mpq_class eps = fam.bounds.eps.to_rational();

  std::vector<mpq_class> weight(static_cast<size_t>(n + 1));
  if (!opt.monic) {
    fam.scale = H;
    for (auto& w : weight) w = H;
  } else {
    // largest c with c^i (|b_i| + eps) <= H for i >= 1
    double c = std::numeric_limits<double>::infinity();
    for (int i = 1; i <= n; ++i) {
      double lim = H / (std::fabs(b[static_cast<size_t>(i)].get_d()) + eps.get_d());
      c = std::min(c, std::pow(lim, 1.0 / i));
    }
    mpq_class cq(std::floor(c * 1048576.0), 1048576);
    cq.canonicalize();
    auto fits = [&](const mpq_class& s) {
      mpq_class p = 1;
      for (int i = 1; i <= n; ++i) {
        p *= s;
        if (p * (abs(b[static_cast<size_t>(i)]) + eps) > H) return false;
      }
      return true;
    };
    while (cq > 0 && !fits(cq)) cq -= mpq_class(1, 1048576);
    if (cq <= 0) fail(ErrorCode::HTooSmall, "no root scale keeps the height below H");
    fam.scale = cq;
    mpq_class p = 1;
    for (auto& w : weight) {
      w = p;
      p *= cq;
    }
  }

  fam.box_points = 1;
  fam.height_bound = 0;
  for (int i = 0; i <= n; ++i) {
    mpz_class lo, hi;
    if (opt.monic && i == 0) {
      lo = hi = 1;
    } else {
      const mpq_class& w = weight[static_cast<size_t>(i)];
      lo = floor_q(w * (b[static_cast<size_t>(i)] - eps)) + 1;
      hi = ceil_q(w * (b[static_cast<size_t>(i)] + eps)) - 1;
    }
    if (lo > hi) {
      fail(ErrorCode::HTooSmall, "coefficient interval " + std::to_string(i) + " contains no integer at H=" +
                                     std::to_string(H));
    }
    if (i == 0 && lo <= 0) fail(ErrorCode::BadParameters, "leading interval reaches zero");
    fam.ranges.emplace_back(lo, hi);
    fam.box_points *= hi - lo + 1;
    fam.height_bound = std::max(fam.height_bound, mpz_class(std::max(abs(lo), abs(hi))));
  }

  auto accept = [&](IntPolynomial f) {
    if (opt.sn_prime_bound > 0 && sn_verdict(f, opt.sn_prime_bound) != SnVerdict::CertifiedSn) {
      ++fam.discarded_undecided;
      return;
    }
    fam.members.push_back(std::move(f));
  };

  if (opt.enumerate) {
    if (opt.count == 0 && fam.box_points > 10000000) {
      fail(ErrorCode::BudgetExceeded, "near-target box has " + fam.box_points.get_str() + " points");
    }
    std::vector<std::pair<long long, long long>> r;
    for (const auto& [lo, hi] : fam.ranges) r.emplace_back(to_ll(lo), to_ll(hi));
    BoxWalker walk(r.size(), [&r](size_t pos, const std::vector<long long>&) { return r[pos]; });
    while ((opt.count == 0 || fam.members.size() < opt.count) && walk.next()) {
      accept(IntPolynomial::from_leading_first_ll(walk.current()));
    }
  } else {
    std::mt19937_64 rng(opt.seed);
    std::vector<std::uniform_int_distribution<long long>> dist;
    for (const auto& [lo, hi] : fam.ranges) dist.emplace_back(to_ll(lo), to_ll(hi));
    std::vector<long long> c(dist.size());
    const uint64_t attempts = std::max<uint64_t>(opt.count, 1) * 20;
    for (uint64_t t = 0; t < attempts && fam.members.size() < opt.count; ++t) {
      for (size_t i = 0; i < c.size(); ++i) c[i] = dist[i](rng);
      accept(IntPolynomial::from_leading_first_ll(c));
    }
  }
  return fam;
}

// ---------------------------------------------------------------------------
// The non-dominant monic family

namespace {

struct T31Bounds {
  long long a1_min;
  long long a2_min;
};

T31Bounds theorem31_check(const Theorem31Region& r) {
  if (r.n < 2) fail(ErrorCode::BadParameters, "the family needs n >= 2");
  if (r.H < 1) fail(ErrorCode::BadParameters, "height must be >= 1");
  if (!(r.delta > 0 && r.delta < 1)) fail(ErrorCode::BadParameters, "delta must lie in (0, 1)");
  if (r.no_real_roots && (r.n < 4 || r.n % 2 != 0)) {
    fail(ErrorCode::BadParameters, "the no-real-roots condition applies to even n >= 4");
  }
  const mpq_class d2h = r.delta * r.delta * r.H;
  // k = floor(delta sqrt H), the largest k with k^2 <= delta^2 H
  mpz_class k = sqrt(floor_q(d2h));
  while ((k + 1) * (k + 1) <= d2h) ++k;
  while (k * k > d2h) --k;
  mpz_class l2 = std::max(ceil_q(d2h), mpz_class(1));
  if (k < 1 || l2 > r.H) {
    fail(ErrorCode::EmptyRegion, "constraint region is empty for n=" + std::to_string(r.n) + ", H=" + std::to_string(r.H));
  }
  return {-k.get_si(), l2.get_si()};
}

}  // namespace

PolyStream theorem31_family(const Theorem31Region& region) {
  const T31Bounds tb = theorem31_check(region);
  const int n = region.n;
  const long long H = region.H;
  const bool extra = region.no_real_roots;
  // cur[p] is a_{p+1}
  auto bounds = [=](size_t pos, const std::vector<long long>& cur) -> std::pair<long long, long long> {
    const int i = static_cast<int>(pos) + 1;
    if (i == 1) return {tb.a1_min, -1};
    long long lo = 1, hi = H;
    if (i == 2) lo = tb.a2_min;
    if (i >= 3 && i % 2 == 1) hi = cur[pos - 1];
    if (extra) {
      if (i % 2 == 1 && i >= 3) {
        for (int e = 2; e < i; e += 2) hi = std::min(hi, cur[static_cast<size_t>(e - 1)]);
      }
      if (i % 2 == 0 && i >= 4) {
        for (int o = 3; o < i; o += 2) lo = std::max(lo, cur[static_cast<size_t>(o - 1)]);
      }
    }
    return {lo, hi};
  };
  auto walk = std::make_shared<BoxWalker>(static_cast<size_t>(n), bounds);
  return [walk, n]() -> std::optional<IntPolynomial> {
    if (!walk->next()) return std::nullopt;
    std::vector<long long> c(static_cast<size_t>(n + 1));
    c[0] = 1;
    std::copy(walk->current().begin(), walk->current().end(), c.begin() + 1);
    return IntPolynomial::from_leading_first_ll(c);
  };
}

mpz_class theorem31_count(const Theorem31Region& region) {
  const T31Bounds tb = theorem31_check(region);
  if (region.no_real_roots) {
    PolyStream s = theorem31_family(region);
    mpz_class count = 0;
    while (s()) ++count;
    return count;
  }
  const int n = region.n;
  const mpz_class H = region.H;
  const mpz_class k = static_cast<long>(-tb.a1_min);
  const mpz_class L = static_cast<long>(tb.a2_min);
  if (n == 2) return k * (H - L + 1);
  const mpz_class first_pair = (H * (H + 1) - (L - 1) * L) / 2;
  const mpz_class pair = H * (H + 1) / 2;
  mpz_class count = k * first_pair;
  const int later_pairs = n % 2 == 0 ? (n - 4) / 2 : (n - 3) / 2;
  for (int p = 0; p < later_pairs; ++p) count *= pair;
  if (n % 2 == 0) count *= H;
  return count;
}

// ---------------------------------------------------------------------------
// Showcase families

Showcase parse_showcase(const std::string& name) {
  std::string u;
  for (char c : name) {
    if (c != '-' && c != '_') u.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  }
  if (u == "A3STAR3") return Showcase::A3Star3;
  if (u == "X3PLUS8") return Showcase::X3Plus8;
  fail(ErrorCode::ParseError, "unknown showcase family '" + name + "'");
}

PolyStream showcase_family(Showcase which, int n, int H, const ShowcaseParams& p) {
  if (H < 1) fail(ErrorCode::BadParameters, "height must be >= 1");
  if (which == Showcase::A3Star3) {
    if (n != 3) fail(ErrorCode::BadParameters, "A3_STAR_3 is a family of cubics");
    const long long h = H;
    auto walk = std::make_shared<BoxWalker>(2, [h](size_t, const std::vector<long long>&) {
      return std::pair<long long, long long>{-h, h};
    });
    return [walk]() -> std::optional<IntPolynomial> {
      while (walk->next()) {
        const auto& c = walk->current();
        if (c[0] == 0 || c[1] == 0) continue;
        return IntPolynomial::from_leading_first_ll(std::vector<long long>{c[0], 0, 0, c[1]});
      }
      return std::nullopt;
    };
  }
  if (n < 4) fail(ErrorCode::BadParameters, "X3PLUS8 needs n >= 4");
  if (!(0 < p.delta1 && p.delta1 < p.delta2 && p.delta2 < p.lambda1 && p.lambda1 < p.lambda2 &&
        p.lambda2 <= mpq_class(1, 9))) {
    fail(ErrorCode::BadParameters, "X3PLUS8 needs 0 < delta1 < delta2 < lambda1 < lambda2 <= 1/9");
  }
  const long long a0_lo = to_ll(floor_q(p.lambda1 * H) + 1), a0_hi = to_ll(ceil_q(p.lambda2 * H) - 1);
  const long long ai_lo = to_ll(floor_q(p.delta1 * H) + 1), ai_hi = to_ll(ceil_q(p.delta2 * H) - 1);
  if (a0_lo > a0_hi || ai_lo > ai_hi) {
    fail(ErrorCode::EmptyRegion, "X3PLUS8 parameter intervals contain no integers at H=" + std::to_string(H));
  }
  auto walk = std::make_shared<BoxWalker>(static_cast<size_t>(n - 2), [=](size_t pos, const std::vector<long long>&) {
    return pos == 0 ? std::pair<long long, long long>{a0_lo, a0_hi} : std::pair<long long, long long>{ai_lo, ai_hi};
  });
  const IntPolynomial cube = IntPolynomial::from_leading_first({1, 0, 0, 8});
  return [walk, cube]() -> std::optional<IntPolynomial> {
    if (!walk->next()) return std::nullopt;
    return cube * IntPolynomial::from_leading_first_ll(walk->current());
  };
}

// ---------------------------------------------------------------------------
// Predicates and validation

FamilyPredicate FamilyPredicate::parse(const std::string& text) {
  FamilyPredicate p;
  p.text = text;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, '&')) {
    std::string t;
    for (char c : item) {
      if (!std::isspace(static_cast<unsigned char>(c))) t.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
    if (t.empty()) continue;
    Term term;
    std::string args;
    auto le = t.find("<=");
    auto eq = t.find('=');
    if (le != std::string::npos) {
      term.key = t.substr(0, le) + "<=";
      args = t.substr(le + 2);
    } else if (eq != std::string::npos) {
      term.key = t.substr(0, eq);
      args = t.substr(eq + 1);
    } else {
      term.key = t;
    }
    std::stringstream as(args);
    std::string a;
    while (std::getline(as, a, ',')) {
      try {
        size_t used = 0;
        term.args.push_back(std::stol(a, &used));
        if (used != a.size()) throw std::invalid_argument(a);
      } catch (const std::exception&) {
        fail(ErrorCode::ParseError, "bad predicate argument '" + a + "' in '" + item + "'");
      }
    }
    const std::string& k = term.key;
    const size_t na = term.args.size();
    bool ok = ((k == "kmax" || k == "kmin") && na == 1) || ((k == "dominant" || k == "nondominant") && na == 0) ||
              ((k == "b" || k == "rs") && na == 2) || (k == "sn" && na <= 1) || (k == "height<=" && na == 1);
    if (!ok) fail(ErrorCode::ParseError, "unknown predicate '" + item + "'");
    p.terms.push_back(std::move(term));
  }
  if (p.terms.empty()) fail(ErrorCode::ParseError, "empty predicate");
  return p;
}

bool FamilyPredicate::holds(const IntPolynomial& f) const {
  std::optional<ModulusProfile> prof;
  auto profile = [&]() -> const ModulusProfile& {
    if (!prof) prof = modulus_profile(f);
    return *prof;
  };
  for (const auto& t : terms) {
    bool ok = true;
    if (t.key == "kmax") ok = profile().k_max == t.args[0];
    else if (t.key == "kmin") ok = profile().k_min == t.args[0];
    else if (t.key == "dominant") ok = profile().dominant;
    else if (t.key == "nondominant") ok = !profile().dominant;
    else if (t.key == "b") ok = profile().k_min == t.args[0] && profile().k_max == t.args[1];
    else if (t.key == "rs") {
      RootSignature s = root_signature(f);
      ok = s.r == t.args[0] && s.s == t.args[1];
    } else if (t.key == "sn") {
      uint64_t bound = t.args.empty() ? 1000 : static_cast<uint64_t>(t.args[0]);
      ok = sn_verdict(f, bound) == SnVerdict::CertifiedSn;
    } else if (t.key == "height<=") {
      ok = f.height() <= t.args[0];
    }
    if (!ok) return false;
  }
  return true;
}

ValidationReport validate_family(const PolyStream& stream, const FamilyPredicate& predicate, uint64_t sample) {
  ValidationReport rep;
  rep.predicate = predicate.text;
  while (rep.examined < sample) {
    std::optional<IntPolynomial> f = stream();
    if (!f) break;
    ++rep.examined;
    if (predicate.holds(*f)) ++rep.passed;
    else if (!rep.counterexample) rep.counterexample = *f;
  }
  if (rep.examined == 0) fail(ErrorCode::EmptyStream, "family produced no members");
  rep.pass_fraction = static_cast<double>(rep.passed) / static_cast<double>(rep.examined);
  return rep;
}

}  // namespace polycensus
