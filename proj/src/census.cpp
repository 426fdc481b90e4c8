#include "polycensus/census.hpp"

#include <zlib.h>

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "polycensus/classify.hpp"
#include "polycensus/error.hpp"
#include "polycensus/poly_algebra.hpp"
#include "polycensus/sturm.hpp"

namespace polycensus {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Counter sets and specs

CounterSet CounterSet::parse(const std::string& list) {
  CounterSet c;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::string t;
    for (char ch : item) {
      if (!std::isspace(static_cast<unsigned char>(ch))) t.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(ch))));
    }
    if (t.empty()) continue;
    if (t == "A" || t == "A*") c.kmax = true;
    else if (t == "D" || t == "D*") c.signature = true;
    else if (t == "B" || t == "B*") c.bstar = true;
    else if (t == "RHO" || t == "RHO*") c.rho = true;
    else if (t == "E" || t == "E*" || t == "E_UPPER") c.e_upper = true;
    else if (t == "ALL") c.kmax = c.signature = c.bstar = c.rho = c.e_upper = true;
    else fail(ErrorCode::ParseError, "unknown counter '" + item + "'");
  }
  return c;
}

std::string CounterSet::to_string() const {
  std::vector<std::string> parts;
  if (kmax) parts.push_back("A");
  if (signature) parts.push_back("D");
  if (bstar) parts.push_back("B");
  if (rho) parts.push_back("RHO");
  if (e_upper) parts.push_back("E");
  std::string out;
  for (size_t i = 0; i < parts.size(); ++i) out += (i ? "," : "") + parts[i];
  return out;
}

namespace {

uint64_t ipow(uint64_t b, int e) {
  uint64_t r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

}  // namespace

uint64_t CensusSpec::box_size() const {
  const uint64_t side = 2 * static_cast<uint64_t>(H) + 1;
  uint64_t pts = ipow(side, n);
  return monic ? pts : pts * 2 * static_cast<uint64_t>(H);
}

json CensusSpec::to_json() const {
  return json{{"n", n},
              {"H", H},
              {"monic", monic},
              {"counters", counters.to_string()},
              {"prime_bound", prime_bound},
              {"nonzero_constant", nonzero_constant},
              {"symmetry", symmetry},
              {"permissive", permissive},
              {"precision_bits", roots.initial_bits},
              {"precision_cap", roots.cap_bits},
              {"degree_cap", degree_cap}};
}

CensusSpec CensusSpec::from_json(const json& j) {
  CensusSpec s;
  s.n = j.at("n").get<int>();
  s.H = j.at("H").get<int>();
  s.monic = j.at("monic").get<bool>();
  s.counters = CounterSet::parse(j.at("counters").get<std::string>());
  s.prime_bound = j.value("prime_bound", s.prime_bound);
  s.nonzero_constant = j.value("nonzero_constant", false);
  s.symmetry = j.value("symmetry", false);
  s.permissive = j.value("permissive", false);
  s.roots.initial_bits = j.value("precision_bits", s.roots.initial_bits);
  s.roots.cap_bits = j.value("precision_cap", s.roots.cap_bits);
  s.degree_cap = j.value("degree_cap", s.degree_cap);
  return s;
}

// ---------------------------------------------------------------------------
// Counter tables

std::string family_name(const std::string& base, bool monic) {
  if (monic || base == "reducible") return base;
  auto pos = base.find('_');
  if (pos == std::string::npos) return base + "*";
  return base.substr(0, pos) + "*" + base.substr(pos);
}

namespace {

std::string k_label(int k) { return "k=" + std::to_string(k); }
std::string rs_label(int r, int s) { return "r=" + std::to_string(r) + ",s=" + std::to_string(s); }
std::string m_label(int a, int b) { return "m=" + std::to_string(a) + "," + std::to_string(b); }

}  // namespace

CounterTable CounterTable::empty_for(const CensusSpec& spec) {
  CounterTable t;
  t.n = spec.n;
  t.H = spec.H;
  t.monic = spec.monic;
  t.nonzero_constant = spec.nonzero_constant;
  const bool m = spec.monic;
  const int n = spec.n;
  if (spec.counters.kmax) {
    for (int k = 1; k <= n; ++k) t.cells[family_name("A", m)][k_label(k)] = 0;
  }
  if (spec.counters.signature) {
    for (int s = 0; 2 * s <= n; ++s) t.cells[family_name("D", m)][rs_label(n - 2 * s, s)] = 0;
    for (int s = 0; 2 * s <= n; ++s) {
      for (int r = 0; r + 2 * s <= n; ++r) {
        if (r + s > 0) t.cells[family_name("D_distinct", m)][rs_label(r, s)] = 0;
      }
    }
  }
  if (spec.counters.bstar) {
    for (int a = 1; a <= 2; ++a) {
      for (int b = 1; b <= 2; ++b) {
        t.cells[family_name("B", m)][m_label(a, b)] = 0;
        t.cells[family_name("B_an_nonzero", m)][m_label(a, b)] = 0;
      }
    }
  }
  if (spec.counters.rho) {
    for (int k = 1; 2 * k <= n; ++k) t.cells[family_name("rho", m)]["m=" + std::to_string(k)] = 0;
    t.cells["reducible"]["count"] = 0;
  }
  if (spec.counters.e_upper) t.cells[family_name("E_upper", m)]["count"] = 0;
  return t;
}

uint64_t CounterTable::get(const std::string& family, const std::string& label) const {
  auto f = cells.find(family);
  if (f == cells.end()) return 0;
  auto l = f->second.find(label);
  return l == f->second.end() ? 0 : l->second;
}

void CounterTable::add(const std::string& family, const std::string& label, uint64_t count) {
  cells[family][label] += count;
}

CounterTable merge(const CounterTable& a, const CounterTable& b) {
  if (b.n == 0) return a;
  if (a.n == 0) return b;
  if (a.n != b.n || a.H != b.H || a.monic != b.monic || a.nonzero_constant != b.nonzero_constant) {
    fail(ErrorCode::SpecMismatch, "cannot merge counter tables of different censuses");
  }
  CounterTable out = a;
  for (const auto& [fam, labels] : b.cells) {
    for (const auto& [label, count] : labels) out.cells[fam][label] += count;
  }
  out.total += b.total;
  out.ambiguous += b.ambiguous;
  out.complete = a.complete && b.complete;
  return out;
}

// ---------------------------------------------------------------------------
// Per-polynomial pipeline

namespace {

void exact_record(const IntPolynomial& f, bool need_prof, bool need_sig, const CensusSpec& spec, PolyRecord& rec) {
  if (need_prof) {
    ModulusProfile p = modulus_profile(f, spec.roots);
    rec.k_max = p.k_max;
    rec.k_min = p.k_min;
  }
  if (need_sig) {
    RootSignature sig = root_signature(f);
    rec.r = sig.r;
    rec.s = sig.s;
    rec.r_distinct = distinct_real_root_count(f);
    rec.s_distinct = (squarefree_part(f).degree() - rec.r_distinct) / 2;
  }
}

struct Span {
  double lo, hi;
  int weight;
};

// Weight of the extreme class if separated from all others, else 0.
int extreme_weight(const std::vector<Span>& cls, bool top) {
  size_t best = 0;
  for (size_t i = 1; i < cls.size(); ++i) {
    if (top ? cls[i].lo > cls[best].lo : cls[i].hi < cls[best].hi) best = i;
  }
  for (size_t i = 0; i < cls.size(); ++i) {
    if (i == best) continue;
    if (top ? !(cls[i].hi < cls[best].lo) : !(cls[i].lo > cls[best].hi)) return 0;
  }
  return cls[best].weight;
}

// Machine-precision route; false means "use the exact path".
bool fast_record(const long long* c, int n, int v, bool need_prof, PolyRecord& rec) {
  const int d = n - v;
  const int zero_distinct = v > 0 ? 1 : 0;
  if (d == 0) {
    rec.k_max = rec.k_min = n;
    rec.r = n;
    rec.r_distinct = 1;
    return true;
  }
  if (d == 1) {
    rec.k_max = 1;
    rec.k_min = v > 0 ? v : 1;
    rec.r = n;
    rec.r_distinct = 1 + zero_distinct;
    return true;
  }
  if (d == 2) {
    const __int128 a = c[0], b = c[1], cc = c[2];
    const __int128 disc = b * b - 4 * a * cc;
    const bool tied = b == 0 || disc <= 0;
    rec.k_max = tied ? 2 : 1;
    rec.k_min = v > 0 ? v : rec.k_max;
    int rg = disc >= 0 ? 2 : 0;
    int rgd = disc > 0 ? 2 : (disc == 0 ? 1 : 0);
    rec.r = rg + v;
    rec.s = disc < 0 ? 1 : 0;
    rec.r_distinct = rgd + zero_distinct;
    rec.s_distinct = rec.s;
    return true;
  }
  std::vector<double> asc(static_cast<size_t>(d + 1));
  for (int k = 0; k <= d; ++k) {
    long long x = c[d - k];
    if (x > (1LL << 53) || x < -(1LL << 53)) return false;
    asc[static_cast<size_t>(k)] = static_cast<double>(x);
  }
  std::optional<FastIsolation> iso = isolate_fast(asc);
  if (!iso) return false;
  int rg = 0;
  for (bool b : iso->is_real) rg += b ? 1 : 0;
  if (need_prof) {
    const double u = 0x1p-53;
    std::vector<Span> cls;
    std::vector<int> slot(static_cast<size_t>(d), -1);
    for (int i = 0; i < d; ++i) {
      const double m = std::abs(iso->centers[static_cast<size_t>(i)]);
      const double r = iso->radii[static_cast<size_t>(i)];
      double lo = std::max(0.0, (m - r) * (1 - 4 * u));
      double hi = (m + r) * (1 + 4 * u);
      int key = i;
      int partner = iso->conjugate_of[static_cast<size_t>(i)];
      if (!iso->is_real[static_cast<size_t>(i)] && partner >= 0) key = std::min(i, partner);
      int& s = slot[static_cast<size_t>(key)];
      if (s < 0) {
        s = static_cast<int>(cls.size());
        cls.push_back({lo, hi, 0});
      }
      Span& sp = cls[static_cast<size_t>(s)];
      sp.lo = std::max(sp.lo, lo);
      sp.hi = std::min(sp.hi, hi);
      sp.weight += 1;
    }
    int kmax = extreme_weight(cls, true);
    if (kmax == 0) return false;
    int kmin = v > 0 ? v : extreme_weight(cls, false);
    if (kmin == 0) return false;
    rec.k_max = kmax;
    rec.k_min = kmin;
  }
  rec.r = rg + v;
  rec.s = (d - rg) / 2;
  rec.r_distinct = rg + zero_distinct;
  rec.s_distinct = rec.s;
  return true;
}

void algebraic_record(const IntPolynomial& f, const CensusSpec& spec, PolyRecord& rec) {
  const int n = f.degree();
  if (spec.counters.rho || spec.counters.e_upper) {
    FactorizationResult fr = factorize(f, std::max(spec.degree_cap, n));
    rec.reducible = !fr.irreducible;
    for (const auto& fac : fr.factors) rec.factor_degrees.push_back(fac.factor.degree());
    std::sort(rec.factor_degrees.begin(), rec.factor_degrees.end());
    rec.factor_degrees.erase(std::unique(rec.factor_degrees.begin(), rec.factor_degrees.end()),
                             rec.factor_degrees.end());
  }
  if (spec.counters.e_upper) {
    if (n == 1) rec.certified_sn = true;
    else if (!rec.reducible) rec.certified_sn = sn_verdict(f, spec.prime_bound) == SnVerdict::CertifiedSn;
  }
}

}  // namespace

namespace {
std::atomic<bool> g_fault{false};
}  // namespace

void set_fault_injection(bool on) { g_fault.store(on); }

PolyRecord classify_pipeline(const long long* coeffs, int n, const CensusSpec& spec) {
  PolyRecord rec;
  const bool need_prof = spec.counters.kmax || spec.counters.bstar;
  const bool need_sig = spec.counters.signature;
  std::optional<IntPolynomial> exact;
  auto poly = [&]() -> const IntPolynomial& {
    if (!exact) exact = IntPolynomial::from_leading_first_ll(std::span<const long long>(coeffs, static_cast<size_t>(n + 1)));
    return *exact;
  };
  if (need_prof || need_sig) {
    int v = 0;
    while (v < n && coeffs[n - v] == 0) ++v;
    if (!fast_record(coeffs, n, v, need_prof, rec)) exact_record(poly(), need_prof, need_sig, spec, rec);
  }
  if (spec.counters.rho || spec.counters.e_upper) algebraic_record(poly(), spec, rec);
  if (g_fault.load() && rec.k_max > 0) rec.k_max = rec.k_max % n + 1;
  return rec;
}

PolyRecord classify_pipeline(const IntPolynomial& f, const CensusSpec& spec) {
  if (f.is_zero()) fail(ErrorCode::ZeroPolynomial, "cannot classify the zero polynomial");
  if (f.degree() < 1) fail(ErrorCode::DegreeTooSmall, "cannot classify a constant");
  std::vector<long long> c;
  bool fits = true;
  for (const auto& a : f.leading_first()) {
    if (!a.fits_slong_p() || mpz_sizeinbase(a.get_mpz_t(), 2) > 53) {
      fits = false;
      break;
    }
    c.push_back(a.get_si());
  }
  if (fits) return classify_pipeline(c.data(), f.degree(), spec);
  PolyRecord rec;
  exact_record(f, spec.counters.kmax || spec.counters.bstar, spec.counters.signature, spec, rec);
  algebraic_record(f, spec, rec);
  return rec;
}

void tally(CounterTable& t, const PolyRecord& rec, const long long* coeffs, const CensusSpec& spec, uint64_t w) {
  const bool m = spec.monic;
  const int n = spec.n;
  t.total += w;
  if (rec.ambiguous) {
    t.ambiguous += w;
    return;
  }
  if (spec.counters.kmax) t.add(family_name("A", m), k_label(rec.k_max), w);
  if (spec.counters.signature) {
    t.add(family_name("D", m), rs_label(rec.r, rec.s), w);
    t.add(family_name("D_distinct", m), rs_label(rec.r_distinct, rec.s_distinct), w);
  }
  if (spec.counters.bstar && rec.k_min <= 2 && rec.k_max <= 2) {
    t.add(family_name("B", m), m_label(rec.k_min, rec.k_max), w);
    if (coeffs[n] != 0) t.add(family_name("B_an_nonzero", m), m_label(rec.k_min, rec.k_max), w);
  }
  if (spec.counters.rho && rec.reducible) {
    t.add("reducible", "count", w);
    for (int d : rec.factor_degrees) {
      if (2 * d <= n) t.add(family_name("rho", m), "m=" + std::to_string(d), w);
    }
  }
  if (spec.counters.e_upper && !rec.certified_sn) t.add(family_name("E_upper", m), "count", w);
}

// ---------------------------------------------------------------------------
// Work units and the enumeration loop

namespace {

int split_depth(const CensusSpec& spec) {
  const int free = spec.monic ? spec.n : spec.n + 1;
  const uint64_t side = 2 * static_cast<uint64_t>(spec.H) + 1;
  if (free >= 3 && ipow(side, free - 1) > 200000) return 2;
  return 1;
}

void validate(const CensusSpec& spec) {
  if (spec.n < 1) fail(ErrorCode::BadParameters, "census degree must be >= 1");
  if (spec.H < 1) fail(ErrorCode::BadParameters, "census height must be >= 1");
  if (spec.jobs < 1) fail(ErrorCode::BadParameters, "jobs must be >= 1");
  if (!spec.counters.any()) fail(ErrorCode::BadParameters, "no counters requested");
  if (spec.counters.rho && spec.n > 6) fail(ErrorCode::BadParameters, "rho counters run only for n <= 6");
  const double pts = std::pow(2.0 * spec.H + 1.0, spec.n) * (spec.monic ? 1.0 : 2.0 * spec.H);
  if (pts * spec.n > spec.budget || pts > 1.8e19) {
    fail(ErrorCode::BudgetExceeded, "census of " + std::to_string(static_cast<long long>(pts)) +
                                        " polynomials exceeds the work budget");
  }
}

// Orbit of c under f -> -f and f -> f(-X) (monic: f -> (-1)^n f(-X)).
// Returns 0 if c is not the lexicographically least image, else the orbit size.
uint64_t orbit_weight(const std::vector<long long>& c, bool monic) {
  const int n = static_cast<int>(c.size()) - 1;
  std::vector<std::vector<long long>> images;
  images.push_back(c);
  std::vector<long long> flip(c.size());
  for (int i = 0; i <= n; ++i) {
    bool odd = monic ? (i % 2 != 0) : ((n - i) % 2 != 0);
    flip[static_cast<size_t>(i)] = odd ? -c[static_cast<size_t>(i)] : c[static_cast<size_t>(i)];
  }
  images.push_back(flip);
  if (!monic) {
    std::vector<long long> neg(c.size()), negflip(c.size());
    for (size_t i = 0; i < c.size(); ++i) {
      neg[i] = -c[i];
      negflip[i] = -flip[i];
    }
    images.push_back(neg);
    images.push_back(negflip);
  }
  for (const auto& im : images) {
    if (im < c) return 0;
  }
  std::sort(images.begin(), images.end());
  return static_cast<uint64_t>(std::unique(images.begin(), images.end()) - images.begin());
}

}  // namespace

std::vector<WorkUnit> work_units(const CensusSpec& spec) {
  validate(spec);
  const int depth = split_depth(spec);
  const long long H = spec.H;
  std::vector<WorkUnit> units;
  std::vector<long long> first;
  if (spec.monic) {
    for (long long a = -H; a <= H; ++a) first.push_back(a);
  } else {
    for (long long a = -H; a <= H; ++a) {
      if (a != 0) first.push_back(a);
    }
  }
  for (long long a : first) {
    if (depth == 1) {
      units.push_back({units.size(), {a}});
    } else {
      for (long long b = -H; b <= H; ++b) units.push_back({units.size(), {a, b}});
    }
  }
  return units;
}

CounterTable run_unit(const CensusSpec& spec, const WorkUnit& unit) {
  CounterTable t = CounterTable::empty_for(spec);
  const int n = spec.n;
  const long long H = spec.H;
  std::vector<long long> c(static_cast<size_t>(n + 1), 0);
  const int offset = spec.monic ? 1 : 0;
  if (spec.monic) c[0] = 1;
  for (size_t i = 0; i < unit.prefix.size(); ++i) c[static_cast<size_t>(offset) + i] = unit.prefix[i];
  const int first_free = offset + static_cast<int>(unit.prefix.size());
  for (int i = first_free; i <= n; ++i) c[static_cast<size_t>(i)] = -H;
  while (true) {
    bool skip = spec.nonzero_constant && c[static_cast<size_t>(n)] == 0;
    uint64_t w = 1;
    if (!skip && spec.symmetry) {
      w = orbit_weight(c, spec.monic);
      skip = w == 0;
    }
    if (!skip) {
      PolyRecord rec;
      try {
        rec = classify_pipeline(c.data(), n, spec);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::PrecisionCapExceeded) throw;
        if (!spec.permissive) {
          std::string poly;
          for (size_t i = 0; i < c.size(); ++i) poly += (i ? "," : "") + std::to_string(c[i]);
          fail(ErrorCode::AmbiguousOutcome, "classification of " + poly + " hit the precision cap");
        }
        rec.ambiguous = true;
      }
      tally(t, rec, c.data(), spec, w);
    }
    // odometer over the free tail
    int pos = n;
    while (pos >= first_free && c[static_cast<size_t>(pos)] == H) {
      c[static_cast<size_t>(pos)] = -H;
      --pos;
    }
    if (pos < first_free) break;
    ++c[static_cast<size_t>(pos)];
  }
  return t;
}

// ---------------------------------------------------------------------------
// Checkpoints

namespace {

json cells_json(const CounterTable& t) {
  json j = json::object();
  for (const auto& [fam, labels] : t.cells) {
    json l = json::object();
    for (const auto& [label, count] : labels) l[label] = count;
    j[fam] = l;
  }
  return j;
}

json delta_json(const CounterTable& t) {
  return json{{"cells", cells_json(t)}, {"total", t.total}, {"ambiguous", t.ambiguous}};
}

std::string checksum_of(uint64_t unit_id, const json& delta) {
  std::string payload = std::to_string(unit_id) + ":" + delta.dump();
  uLong crc = crc32(0L, Z_NULL, 0);
  crc = crc32(crc, reinterpret_cast<const Bytef*>(payload.data()), static_cast<uInt>(payload.size()));
  char buf[16];
  std::snprintf(buf, sizeof buf, "%08lx", static_cast<unsigned long>(crc));
  return buf;
}

std::string record_line(uint64_t unit_id, const CounterTable& t) {
  json delta = delta_json(t);
  json rec{{"unit_id", unit_id}, {"counters_delta", delta}, {"checksum", checksum_of(unit_id, delta)}};
  return rec.dump() + "\n";
}

json checkpoint_spec(const CensusSpec& spec) { return spec.to_json(); }

CounterTable delta_table(const json& delta, const json& spec_json) {
  CensusSpec spec = CensusSpec::from_json(spec_json);
  CounterTable t;
  t.n = spec.n;
  t.H = spec.H;
  t.monic = spec.monic;
  t.nonzero_constant = spec.nonzero_constant;
  for (const auto& [fam, labels] : delta.at("cells").items()) {
    for (const auto& [label, count] : labels.items()) t.cells[fam][label] = count.get<uint64_t>();
  }
  t.total = delta.at("total").get<uint64_t>();
  t.ambiguous = delta.at("ambiguous").get<uint64_t>();
  return t;
}

}  // namespace

CheckpointState checkpoint_load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::CheckpointCorrupt, "cannot open checkpoint " + path);
  std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CheckpointState st;
  if (data.empty()) fail(ErrorCode::CheckpointCorrupt, "checkpoint " + path + " is empty");
  if (data.back() != '\n') fail(ErrorCode::CheckpointCorrupt, "checkpoint " + path + " ends mid-record");
  std::stringstream ss(data);
  std::string line;
  bool header = false;
  size_t lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception&) {
      fail(ErrorCode::CheckpointCorrupt, "checkpoint line " + std::to_string(lineno) + " is not valid JSON");
    }
    try {
      if (!header) {
        if (j.value("kind", "") != "header") fail(ErrorCode::CheckpointCorrupt, "checkpoint header missing");
        st.spec = j.at("spec");
        header = true;
        continue;
      }
      uint64_t id = j.at("unit_id").get<uint64_t>();
      const json& delta = j.at("counters_delta");
      if (j.at("checksum").get<std::string>() != checksum_of(id, delta)) {
        fail(ErrorCode::CheckpointCorrupt, "checksum mismatch on checkpoint line " + std::to_string(lineno));
      }
      st.units[id] = delta_table(delta, st.spec);
    } catch (const json::exception& e) {
      fail(ErrorCode::CheckpointCorrupt, "malformed checkpoint line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (!header) fail(ErrorCode::CheckpointCorrupt, "checkpoint header missing");
  return st;
}

void checkpoint_save(const std::string& path, const CensusSpec& spec, const CheckpointState& state) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorCode::CheckpointCorrupt, "cannot write checkpoint " + tmp);
    out << json{{"kind", "header"}, {"spec", checkpoint_spec(spec)}}.dump() << "\n";
    for (const auto& [id, t] : state.units) out << record_line(id, t);
  }
  std::filesystem::rename(tmp, path);
}

// ---------------------------------------------------------------------------
// The parallel driver

CounterTable run_census(const CensusSpec& spec) {
  validate(spec);
  std::vector<WorkUnit> units = work_units(spec);
  CounterTable result = CounterTable::empty_for(spec);
  std::map<uint64_t, bool> done;
  std::ofstream log;
  if (!spec.checkpoint_path.empty()) {
    if (std::filesystem::exists(spec.checkpoint_path)) {
      CheckpointState st = checkpoint_load(spec.checkpoint_path);
      if (st.spec != checkpoint_spec(spec)) {
        fail(ErrorCode::SpecMismatch, "checkpoint " + spec.checkpoint_path + " belongs to a different census");
      }
      for (const auto& [id, t] : st.units) {
        if (id >= units.size()) fail(ErrorCode::CheckpointCorrupt, "checkpoint unit id out of range");
        result = merge(result, t);
        done[id] = true;
      }
    } else {
      checkpoint_save(spec.checkpoint_path, spec, {});
    }
    log.open(spec.checkpoint_path, std::ios::binary | std::ios::app);
  }
  std::vector<const WorkUnit*> pending;
  for (const auto& u : units) {
    if (!done.count(u.id)) pending.push_back(&u);
  }

  std::atomic<size_t> next{0};
  std::atomic<long long> finished{0};
  std::atomic<bool> stop{false};
  std::mutex agg;
  std::exception_ptr error;
  auto worker = [&]() {
    while (!stop.load()) {
      if (spec.stop_after_units >= 0 && finished.load() >= spec.stop_after_units) break;
      size_t i = next.fetch_add(1);
      if (i >= pending.size()) break;
      if (spec.stop_after_units >= 0 && static_cast<long long>(i) >= spec.stop_after_units) break;
      try {
        CounterTable t = run_unit(spec, *pending[i]);
        std::lock_guard<std::mutex> lock(agg);
        result = merge(result, t);
        if (log.is_open()) {
          log << record_line(pending[i]->id, t);
          log.flush();
        }
        finished.fetch_add(1);
      } catch (...) {
        std::lock_guard<std::mutex> lock(agg);
        if (!error) error = std::current_exception();
        stop.store(true);
      }
    }
  };
  const int jobs = std::max(1, std::min<int>(spec.jobs, static_cast<int>(std::max<size_t>(pending.size(), 1))));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (error) std::rethrow_exception(error);
  result.complete = done.size() + static_cast<size_t>(finished.load()) == units.size();
  return result;
}

// ---------------------------------------------------------------------------
// Fits and reports

GrowthFit fit_growth_exponent(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 3) fail(ErrorCode::InsufficientPoints, "a growth fit needs at least 3 points");
  for (const auto& [h, c] : points) {
    if (!(c > 0.0)) fail(ErrorCode::NonpositiveCount, "count " + std::to_string(c) + " at H=" + std::to_string(h) + " is not positive");
    if (!(h > 0.0)) fail(ErrorCode::BadParameters, "heights must be positive");
  }
  const double m = static_cast<double>(points.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [h, c] : points) {
    double x = std::log(h), y = std::log(c);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double den = m * sxx - sx * sx;
  if (den == 0.0) fail(ErrorCode::InsufficientPoints, "growth fit needs at least two distinct heights");
  GrowthFit fit;
  fit.slope = (m * sxy - sx * sy) / den;
  fit.intercept = (sy - fit.slope * sx) / m;
  for (const auto& [h, c] : points) {
    fit.residual = std::max(fit.residual, std::fabs(std::log(c) - (fit.intercept + fit.slope * std::log(h))));
  }
  return fit;
}

DensityReport density_report(const std::vector<CounterTable>& tables) {
  if (tables.empty()) fail(ErrorCode::EmptyInput, "density report needs at least one table");
  std::vector<const CounterTable*> sorted;
  for (const auto& t : tables) sorted.push_back(&t);
  std::sort(sorted.begin(), sorted.end(), [](const CounterTable* a, const CounterTable* b) { return a->H < b->H; });
  DensityReport rep;
  rep.n = sorted.front()->n;
  rep.monic = sorted.front()->monic;
  for (const CounterTable* t : sorted) {
    if (t->n != rep.n || t->monic != rep.monic) fail(ErrorCode::SpecMismatch, "density report mixes censuses");
    DensityRow row;
    row.H = t->H;
    row.total = t->total;
    const double total = t->total > 0 ? static_cast<double>(t->total) : 1.0;
    const std::string A = family_name("A", t->monic);
    uint64_t sum_a = 0, tail = 0;
    if (t->cells.count(A)) {
      for (int k = 1; k <= t->n; ++k) {
        uint64_t v = t->get(A, k_label(k));
        sum_a += v;
        if (k >= 3) tail += v;
      }
      row.ratio_top2 = static_cast<double>(t->get(A, k_label(1)) + t->get(A, k_label(2))) / total;
      row.ratio_dominant = static_cast<double>(t->get(A, k_label(1))) / total;
      row.tail_over_hn = static_cast<double>(tail) / std::pow(static_cast<double>(t->H), t->n);
    }
    CensusSpec box;
    box.n = t->n;
    box.H = t->H;
    box.monic = t->monic;
    uint64_t expected = box.box_size();
    if (t->nonzero_constant) expected = expected / (2 * static_cast<uint64_t>(t->H) + 1) * (2 * static_cast<uint64_t>(t->H));
    row.checksum_ok = sum_a == t->total && t->total == expected && t->ambiguous == 0;
    const std::string B = family_name("B", t->monic);
    if (t->cells.count(B)) {
      for (const auto& [label, count] : t->cells.at(B)) row.b_split[label] = static_cast<double>(count) / total;
      row.b22 = t->get(B, m_label(2, 2));
      const std::string Bn = family_name("B_an_nonzero", t->monic);
      row.reciprocal_ok = t->get(Bn, m_label(2, 1)) == t->get(Bn, m_label(1, 2));
    }
    const std::string D = family_name("D", t->monic);
    if (t->cells.count(D)) {
      for (const auto& [label, count] : t->cells.at(D)) row.d_split[label] = static_cast<double>(count) / total;
    }
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Serialization

json to_json(const CounterTable& t) {
  json counters = json::object();
  for (const auto& [fam, labels] : t.cells) {
    if (labels.size() == 1 && labels.begin()->first == "count") {
      counters[fam] = labels.begin()->second;
      continue;
    }
    json l = json::object();
    for (const auto& [label, count] : labels) l[label] = count;
    counters[fam] = l;
  }
  return json{{"n", t.n},
              {"H", t.H},
              {"monic", t.monic},
              {"nonzero_constant", t.nonzero_constant},
              {"totals", t.total},
              {"ambiguous", t.ambiguous},
              {"complete", t.complete},
              {"counters", counters}};
}

CounterTable table_from_json(const json& j) {
  CounterTable t;
  t.n = j.at("n").get<int>();
  t.H = j.at("H").get<int>();
  t.monic = j.at("monic").get<bool>();
  t.nonzero_constant = j.value("nonzero_constant", false);
  t.total = j.at("totals").get<uint64_t>();
  t.ambiguous = j.at("ambiguous").get<uint64_t>();
  t.complete = j.value("complete", true);
  for (const auto& [fam, val] : j.at("counters").items()) {
    if (val.is_number()) {
      t.cells[fam]["count"] = val.get<uint64_t>();
    } else {
      for (const auto& [label, count] : val.items()) t.cells[fam][label] = count.get<uint64_t>();
    }
  }
  return t;
}

std::string to_csv(const CounterTable& t, bool header) {
  std::string out = header ? "n,H,family,label,count\n" : "";
  for (const auto& [fam, labels] : t.cells) {
    for (const auto& [label, count] : labels) {
      out += std::to_string(t.n) + "," + std::to_string(t.H) + "," + fam + ",\"" + label + "\"," +
             std::to_string(count) + "\n";
    }
  }
  out += std::to_string(t.n) + "," + std::to_string(t.H) + ",total,all," + std::to_string(t.total) + "\n";
  out += std::to_string(t.n) + "," + std::to_string(t.H) + ",ambiguous,all," + std::to_string(t.ambiguous) + "\n";
  return out;
}

json to_json(const DensityReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows) {
    json j{{"H", row.H},
           {"total", row.total},
           {"ratio_top2", row.ratio_top2},
           {"ratio_dominant", row.ratio_dominant},
           {"tail_over_H^n", row.tail_over_hn},
           {"b_split", row.b_split},
           {"d_split", row.d_split},
           {"checksum_ok", row.checksum_ok}};
    if (row.reciprocal_ok) j["reciprocal_B21_eq_B12"] = *row.reciprocal_ok;
    if (row.b22) j["B22"] = *row.b22;
    rows.push_back(j);
  }
  return json{{"n", r.n}, {"monic", r.monic}, {"rows", rows}};
}

}  // namespace polycensus
