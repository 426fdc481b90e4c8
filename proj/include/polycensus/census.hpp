#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "polycensus/int_poly.hpp"
#include "polycensus/roots.hpp"

namespace polycensus {

// Which statistics a census collects.
struct CounterSet {
  bool kmax = false;       // A / A*
  bool signature = false;  // D / D*
  bool bstar = false;      // B / B*
  bool rho = false;        // rho / rho*
  bool e_upper = false;    // E_upper

  bool any() const { return kmax || signature || bstar || rho || e_upper; }
  // Accepts A, A*, D, D*, B, B*, RHO, RHO*, E, E_UPPER (comma separated,
  // case-insensitive). Throws ParseError.
  static CounterSet parse(const std::string& list);
  std::string to_string() const;
};

struct CensusSpec {
  int n = 2;
  int H = 1;
  bool monic = false;
  CounterSet counters;
  int jobs = 1;
  std::string checkpoint_path;  // empty: no checkpointing
  uint64_t prime_bound = 100;   // for the S_n certificate
  bool nonzero_constant = false;  // restrict to a_n != 0
  bool symmetry = false;          // orbit reduction under f -> -f, f -> f(-X)
  bool permissive = false;        // count precision-cap outcomes instead of failing
  double budget = 5e9;            // cap on n * lattice points
  long long stop_after_units = -1;  // test hook: stop after this many units
  RootsConfig roots;
  int degree_cap = 8;

  uint64_t box_size() const;  // lattice points before the a_n != 0 filter
  nlohmann::json to_json() const;
  static CensusSpec from_json(const nlohmann::json& j);
};

// Counter cells: family -> label -> count. Family names carry a star for
// non-monic censuses ("A*", "D*", "B*", "rho*"); labels are "k=1",
// "r=2,s=0", "m=1,2" (m = k_min, k_max) and so on.
struct CounterTable {
  int n = 0;  // 0 marks the empty (identity) table
  int H = 0;
  bool monic = false;
  bool nonzero_constant = false;
  std::map<std::string, std::map<std::string, uint64_t>> cells;
  uint64_t total = 0;
  uint64_t ambiguous = 0;
  bool complete = true;

  static CounterTable empty_for(const CensusSpec& spec);
  uint64_t get(const std::string& family, const std::string& label) const;
  void add(const std::string& family, const std::string& label, uint64_t count = 1);

  friend bool operator==(const CounterTable& a, const CounterTable& b) {
    return a.n == b.n && a.H == b.H && a.monic == b.monic && a.nonzero_constant == b.nonzero_constant &&
           a.cells == b.cells && a.total == b.total && a.ambiguous == b.ambiguous;
  }
};

// Family names for a census.
std::string family_name(const std::string& base, bool monic);

// Cellwise sum; the empty table is the identity. Throws SpecMismatch.
CounterTable merge(const CounterTable& a, const CounterTable& b);

// Per-polynomial statistics; fields not requested stay at their defaults.
struct PolyRecord {
  int k_max = 0;
  int k_min = 0;
  int r = 0;
  int s = 0;
  int r_distinct = 0;
  int s_distinct = 0;
  bool reducible = false;
  std::vector<int> factor_degrees;  // distinct irreducible factor degrees
  bool certified_sn = false;
  bool ambiguous = false;
};

PolyRecord classify_pipeline(const IntPolynomial& f, const CensusSpec& spec);

// Same pipeline on machine-integer coefficients (leading first).
PolyRecord classify_pipeline(const long long* coeffs, int n, const CensusSpec& spec);

// Test-only negative control: when on, the pipeline misreports k_max.
void set_fault_injection(bool on);

// Adds one classified polynomial to the table with the given weight.
void tally(CounterTable& t, const PolyRecord& rec, const long long* coeffs, const CensusSpec& spec,
           uint64_t weight = 1);

struct WorkUnit {
  uint64_t id = 0;
  std::vector<long long> prefix;  // fixed values of the leading free coefficients
};

// Units partitioning the box, in deterministic order.
std::vector<WorkUnit> work_units(const CensusSpec& spec);

CounterTable run_unit(const CensusSpec& spec, const WorkUnit& unit);

CounterTable run_census(const CensusSpec& spec);

// Checkpoint files: a header line with the spec, then one line per finished
// unit {unit_id, counters_delta, checksum}.
struct CheckpointState {
  nlohmann::json spec;
  std::map<uint64_t, CounterTable> units;
};
CheckpointState checkpoint_load(const std::string& path);
void checkpoint_save(const std::string& path, const CensusSpec& spec, const CheckpointState& state);

struct GrowthFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  // max |log count - fit|
};

// Least squares of log(count) against log(H).
GrowthFit fit_growth_exponent(const std::vector<std::pair<double, double>>& points);

struct DensityRow {
  int H = 0;
  uint64_t total = 0;
  double ratio_top2 = 0.0;      // (A1 + A2) / total
  double ratio_dominant = 0.0;  // A1 / total
  double tail_over_hn = 0.0;    // sum_{k>=3} A_k / H^n
  std::map<std::string, double> b_split;
  std::map<std::string, double> d_split;
  bool checksum_ok = false;     // sum_k A_k equals the box size
  std::optional<bool> reciprocal_ok;  // B(2,1) == B(1,2) on a_n != 0
  std::optional<uint64_t> b22;
};

struct DensityReport {
  int n = 0;
  bool monic = false;
  std::vector<DensityRow> rows;
};

DensityReport density_report(const std::vector<CounterTable>& tables);

nlohmann::json to_json(const CounterTable& t);
CounterTable table_from_json(const nlohmann::json& j);
std::string to_csv(const CounterTable& t, bool header = true);
nlohmann::json to_json(const DensityReport& r);

}  // namespace polycensus
