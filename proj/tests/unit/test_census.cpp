#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

#include "helpers.hpp"
#include "oracles.hpp"
#include "polycensus/census.hpp"

using namespace polycensus;
using P = IntPolynomial;
using testing::code_of;
namespace fs = std::filesystem;

namespace {

CensusSpec make(int n, int H, bool monic, const std::string& counters) {
  CensusSpec s;
  s.n = n;
  s.H = H;
  s.monic = monic;
  s.counters = CounterSet::parse(counters);
  return s;
}

fs::path scratch(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / "polycensus_unit";
  fs::create_directories(dir);
  fs::path p = dir / name;
  fs::remove(p);
  return p;
}

}  // namespace

TEST_CASE("small censuses") {
  auto t1 = run_census(make(1, 1, false, "A*"));
  CHECK(t1.total == 6);
  CHECK(t1.get("A*", "k=1") == 6);

  auto t2 = run_census(make(2, 1, true, "A"));
  CHECK(t2.get("A", "k=1") == 4);
  CHECK(t2.get("A", "k=2") == 5);
  CHECK(t2.total == 9);

  auto t3 = run_census(make(2, 1, false, "D*"));
  CHECK(t3.get("D*", "r=0,s=1") == 6);
  CHECK(t3.get("D*", "r=2,s=0") == 12);
  CHECK(t3.total == 18);
}

TEST_CASE("quadratic census against the discriminant") {
  // k_max = 1 iff the roots are real with distinct moduli: disc > 0 and b != 0,
  // or c = 0 and b != 0.
  for (int H = 1; H <= 6; ++H) {
    uint64_t a1 = 0, a2 = 0, real = 0, cplx = 0;
    for (long a = -H; a <= H; ++a)
      for (long b = -H; b <= H; ++b)
        for (long c = -H; c <= H; ++c) {
          if (a == 0) continue;
          long disc = b * b - 4 * a * c;
          ((disc > 0 && b != 0) ? a1 : a2)++;
          (disc < 0 ? cplx : real)++;
        }
    auto t = run_census(make(2, H, false, "A*,D*"));
    CHECK(t.get("A*", "k=1") == a1);
    CHECK(t.get("A*", "k=2") == a2);
    CHECK(t.get("D*", "r=2,s=0") == real);
    CHECK(t.get("D*", "r=0,s=1") == cplx);
  }
}

TEST_CASE("pipeline examples") {
  auto spec = make(2, 1, true, "A");
  CHECK(classify_pipeline(P::parse("1,1,0"), spec).k_max == 1);
  auto s3 = make(3, 5, false, "A*");
  CHECK(classify_pipeline(P::parse("2,0,0,5"), s3).k_max == 3);
  auto sb = make(4, 1, true, "B");
  auto rec = classify_pipeline(P::parse("1,0,0,0,1"), sb);
  CHECK(rec.k_max == 4);
  CHECK(rec.k_min == 4);
  auto t = CounterTable::empty_for(sb);
  long long c[] = {1, 0, 0, 0, 1};
  tally(t, rec, c, sb);
  uint64_t cells = 0;
  for (auto& [label, v] : t.cells.at("B")) cells += v;
  CHECK(cells == 0);
}

TEST_CASE("machine and exact pipelines agree") {
  auto spec = make(4, 2, false, "A*,D*,B*");
  oracle::for_each_poly(4, 2, false, [&](const P& f) {
    std::vector<long long> c;
    for (auto& z : f.leading_first()) c.push_back(z.get_si());
    auto fast = classify_pipeline(c.data(), 4, spec);
    auto slow = classify_pipeline(f, spec);
    CHECK(fast.k_max == slow.k_max);
    CHECK(fast.k_min == slow.k_min);
    CHECK(fast.r == slow.r);
    CHECK(fast.s == slow.s);
  });
}

TEST_CASE("merge") {
  auto spec = make(2, 1, true, "A,D");
  auto full = run_census(spec);
  CHECK(merge(full, CounterTable{}) == full);
  CHECK(merge(CounterTable{}, full) == full);

  auto units = work_units(spec);
  REQUIRE(units.size() == 3);
  CounterTable acc;
  for (auto& u : units) acc = merge(acc, run_unit(spec, u));
  CHECK(acc == full);

  auto wide = make(3, 2, false, "A*,B*");
  auto wu = work_units(wide);
  std::mt19937 rng(7);
  for (int trial = 0; trial < 5; ++trial) {
    CounterTable x, y;
    for (auto& u : wu) {
      CounterTable& side = rng() % 2 ? x : y;
      side = merge(side, run_unit(wide, u));
    }
    CHECK(merge(x, y) == merge(y, x));
  }
  CHECK(code_of([&] { merge(full, run_census(make(2, 2, true, "A,D"))); }) == ErrorCode::SpecMismatch);
}

TEST_CASE("parallel run matches serial") {
  auto spec = make(3, 3, false, "A*,D*,B*,RHO*,E");
  auto serial = run_census(spec);
  spec.jobs = 4;
  CHECK(run_census(spec) == serial);
}

TEST_CASE("symmetry reduction matches the full box") {
  for (bool monic : {true, false}) {
    auto spec = make(3, 2, monic, monic ? "A,D,B,RHO,E" : "A*,D*,B*,RHO*,E");
    auto full = run_census(spec);
    spec.symmetry = true;
    CHECK(run_census(spec) == full);
  }
}

TEST_CASE("checkpoint resume") {
  auto path = scratch("resume.jsonl");
  auto spec = make(3, 2, false, "A*,D*");
  auto reference = run_census(spec);
  spec.checkpoint_path = path.string();
  const auto units = work_units(spec).size();
  spec.stop_after_units = static_cast<long long>(units / 2);
  auto partial = run_census(spec);
  CHECK_FALSE(partial.complete);
  CHECK(checkpoint_load(path.string()).units.size() == units / 2);
  spec.stop_after_units = -1;
  auto resumed = run_census(spec);
  CHECK(resumed.complete);
  CHECK(resumed == reference);
  // a finished checkpoint replays without work
  CHECK(run_census(spec) == reference);
}

TEST_CASE("checkpoint failure modes") {
  auto spec = make(2, 2, false, "A*");
  auto path = scratch("bad.jsonl");
  spec.checkpoint_path = path.string();
  run_census(spec);
  std::string data;
  {
    std::ifstream in(path);
    data.assign(std::istreambuf_iterator<char>(in), {});
  }
  SUBCASE("truncated") {
    std::ofstream(path, std::ios::trunc) << data.substr(0, data.size() - 7);
    CHECK(code_of([&] { checkpoint_load(path.string()); }) == ErrorCode::CheckpointCorrupt);
  }
  SUBCASE("tampered count") {
    auto pos = data.rfind("\"k=1\":");
    REQUIRE(pos != std::string::npos);
    data[pos + 6] = data[pos + 6] == '9' ? '8' : '9';
    std::ofstream(path, std::ios::trunc) << data;
    CHECK(code_of([&] { checkpoint_load(path.string()); }) == ErrorCode::CheckpointCorrupt);
  }
  SUBCASE("other census") {
    auto other = spec;
    other.H = 3;
    CHECK(code_of([&] { run_census(other); }) == ErrorCode::SpecMismatch);
  }
}

TEST_CASE("empty checkpoint is valid") {
  auto path = scratch("empty.jsonl");
  auto spec = make(2, 2, true, "A");
  checkpoint_save(path.string(), spec, {});
  auto st = checkpoint_load(path.string());
  CHECK(st.units.empty());
  CHECK(st.spec == spec.to_json());
}

TEST_CASE("parameter errors") {
  auto spec = make(6, 1000, false, "A*");
  CHECK(code_of([&] { run_census(spec); }) == ErrorCode::BudgetExceeded);
  CHECK(code_of([] { run_census(make(0, 1, false, "A*")); }) == ErrorCode::BadParameters);
  CHECK(code_of([] { CounterSet::parse("A,Q"); }) == ErrorCode::ParseError);
}

TEST_CASE("growth fit") {
  std::vector<std::pair<double, double>> cube;
  for (double h : {2.0, 4.0, 8.0, 16.0}) cube.push_back({h, h * h * h});
  auto f = fit_growth_exponent(cube);
  CHECK(std::abs(f.slope - 3.0) < 1e-9);
  CHECK(std::abs(f.intercept) < 1e-9);

  std::vector<std::pair<double, double>> pts;
  for (double h : {3.0, 10.0, 50.0, 200.0}) pts.push_back({h, 5.0 * std::pow(h, 1.5)});
  auto g = fit_growth_exponent(pts);
  CHECK(std::abs(g.slope - 1.5) < 1e-9);
  CHECK(std::abs(g.intercept - std::log(5.0)) < 1e-9);
  CHECK(g.residual < 1e-9);

  CHECK(code_of([] { fit_growth_exponent({{1, 1}, {2, 2}}); }) == ErrorCode::InsufficientPoints);
  CHECK(code_of([] { fit_growth_exponent({{1, 1}, {2, 0}, {3, 3}}); }) == ErrorCode::NonpositiveCount);
}

TEST_CASE("density report") {
  std::vector<CounterTable> cubic;
  for (int H = 1; H <= 4; ++H) {
    auto s = make(3, H, false, "A*,B*,D*");
    s.nonzero_constant = true;
    cubic.push_back(run_census(s));
  }
  auto rep = density_report(cubic);
  for (auto& row : rep.rows) {
    CHECK(row.b22 == 0u);
    CHECK(row.reciprocal_ok == true);
    CHECK(row.checksum_ok);
  }
  std::vector<CounterTable> quad;
  for (int H : {4, 8, 16, 32}) quad.push_back(run_census(make(2, H, false, "A*")));
  auto q = density_report(quad);
  for (auto& row : q.rows) {
    CHECK(row.checksum_ok);
    CHECK(row.total == static_cast<uint64_t>(2 * row.H * (2 * row.H + 1) * (2 * row.H + 1)));
  }
  CHECK(code_of([] { density_report({}); }) == ErrorCode::EmptyInput);
}

TEST_CASE("serialization") {
  auto t = run_census(make(3, 1, false, "A*,B*,RHO*,E"));
  auto j = to_json(t);
  CHECK(j.at("counters").at("reducible").is_number());
  CHECK(table_from_json(j) == t);
  auto csv = to_csv(t);
  CHECK(csv.rfind("n,H,family,label,count\n", 0) == 0);
  CHECK(csv.find("3,1,A*,\"k=1\",") != std::string::npos);
  CHECK(to_csv(t, false).rfind("n,H", 0) == std::string::npos);
  auto s = make(4, 3, true, "A,D");
  s.prime_bound = 50;
  CHECK(CensusSpec::from_json(s.to_json()).to_json() == s.to_json());
}
