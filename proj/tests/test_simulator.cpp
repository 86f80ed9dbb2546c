#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "sdmstab/simulator.hpp"
#include "sdmstab/transfer.hpp"

using namespace sdm;
using Catch::Approx;
using V = std::vector<double>;

namespace {

std::vector<GridPoint> grid_of(const std::vector<bool>& stable) {
  std::vector<GridPoint> g;
  for (std::size_t i = 0; i < stable.size(); ++i) g.push_back({0.1 * static_cast<double>(i), stable[i], 0.0, {}});
  return g;
}

}  // namespace

TEST_CASE("first-order limit cycle", "[simulator]") {
  SimOptions o;
  o.samples = 100;
  o.initial_state = {0.5};
  std::vector<TraceRow> trace;
  const SimResult r = run_traced(V{1}, DcInput{0.0}, o, 100, trace);
  CHECK_FALSE(r.diverged);
  CHECK_FALSE(r.first_divergence_sample.has_value());
  CHECK(r.mean_v == 0.0);
  CHECK(r.max_abs_state == 0.5);
  REQUIRE(trace.size() == 100);
  for (const auto& row : trace) {
    CHECK(std::abs(row.s[0]) == 0.5);
    CHECK((row.v == 1 || row.v == -1));
    CHECK(row.v == (row.s[0] >= 0.0 ? 1 : -1));
  }
}

TEST_CASE("first-order DC tracking", "[simulator]") {
  for (double x : {-0.5, -0.25, 0.0, 0.25, 0.5}) {
    const SimResult r = run(V{1}, DcInput{x}, SimOptions{});
    CHECK_FALSE(r.diverged);
    CHECK(std::abs(r.mean_v - x) <= 1e-3);
    CHECK(r.samples_run == 100000);
  }
}

TEST_CASE("open loop integrates to divergence", "[simulator]") {
  for (int n = 1; n <= 5; ++n) {
    SimOptions o;
    o.samples = 100000;
    o.threshold = 1e3;
    const SimResult r = run(V(n, 0.0), DcInput{0.3}, o);
    CHECK(r.diverged);
    REQUIRE(r.first_divergence_sample.has_value());
    CHECK(r.max_abs_state > o.threshold);
    CHECK(r.mean_v == 1.0);
    CHECK(r.samples_run == *r.first_divergence_sample + 1);
  }
}

TEST_CASE("argument validation", "[simulator]") {
  SimOptions o;
  CHECK_THROWS_AS(run(V{}, DcInput{0.0}, o), std::invalid_argument);
  CHECK_THROWS_AS(run(V(6, 1.0), DcInput{0.0}, o), std::invalid_argument);
  o.samples = 0;
  CHECK_THROWS_AS(run(V{1}, DcInput{0.0}, o), std::invalid_argument);
  o.samples = 10;
  o.initial_state = {1, 2};
  CHECK_THROWS_AS(run(V{1}, DcInput{0.0}, o), std::invalid_argument);
  CHECK_THROWS_AS(run(V{1}, SineInput{0.5, 0.0}, SimOptions{}), std::invalid_argument);
}

TEST_CASE("linearized impulse matches the NTF series", "[simulator][property]") {
  CHECK(linearized_impulse(V{1}, 4) == V{1, -1, 0, 0});
  CHECK(linearized_impulse(V{1, 2}, 5) == V{1, -2, 1, 0, 0});
  CHECK(linearized_impulse(V{0, 0, 0}, 4) == V{1, 0, 0, 0});
  auto g = oracle::rng(51);
  for (int t = 0; t < 100; ++t) {
    const V gains = oracle::uniform(g, 1 + t % 5, -1, 1);
    const V sim = linearized_impulse(gains, 64);
    const V ntf = ntf_series(b_from_g(gains), 64);
    for (int m = 0; m < 64; ++m) CHECK(std::abs(sim[m] - ntf[m]) <= 1e-9 * std::max(1.0, std::abs(ntf[m])));
  }
}

TEST_CASE("determinism and reporting invariants", "[simulator][property]") {
  auto g = oracle::rng(52);
  for (int t = 0; t < 60; ++t) {
    const int n = 1 + t % 5;
    const V gains = oracle::uniform(g, n, 0, 2);
    SimOptions o;
    o.samples = 20000;
    o.threshold = 1e4;
    o.initial_state = oracle::uniform(g, n, -0.5, 0.5);
    const InputSignal in = t % 3 ? InputSignal{DcInput{0.1 * (t % 7)}} : InputSignal{SineInput{0.3, 50.0}};
    const SimResult a = run(gains, in, o);
    const SimResult b = run(gains, in, o);
    CHECK(a == b);
    CHECK(a.diverged == (a.max_abs_state > o.threshold));
    CHECK(a.diverged == a.first_divergence_sample.has_value());
    CHECK(std::abs(a.mean_v) <= 1.0);

    std::vector<TraceRow> trace;
    const SimResult c = run_traced(gains, in, o, 500, trace);
    CHECK(c == a);
    for (const auto& row : trace) {
      CHECK((row.v == 1 || row.v == -1));
      CHECK(row.v == (row.s.back() >= 0.0 ? 1 : -1));
    }
  }
}

TEST_CASE("extract_windows", "[simulator]") {
  const std::vector<GridPoint> g = {
      {0.0, true, 0, {}}, {0.1, true, 0, {}}, {0.2, false, 0, {}},
      {0.3, true, 0, {}}, {0.4, false, 0, {}}, {0.5, false, 0, {}},
  };
  CHECK(extract_windows(g) == std::vector<Window>{{0.2, 0.2}, {0.4, 0.5}});
  CHECK(extract_windows(grid_of({true, true, true})).empty());
  const auto all = extract_windows(grid_of({false, false, false, false}));
  REQUIRE(all.size() == 1);
  CHECK(all[0].lo == 0.0);
  CHECK(all[0].hi == Approx(0.3));
  CHECK(extract_windows(grid_of({true, false, true, false})).size() == 2);
  CHECK(extract_windows(std::vector<GridPoint>{}).empty());
}

TEST_CASE("windows cover exactly the unstable runs", "[simulator][property]") {
  auto g = oracle::rng(53);
  std::bernoulli_distribution coin(0.4);
  for (int t = 0; t < 200; ++t) {
    std::vector<bool> s(1 + t % 40);
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = coin(g);
    const auto grid = grid_of(s);
    const auto w = extract_windows(grid);
    for (std::size_t i = 1; i < w.size(); ++i) CHECK(w[i - 1].hi < w[i].lo);
    for (const auto& p : grid) {
      bool covered = false;
      for (const auto& win : w) covered = covered || (win.lo <= p.amplitude && p.amplitude <= win.hi);
      CHECK(covered == !p.stable);
    }
  }
}

TEST_CASE("sweep", "[simulator]") {
  SweepOptions o;
  o.amp_lo = 0.0;
  o.amp_hi = 0.9;
  o.steps = 10;
  o.samples = 10000;
  const WindowReport r = sweep(V{1}, o);
  REQUIRE(r.grid.size() == 10);
  CHECK(r.windows.empty());
  CHECK(r.grid.front().amplitude == 0.0);
  CHECK(r.grid.back().amplitude == 0.9);

  // Worker count does not change the result.
  o.workers = 1;
  const WindowReport one = sweep(V{0.216, 1.08, 1.8}, o);
  o.workers = 4;
  const WindowReport four = sweep(V{0.216, 1.08, 1.8}, o);
  CHECK(one.grid == four.grid);
  CHECK(one.windows == four.windows);

  o.amp_hi = o.amp_lo;
  CHECK_THROWS_AS(sweep(V{1}, o), std::invalid_argument);
  o.amp_hi = 1.0;
  o.steps = 1;
  CHECK_THROWS_AS(sweep(V{1}, o), std::invalid_argument);
}
