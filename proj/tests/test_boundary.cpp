#include <catch2/catch_amalgamated.hpp>

#include <numbers>

#include "oracles.hpp"
#include "sdmstab/boundary.hpp"
#include "sdmstab/winding.hpp"

using namespace sdm;
using Catch::Approx;
using V = std::vector<double>;

namespace {

// b for a loop whose linear denominator B has the given real/complex-pair
// poles, all inside the unit circle.
V random_stable_design(std::mt19937_64& g, int n) {
  std::uniform_real_distribution<double> rad(0.05, 0.95), ang(0.0, std::numbers::pi);
  std::vector<oracle::cd> poles;
  while (static_cast<int>(poles.size()) < n) {
    if (n - static_cast<int>(poles.size()) >= 2 && ang(g) < 2.0) {
      const auto p = std::polar(rad(g), ang(g));
      poles.push_back(p);
      poles.push_back(std::conj(p));
    } else {
      poles.push_back(rad(g) * (ang(g) < 1.5 ? 1.0 : -1.0));
    }
  }
  std::vector<oracle::cd> c{1.0};
  for (const auto& p : poles) {
    std::vector<oracle::cd> next(c.size() + 1, 0.0);
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i + 1] += c[i];
      next[i] -= p * c[i];
    }
    c = next;
  }
  V b(n);
  for (int k = 1; k <= n; ++k) {
    b[k - 1] = c[n - k].real() - oracle::binom(n, k) * (k % 2 ? -1.0 : 1.0);
  }
  return b;
}

}  // namespace

TEST_CASE("i_min", "[boundary]") {
  CHECK(i_min(V{3, -3, 1}) == 0.875);
  CHECK(i_min(V{1}) == 0.5);
  CHECK(i_min(V{1, 1}) == 0.0);
  const Poly f = char_poly(V{3, -3, 1}, 0.875);
  CHECK(f(-1.0) == Approx(0.0).margin(1e-15));
}

TEST_CASE("zero point candidates, worked cases", "[boundary]") {
  ZeroPointSet zs = zero_point_candidates(V{3, -3, 1});
  REQUIRE(zs.candidates.size() == 1);
  CHECK(zs.candidates[0].a == Approx(2.0).margin(1e-12));
  CHECK(zs.candidates[0].x == Approx(0.5).margin(1e-12));
  CHECK(zs.candidates[0].valid);
  CHECK(zs.candidates[0].source == CandidateSource::remainder_chain);
  CHECK_FALSE(zs.continuum);

  zs = zero_point_candidates(V{1, 0.5, 0.1});
  REQUIRE(zs.candidates.size() == 1);
  CHECK(zs.candidates[0].a == Approx(0.05625).margin(1e-12));
  CHECK(zs.candidates[0].x == Approx(-7.0).margin(1e-9));
  CHECK_FALSE(zs.candidates[0].valid);

  zs = zero_point_candidates(V{1, 0});
  CHECK(zs.continuum);
  CHECK(zs.candidates.empty());
}

TEST_CASE("order-3 closed form", "[boundary]") {
  ClosedFormBound cf = i_max_order3(V{3, -3, 1});
  CHECK(cf.a == 2.0);
  CHECK(cf.x == 0.5);
  CHECK(cf.valid);
  cf = i_max_order3(V{1, 0.5, 0.1});
  CHECK(cf.a == Approx(0.05625));
  CHECK(cf.x == Approx(-7.0));
  CHECK_FALSE(cf.valid);
  CHECK(i_max_order3(V{1, 1, 1}).a == 0.0);
  CHECK_THROWS_AS(i_max_order3(V{1, -2, 1}), std::domain_error);
}

TEST_CASE("t2_order5 worked values", "[boundary]") {
  CHECK(t2_order5(DCoeffs{V{0, 1, 0, 0, 0}, 0.0}) == Poly{1});
  CHECK(t2_order5(DCoeffs{V{0, 0, 0, 0, 1}, 0.0}) == Poly{0, -4, 0, 8});
  CHECK(t2_order5(DCoeffs{V{0, 0, 0, 1, 0}, 0.0}) == Poly{-1, 0, 4});
}

TEST_CASE("remainder of R0 by R1 is a - T2 for order 5", "[boundary][property]") {
  auto g = oracle::rng(41);
  for (int t = 0; t < 1000; ++t) {
    const V d = oracle::uniform(g, 5, -4, 4);
    const double a = oracle::uniform(g, 1, 0, 4)[0];
    const Poly r0 = cheb_expand(d, a, ChebKind::cosine);
    const Poly r1 = cheb_expand(d, a, ChebKind::sine);
    const Poly rem = poly_rem(r0, r1).remainder;
    // Reference written out term by term.
    const Poly t2{d[1] - d[3], 2 * d[2] - 4 * d[4], 4 * d[3], 8 * d[4]};
    const Poly expect = Poly{a} - t2;
    CHECK(t2_order5(DCoeffs{d, a}) == t2);
    const double scale = std::max(1.0, expect.max_abs_coeff());
    for (int k = 0; k <= 3; ++k) CHECK(std::abs(rem[k] - expect[k]) <= 1e-9 * scale);
  }
}

TEST_CASE("crossing_param", "[boundary]") {
  auto c = crossing_param(V{3, -3, 1});
  REQUIRE(c.size() == 1);
  CHECK(c[0].a == Approx(2.0).margin(1e-8));
  CHECK(c[0].x == Approx(0.5).margin(1e-8));
  CHECK(c[0].source == CandidateSource::crossing_param);
  CHECK(crossing_param(V{1, 0.5, 0.1}).empty());

  auto g = oracle::rng(42);
  for (int t = 0; t < 200; ++t) {
    const V b = oracle::uniform(g, 1 + t % 5, -4, 4);
    const Complex lim = crossing_value(b, std::numbers::pi);
    CHECK(std::abs(lim.real() - i_min(b)) <= 1e-10 * std::max(1.0, std::abs(i_min(b))));
    CHECK(std::abs(lim.imag()) <= 1e-10);
  }
}

TEST_CASE("chain and crossing parametrisation agree", "[boundary][property]") {
  for (int n = 3; n <= 5; ++n) {
    auto g = oracle::rng(430 + n);
    int compared = 0;
    for (int t = 0; t < 500; ++t) {
      const V b = oracle::uniform(g, n, -4, 4);
      V chain;
      for (const auto& c : zero_point_candidates(b).candidates) {
        if (c.valid && c.a > 1e-9) chain.push_back(c.a);
      }
      V cross;
      for (const auto& c : crossing_param(b)) cross.push_back(c.a);
      std::sort(chain.begin(), chain.end());
      std::sort(cross.begin(), cross.end());
      INFO("order " << n << " case " << t);
      REQUIRE(chain.size() == cross.size());
      for (std::size_t i = 0; i < chain.size(); ++i) {
        CHECK(std::abs(chain[i] - cross[i]) <= 1e-8 * std::max(1.0, chain[i]));
      }
      compared += static_cast<int>(chain.size());
    }
    CHECK(compared > 50);
  }
}

TEST_CASE("valid candidates sit on the circle", "[boundary][property]") {
  auto g = oracle::rng(44);
  for (int t = 0; t < 600; ++t) {
    const V b = oracle::uniform(g, 2 + t % 4, -4, 4);
    for (const auto& c : zero_point_candidates(b).candidates) {
      if (!c.valid) continue;
      CHECK(std::abs(c.x) < 1.0);
      CHECK(oracle::min_circle_distance(oracle::char_poly(b, c.a)) <= 1e-7);
    }
  }
}

TEST_CASE("classify_intervals worked cases", "[boundary]") {
  StabilityReport r = classify_intervals(V{3, -3, 1});
  CHECK(r.sum_b == 1.0);
  CHECK(r.a_min == 0.875);
  REQUIRE(r.intervals.size() == 3);
  CHECK(r.intervals[0].lo == 0.0);
  CHECK(r.intervals[0].hi == 0.875);
  CHECK_FALSE(r.intervals[0].stable);
  CHECK(r.intervals[1].hi == Approx(2.0).margin(1e-12));
  CHECK(r.intervals[1].stable);
  CHECK(r.intervals[1].witness_a == 1.0);
  CHECK(r.intervals[1].witness_count == 3);
  CHECK_FALSE(r.intervals[2].stable);
  CHECK(std::isinf(r.intervals[2].hi));
  CHECK(oracle::count_inside(oracle::char_poly(V{3, -3, 1}, 0.5)) < 3);
  CHECK(oracle::count_inside(oracle::char_poly(V{3, -3, 1}, 3.0)) < 3);

  r = classify_intervals(V{1, 1, 1});
  CHECK(r.a_min == 0.125);
  for (const auto& c : r.candidates) CHECK((!c.valid || c.a == 0.0));
  for (const auto& iv : r.intervals) {
    const int ref = oracle::count_inside(oracle::char_poly(V{1, 1, 1}, iv.witness_a));
    CHECK(iv.witness_count == ref);
  }

  r = classify_intervals(V{1, -2, 1});
  CHECK(r.sum_b == 0.0);
  REQUIRE(r.intervals.size() == 1);
  CHECK_FALSE(r.intervals[0].stable);
  CHECK_FALSE(r.note.empty());
}

TEST_CASE("classification matches the eigenvalue oracle", "[boundary][property]") {
  auto g = oracle::rng(45);
  for (int t = 0; t < 400; ++t) {
    const int n = 1 + t % 5;
    const V b = t % 2 ? random_stable_design(g, n) : oracle::uniform(g, n, -4, 4);
    const StabilityReport r = classify_intervals(b);
    for (std::size_t i = 0; i < r.intervals.size(); ++i) {
      const auto& iv = r.intervals[i];
      if (i > 0) CHECK(iv.lo == r.intervals[i - 1].hi);
      if (iv.marginal) continue;
      const V f = oracle::char_poly(b, iv.witness_a);
      if (oracle::min_circle_distance(f) < 1e-7) continue;
      CHECK(iv.witness_count == oracle::count_inside(f));
    }
    // Linear-case anchor: a stable B puts a = 1 in a stable interval.
    if (r.sum_b > 0 && oracle::count_inside(oracle::char_poly(b, 1.0)) == n &&
        oracle::min_circle_distance(oracle::char_poly(b, 1.0)) > 1e-6) {
      bool found = false;
      for (const auto& iv : r.intervals) found = found || (iv.lo < 1.0 && 1.0 < iv.hi && iv.stable);
      CHECK(found);
    }
  }
}

TEST_CASE("bisect_boundary", "[boundary]") {
  CHECK(bisect_boundary(V{3, -3, 1}, 1.0, 3.0) == Approx(2.0).margin(1e-9));
  CHECK(bisect_boundary(V{3, -3, 1}, 0.5, 1.0) == Approx(0.875).margin(1e-9));
  CHECK_THROWS_AS(bisect_boundary(V{3, -3, 1}, 1.0, 1.5), std::invalid_argument);
}

TEST_CASE("closed form agrees with bisection", "[boundary][property]") {
  auto g = oracle::rng(46);
  int checked = 0;
  for (int t = 0; t < 2000 && checked < 100; ++t) {
    const V b = random_stable_design(g, 3);
    const ClosedFormBound cf = i_max_order3(b);
    if (!cf.valid || cf.a <= 1.0) continue;
    const StabilityReport r = classify_intervals(b);
    for (std::size_t i = 0; i + 1 < r.intervals.size(); ++i) {
      if (std::abs(r.intervals[i].hi - cf.a) > 1e-9 * std::max(1.0, cf.a)) continue;
      if (r.intervals[i].stable == r.intervals[i + 1].stable) continue;
      const double hit = bisect_boundary(b, r.intervals[i].witness_a, r.intervals[i + 1].witness_a);
      CHECK(std::abs(hit - cf.a) <= 1e-6 * std::max(1.0, cf.a));
      ++checked;
    }
  }
  CHECK(checked >= 100);
}
