#include <catch2/catch_amalgamated.hpp>

#include <numbers>

#include "oracles.hpp"
#include "sdmstab/transfer.hpp"
#include "sdmstab/winding.hpp"

using namespace sdm;
using Catch::Approx;
using V = std::vector<double>;

namespace {

// Random polynomial of degree 1..5 with no root within `gap` of the circle.
V random_clear_poly(std::mt19937_64& g, int degree, double gap) {
  while (true) {
    V c = oracle::uniform(g, static_cast<std::size_t>(degree) + 1, -4, 4);
    if (std::abs(c.back()) < 1e-3) continue;
    if (oracle::min_circle_distance(c) > gap) return c;
  }
}

}  // namespace

TEST_CASE("characteristic points of z^2 + 0.5 z + 0.75", "[winding]") {
  const CharacteristicPoints p = characteristic_points(Poly{0.75, 0.5, 1});
  CHECK(p.w_plus == Approx(2.25).margin(1e-12));
  CHECK(p.w_minus == Approx(1.25).margin(1e-12));
  REQUIRE(p.selfx.size() == 1);
  CHECK(p.selfx[0].x == Approx(-1.0 / 3.0).margin(1e-12));
  CHECK(p.selfx[0].re_w == Approx(0.25).margin(1e-9));
}

TEST_CASE("characteristic points, trivial and out-of-range cases", "[winding]") {
  CharacteristicPoints p = characteristic_points(Poly{0, 0, 0, 1});
  CHECK(p.w_plus == 1.0);
  CHECK(p.w_minus == 1.0);
  CHECK(p.selfx.empty());
  p = characteristic_points(Poly{0.1, 1, 1});
  CHECK(p.selfx.empty());
  CHECK_THROWS(characteristic_points(Poly{}));
}

TEST_CASE("count_inside_e1 examples", "[winding]") {
  RootCountResult r = count_inside_e1(Poly{0.75, 0.5, 1});
  CHECK(r.inside == 2);
  CHECK(r.method == CountMethod::e1);
  CHECK(r.e1_predicate);
  CHECK_FALSE(r.marginal);
  for (int n = 1; n <= 5; ++n) CHECK(count_inside_e1(Poly::monomial(n)).inside == n);
  r = count_inside_e1(Poly{1, -2.5, 1});
  CHECK(r.inside == 1);
  CHECK(r.method == CountMethod::winding_oracle);
  // Roots on the circle are refused.
  r = count_inside_e1(Poly{-1, 3, -3, 2});
  CHECK(r.marginal);
}

TEST_CASE("even self-intersection count with net winding is not all-inside", "[winding]") {
  // 0.01 z^4 + 1: both permanent points positive and two crossings left of 0,
  // yet every root has modulus 10^(1/2).
  const Poly f{1, 0, 0, 0, 0.01};
  const RootCountResult r = count_inside_e1(f);
  CHECK(r.e1_predicate);
  CHECK(r.inside == 0);
  CHECK(r.inside == oracle::count_inside({1, 0, 0, 0, 0.01}));
}

TEST_CASE("winding_oracle examples", "[winding]") {
  CHECK(winding_oracle(Poly{0.75, 0.5, 1}) == 0);
  CHECK(winding_oracle(Poly{-2, 1}) == -1);
  CHECK(winding_oracle(Poly{0, 0, 1}) == 0);
  CHECK_THROWS_AS(winding_oracle(Poly{-1, 1}), std::runtime_error);
}

TEST_CASE("jury_stable examples", "[winding]") {
  CHECK(jury_stable(Poly{1, -2.5, 1}) == JuryVerdict::unstable);
  CHECK(jury_stable(Poly{0, 0, 1}) == JuryVerdict::stable);
  CHECK(jury_stable(Poly{-1, 3, -3, 2}) != JuryVerdict::stable);
}

TEST_CASE("permanent point identities", "[winding][property]") {
  auto g = oracle::rng(31);
  for (int t = 0; t < 1000; ++t) {
    const int n = 1 + t % 5;
    const V b = oracle::uniform(g, n, -4, 4);
    const double a = oracle::uniform(g, 1, 0, 4)[0];
    const CharacteristicPoints p = characteristic_points(char_poly(b, a));
    double sum = 0.0, alt = 0.0;
    for (int k = 1; k <= n; ++k) {
      sum += b[k - 1];
      alt += (k % 2 ? -1.0 : 1.0) * b[k - 1];
    }
    CHECK(std::abs(p.w_plus - sum) <= 1e-12 * std::max(1.0, std::abs(sum)) * 10);
    CHECK(std::abs(p.w_minus - (std::pow(2.0, n) * a + alt)) <= 1e-12 * std::max(1.0, std::pow(2.0, n) * a) * 10);
  }
}

TEST_CASE("self-intersections are real roots of R1", "[winding][property]") {
  auto g = oracle::rng(32);
  for (int t = 0; t < 500; ++t) {
    const V c = oracle::uniform(g, 2 + t % 5, -4, 4);
    const Poly f(c);
    if (f.degree() < 1) continue;
    const CharacteristicPoints p = characteristic_points(f);
    const ContourPolys cp = contour_polys(f);
    double prev = -1.0;
    for (const auto& s : p.selfx) {
      CHECK(std::abs(s.x) < 1.0);
      CHECK(s.x > prev);
      prev = s.x;
      CHECK(std::abs(cp.r1(s.x)) <= 1e-10 * std::max(1.0, cp.r1.max_abs_coeff()));
      // Im W vanishes there, and Re W matches the direct evaluation.
      const double phi = std::acos(s.x);
      const Complex w = oracle::eval(V(f.coeffs().begin(), f.coeffs().end()), std::polar(1.0, phi)) /
                        std::pow(std::polar(1.0, phi), f.degree());
      const double sgn = f.leading() < 0 ? -1.0 : 1.0;
      CHECK(std::abs(w.imag()) <= 1e-9 * f.max_abs_coeff() * 10);
      CHECK(sgn * w.real() == Approx(s.re_w).margin(1e-9 * f.max_abs_coeff()));
    }
    if (real_roots_open(cp.r1.is_zero() ? Poly{1} : cp.r1, -1, 1).empty()) CHECK(p.selfx.empty());
  }
}

TEST_CASE("contour symmetry", "[winding][property]") {
  auto g = oracle::rng(33);
  for (int t = 0; t < 50; ++t) {
    const Poly f(oracle::uniform(g, 2 + t % 5, -4, 4));
    const auto s = contour(f, 128);
    REQUIRE(s.size() == 128);
    for (int j = 1; j < 64; ++j) {
      CHECK(std::abs(s[j].re_w - s[128 - j].re_w) <= 1e-12 * f.max_abs_coeff() * 10);
      CHECK(std::abs(s[j].im_w + s[128 - j].im_w) <= 1e-12 * f.max_abs_coeff() * 10);
    }
  }
  const auto s = contour(char_poly(V{3, -3, 1}, 1.5), 8);
  CHECK(s.size() == 8);
  CHECK(s[0].phi == 0.0);
  CHECK(s[0].re_w == Approx(1.0));
}

TEST_CASE("root counts agree across all oracles", "[winding][property]") {
  auto g = oracle::rng(34);
  for (int t = 0; t < 3000; ++t) {
    const int deg = 1 + t % 5;
    const V c = random_clear_poly(g, deg, 1e-6);
    const Poly f(c);
    const int ref = oracle::count_inside(c);
    const RootCountResult e1 = count_inside_e1(f);
    REQUIRE_FALSE(e1.marginal);
    CHECK(e1.inside == ref);
    CHECK(deg + winding_oracle(f) == ref);
    CHECK(count_inside_roots(f).inside == ref);
    const JuryVerdict j = jury_stable(f);
    if (j != JuryVerdict::marginal) CHECK((j == JuryVerdict::stable) == (ref == deg));
    if (oracle::min_circle_distance(c) > 1e-2) CHECK(deg + oracle::winding(c, 4096) == ref);
  }
}
