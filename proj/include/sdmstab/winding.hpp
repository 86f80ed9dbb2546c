#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "sdmstab/polynomial.hpp"

namespace sdm {

// Unit-circle root counting for a real polynomial F of degree n through the
// contour image W(z) = F(z) / z^n of |z| = 1. W is a polynomial in z^-1 with a
// pole of order n at the origin, so
//
//   roots of F inside |z| < 1  =  n + winding number of W around 0.
//
// The image is symmetric about the real axis; its real-axis crossings are the
// characteristic points: the permanent points W(1) and W(-1), and the
// self-intersections at interior angles, which are the roots in (-1, 1) of
//
//   R1(x) = -Im W(e^{i phi}) / sin(phi),   x = cos(phi).

/// Self-intersection of the contour image on the real axis.
struct SelfIntersection {
  double x = 0.0;     // cos(phi), strictly inside (-1, 1)
  double re_w = 0.0;  // real value of W at that angle
};

struct CharacteristicPoints {
  double w_plus = 0.0;   // W(1)
  double w_minus = 0.0;  // W(-1)
  std::vector<SelfIntersection> selfx;  // sorted by x ascending
};

enum class CountMethod { e1, winding_oracle, eig_oracle, jury };

std::string_view to_string(CountMethod m);

struct RootCountResult {
  int inside = 0;  // roots with |z| < 1
  CountMethod method = CountMethod::e1;
  /// Some root sits on the unit circle (to within the margin); no stability
  /// verdict should be drawn. `inside` then counts the roots strictly inside.
  bool marginal = false;
  /// The all-inside predicate evaluated on the characteristic points.
  bool e1_predicate = false;
  std::optional<CharacteristicPoints> points;
  std::optional<int> winding;
};

/// Relative magnitude below which a characteristic point is treated as 0.
inline constexpr double kMarginalTolerance = 1e-9;

/// Characteristic points of W = F / z^n. F is negated first if its leading
/// coefficient is negative (root locations are unchanged). Throws on
/// polynomials of degree < 1.
CharacteristicPoints characteristic_points(const Poly& f);

/// Real-axis polynomials of the contour: R0(x) = Re W and
/// R1(x) = -Im W / sin(phi) with x = cos(phi). F is sign-normalized as above.
struct ContourPolys {
  Poly r0;
  Poly r1;
};

ContourPolys contour_polys(const Poly& f);

/// Counts the roots of F inside the unit circle from its characteristic points.
///
/// All n roots are inside exactly when both permanent points are positive and
/// the image does not wind around 0. The predicate on the number of
/// self-intersections left of the origin is checked first; whenever it fails,
/// or the crossing pattern of the characteristic points shows a net winding,
/// the exact count comes from winding_oracle instead.
RootCountResult count_inside_e1(const Poly& f);

/// Winding number of W(e^{i phi}) around 0 for phi in [0, 2 pi], from the
/// accumulated argument increment. Steps whose argument jump reaches pi/2 are
/// subdivided. Throws std::runtime_error when W comes within 1e-12 (relative)
/// of 0 on the contour or the refinement would exceed 2^20 steps.
int winding_oracle(const Poly& f, int samples = 4096);

/// Counts inside roots from all_roots; marginal when a root modulus is within
/// `margin` of 1.
RootCountResult count_inside_roots(const Poly& f, double margin = kMarginalTolerance);

enum class JuryVerdict { stable, unstable, marginal };

std::string_view to_string(JuryVerdict v);

/// Jury (Schur-Cohn) table test for all roots strictly inside |z| = 1.
/// Marginal when a table pivot vanishes to within 1e-10 of the row scale.
JuryVerdict jury_stable(const Poly& f);

struct ContourSample {
  double phi = 0.0;
  double re_w = 0.0;
  double im_w = 0.0;
};

/// W(e^{i phi}) at phi = 2 pi j / samples, j = 0 .. samples-1.
std::vector<ContourSample> contour(const Poly& f, int samples);

}  // namespace sdm
