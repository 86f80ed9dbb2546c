#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sdmstab/polynomial.hpp"
#include "sdmstab/transfer.hpp"

namespace sdm {

// Stability region of F(z; a) = a (z-1)^n + D(z) in the quasi-static integrator
// magnitude a = |I| >= 0.
//
// The root count can only change where a root crosses |z| = 1. Crossings at
// z = 1 never happen (F(1; a) = sum b_k for every a), a crossing at z = -1
// happens at a_min, and interior crossings are "zero points": angles where the
// contour image self-intersects exactly at the origin, i.e. where
// R0(x; a) = Re W and R1(x; a) share a root x in (-1, 1).

enum class CandidateSource { remainder_chain, closed_form_3, crossing_param };

std::string_view to_string(CandidateSource s);

struct ZeroPointCandidate {
  double a = 0.0;
  double x = 0.0;  // cos(phi) of the crossing
  bool valid = false;
  CandidateSource source = CandidateSource::remainder_chain;
};

struct ZeroPointSet {
  std::vector<ZeroPointCandidate> candidates;
  /// The terminal remainder vanished identically: R0 and R1 share a root for
  /// every a (e.g. reciprocal D), so there is no discrete candidate list.
  bool continuum = false;
  /// Terminal remainder as a polynomial in a, with the factors belonging to a
  /// vanishing leading coefficient of R0 divided out.
  Poly terminal;
};

struct StabilityInterval {
  double lo = 0.0;
  double hi = 0.0;  // +infinity for the unbounded tail
  bool stable = false;
  /// The probe sat on the unit circle; `stable` is false without a verdict.
  bool marginal = false;
  double witness_a = 0.0;
  int witness_count = 0;  // roots inside |z| < 1 at witness_a
};

struct StabilityReport {
  int order = 0;
  double sum_b = 0.0;
  double a_min = 0.0;
  std::vector<ZeroPointCandidate> candidates;
  std::vector<StabilityInterval> intervals;
  bool continuum = false;
  std::string note;
};

/// a at which F(-1; a) = 0: -sum_k (-1)^k b_k / 2^n.
double i_min(std::span<const double> b);

/// Zero points from the remainder chain R0, R1, R2 = R0 mod R1, ... carried
/// symbolically in a (subresultant form, so every entry stays polynomial in
/// a). The degree-zero terminal remainder is solved for real a >= 0 and x is
/// recovered from the last linear remainder. A candidate is valid when
/// |x| < 1, the chain does not degenerate at that a, and F(e^{i phi}; a)
/// vanishes there to 1e-7 relative.
ZeroPointSet zero_point_candidates(std::span<const double> b);

struct ClosedFormBound {
  double a = 0.0;
  double x = 0.0;
  bool valid = false;
};

/// Third-order closed form a = (b1 b3 - b3^2) / (b1 + b2 + b3), with
/// x = -(b2 + 2a) / (2 (b3 - a)). Throws std::domain_error when b1+b2+b3 = 0.
ClosedFormBound i_max_order3(std::span<const double> b);

/// Fifth-order polynomial T2(x) such that R0 mod R1 = a - T2(x):
/// T2 = 8 d5 x^3 + 4 d4 x^2 + (2 d3 - 4 d5) x + d2 - d4.
Poly t2_order5(const DCoeffs& d);

/// a(phi) = -D(e^{i phi}) / (e^{i phi} - 1)^n; F(e^{i phi}; a) = 0 exactly
/// when a = a(phi). At phi = pi this is a_min.
Complex crossing_value(std::span<const double> b, double phi);

/// Scans phi in (0, pi) for sign changes of Im a(phi) and bisects them to
/// 1e-12, returning the real positive crossings.
std::vector<ZeroPointCandidate> crossing_param(std::span<const double> b, int phi_grid = 2048);

/// Stable/unstable intervals in a, split at a_min and the valid zero points,
/// each classified by a root count at an interior probe.
StabilityReport classify_intervals(std::span<const double> b);

/// Bisects on a until hi - lo <= 1e-10 between two points whose stability
/// verdicts differ (root-modulus oracle). Throws std::invalid_argument when
/// both ends agree.
double bisect_boundary(std::span<const double> b, double lo, double hi);

}  // namespace sdm
