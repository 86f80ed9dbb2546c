#include "sdmstab/winding.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sdm {

std::string_view to_string(CountMethod m) {
  switch (m) {
    case CountMethod::e1: return "e1";
    case CountMethod::winding_oracle: return "winding_oracle";
    case CountMethod::eig_oracle: return "eig_oracle";
    case CountMethod::jury: return "jury";
  }
  return "unknown";
}

std::string_view to_string(JuryVerdict v) {
  switch (v) {
    case JuryVerdict::stable: return "stable";
    case JuryVerdict::unstable: return "unstable";
    case JuryVerdict::marginal: return "marginal";
  }
  return "unknown";
}

namespace {

Poly sign_normalized(const Poly& f) {
  if (f.degree() < 1) throw std::invalid_argument("contour analysis needs a polynomial of degree >= 1");
  return f.leading() < 0.0 ? -f : f;
}

// Sign of the real value: 1 when left of the origin.
int left_of_origin(double v) { return v < 0.0 ? 1 : 0; }

// Net winding read off the characteristic points. Between consecutive real-axis
// crossings the upper-half image stays in one half plane, so each segment
// changes the argument by 0 or +-pi; by conjugate symmetry the half-contour
// increment divided by pi is the full winding number.
int characteristic_winding(const Poly& r1, const CharacteristicPoints& pts) {
  if (r1.is_zero()) return 0;
  // Walk phi from 0 to pi, i.e. x from 1 down to -1.
  std::vector<double> xs{1.0};
  std::vector<double> vals{pts.w_plus};
  for (auto it = pts.selfx.rbegin(); it != pts.selfx.rend(); ++it) {
    xs.push_back(it->x);
    vals.push_back(it->re_w);
  }
  xs.push_back(-1.0);
  vals.push_back(pts.w_minus);

  int winding = 0;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    const double mid = 0.5 * (xs[i] + xs[i + 1]);
    // Im W = -sin(phi) R1(x) with sin(phi) > 0 inside the segment.
    const int upper = r1(mid) < 0.0 ? 1 : -1;
    winding += upper * (left_of_origin(vals[i + 1]) - left_of_origin(vals[i]));
  }
  return winding;
}

}  // namespace

ContourPolys contour_polys(const Poly& f) {
  const Poly fn = sign_normalized(f);
  const int n = fn.degree();
  // W = sum_k w_k z^-k with w_k = f_{n-k}; on |z| = 1,
  // Re W = w_0 + sum w_k cos(k phi), Im W = -sum w_k sin(k phi).
  ContourPolys out;
  out.r0 = Poly{fn[n]};
  for (int k = 1; k <= n; ++k) {
    const double wk = fn[n - k];
    if (wk == 0.0) continue;
    out.r0 += wk * chebyshev_t(k);
    out.r1 += wk * chebyshev_u(k - 1);
  }
  return out;
}

CharacteristicPoints characteristic_points(const Poly& f) {
  const Poly fn = sign_normalized(f);
  const int n = fn.degree();
  const ContourPolys cp = contour_polys(fn);

  CharacteristicPoints pts;
  pts.w_plus = fn(1.0);
  pts.w_minus = (n % 2 == 0 ? 1.0 : -1.0) * fn(-1.0);
  if (!cp.r1.is_zero()) {
    for (double x : real_roots_open(cp.r1, -1.0, 1.0)) pts.selfx.push_back({x, cp.r0(x)});
  }
  return pts;
}

RootCountResult count_inside_e1(const Poly& f) {
  const Poly fn = sign_normalized(f);
  const int n = fn.degree();
  const double scale = fn.max_abs_coeff();
  const double tol = kMarginalTolerance * scale;
  const ContourPolys cp = contour_polys(fn);
  CharacteristicPoints pts = characteristic_points(fn);

  bool on_contour = std::abs(pts.w_plus) <= tol || std::abs(pts.w_minus) <= tol;
  int left = 0;
  for (const auto& s : pts.selfx) {
    on_contour = on_contour || std::abs(s.re_w) <= tol;
    if (s.re_w <= 0.0) ++left;
  }

  if (on_contour) {
    RootCountResult r = count_inside_roots(fn, kMarginalTolerance);
    r.marginal = true;
    r.points = std::move(pts);
    return r;
  }

  RootCountResult r;
  r.e1_predicate = pts.w_plus > 0.0 && pts.w_minus > 0.0 && left % 2 == 0;
  const int crossing = characteristic_winding(cp.r1, pts);
  r.points = std::move(pts);

  if (r.e1_predicate && crossing == 0) {
    r.inside = n;
    r.method = CountMethod::e1;
    r.winding = 0;
    return r;
  }

  try {
    const int w = winding_oracle(fn);
    r.inside = n + w;
    r.winding = w;
    r.method = CountMethod::winding_oracle;
  } catch (const std::runtime_error&) {
    RootCountResult fallback = count_inside_roots(fn, kMarginalTolerance);
    fallback.marginal = true;
    fallback.e1_predicate = r.e1_predicate;
    fallback.points = std::move(r.points);
    return fallback;
  }
  return r;
}

namespace {

constexpr int kMaxWindingSteps = 1 << 20;

struct WindingWalker {
  const Poly& f;
  int n;
  double floor;
  int budget;

  Complex image(double phi) const {
    const Complex z = std::polar(1.0, phi);
    const Complex w = f(z) * std::polar(1.0, -n * phi);
    if (std::abs(w) <= floor) throw std::runtime_error("winding_oracle: root on the contour");
    return w;
  }

  double increment(double phi0, double phi1, Complex w0, Complex w1, int depth) {
    const double d = std::arg(w1 / w0);
    if (std::abs(d) < 0.5 * std::numbers::pi) return d;
    if (depth >= 20 || --budget <= 0) {
      throw std::runtime_error("winding_oracle: refinement limit reached, root too close to the contour");
    }
    const double mid = 0.5 * (phi0 + phi1);
    const Complex wm = image(mid);
    return increment(phi0, mid, w0, wm, depth + 1) + increment(mid, phi1, wm, w1, depth + 1);
  }
};

}  // namespace

int winding_oracle(const Poly& f, int samples) {
  if (f.degree() < 1) throw std::invalid_argument("winding_oracle: degree must be >= 1");
  if (samples < 4) throw std::invalid_argument("winding_oracle: need at least 4 samples");
  WindingWalker walker{f, f.degree(), 1e-12 * f.max_abs_coeff(), kMaxWindingSteps - samples};
  const double step = 2.0 * std::numbers::pi / samples;
  double total = 0.0;
  Complex prev = walker.image(0.0);
  const Complex first = prev;
  for (int j = 1; j <= samples; ++j) {
    const double phi0 = (j - 1) * step;
    const double phi1 = j * step;
    const Complex cur = j == samples ? first : walker.image(phi1);
    total += walker.increment(phi0, phi1, prev, cur, 0);
    prev = cur;
  }
  return static_cast<int>(std::lround(total / (2.0 * std::numbers::pi)));
}

RootCountResult count_inside_roots(const Poly& f, double margin) {
  RootCountResult r;
  r.method = CountMethod::eig_oracle;
  for (const Complex& z : all_roots(f)) {
    const double m = std::abs(z);
    if (std::abs(m - 1.0) <= margin) r.marginal = true;
    else if (m < 1.0) ++r.inside;
  }
  return r;
}

JuryVerdict jury_stable(const Poly& f) {
  if (f.degree() < 1) throw std::invalid_argument("jury_stable: degree must be >= 1");
  constexpr double tol = 1e-10;
  const Poly fn = f.leading() < 0.0 ? -f : f;
  const int n = fn.degree();
  const double scale = fn.max_abs_coeff();

  // Necessary conditions: roots at z = +-1 show up here directly.
  const double at_plus = fn(1.0);
  const double at_minus = (n % 2 == 0 ? 1.0 : -1.0) * fn(-1.0);
  if (std::abs(at_plus) <= tol * scale || std::abs(at_minus) <= tol * scale) return JuryVerdict::marginal;
  if (at_plus < 0.0 || at_minus < 0.0) return JuryVerdict::unstable;

  std::vector<double> row(fn.coeffs().begin(), fn.coeffs().end());
  while (row.size() > 1) {
    const std::size_t m = row.size() - 1;
    double rscale = 0.0;
    for (double v : row) rscale = std::max(rscale, std::abs(v));
    const double pivot = std::abs(row[m]) - std::abs(row[0]);
    if (std::abs(pivot) <= tol * rscale) return JuryVerdict::marginal;
    if (pivot < 0.0) return JuryVerdict::unstable;
    // Next row: (c_m p(z) - c_0 p*(z)) / z, one degree lower.
    std::vector<double> next(m);
    for (std::size_t j = 1; j <= m; ++j) next[j - 1] = row[m] * row[j] - row[0] * row[m - j];
    double nscale = 0.0;
    for (double v : next) nscale = std::max(nscale, std::abs(v));
    if (nscale == 0.0) return JuryVerdict::marginal;
    for (double& v : next) v /= nscale;
    row = std::move(next);
  }
  return JuryVerdict::stable;
}

std::vector<ContourSample> contour(const Poly& f, int samples) {
  if (f.degree() < 1) throw std::invalid_argument("contour: degree must be >= 1");
  if (samples < 1) throw std::invalid_argument("contour: samples must be >= 1");
  const int n = f.degree();
  std::vector<ContourSample> out;
  out.reserve(static_cast<std::size_t>(samples));
  for (int j = 0; j < samples; ++j) {
    const double phi = 2.0 * std::numbers::pi * j / samples;
    const Complex w = f(std::polar(1.0, phi)) * std::polar(1.0, -n * phi);
    out.push_back({phi, w.real(), w.imag()});
  }
  return out;
}

}  // namespace sdm
