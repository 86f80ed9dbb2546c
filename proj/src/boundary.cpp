#include "sdmstab/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <gmpxx.h>

#include "sdmstab/winding.hpp"

namespace sdm {

std::string_view to_string(CandidateSource s) {
  switch (s) {
    case CandidateSource::remainder_chain: return "remainder_chain";
    case CandidateSource::closed_form_3: return "closed_form_3";
    case CandidateSource::crossing_param: return "crossing_param";
  }
  return "unknown";
}

double i_min(std::span<const double> b) {
  check_order(b.size());
  const int n = static_cast<int>(b.size());
  double alt = 0.0;
  for (int k = 1; k <= n; ++k) alt += (k % 2 == 0 ? 1.0 : -1.0) * b[k - 1];
  return -alt / std::ldexp(1.0, n);
}

namespace {

// Exact rational polynomial in a, ascending powers, no trailing zeros.
struct QPoly {
  std::vector<mpq_class> c;

  QPoly() = default;
  explicit QPoly(std::vector<mpq_class> coeffs) : c(std::move(coeffs)) { trim(); }

  void trim() {
    while (!c.empty() && sgn(c.back()) == 0) c.pop_back();
  }
  bool is_zero() const { return c.empty(); }
  int degree() const { return static_cast<int>(c.size()) - 1; }
  const mpq_class& lead() const { return c.back(); }

  mpq_class operator()(const mpq_class& a) const {
    mpq_class acc = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * a + *it;
    return acc;
  }
};

QPoly operator+(const QPoly& p, const QPoly& q) {
  std::vector<mpq_class> r(std::max(p.c.size(), q.c.size()));
  for (std::size_t i = 0; i < p.c.size(); ++i) r[i] += p.c[i];
  for (std::size_t i = 0; i < q.c.size(); ++i) r[i] += q.c[i];
  return QPoly(std::move(r));
}

QPoly operator-(const QPoly& p, const QPoly& q) {
  std::vector<mpq_class> r(std::max(p.c.size(), q.c.size()));
  for (std::size_t i = 0; i < p.c.size(); ++i) r[i] += p.c[i];
  for (std::size_t i = 0; i < q.c.size(); ++i) r[i] -= q.c[i];
  return QPoly(std::move(r));
}

QPoly operator*(const QPoly& p, const QPoly& q) {
  if (p.is_zero() || q.is_zero()) return {};
  std::vector<mpq_class> r(p.c.size() + q.c.size() - 1);
  for (std::size_t i = 0; i < p.c.size(); ++i) {
    for (std::size_t j = 0; j < q.c.size(); ++j) r[i + j] += p.c[i] * q.c[j];
  }
  return QPoly(std::move(r));
}

// Quotient of an exact division; the remainder is known to vanish.
QPoly exact_div(const QPoly& num, const QPoly& den) {
  if (num.is_zero()) return {};
  const int dd = den.degree();
  std::vector<mpq_class> r = num.c;
  std::vector<mpq_class> q(static_cast<std::size_t>(std::max(0, num.degree() - dd + 1)));
  for (int i = num.degree() - dd; i >= 0; --i) {
    q[i] = r[i + dd] / den.lead();
    for (int j = 0; j <= dd; ++j) r[i + j] -= q[i] * den.c[j];
  }
  return QPoly(std::move(q));
}

QPoly power(const QPoly& p, int e) {
  QPoly out(std::vector<mpq_class>{1});
  for (int i = 0; i < e; ++i) out = out * p;
  return out;
}

// Polynomial in x whose coefficients are exact polynomials in a: terms[k]
// multiplies x^k.
struct XPoly {
  std::vector<QPoly> terms;

  void trim() {
    while (!terms.empty() && terms.back().is_zero()) terms.pop_back();
  }
  int degree() const { return static_cast<int>(terms.size()) - 1; }
  bool is_zero() const { return terms.empty(); }
  const QPoly& lc() const { return terms.back(); }
};

// Pseudo-remainder lc(B)^(deg A - deg B + 1) * A mod B.
XPoly prem(const XPoly& A, const XPoly& B) {
  const int db = B.degree();
  const QPoly& lb = B.lc();
  XPoly R = A;
  int e = A.degree() - db + 1;
  while (!R.is_zero() && R.degree() >= db) {
    const int dr = R.degree();
    const QPoly s = R.lc();
    const int shift = dr - db;
    XPoly next;
    next.terms.resize(static_cast<std::size_t>(dr));
    for (int k = 0; k < dr; ++k) {
      next.terms[k] = lb * R.terms[k];
      if (k - shift >= 0) next.terms[k] = next.terms[k] - s * B.terms[k - shift];
    }
    next.trim();
    R = std::move(next);
    --e;
  }
  const QPoly factor = power(lb, e);
  for (QPoly& t : R.terms) t = factor * t;
  R.trim();
  return R;
}

// R0 and R1 with coefficients linear in a, built from the exact binary values of b.
std::pair<XPoly, XPoly> symbolic_contour_polys(std::span<const double> b) {
  const int n = static_cast<int>(b.size());
  XPoly r0, r1;
  r0.terms.assign(static_cast<std::size_t>(n) + 1, QPoly{});
  r1.terms.assign(static_cast<std::size_t>(n), QPoly{});
  r0.terms[0] = QPoly(std::vector<mpq_class>{0, 1});  // the constant a
  for (int k = 1; k <= n; ++k) {
    const long sign = (k % 2 == 0) ? 1 : -1;
    const QPoly dk(std::vector<mpq_class>{mpq_class(b[k - 1]), mpq_class(sign * static_cast<long>(binomial(n, k)))});
    const Poly tk = chebyshev_t(k);
    const Poly uk = chebyshev_u(k - 1);
    for (int j = 0; j <= tk.degree(); ++j) {
      r0.terms[j] = r0.terms[j] + QPoly(std::vector<mpq_class>{mpq_class(tk[j])}) * dk;
    }
    for (int j = 0; j <= uk.degree(); ++j) {
      r1.terms[j] = r1.terms[j] + QPoly(std::vector<mpq_class>{mpq_class(uk[j])}) * dk;
    }
  }
  r0.trim();
  r1.trim();
  return {r0, r1};
}

struct SymbolicChain {
  std::vector<XPoly> chain;
  bool vanished = false;  // a remainder was identically zero
};

// Subresultant remainder sequence: each entry is a polynomial-in-a multiple of
// the Euclidean remainder over rational functions of a, with the common
// denominators divided out exactly.
SymbolicChain subresultant_chain(XPoly A, XPoly B) {
  SymbolicChain sc;
  sc.chain = {A, B};
  QPoly g(std::vector<mpq_class>{1});
  QPoly h(std::vector<mpq_class>{1});
  while (!B.is_zero() && B.degree() > 0) {
    const int delta = A.degree() - B.degree();
    XPoly R = prem(A, B);
    if (R.is_zero()) {
      sc.vanished = true;
      break;
    }
    A = B;
    const QPoly den = g * power(h, delta);
    B.terms.clear();
    for (const QPoly& t : R.terms) B.terms.push_back(exact_div(t, den));
    B.trim();
    g = A.lc();
    if (delta == 1) {
      h = g;
    } else if (delta > 1) {
      h = exact_div(power(g, delta), power(h, delta - 1));
    }
    sc.chain.push_back(B);
  }
  return sc;
}

// Divides out (a - root) as long as it is an exact factor.
QPoly deflate(QPoly p, const mpq_class& root) {
  while (p.degree() >= 1 && sgn(p(root)) == 0) {
    p = exact_div(p, QPoly(std::vector<mpq_class>{-root, 1}));
  }
  return p;
}

// Double-precision copy scaled so the largest coefficient has magnitude 1.
Poly to_double(const QPoly& p) {
  mpq_class big = 0;
  for (const mpq_class& v : p.c) big = std::max(big, mpq_class(abs(v)));
  std::vector<double> out;
  for (const mpq_class& v : p.c) out.push_back(mpq_class(v / big).get_d());
  return Poly(std::move(out));
}

double cauchy_bound(const Poly& p) {
  double m = 0.0;
  for (int i = 0; i < p.degree(); ++i) m = std::max(m, std::abs(p[i] / p.leading()));
  return 1.0 + m;
}

bool on_circle_residual_ok(std::span<const double> b, double a, double x) {
  const Poly f = char_poly(b, a);
  double l1 = 0.0;
  for (double c : f.coeffs()) l1 += std::abs(c);
  const Complex z{x, std::sqrt(std::max(0.0, 1.0 - x * x))};
  return std::abs(f(z)) <= 1e-7 * l1;
}

}  // namespace

ZeroPointSet zero_point_candidates(std::span<const double> b) {
  check_order(b.size());
  for (double v : b) {
    if (!std::isfinite(v)) throw std::invalid_argument("zero_point_candidates: coefficients must be finite");
  }
  const int n = static_cast<int>(b.size());
  auto [r0, r1] = symbolic_contour_polys(b);
  const SymbolicChain sc = subresultant_chain(r0, r1);

  ZeroPointSet out;
  const XPoly& last = sc.chain.back();
  if (sc.vanished || last.is_zero()) {
    out.continuum = true;
    return out;
  }

  // lc(R0) = 2^(n-1) d_n(a) vanishes at a*; those roots of the terminal
  // remainder belong to the degree drop, not to a zero point.
  const mpq_class a_star = (n % 2 == 0 ? -1 : 1) * mpq_class(b[n - 1]);
  const QPoly exact_terminal = deflate(last.terms[0], a_star);
  if (exact_terminal.is_zero()) {
    out.continuum = true;
    return out;
  }
  const Poly terminal = to_double(exact_terminal);
  out.terminal = terminal;
  if (terminal.degree() < 1) return out;

  const XPoly* linear = nullptr;
  if (sc.chain.size() >= 2 && sc.chain[sc.chain.size() - 2].degree() == 1) {
    linear = &sc.chain[sc.chain.size() - 2];
  }

  const double hi = cauchy_bound(terminal) + 1.0;
  for (double a : real_roots_open(terminal, -1e-6, hi)) {
    if (a < -1e-9) continue;
    a = std::max(a, 0.0);
    if (a <= 1e-12 * hi) a = 0.0;

    const double lead_r0 = b[n - 1] + (n % 2 == 0 ? 1.0 : -1.0) * a;
    if (std::abs(lead_r0) <= 1e-9 * std::max(1.0, std::abs(b[n - 1]))) continue;
    if (linear == nullptr) continue;
    const mpq_class aq(a);
    const double alpha = mpq_class(linear->terms[1](aq)).get_d();
    const double beta = linear->terms[0].is_zero() ? 0.0 : mpq_class(linear->terms[0](aq)).get_d();
    if (std::abs(alpha) <= 1e-12 * (std::abs(alpha) + std::abs(beta))) continue;

    ZeroPointCandidate c;
    c.a = a;
    c.x = -beta / alpha;
    c.source = CandidateSource::remainder_chain;
    c.valid = std::abs(c.x) < 1.0 - 1e-9 && on_circle_residual_ok(b, a, c.x);
    out.candidates.push_back(c);
  }
  return out;
}

ClosedFormBound i_max_order3(std::span<const double> b) {
  if (b.size() != 3) throw std::invalid_argument("i_max_order3: needs exactly three coefficients");
  const double den = b[0] + b[1] + b[2];
  if (den == 0.0) throw std::domain_error("i_max_order3: b1 + b2 + b3 = 0");
  ClosedFormBound out;
  out.a = (b[0] * b[2] - b[2] * b[2]) / den;
  if (b[2] == out.a) {
    out.x = std::numeric_limits<double>::quiet_NaN();
    out.valid = false;
    return out;
  }
  out.x = -(b[1] + 2.0 * out.a) / (2.0 * (b[2] - out.a));
  out.valid = std::abs(out.x) < 1.0;
  return out;
}

Poly t2_order5(const DCoeffs& d) {
  if (d.d.size() != 5) throw std::invalid_argument("t2_order5: needs d_1..d_5");
  const double d2 = d.d[1], d3 = d.d[2], d4 = d.d[3], d5 = d.d[4];
  // -(-8 d5 x^3 - 4 d4 x^2 + (4 d5 - 2 d3) x - d2 + d4)
  return -Poly{-d2 + d4, 4.0 * d5 - 2.0 * d3, -4.0 * d4, -8.0 * d5};
}

Complex crossing_value(std::span<const double> b, double phi) {
  const int n = static_cast<int>(b.size());
  const Complex z = std::polar(1.0, phi);
  return -difference_poly(b)(z) / std::pow(z - 1.0, n);
}

std::vector<ZeroPointCandidate> crossing_param(std::span<const double> b, int phi_grid) {
  check_order(b.size());
  if (phi_grid < 2) throw std::invalid_argument("crossing_param: grid must have at least 2 cells");
  const Poly dpoly = difference_poly(b);
  const int n = static_cast<int>(b.size());
  auto im_a = [&](double phi) {
    const Complex z = std::polar(1.0, phi);
    return (-dpoly(z) / std::pow(z - 1.0, n)).imag();
  };

  std::vector<ZeroPointCandidate> out;
  const double step = std::numbers::pi / phi_grid;
  double prev_phi = step;
  double prev = im_a(prev_phi);
  for (int j = 2; j < phi_grid; ++j) {
    const double phi = j * step;
    const double cur = im_a(phi);
    double root = std::numeric_limits<double>::quiet_NaN();
    if (prev == 0.0) {
      root = prev_phi;
    } else if ((prev < 0.0) != (cur < 0.0) && cur != 0.0) {
      double lo = prev_phi, hi = phi, flo = prev;
      while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        const double fm = im_a(mid);
        if (fm == 0.0) {
          lo = hi = mid;
          break;
        }
        if ((fm < 0.0) == (flo < 0.0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      root = 0.5 * (lo + hi);
    }
    if (!std::isnan(root)) {
      const double a = crossing_value(b, root).real();
      if (a > 0.0) out.push_back({a, std::cos(root), true, CandidateSource::crossing_param});
    }
    prev_phi = phi;
    prev = cur;
  }
  std::sort(out.begin(), out.end(), [](const auto& l, const auto& r) { return l.a < r.a; });
  return out;
}

namespace {

constexpr double kEventMerge = 1e-9;

bool stable_by_roots(std::span<const double> b, double a) {
  const RootCountResult r = count_inside_roots(char_poly(b, a));
  return !r.marginal && r.inside == static_cast<int>(b.size());
}

}  // namespace

StabilityReport classify_intervals(std::span<const double> b) {
  check_order(b.size());
  const int n = static_cast<int>(b.size());
  StabilityReport rep;
  rep.order = n;
  for (double v : b) rep.sum_b += v;
  rep.a_min = i_min(b);
  ZeroPointSet zp = zero_point_candidates(b);
  rep.candidates = zp.candidates;
  rep.continuum = zp.continuum;

  auto probe = [&](double lo, double hi, double a) {
    // a = 1 is the linear design point F = B; use it whenever it is interior.
    if (lo + kEventMerge < 1.0 && 1.0 < hi - kEventMerge) a = 1.0;
    StabilityInterval iv;
    iv.lo = lo;
    iv.hi = hi;
    iv.witness_a = a;
    const RootCountResult r = count_inside_e1(char_poly(b, a));
    iv.marginal = r.marginal;
    iv.witness_count = r.inside;
    iv.stable = !r.marginal && r.inside == n;
    return iv;
  };

  constexpr double inf = std::numeric_limits<double>::infinity();
  if (rep.sum_b <= 0.0) {
    // W(1) = sum b_k for every a: the permanent point never leaves the left half.
    rep.note = "W(1) <= 0: no a is stable";
    StabilityInterval iv = probe(0.0, inf, 1.0);
    iv.stable = false;
    rep.intervals.push_back(iv);
    return rep;
  }

  std::vector<double> events;
  if (rep.a_min > kEventMerge) events.push_back(rep.a_min);
  for (const auto& c : rep.candidates) {
    if (c.valid && c.a > kEventMerge) events.push_back(c.a);
  }
  std::sort(events.begin(), events.end());
  std::vector<double> merged;
  for (double e : events) {
    if (merged.empty() || e - merged.back() > kEventMerge) merged.push_back(e);
  }

  double lo = 0.0;
  for (double e : merged) {
    rep.intervals.push_back(probe(lo, e, 0.5 * (lo + e)));
    lo = e;
  }
  // Unbounded tail: geometric mean of the last event and a cap of 10x + 1.
  const double tail_probe = merged.empty() ? 1.0 : std::sqrt(lo * (10.0 * lo + 1.0));
  rep.intervals.push_back(probe(lo, inf, tail_probe));
  if (rep.continuum) rep.note = "terminal remainder vanishes identically: roots stay on |z| = 1 over a continuum of a";
  return rep;
}

double bisect_boundary(std::span<const double> b, double lo, double hi) {
  check_order(b.size());
  if (!(lo < hi)) throw std::invalid_argument("bisect_boundary: need lo < hi");
  const bool at_lo = stable_by_roots(b, lo);
  if (at_lo == stable_by_roots(b, hi)) {
    throw std::invalid_argument("bisect_boundary: stability verdict is the same at both ends");
  }
  while (hi - lo > 1e-10) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (stable_by_roots(b, mid) == at_lo) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace sdm
