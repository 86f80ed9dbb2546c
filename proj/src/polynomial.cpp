#include "sdmstab/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace sdm {

Poly::Poly(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
  normalize();
}

Poly::Poly(std::initializer_list<double> coeffs) : coeffs_(coeffs) {
  normalize();
}

Poly Poly::constant(double c) { return Poly{c}; }

Poly Poly::monomial(int power, double c) {
  if (power < 0) throw std::invalid_argument("monomial: negative power");
  std::vector<double> v(static_cast<std::size_t>(power) + 1, 0.0);
  v.back() = c;
  return Poly(std::move(v));
}

void Poly::normalize() {
  for (double c : coeffs_) {
    if (!std::isfinite(c)) throw std::invalid_argument("Poly: non-finite coefficient");
  }
  while (!coeffs_.empty() && coeffs_.back() == 0.0) coeffs_.pop_back();
}

double Poly::operator[](int k) const noexcept {
  if (k < 0 || k >= static_cast<int>(coeffs_.size())) return 0.0;
  return coeffs_[static_cast<std::size_t>(k)];
}

double Poly::max_abs_coeff() const noexcept {
  double m = 0.0;
  for (double c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

double Poly::operator()(double x) const noexcept {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Complex Poly::operator()(Complex z) const noexcept {
  Complex acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

Poly Poly::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<double> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = static_cast<double>(k) * coeffs_[k];
  return Poly(std::move(d));
}

Poly Poly::operator-() const {
  Poly out = *this;
  for (double& c : out.coeffs_) c = -c;
  return out;
}

Poly& Poly::operator+=(const Poly& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), 0.0);
  for (std::size_t k = 0; k < rhs.coeffs_.size(); ++k) coeffs_[k] += rhs.coeffs_[k];
  normalize();
  return *this;
}

Poly& Poly::operator-=(const Poly& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size(), 0.0);
  for (std::size_t k = 0; k < rhs.coeffs_.size(); ++k) coeffs_[k] -= rhs.coeffs_[k];
  normalize();
  return *this;
}

Poly operator*(const Poly& lhs, const Poly& rhs) {
  if (lhs.is_zero() || rhs.is_zero()) return {};
  std::vector<double> out(lhs.coeffs_.size() + rhs.coeffs_.size() - 1, 0.0);
  for (std::size_t i = 0; i < lhs.coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j) out[i + j] += lhs.coeffs_[i] * rhs.coeffs_[j];
  }
  return Poly(std::move(out));
}

Poly& Poly::operator*=(const Poly& rhs) { return *this = *this * rhs; }

Poly& Poly::operator*=(double c) {
  for (double& v : coeffs_) v *= c;
  normalize();
  return *this;
}

Poly binom_power(int n, double r) {
  if (n < 0 || n > kMaxDegree) {
    throw std::invalid_argument("binom_power: n must be in [0, " + std::to_string(kMaxDegree) + "]");
  }
  // Pascal's rule keeps the binomials exact; r^j is applied afterwards.
  std::vector<double> binom(static_cast<std::size_t>(n) + 1, 0.0);
  binom[0] = 1.0;
  for (int row = 1; row <= n; ++row) {
    for (int k = row; k > 0; --k) binom[k] += binom[k - 1];
  }
  // (z - r)^n = sum_k C(n,k) z^k (-r)^(n-k)
  std::vector<double> c(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) c[k] = binom[k] * std::pow(-r, n - k);
  return Poly(std::move(c));
}

Division poly_rem(const Poly& num, const Poly& den) {
  if (den.is_zero()) throw std::invalid_argument("poly_rem: division by the zero polynomial");

  Division out;
  const int dd = den.degree();
  const double lead = den.leading();
  out.degenerate = std::abs(lead) < kLeadingTolerance * den.max_abs_coeff();

  if (num.degree() < dd) {
    out.remainder = num;
    return out;
  }

  // Extended-precision running remainder keeps num - q*den - r at the level
  // set by rounding the quotient itself, even when the quotient is large.
  std::vector<long double> r(num.coeffs().begin(), num.coeffs().end());
  std::vector<double> q(static_cast<std::size_t>(num.degree() - dd) + 1, 0.0);
  for (int i = num.degree() - dd; i >= 0; --i) {
    const double qi = static_cast<double>(r[i + dd] / lead);
    q[i] = qi;
    for (int j = 0; j < dd; ++j) r[i + j] -= static_cast<long double>(qi) * den[j];
    r[i + dd] = 0.0L;
  }
  std::vector<double> rem(static_cast<std::size_t>(dd));
  for (int j = 0; j < dd; ++j) rem[j] = static_cast<double>(r[j]);
  out.quotient = Poly(std::move(q));
  out.remainder = Poly(std::move(rem));
  return out;
}

RemainderChain remainder_chain(const Poly& r0, const Poly& r1) {
  RemainderChain rc;
  rc.chain = {r0, r1};
  while (!rc.chain.back().is_zero() && rc.chain.back().degree() > 0) {
    const Poly& a = rc.chain[rc.chain.size() - 2];
    const Poly& b = rc.chain.back();
    Division div = poly_rem(a, b);
    rc.degenerate = rc.degenerate || div.degenerate;
    // A remainder at rounding level relative to the dividend is a symbolic zero.
    if (div.remainder.max_abs_coeff() <= 1e-13 * a.max_abs_coeff()) div.remainder = Poly{};
    rc.chain.push_back(std::move(div.remainder));
  }
  return rc;
}

Poly chebyshev_t(int k) {
  if (k < 0) throw std::invalid_argument("chebyshev_t: negative index");
  Poly prev{1.0};
  if (k == 0) return prev;
  Poly cur{0.0, 1.0};
  const Poly two_x{0.0, 2.0};
  for (int i = 2; i <= k; ++i) {
    Poly next = two_x * cur - prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

Poly chebyshev_u(int k) {
  if (k < 0) throw std::invalid_argument("chebyshev_u: negative index");
  Poly prev{1.0};
  if (k == 0) return prev;
  Poly cur{0.0, 2.0};
  const Poly two_x{0.0, 2.0};
  for (int i = 2; i <= k; ++i) {
    Poly next = two_x * cur - prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

Poly cheb_expand(std::span<const double> d, double a, ChebKind kind) {
  if (d.empty() || d.size() > 5) throw std::invalid_argument("cheb_expand: n must be in [1, 5]");
  Poly out = kind == ChebKind::cosine ? Poly{a} : Poly{};
  for (std::size_t k = 1; k <= d.size(); ++k) {
    const int ki = static_cast<int>(k);
    out += d[k - 1] * (kind == ChebKind::cosine ? chebyshev_t(ki) : chebyshev_u(ki - 1));
  }
  return out;
}

namespace {

constexpr double kBoundaryExclusion = 1e-9;
constexpr double kRootMergeDistance = 1e-9;

Poly scaled_unit(const Poly& p) {
  const double m = p.max_abs_coeff();
  return m > 0.0 ? p * (1.0 / m) : p;
}

class SturmSequence {
 public:
  explicit SturmSequence(const Poly& p) {
    seq_.push_back(scaled_unit(p));
    seq_.push_back(scaled_unit(p.derivative()));
    while (seq_.back().degree() > 0) {
      Poly r = poly_rem(seq_[seq_.size() - 2], seq_.back()).remainder;
      // Numerically zero remainder: the last entry is gcd(p, p').
      if (r.max_abs_coeff() <= 1e-11) break;
      seq_.push_back(scaled_unit(-r));
    }
  }

  int variations(double x) const {
    int count = 0;
    int last = 0;
    for (const Poly& s : seq_) {
      const double v = s(x);
      const int sg = v > 0.0 ? 1 : (v < 0.0 ? -1 : 0);
      if (sg == 0) continue;
      if (last != 0 && sg != last) ++count;
      last = sg;
    }
    return count;
  }

 private:
  std::vector<Poly> seq_;
};

double polish_sign_change(const Poly& p, double lo, double hi) {
  double flo = p(lo);
  for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = p(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  const double x = 0.5 * (lo + hi);
  // One guarded Newton step for the last couple of bits.
  const double dp = p.derivative()(x);
  if (dp != 0.0) {
    const double xn = x - p(x) / dp;
    if (xn >= lo && xn <= hi && std::abs(p(xn)) < std::abs(p(x))) return xn;
  }
  return x;
}

// Even-multiplicity roots give no sign change, so the Sturm count steers the bisection.
double polish_by_count(const SturmSequence& sturm, double lo, double hi, int vlo) {
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const int vm = sturm.variations(mid);
    if (vlo - vm >= 1) {
      hi = mid;
    } else {
      lo = mid;
      vlo = vm;
    }
  }
  return 0.5 * (lo + hi);
}

void isolate(const Poly& p, const SturmSequence& sturm, double lo, double hi, int vlo, int vhi,
             std::vector<double>& roots) {
  const int count = vlo - vhi;
  if (count <= 0) return;
  if (count == 1) {
    const double fhi = p(hi);
    if (fhi == 0.0) {
      roots.push_back(hi);
      return;
    }
    const double flo = p(lo);
    if (flo != 0.0 && (flo < 0.0) != (fhi < 0.0)) {
      roots.push_back(polish_sign_change(p, lo, hi));
    } else {
      roots.push_back(polish_by_count(sturm, lo, hi, vlo));
    }
    return;
  }
  const double mid = 0.5 * (lo + hi);
  if (hi - lo <= 1e-13 * std::max(1.0, std::abs(mid)) || mid <= lo || mid >= hi) {
    // Cluster below resolution: report it once.
    roots.push_back(mid);
    return;
  }
  const int vmid = sturm.variations(mid);
  isolate(p, sturm, lo, mid, vlo, vmid, roots);
  isolate(p, sturm, mid, hi, vmid, vhi, roots);
}

}  // namespace

std::vector<double> real_roots_open(const Poly& p, double lo, double hi) {
  if (p.is_zero()) throw std::invalid_argument("real_roots_open: zero polynomial");
  if (!(lo < hi)) throw std::invalid_argument("real_roots_open: empty interval");
  if (p.degree() == 0) return {};

  const Poly q = scaled_unit(p);
  const SturmSequence sturm(q);
  std::vector<double> found;
  isolate(q, sturm, lo, hi, sturm.variations(lo), sturm.variations(hi), found);
  std::sort(found.begin(), found.end());

  std::vector<double> roots;
  for (double x : found) {
    if (x - lo <= kBoundaryExclusion || hi - x <= kBoundaryExclusion) continue;
    if (!roots.empty() && x - roots.back() <= kRootMergeDistance) continue;
    roots.push_back(x);
  }
  return roots;
}

std::vector<Complex> all_roots(const Poly& p) {
  if (p.degree() < 1) throw std::invalid_argument("all_roots: polynomial must have degree >= 1");

  // Exact zeros at the origin come off first; Aberth works on the rest.
  int zeros = 0;
  while (p[zeros] == 0.0) ++zeros;
  std::vector<double> c(p.coeffs().begin() + zeros, p.coeffs().end());
  const double lead = c.back();
  for (double& v : c) v /= lead;
  const int n = static_cast<int>(c.size()) - 1;

  std::vector<Complex> roots(static_cast<std::size_t>(zeros), Complex{0.0, 0.0});
  if (n == 0) return roots;

  const Poly monic(c);
  const Poly dmonic = monic.derivative();

  // Start on a circle whose radius is the geometric mean of the root moduli,
  // rotated off the real axis so conjugate pairs separate.
  const double radius = std::pow(std::abs(c[0]), 1.0 / n);
  std::vector<Complex> z(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const double ang = 2.0 * std::numbers::pi * k / n + 0.4;
    z[k] = std::polar(radius, ang);
  }

  for (int iter = 0; iter < 1000; ++iter) {
    bool converged = true;
    for (int i = 0; i < n; ++i) {
      const Complex pv = monic(z[i]);
      if (pv == Complex{0.0, 0.0}) continue;
      const Complex ratio = pv / dmonic(z[i]);
      Complex sum = 0.0;
      for (int j = 0; j < n; ++j) {
        if (j != i) sum += 1.0 / (z[i] - z[j]);
      }
      const Complex w = ratio / (1.0 - ratio * sum);
      if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) continue;
      z[i] -= w;
      if (std::abs(w) > 1e-15 * std::max(1.0, std::abs(z[i]))) converged = false;
    }
    if (converged) break;
  }

  for (Complex& r : z) {
    for (int k = 0; k < 2; ++k) {
      const Complex d = dmonic(r);
      if (d == Complex{0.0, 0.0}) break;
      const Complex next = r - monic(r) / d;
      if (std::abs(monic(next)) < std::abs(monic(r))) r = next;
      else break;
    }
    roots.push_back(r);
  }
  std::sort(roots.begin(), roots.end(), [](const Complex& a, const Complex& b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return roots;
}

}  // namespace sdm
