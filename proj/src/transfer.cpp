#include "sdmstab/transfer.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace sdm {

void check_order(std::size_t n) {
  if (n < static_cast<std::size_t>(kMinOrder) || n > static_cast<std::size_t>(kMaxOrder)) {
    throw std::invalid_argument("modulator order must be in [" + std::to_string(kMinOrder) + ", " +
                                std::to_string(kMaxOrder) + "], got " + std::to_string(n));
  }
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

SdmDesign SdmDesign::from_g(std::vector<double> g) {
  SdmDesign d;
  d.b = b_from_g(g);
  d.order = static_cast<int>(g.size());
  d.g = std::move(g);
  return d;
}

SdmDesign SdmDesign::from_b(std::vector<double> b) {
  SdmDesign d;
  d.g = g_from_b(b);
  d.order = static_cast<int>(b.size());
  d.b = std::move(b);
  return d;
}

std::vector<double> b_from_g(std::span<const double> g) {
  check_order(g.size());
  const int n = static_cast<int>(g.size());
  Poly dpoly;
  for (int j = 1; j <= n; ++j) dpoly += g[j - 1] * binom_power(j - 1, 1.0);
  std::vector<double> b(static_cast<std::size_t>(n));
  for (int k = 1; k <= n; ++k) b[k - 1] = dpoly[n - k];
  return b;
}

std::vector<double> g_from_b(std::span<const double> b) {
  check_order(b.size());
  const int n = static_cast<int>(b.size());
  // Repeated synthetic division by (z - 1) yields the Taylor coefficients at 1.
  std::vector<double> c(static_cast<std::size_t>(n));
  for (int k = 1; k <= n; ++k) c[n - k] = b[k - 1];
  std::vector<double> g(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    for (int i = n - 2; i >= j; --i) c[i] += c[i + 1];
    g[j] = c[j];
  }
  return g;
}

Poly difference_poly(std::span<const double> b) {
  check_order(b.size());
  const int n = static_cast<int>(b.size());
  std::vector<double> c(static_cast<std::size_t>(n));
  for (int k = 1; k <= n; ++k) c[n - k] = b[k - 1];
  return Poly(std::move(c));
}

Poly char_poly(std::span<const double> b, double a) {
  const int n = static_cast<int>(b.size());
  return a * binom_power(n, 1.0) + difference_poly(b);
}

DCoeffs d_coeffs(std::span<const double> b, double a) {
  check_order(b.size());
  const int n = static_cast<int>(b.size());
  DCoeffs out;
  out.a = a;
  out.d.resize(static_cast<std::size_t>(n));
  for (int k = 1; k <= n; ++k) {
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    out.d[k - 1] = b[k - 1] + binomial(n, k) * sign * a;
  }
  return out;
}

TransferModel transfer_model(std::span<const double> b) {
  TransferModel m;
  m.ntf_num = binom_power(static_cast<int>(b.size()), 1.0);
  m.ntf_den = char_poly(b, 1.0);
  return m;
}

std::vector<double> ntf_series(std::span<const double> b, int terms) {
  check_order(b.size());
  if (terms < 0) throw std::invalid_argument("ntf_series: negative term count");
  const int n = static_cast<int>(b.size());
  // In z^-1 form: C/z^n = sum c_k z^-k and B/z^n = 1 + sum beta_k z^-k.
  std::vector<double> c(static_cast<std::size_t>(n) + 1), beta(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) {
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    c[k] = binomial(n, k) * sign;
    beta[k] = c[k] + (k > 0 ? b[k - 1] : 0.0);
  }
  std::vector<double> h(static_cast<std::size_t>(terms), 0.0);
  for (int m = 0; m < terms; ++m) {
    double acc = m <= n ? c[m] : 0.0;
    for (int k = 1; k <= std::min(m, n); ++k) acc -= beta[k] * h[m - k];
    h[m] = acc;
  }
  return h;
}

}  // namespace sdm
