#pragma once

#include <span>
#include <vector>

#include "sdmstab/polynomial.hpp"

namespace sdm {

inline constexpr int kMinOrder = 1;
inline constexpr int kMaxOrder = 5;

/// Throws std::invalid_argument unless kMinOrder <= n <= kMaxOrder.
void check_order(std::size_t n);

/// Exact binomial coefficient C(n, k) for the small orders used here.
double binomial(int n, int k);

/// A cascade-of-integrators modulator.
///
/// `g` are the feedback gains into stages 1..n. `b` are the coefficients of
/// D(z) = B(z) - C(z) with b[k-1] multiplying z^(n-k), so b[0] leads the
/// degree n-1 polynomial D. The two descriptions are equivalent:
/// D(z) = sum_j g_j (z-1)^(j-1).
struct SdmDesign {
  int order = 0;
  std::vector<double> g;
  std::vector<double> b;

  static SdmDesign from_g(std::vector<double> g);
  static SdmDesign from_b(std::vector<double> b);
};

/// Expands D(z) = sum_j g_j (z-1)^(j-1) into the b ordering.
std::vector<double> b_from_g(std::span<const double> g);

/// Inverse of b_from_g: g_j is the (j-1)-th Taylor coefficient of D at z = 1.
std::vector<double> g_from_b(std::span<const double> b);

/// D(z) = sum_k b_k z^(n-k).
Poly difference_poly(std::span<const double> b);

/// F(z; a) = a (z-1)^n + D(z), the loop denominator with the quantizer gain
/// replaced by the quasi-static integrator magnitude a = |I|. At a = 1 this
/// is the linear-model denominator B(z).
Poly char_poly(std::span<const double> b, double a);

/// d_k = b_k + C(n,k) (-1)^k a, so that F(z; a) = a z^n + sum_k d_k z^(n-k).
struct DCoeffs {
  std::vector<double> d;
  double a = 0.0;
};

DCoeffs d_coeffs(std::span<const double> b, double a);

/// Noise and signal transfer structure of the linear model.
struct TransferModel {
  Poly ntf_num;  // C(z) = (z-1)^n
  Poly ntf_den;  // B(z), monic of degree n
  int stf_num_degree = 1;
};

TransferModel transfer_model(std::span<const double> b);

/// First `terms` impulse-response samples of NTF(z) = C(z)/B(z), i.e. its
/// expansion in powers of z^-1. The first sample is always 1.
std::vector<double> ntf_series(std::span<const double> b, int terms);

}  // namespace sdm
