#pragma once

#include <complex>
#include <initializer_list>
#include <span>
#include <vector>

namespace sdm {

using Complex = std::complex<double>;

/// Highest polynomial degree the library is built for. Modulator orders stop
/// at five; the extra headroom covers intermediate products.
inline constexpr int kMaxDegree = 12;

/// Dense real polynomial stored in ascending powers: coeffs()[k] multiplies z^k.
///
/// Trailing zero coefficients are trimmed on every construction, so degree()
/// is the index of the last nonzero entry and the zero polynomial has no
/// coefficients at all (degree -1). Coefficients must be finite.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<double> coeffs);
  Poly(std::initializer_list<double> coeffs);

  static Poly constant(double c);
  static Poly monomial(int power, double c = 1.0);

  bool is_zero() const noexcept { return coeffs_.empty(); }
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  double leading() const noexcept { return coeffs_.empty() ? 0.0 : coeffs_.back(); }
  std::span<const double> coeffs() const noexcept { return coeffs_; }

  /// Coefficient of z^k, zero outside the stored range.
  double operator[](int k) const noexcept;

  double max_abs_coeff() const noexcept;

  /// Horner evaluation.
  double operator()(double x) const noexcept;
  Complex operator()(Complex z) const noexcept;

  Poly derivative() const;

  Poly operator-() const;
  Poly& operator+=(const Poly& rhs);
  Poly& operator-=(const Poly& rhs);
  Poly& operator*=(const Poly& rhs);
  Poly& operator*=(double c);

  friend Poly operator+(Poly lhs, const Poly& rhs) { return lhs += rhs; }
  friend Poly operator-(Poly lhs, const Poly& rhs) { return lhs -= rhs; }
  friend Poly operator*(const Poly& lhs, const Poly& rhs);
  friend Poly operator*(Poly lhs, double c) { return lhs *= c; }
  friend Poly operator*(double c, Poly rhs) { return rhs *= c; }

  bool operator==(const Poly&) const = default;

 private:
  void normalize();

  std::vector<double> coeffs_;
};

/// (z - r)^n with exact binomial coefficients, 0 <= n <= kMaxDegree.
Poly binom_power(int n, double r = 1.0);

/// Relative threshold below which a divisor's leading coefficient is flagged.
inline constexpr double kLeadingTolerance = 1e-10;

struct Division {
  Poly quotient;
  Poly remainder;
  /// The divisor's leading coefficient is tiny next to its other coefficients,
  /// so the quotient is dominated by rounding.
  bool degenerate = false;
};

/// Euclidean division num = quotient * den + remainder, deg remainder < deg den.
/// Throws std::invalid_argument when den is identically zero.
Division poly_rem(const Poly& num, const Poly& den);

/// Successive Euclidean remainders chain[k] = chain[k-2] mod chain[k-1],
/// stopping once a remainder has degree zero or vanishes.
struct RemainderChain {
  std::vector<Poly> chain;
  bool degenerate = false;

  const Poly& terminal() const { return chain.back(); }
};

RemainderChain remainder_chain(const Poly& r0, const Poly& r1);

/// Chebyshev polynomials of the first (T_k) and second (U_k) kind.
Poly chebyshev_t(int k);
Poly chebyshev_u(int k);

enum class ChebKind { cosine, sine };

/// Rewrites a trigonometric sum as a polynomial in x = cos(phi).
///
/// cosine: a + sum_k d_k cos(k phi)        ->  a + sum_k d_k T_k(x)
/// sine:   sum_k d_k sin(k phi) / sin(phi) ->  sum_k d_k U_{k-1}(x)
///
/// d holds d_1..d_n with 1 <= n <= 5; `a` is ignored for the sine kind.
Poly cheb_expand(std::span<const double> d, double a, ChebKind kind);

/// Real roots strictly inside (lo, hi), ascending.
///
/// Roots are isolated with a Sturm sequence and polished by bisection, so
/// every distinct real root is reported once whatever its multiplicity.
/// Roots within 1e-9 of either end are dropped. Throws on the zero polynomial.
std::vector<double> real_roots_open(const Poly& p, double lo, double hi);

/// All complex roots with multiplicity (Aberth-Ehrlich iteration).
/// Throws std::invalid_argument for constant polynomials.
std::vector<Complex> all_roots(const Poly& p);

}  // namespace sdm
