#pragma once

// Smoothed interval cutoffs and the Poisson summation identity.
//
// Fourier convention: W^(xi) = int W(x) exp(-i xi x) dx, i.e. angular
// frequency. With this normalisation sum_n phi(n) = sum_h phi^(2 pi h), and
// for 0 <= b < d
//
//   sum_m W(m/L) (1_{m = b (d)} - 1/d) = (L/d) sum_{h != 0, d !| h} W^(2 pi L h / d) e(bh/d).
//
// The terms with d | h cancel exactly against the expansion of the 1/d
// part; poisson_check reports them separately as the aliasing term.
//
// The bump is Psi(x) = c exp(-1/(1 - x^2)) on (-1, 1) with c fixing unit
// mass, and W = 1_J * S Psi(S .), so W(x) = Phi(S(x - j0)) - Phi(S(x - j1))
// with Phi the distribution function of Psi and W^(xi) = 1_J^(xi) Psi^(xi/S).

#include <complex>
#include <cstdint>
#include <vector>

#include "progdist/util.hpp"

namespace progdist {

using Complex = std::complex<double>;

struct Estimate {
  double value = 0;
  double error = 0;
};

struct ComplexEstimate {
  Complex value{};
  double error = 0;
};

/// c with c * int_{-1}^{1} exp(-1/(1-x^2)) dx = 1, computed once to
/// relative accuracy 1e-12.
double bump_normalization();

double bump(double x);

/// int_{-1}^{t} Psi.
Estimate bump_cdf(double t);

/// Psi^(omega) = int Psi(t) cos(omega t) dt (Psi is even, so this is real).
Estimate bump_fourier(double omega);

/// ||Psi^(k)||_1 for 0 <= k <= kMaxDerivative, an upper estimate.
inline constexpr int kMaxDerivative = 24;
double bump_derivative_l1(int k);

/// The k-th derivative of Psi at x, via Taylor-series arithmetic.
double bump_derivative(int k, double x);

class SmoothCutoff {
 public:
  /// J = [j0, j1] within [0, 1]; sharpness S > 0.
  SmoothCutoff(double j0, double j1, double sharpness);

  /// S = X^{sigma/10}.
  static SmoothCutoff from_scale(double j0, double j1, double X, double sigma);

  [[nodiscard]] double j0() const { return j0_; }
  [[nodiscard]] double j1() const { return j1_; }
  [[nodiscard]] double sharpness() const { return S_; }
  [[nodiscard]] double psi_normalization() const { return bump_normalization(); }
  [[nodiscard]] double length() const { return j1_ - j0_; }

  /// W(x); exactly 0 or 1 away from the two transition intervals.
  [[nodiscard]] Estimate eval(double x) const;
  [[nodiscard]] double operator()(double x) const { return eval(x).value; }

  /// W^(xi); throws if the quadrature misses its 1e-10 absolute target.
  [[nodiscard]] ComplexEstimate fourier(double xi) const;

  /// Smallest and largest x with W(x) != 0.
  [[nodiscard]] double support_lo() const { return j0_ - 1.0 / S_; }
  [[nodiscard]] double support_hi() const { return j1_ + 1.0 / S_; }

 private:
  double j0_;
  double j1_;
  double S_;
};

double cutoff_eval(const SmoothCutoff& W, double x);
Complex fourier_W(const SmoothCutoff& W, double xi);

/// Upper bound ||W^(A)||_1 <= 2 S^{A-1} ||Psi^(A-1)||_1.
double cutoff_derivative_l1(const SmoothCutoff& W, int A);

struct TailBound {
  int A = 0;
  double bound = 0;
};

/// Bound on (L/d) sum_{|h| > H} |W^(2 pi L h / d)| from
/// |W^(xi)| <= |xi|^{-A} ||W^(A)||_1, minimised over 2 <= A <= kMaxDerivative + 1.
TailBound poisson_tail_bound(const SmoothCutoff& W, double L, std::uint64_t d, std::uint64_t H);

/// Least H whose tail bound is below `target`.
std::uint64_t minimal_adequate_H(const SmoothCutoff& W, double L, std::uint64_t d, double target = 1e-8);

struct PoissonCheck {
  double lhs = 0;
  Complex rhs{};          // sum over 0 < |h| <= H with d !| h
  Complex rhs_literal{};  // sum over all 0 < |h| <= H
  Complex aliasing{};     // (L/d) sum_{0 < |k| <= H/d} W^(2 pi L k)
  double difference = 0;  // |lhs - rhs|
  TailBound tail{};
  double quadrature_budget = 0;
  bool ok = false;        // difference <= tail.bound + quadrature_budget
};

/// Throws if the tail bound at H is not below 1e-8; the message carries the
/// minimal adequate H.
PoissonCheck poisson_check(const SmoothCutoff& W, double L, std::uint64_t d, std::uint64_t b, std::uint64_t H);

struct TruncationBudget {
  int A = 0;
  double H_exponent = 0;  // 2 eta + 2 sigma / 5
  double H = 0;           // X^{H_exponent}
};

/// A = ceil(100 / sigma), H = X^{2 eta + 2 sigma / 5}.
TruncationBudget truncation_budget(double sigma, double eta, double X);

}  // namespace progdist
