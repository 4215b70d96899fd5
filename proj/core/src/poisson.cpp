#include "progdist/poisson.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace progdist {

namespace {

using boost::math::quadrature::gauss_kronrod;

constexpr double kPi = std::numbers::pi;
constexpr double kFourierTarget = 1e-10;
constexpr double kTailTarget = 1e-8;
// Psi^ below this is returned as 0 with the decay bound as its error.
constexpr double kNegligible = 1e-20;

double raw_bump(double x) {
  const double d = 1.0 - x * x;
  return d <= 0 ? 0.0 : std::exp(-1.0 / d);
}

// int_0^t raw_bump for 0 <= t <= 1.
Estimate half_mass(double t) {
  if (t <= 0) return {};
  double err = 0;
  const double v = gauss_kronrod<double, 61>::integrate(raw_bump, 0.0, t, 15, 1e-14, &err);
  return {v, err};
}

const std::array<double, kMaxDerivative + 1>& derivative_norms() {
  static const std::array<double, kMaxDerivative + 1> norms = [] {
    std::array<double, kMaxDerivative + 1> out{};
    out[0] = 1.0;
    for (int k = 1; k <= kMaxDerivative; ++k) {
      double err = 0;
      auto f = [k](double x) { return std::abs(bump_derivative(k, x)); };
      const double half = gauss_kronrod<double, 61>::integrate(f, 0.0, 1.0, 20, 1e-10, &err);
      // symmetric about 0; pad by the quadrature error so this stays an upper estimate
      out[k] = 2.0 * (half + err) * (1.0 + 1e-9);
    }
    return out;
  }();
  return norms;
}

// min_k ||Psi^(k)||_1 / |omega|^k, a bound on |Psi^(omega)|.
double fourier_decay_bound(double omega) {
  const double w = std::abs(omega);
  double best = 1.0;
  if (w <= 1.0) return best;
  const auto& n = derivative_norms();
  const double lw = std::log(w);
  for (int k = 1; k <= kMaxDerivative; ++k) best = std::min(best, std::exp(std::log(n[k]) - k * lw));
  return best;
}

}  // namespace

double bump_normalization() {
  static const double c = [] {
    const Estimate h = half_mass(1.0);
    return 1.0 / (2.0 * h.value);
  }();
  return c;
}

double bump(double x) {
  if (!(std::abs(x) < 1.0)) return 0.0;
  return bump_normalization() * raw_bump(x);
}

Estimate bump_cdf(double t) {
  if (t <= -1.0) return {0.0, 0.0};
  if (t >= 1.0) return {1.0, 0.0};
  if (t == 0.0) return {0.5, 0.0};
  const double c = bump_normalization();
  const Estimate h = half_mass(std::abs(t));
  const double v = c * h.value;
  return {t > 0 ? 0.5 + v : 0.5 - v, c * h.error};
}

double bump_derivative(int k, double x) {
  if (k < 0 || k > kMaxDerivative) throw Error("bump_derivative: order out of range");
  const double delta = 1.0 - x * x;
  // exp(-1/delta) wins against every derivative growth up to order 24 here
  if (delta < 1e-4) return 0.0;
  if (k == 0) return bump(x);

  // Taylor coefficients of g(x+t) = -1/(delta - 2xt - t^2), then of exp(g)/exp(g_0).
  std::array<double, kMaxDerivative + 1> r{};
  r[0] = 1.0 / delta;
  r[1] = 2.0 * x * r[0] / delta;
  for (int n = 2; n <= k; ++n) r[n] = (2.0 * x * r[n - 1] + r[n - 2]) / delta;
  std::array<double, kMaxDerivative + 1> F{};
  F[0] = 1.0;
  for (int n = 1; n <= k; ++n) {
    double s = 0;
    for (int j = 1; j <= n; ++j) s += j * (-r[j]) * F[n - j];
    F[n] = s / n;
  }
  if (F[k] == 0.0) return 0.0;
  const double log_mag = std::log(std::abs(F[k])) - r[0] + std::lgamma(k + 1.0) + std::log(bump_normalization());
  return std::copysign(std::exp(log_mag), F[k]);
}

double bump_derivative_l1(int k) {
  if (k < 0 || k > kMaxDerivative) throw Error("bump_derivative_l1: order out of range");
  return derivative_norms()[static_cast<std::size_t>(k)];
}

Estimate bump_fourier(double omega) {
  const double w = std::abs(omega);
  if (w == 0.0) return {1.0, 0.0};
  const double decay = fourier_decay_bound(w);
  if (decay < kNegligible) return {0.0, decay};

  const double c = bump_normalization();
  auto f = [w](double t) { return raw_bump(t) * std::cos(w * t); };
  // one panel per half period keeps each panel non-oscillatory
  const auto panels = static_cast<std::size_t>(std::ceil(w / kPi)) + 1;
  const double step = 1.0 / static_cast<double>(panels);
  double sum = 0;
  double err = 0;
  for (std::size_t i = 0; i < panels; ++i) {
    const double a = static_cast<double>(i) * step;
    const double b = i + 1 == panels ? 1.0 : a + step;
    double e = 0;
    sum += gauss_kronrod<double, 31>::integrate(f, a, b, 6, 1e-13, &e);
    err += e;
  }
  return {2.0 * c * sum, 2.0 * c * err + 4.0 * std::numeric_limits<double>::epsilon() * static_cast<double>(panels)};
}

SmoothCutoff::SmoothCutoff(double j0, double j1, double sharpness) : j0_(j0), j1_(j1), S_(sharpness) {
  if (!(j0 >= 0.0 && j1 <= 1.0 && j0 < j1)) throw Error("SmoothCutoff: J must be a subinterval [j0, j1] of [0, 1]");
  if (!(sharpness > 0.0) || !std::isfinite(sharpness)) throw Error("SmoothCutoff: sharpness must be positive");
}

SmoothCutoff SmoothCutoff::from_scale(double j0, double j1, double X, double sigma) {
  if (!(X > 1.0) || !(sigma > 0.0)) throw Error("SmoothCutoff: need X > 1 and sigma > 0");
  return {j0, j1, std::pow(X, sigma / 10.0)};
}

Estimate SmoothCutoff::eval(double x) const {
  const double a = S_ * (x - j0_);
  const double b = S_ * (x - j1_);
  if (a <= -1.0 || b >= 1.0) return {0.0, 0.0};
  if (a >= 1.0 && b <= -1.0) return {1.0, 0.0};
  const Estimate lo = bump_cdf(a);
  const Estimate hi = bump_cdf(b);
  const double v = std::clamp(lo.value - hi.value, 0.0, 1.0);
  return {v, lo.error + hi.error};
}

ComplexEstimate SmoothCutoff::fourier(double xi) const {
  const double len = j1_ - j0_;
  const double mid = 0.5 * (j0_ + j1_);
  const double y = 0.5 * xi * len;
  const double sinc = y == 0.0 ? 1.0 : std::sin(y) / y;
  // 1_J^(xi) = e^{-i xi mid} |J| sinc(xi |J| / 2)
  const Complex indicator = std::polar(len * sinc, -xi * mid);
  const Estimate psi = bump_fourier(xi / S_);
  ComplexEstimate out{indicator * psi.value, std::abs(indicator) * psi.error};
  if (out.error > kFourierTarget) {
    throw Error("fourier_W: quadrature did not converge at xi=" + std::to_string(xi) +
                " (achieved error " + std::to_string(out.error) + ")");
  }
  return out;
}

double cutoff_eval(const SmoothCutoff& W, double x) { return W.eval(x).value; }

Complex fourier_W(const SmoothCutoff& W, double xi) { return W.fourier(xi).value; }

double cutoff_derivative_l1(const SmoothCutoff& W, int A) {
  if (A < 1 || A > kMaxDerivative + 1) throw Error("cutoff_derivative_l1: A out of range");
  return 2.0 * std::pow(W.sharpness(), A - 1) * bump_derivative_l1(A - 1);
}

TailBound poisson_tail_bound(const SmoothCutoff& W, double L, u64 d, u64 H) {
  if (!(L > 0.0) || d == 0) throw Error("poisson_tail_bound: need L > 0 and d >= 1");
  TailBound best{0, std::numeric_limits<double>::infinity()};
  const double base = static_cast<double>(d) / (2.0 * kPi * L);
  for (int A = 2; A <= kMaxDerivative + 1; ++A) {
    // sum_{h > H} h^{-A} <= H^{1-A}/(A-1), or zeta(A) <= A/(A-1) when H = 0
    const double log_tail = H == 0 ? std::log(A / (A - 1.0))
                                   : (1.0 - A) * std::log(static_cast<double>(H)) - std::log(A - 1.0);
    const double log_bound = std::log(2.0 * L / static_cast<double>(d)) + A * std::log(base) +
                             std::log(cutoff_derivative_l1(W, A)) + log_tail;
    const double bound = std::exp(log_bound);
    if (bound < best.bound) best = {A, bound};
  }
  return best;
}

u64 minimal_adequate_H(const SmoothCutoff& W, double L, u64 d, double target) {
  if (poisson_tail_bound(W, L, d, 1).bound < target) return 1;
  u64 hi = 2;
  constexpr u64 cap = u64{1} << 50;
  while (poisson_tail_bound(W, L, d, hi).bound >= target) {
    if (hi >= cap) throw Error("minimal_adequate_H: tail bound does not reach the target below 2^50");
    hi *= 2;
  }
  u64 lo = hi / 2;  // bound(lo) >= target
  while (hi - lo > 1) {
    const u64 mid = lo + (hi - lo) / 2;
    (poisson_tail_bound(W, L, d, mid).bound < target ? hi : lo) = mid;
  }
  return hi;
}

PoissonCheck poisson_check(const SmoothCutoff& W, double L, u64 d, u64 b, u64 H) {
  if (!(L > 0.0) || !std::isfinite(L)) throw Error("poisson_check: L must be positive");
  if (d == 0) throw Error("poisson_check: d must be >= 1");
  if (b >= d) throw Error("poisson_check: need 0 <= b < d");
  if (H == 0) throw Error("poisson_check: H must be >= 1");

  PoissonCheck out;
  out.tail = poisson_tail_bound(W, L, d, H);
  if (!(out.tail.bound < kTailTarget)) {
    throw Error("poisson_check: tail bound " + std::to_string(out.tail.bound) + " not below 1e-8 at H=" +
                std::to_string(H) + "; minimal adequate H is " +
                std::to_string(minimal_adequate_H(W, L, d, kTailTarget)));
  }

  const double m_lo = std::ceil(L * W.support_lo());
  const double m_hi = std::floor(L * W.support_hi());
  if (m_hi - m_lo > 1e9) throw Error("poisson_check: support holds too many lattice points");
  const double inv_d = 1.0 / static_cast<double>(d);
  double lhs = 0;
  double lhs_err = 0;
  double lhs_abs = 0;
  for (auto m = static_cast<i64>(m_lo); m <= static_cast<i64>(m_hi); ++m) {
    const Estimate w = W.eval(static_cast<double>(m) / L);
    if (w.value == 0.0 && w.error == 0.0) continue;
    const double weight = (reduce_mod(m, d) == b ? 1.0 : 0.0) - inv_d;
    lhs += w.value * weight;
    lhs_err += w.error * std::abs(weight);
    lhs_abs += std::abs(w.value * weight);
  }

  const double scale = L * inv_d;
  Complex rhs{};
  Complex literal{};
  Complex aliasing{};
  double rhs_err = 0;
  double rhs_abs = 0;
  for (u64 h = 1; h <= H; ++h) {
    const ComplexEstimate w = W.fourier(2.0 * kPi * L * static_cast<double>(h) / static_cast<double>(d));
    const u64 bh = static_cast<u64>(static_cast<u128>(b) * h % d);
    const Complex phase = std::polar(1.0, 2.0 * kPi * static_cast<double>(bh) / static_cast<double>(d));
    // the -h term is the conjugate of the h term
    const Complex pair = 2.0 * (w.value * phase).real();
    literal += pair;
    if (h % d == 0) {
      aliasing += 2.0 * w.value.real();
    } else {
      rhs += pair;
      rhs_abs += std::abs(pair);
      rhs_err += 2.0 * w.error;
    }
  }
  out.lhs = lhs;
  out.rhs = scale * rhs;
  out.rhs_literal = scale * literal;
  out.aliasing = scale * aliasing;
  out.difference = std::abs(Complex(lhs) - out.rhs);
  constexpr double eps = std::numeric_limits<double>::epsilon();
  out.quadrature_budget = lhs_err + scale * rhs_err + 64.0 * eps * (lhs_abs + scale * rhs_abs + 1.0);
  out.ok = out.difference <= out.tail.bound + out.quadrature_budget;
  return out;
}

TruncationBudget truncation_budget(double sigma, double eta, double X) {
  if (!(sigma > 0.0)) throw Error("truncation_budget: sigma must be positive");
  if (!(eta >= 0.0)) throw Error("truncation_budget: eta must be non-negative");
  if (!(X > 1.0)) throw Error("truncation_budget: X must exceed 1");
  TruncationBudget out;
  out.A = static_cast<int>(std::ceil(100.0 / sigma - 1e-12));
  out.H_exponent = 2.0 * eta + 2.0 * sigma / 5.0;
  out.H = std::pow(X, out.H_exponent);
  return out;
}

}  // namespace progdist
