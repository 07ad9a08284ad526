#pragma once

// Independent reference computations used by the tests.  Nothing here calls
// into the library; values come from quadrature, closed forms, or
// straightforward loops.

#include <cmath>
#include <cstddef>
#include <functional>
#include <numbers>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace oracle {

inline double integrate(const std::function<double(double)>& f, double a, double b) {
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 15, 1e-15);
}

/// int_0^1 s^i (1-s)^j ds
inline double beta_quadrature(int i, int j) {
  return integrate([=](double s) { return std::pow(s, i) * std::pow(1.0 - s, j); }, 0.0, 1.0);
}

inline double factorial(int n) { return std::tgamma(n + 1.0); }

inline double p_n(int n) { return factorial(n) * factorial(n) / factorial(2 * n + 1); }

/// 2 P_n int_0^1 s^{2n} (1-s)^n ds (Q_n written through its defining integral)
inline double q_n(int n) { return 2.0 * p_n(n) * beta_quadrature(2 * n, n); }

/// r(z) = 6 e^z (1 - z)
inline double bkw_profile(double z) { return 6.0 * std::exp(z) * (1.0 - z); }

/// int_0^1 r(zs) r(z(1-s)) ds for the BKW profile, by hand expansion.
inline double bkw_self_convolution(double z) { return 36.0 * std::exp(z) * (1.0 - z + z * z / 6.0); }

/// Taylor coefficients of 36 e^z (1 - z + z^2/6).
inline std::vector<double> bkw_self_convolution_coeffs(std::size_t order) {
  std::vector<double> out(order + 1);
  for (std::size_t n = 0; n <= order; ++n) {
    double c = 1.0 / factorial(static_cast<int>(n));
    if (n >= 1) c -= 1.0 / factorial(static_cast<int>(n) - 1);
    if (n >= 2) c += 1.0 / (6.0 * factorial(static_cast<int>(n) - 2));
    out[n] = 36.0 * c;
  }
  return out;
}

/// Exact BKW field phi(x, t) = r(x e^{-t}).
inline double bkw_field(double x, double t) { return bkw_profile(x * std::exp(-t)); }

/// (1/x) int_0^1 ... quadrature of int_0^1 f(xs) f(x(1-s)) ds
inline double collision_quadrature(const std::function<double(double)>& f, double x) {
  return integrate([&](double s) { return f(x * s) * f(x * (1.0 - s)); }, 0.0, 1.0);
}

/// Plain O(n^2) trapezoid version of the grid collision operator.
inline std::vector<double> collision_trapezoid(const std::vector<double>& v) {
  std::vector<double> out(v.size());
  out[0] = v[0] * v[0];
  for (std::size_t i = 1; i < v.size(); ++i) {
    double acc = 0.5 * (v[0] * v[i] + v[i] * v[0]);
    for (std::size_t k = 1; k < i; ++k) acc += v[k] * v[i - k];
    out[i] = acc / static_cast<double>(i);
  }
  return out;
}

/// Fourth-order central difference.
inline double derivative(const std::function<double(double)>& f, double x, double h = 1e-3) {
  return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h);
}

/// (2 pi T)^{-3/2} e^{-v^2/(2T)}
inline double maxwellian(double T, double v) {
  return std::pow(2.0 * std::numbers::pi * T, -1.5) * std::exp(-v * v / (2.0 * T));
}

inline double gaussian_transform(double T, double k) { return std::exp(-T * k * k / 2.0); }

}  // namespace oracle

// Frozen values, computed by hand.
namespace expected {

inline constexpr double kQ1 = 1.0 / 36.0;
inline constexpr double kQ2 = 1.0 / 1575.0;
inline constexpr double kB1 = std::numbers::pi / 8.0;  // int_0^1 sqrt(s(1-s)) ds
inline constexpr double kC_beta_4_3[2] = {2.0, 4.0};
inline constexpr std::size_t kBkwResonances[2] = {2, 3};

/// 6 (1 - n) / n!
inline double bkw_coeff(int n) { return 6.0 * (1.0 - n) / std::tgamma(n + 1.0); }

}  // namespace expected
