#pragma once

// Radial Fourier pair between f(v) and phi~(k), and the change of variable
// x = k^2 / 2 that produces phi(x).

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace boltzsym {

/// Samples on the uniform grid r_i = i * r_max / (n_points - 1).
struct RadialFunction {
  double r_max = 1.0;
  std::vector<double> values;

  RadialFunction() = default;
  RadialFunction(double r_max, std::vector<double> values);

  template <class F>
  static RadialFunction sample(double r_max, std::size_t n_points, F&& f) {
    std::vector<double> v(n_points);
    for (std::size_t i = 0; i < n_points; ++i) v[i] = f(r_max * static_cast<double>(i) / static_cast<double>(n_points - 1));
    return RadialFunction(r_max, std::move(v));
  }

  std::size_t n_points() const noexcept { return values.size(); }
  double spacing() const noexcept { return r_max / static_cast<double>(values.size() - 1); }
  double r(std::size_t i) const noexcept { return static_cast<double>(i) * spacing(); }
};

inline constexpr double kDecayTolerance = 1e-12;

/// Composite Simpson on uniform samples (3/8 rule on the last three intervals for an even count).
double simpson(const std::vector<double>& y, double h);

/// Throws InsufficientDecayError when the last sample exceeds kDecayTolerance * max.
void require_decay(const RadialFunction& f, const std::string& what);

/// phi~(k) = (4 pi / k) int_0^inf v sin(kv) f(v) dv; at k = 0, 4 pi int v^2 f dv.
RadialFunction forward_transform(const RadialFunction& f, double k_max, std::size_t n_points);

enum class InverseNormalization {
  round_trip,  // 1 / (2 pi^2 v), the functional inverse of forward_transform
  printed,     // 4 pi / v
};

double inverse_constant_factor(InverseNormalization norm);

/// f(v) = c / v * int_0^inf k sin(kv) phi~(k) dk with c from the normalization.
RadialFunction inverse_transform(const RadialFunction& phi_tilde, double v_max, std::size_t n_points,
                                 InverseNormalization norm = InverseNormalization::round_trip);

/// phi~ at k = sqrt(2x) by four-point cubic interpolation.
double phi_of_x(const RadialFunction& phi_tilde, double x);

/// (2 pi T)^{-3/2} exp(-v^2 / (2T)).
double maxwellian(double temperature, double v);

/// header is "v" or "k"; columns "<header>,value".
void write_radial_csv(std::ostream& os, const RadialFunction& f, const std::string& header);
RadialFunction read_radial_csv(std::istream& is);

}  // namespace boltzsym
