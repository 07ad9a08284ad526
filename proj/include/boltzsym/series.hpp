#pragma once

// Power-series form of the transformed kinetic equation.  The collision
// integral  int_0^1 a(xs) b(x(1-s)) ds  acts on coefficients as a
// lower-triangular convolution weighted by the beta integrals
// B(i+1, j+1) = i! j! / (i+j+1)!.

#include <cstddef>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace boltzsym {

using Rational = boost::multiprecision::cpp_rational;
using Coeffs = std::vector<double>;

inline constexpr std::size_t kDefaultTruncation = 40;
inline constexpr std::size_t kMaxWeightOrder = 512;

/// i! j! / (i+j+1)!, exact.
Rational beta_weight(unsigned i, unsigned j);
/// (n!)^2 / (2n+1)!
Rational p_n(unsigned n);
/// 2 P_n (2n)! n! / (3n+1)!
Rational q_n_const(unsigned n);

double to_double(const Rational& r);

/// Triangular table of beta weights converted once to double.
/// Immutable after construction; share freely between threads.
class WeightTable {
 public:
  explicit WeightTable(std::size_t order);

  std::size_t order() const noexcept { return order_; }
  /// Requires i + j <= order().
  double operator()(std::size_t i, std::size_t j) const noexcept {
    return rows_[i + j][i];
  }

  /// Cached table covering at least `order`; order must be <= kMaxWeightOrder.
  static std::shared_ptr<const WeightTable> shared(std::size_t order);

 private:
  std::size_t order_;
  std::vector<std::vector<double>> rows_;  // rows_[n][i] = w(i, n-i)
};

struct SeriesState {
  Coeffs coeffs;  // a_n, coefficient of x^n
  double time = 0.0;

  std::size_t trunc() const noexcept { return coeffs.empty() ? 0 : coeffs.size() - 1; }
};

struct SeriesPair {
  SeriesState phi;
  Coeffs psi;
};

/// out_n = sum_{i+j=n} a_i b_j w(i,j) for n up to the common truncation.
Coeffs collision_convolve(std::span<const double> a, std::span<const double> b);
Coeffs collision_convolve(std::span<const double> a, std::span<const double> b,
                          const WeightTable& table);
/// Full product up to degree `order` (a, b treated as exact polynomials).
Coeffs collision_convolve_to(std::span<const double> a, std::span<const double> b,
                             std::size_t order);

/// (da/dt)_n = -a_0 a_n + conv(a,a)_n + q_n
Coeffs rhs_series(const SeriesState& state, std::span<const double> q_coeffs);

double eval_series(std::span<const double> coeffs, double x);
inline double eval_series(const SeriesState& s, double x) { return eval_series(s.coeffs, x); }
/// d/dx of the series at x.
double eval_series_derivative(std::span<const double> coeffs, double x);

/// Cauchy product truncated to `order`.
Coeffs series_product(std::span<const double> a, std::span<const double> b, std::size_t order);
/// Coefficients of exp(k x) to `order`.
Coeffs exp_series(double k, std::size_t order);

/// Coefficients of e^{-x}; equilibrium of the homogeneous equation.
Coeffs equilibrium_coeffs(std::size_t order);
/// Coefficients of 6 e^x (1 - x), the BKW profile: 6 (1-n)/n!.
Coeffs bkw_coeffs(std::size_t order);

void write_coeffs_csv(std::ostream& os, std::span<const double> coeffs,
                      const std::string& value_header = "value");
Coeffs read_coeffs_csv(std::istream& is);

}  // namespace boltzsym
