#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "boltzsym/source.hpp"

namespace boltzsym {

/// phi sampled on the uniform grid x_i = i * x_max / (n_points - 1).
class GridState {
 public:
  GridState(double x_max, std::vector<double> values, double time = 0.0);

  /// Samples f on a fresh grid.
  template <class F>
  static GridState sample(double x_max, std::size_t n_points, F&& f, double time = 0.0) {
    std::vector<double> v(n_points);
    const double h = x_max / static_cast<double>(n_points - 1);
    for (std::size_t i = 0; i < n_points; ++i) v[i] = f(static_cast<double>(i) * h);
    return GridState(x_max, std::move(v), time);
  }

  double x_max() const noexcept { return x_max_; }
  std::size_t n_points() const noexcept { return values_.size(); }
  double spacing() const noexcept { return x_max_ / static_cast<double>(values_.size() - 1); }
  double x(std::size_t i) const noexcept { return static_cast<double>(i) * spacing(); }
  std::vector<double> xs() const;

  const std::vector<double>& values() const noexcept { return values_; }
  std::vector<double>& values() noexcept { return values_; }
  double time() const noexcept { return time_; }
  void set_time(double t) noexcept { time_ = t; }

 private:
  double x_max_;
  std::vector<double> values_;
  double time_;
};

enum class ConvolutionMethod { direct, fft };

/// out[i] = (1/x_i) * trapezoid( int_0^{x_i} phi(u) phi(x_i - u) du ), out[0] = phi(0)^2.
std::vector<double> collision_grid(const GridState& state, ConvolutionMethod method);
/// Same kernel on raw samples with spacing implied (only the index form is needed).
std::vector<double> collision_grid(std::span<const double> values, ConvolutionMethod method);

/// -phi(x_i) phi(0) + collision + q(x_i, t)
std::vector<double> rhs_grid(const GridState& state, const SourceModel& source,
                             ConvolutionMethod method = ConvolutionMethod::fft);

struct BenchRow {
  std::size_t n = 0;
  ConvolutionMethod method = ConvolutionMethod::direct;
  double seconds = 0.0;
  double checksum = 0.0;
  bool agree = false;  // direct and fft outputs within 1e-10 * max|out|
};

/// Times both kernels for each size on deterministic inputs; one row per (size, method).
std::vector<BenchRow> bench_convolution(std::span<const std::size_t> sizes);

void write_grid_csv(std::ostream& os, const GridState& state);
GridState read_grid_csv(std::istream& is, double time = 0.0);
void write_bench_csv(std::ostream& os, std::span<const BenchRow> rows);

}  // namespace boltzsym
