#include "boltzsym/grid.hpp"

#include <fftw3.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <istream>
#include <memory>
#include <mutex>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

#include "boltzsym/errors.hpp"

namespace boltzsym {

namespace {

// Full linear self-convolution c_i = sum_{k<=i} v_k v_{i-k}, i < n.
std::vector<double> self_convolution_direct(std::span<const double> v) {
  const std::size_t n = v.size();
  std::vector<double> c(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t k = 0; k <= i; ++k) acc += v[k] * v[i - k];
    c[i] = acc;
  }
  return c;
}

// FFTW planning is not thread-safe; execution on distinct arrays is.
std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwFree {
  void operator()(void* p) const noexcept { fftw_free(p); }
};

struct PlanDeleter {
  void operator()(fftw_plan p) const noexcept {
    std::lock_guard lock(fftw_planner_mutex());
    fftw_destroy_plan(p);
  }
};
using PlanPtr = std::unique_ptr<std::remove_pointer_t<fftw_plan>, PlanDeleter>;

std::vector<double> self_convolution_fft(std::span<const double> v) {
  const std::size_t n = v.size();
  std::size_t len = 1;
  while (len < 2 * n - 1) len <<= 1;
  const std::size_t n_freq = len / 2 + 1;

  std::unique_ptr<double, FftwFree> real(static_cast<double*>(fftw_malloc(sizeof(double) * len)));
  std::unique_ptr<fftw_complex, FftwFree> spec(
      static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n_freq)));
  PlanPtr fwd, bwd;
  {
    std::lock_guard lock(fftw_planner_mutex());
    fwd.reset(fftw_plan_dft_r2c_1d(static_cast<int>(len), real.get(), spec.get(), FFTW_ESTIMATE));
    bwd.reset(fftw_plan_dft_c2r_1d(static_cast<int>(len), spec.get(), real.get(), FFTW_ESTIMATE));
  }
  std::fill(real.get(), real.get() + len, 0.0);
  std::copy(v.begin(), v.end(), real.get());
  fftw_execute(fwd.get());
  for (std::size_t k = 0; k < n_freq; ++k) {
    const double re = spec.get()[k][0];
    const double im = spec.get()[k][1];
    spec.get()[k][0] = re * re - im * im;
    spec.get()[k][1] = 2.0 * re * im;
  }
  fftw_execute(bwd.get());
  std::vector<double> c(n);
  const double scale = 1.0 / static_cast<double>(len);
  for (std::size_t i = 0; i < n; ++i) c[i] = real.get()[i] * scale;
  return c;
}

}  // namespace

GridState::GridState(double x_max, std::vector<double> values, double time)
    : x_max_(x_max), values_(std::move(values)), time_(time) {
  if (!(x_max_ > 0.0) || !std::isfinite(x_max_)) throw std::invalid_argument("GridState: x_max must be > 0");
  if (values_.size() < 3) throw std::invalid_argument("GridState: need at least 3 points");
  for (double v : values_) {
    if (!std::isfinite(v)) throw std::invalid_argument("GridState: non-finite sample");
  }
}

std::vector<double> GridState::xs() const {
  std::vector<double> out(n_points());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = x(i);
  return out;
}

std::vector<double> collision_grid(std::span<const double> v, ConvolutionMethod method) {
  if (v.size() < 3) throw std::invalid_argument("collision_grid: need at least 3 points");
  const auto c = method == ConvolutionMethod::direct ? self_convolution_direct(v) : self_convolution_fft(v);
  // Trapezoid with half weights at both ends: h (c_i - v_0 v_i); dividing by x_i = i h.
  std::vector<double> out(v.size());
  out[0] = v[0] * v[0];
  for (std::size_t i = 1; i < v.size(); ++i) out[i] = (c[i] - v[0] * v[i]) / static_cast<double>(i);
  return out;
}

std::vector<double> collision_grid(const GridState& state, ConvolutionMethod method) {
  return collision_grid(state.values(), method);
}

std::vector<double> rhs_grid(const GridState& state, const SourceModel& source, ConvolutionMethod method) {
  const double t = state.time();
  if (!source.is_regular(t)) throw SingularSourceError(source.describe(), t);
  auto out = collision_grid(state, method);
  const auto& v = state.values();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += -v[i] * v[0] + q_value(source, state.x(i), t);
  return out;
}

std::vector<BenchRow> bench_convolution(std::span<const std::size_t> sizes) {
  if (sizes.empty()) throw std::invalid_argument("bench_convolution: no sizes");
  std::vector<BenchRow> rows;
  for (std::size_t n : sizes) {
    if (n < 3) throw std::invalid_argument("bench_convolution: size must be >= 3, got " + std::to_string(n));
    const auto input = GridState::sample(4.0, n, [](double x) { return std::exp(-x) * (1.0 + 0.3 * std::cos(3.0 * x)); });
    std::vector<double> outputs[2];
    BenchRow r[2];
    for (int m = 0; m < 2; ++m) {
      const auto method = m == 0 ? ConvolutionMethod::direct : ConvolutionMethod::fft;
      const auto start = std::chrono::steady_clock::now();
      outputs[m] = collision_grid(input, method);
      const auto stop = std::chrono::steady_clock::now();
      r[m].n = n;
      r[m].method = method;
      r[m].seconds = std::chrono::duration<double>(stop - start).count();
      r[m].checksum = std::accumulate(outputs[m].begin(), outputs[m].end(), 0.0);
    }
    double scale = 0.0;
    double diff = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      scale = std::max(scale, std::abs(outputs[0][i]));
      diff = std::max(diff, std::abs(outputs[0][i] - outputs[1][i]));
    }
    const bool agree = diff <= 1e-10 * scale;
    for (auto& row : r) {
      row.agree = agree;
      rows.push_back(row);
    }
  }
  return rows;
}

void write_grid_csv(std::ostream& os, const GridState& state) {
  const auto old = os.precision(17);
  os << "x,value\n";
  for (std::size_t i = 0; i < state.n_points(); ++i) os << state.x(i) << ',' << state.values()[i] << '\n';
  os.precision(old);
}

GridState read_grid_csv(std::istream& is, double time) {
  std::vector<double> xs, vs;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw std::invalid_argument("grid CSV: missing comma");
    try {
      xs.push_back(std::stod(line.substr(0, comma)));
      vs.push_back(std::stod(line.substr(comma + 1)));
    } catch (const std::invalid_argument&) {
      if (!xs.empty()) throw;  // only the header may be non-numeric
    }
  }
  if (xs.size() < 3) throw std::invalid_argument("grid CSV: need at least 3 rows");
  const double h = xs.back() / static_cast<double>(xs.size() - 1);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (std::abs(xs[i] - static_cast<double>(i) * h) > 1e-9 * std::max(1.0, xs.back())) {
      throw std::invalid_argument("grid CSV: abscissae must be uniform and start at 0");
    }
  }
  return GridState(xs.back(), std::move(vs), time);
}

void write_bench_csv(std::ostream& os, std::span<const BenchRow> rows) {
  const auto old = os.precision(17);
  os << "n,method,seconds,checksum,agree\n";
  for (const auto& r : rows) {
    os << r.n << ',' << (r.method == ConvolutionMethod::direct ? "direct" : "fft") << ',' << r.seconds << ','
       << r.checksum << ',' << (r.agree ? "true" : "false") << '\n';
  }
  os.precision(old);
}

}  // namespace boltzsym
