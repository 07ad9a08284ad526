#include "boltzsym/transform.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "boltzsym/errors.hpp"

namespace boltzsym {

namespace {

constexpr double kPi = std::numbers::pi;

template <class Weight>
double weighted_integral(const RadialFunction& f, Weight&& w) {
  std::vector<double> y(f.n_points());
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = w(f.r(i)) * f.values[i];
  return simpson(y, f.spacing());
}

}  // namespace

RadialFunction::RadialFunction(double r_max_in, std::vector<double> v) : r_max(r_max_in), values(std::move(v)) {
  if (values.size() < 4) throw std::invalid_argument("radial function needs at least 4 samples");
  if (!(r_max > 0.0) || !std::isfinite(r_max)) throw std::invalid_argument("radial range must be positive");
  for (double x : values) {
    if (!std::isfinite(x)) throw std::invalid_argument("radial samples must be finite");
  }
}

double simpson(const std::vector<double>& y, double h) {
  const std::size_t n = y.size();
  if (n < 2) return 0.0;
  if (n == 2) return 0.5 * h * (y[0] + y[1]);
  if (n == 3) return h / 3.0 * (y[0] + 4.0 * y[1] + y[2]);
  std::size_t end = n - 1;  // last index covered by the 1/3 rule
  double tail = 0.0;
  if ((n - 1) % 2 == 1) {
    end = n - 4;
    tail = 3.0 * h / 8.0 * (y[end] + 3.0 * y[end + 1] + 3.0 * y[end + 2] + y[end + 3]);
  }
  double acc = y[0] + y[end];
  for (std::size_t i = 1; i < end; ++i) acc += (i % 2 == 1 ? 4.0 : 2.0) * y[i];
  return h / 3.0 * acc + tail;
}

void require_decay(const RadialFunction& f, const std::string& what) {
  double peak = 0.0;
  for (double v : f.values) peak = std::max(peak, std::abs(v));
  if (std::abs(f.values.back()) > kDecayTolerance * peak) {
    std::ostringstream msg;
    msg << what << " has not decayed by r = " << f.r_max << " (last/max = " << std::abs(f.values.back()) / peak << ")";
    throw InsufficientDecayError(msg.str());
  }
}

RadialFunction forward_transform(const RadialFunction& f, double k_max, std::size_t n_points) {
  require_decay(f, "f(v)");
  return RadialFunction::sample(k_max, n_points, [&](double k) {
    if (k == 0.0) return 4.0 * kPi * weighted_integral(f, [](double v) { return v * v; });
    return 4.0 * kPi / k * weighted_integral(f, [k](double v) { return v * std::sin(k * v); });
  });
}

double inverse_constant_factor(InverseNormalization norm) {
  return norm == InverseNormalization::round_trip ? 1.0 / (2.0 * kPi * kPi) : 4.0 * kPi;
}

RadialFunction inverse_transform(const RadialFunction& phi_tilde, double v_max, std::size_t n_points,
                                 InverseNormalization norm) {
  require_decay(phi_tilde, "phi~(k)");
  const double c = inverse_constant_factor(norm);
  return RadialFunction::sample(v_max, n_points, [&](double v) {
    if (v == 0.0) return c * weighted_integral(phi_tilde, [](double k) { return k * k; });
    return c / v * weighted_integral(phi_tilde, [v](double k) { return k * std::sin(k * v); });
  });
}

double phi_of_x(const RadialFunction& phi_tilde, double x) {
  if (!(x >= 0.0)) throw DomainError("phi_of_x needs x >= 0");
  const double k = std::sqrt(2.0 * x);
  if (k > phi_tilde.r_max) throw DomainError("sqrt(2x) lies beyond the sampled k range");
  const double h = phi_tilde.spacing();
  const std::size_t n = phi_tilde.n_points();
  const auto i = static_cast<std::size_t>(std::floor(k / h));
  const std::size_t start = std::min(i > 0 ? i - 1 : 0, n - 4);
  double acc = 0.0;
  for (std::size_t a = start; a < start + 4; ++a) {
    double w = 1.0;
    for (std::size_t b = start; b < start + 4; ++b) {
      if (b != a) w *= (k - phi_tilde.r(b)) / (phi_tilde.r(a) - phi_tilde.r(b));
    }
    acc += w * phi_tilde.values[a];
  }
  return acc;
}

double maxwellian(double temperature, double v) {
  return std::pow(2.0 * kPi * temperature, -1.5) * std::exp(-v * v / (2.0 * temperature));
}

void write_radial_csv(std::ostream& os, const RadialFunction& f, const std::string& header) {
  os << header << ",value\n" << std::setprecision(17);
  for (std::size_t i = 0; i < f.n_points(); ++i) os << f.r(i) << ',' << f.values[i] << '\n';
}

RadialFunction read_radial_csv(std::istream& is) {
  std::string line;
  std::vector<double> r, v;
  bool first = true;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (first && !(std::isdigit(static_cast<unsigned char>(line[0])) || line[0] == '-' || line[0] == '.')) {
      first = false;
      continue;
    }
    first = false;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw std::runtime_error("malformed radial CSV line: " + line);
    r.push_back(std::stod(line.substr(0, comma)));
    v.push_back(std::stod(line.substr(comma + 1)));
  }
  if (r.size() < 4) throw std::runtime_error("radial CSV needs at least 4 rows");
  if (r.front() != 0.0) throw std::runtime_error("radial CSV grid must start at 0");
  const double h = r[1] - r[0];
  for (std::size_t i = 1; i < r.size(); ++i) {
    if (std::abs(r[i] - r[i - 1] - h) > 1e-9 * std::max(1.0, std::abs(r.back()))) {
      throw std::runtime_error("radial CSV grid is not uniform");
    }
  }
  return RadialFunction(r.back(), std::move(v));
}

}  // namespace boltzsym
