#include "boltzsym/series.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "boltzsym/errors.hpp"

namespace boltzsym {

using boost::multiprecision::cpp_int;

namespace {

cpp_int factorial(unsigned n) {
  cpp_int f = 1;
  for (unsigned k = 2; k <= n; ++k) f *= k;
  return f;
}

}  // namespace

Rational beta_weight(unsigned i, unsigned j) {
  return Rational(factorial(i) * factorial(j), factorial(i + j + 1));
}

Rational p_n(unsigned n) { return beta_weight(n, n); }

Rational q_n_const(unsigned n) {
  return 2 * p_n(n) * Rational(factorial(2 * n) * factorial(n), factorial(3 * n + 1));
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

WeightTable::WeightTable(std::size_t order) : order_(order) {
  if (order > kMaxWeightOrder) {
    throw DomainError("weight table order " + std::to_string(order) + " exceeds limit " +
                      std::to_string(kMaxWeightOrder));
  }
  // w(i, n-i) = 1 / ((n+1) C(n,i)); binomials via Pascal rows in exact integers.
  rows_.resize(order + 1);
  std::vector<cpp_int> binom{1};
  for (std::size_t n = 0; n <= order; ++n) {
    if (n > 0) {
      std::vector<cpp_int> next(n + 1);
      next[0] = next[n] = 1;
      for (std::size_t i = 1; i < n; ++i) next[i] = binom[i - 1] + binom[i];
      binom = std::move(next);
    }
    auto& row = rows_[n];
    row.resize(n + 1);
    for (std::size_t i = 0; i <= n / 2; ++i) {
      const Rational w(cpp_int(1), binom[i] * (n + 1));
      row[i] = row[n - i] = to_double(w);
    }
  }
}

std::shared_ptr<const WeightTable> WeightTable::shared(std::size_t order) {
  static std::mutex mutex;
  static std::shared_ptr<const WeightTable> cached;
  std::lock_guard lock(mutex);
  if (!cached || cached->order() < order) {
    const std::size_t grown = cached ? std::max(order, std::min(2 * cached->order(), kMaxWeightOrder)) : order;
    cached = std::make_shared<const WeightTable>(std::max(grown, std::max<std::size_t>(order, kDefaultTruncation)));
  }
  return cached;
}

Coeffs collision_convolve(std::span<const double> a, std::span<const double> b,
                          const WeightTable& table) {
  if (a.size() != b.size()) throw std::invalid_argument("collision_convolve: truncation mismatch");
  if (a.empty()) return {};
  const std::size_t n_max = a.size() - 1;
  if (table.order() < n_max) throw std::invalid_argument("collision_convolve: weight table too small");
  Coeffs out(a.size(), 0.0);
  for (std::size_t n = 0; n <= n_max; ++n) {
    double acc = 0.0;
    for (std::size_t i = 0; i <= n; ++i) acc += a[i] * b[n - i] * table(i, n - i);
    out[n] = acc;
  }
  return out;
}

Coeffs collision_convolve(std::span<const double> a, std::span<const double> b) {
  if (a.empty()) return {};
  return collision_convolve(a, b, *WeightTable::shared(a.size() - 1));
}

Coeffs collision_convolve_to(std::span<const double> a, std::span<const double> b,
                             std::size_t order) {
  const auto table = WeightTable::shared(order);
  Coeffs out(order + 1, 0.0);
  for (std::size_t i = 0; i < a.size() && i <= order; ++i) {
    for (std::size_t j = 0; j < b.size() && i + j <= order; ++j) {
      out[i + j] += a[i] * b[j] * (*table)(i, j);
    }
  }
  return out;
}

Coeffs rhs_series(const SeriesState& state, std::span<const double> q_coeffs) {
  const auto& a = state.coeffs;
  if (q_coeffs.size() != a.size()) throw std::invalid_argument("rhs_series: source truncation mismatch");
  Coeffs out = collision_convolve(a, a);
  for (std::size_t n = 0; n < a.size(); ++n) out[n] += -a[0] * a[n] + q_coeffs[n];
  return out;
}

double eval_series(std::span<const double> coeffs, double x) {
  double acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double eval_series_derivative(std::span<const double> coeffs, double x) {
  double acc = 0.0;
  for (std::size_t n = coeffs.size(); n-- > 1;) acc = acc * x + static_cast<double>(n) * coeffs[n];
  return acc;
}

Coeffs series_product(std::span<const double> a, std::span<const double> b, std::size_t order) {
  Coeffs out(order + 1, 0.0);
  for (std::size_t i = 0; i < a.size() && i <= order; ++i) {
    if (a[i] == 0.0) continue;
    for (std::size_t j = 0; j < b.size() && i + j <= order; ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

Coeffs exp_series(double k, std::size_t order) {
  Coeffs out(order + 1);
  double term = 1.0;
  for (std::size_t n = 0; n <= order; ++n) {
    out[n] = term;
    term *= k / static_cast<double>(n + 1);
  }
  return out;
}

Coeffs equilibrium_coeffs(std::size_t order) { return exp_series(-1.0, order); }

Coeffs bkw_coeffs(std::size_t order) {
  Coeffs out(order + 1);
  double inv_fact = 1.0;
  for (std::size_t n = 0; n <= order; ++n) {
    if (n > 0) inv_fact /= static_cast<double>(n);
    out[n] = 6.0 * (1.0 - static_cast<double>(n)) * inv_fact;
  }
  return out;
}

void write_coeffs_csv(std::ostream& os, std::span<const double> coeffs,
                      const std::string& value_header) {
  const auto old = os.precision(17);
  os << "n," << value_header << '\n';
  for (std::size_t n = 0; n < coeffs.size(); ++n) os << n << ',' << coeffs[n] << '\n';
  os.precision(old);
}

Coeffs read_coeffs_csv(std::istream& is) {
  Coeffs out;
  std::string line;
  bool header = true;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (header) {
      header = false;
      if (!std::isdigit(static_cast<unsigned char>(line[0]))) continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw std::invalid_argument("coefficient CSV: missing comma in '" + line + "'");
    const auto n = std::stoul(line.substr(0, comma));
    const double v = std::stod(line.substr(comma + 1));
    if (n >= out.size()) out.resize(n + 1, 0.0);
    out[n] = v;
  }
  return out;
}

}  // namespace boltzsym
