#include "framelab/exponents.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "framelab/errors.hpp"

namespace framelab {

ExponentSet::ExponentSet(ExponentGenerator gen, std::vector<double> values,
                         std::size_t n_max, std::size_t stride,
                         double next_dropped, double min_gap)
    : generator_(gen),
      values_(std::move(values)),
      n_max_(n_max),
      stride_(stride),
      next_dropped_(next_dropped),
      min_gap_(min_gap) {}

ExponentSet ExponentSet::explicit_values(std::vector<double> values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] >= 0.0) || !std::isfinite(values[i])) {
      throw Error("exponents must be finite and non-negative");
    }
    if (i > 0 && !(values[i] > values[i - 1])) {
      throw Error("exponents must be strictly increasing");
    }
  }
  return ExponentSet(ExponentGenerator::explicit_values, std::move(values), 0, 1,
                     0.0, 0.0);
}

ExponentSet ExponentSet::naturals(std::size_t n_max) {
  std::vector<double> v(n_max + 1);
  for (std::size_t n = 0; n <= n_max; ++n) v[n] = static_cast<double>(n);
  return ExponentSet(ExponentGenerator::naturals, std::move(v), n_max, 1,
                     static_cast<double>(n_max + 1), 1.0);
}

ExponentSet ExponentSet::every_nth(std::size_t stride, std::size_t n_max) {
  if (stride == 0) throw Error("stride must be positive");
  std::vector<double> v;
  std::size_t last = 0;
  for (std::size_t n = 0; n <= n_max; n += stride) {
    v.push_back(static_cast<double>(n));
    last = n;
  }
  return ExponentSet(ExponentGenerator::every_nth, std::move(v), n_max, stride,
                     static_cast<double>(last + stride), static_cast<double>(stride));
}

namespace {

double ceil_n_log_n_value(std::size_t n) {
  const double x = static_cast<double>(n);
  return std::ceil(x * std::log(x));
}

}  // namespace

ExponentSet ExponentSet::ceil_n_log_n(std::size_t n_max) {
  if (n_max < 2) throw Error("ceil_n_log_n needs n_max >= 2");
  std::vector<double> v;
  v.reserve(n_max - 1);
  for (std::size_t n = 2; n <= n_max; ++n) v.push_back(ceil_n_log_n_value(n));
  // n log n grows by more than 1 per step for n >= 2, so the ceilings are
  // strictly increasing integers: gap >= 1.
  return ExponentSet(ExponentGenerator::ceil_n_log_n, std::move(v), n_max, 1,
                     ceil_n_log_n_value(n_max + 1), 1.0);
}

ExponentSet ExponentSet::primes(std::size_t n_max) {
  if (n_max < 2) throw Error("primes needs n_max >= 2");
  const auto ps = first_primes(n_max + 1);
  std::vector<double> v;
  v.reserve(n_max - 1);
  for (std::size_t n = 2; n <= n_max; ++n) v.push_back(static_cast<double>(ps[n - 1]));
  // Odd primes are at least 2 apart.
  return ExponentSet(ExponentGenerator::primes, std::move(v), n_max, 1,
                     static_cast<double>(ps[n_max]), 2.0);
}

bool ExponentSet::all_integers() const {
  return std::all_of(values_.begin(), values_.end(),
                     [](double v) { return v == std::floor(v); });
}

std::string ExponentSet::tag() const {
  switch (generator_) {
    case ExponentGenerator::explicit_values:
      return "explicit(" + std::to_string(values_.size()) + ")";
    case ExponentGenerator::naturals:
      return "naturals(" + std::to_string(n_max_) + ")";
    case ExponentGenerator::every_nth:
      return "every_nth(" + std::to_string(stride_) + "," + std::to_string(n_max_) + ")";
    case ExponentGenerator::ceil_n_log_n:
      return "ceil_n_log_n(" + std::to_string(n_max_) + ")";
    case ExponentGenerator::primes:
      return "primes(" + std::to_string(n_max_) + ")";
  }
  return "unknown";
}

ExponentSet make_exponent_set(ExponentGenerator gen, std::size_t n_max,
                              std::size_t stride) {
  switch (gen) {
    case ExponentGenerator::naturals:
      return ExponentSet::naturals(n_max);
    case ExponentGenerator::every_nth:
      return ExponentSet::every_nth(stride, n_max);
    case ExponentGenerator::ceil_n_log_n:
      return ExponentSet::ceil_n_log_n(n_max);
    case ExponentGenerator::primes:
      return ExponentSet::primes(n_max);
    case ExponentGenerator::explicit_values:
      break;
  }
  throw Error("explicit exponent sets are built from their values");
}

ExponentGenerator parse_exponent_generator(const std::string& name) {
  if (name == "naturals") return ExponentGenerator::naturals;
  if (name == "every_nth" || name == "every-nth") return ExponentGenerator::every_nth;
  if (name == "ceil_n_log_n" || name == "ceil-n-log-n") return ExponentGenerator::ceil_n_log_n;
  if (name == "primes") return ExponentGenerator::primes;
  if (name == "explicit") return ExponentGenerator::explicit_values;
  throw Error("unknown exponent generator '" + name + "'");
}

std::string to_string(ExponentGenerator gen) {
  switch (gen) {
    case ExponentGenerator::explicit_values: return "explicit";
    case ExponentGenerator::naturals: return "naturals";
    case ExponentGenerator::every_nth: return "every_nth";
    case ExponentGenerator::ceil_n_log_n: return "ceil_n_log_n";
    case ExponentGenerator::primes: return "primes";
  }
  return "unknown";
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t limit) {
  std::vector<std::uint64_t> out;
  if (limit < 2) return out;
  std::vector<bool> composite(limit + 1, false);
  for (std::uint64_t i = 2; i * i <= limit; ++i) {
    if (composite[i]) continue;
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (!composite[i]) out.push_back(i);
  }
  return out;
}

std::vector<std::uint64_t> first_primes(std::size_t count) {
  if (count == 0) return {};
  // p_n < n (ln n + ln ln n) for n >= 6.
  const double n = static_cast<double>(std::max<std::size_t>(count, 6));
  auto limit = static_cast<std::uint64_t>(n * (std::log(n) + std::log(std::log(n)))) + 16;
  auto ps = primes_up_to(limit);
  ps.resize(count);
  return ps;
}

double geometric_tail(double r, double first, double gap) {
  if (r <= 0.0) return first <= 0.0 ? 1.0 : 0.0;
  if (!(r < 1.0)) return std::numeric_limits<double>::infinity();
  const double log_r = std::log(r);
  // r^gap via log keeps 1 - r^gap accurate for r close to 1.
  return std::exp(first * log_r) / -std::expm1(gap * log_r);
}

}  // namespace framelab
