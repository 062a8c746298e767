#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace framelab {

enum class ExponentGenerator {
  explicit_values,
  naturals,      // {0, 1, ..., n_max}
  every_nth,     // {0, N, 2N, ...} up to n_max
  ceil_n_log_n,  // ceil(n ln n), n = 2..n_max
  primes,        // p_2, ..., p_{n_max} (p_1 = 2, so this starts at 3)
};

/// Finite strictly increasing set of non-negative exponents. Values are
/// stored as doubles for every generator. Sets produced by a rule other than
/// explicit_values are truncations of an infinite sequence; they know the
/// first exponent they dropped and a lower bound on the spacing of the
/// remainder, which is what the tail estimates need.
class ExponentSet {
 public:
  static ExponentSet explicit_values(std::vector<double> values);
  static ExponentSet naturals(std::size_t n_max);
  static ExponentSet every_nth(std::size_t stride, std::size_t n_max);
  static ExponentSet ceil_n_log_n(std::size_t n_max);
  static ExponentSet primes(std::size_t n_max);

  std::span<const double> values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  ExponentGenerator generator() const { return generator_; }
  std::size_t n_max() const { return n_max_; }
  std::size_t stride() const { return stride_; }

  bool is_truncation() const {
    return generator_ != ExponentGenerator::explicit_values;
  }
  /// First exponent of the underlying infinite rule not in values().
  double next_dropped() const { return next_dropped_; }
  /// Lower bound on the gap between consecutive dropped exponents.
  double min_gap() const { return min_gap_; }
  bool all_integers() const;

  std::string tag() const;

 private:
  ExponentSet(ExponentGenerator gen, std::vector<double> values,
              std::size_t n_max, std::size_t stride, double next_dropped,
              double min_gap);

  ExponentGenerator generator_;
  std::vector<double> values_;
  std::size_t n_max_ = 0;
  std::size_t stride_ = 1;
  double next_dropped_ = 0.0;
  double min_gap_ = 0.0;
};

ExponentSet make_exponent_set(ExponentGenerator gen, std::size_t n_max,
                              std::size_t stride = 1);

ExponentGenerator parse_exponent_generator(const std::string& name);
std::string to_string(ExponentGenerator gen);

/// All primes <= limit, by the sieve of Eratosthenes.
std::vector<std::uint64_t> primes_up_to(std::uint64_t limit);

/// The first `count` primes (p_1 = 2).
std::vector<std::uint64_t> first_primes(std::size_t count);

/// sum_{i >= 0} r^(first + i*gap): bounds sum_{dropped} r^lambda for any
/// dropped exponents >= first spaced at least gap apart. r in [0, 1).
double geometric_tail(double r, double first, double gap);

}  // namespace framelab
