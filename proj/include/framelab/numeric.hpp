#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>

#include "framelab/types.hpp"

namespace framelab {

/// Compensated (Neumaier) accumulator. Long sums of positive terms in the
/// exponent-set code go through this so results do not depend on term count.
class CompensatedSum {
 public:
  void add(double term) {
    const double t = sum_ + term;
    if (std::abs(sum_) >= std::abs(term)) {
      carry_ += (sum_ - t) + term;
    } else {
      carry_ += (term - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

/// z^n by binary exponentiation (exact 0^0 = 1, no complex log).
cplx integer_power(cplx z, std::uint64_t n);

/// Largest singular value.
double spectral_norm(const CMatrix& m);

/// Number of worker threads: FRAMELAB_THREADS if set and positive, else
/// hardware concurrency (at least 1).
unsigned thread_count();

/// Runs body(i) for i in [0, count). Each index is handled by exactly one
/// thread, so results are independent of the thread count.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

/// Seedable 64-bit generator with a platform-independent output stream.
/// Algorithm identifier: "mt19937_64"; doubles use the top 53 bits.
class Rng {
 public:
  static constexpr const char* kAlgorithm = "mt19937_64";

  explicit Rng(std::uint64_t seed);
  double uniform();                      // [0, 1)
  double uniform(double lo, double hi);  // [lo, hi)
  double normal();                       // Box-Muller, standard normal
  cplx complex_normal();                 // independent re/im normals
  CVector complex_normal_vector(std::size_t n);

 private:
  std::mt19937_64 engine_;
};

}  // namespace framelab
