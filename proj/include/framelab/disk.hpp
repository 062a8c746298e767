#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "framelab/types.hpp"

namespace framelab {

/// A point of the open unit disc. Construction fails for |z| >= 1.
class DiskPoint {
 public:
  DiskPoint(cplx value);  // NOLINT(google-explicit-constructor)
  DiskPoint(double value) : DiskPoint(cplx{value, 0.0}) {}  // NOLINT

  cplx value() const { return value_; }
  double modulus() const { return std::abs(value_); }
  /// 1 - |z|^2, computed as (1-|z|)(1+|z|).
  double defect() const;

 private:
  cplx value_;
};

/// Finite sequence of disc points with optional positive weights.
class DiskSequence {
 public:
  DiskSequence() = default;
  explicit DiskSequence(std::vector<DiskPoint> points,
                        std::vector<double> weights = {});
  static DiskSequence from_values(std::span<const cplx> values,
                                  std::vector<double> weights = {});
  static DiskSequence from_values(std::span<const double> values,
                                  std::vector<double> weights = {});

  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  const DiskPoint& operator[](std::size_t i) const { return points_[i]; }
  const std::vector<DiskPoint>& points() const { return points_; }
  bool has_weights() const { return !weights_.empty(); }
  const std::vector<double>& weights() const { return weights_; }

 private:
  std::vector<DiskPoint> points_;
  std::vector<double> weights_;
};

struct BlaschkeZero {
  DiskPoint point;
  int multiplicity = 1;
};

/// c * prod_a ((|a|/a) (a - z)/(1 - conj(a) z))^m, with factor z^m for a = 0.
class FiniteBlaschke {
 public:
  explicit FiniteBlaschke(std::vector<BlaschkeZero> zeros,
                          cplx unimodular = cplx{1.0, 0.0});

  const std::vector<BlaschkeZero>& zeros() const { return zeros_; }
  cplx unimodular_constant() const { return constant_; }
  std::size_t degree() const { return degree_; }
  /// Zeros repeated according to multiplicity, in declaration order.
  std::vector<cplx> flattened_zeros() const;

  cplx operator()(cplx z) const;

 private:
  std::vector<BlaschkeZero> zeros_;
  cplx constant_;
  std::size_t degree_ = 0;
};

/// Points closer than this (pseudo-hyperbolically) count as identical.
inline constexpr double kDuplicateTolerance = 1e-14;
/// Carleson products whose logarithm falls below this are reported as 0.
inline constexpr double kLogUnderflow = -700.0;

/// |a - b| / |1 - conj(b) a|.
double pseudo_hyperbolic(const DiskPoint& a, const DiskPoint& b);

/// log of pseudo_hyperbolic, accurate when the distance is close to 1.
double log_pseudo_hyperbolic(const DiskPoint& a, const DiskPoint& b);

struct CarlesonReport {
  double constant = 0.0;
  double log_constant = 0.0;
  bool pass = false;
  std::size_t argmin_index = 0;
};

/// min_n prod_{k != n} rho(z_n, z_k), evaluated as exp of a sum of logs.
/// Throws DuplicatePoint. A one-point sequence has constant 1.
double carleson_constant(const DiskSequence& seq);

CarlesonReport is_interpolating(const DiskSequence& seq, double delta_min);

cplx blaschke_eval(const FiniteBlaschke& b, cplx z);

}  // namespace framelab
