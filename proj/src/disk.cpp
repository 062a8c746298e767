#include "framelab/disk.hpp"

#include <cmath>
#include <limits>

#include "framelab/errors.hpp"

namespace framelab {

DiskPoint::DiskPoint(cplx value) : value_(value) {
  if (!(std::abs(value) < 1.0)) {
    throw OutsideDisc("point (" + std::to_string(value.real()) + ", " +
                      std::to_string(value.imag()) +
                      ") is not inside the open unit disc");
  }
}

double DiskPoint::defect() const {
  const double r = std::abs(value_);
  return (1.0 - r) * (1.0 + r);
}

DiskSequence::DiskSequence(std::vector<DiskPoint> points, std::vector<double> weights)
    : points_(std::move(points)), weights_(std::move(weights)) {
  if (!weights_.empty()) {
    if (weights_.size() != points_.size()) {
      throw Error("weights and points differ in length");
    }
    for (double w : weights_) {
      if (!(w > 0.0)) throw Error("weights must be strictly positive");
    }
  }
}

DiskSequence DiskSequence::from_values(std::span<const cplx> values,
                                       std::vector<double> weights) {
  return DiskSequence(std::vector<DiskPoint>(values.begin(), values.end()),
                      std::move(weights));
}

DiskSequence DiskSequence::from_values(std::span<const double> values,
                                       std::vector<double> weights) {
  return DiskSequence(std::vector<DiskPoint>(values.begin(), values.end()),
                      std::move(weights));
}

FiniteBlaschke::FiniteBlaschke(std::vector<BlaschkeZero> zeros, cplx unimodular)
    : zeros_(std::move(zeros)), constant_(unimodular) {
  if (std::abs(std::abs(constant_) - 1.0) > 1e-12) {
    throw Error("Blaschke constant must be unimodular");
  }
  for (const auto& z : zeros_) {
    if (z.multiplicity < 1) throw Error("zero multiplicity must be positive");
    degree_ += static_cast<std::size_t>(z.multiplicity);
  }
}

std::vector<cplx> FiniteBlaschke::flattened_zeros() const {
  std::vector<cplx> out;
  out.reserve(degree_);
  for (const auto& z : zeros_) {
    for (int m = 0; m < z.multiplicity; ++m) out.push_back(z.point.value());
  }
  return out;
}

cplx FiniteBlaschke::operator()(cplx z) const { return blaschke_eval(*this, z); }

double pseudo_hyperbolic(const DiskPoint& a, const DiskPoint& b) {
  const cplx za = a.value();
  const cplx zb = b.value();
  return std::abs(za - zb) / std::abs(1.0 - std::conj(zb) * za);
}

double log_pseudo_hyperbolic(const DiskPoint& a, const DiskPoint& b) {
  const double rho = pseudo_hyperbolic(a, b);
  if (rho < 0.5) return std::log(rho);
  // 1 - rho^2 = (1-|a|^2)(1-|b|^2) / |1 - conj(b) a|^2, exact near rho = 1.
  const double denom = std::norm(1.0 - std::conj(b.value()) * a.value());
  const double gap = a.defect() * b.defect() / denom;
  return 0.5 * std::log1p(-gap);
}

namespace {

CarlesonReport carleson_scan(const DiskSequence& seq) {
  CarlesonReport report;
  const std::size_t n = seq.size();
  if (n == 0) throw Error("Carleson constant of an empty sequence");
  double best = std::numeric_limits<double>::infinity();
  std::size_t best_index = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double log_prod = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      if (k == i) continue;
      if (pseudo_hyperbolic(seq[i], seq[k]) < kDuplicateTolerance) {
        throw DuplicatePoint(std::min(i, k), std::max(i, k));
      }
      log_prod += log_pseudo_hyperbolic(seq[i], seq[k]);
    }
    if (log_prod < best) {
      best = log_prod;
      best_index = i;
    }
  }
  report.log_constant = best;
  report.argmin_index = best_index;
  report.constant = best < kLogUnderflow ? 0.0 : std::exp(best);
  return report;
}

}  // namespace

double carleson_constant(const DiskSequence& seq) { return carleson_scan(seq).constant; }

CarlesonReport is_interpolating(const DiskSequence& seq, double delta_min) {
  if (!(delta_min > 0.0)) throw Error("delta_min must be positive");
  CarlesonReport report = carleson_scan(seq);
  report.pass = report.constant > 0.0 && report.constant >= delta_min;
  return report;
}

cplx blaschke_eval(const FiniteBlaschke& b, cplx z) {
  cplx value = b.unimodular_constant();
  for (const auto& zero : b.zeros()) {
    const cplx a = zero.point.value();
    cplx factor;
    if (a == cplx{0.0, 0.0}) {
      factor = z;
    } else {
      factor = (std::abs(a) / a) * (a - z) / (1.0 - std::conj(a) * z);
    }
    for (int m = 0; m < zero.multiplicity; ++m) value *= factor;
  }
  return value;
}

}  // namespace framelab
