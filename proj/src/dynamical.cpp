#include "framelab/dynamical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "framelab/disk.hpp"
#include "framelab/errors.hpp"
#include "framelab/numeric.hpp"

namespace framelab {

namespace {

constexpr double kHermitianTolerance = 1e-12;
constexpr std::size_t kMaxDimension = 4096;

}  // namespace

DiagonalOperator::DiagonalOperator(std::vector<cplx> eigenvalues, bool diagnostic)
    : eigenvalues_(std::move(eigenvalues)), diagnostic_(diagnostic) {
  if (eigenvalues_.size() > kMaxDimension) {
    throw Error("dimension exceeds the supported maximum of 4096");
  }
  for (const cplx mu : eigenvalues_) {
    const double r = std::abs(mu);
    if (r < 1.0) continue;
    if (diagnostic_ && r <= 1.0 + 1e-15) continue;
    throw SpectrumOnBoundary("eigenvalue of modulus " + std::to_string(r) +
                             " is not inside the open disc");
  }
}

bool DiagonalOperator::has_boundary_spectrum() const {
  return std::any_of(eigenvalues_.begin(), eigenvalues_.end(),
                     [](cplx mu) { return !(std::abs(mu) < 1.0); });
}

GeneratorVector::GeneratorVector(std::vector<cplx> coefficients)
    : coefficients_(std::move(coefficients)) {}

double GeneratorVector::norm() const {
  double s = 0.0;
  for (const cplx b : coefficients_) s += std::norm(b);
  return std::sqrt(s);
}

OrbitFrameSystem::OrbitFrameSystem(DiagonalOperator op_, GeneratorVector generator_,
                                   std::optional<ExponentSet> exponents_,
                                   unsigned stride_)
    : op(std::move(op_)),
      generator(std::move(generator_)),
      exponents(std::move(exponents_)),
      stride(stride_) {
  if (op.dimension() != generator.size()) {
    throw Error("operator dimension and generator length differ");
  }
  if (stride == 0) throw Error("stride must be positive");
}

OrbitFrameSystem make_orbit_system(const std::vector<double>& eigenvalues,
                                   const std::vector<double>& generator,
                                   std::optional<ExponentSet> exponents,
                                   unsigned stride) {
  std::vector<cplx> mu(eigenvalues.begin(), eigenvalues.end());
  std::vector<cplx> b(generator.begin(), generator.end());
  return OrbitFrameSystem(DiagonalOperator(std::move(mu)), GeneratorVector(std::move(b)),
                          std::move(exponents), stride);
}

std::string to_string(BoundsMethod m) {
  return m == BoundsMethod::closed_form ? "closed_form" : "partial_sum";
}

namespace {

cplx eigen_power(cplx mu, double exponent) {
  if (exponent == std::floor(exponent) && exponent < 9.0e15) {
    return integer_power(mu, static_cast<std::uint64_t>(exponent));
  }
  if (mu.imag() != 0.0 || mu.real() < 0.0) {
    throw NonIntegerPowerOfComplex(
        "fractional power of a non-positive or complex eigenvalue");
  }
  return {std::pow(mu.real(), exponent), 0.0};
}

}  // namespace

CVector orbit_vector(const OrbitFrameSystem& sys, double exponent) {
  if (!(exponent >= 0.0)) throw Error("exponent must be non-negative");
  const auto& mu = sys.op.eigenvalues();
  const auto& b = sys.generator.coefficients();
  CVector v(static_cast<Eigen::Index>(mu.size()));
  for (std::size_t k = 0; k < mu.size(); ++k) {
    const auto i = static_cast<Eigen::Index>(k);
    v[i] = b[k] == cplx{0.0, 0.0} ? cplx{0.0, 0.0} : eigen_power(mu[k], exponent) * b[k];
  }
  return v;
}

CMatrix frame_operator_closed(const OrbitFrameSystem& sys) {
  if (sys.op.has_boundary_spectrum()) {
    throw SpectrumOnBoundary("closed-form orbit sums need spectrum inside the disc");
  }
  const auto& mu = sys.op.eigenvalues();
  const auto& b = sys.generator.coefficients();
  const auto n = static_cast<Eigen::Index>(mu.size());
  CMatrix s(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = j; k < n; ++k) {
      const cplx ratio = integer_power(mu[j] * std::conj(mu[k]), sys.stride);
      s(j, k) = b[j] * std::conj(b[k]) / (1.0 - ratio);
      s(k, j) = std::conj(s(j, k));
    }
    s(j, j) = s(j, j).real();
  }
  return s;
}

PartialFrameOperator frame_operator_partial(const OrbitFrameSystem& sys) {
  if (!sys.exponents) {
    throw Error("partial sums need a finite exponent set; use frame_operator_closed");
  }
  const ExponentSet& lambdas = *sys.exponents;
  const auto values = lambdas.values();
  const auto n = static_cast<Eigen::Index>(sys.dimension());

  // Orbit vectors as columns: V(k, i) = mu_k^lambda_i b_k.
  CMatrix v(n, static_cast<Eigen::Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) {
    v.col(static_cast<Eigen::Index>(i)) = orbit_vector(sys, values[i]);
  }

  PartialFrameOperator out;
  out.matrix = CMatrix::Zero(n, n);
  // Each row is summed by one thread in ascending exponent order.
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t jj) {
    const auto j = static_cast<Eigen::Index>(jj);
    for (Eigen::Index k = j; k < n; ++k) {
      cplx acc{0.0, 0.0};
      for (Eigen::Index i = 0; i < v.cols(); ++i) acc += v(j, i) * std::conj(v(k, i));
      out.matrix(j, k) = acc;
    }
  });
  for (Eigen::Index j = 0; j < n; ++j) {
    out.matrix(j, j) = out.matrix(j, j).real();
    for (Eigen::Index k = j + 1; k < n; ++k) out.matrix(k, j) = std::conj(out.matrix(j, k));
  }

  if (lambdas.is_truncation()) {
    // Trace of the neglected positive part bounds its operator norm.
    const auto& mu = sys.op.eigenvalues();
    const auto& b = sys.generator.coefficients();
    double tail = 0.0;
    for (std::size_t k = 0; k < mu.size(); ++k) {
      if (b[k] == cplx{0.0, 0.0}) continue;
      tail += std::norm(b[k]) *
              geometric_tail(std::norm(mu[k]), lambdas.next_dropped(), lambdas.min_gap());
    }
    out.tail_bound = tail;
  }
  return out;
}

RVector hermitian_eigenvalues(const CMatrix& s) {
  if (s.rows() != s.cols()) throw NotHermitian("matrix is not square");
  const double scale = std::max(1.0, s.cwiseAbs().maxCoeff());
  for (Eigen::Index j = 0; j < s.rows(); ++j) {
    for (Eigen::Index k = j; k < s.cols(); ++k) {
      if (std::abs(s(j, k) - std::conj(s(k, j))) > kHermitianTolerance * scale) {
        throw NotHermitian("entry (" + std::to_string(j) + "," + std::to_string(k) +
                           ") breaks Hermitian symmetry");
      }
    }
  }
  const CMatrix sym = 0.5 * (s + s.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(sym, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw Error("Hermitian eigensolver failed");
  return solver.eigenvalues();
}

FrameBoundsReport frame_bounds(const CMatrix& s, double truncation_tail, BoundsMethod method) {
  const RVector ev = hermitian_eigenvalues(s);
  FrameBoundsReport r;
  if (ev.size() == 0) return r;
  r.lower = std::max(0.0, ev[0]);
  r.upper = std::max(r.lower, ev[ev.size() - 1]);
  r.truncation_tail = truncation_tail;
  r.method = method;
  return r;
}

CarlesonFrameReport check_carleson_frame(const OrbitFrameSystem& sys,
                                         const CarlesonFrameOptions& opts) {
  CarlesonFrameReport r;
  const auto& mu = sys.op.eigenvalues();
  const auto& b = sys.generator.coefficients();

  r.inside_disc = !sys.op.has_boundary_spectrum();
  for (const cplx m : mu) r.max_modulus = std::max(r.max_modulus, std::abs(m));
  r.approaches_boundary = r.max_modulus >= 1.0 - opts.boundary_epsilon;
  r.boundary_note =
      "finite-scale proxy: max |mu_k| >= 1 - " + std::to_string(opts.boundary_epsilon) +
      " is consistent with |mu_k| -> 1, not a proof of it";

  if (r.inside_disc && !mu.empty()) {
    try {
      const DiskSequence seq = DiskSequence::from_values(std::span<const cplx>(mu));
      const CarlesonReport c = is_interpolating(seq, opts.delta_min);
      r.carleson_constant = c.constant;
      r.carleson_argmin = c.argmin_index;
      r.carleson = c.pass;
    } catch (const DuplicatePoint& e) {
      r.carleson_constant = 0.0;
      r.carleson_argmin = e.first();
      r.carleson = false;
    }
  }

  r.ratio_low = std::numeric_limits<double>::infinity();
  r.ratio_high = 0.0;
  for (std::size_t k = 0; k < mu.size(); ++k) {
    const double r_k = std::abs(mu[k]);
    const double defect = (1.0 - r_k) * (1.0 + r_k);
    const double ratio = defect > 0.0 ? std::abs(b[k]) / std::sqrt(defect)
                                      : std::numeric_limits<double>::infinity();
    r.ratio_low = std::min(r.ratio_low, ratio);
    r.ratio_high = std::max(r.ratio_high, ratio);
  }
  if (mu.empty()) r.ratio_low = 0.0;
  r.weights_comparable = !mu.empty() && r.ratio_low >= opts.ratio_floor &&
                         r.ratio_high <= opts.ratio_ceiling;
  return r;
}

OrbitFrameSystem subsample_orbit(const OrbitFrameSystem& sys, unsigned stride) {
  if (stride == 0) throw Error("stride must be positive");
  if (!sys.exponents) {
    return OrbitFrameSystem(sys.op, sys.generator, std::nullopt, sys.stride * stride);
  }
  const ExponentSet& e = *sys.exponents;
  if (e.generator() == ExponentGenerator::naturals) {
    return OrbitFrameSystem(sys.op, sys.generator, ExponentSet::every_nth(stride, e.n_max()));
  }
  if (e.generator() == ExponentGenerator::every_nth) {
    return OrbitFrameSystem(sys.op, sys.generator,
                            ExponentSet::every_nth(stride * e.stride(), e.n_max()));
  }
  throw Error("subsampling needs a naturals or every_nth exponent set");
}

}  // namespace framelab
