#include "framelab/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "framelab/errors.hpp"
#include "framelab/numeric.hpp"

namespace framelab {

namespace {

constexpr double kRankTolerance = 1e-9;
constexpr double kMinimalTolerance = 1e-8;
constexpr double kDivisorFloor = 1e-6;
constexpr double kClusterRadius = 1e-5;

// Taylor coefficients of the normalised factor (|a|/a)(a - z)/(1 - conj(a) z),
// or z for a = 0.
CVector blaschke_factor_series(cplx a, std::size_t degree) {
  if (a == cplx{0.0, 0.0}) return RationalWeight::polynomial({0.0, 1.0}).expand(degree).coefficients();
  const cplx u = std::abs(a) / a;
  return RationalWeight({u * a, -u}, {1.0, -std::conj(a)}).expand(degree).coefficients();
}

CVector theta_series(const FiniteBlaschke& theta, std::size_t degree) {
  CVector acc = CVector::Zero(static_cast<Eigen::Index>(degree + 1));
  acc[0] = theta.unimodular_constant();
  for (const cplx a : theta.flattened_zeros()) {
    acc = truncated_product(acc, blaschke_factor_series(a, degree), degree);
  }
  return acc;
}

CMatrix matrix_blaschke(const std::vector<cplx>& zeros, cplx constant, const CMatrix& a) {
  const auto n = a.rows();
  const CMatrix id = CMatrix::Identity(n, n);
  CMatrix acc = constant * id;
  for (const cplx z : zeros) {
    if (z == cplx{0.0, 0.0}) {
      acc = acc * a;
      continue;
    }
    const CMatrix num = (std::abs(z) / z) * (z * id - a);
    const CMatrix den = id - std::conj(z) * a;
    acc = acc * den.partialPivLu().solve(num);
  }
  return acc;
}

// A Jordan block of size m splits under roundoff into m eigenvalues about
// eps^(1/m) apart; their mean is accurate to O(eps). Single-linkage clusters
// within `radius` are replaced by their mean.
std::vector<cplx> average_clusters(std::vector<cplx> ev, double radius) {
  const std::size_t n = ev.size();
  std::vector<std::size_t> label(n);
  for (std::size_t i = 0; i < n; ++i) label[i] = i;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (label[i] != label[j] && std::abs(ev[i] - ev[j]) <= radius) {
          const std::size_t lo = std::min(label[i], label[j]);
          label[i] = label[j] = lo;
          changed = true;
        }
      }
    }
  }
  std::vector<cplx> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    cplx mean{0.0, 0.0};
    std::size_t count = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (label[j] == label[i]) {
        mean += ev[j];
        ++count;
      }
    }
    out[i] = mean / static_cast<double>(count);
  }
  return out;
}

std::size_t numerical_rank(const CMatrix& m) {
  if (m.size() == 0) return 0;
  const RVector sv = Eigen::BDCSVD<CMatrix>(m).singularValues();
  const double tol = kRankTolerance * std::max(1.0, sv[0]);
  std::size_t r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv[i] > tol) ++r;
  }
  return r;
}

}  // namespace

FiniteBlaschkeModel::FiniteBlaschkeModel(FiniteBlaschke theta, std::size_t cutoff)
    : theta_(std::move(theta)), cutoff_(cutoff) {
  const std::size_t d = theta_.degree();
  if (d == 0) throw Error("model space needs a Blaschke product of degree >= 1");
  if (cutoff_ < 4 * d) {
    throw CutoffTooSmall("cutoff " + std::to_string(cutoff_) + " is below 4 * degree = " +
                         std::to_string(4 * d));
  }
  const auto len = static_cast<Eigen::Index>(cutoff_ + 1);
  basis_.resize(len, static_cast<Eigen::Index>(d));
  CVector prefix = CVector::Zero(len);
  prefix[0] = 1.0;
  const std::vector<cplx> zeros = theta_.flattened_zeros();
  for (std::size_t j = 0; j < d; ++j) {
    const cplx a = zeros[j];
    const CVector k = RationalWeight::bourdon_narayan(a, 1.0).expand(cutoff_).coefficients();
    basis_.col(static_cast<Eigen::Index>(j)) = truncated_product(prefix, k, cutoff_);
    prefix = truncated_product(prefix, blaschke_factor_series(a, cutoff_), cutoff_);
  }
  theta_coeffs_ = theta_series(theta_, cutoff_);

  // S = G^{-1} E^* (z E), the projection of z e_j back onto span(E).
  CMatrix shifted = CMatrix::Zero(len, basis_.cols());
  shifted.bottomRows(len - 1) = basis_.topRows(len - 1);
  const CMatrix gram = basis_.adjoint() * basis_;
  shift_ = gram.ldlt().solve(basis_.adjoint() * shifted);
}

double FiniteBlaschkeModel::gram_defect() const {
  const CMatrix g = basis_.adjoint() * basis_;
  return (g - CMatrix::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff();
}

double FiniteBlaschkeModel::membership_defect() const {
  const std::size_t d = dimension();
  const auto len = static_cast<Eigen::Index>(cutoff_ + 1);
  double worst = 0.0;
  for (std::size_t n = 0; n + d <= cutoff_; ++n) {
    const auto s = static_cast<Eigen::Index>(n);
    CVector tz = CVector::Zero(len);
    tz.tail(len - s) = theta_coeffs_.head(len - s);
    worst = std::max(worst, (tz.adjoint() * basis_).cwiseAbs().maxCoeff());
  }
  return worst;
}

CVector FiniteBlaschkeModel::expand(const CVector& coords) const {
  if (coords.size() != basis_.cols()) throw Error("coordinate vector has the wrong length");
  return basis_ * coords;
}

CVector FiniteBlaschkeModel::coordinates(const CVector& coefficients) const {
  if (coefficients.size() != basis_.rows()) throw Error("coefficient vector has the wrong length");
  const CMatrix gram = basis_.adjoint() * basis_;
  return gram.ldlt().solve(basis_.adjoint() * coefficients);
}

FiniteBlaschkeModel model_basis(const FiniteBlaschke& theta, std::size_t cutoff) {
  return FiniteBlaschkeModel(theta, cutoff);
}

TruncatedHardyFunction k0_theta(const FiniteBlaschkeModel& model) {
  const CVector& t = model.theta_coefficients();
  CVector k = -std::conj(t[0]) * t;
  k[0] += 1.0;
  return TruncatedHardyFunction(std::move(k));
}

double k0_reproducing_defect(const FiniteBlaschkeModel& model) {
  const CVector k0 = k0_theta(model).coefficients();
  const CVector pairings = model.basis().adjoint() * k0;  // conj(<e_j, k0>)
  double worst = 0.0;
  for (Eigen::Index j = 0; j < model.basis().cols(); ++j) {
    worst = std::max(worst, std::abs(std::conj(pairings[j]) - model.basis()(0, j)));
  }
  return worst;
}

CMatrix theta_of_matrix(const FiniteBlaschke& theta, const CMatrix& a) {
  if (a.rows() != a.cols()) throw Error("theta_of_matrix needs a square matrix");
  return matrix_blaschke(theta.flattened_zeros(), theta.unimodular_constant(), a);
}

SpectrumReport spectrum_check(const FiniteBlaschkeModel& model) {
  SpectrumReport r;
  Eigen::ComplexEigenSolver<CMatrix> solver(model.shift(), false);
  if (solver.info() != Eigen::Success) throw Error("eigensolver failed on the compressed shift");
  const CVector ev = solver.eigenvalues();
  r.eigenvalues = average_clusters(std::vector<cplx>(ev.data(), ev.data() + ev.size()),
                                   kClusterRadius * std::max(1.0, spectral_norm(model.shift())));

  // Greedy matching: each zero takes the nearest eigenvalue not yet used.
  std::vector<bool> used(r.eigenvalues.size(), false);
  for (const cplx z : model.theta().flattened_zeros()) {
    std::size_t best = 0;
    double dist = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < r.eigenvalues.size(); ++i) {
      if (used[i]) continue;
      const double di = std::abs(r.eigenvalues[i] - z);
      if (di < dist) {
        dist = di;
        best = i;
      }
    }
    used[best] = true;
    r.max_mismatch = std::max(r.max_mismatch, dist);
  }

  r.minimal_function_defect = spectral_norm(theta_of_matrix(model.theta(), model.shift()));
  r.min_divisor_residual = std::numeric_limits<double>::infinity();
  const FiniteBlaschke& theta = model.theta();
  for (std::size_t drop = 0; drop < theta.zeros().size(); ++drop) {
    std::vector<cplx> zeros;
    for (std::size_t i = 0; i < theta.zeros().size(); ++i) {
      const int m = theta.zeros()[i].multiplicity - (i == drop ? 1 : 0);
      for (int k = 0; k < m; ++k) zeros.push_back(theta.zeros()[i].point.value());
    }
    const double res = spectral_norm(matrix_blaschke(zeros, 1.0, model.shift()));
    r.min_divisor_residual = std::min(r.min_divisor_residual, res);
  }
  r.minimal = r.minimal_function_defect < kMinimalTolerance &&
              r.min_divisor_residual > kDivisorFloor;
  return r;
}

double parseval_orbit_check(const FiniteBlaschkeModel& model, const CVector& coords,
                            std::size_t orders) {
  if (orders == 0) orders = 4 * model.dimension();
  if (orders > model.cutoff() + 1) throw Error("orders exceed the model cutoff");
  const CVector f = model.expand(coords);
  const CMatrix gram = model.basis().adjoint() * model.basis();
  CVector v = model.coordinates(k0_theta(model).coefficients());
  double worst = 0.0;
  for (std::size_t n = 0; n < orders; ++n) {
    const cplx pairing = v.dot(gram * coords);  // <f, S^n k0>
    worst = std::max(worst, std::abs(pairing - f[static_cast<Eigen::Index>(n)]));
    v = model.shift() * v;
  }
  return worst;
}

double parseval_frame_operator_defect(const FiniteBlaschkeModel& model, std::size_t n_max) {
  const auto d = static_cast<Eigen::Index>(model.dimension());
  CVector v = model.coordinates(k0_theta(model).coefficients());
  CMatrix frame = CMatrix::Zero(d, d);
  for (std::size_t n = 0; n <= n_max; ++n) {
    frame += v * v.adjoint();
    v = model.shift() * v;
  }
  return spectral_norm(frame - CMatrix::Identity(d, d));
}

std::vector<JordanBlockInfo> jordan_structure(const FiniteBlaschkeModel& model) {
  const CMatrix& s = model.shift();
  const auto d = s.rows();
  const CMatrix id = CMatrix::Identity(d, d);
  std::vector<JordanBlockInfo> out;
  for (const BlaschkeZero& z : model.theta().zeros()) {
    JordanBlockInfo info;
    info.eigenvalue = z.point.value();
    info.multiplicity = z.multiplicity;
    const CMatrix shifted = s - info.eigenvalue * id;
    CMatrix power = id;
    info.rank_sequence.push_back(static_cast<std::size_t>(d));
    for (int j = 1; j <= z.multiplicity + 1; ++j) {
      power = power * shifted;
      info.rank_sequence.push_back(numerical_rank(power));
    }
    info.eigenspace_dim = info.rank_sequence[0] - info.rank_sequence[1];
    // Blocks of size >= j number r_{j-1} - r_j; exactly j is the difference
    // of consecutive counts.
    const auto& r = info.rank_sequence;
    for (std::size_t j = 1; j + 1 < r.size(); ++j) {
      const long at_least_j = static_cast<long>(r[j - 1]) - static_cast<long>(r[j]);
      const long at_least_next = static_cast<long>(r[j]) - static_cast<long>(r[j + 1]);
      for (long b = 0; b < at_least_j - at_least_next; ++b) info.block_sizes.push_back(j);
    }
    std::sort(info.block_sizes.rbegin(), info.block_sizes.rend());
    out.push_back(std::move(info));
  }
  return out;
}

VectorHardyFunction::VectorHardyFunction(std::vector<TruncatedHardyFunction> components)
    : comps_(std::move(components)) {
  if (comps_.empty()) throw Error("vector function needs at least one component");
  for (const auto& c : comps_) {
    if (c.degree() != comps_.front().degree()) throw Error("components differ in degree");
  }
}

double VectorHardyFunction::norm() const {
  double s = 0.0;
  for (const auto& c : comps_) s += c.coefficients().squaredNorm();
  return std::sqrt(s);
}

VectorHardyFunction VectorHardyFunction::shifted() const {
  std::vector<TruncatedHardyFunction> out;
  out.reserve(comps_.size());
  for (const auto& c : comps_) out.push_back(shift_power(c, 1));
  return VectorHardyFunction(std::move(out));
}

VectorHardyFunction split_J(const TruncatedHardyFunction& f, std::size_t m) {
  if (m == 0) throw Error("m must be positive");
  const std::size_t count = f.degree() + 1;
  if (count % m != 0) {
    throw IndivisibleCutoff(std::to_string(count) + " coefficients do not split into " +
                            std::to_string(m) + " components");
  }
  const std::size_t len = count / m;
  std::vector<TruncatedHardyFunction> comps;
  for (std::size_t j = 0; j < m; ++j) {
    CVector c(static_cast<Eigen::Index>(len));
    for (std::size_t i = 0; i < len; ++i) c[static_cast<Eigen::Index>(i)] = f[j + i * m];
    comps.emplace_back(std::move(c));
  }
  return VectorHardyFunction(std::move(comps));
}

TruncatedHardyFunction join_J(const VectorHardyFunction& f) {
  const std::size_t m = f.dimension();
  const std::size_t len = f[0].degree() + 1;
  CVector c(static_cast<Eigen::Index>(m * len));
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t i = 0; i < len; ++i) c[static_cast<Eigen::Index>(j + i * m)] = f[j][i];
  }
  return TruncatedHardyFunction(std::move(c));
}

TruncatedHardyFunction shift_power(const TruncatedHardyFunction& f, std::size_t steps) {
  const auto len = static_cast<Eigen::Index>(f.degree() + 1);
  CVector c = CVector::Zero(len);
  const auto s = static_cast<Eigen::Index>(std::min<std::size_t>(steps, f.degree() + 1));
  c.tail(len - s) = f.coefficients().head(len - s);
  return TruncatedHardyFunction(std::move(c));
}

MultiGeneratorReport multi_generator_parseval(const VectorHardyFunction& f) {
  const std::size_t m = f.dimension();
  const std::size_t degree = f[0].degree();
  MultiGeneratorReport r;
  r.pairings = CMatrix::Zero(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(degree + 1));
  CompensatedSum energy;
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t n = 0; n <= degree; ++n) {
      // S^n e_j is z^n in component j.
      const TruncatedHardyFunction probe = TruncatedHardyFunction::monomial(n, degree);
      const cplx p = inner(f[j], probe);
      r.pairings(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(n)) = p;
      energy.add(std::norm(p));
    }
  }
  const double norm2 = f.norm() * f.norm();
  r.defect = norm2 > 0.0 ? std::abs(energy.value() - norm2) / norm2 : energy.value();
  return r;
}

}  // namespace framelab
