#include "framelab/hardy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "framelab/errors.hpp"
#include "framelab/numeric.hpp"

namespace framelab {

namespace {

constexpr double kBoundaryTolerance = 1e-10;
constexpr double kAlgebraicTolerance = 1e-12;
constexpr double kFitTolerance = 1e-10;
constexpr double kIsometryTolerance = 1e-9;

std::vector<cplx> trim(std::vector<cplx> p) {
  while (p.size() > 1 && p.back() == cplx{0.0, 0.0}) p.pop_back();
  return p;
}

cplx horner(const std::vector<cplx>& p, cplx z) {
  cplx acc{0.0, 0.0};
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * z + *it;
  return acc;
}

std::vector<cplx> polynomial_roots(const std::vector<cplx>& p) {
  const std::size_t n = p.size() - 1;
  if (n == 0) return {};
  if (n == 1) return {-p[0] / p[1]};
  CMatrix companion = CMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    companion(0, static_cast<Eigen::Index>(i)) = -p[n - 1 - i] / p[n];
    if (i + 1 < n) companion(static_cast<Eigen::Index>(i + 1), static_cast<Eigen::Index>(i)) = 1.0;
  }
  Eigen::ComplexEigenSolver<CMatrix> solver(companion, false);
  std::vector<cplx> roots(n);
  for (std::size_t i = 0; i < n; ++i) roots[i] = solver.eigenvalues()[static_cast<Eigen::Index>(i)];
  return roots;
}

}  // namespace

// ---------------------------------------------------------------------------

TruncatedHardyFunction::TruncatedHardyFunction(CVector coefficients)
    : coeffs_(std::move(coefficients)) {
  if (coeffs_.size() == 0) throw Error("a truncated Hardy function needs a coefficient");
}

TruncatedHardyFunction TruncatedHardyFunction::zero(std::size_t degree) {
  return TruncatedHardyFunction(CVector::Zero(static_cast<Eigen::Index>(degree + 1)));
}

TruncatedHardyFunction TruncatedHardyFunction::monomial(std::size_t n, std::size_t degree) {
  if (n > degree) throw Error("monomial degree exceeds the cutoff");
  CVector c = CVector::Zero(static_cast<Eigen::Index>(degree + 1));
  c[static_cast<Eigen::Index>(n)] = 1.0;
  return TruncatedHardyFunction(std::move(c));
}

cplx TruncatedHardyFunction::operator()(cplx z) const {
  cplx acc{0.0, 0.0};
  for (Eigen::Index n = coeffs_.size() - 1; n >= 0; --n) acc = acc * z + coeffs_[n];
  return acc;
}

TruncatedHardyFunction TruncatedHardyFunction::times(const TruncatedHardyFunction& other) const {
  return TruncatedHardyFunction(truncated_product(coeffs_, other.coeffs_, degree()));
}

cplx inner(const TruncatedHardyFunction& f, const TruncatedHardyFunction& g) {
  const Eigen::Index n = std::min(f.coefficients().size(), g.coefficients().size());
  return g.coefficients().head(n).dot(f.coefficients().head(n));
}

CVector truncated_product(const CVector& p, const CVector& q, std::size_t degree) {
  const auto d = static_cast<Eigen::Index>(degree);
  CVector out = CVector::Zero(d + 1);
  for (Eigen::Index i = 0; i < std::min(p.size(), d + 1); ++i) {
    if (p[i] == cplx{0.0, 0.0}) continue;
    const Eigen::Index jmax = std::min(q.size() - 1, d - i);
    for (Eigen::Index j = 0; j <= jmax; ++j) out[i + j] += p[i] * q[j];
  }
  return out;
}

// ---------------------------------------------------------------------------

RationalWeight::RationalWeight(std::vector<cplx> numerator, std::vector<cplx> denominator,
                               std::string label)
    : num_(trim(std::move(numerator))), den_(trim(std::move(denominator))), label_(std::move(label)) {
  if (num_.empty()) num_.push_back(0.0);
  if (den_.empty() || den_[0] == cplx{0.0, 0.0}) {
    throw Error("weight denominator must not vanish at 0");
  }
}

RationalWeight RationalWeight::one() { return RationalWeight({1.0}, {1.0}, "one"); }

RationalWeight RationalWeight::polynomial(std::vector<cplx> coefficients) {
  return RationalWeight(std::move(coefficients), {1.0}, "poly");
}

RationalWeight RationalWeight::kernel(cplx p) {
  if (!(std::abs(p) < 1.0)) throw OutsideDisc("kernel point must lie in the disc");
  return RationalWeight({1.0}, {1.0, -std::conj(p)}, "kernel");
}

RationalWeight RationalWeight::bourdon_narayan(cplx p, cplx c) {
  const DiskPoint pt(p);
  if (std::abs(std::abs(c) - 1.0) > kFitTolerance) throw Error("BN constant must be unimodular");
  return RationalWeight({c * std::sqrt(pt.defect())}, {1.0, -std::conj(p)}, "bn");
}

cplx RationalWeight::operator()(cplx z) const { return horner(num_, z) / horner(den_, z); }

TruncatedHardyFunction RationalWeight::expand(std::size_t degree) const {
  CVector q = CVector::Zero(static_cast<Eigen::Index>(degree + 1));
  for (std::size_t n = 0; n <= degree; ++n) {
    cplx acc = n < num_.size() ? num_[n] : cplx{0.0, 0.0};
    for (std::size_t j = 1; j < den_.size() && j <= n; ++j) {
      acc -= den_[j] * q[static_cast<Eigen::Index>(n - j)];
    }
    q[static_cast<Eigen::Index>(n)] = acc / den_[0];
  }
  return TruncatedHardyFunction(std::move(q));
}

double RationalWeight::pole_distance() const {
  double best = std::numeric_limits<double>::infinity();
  for (const cplx r : polynomial_roots(den_)) best = std::min(best, std::abs(r));
  return best;
}

// ---------------------------------------------------------------------------

LinearFractionalMap::LinearFractionalMap(cplx a, cplx b, cplx c, cplx d)
    : a_(a), b_(b), c_(c), d_(d) {
  const double scale = std::abs(a) * std::abs(d) + std::abs(b) * std::abs(c);
  if (!(std::abs(a * d - b * c) > kAlgebraicTolerance * scale) || scale == 0.0) {
    throw Error("linear-fractional map needs ad - bc != 0");
  }
}

LinearFractionalMap LinearFractionalMap::identity() { return {1.0, 0.0, 0.0, 1.0}; }

LinearFractionalMap LinearFractionalMap::rotation(cplx unimodular) {
  if (std::abs(std::abs(unimodular) - 1.0) > kFitTolerance) {
    throw Error("rotation needs a unimodular constant");
  }
  return {unimodular, 0.0, 0.0, 1.0};
}

LinearFractionalMap LinearFractionalMap::automorphism(cplx p, cplx lambda) {
  if (!(std::abs(p) < 1.0)) throw OutsideDisc("automorphism point must lie in the disc");
  if (std::abs(std::abs(lambda) - 1.0) > kFitTolerance) {
    throw Error("automorphism needs a unimodular constant");
  }
  return {-lambda, lambda * p, -std::conj(p), 1.0};
}

cplx LinearFractionalMap::operator()(cplx z) const { return (a_ * z + b_) / (c_ * z + d_); }

LinearFractionalMap LinearFractionalMap::inverse() const { return {d_, -b_, -c_, a_}; }

CVector LinearFractionalMap::expand(std::size_t degree) const {
  if (d_ == cplx{0.0, 0.0}) throw SymbolLeavesDisc("symbol has a pole at 0");
  CVector co = CVector::Zero(static_cast<Eigen::Index>(degree + 1));
  co[0] = b_ / d_;
  for (std::size_t n = 1; n <= degree; ++n) {
    const auto i = static_cast<Eigen::Index>(n);
    co[i] = ((n == 1 ? a_ : cplx{0.0, 0.0}) - c_ * co[i - 1]) / d_;
  }
  return co;
}

double LinearFractionalMap::boundary_sup() const {
  double best = 0.0;
  for (const cplx z : sample_grid().boundary) best = std::max(best, std::abs((*this)(z)));
  return best;
}

bool LinearFractionalMap::maps_disc_to_disc() const {
  // A pole in the closed disc rules it out; otherwise max modulus applies.
  if (c_ != cplx{0.0, 0.0} && !(std::abs(d_) > std::abs(c_))) return false;
  if (d_ == cplx{0.0, 0.0}) return false;
  return boundary_sup() <= 1.0 + kBoundaryTolerance;
}

bool LinearFractionalMap::is_automorphism() const {
  const double scale = std::norm(a_) + std::norm(b_) + std::norm(c_) + std::norm(d_);
  const double tol = kAlgebraicTolerance * scale;
  const cplx off = std::conj(a_) * b_ - std::conj(c_) * d_;
  const double top = std::norm(a_) - std::norm(c_);
  const double bottom = std::norm(d_) - std::norm(b_);
  return std::abs(off) <= tol && std::abs(top - bottom) <= tol && top > tol;
}

std::optional<cplx> LinearFractionalMap::zero_preimage() const {
  if (a_ == cplx{0.0, 0.0}) return std::nullopt;
  const cplx p = -b_ / a_;
  if (!(std::abs(p) < 1.0)) return std::nullopt;
  return p;
}

const DiskGrid& sample_grid() {
  static const DiskGrid grid = [] {
    DiskGrid g;
    constexpr double radii[] = {0.5, 0.7, 0.8, 0.9, 0.95, 0.99, 0.995, 0.999};
    constexpr int kAngles = 64;
    constexpr int kBoundary = 256;
    const double two_pi = 2.0 * std::numbers::pi;
    for (const double r : radii) {
      for (int j = 0; j < kAngles; ++j) g.interior.push_back(std::polar(r, two_pi * j / kAngles));
    }
    for (int j = 0; j < kBoundary; ++j) g.boundary.push_back(std::polar(1.0, two_pi * j / kBoundary));
    return g;
  }();
  return grid;
}

TruncatedHardyFunction kernel(const DiskPoint& w, std::size_t degree) {
  CVector c(static_cast<Eigen::Index>(degree + 1));
  const cplx wb = std::conj(w.value());
  cplx pw{1.0, 0.0};
  for (Eigen::Index n = 0; n < c.size(); ++n) {
    c[n] = pw;
    pw *= wb;
  }
  return TruncatedHardyFunction(std::move(c));
}

// ---------------------------------------------------------------------------

WeightedCompositionOp::WeightedCompositionOp(LinearFractionalMap symbol, RationalWeight weight,
                                             std::size_t degree, CMatrix matrix)
    : symbol_(std::move(symbol)),
      weight_(std::move(weight)),
      degree_(degree),
      matrix_(std::move(matrix)) {}

TruncatedHardyFunction WeightedCompositionOp::apply(const TruncatedHardyFunction& f) const {
  if (f.degree() != degree_) throw Error("function degree differs from the section degree");
  return TruncatedHardyFunction(matrix_ * f.coefficients());
}

namespace {

CMatrix orbit_columns(const CVector& phi_series, CVector column, std::size_t count,
                      std::size_t degree) {
  CMatrix m(static_cast<Eigen::Index>(degree + 1), static_cast<Eigen::Index>(count));
  for (std::size_t n = 0; n < count; ++n) {
    m.col(static_cast<Eigen::Index>(n)) = column;
    if (n + 1 < count) column = truncated_product(column, phi_series, degree);
  }
  return m;
}

}  // namespace

WeightedCompositionOp wco_matrix(const LinearFractionalMap& phi, const RationalWeight& u,
                                 std::size_t degree) {
  if (!phi.maps_disc_to_disc()) {
    throw SymbolLeavesDisc("symbol does not map the disc into itself (boundary sup " +
                           std::to_string(phi.boundary_sup()) + ")");
  }
  if (!(u.pole_distance() > 1.0)) throw Error("weight has a pole in the closed disc");
  CMatrix m = orbit_columns(phi.expand(degree), u.expand(degree).coefficients(), degree + 1,
                            degree);
  return WeightedCompositionOp(phi, u, degree, std::move(m));
}

CMatrix composition_matrix(const LinearFractionalMap& phi, std::size_t degree) {
  return wco_matrix(phi, RationalWeight::one(), degree).matrix();
}

CMatrix multiplication_matrix(const TruncatedHardyFunction& u) {
  const auto n = static_cast<Eigen::Index>(u.degree() + 1);
  CMatrix m = CMatrix::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = j; i < n; ++i) m(i, j) = u.coefficients()[i - j];
  }
  return m;
}

// ---------------------------------------------------------------------------

InvertibilityReport invertibility_check(const WeightedCompositionOp& op) {
  InvertibilityReport r;
  r.automorphism = op.symbol().is_automorphism();
  const DiskGrid& grid = sample_grid();
  r.grid_min = std::numeric_limits<double>::infinity();
  r.grid_max = 0.0;
  auto scan = [&](const std::vector<cplx>& pts) {
    for (const cplx z : pts) {
      const double v = std::abs(op.weight()(z));
      r.grid_min = std::min(r.grid_min, v);
      r.grid_max = std::max(r.grid_max, v);
    }
  };
  scan(grid.interior);
  scan(grid.boundary);
  r.weight_bounded_below = r.grid_min >= kWeightFloor;
  r.weight_bounded_above = std::isfinite(r.grid_max);
  r.invertible = r.automorphism && r.weight_bounded_below && r.weight_bounded_above;
  return r;
}

UnitarityReport unitarity_check(const WeightedCompositionOp& op) {
  UnitarityReport r;
  const LinearFractionalMap& phi = op.symbol();
  const RationalWeight& u = op.weight();
  const bool automorphism = phi.is_automorphism();
  const std::optional<cplx> p = phi.zero_preimage();
  r.fit_residual = std::numeric_limits<double>::infinity();

  if (automorphism && p) {
    // u must equal c sqrt(1-|p|^2) / (1 - conj(p) z): cross-multiply and
    // compare polynomial coefficients.
    const double s = std::sqrt(DiskPoint(*p).defect());
    const cplx kappa = u(0.0);
    const cplx c = kappa / s;
    const std::vector<cplx> lhs = [&] {
      std::vector<cplx> out(u.numerator().size() + 1, 0.0);
      for (std::size_t i = 0; i < u.numerator().size(); ++i) {
        out[i] += u.numerator()[i];
        out[i + 1] -= std::conj(*p) * u.numerator()[i];
      }
      return out;
    }();
    double scale = 0.0;
    for (const cplx v : u.denominator()) scale = std::max(scale, std::abs(v));
    double residual = std::abs(std::abs(c) - 1.0);
    const std::size_t n = std::max(lhs.size(), u.denominator().size());
    for (std::size_t i = 0; i < n; ++i) {
      const cplx l = i < lhs.size() ? lhs[i] : cplx{0.0, 0.0};
      const cplx rr = i < u.denominator().size() ? kappa * u.denominator()[i] : cplx{0.0, 0.0};
      residual = std::max(residual, std::abs(l - rr) / scale);
    }
    r.fit_residual = residual;
    r.is_bn_form = residual < kFitTolerance;
    r.p = *p;
    r.c = c;
  }

  // Columns beyond m lose mass past the cutoff, so only the leading block of
  // the Gram matrix is compared with the identity.
  const std::size_t degree = op.degree();
  std::size_t m = degree;
  if (p) {
    const double rp = std::abs(*p);
    m = static_cast<std::size_t>(std::floor(static_cast<double>(degree) * (1.0 - rp) /
                                            (2.0 * (1.0 + rp))));
  }
  const auto cols = static_cast<Eigen::Index>(m + 1);
  const CMatrix lead = op.matrix().leftCols(cols);
  const CMatrix gram = lead.adjoint() * lead;
  r.truncation_defect = spectral_norm(gram - CMatrix::Identity(cols, cols));
  r.resolved_columns = m + 1;
  return r;
}

double adjoint_kernel_identity(const WeightedCompositionOp& op, const DiskPoint& w) {
  const std::size_t degree = op.degree();
  const TruncatedHardyFunction kw = kernel(w, degree);
  const DiskPoint image(op.symbol()(w.value()));
  const CVector lhs = op.matrix().adjoint() * kw.coefficients();
  const CVector rhs = std::conj(op.weight()(w.value())) * kernel(image, degree).coefficients();
  return (lhs - rhs).norm() / kw.norm();
}

CowenFactors cowen_adjoint_factors(const LinearFractionalMap& phi) {
  const cplx a = phi.a();
  const cplx b = phi.b();
  const cplx c = phi.c();
  const cplx d = phi.d();
  CowenFactors f{LinearFractionalMap(std::conj(a), -std::conj(c), -std::conj(b), std::conj(d)),
                 RationalWeight({1.0}, {std::conj(d), -std::conj(b)}, "cowen_g"),
                 RationalWeight({d, c}, {1.0}, "cowen_h")};
  f.degenerate = !(f.g.pole_distance() > 1.0);
  f.sigma_maps_disc = f.sigma.maps_disc_to_disc();
  return f;
}

double cowen_defect(const LinearFractionalMap& phi, std::size_t degree) {
  const CowenFactors f = cowen_adjoint_factors(phi);
  if (f.degenerate) throw SymbolLeavesDisc("Cowen factor g has a pole in the closed disc");
  const CMatrix c_phi = composition_matrix(phi, degree);
  const CMatrix c_sigma = composition_matrix(f.sigma, degree);
  const CMatrix m_g = multiplication_matrix(f.g.expand(degree));
  const CMatrix m_h = multiplication_matrix(f.h.expand(degree));
  return spectral_norm(c_phi.adjoint() - m_g * c_sigma * m_h.adjoint());
}

IsometryReport isometry_rkh_check(const WeightedCompositionOp& op) {
  IsometryReport r;
  const LinearFractionalMap& phi = op.symbol();
  const RationalWeight& u = op.weight();
  r.automorphism = phi.is_automorphism();
  for (const cplx w : sample_grid().interior) {
    const double lhs = std::norm(u(w)) * (1.0 - std::norm(w));
    const double rhs = 1.0 - std::norm(phi(w));
    r.max_violation = std::max(r.max_violation, std::abs(lhs - rhs));
  }
  const std::optional<cplx> p = phi.zero_preimage();
  if (r.automorphism && p) {
    const double target = 1.0 - std::norm(*p);
    for (const cplx w : sample_grid().interior) {
      const double fit = std::norm(u(w)) * std::norm(1.0 - std::conj(*p) * w);
      r.bn_fit_residual = std::max(r.bn_fit_residual, std::abs(fit - target));
    }
    r.forces_unitary = r.max_violation < kIsometryTolerance && r.bn_fit_residual < kIsometryTolerance;
  } else {
    r.bn_fit_residual = std::numeric_limits<double>::infinity();
  }
  return r;
}

OrbitFrameReport multiplication_orbit_frame(const LinearFractionalMap& phi,
                                            const RationalWeight& u, std::size_t degree,
                                            std::optional<std::size_t> n_max) {
  OrbitFrameReport r;
  r.n_max = n_max.value_or(4 * degree);
  if (phi.boundary_sup() > 1.0 + kBoundaryTolerance || !phi.maps_disc_to_disc()) {
    r.unbounded_orbit = true;
    return r;
  }
  const WeightedCompositionOp op = wco_matrix(phi, u, degree);
  const CMatrix v = orbit_columns(phi.expand(degree), op.matrix().col(0), r.n_max + 1, degree);
  const CMatrix s = v * v.adjoint();
  r.bounds = frame_bounds(0.5 * (s + s.adjoint()), 0.0, BoundsMethod::partial_sum);
  r.frame_proxy = r.bounds.lower > kOrbitLowerGate;
  r.invertible = invertibility_check(op).invertible;
  r.agrees = r.frame_proxy == r.invertible;
  return r;
}

}  // namespace framelab
