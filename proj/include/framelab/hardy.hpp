#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "framelab/disk.hpp"
#include "framelab/dynamical.hpp"
#include "framelab/types.hpp"

namespace framelab {

/// Element of H^2 truncated to degree D: f(z) = sum_{n<=D} a_n z^n.
/// Coefficients are l^2 coordinates, so norms and inner products are the
/// Euclidean ones.
class TruncatedHardyFunction {
 public:
  explicit TruncatedHardyFunction(CVector coefficients);
  static TruncatedHardyFunction zero(std::size_t degree);
  static TruncatedHardyFunction monomial(std::size_t n, std::size_t degree);

  std::size_t degree() const { return static_cast<std::size_t>(coeffs_.size()) - 1; }
  const CVector& coefficients() const { return coeffs_; }
  cplx operator[](std::size_t n) const { return coeffs_[static_cast<Eigen::Index>(n)]; }

  cplx operator()(cplx z) const;
  double norm() const { return coeffs_.norm(); }
  /// Product truncated to this function's degree.
  TruncatedHardyFunction times(const TruncatedHardyFunction& other) const;

 private:
  CVector coeffs_;
};

/// <f, g> = sum a_n conj(b_n) over the common degree range.
cplx inner(const TruncatedHardyFunction& f, const TruncatedHardyFunction& g);

/// Coefficients of p*q truncated to `degree`.
CVector truncated_product(const CVector& p, const CVector& q, std::size_t degree);

/// Low-degree rational function num(z)/den(z) with den(0) != 0. Used for every
/// weight in this module (constants, kernels, Bourdon-Narayan weights, the
/// Cowen factors); expand() gives its Taylor coefficients at a cutoff.
class RationalWeight {
 public:
  RationalWeight(std::vector<cplx> numerator, std::vector<cplx> denominator,
                 std::string label = {});

  static RationalWeight one();
  static RationalWeight polynomial(std::vector<cplx> coefficients);
  /// K_p(z) = 1 / (1 - conj(p) z).
  static RationalWeight kernel(cplx p);
  /// c K_p / ||K_p|| = c sqrt(1 - |p|^2) / (1 - conj(p) z).
  static RationalWeight bourdon_narayan(cplx p, cplx c);

  cplx operator()(cplx z) const;
  TruncatedHardyFunction expand(std::size_t degree) const;
  const std::vector<cplx>& numerator() const { return num_; }
  const std::vector<cplx>& denominator() const { return den_; }
  const std::string& label() const { return label_; }
  /// Smallest modulus of a root of the denominator (inf if constant).
  double pole_distance() const;

 private:
  std::vector<cplx> num_;
  std::vector<cplx> den_;
  std::string label_;
};

/// phi(z) = (a z + b) / (c z + d), ad - bc != 0.
class LinearFractionalMap {
 public:
  LinearFractionalMap(cplx a, cplx b, cplx c, cplx d);

  static LinearFractionalMap identity();
  static LinearFractionalMap rotation(cplx unimodular);
  /// lambda (p - z) / (1 - conj(p) z), |lambda| = 1: the automorphism that
  /// swaps 0 and p when lambda = 1.
  static LinearFractionalMap automorphism(cplx p, cplx lambda = cplx{1.0, 0.0});

  cplx a() const { return a_; }
  cplx b() const { return b_; }
  cplx c() const { return c_; }
  cplx d() const { return d_; }

  cplx operator()(cplx z) const;
  LinearFractionalMap inverse() const;
  /// Taylor coefficients up to `degree` (requires d != 0).
  CVector expand(std::size_t degree) const;

  /// |phi| <= 1 + 1e-10 on the 256-point boundary grid and no pole in the
  /// closed disc.
  bool maps_disc_to_disc() const;
  /// Decided from the coefficients: M^* J M proportional to J, J = diag(1,-1).
  bool is_automorphism() const;
  /// The point p with phi(p) = 0, when it lies in the disc.
  std::optional<cplx> zero_preimage() const;
  /// max |phi| over the boundary grid.
  double boundary_sup() const;

 private:
  cplx a_, b_, c_, d_;
};

/// Sample points for sup/inf scans: 8 radii x 64 angles plus 256 points on
/// the circle.
struct DiskGrid {
  std::vector<cplx> interior;
  std::vector<cplx> boundary;
};
const DiskGrid& sample_grid();

/// Coefficients (1, conj(w), conj(w)^2, ..., conj(w)^D).
TruncatedHardyFunction kernel(const DiskPoint& w, std::size_t degree);

/// Section of W_{phi,u} f = u (f o phi): column n holds the coefficients of
/// u phi^n up to degree D.
class WeightedCompositionOp {
 public:
  WeightedCompositionOp(LinearFractionalMap symbol, RationalWeight weight,
                        std::size_t degree, CMatrix matrix);

  const LinearFractionalMap& symbol() const { return symbol_; }
  const RationalWeight& weight() const { return weight_; }
  std::size_t degree() const { return degree_; }
  const CMatrix& matrix() const { return matrix_; }
  TruncatedHardyFunction apply(const TruncatedHardyFunction& f) const;

 private:
  LinearFractionalMap symbol_;
  RationalWeight weight_;
  std::size_t degree_;
  CMatrix matrix_;
};

/// Throws SymbolLeavesDisc.
WeightedCompositionOp wco_matrix(const LinearFractionalMap& phi,
                                 const RationalWeight& u, std::size_t degree);
/// (D+1)x(D+1) section of C_phi.
CMatrix composition_matrix(const LinearFractionalMap& phi, std::size_t degree);
/// Lower-triangular Toeplitz section of M_u.
CMatrix multiplication_matrix(const TruncatedHardyFunction& u);

struct InvertibilityReport {
  bool automorphism = false;
  bool weight_bounded_below = false;
  bool weight_bounded_above = false;
  double grid_min = 0.0;
  double grid_max = 0.0;
  bool invertible = false;
};

inline constexpr double kWeightFloor = 1e-6;

InvertibilityReport invertibility_check(const WeightedCompositionOp& op);

struct UnitarityReport {
  bool is_bn_form = false;
  std::optional<cplx> p;
  std::optional<cplx> c;
  double fit_residual = 0.0;
  /// ||G - I|| on the leading block of resolved columns, G the Gram matrix
  /// of the section's columns.
  double truncation_defect = 0.0;
  std::size_t resolved_columns = 0;
};

UnitarityReport unitarity_check(const WeightedCompositionOp& op);

/// ||W_D^* K_w - conj(u(w)) K_{phi(w)}|| / ||K_w|| on the section.
double adjoint_kernel_identity(const WeightedCompositionOp& op, const DiskPoint& w);

struct CowenFactors {
  LinearFractionalMap sigma;
  RationalWeight g;
  RationalWeight h;
  /// g has a pole in the closed disc.
  bool degenerate = false;
  bool sigma_maps_disc = false;
};

CowenFactors cowen_adjoint_factors(const LinearFractionalMap& phi);

/// ||(C_phi)_D^* - (M_g)_D (C_sigma)_D (M_h)_D^*||_2.
double cowen_defect(const LinearFractionalMap& phi, std::size_t degree);

struct IsometryReport {
  double max_violation = 0.0;
  bool automorphism = false;
  /// max | |u(w)|^2 |1 - conj(p) w|^2 - (1 - |p|^2) | over the grid.
  double bn_fit_residual = 0.0;
  bool forces_unitary = false;
};

IsometryReport isometry_rkh_check(const WeightedCompositionOp& op);

struct OrbitFrameReport {
  bool unbounded_orbit = false;
  FrameBoundsReport bounds;
  std::size_t n_max = 0;
  bool frame_proxy = false;  // bounds.lower > lower_gate
  bool invertible = false;
  bool agrees = false;
};

inline constexpr double kOrbitLowerGate = 1e-3;

/// Frame bounds of {phi^n u : n <= n_max} on the (D+1)-section; n_max
/// defaults to 4D.
OrbitFrameReport multiplication_orbit_frame(const LinearFractionalMap& phi,
                                            const RationalWeight& u,
                                            std::size_t degree,
                                            std::optional<std::size_t> n_max = std::nullopt);

}  // namespace framelab
