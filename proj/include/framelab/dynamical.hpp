#pragma once

#include <optional>
#include <string>
#include <vector>

#include "framelab/exponents.hpp"
#include "framelab/types.hpp"

namespace framelab {

/// Diagonal operator on C^K given by its eigenvalues. Eigenvalues must lie
/// in the open disc; in diagnostic mode unimodular ones are admitted so the
/// divergence of orbit sums can be observed.
class DiagonalOperator {
 public:
  explicit DiagonalOperator(std::vector<cplx> eigenvalues,
                            bool diagnostic = false);

  const std::vector<cplx>& eigenvalues() const { return eigenvalues_; }
  std::size_t dimension() const { return eigenvalues_.size(); }
  bool diagnostic() const { return diagnostic_; }
  bool has_boundary_spectrum() const;

 private:
  std::vector<cplx> eigenvalues_;
  bool diagnostic_ = false;
};

class GeneratorVector {
 public:
  explicit GeneratorVector(std::vector<cplx> coefficients);
  const std::vector<cplx>& coefficients() const { return coefficients_; }
  std::size_t size() const { return coefficients_.size(); }
  double norm() const;

 private:
  std::vector<cplx> coefficients_;
};

/// Orbit {D^lambda b : lambda in Lambda}. Without an explicit exponent set
/// the orbit runs over the infinite progression {0, s, 2s, ...}, s = stride.
struct OrbitFrameSystem {
  OrbitFrameSystem(DiagonalOperator op, GeneratorVector generator,
                   std::optional<ExponentSet> exponents = std::nullopt,
                   unsigned stride = 1);

  DiagonalOperator op;
  GeneratorVector generator;
  std::optional<ExponentSet> exponents;
  unsigned stride = 1;

  std::size_t dimension() const { return op.dimension(); }
};

/// Convenience: real spectrum, real generator.
OrbitFrameSystem make_orbit_system(const std::vector<double>& eigenvalues,
                                   const std::vector<double>& generator,
                                   std::optional<ExponentSet> exponents = std::nullopt,
                                   unsigned stride = 1);

enum class BoundsMethod { closed_form, partial_sum };
std::string to_string(BoundsMethod m);

struct FrameBoundsReport {
  double lower = 0.0;
  double upper = 0.0;
  double truncation_tail = 0.0;
  BoundsMethod method = BoundsMethod::closed_form;
};

/// Component k is mu_k^exponent * b_k.
CVector orbit_vector(const OrbitFrameSystem& sys, double exponent);

/// Entry (j,k) = b_j conj(b_k) / (1 - (mu_j conj(mu_k))^stride).
CMatrix frame_operator_closed(const OrbitFrameSystem& sys);

struct PartialFrameOperator {
  CMatrix matrix;
  double tail_bound = 0.0;
};

/// Sum over the explicit exponent set. tail_bound bounds the operator norm of
/// what the truncation dropped (0 for explicit_values sets).
PartialFrameOperator frame_operator_partial(const OrbitFrameSystem& sys);

/// Eigenvalues of a Hermitian matrix, ascending. Throws NotHermitian.
RVector hermitian_eigenvalues(const CMatrix& s);

FrameBoundsReport frame_bounds(const CMatrix& s, double truncation_tail = 0.0,
                               BoundsMethod method = BoundsMethod::closed_form);

struct CarlesonFrameOptions {
  double delta_min = 1e-3;
  double boundary_epsilon = 0.05;
  /// |b_k| / sqrt(1-|mu_k|^2) must stay inside [ratio_floor, ratio_ceiling].
  double ratio_floor = 1e-2;
  double ratio_ceiling = 1e2;
};

/// The four conditions characterising Carleson orbit frames, evaluated on a
/// finite section. Condition (2) is an asymptotic statement and is reported
/// only as a finite-scale proxy.
struct CarlesonFrameReport {
  bool inside_disc = false;          // (1)
  bool approaches_boundary = false;  // (2), proxy
  bool carleson = false;             // (3)
  bool weights_comparable = false;   // (4)

  double max_modulus = 0.0;
  double carleson_constant = 0.0;
  std::size_t carleson_argmin = 0;
  double ratio_low = 0.0;   // observed C1
  double ratio_high = 0.0;  // observed C2
  std::string boundary_note;

  bool all() const {
    return inside_disc && approaches_boundary && carleson && weights_comparable;
  }
};

CarlesonFrameReport check_carleson_frame(const OrbitFrameSystem& sys,
                                         const CarlesonFrameOptions& opts = {});

/// Keeps every N-th orbit element.
OrbitFrameSystem subsample_orbit(const OrbitFrameSystem& sys, unsigned stride);

}  // namespace framelab
