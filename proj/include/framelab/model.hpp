#pragma once

#include <cstddef>
#include <vector>

#include "framelab/disk.hpp"
#include "framelab/hardy.hpp"
#include "framelab/types.hpp"

namespace framelab {

/// Model space K_theta = H^2 minus theta H^2 for a finite Blaschke product,
/// realised in degree-`cutoff` coefficient space.
///
/// The basis is the Takenaka-Malmquist system of the zero list a_1..a_d
/// (repeated by multiplicity):
///   e_j(z) = sqrt(1-|a_j|^2) / (1 - conj(a_j) z) * prod_{i<j} b_{a_i}(z).
/// The compressed shift is P_K M_z expressed in that basis.
class FiniteBlaschkeModel {
 public:
  FiniteBlaschkeModel(FiniteBlaschke theta, std::size_t cutoff);

  const FiniteBlaschke& theta() const { return theta_; }
  std::size_t dimension() const { return theta_.degree(); }
  std::size_t cutoff() const { return cutoff_; }
  /// (cutoff+1) x d, column j = coefficients of e_j.
  const CMatrix& basis() const { return basis_; }
  const CMatrix& shift() const { return shift_; }
  const CVector& theta_coefficients() const { return theta_coeffs_; }

  /// ||E^* E - I||_max.
  double gram_defect() const;
  /// max |<e_j, theta z^n>| for n <= cutoff - d.
  double membership_defect() const;

  /// Coefficient vector of sum_j coords_j e_j.
  CVector expand(const CVector& coords) const;
  /// Orthogonal projection coordinates of a coefficient vector.
  CVector coordinates(const CVector& coefficients) const;

 private:
  FiniteBlaschke theta_;
  std::size_t cutoff_;
  CMatrix basis_;
  CMatrix shift_;
  CVector theta_coeffs_;
};

/// Throws CutoffTooSmall when cutoff < 4d.
FiniteBlaschkeModel model_basis(const FiniteBlaschke& theta, std::size_t cutoff);

/// 1 - conj(theta(0)) theta(z), truncated at the model cutoff.
TruncatedHardyFunction k0_theta(const FiniteBlaschkeModel& model);

/// max_j |<e_j, k0> - e_j(0)|.
double k0_reproducing_defect(const FiniteBlaschkeModel& model);

/// theta(A) = c prod (|a|/a)(a I - A)(I - conj(a) A)^{-1}.
CMatrix theta_of_matrix(const FiniteBlaschke& theta, const CMatrix& a);

struct SpectrumReport {
  std::vector<cplx> eigenvalues;
  double max_mismatch = 0.0;            // after matching with the zeros
  double minimal_function_defect = 0.0; // ||theta(S)||
  double min_divisor_residual = 0.0;    // min over one-zero-dropped divisors
  bool minimal = false;
};

SpectrumReport spectrum_check(const FiniteBlaschkeModel& model);

/// max_{n < orders} |<f, S^n k0> - f^(n)| for f given by basis coordinates.
/// orders defaults to 4d.
double parseval_orbit_check(const FiniteBlaschkeModel& model,
                            const CVector& coords, std::size_t orders = 0);

/// ||sum_{n <= n_max} (S^n k0)(S^n k0)^* - I||_2, in basis coordinates.
double parseval_frame_operator_defect(const FiniteBlaschkeModel& model,
                                      std::size_t n_max);

struct JordanBlockInfo {
  cplx eigenvalue;
  int multiplicity = 0;
  std::size_t eigenspace_dim = 0;
  std::vector<std::size_t> block_sizes;
  std::vector<std::size_t> rank_sequence;  // rank (S - lambda)^j, j = 0..m+1
};

std::vector<JordanBlockInfo> jordan_structure(const FiniteBlaschkeModel& model);

/// Element of H^2(D, C^m): m truncated components of equal degree.
class VectorHardyFunction {
 public:
  explicit VectorHardyFunction(std::vector<TruncatedHardyFunction> components);

  std::size_t dimension() const { return comps_.size(); }
  const TruncatedHardyFunction& operator[](std::size_t j) const { return comps_[j]; }
  const std::vector<TruncatedHardyFunction>& components() const { return comps_; }
  double norm() const;
  /// Componentwise shift (multiplication by z), truncated.
  VectorHardyFunction shifted() const;

 private:
  std::vector<TruncatedHardyFunction> comps_;
};

/// sum_k z^{k-1} f_k(z^m) -> (f_1, ..., f_m). The coefficient count must be
/// divisible by m (throws IndivisibleCutoff).
VectorHardyFunction split_J(const TruncatedHardyFunction& f, std::size_t m);
TruncatedHardyFunction join_J(const VectorHardyFunction& f);

/// f shifted by `steps` positions (multiplication by z^steps), truncated.
TruncatedHardyFunction shift_power(const TruncatedHardyFunction& f, std::size_t steps);

struct MultiGeneratorReport {
  /// |sum_{j,n} |<F, S^n e_j>|^2 - ||F||^2| / ||F||^2.
  double defect = 0.0;
  /// pairings(j, n) = <F, S^n e_j>.
  CMatrix pairings;
};

MultiGeneratorReport multi_generator_parseval(const VectorHardyFunction& f);

}  // namespace framelab
