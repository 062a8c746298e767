#pragma once

#include <cstddef>
#include <vector>

#include "framelab/dynamical.hpp"
#include "framelab/exponents.hpp"
#include "framelab/types.hpp"

namespace framelab {

/// nu = sum_k (1 - mu_k^2) delta_{mu_k}, mu_k in (0, 1) pairwise distinct.
class AtomicMeasure {
 public:
  explicit AtomicMeasure(std::vector<double> locations);

  std::size_t size() const { return locations_.size(); }
  const std::vector<double>& locations() const { return locations_; }
  const std::vector<double>& weights() const { return weights_; }

 private:
  std::vector<double> locations_;
  std::vector<double> weights_;
};

/// Partial sum of 1/lambda over the positive exponents.
double muntz_szasz_sum(const ExponentSet& exponents);

struct PointwiseValue {
  double value = 0.0;
  double tail_bound = 0.0;
  std::size_t terms_used = 0;
};

/// (1 - mu^2) sum_{lambda} mu^(2 lambda).
PointwiseValue pointwise_condition(double mu, const ExponentSet& exponents);

/// Same quantity parametrised by x = 1 - mu^2, which keeps full precision
/// when mu is close to 1.
PointwiseValue pointwise_condition_at(double x, const ExponentSet& exponents);

/// Infinite progression {0, N, 2N, ...}: (1 - mu^2) / (1 - mu^(2N)).
double pointwise_condition_closed(double mu, unsigned stride);

struct PointwiseExtremes {
  double inf = 0.0;
  double sup = 0.0;
  std::size_t argmin = 0;
  std::size_t argmax = 0;
  double tail_bound = 0.0;
};

PointwiseExtremes pointwise_extremes(const AtomicMeasure& atoms,
                                     const ExponentSet& exponents);
PointwiseExtremes pointwise_extremes_closed(const AtomicMeasure& atoms,
                                            unsigned stride);

struct ExpLogSum {
  double value = 0.0;
  std::size_t terms_used = 0;  // largest n included
  double tail_bound = 0.0;
};

/// S(x) = sum_{n>=2} exp(-n x log n), summed until the integral bound on the
/// remainder, exp(-x n log n) / (x (1 + log n)), drops below tolerance.
ExpLogSum s_of_x(double x, double tolerance);

/// Fitted once over x in [1e-6, 1/4] and frozen: x S(x) <= C / log(1/x).
inline constexpr double kXSBound = 1.25;

// Spectral model of the diagonal operator as multiplication by t on L^2(nu).

/// (Jx)(mu_k) = x_k conj(b_k) / (1 - mu_k^2).
CVector spectral_model_J(const CVector& x, const AtomicMeasure& nu,
                         const CVector& b);

/// (Uf)_k = sqrt(w_k) f(mu_k); an isometry L^2(nu) -> l^2.
CVector model_unitary_U(const CVector& f, const AtomicMeasure& nu);

/// t^lambda sampled at the atoms.
CVector monomial_on_atoms(const AtomicMeasure& nu, double lambda);

/// <f, g>_{L^2(nu)} = sum_k w_k f(mu_k) conj(g(mu_k)).
cplx l2nu_inner(const CVector& f, const CVector& g, const AtomicMeasure& nu);
double l2nu_norm(const CVector& f, const AtomicMeasure& nu);

/// b_lambda = (sqrt(w_k) mu_k^lambda)_k.
CVector monomial_frame_vector(const AtomicMeasure& nu, double lambda);

/// Orbit system whose vectors are the b_lambda: D = diag(mu), b = sqrt(w).
OrbitFrameSystem monomial_system(const AtomicMeasure& nu,
                                 std::optional<ExponentSet> exponents,
                                 unsigned stride = 1);

FrameBoundsReport frame_test_monomials(const AtomicMeasure& nu,
                                       const ExponentSet& exponents);
FrameBoundsReport frame_test_monomials_closed(const AtomicMeasure& nu,
                                              unsigned stride = 1);

struct SweepRow {
  double parameter = 0.0;
  double value = 0.0;
  double tail_bound = 0.0;
};

/// (x, (1-mu^2) sum mu^(2 lambda)) with mu^2 = 1 - x.
std::vector<SweepRow> pointwise_sweep(const std::vector<double>& xs,
                                      const ExponentSet& exponents);
/// (x, x S(x)).
std::vector<SweepRow> xs_sweep(const std::vector<double>& xs,
                                  double tolerance);

}  // namespace framelab
