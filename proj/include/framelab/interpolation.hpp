#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "framelab/disk.hpp"
#include "framelab/types.hpp"

namespace framelab {

/// sum_i f_i(z_k) g_{k,i} = c_k for every node. One generator (N = 1) is
/// the scalar problem u_k f(z_k) = c_k.
struct InterpolationProblem {
  DiskSequence nodes;
  std::vector<CVector> weights;  // one length-N vector per node
  std::vector<cplx> targets;

  std::size_t generators() const;
  void validate() const;

  static InterpolationProblem scalar(const DiskSequence& nodes,
                                     const std::vector<cplx>& weights,
                                     const std::vector<cplx>& targets);
};

struct McPhailOptions {
  double delta_min = 1e-3;
  double ratio_floor = 1e-2;
  double ratio_ceiling = 1e2;
};

struct McPhailReport {
  double carleson_constant = 0.0;
  bool carleson_pass = false;
  double ratio_low = 0.0;
  double ratio_high = 0.0;
  bool pass = false;
};

/// Carleson condition plus w_k / sqrt(1 - |z_k|) inside the band.
McPhailReport mcphail_check(const DiskSequence& nodes,
                            std::span<const double> weights,
                            const McPhailOptions& opts = {});

struct InterpolantResult {
  std::vector<CVector> components;  // N coefficient vectors of length D+1
  double residual = 0.0;            // relative (absolute when c = 0)
  double condition = 0.0;
  std::size_t rank = 0;
  bool ill_conditioned = false;     // condition > 1e12
};

inline constexpr double kIllConditioned = 1e12;

/// Row k of the system: the coefficient functionals of the k-th condition.
CMatrix interpolation_matrix(const InterpolationProblem& problem,
                             std::size_t degree);

/// Minimum-norm polynomial of degree <= D with u_k f(z_k) = c_k. Solved by a
/// pivoted complete orthogonal decomposition. Throws RankDeficient when a
/// condition has zero weight and non-zero target.
InterpolantResult min_norm_interpolant(const InterpolationProblem& problem,
                                       std::size_t degree);
/// Minimum-norm (f_1, ..., f_N) in the product space.
InterpolantResult multi_weight_interpolant(const InterpolationProblem& problem,
                                           std::size_t degree);

/// Members g_k (1 + z) / (1 - conj(z_k) z).
struct KernelFamily {
  std::vector<DiskPoint> nodes;
  std::vector<CVector> vectors;

  std::size_t size() const { return nodes.size(); }
  std::size_t generators() const;
  /// Member k in H^2(D; C^N), component-major, each of length D+1.
  CVector member(std::size_t k, std::size_t degree) const;

  static KernelFamily scalar(const std::vector<DiskPoint>& nodes,
                             const std::vector<cplx>& g);
};

struct RieszReport {
  double min_eig = 0.0;
  double max_eig = 0.0;
  double condition = 0.0;
  bool degenerate = false;  // min_eig <= 0 numerically
  bool riesz_proxy = false; // condition below the gate
  double gate = 1e4;
};

/// Gram matrix of the normalized members. Throws DegenerateFamily when the
/// family is empty or has a zero member.
RieszReport riesz_basic_test(const KernelFamily& family, std::size_t degree,
                             double gate = 1e4);

struct WeightNormRange {
  double low = 0.0;
  double high = 0.0;
};

/// min and max of ||g_k||^2 (1 - |z_k|^2).
WeightNormRange weight_norm_condition(const KernelFamily& family);

/// Greedy split of a sequence into subsequences that each pass
/// is_interpolating(delta_min). A heuristic upper bound on the minimal number
/// of Carleson sequences needed.
struct CarlesonPartition {
  std::vector<std::vector<std::size_t>> parts;
  bool heuristic = true;
};

CarlesonPartition carleson_partition(const DiskSequence& seq, double delta_min);

struct ProblemSpec {
  InterpolationProblem problem;
  std::size_t degree = 0;
};

/// {nodes: [[re,im]...], weights: [...], targets: [[re,im]...], N, degree}.
/// For N = 1 each weight is a number or [re,im]; for N >= 2 each weight is a
/// list of N such entries.
ProblemSpec problem_from_json(const nlohmann::json& j);

}  // namespace framelab
