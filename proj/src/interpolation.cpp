#include "framelab/interpolation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <string>

#include "framelab/errors.hpp"

namespace framelab {

std::size_t InterpolationProblem::generators() const {
  return weights.empty() ? 1 : static_cast<std::size_t>(weights.front().size());
}

void InterpolationProblem::validate() const {
  if (weights.size() != nodes.size() || targets.size() != nodes.size()) {
    throw Error("nodes, weights and targets must share one length");
  }
  const std::size_t n = generators();
  if (n == 0) throw Error("weight vectors must be non-empty");
  for (const CVector& g : weights) {
    if (static_cast<std::size_t>(g.size()) != n) throw Error("weight vectors differ in length");
  }
  if (!nodes.empty()) (void)carleson_constant(nodes);  // throws DuplicatePoint
}

InterpolationProblem InterpolationProblem::scalar(const DiskSequence& nodes,
                                                  const std::vector<cplx>& weights,
                                                  const std::vector<cplx>& targets) {
  InterpolationProblem p;
  p.nodes = nodes;
  p.targets = targets;
  p.weights.reserve(weights.size());
  for (const cplx u : weights) {
    CVector g(1);
    g[0] = u;
    p.weights.push_back(std::move(g));
  }
  p.validate();
  return p;
}

McPhailReport mcphail_check(const DiskSequence& nodes, std::span<const double> weights,
                            const McPhailOptions& opts) {
  if (weights.size() != nodes.size()) throw Error("one weight per node is required");
  McPhailReport r;
  if (nodes.empty()) return r;
  try {
    const CarlesonReport c = is_interpolating(nodes, opts.delta_min);
    r.carleson_constant = c.constant;
    r.carleson_pass = c.pass;
  } catch (const DuplicatePoint&) {
    r.carleson_constant = 0.0;
    r.carleson_pass = false;
  }
  r.ratio_low = std::numeric_limits<double>::infinity();
  r.ratio_high = 0.0;
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    if (!(weights[k] > 0.0)) throw Error("McPhail weights must be positive");
    const double ratio = weights[k] / std::sqrt(1.0 - nodes[k].modulus());
    r.ratio_low = std::min(r.ratio_low, ratio);
    r.ratio_high = std::max(r.ratio_high, ratio);
  }
  r.pass = r.carleson_pass && r.ratio_low >= opts.ratio_floor &&
           r.ratio_high <= opts.ratio_ceiling;
  return r;
}

CMatrix interpolation_matrix(const InterpolationProblem& problem, std::size_t degree) {
  problem.validate();
  const std::size_t n = problem.generators();
  const auto cols = static_cast<Eigen::Index>(degree + 1);
  CMatrix a(static_cast<Eigen::Index>(problem.nodes.size()), static_cast<Eigen::Index>(n) * cols);
  for (std::size_t k = 0; k < problem.nodes.size(); ++k) {
    const auto row = static_cast<Eigen::Index>(k);
    const cplx z = problem.nodes[k].value();
    for (std::size_t i = 0; i < n; ++i) {
      const cplx g = problem.weights[k][static_cast<Eigen::Index>(i)];
      cplx zn{1.0, 0.0};
      for (Eigen::Index j = 0; j < cols; ++j) {
        a(row, static_cast<Eigen::Index>(i) * cols + j) = g * zn;
        zn *= z;
      }
    }
  }
  return a;
}

InterpolantResult multi_weight_interpolant(const InterpolationProblem& problem,
                                           std::size_t degree) {
  const CMatrix a = interpolation_matrix(problem, degree);
  const std::size_t n = problem.generators();
  if (problem.nodes.size() > n * (degree + 1)) {
    throw Error("more conditions than unknowns at this degree");
  }
  CVector c(static_cast<Eigen::Index>(problem.targets.size()));
  for (std::size_t k = 0; k < problem.targets.size(); ++k) {
    const auto i = static_cast<Eigen::Index>(k);
    c[i] = problem.targets[k];
    if (a.row(i).isZero(0.0) && c[i] != cplx{0.0, 0.0}) {
      throw RankDeficient("condition " + std::to_string(k) +
                          " has zero weight and a non-zero target");
    }
  }

  InterpolantResult out;
  const auto cols = static_cast<Eigen::Index>(degree + 1);
  CVector x = CVector::Zero(a.cols());
  if (a.rows() > 0) {
    Eigen::CompleteOrthogonalDecomposition<CMatrix> cod(a);
    x = cod.solve(c);
    out.rank = static_cast<std::size_t>(cod.rank());
    const RVector sv = Eigen::BDCSVD<CMatrix>(a).singularValues();
    const double smin = sv[sv.size() - 1];
    out.condition = smin > 0.0 ? sv[0] / smin : std::numeric_limits<double>::infinity();
    const double cn = c.norm();
    const double r = (a * x - c).norm();
    out.residual = cn > 0.0 ? r / cn : r;
  } else {
    out.condition = 1.0;
  }
  out.ill_conditioned = out.condition > kIllConditioned;
  for (std::size_t i = 0; i < n; ++i) {
    out.components.push_back(x.segment(static_cast<Eigen::Index>(i) * cols, cols));
  }
  return out;
}

InterpolantResult min_norm_interpolant(const InterpolationProblem& problem,
                                       std::size_t degree) {
  if (problem.generators() != 1) throw Error("min_norm_interpolant is the N = 1 case");
  return multi_weight_interpolant(problem, degree);
}

std::size_t KernelFamily::generators() const {
  return vectors.empty() ? 1 : static_cast<std::size_t>(vectors.front().size());
}

CVector KernelFamily::member(std::size_t k, std::size_t degree) const {
  const CVector& g = vectors.at(k);
  const cplx a = std::conj(nodes.at(k).value());
  const auto len = static_cast<Eigen::Index>(degree + 1);
  // (1 + z) / (1 - a z): c_0 = 1, c_n = a^n + a^(n-1).
  CVector series(len);
  series[0] = 1.0;
  cplx prev{1.0, 0.0};
  for (Eigen::Index n = 1; n < len; ++n) {
    const cplx cur = prev * a;
    series[n] = cur + prev;
    prev = cur;
  }
  CVector out(static_cast<Eigen::Index>(g.size()) * len);
  for (Eigen::Index i = 0; i < g.size(); ++i) out.segment(i * len, len) = g[i] * series;
  return out;
}

KernelFamily KernelFamily::scalar(const std::vector<DiskPoint>& nodes,
                                  const std::vector<cplx>& g) {
  if (nodes.size() != g.size()) throw Error("one weight per node is required");
  KernelFamily f;
  f.nodes = nodes;
  for (const cplx v : g) {
    CVector c(1);
    c[0] = v;
    f.vectors.push_back(std::move(c));
  }
  return f;
}

RieszReport riesz_basic_test(const KernelFamily& family, std::size_t degree, double gate) {
  if (family.size() == 0) throw DegenerateFamily("empty kernel family");
  if (family.vectors.size() != family.size()) throw Error("one vector per node is required");
  const std::size_t n = family.generators();
  const auto len = static_cast<Eigen::Index>(n * (degree + 1));
  CMatrix m(len, static_cast<Eigen::Index>(family.size()));
  for (std::size_t k = 0; k < family.size(); ++k) {
    if (static_cast<std::size_t>(family.vectors[k].size()) != n) {
      throw Error("kernel family vectors differ in length");
    }
    CVector v = family.member(k, degree);
    const double norm = v.norm();
    if (!(norm > 0.0)) throw DegenerateFamily("member " + std::to_string(k) + " is zero");
    m.col(static_cast<Eigen::Index>(k)) = v / norm;
  }
  const CMatrix gram = m.adjoint() * m;
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(gram, Eigen::EigenvaluesOnly);
  const RVector ev = solver.eigenvalues();
  RieszReport r;
  r.gate = gate;
  r.min_eig = ev[0];
  r.max_eig = ev[ev.size() - 1];
  r.degenerate = !(r.min_eig > 0.0);
  r.condition = r.degenerate ? std::numeric_limits<double>::infinity() : r.max_eig / r.min_eig;
  r.riesz_proxy = !r.degenerate && r.condition < gate;
  return r;
}

WeightNormRange weight_norm_condition(const KernelFamily& family) {
  WeightNormRange r;
  if (family.size() == 0) return r;
  r.low = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < family.size(); ++k) {
    const double v = family.vectors.at(k).squaredNorm() * family.nodes[k].defect();
    r.low = std::min(r.low, v);
    r.high = std::max(r.high, v);
  }
  return r;
}

CarlesonPartition carleson_partition(const DiskSequence& seq, double delta_min) {
  CarlesonPartition out;
  std::vector<std::size_t> remaining(seq.size());
  for (std::size_t i = 0; i < seq.size(); ++i) remaining[i] = i;

  auto passes = [&](const std::vector<std::size_t>& idx) {
    std::vector<DiskPoint> pts;
    pts.reserve(idx.size());
    for (const std::size_t i : idx) pts.push_back(seq[i]);
    try {
      return is_interpolating(DiskSequence(std::move(pts)), delta_min).pass;
    } catch (const DuplicatePoint&) {
      return false;
    }
  };

  while (!remaining.empty()) {
    std::vector<std::size_t> part;
    std::vector<std::size_t> rest;
    for (const std::size_t i : remaining) {
      part.push_back(i);
      if (!passes(part)) {
        part.pop_back();
        rest.push_back(i);
      }
    }
    out.parts.push_back(std::move(part));
    remaining = std::move(rest);
  }
  return out;
}

namespace {

cplx parse_complex(const nlohmann::json& v, const std::string& where) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    return {v[0].get<double>(), v[1].get<double>()};
  }
  throw Error(where + ": expected a number or [re, im]");
}

}  // namespace

ProblemSpec problem_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error("problem must be a JSON object");
  static const std::set<std::string> known = {"nodes", "weights", "targets", "N", "degree"};
  for (const auto& item : j.items()) {
    if (!known.count(item.key())) throw Error("problem: unknown key '" + item.key() + "'");
  }
  for (const char* key : {"nodes", "weights", "targets", "degree"}) {
    if (!j.contains(key)) throw Error(std::string("problem: missing key '") + key + "'");
  }
  const auto& nodes = j.at("nodes");
  const auto& weights = j.at("weights");
  const auto& targets = j.at("targets");
  if (!nodes.is_array() || !weights.is_array() || !targets.is_array()) {
    throw Error("problem: nodes, weights and targets must be arrays");
  }
  if (!j.at("degree").is_number_integer() || j.at("degree").get<long long>() < 0) throw Error("problem: degree must be a non-negative integer");
  std::size_t n = 1;
  if (j.contains("N")) {
    if (!j.at("N").is_number_integer() || j.at("N").get<long long>() <= 0) {
      throw Error("problem: N must be a positive integer");
    }
    n = j.at("N").get<std::size_t>();
  }

  ProblemSpec spec;
  spec.degree = j.at("degree").get<std::size_t>();
  std::vector<DiskPoint> pts;
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    pts.emplace_back(parse_complex(nodes[k], "nodes[" + std::to_string(k) + "]"));
  }
  spec.problem.nodes = DiskSequence(std::move(pts));
  for (std::size_t k = 0; k < weights.size(); ++k) {
    const std::string where = "weights[" + std::to_string(k) + "]";
    CVector g(static_cast<Eigen::Index>(n));
    if (n == 1) {
      g[0] = parse_complex(weights[k], where);
    } else {
      if (!weights[k].is_array() || weights[k].size() != n) {
        throw Error(where + ": expected a list of " + std::to_string(n) + " entries");
      }
      for (std::size_t i = 0; i < n; ++i) {
        g[static_cast<Eigen::Index>(i)] =
            parse_complex(weights[k][i], where + "[" + std::to_string(i) + "]");
      }
    }
    spec.problem.weights.push_back(std::move(g));
  }
  for (std::size_t k = 0; k < targets.size(); ++k) {
    spec.problem.targets.push_back(parse_complex(targets[k], "targets[" + std::to_string(k) + "]"));
  }
  spec.problem.validate();
  return spec;
}

}  // namespace framelab
