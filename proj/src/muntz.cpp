#include "framelab/muntz.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "framelab/errors.hpp"
#include "framelab/numeric.hpp"

namespace framelab {

namespace {

// Early stop threshold relative to the running sum.
constexpr double kRelativeCutoff = 1e-15;

// sum_{i>=0} (1-x)^(first + i gap), without forming 1-x.
double tail_from_x(double x, double first, double gap) {
  const double log_r = std::log1p(-x);
  if (gap <= 0.0) return std::numeric_limits<double>::infinity();
  return std::exp(first * log_r) / -std::expm1(gap * log_r);
}

}  // namespace

AtomicMeasure::AtomicMeasure(std::vector<double> locations)
    : locations_(std::move(locations)) {
  weights_.reserve(locations_.size());
  for (std::size_t k = 0; k < locations_.size(); ++k) {
    const double mu = locations_[k];
    if (!(mu > 0.0 && mu < 1.0)) throw OutsideDisc("atom locations must lie in (0, 1)");
    for (std::size_t j = 0; j < k; ++j) {
      if (locations_[j] == mu) throw DuplicatePoint(j, k);
    }
    weights_.push_back((1.0 - mu) * (1.0 + mu));
  }
}

double muntz_szasz_sum(const ExponentSet& exponents) {
  CompensatedSum s;
  for (const double lambda : exponents.values()) {
    if (lambda > 0.0) s.add(1.0 / lambda);
  }
  return s.value();
}

PointwiseValue pointwise_condition_at(double x, const ExponentSet& exponents) {
  if (!(x > 0.0 && x <= 1.0)) throw Error("x = 1 - mu^2 must lie in (0, 1]");
  const double log_r = std::log1p(-x);
  const auto values = exponents.values();
  const bool truncated = exponents.is_truncation();
  const double tail_den = truncated ? -std::expm1(exponents.min_gap() * log_r) : 1.0;
  CompensatedSum sum;
  PointwiseValue out;
  double first_dropped = exponents.next_dropped();
  for (std::size_t i = 0; i < values.size(); ++i) {
    sum.add(std::exp(values[i] * log_r));
    ++out.terms_used;
    if (!truncated || i + 1 == values.size()) continue;
    // Stop once the whole geometric remainder, not just the next term, is
    // negligible against the running sum.
    const double remainder = std::exp(values[i + 1] * log_r) / tail_den;
    if (remainder < kRelativeCutoff * sum.value()) {
      first_dropped = values[i + 1];
      break;
    }
  }
  out.value = x * sum.value();
  if (truncated) out.tail_bound = x * tail_from_x(x, first_dropped, exponents.min_gap());
  return out;
}

PointwiseValue pointwise_condition(double mu, const ExponentSet& exponents) {
  if (!(mu > 0.0 && mu < 1.0)) throw OutsideDisc("mu must lie in (0, 1)");
  return pointwise_condition_at((1.0 - mu) * (1.0 + mu), exponents);
}

double pointwise_condition_closed(double mu, unsigned stride) {
  if (!(mu >= 0.0 && mu < 1.0)) throw OutsideDisc("mu must lie in [0, 1)");
  if (stride == 0) throw Error("stride must be positive");
  const double x = (1.0 - mu) * (1.0 + mu);
  if (mu == 0.0) return 1.0;
  return x / -std::expm1(static_cast<double>(stride) * std::log1p(-x));
}

namespace {

template <typename F>
PointwiseExtremes extremes(const AtomicMeasure& atoms, F value_at) {
  PointwiseExtremes e;
  e.inf = std::numeric_limits<double>::infinity();
  e.sup = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < atoms.size(); ++k) {
    const PointwiseValue v = value_at(atoms.locations()[k]);
    if (v.value < e.inf) {
      e.inf = v.value;
      e.argmin = k;
    }
    if (v.value > e.sup) {
      e.sup = v.value;
      e.argmax = k;
    }
    e.tail_bound = std::max(e.tail_bound, v.tail_bound);
  }
  if (atoms.size() == 0) e.inf = e.sup = 0.0;
  return e;
}

}  // namespace

PointwiseExtremes pointwise_extremes(const AtomicMeasure& atoms,
                                     const ExponentSet& exponents) {
  return extremes(atoms, [&](double mu) { return pointwise_condition(mu, exponents); });
}

PointwiseExtremes pointwise_extremes_closed(const AtomicMeasure& atoms, unsigned stride) {
  return extremes(atoms, [&](double mu) {
    return PointwiseValue{pointwise_condition_closed(mu, stride), 0.0, 0};
  });
}

ExpLogSum s_of_x(double x, double tolerance) {
  if (!(x > 0.0)) throw Error("s_of_x needs x > 0");
  if (!(tolerance > 0.0)) throw Error("tolerance must be positive");
  CompensatedSum sum;
  ExpLogSum out;
  for (std::size_t n = 2;; ++n) {
    const double ln = std::log(static_cast<double>(n));
    const double e = std::exp(-x * static_cast<double>(n) * ln);
    sum.add(e);
    // The remainder sum_{m > n} is at most the integral of exp(-x t log t)
    // from n, which is at most e / (x (1 + log n)).
    const double bound = e / (x * (1.0 + ln));
    if (bound < tolerance) {
      out.terms_used = n;
      out.tail_bound = bound;
      break;
    }
  }
  out.value = sum.value();
  return out;
}

CVector spectral_model_J(const CVector& x, const AtomicMeasure& nu, const CVector& b) {
  if (static_cast<std::size_t>(x.size()) != nu.size() ||
      static_cast<std::size_t>(b.size()) != nu.size()) {
    throw Error("J needs x, b and the measure to share one length");
  }
  CVector out(x.size());
  for (Eigen::Index k = 0; k < x.size(); ++k) {
    out[k] = x[k] * std::conj(b[k]) / nu.weights()[static_cast<std::size_t>(k)];
  }
  return out;
}

CVector model_unitary_U(const CVector& f, const AtomicMeasure& nu) {
  if (static_cast<std::size_t>(f.size()) != nu.size()) {
    throw Error("function length differs from the number of atoms");
  }
  CVector out(f.size());
  for (Eigen::Index k = 0; k < f.size(); ++k) {
    out[k] = std::sqrt(nu.weights()[static_cast<std::size_t>(k)]) * f[k];
  }
  return out;
}

CVector monomial_on_atoms(const AtomicMeasure& nu, double lambda) {
  CVector out(static_cast<Eigen::Index>(nu.size()));
  for (std::size_t k = 0; k < nu.size(); ++k) {
    out[static_cast<Eigen::Index>(k)] = std::pow(nu.locations()[k], lambda);
  }
  return out;
}

cplx l2nu_inner(const CVector& f, const CVector& g, const AtomicMeasure& nu) {
  if (static_cast<std::size_t>(f.size()) != nu.size() ||
      static_cast<std::size_t>(g.size()) != nu.size()) {
    throw Error("functions and measure differ in length");
  }
  cplx s{0.0, 0.0};
  for (Eigen::Index k = 0; k < f.size(); ++k) {
    s += nu.weights()[static_cast<std::size_t>(k)] * f[k] * std::conj(g[k]);
  }
  return s;
}

double l2nu_norm(const CVector& f, const AtomicMeasure& nu) {
  return std::sqrt(std::max(0.0, l2nu_inner(f, f, nu).real()));
}

CVector monomial_frame_vector(const AtomicMeasure& nu, double lambda) {
  return model_unitary_U(monomial_on_atoms(nu, lambda), nu);
}

OrbitFrameSystem monomial_system(const AtomicMeasure& nu,
                                 std::optional<ExponentSet> exponents, unsigned stride) {
  std::vector<double> b(nu.size());
  for (std::size_t k = 0; k < nu.size(); ++k) b[k] = std::sqrt(nu.weights()[k]);
  return make_orbit_system(nu.locations(), b, std::move(exponents), stride);
}

FrameBoundsReport frame_test_monomials(const AtomicMeasure& nu,
                                       const ExponentSet& exponents) {
  const PartialFrameOperator s = frame_operator_partial(monomial_system(nu, exponents));
  return frame_bounds(s.matrix, s.tail_bound, BoundsMethod::partial_sum);
}

FrameBoundsReport frame_test_monomials_closed(const AtomicMeasure& nu, unsigned stride) {
  const CMatrix s = frame_operator_closed(monomial_system(nu, std::nullopt, stride));
  return frame_bounds(s, 0.0, BoundsMethod::closed_form);
}

std::vector<SweepRow> pointwise_sweep(const std::vector<double>& xs,
                                      const ExponentSet& exponents) {
  std::vector<SweepRow> rows;
  rows.reserve(xs.size());
  for (const double x : xs) {
    const PointwiseValue v = pointwise_condition_at(x, exponents);
    rows.push_back({x, v.value, v.tail_bound});
  }
  return rows;
}

std::vector<SweepRow> xs_sweep(const std::vector<double>& xs, double tolerance) {
  std::vector<SweepRow> rows;
  rows.reserve(xs.size());
  for (const double x : xs) {
    const ExpLogSum s = s_of_x(x, tolerance);
    rows.push_back({x, x * s.value, x * s.tail_bound});
  }
  return rows;
}

}  // namespace framelab
