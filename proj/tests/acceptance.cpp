// Acceptance suite: one line per criterion, exit status 1 if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "framelab/disk.hpp"
#include "framelab/dynamical.hpp"
#include "framelab/exponents.hpp"
#include "framelab/hardy.hpp"
#include "framelab/interpolation.hpp"
#include "framelab/model.hpp"
#include "framelab/muntz.hpp"
#include "framelab/numeric.hpp"

using namespace framelab;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void check(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " FAILED[" << what << "]";
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<double> dyadic(int first, int last) {
  std::vector<double> mu;
  for (int k = first; k <= last; ++k) mu.push_back(1.0 - std::ldexp(1.0, -k));
  return mu;
}

std::vector<double> sqrt_defects(const std::vector<double>& mu) {
  std::vector<double> b;
  for (double m : mu) b.push_back(std::sqrt((1.0 - m) * (1.0 + m)));
  return b;
}

FrameBoundsReport closed_bounds(const std::vector<double>& mu, const std::vector<double>& b,
                                unsigned stride = 1) {
  return frame_bounds(frame_operator_closed(make_orbit_system(mu, b, std::nullopt, stride)));
}

// 1. Degree-63 section of the shift orbit of e_0.
void criterion_1(Outcome& o) {
  const auto t0 = std::chrono::steady_clock::now();
  const OrbitFrameReport r =
      multiplication_orbit_frame(LinearFractionalMap::identity(), RationalWeight::one(), 63);
  const double dt = seconds_since(t0);
  o.detail << "A=" << r.bounds.lower << " B=" << r.bounds.upper << " t=" << dt << "s";
  o.check(std::abs(r.bounds.lower - 1.0) <= 1e-10 && std::abs(r.bounds.upper - 1.0) <= 1e-10,
          "bounds (1,1)");
  o.check(dt < 1.0, "runtime");
}

// 2. Carleson orbit frame round trip.
void criterion_2(Outcome& o) {
  const auto mu = dyadic(0, 19);
  const OrbitFrameSystem sys = make_orbit_system(mu, sqrt_defects(mu));
  const CarlesonFrameReport rep = check_carleson_frame(sys);
  o.check(rep.all(), "conditions (1)-(4)");

  const FrameBoundsReport full = frame_bounds(frame_operator_closed(sys));
  o.check(full.lower > 0.0 && std::isfinite(full.upper), "0 < A, B < inf");

  const auto mu8 = dyadic(0, 7);
  const auto mu16 = dyadic(0, 15);
  const FrameBoundsReport b8 = closed_bounds(mu8, sqrt_defects(mu8));
  const FrameBoundsReport b16 = closed_bounds(mu16, sqrt_defects(mu16));
  const double drift_a = std::abs(b16.lower - b8.lower) / b8.lower;
  const double drift_b = std::abs(b16.upper - b8.upper) / b8.upper;
  o.detail << "delta=" << rep.carleson_constant << " A20=" << full.lower << " B20=" << full.upper
           << " A8=" << b8.lower << " A16=" << b16.lower << " B8=" << b8.upper
           << " B16=" << b16.upper;
  o.check(drift_a <= 1e-3 && drift_b <= 1e-3, "A,B stable to 3 digits K=8->16");

  std::vector<double> bad;
  for (double m : mu16) bad.push_back((1.0 - m) * (1.0 + m));
  const OrbitFrameSystem bad_sys = make_orbit_system(mu16, bad);
  const CarlesonFrameReport bad_rep = check_carleson_frame(bad_sys);
  const FrameBoundsReport bad_bounds = frame_bounds(frame_operator_closed(bad_sys));
  o.detail << " A16(bad)=" << bad_bounds.lower;
  o.check(!bad_rep.weights_comparable, "bad weights fail (4)");
  o.check(bad_bounds.lower < 1e-3, "bad weights A < 1e-3");
}

// 3. Closed form against partial sums over n <= 200.
void criterion_3(Outcome& o) {
  Rng rng(20240611);
  double worst = 0.0;
  double worst_tail = 0.0;
  int configs = 0;
  while (configs < 20) {
    std::vector<cplx> mu;
    std::vector<cplx> b;
    for (int k = 0; k < 8; ++k) {
      mu.push_back(std::polar(rng.uniform(0.0, 0.97), rng.uniform(0.0, 2.0 * M_PI)));
      b.push_back(rng.complex_normal());
    }
    std::vector<DiskPoint> pts(mu.begin(), mu.end());
    if (!is_interpolating(DiskSequence(pts), 1e-3).pass) continue;
    ++configs;
    const OrbitFrameSystem closed{DiagonalOperator(mu), GeneratorVector(b)};
    const OrbitFrameSystem partial(DiagonalOperator(mu), GeneratorVector(b),
                                   ExponentSet::naturals(200));
    const CMatrix s = frame_operator_closed(closed);
    const PartialFrameOperator p = frame_operator_partial(partial);
    const double roundoff = 1e-13 * std::max(1.0, s.cwiseAbs().maxCoeff());
    for (Eigen::Index j = 0; j < s.rows(); ++j) {
      for (Eigen::Index k = 0; k < s.cols(); ++k) {
        worst = std::max(worst, std::abs(s(j, k) - p.matrix(j, k)) - p.tail_bound - roundoff);
      }
    }
    worst_tail = std::max(worst_tail, p.tail_bound);
  }
  worst = std::max(worst, 0.0);
  o.detail << "configs=" << configs << " max_violation=" << worst << " max_tail=" << worst_tail;
  o.check(worst == 0.0, "violation 0");
}

// 4. Pointwise condition for the two sparse exponent sets.
void criterion_4(Outcome& o) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<double> xs = {1e-1, 1e-2, 1e-3};
  const ExponentSet sets[] = {ExponentSet::ceil_n_log_n(100000), ExponentSet::primes(100000)};
  for (const ExponentSet& set : sets) {
    const auto rows = pointwise_sweep(xs, set);
    const double ms = muntz_szasz_sum(set);
    o.detail << set.tag() << ": " << rows[0].value << " " << rows[1].value << " "
             << rows[2].value << " MS=" << ms;
    o.check(rows[0].value > rows[1].value && rows[1].value > rows[2].value,
            set.tag() + " decreasing");
    o.check(rows[2].value < 0.25, set.tag() + " < 0.25 at 1e-3");
    o.check(ms > 5.0, set.tag() + " MS sum > 5");
    o.detail << "; ";
  }
  const ExponentSet naturals = ExponentSet::naturals(100000);
  double worst = 0.0;
  for (double x : xs) {
    worst = std::max(worst, std::abs(pointwise_condition_at(x, naturals).value - 1.0));
    worst = std::max(worst, std::abs(pointwise_condition_closed(std::sqrt(1.0 - x), 1) - 1.0));
  }
  const double dt = seconds_since(t0);
  o.detail << "naturals dev=" << worst << " t=" << dt << "s";
  o.check(worst <= 1e-12, "naturals identically 1");
  o.check(dt < 10.0, "runtime");
}

// 5. x S(x) decay.
void criterion_5(Outcome& o) {
  const std::vector<double> xs = {1e-1, 1e-2, 1e-3, 1e-4};
  const auto rows = xs_sweep(xs, 1e-13);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const double bound = kXSBound / std::log(1.0 / rows[i].parameter);
    o.detail << rows[i].value << (i + 1 < rows.size() ? " " : "");
    o.check(rows[i].value <= bound, "C/log(1/x) bound");
    o.check(s_of_x(rows[i].parameter, 1e-13).tail_bound < 1e-12, "tail < 1e-12");
    if (i > 0) o.check(rows[i].value < rows[i - 1].value, "strictly decreasing");
  }
  o.detail << " C=" << kXSBound;
}

// 6. Spectral model pairings.
void criterion_6(Outcome& o) {
  Rng rng(6);
  const AtomicMeasure nu(dyadic(1, 16));
  CVector b(16);
  for (Eigen::Index k = 0; k < 16; ++k) {
    b[k] = std::polar(std::sqrt(nu.weights()[static_cast<std::size_t>(k)]),
                      rng.uniform(0.0, 2.0 * M_PI));
  }
  std::vector<cplx> bv(b.data(), b.data() + b.size());
  std::vector<cplx> mv(nu.locations().begin(), nu.locations().end());
  const OrbitFrameSystem sys{DiagonalOperator(mv), GeneratorVector(bv)};
  double worst = 0.0;
  for (int draw = 0; draw < 100; ++draw) {
    const CVector x = rng.complex_normal_vector(16);
    const double lambda = rng.uniform(0.0, 40.0);
    const cplx lhs = orbit_vector(sys, lambda).dot(x);  // <x, D^lambda b>
    const CVector jx = spectral_model_J(x, nu, b);
    const cplx mid = l2nu_inner(jx, monomial_on_atoms(nu, lambda), nu);
    const cplx rhs = monomial_frame_vector(nu, lambda).dot(model_unitary_U(jx, nu));
    const double scale = std::max(1.0, std::abs(lhs));
    worst = std::max({worst, std::abs(lhs - mid) / scale, std::abs(lhs - rhs) / scale});
  }
  o.detail << "max_rel_dev=" << worst;
  o.check(worst <= 1e-10, "pairing identity");
}

// 7. Invertibility against the orbit frame proxy.
void criterion_7(Outcome& o) {
  const cplx p2(0.3, 0.4);
  const std::vector<std::pair<std::string, LinearFractionalMap>> symbols = {
      {"rotation", LinearFractionalMap::rotation(std::polar(1.0, 0.7))},
      {"aut(0.5)", LinearFractionalMap::automorphism(0.5)},
      {"aut(0.3+0.4i)", LinearFractionalMap::automorphism(p2, std::polar(1.0, 0.4))},
      {"z/2", LinearFractionalMap(0.5, 0.0, 0.0, 1.0)},
  };
  const std::vector<std::pair<std::string, RationalWeight>> weights = {
      {"1", RationalWeight::one()},
      {"K_0.4", RationalWeight::kernel(0.4)},
      {"1-z", RationalWeight::polynomial({1.0, -1.0})},
  };
  int agree = 0;
  for (const auto& [sn, phi] : symbols) {
    for (const auto& [wn, u] : weights) {
      const OrbitFrameReport r = multiplication_orbit_frame(phi, u, 128);
      agree += r.agrees ? 1 : 0;
      if (!r.agrees) o.detail << "disagree " << sn << "/" << wn << " A=" << r.bounds.lower << "; ";
    }
  }
  o.detail << "agree=" << agree << "/12";
  o.check(agree == 12, "all 12 agree");
}

// 8. Bourdon-Narayan pairs and the isometry condition.
void criterion_8(Outcome& o) {
  struct Pair {
    cplx p, lambda, c;
  };
  const std::vector<Pair> bn = {{0.5, 1.0, 1.0},
                                {cplx(0.3, 0.4), std::polar(1.0, 0.4), std::polar(1.0, 1.0)},
                                {0.4, 1.0, -1.0}};
  for (const Pair& q : bn) {
    const auto phi = LinearFractionalMap::automorphism(q.p, q.lambda);
    const auto u = RationalWeight::bourdon_narayan(q.p, q.c);
    double prev = 0.0;
    for (std::size_t d : {16, 32, 64}) {
      const UnitarityReport r = unitarity_check(wco_matrix(phi, u, d));
      o.check(r.is_bn_form, "BN form detected");
      if (d > 16) o.check(r.truncation_defect < 0.1 * prev || r.truncation_defect < 1e-13,
                          "geometric decay");
      if (d == 64) {
        o.check(r.truncation_defect < 1e-6, "defect < 1e-6 at D=64");
        o.detail << "p=" << q.p << " defect64=" << r.truncation_defect << "; ";
      }
      prev = r.truncation_defect;
    }
    const IsometryReport iso = isometry_rkh_check(wco_matrix(phi, u, 64));
    o.check(iso.forces_unitary && iso.max_violation < 1e-10, "BN isometry fit");
  }
  const std::vector<std::pair<LinearFractionalMap, RationalWeight>> non_bn = {
      {LinearFractionalMap::automorphism(0.5), RationalWeight::one()},
      {LinearFractionalMap::automorphism(0.5), RationalWeight::kernel(0.4)},
      {LinearFractionalMap::automorphism(cplx(0.3, 0.4), std::polar(1.0, 0.4)),
       RationalWeight::bourdon_narayan(cplx(-0.3, 0.4), 1.0)},
  };
  double least = INFINITY;
  for (const auto& [phi, u] : non_bn) {
    const auto op = wco_matrix(phi, u, 64);
    const IsometryReport iso = isometry_rkh_check(op);
    least = std::min(least, iso.max_violation);
    o.check(iso.max_violation >= 1e-2, "non-BN violation >= 1e-2");
    o.check(!iso.forces_unitary && !unitarity_check(op).is_bn_form, "non-BN not forced");
  }
  o.detail << "min non-BN violation=" << least;
}

// 9. Cowen adjoint factorisation on the degree-64 section.
void criterion_9(Outcome& o) {
  const std::vector<std::pair<std::string, LinearFractionalMap>> symbols = {
      {"(z+1/2)/(1+z/2)", LinearFractionalMap(1.0, 0.5, 0.5, 1.0)},
      {"aut(0.3+0.4i)", LinearFractionalMap::automorphism(cplx(0.3, 0.4), std::polar(1.0, 0.4))},
      {"z/2", LinearFractionalMap(0.5, 0.0, 0.0, 1.0)},
      {"1/(2-z)", LinearFractionalMap(0.0, 1.0, -1.0, 2.0)},
      {"(z+1)/3", LinearFractionalMap(1.0, 1.0, 0.0, 3.0)},
  };
  int automorphisms = 0;
  for (const auto& [name, phi] : symbols) {
    const double d = cowen_defect(phi, 64);
    automorphisms += phi.is_automorphism() ? 1 : 0;
    o.detail << name << ":" << d << " ";
    o.check(d < 1e-8, name + " defect");
  }
  o.check(automorphisms >= 1 && automorphisms < 5, "mix of automorphisms");
}

// 10. Model space with zeros {0.3, 0.6, 0.5 (x2)}.
void criterion_10(Outcome& o) {
  const FiniteBlaschke theta({{0.3, 1}, {0.6, 1}, {0.5, 2}});
  const FiniteBlaschkeModel model = model_basis(theta, 128);
  const SpectrumReport spec = spectrum_check(model);
  o.detail << "eig_mismatch=" << spec.max_mismatch;
  o.check(spec.max_mismatch <= 1e-8, "spectrum");

  const auto blocks = jordan_structure(model);
  bool ok = blocks.size() == 3;
  for (const auto& b : blocks) {
    ok = ok && b.block_sizes.size() == 1 &&
         b.block_sizes[0] == static_cast<std::size_t>(b.multiplicity) && b.eigenspace_dim == 1;
  }
  o.check(ok, "Jordan blocks {0.3:1, 0.6:1, 0.5:2}");

  Rng rng(10);
  const double parseval = parseval_orbit_check(model, rng.complex_normal_vector(4));
  const double frame = parseval_frame_operator_defect(model, 200);
  o.detail << " parseval=" << parseval << " frame_op=" << frame;
  o.check(parseval < 1e-8, "Parseval orbit");
  o.check(frame < 1e-6, "frame operator at n_max=200");
}

// 11. Interpolation and Riesz tests.
void criterion_11(Outcome& o) {
  const auto z = dyadic(0, 9);
  std::vector<double> w;
  std::vector<cplx> u;
  for (double zk : z) {
    w.push_back(std::sqrt(1.0 - zk));
    u.push_back(std::sqrt(1.0 - zk));
  }
  const DiskSequence nodes = DiskSequence::from_values(std::span<const double>(z));
  const McPhailReport mc = mcphail_check(nodes, w);
  o.check(mc.pass, "McPhail weights");
  Rng rng(11);
  std::vector<cplx> c;
  for (std::size_t k = 0; k < z.size(); ++k) c.push_back(rng.complex_normal());
  const InterpolantResult res = min_norm_interpolant(InterpolationProblem::scalar(nodes, u, c), 64);
  o.detail << "residual=" << res.residual;
  o.check(res.residual < 1e-8, "min-norm residual");

  auto family = [](const std::vector<double>& pts) {
    std::vector<DiskPoint> dp(pts.begin(), pts.end());
    return KernelFamily::scalar(dp, std::vector<cplx>(pts.size(), 1.0));
  };
  const RieszReport carl = riesz_basic_test(family(dyadic(0, 4)), 64);
  std::vector<double> harmonic;
  for (int k = 0; k <= 30; ++k) harmonic.push_back(1.0 - 1.0 / (k + 1.0));
  const RieszReport harm = riesz_basic_test(family(harmonic), 64);
  o.detail << " cond(carleson)=" << carl.condition << " cond(harmonic)=" << harm.condition;
  o.check(carl.condition < 1e4, "Carleson condition < 1e4");
  o.check(harm.condition > 1e6, "harmonic condition > 1e6");
}

// 12. Every-N-th subsampling of the criterion 2 system.
void criterion_12(Outcome& o) {
  const auto mu = dyadic(0, 19);
  const OrbitFrameSystem sys = make_orbit_system(mu, sqrt_defects(mu));
  double worst = 0.0;
  for (unsigned n : {2U, 3U, 5U}) {
    const FrameBoundsReport b = frame_bounds(frame_operator_closed(subsample_orbit(sys, n)));
    o.detail << "A(N=" << n << ")=" << b.lower << " ";
    o.check(b.lower > 0.0, "A > 0");
    for (double m : mu) {
      if (m == 0.0) continue;
      const long double ml = m;
      const long double direct = (1.0L - ml * ml) / (1.0L - std::pow(ml, 2.0L * n));
      worst = std::max(worst, std::abs(pointwise_condition_closed(m, n) -
                                       static_cast<double>(direct)));
    }
  }
  o.detail << "pointwise dev=" << worst;
  o.check(worst <= 1e-12, "closed pointwise value");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria = {
      {"parseval-shift-orbit", criterion_1},   {"carleson-frame-round-trip", criterion_2},
      {"closed-vs-partial-sums", criterion_3}, {"sparse-exponent-pointwise", criterion_4},
      {"x-s-of-x-decay", criterion_5},         {"spectral-model-pairing", criterion_6},
      {"invertibility-vs-orbit", criterion_7}, {"bourdon-narayan-isometry", criterion_8},
      {"cowen-factorisation", criterion_9},    {"model-space", criterion_10},
      {"interpolation-riesz", criterion_11},   {"subsampling", criterion_12},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " EXCEPTION: " << e.what();
    }
    failed += o.pass ? 0 : 1;
    std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.str().c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
