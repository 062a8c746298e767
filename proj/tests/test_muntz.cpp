#include <cmath>
#include <numeric>
#include <vector>

#include "doctest.h"
#include "framelab/errors.hpp"
#include "framelab/exponents.hpp"
#include "framelab/muntz.hpp"
#include "framelab/numeric.hpp"
#include "oracles.hpp"

using namespace framelab;

namespace {

std::vector<double> values(const ExponentSet& s) { return {s.values().begin(), s.values().end()}; }

std::vector<double> dyadic(int first, int last) {
  std::vector<double> mu;
  for (int k = first; k <= last; ++k) mu.push_back(1.0 - std::ldexp(1.0, -k));
  return mu;
}

// (1-mu^2) sum mu^(2 lambda) in long double over the whole list.
double brute_pointwise(double x, const std::vector<double>& lambdas) {
  long double s = 0.0L;
  const long double lr = std::log1p(-static_cast<long double>(x));
  for (double l : lambdas) s += std::exp(l * lr);
  return static_cast<double>(x * s);
}

}  // namespace

TEST_SUITE("exponents") {

TEST_CASE("generator examples") {
  CHECK(values(ExponentSet::ceil_n_log_n(5)) == std::vector<double>{2, 4, 6, 9});
  CHECK(values(ExponentSet::primes(5)) == std::vector<double>{3, 5, 7, 11});
  CHECK(values(ExponentSet::naturals(3)) == std::vector<double>{0, 1, 2, 3});
  CHECK(values(ExponentSet::every_nth(3, 10)) == std::vector<double>{0, 3, 6, 9});
  CHECK(ExponentSet::every_nth(3, 10).next_dropped() == 12.0);
  CHECK(ExponentSet::naturals(3).next_dropped() == 4.0);
  CHECK(ExponentSet::primes(5).next_dropped() == 13.0);
  CHECK(ExponentSet::ceil_n_log_n(5).next_dropped() == std::ceil(6 * std::log(6.0)));
  CHECK_THROWS_AS(ExponentSet::primes(1), Error);
  CHECK_THROWS_AS(ExponentSet::explicit_values({1.0, 1.0}), Error);
  CHECK_THROWS_AS(ExponentSet::explicit_values({-1.0}), Error);
  CHECK_FALSE(ExponentSet::explicit_values({0.5, 2.0}).is_truncation());
  CHECK_FALSE(ExponentSet::explicit_values({0.5, 2.0}).all_integers());
  CHECK(ExponentSet::primes(10).all_integers());
}

TEST_CASE("sieve against trial division") {
  const auto ps = primes_up_to(5000);
  std::size_t count = 0;
  for (std::uint64_t n = 0; n <= 5000; ++n) {
    if (oracle::is_prime(n)) {
      REQUIRE(count < ps.size());
      CHECK(ps[count] == n);
      ++count;
    }
  }
  CHECK(count == ps.size());
  CHECK(first_primes(10000).back() == 104729);
}

TEST_CASE("sparse sets dominate n log n and increase strictly") {
  const std::size_t n_max = 20000;
  for (const ExponentSet& set : {ExponentSet::ceil_n_log_n(n_max), ExponentSet::primes(n_max)}) {
    const auto v = values(set);
    REQUIRE(v.size() == n_max - 1);
    for (std::size_t i = 0; i < v.size(); ++i) {
      const double n = static_cast<double>(i + 2);
      CHECK(v[i] >= n * std::log(n));
      if (i > 0) CHECK(v[i] - v[i - 1] >= set.min_gap());
    }
    CHECK(set.next_dropped() - v.back() >= set.min_gap());
  }
}

TEST_CASE("generator names round trip") {
  for (auto g : {ExponentGenerator::naturals, ExponentGenerator::every_nth,
                 ExponentGenerator::ceil_n_log_n, ExponentGenerator::primes}) {
    CHECK(parse_exponent_generator(to_string(g)) == g);
  }
  CHECK_THROWS_AS(parse_exponent_generator("squares"), Error);
  CHECK(make_exponent_set(ExponentGenerator::every_nth, 9, 3).size() == 4);
}

TEST_CASE("geometric tail") {
  CHECK(geometric_tail(0.5, 1.0, 1.0) == doctest::Approx(1.0));
  CHECK(geometric_tail(0.0, 3.0, 1.0) == 0.0);
  CHECK(std::isinf(geometric_tail(1.0, 3.0, 1.0)));
  long double s = 0.0L;
  for (int i = 0; i < 100000; ++i) s += std::pow(0.999L, 7.0L + 3.0L * i);
  CHECK(geometric_tail(0.999, 7.0, 3.0) == doctest::Approx(static_cast<double>(s)).epsilon(1e-12));
}

}

TEST_SUITE("muntz") {

TEST_CASE("Muntz-Szasz partial sums") {
  CHECK(muntz_szasz_sum(ExponentSet::explicit_values({1, 2, 4})) == doctest::Approx(1.75));
  std::vector<double> pow2;
  for (int n = 0; n <= 20; ++n) pow2.push_back(std::ldexp(1.0, n));
  CHECK(muntz_szasz_sum(ExponentSet::explicit_values(pow2)) < 2.0);
  CHECK(muntz_szasz_sum(ExponentSet::explicit_values(std::vector<double>(pow2.begin() + 1, pow2.end()))) < 1.0);
  // H_10000, zero exponent excluded.
  CHECK(muntz_szasz_sum(ExponentSet::naturals(10000)) ==
        doctest::Approx(9.787606036044382).epsilon(1e-14));
}

TEST_CASE("pointwise condition closed forms") {
  for (double mu : {0.1, 0.5, 0.9, 0.999, 1.0 - 1e-9}) {
    CHECK(pointwise_condition_closed(mu, 1) == doctest::Approx(1.0).epsilon(1e-14));
  }
  Rng rng(9);
  for (int trial = 0; trial < 200; ++trial) {
    const unsigned n = 1 + static_cast<unsigned>(rng.uniform() * 7);
    const double a = rng.uniform(0.01, 0.99);
    const double b = rng.uniform(0.01, 0.99);
    const double va = pointwise_condition_closed(a, n);
    CHECK(va >= 1.0 / n);
    CHECK(va <= 1.0 + 1e-15);
    if (a < b) CHECK(va >= pointwise_condition_closed(b, n) - 1e-15);
  }
  CHECK(pointwise_condition_closed(1.0 - 1e-12, 4) == doctest::Approx(0.25).epsilon(1e-9));
}

TEST_CASE("pointwise condition over finite sets") {
  const ExponentSet nat = ExponentSet::naturals(200000);
  CHECK(pointwise_condition(0.9, nat).value == doctest::Approx(1.0).epsilon(1e-14));
  const ExponentSet every3 = ExponentSet::every_nth(3, 200000);
  CHECK(pointwise_condition(0.7, every3).value ==
        doctest::Approx(pointwise_condition_closed(0.7, 3)).epsilon(1e-13));

  const ExponentSet cl = ExponentSet::ceil_n_log_n(100000);
  const auto all = values(cl);
  for (double x : {1e-1, 1e-2, 1e-3}) {
    const PointwiseValue v = pointwise_condition_at(x, cl);
    CHECK(v.value == doctest::Approx(brute_pointwise(x, all)).epsilon(1e-13));
    CHECK(v.tail_bound < 1e-13);
  }
  // Frozen from a fsum over the full list.
  CHECK(pointwise_condition_at(1e-3, cl).value == doctest::Approx(0.17950).epsilon(1e-4));
  CHECK(pointwise_condition_at(1e-3, ExponentSet::primes(100000)).value ==
        doctest::Approx(0.15905).epsilon(1e-4));
  CHECK(pointwise_condition_at(1e-3, cl).value < 0.25);

  const ExponentSet fin = ExponentSet::explicit_values({0.5, 1.5});
  const PointwiseValue e = pointwise_condition(0.5, fin);
  CHECK(e.value == doctest::Approx(0.75 * (std::pow(0.25, 0.5) + std::pow(0.25, 1.5))));
  CHECK(e.tail_bound == 0.0);
  CHECK_THROWS_AS(pointwise_condition(1.0, fin), OutsideDisc);
}

TEST_CASE("pointwise extremes") {
  const AtomicMeasure atoms(dyadic(1, 19));
  const PointwiseExtremes nat =
      pointwise_extremes(AtomicMeasure(dyadic(1, 15)), ExponentSet::naturals(2000000));
  CHECK(nat.inf == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(nat.sup == doctest::Approx(1.0).epsilon(1e-9));

  const PointwiseExtremes two = pointwise_extremes_closed(atoms, 2);
  CHECK(two.inf >= 0.5);
  CHECK(two.sup <= 1.0);
  CHECK(two.argmin == 18);

  // Frozen from a direct sum: k = 10, 15, 19 give 0.1987, 0.1253, 0.0943.
  const ExponentSet cl = ExponentSet::ceil_n_log_n(100000);
  CHECK(pointwise_condition(1.0 - std::ldexp(1.0, -10), cl).value == doctest::Approx(0.1987).epsilon(1e-3));
  CHECK(pointwise_condition(1.0 - std::ldexp(1.0, -15), cl).value == doctest::Approx(0.1253).epsilon(1e-3));
  CHECK(pointwise_condition(1.0 - std::ldexp(1.0, -19), cl).value == doctest::Approx(0.0943).epsilon(1e-3));
  // The smallest exponent is 2, so the first atom is small as well.
  const PointwiseExtremes sparse = pointwise_extremes(atoms, cl);
  CHECK(sparse.argmin == 0);
  CHECK(sparse.inf == doctest::Approx(brute_pointwise(0.75, values(cl))).epsilon(1e-13));

  CHECK_THROWS_AS(AtomicMeasure({0.5, 0.5}), DuplicatePoint);
  CHECK_THROWS_AS(AtomicMeasure({0.0}), OutsideDisc);
}

TEST_CASE("s of x") {
  const ExpLogSum s10 = s_of_x(10.0, 1e-15);
  const double first = std::exp(-20.0 * std::log(2.0));
  CHECK(s10.value > first);
  CHECK(s10.value < 2.0 * first);
  CHECK(s10.value == doctest::Approx(9.536743212631858e-7).epsilon(1e-12));
  CHECK(s_of_x(0.01, 1e-12).value > s_of_x(0.02, 1e-12).value);

  // Frozen values of x S(x) from a direct 2e6-term fsum.
  const double frozen[][2] = {{1e-1, 0.38731}, {1e-2, 0.26281}, {1e-3, 0.17966}, {1e-4, 0.13254}};
  for (const auto& row : frozen) {
    const ExpLogSum s = s_of_x(row[0], 1e-13);
    CHECK(row[0] * s.value == doctest::Approx(row[1]).epsilon(1e-4));
    CHECK(s.tail_bound < 1e-13);
  }
  for (double x = 1e-6; x < 0.25; x *= 1.7) {
    CHECK(x * s_of_x(x, 1e-10).value <= kXSBound / std::log(1.0 / x));
  }
  CHECK_THROWS_AS(s_of_x(0.0, 1e-10), Error);
}

TEST_CASE("spectral model and unitary identification") {
  const AtomicMeasure nu(dyadic(1, 8));
  CVector b(8);
  for (Eigen::Index k = 0; k < 8; ++k) b[k] = std::sqrt(nu.weights()[static_cast<std::size_t>(k)]);
  CVector e0 = CVector::Zero(8);
  e0[0] = 1.0;
  const CVector j0 = spectral_model_J(e0, nu, b);
  CHECK(j0[0].real() == doctest::Approx(1.0 / std::sqrt(nu.weights()[0])));
  CHECK(j0.tail(7).norm() == 0.0);

  CVector ind = CVector::Zero(8);
  ind[3] = 1.0 / std::sqrt(nu.weights()[3]);
  const CVector u = model_unitary_U(ind, nu);
  CHECK(std::abs(u[3] - 1.0) < 1e-15);

  Rng rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    const CVector x = rng.complex_normal_vector(8);
    const CVector jx = spectral_model_J(x, nu, b);
    double expected = 0.0;
    for (Eigen::Index k = 0; k < 8; ++k) {
      expected += std::norm(b[k]) / nu.weights()[static_cast<std::size_t>(k)] * std::norm(x[k]);
    }
    CHECK(l2nu_norm(jx, nu) * l2nu_norm(jx, nu) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(model_unitary_U(jx, nu).norm() == doctest::Approx(l2nu_norm(jx, nu)).epsilon(1e-12));

    // <x, D^2.5 b> against <Jx, t^2.5>, each summed by hand.
    cplx lhs = 0.0;
    cplx rhs = 0.0;
    for (std::size_t k = 0; k < 8; ++k) {
      const auto i = static_cast<Eigen::Index>(k);
      const double m = nu.locations()[k];
      lhs += x[i] * std::conj(std::pow(m, 2.5) * b[i]);
      rhs += nu.weights()[k] * (x[i] * std::conj(b[i]) / nu.weights()[k]) * std::pow(m, 2.5);
    }
    CHECK(std::abs(lhs - rhs) < 1e-12);
    CHECK(std::abs(l2nu_inner(jx, monomial_on_atoms(nu, 2.5), nu) - lhs) < 1e-12);
  }
}

TEST_CASE("monomial frame tests") {
  const AtomicMeasure single({0.6});
  const FrameBoundsReport r = frame_test_monomials(single, ExponentSet::explicit_values({0.0}));
  CHECK(r.lower == doctest::Approx(0.64));
  CHECK(r.upper == doctest::Approx(0.64));

  const AtomicMeasure eight(dyadic(1, 8));
  const FrameBoundsReport closed = frame_test_monomials_closed(eight);
  CHECK(closed.lower > 0.0);
  CHECK(closed.lower == doctest::Approx(1.89e-4).epsilon(1e-2));

  const AtomicMeasure twenty(dyadic(1, 20));
  const FrameBoundsReport sparse = frame_test_monomials(twenty, ExponentSet::ceil_n_log_n(100000));
  CHECK(sparse.lower < 0.05 * sparse.upper);
  CHECK(sparse.method == BoundsMethod::partial_sum);

  // Rayleigh quotient at e_k: the pointwise value at atom k is S_kk, so it
  // lies between the frame bounds.
  const ExponentSet cl = ExponentSet::ceil_n_log_n(2000);
  const AtomicMeasure atoms(dyadic(1, 10));
  const FrameBoundsReport fb = frame_test_monomials(atoms, cl);
  const PointwiseExtremes px = pointwise_extremes(atoms, cl);
  CHECK(px.inf >= fb.lower * (1.0 - 1e-9));
  CHECK(px.sup <= fb.upper * (1.0 + 1e-9));
}

TEST_CASE("sweeps") {
  const auto rows = pointwise_sweep({1e-1, 1e-2, 1e-3}, ExponentSet::ceil_n_log_n(100000));
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].value > rows[1].value);
  CHECK(rows[1].value > rows[2].value);
  const auto lem = xs_sweep({1e-1, 1e-2}, 1e-12);
  CHECK(lem[0].parameter == 1e-1);
  CHECK(lem[1].value < lem[0].value);
}

}
