#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cli_support.hpp"
#include "framelab/disk.hpp"
#include "framelab/dynamical.hpp"
#include "framelab/errors.hpp"
#include "framelab/hardy.hpp"
#include "framelab/interpolation.hpp"
#include "framelab/io.hpp"
#include "framelab/model.hpp"
#include "framelab/muntz.hpp"
#include "framelab/numeric.hpp"

using namespace framelab;
using framelab::cli::Output;
using framelab::cli::UsageError;
using nlohmann::json;

namespace {

struct Common {
  std::string config;
  std::string out = "-";
  std::string format;
  std::uint64_t seed = 0;
  CLI::Option* seed_opt = nullptr;
  std::string expect;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--config", c.config, "JSON file with the same fields as the long options");
  sub->add_option("--out", c.out, "Output path ('-' for stdout)");
  sub->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  c.seed_opt = sub->add_option("--seed", c.seed, "Seed for randomized data");
  sub->add_option("--expect", c.expect, "Exit 2 unless the verdict matches")
      ->check(CLI::IsMember({"pass", "fail"}));
}

Rng require_rng(const Common& c, const std::string& why) {
  if (c.seed_opt->count() == 0) throw UsageError("--seed is required: " + why);
  return Rng(c.seed);
}

std::string num(double x) { return io::format_double(x); }
std::string num(std::size_t x) { return std::to_string(x); }
std::string flag(bool b) { return b ? "1" : "0"; }

json complex_json(cplx z) { return io::complex_pair(z); }

// dyadic:K -> 1 - 2^-k; harmonic:K -> 1 - 1/(k+1); random:K (seeded).
std::vector<cplx> generate_points(const std::string& spec, const Common& c) {
  const auto [kind, arg] = cli::split_kind(spec);
  const std::size_t count = cli::parse_count(arg, "sequence length");
  if (count == 0) throw UsageError("sequence length must be positive");
  std::vector<cplx> z;
  if (kind == "dyadic") {
    for (std::size_t k = 1; k <= count; ++k) z.emplace_back(1.0 - std::ldexp(1.0, -static_cast<int>(k)), 0.0);
  } else if (kind == "harmonic") {
    for (std::size_t k = 1; k <= count; ++k) z.emplace_back(1.0 - 1.0 / (static_cast<double>(k) + 1.0), 0.0);
  } else if (kind == "random") {
    Rng rng = require_rng(c, "random sequences");
    for (std::size_t k = 0; k < count; ++k) {
      z.push_back(std::polar(rng.uniform(0.0, 0.99), rng.uniform(0.0, 2.0 * std::numbers::pi)));
    }
  } else {
    throw UsageError("unknown sequence '" + kind + "' (dyadic:K, harmonic:K, random:K)");
  }
  return z;
}

std::vector<std::string> split_checks(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (const char ch : text + ",") {
    if (ch == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else if (ch != ' ') {
      cur.push_back(ch);
    }
  }
  if (out.empty()) throw UsageError("--check needs at least one check");
  return out;
}

// ---------------------------------------------------------------- carleson

struct CarlesonOpts {
  std::string points;
  std::string sequence;
  double delta_min = 1e-3;
};

Output run_carleson(const CarlesonOpts& o, const Common& c) {
  if (o.points.empty() == o.sequence.empty()) throw UsageError("give exactly one of --points, --sequence");
  const std::vector<cplx> z = o.points.empty() ? generate_points(o.sequence, c) : cli::parse_complex_list(o.points);
  const DiskSequence seq = DiskSequence::from_values(std::span<const cplx>(z));
  const CarlesonReport r = is_interpolating(seq, o.delta_min);

  Output out;
  out.command = "carleson";
  out.parameters = {{"points", o.points}, {"sequence", o.sequence}, {"delta_min", o.delta_min}};
  out.table.header = {"index", "re", "im", "log_product", "product", "tolerance"};
  for (std::size_t n = 0; n < seq.size(); ++n) {
    CompensatedSum s;
    for (std::size_t k = 0; k < seq.size(); ++k) {
      if (k != n) s.add(log_pseudo_hyperbolic(seq[n], seq[k]));
    }
    const double lp = s.value();
    out.table.add_row({num(n), num(z[n].real()), num(z[n].imag()), num(lp),
                       num(lp < kLogUnderflow ? 0.0 : std::exp(lp)), num(kDuplicateTolerance)});
  }
  out.report = {{"size", seq.size()},
                {"constant", io::number(r.constant)},
                {"log_constant", io::number(r.log_constant)},
                {"argmin_index", r.argmin_index},
                {"delta_min", o.delta_min},
                {"pass", r.pass}};
  out.verdict = r.pass;
  return out;
}

// ------------------------------------------------------------ frame-bounds

struct FrameOpts {
  std::string system;
  std::string eigenvalues;
  std::string generator;
  std::string method = "closed";
  std::string exponents = "naturals";
  std::size_t n_max = 2000;
  unsigned stride = 1;
  double lower_gate = 1e-12;
  std::string matrix_out;
};

OrbitFrameSystem build_system(const FrameOpts& o, const Common& c) {
  std::vector<cplx> mu;
  std::vector<cplx> b;
  if (!o.system.empty()) {
    if (!o.eigenvalues.empty() || !o.generator.empty()) {
      throw UsageError("--system excludes --eigenvalues/--generator");
    }
    const auto [kind, arg] = cli::split_kind(o.system);
    if (kind == "single") {
      const double m = cli::parse_real(arg);
      mu = {m};
      b = {std::sqrt((1.0 - m) * (1.0 + m))};
    } else if (kind == "carleson" || kind == "carleson-bad") {
      const std::size_t k_max = cli::parse_count(arg, "system size");
      for (std::size_t k = 1; k <= k_max; ++k) {
        const double m = 1.0 - std::ldexp(1.0, -static_cast<int>(k));
        const double d = (1.0 - m) * (1.0 + m);
        mu.emplace_back(m);
        b.emplace_back(kind == "carleson" ? std::sqrt(d) : d);
      }
    } else if (kind == "random") {
      const std::size_t k_max = cli::parse_count(arg, "system size");
      Rng rng = require_rng(c, "random systems");
      for (std::size_t k = 0; k < k_max; ++k) {
        const double r = rng.uniform(0.05, 0.95);
        mu.push_back(std::polar(r, rng.uniform(0.0, 2.0 * std::numbers::pi)));
        b.emplace_back(std::sqrt(1.0 - r * r) * rng.uniform(0.5, 2.0));
      }
    } else {
      throw UsageError("unknown system '" + kind + "' (single:MU, carleson:K, carleson-bad:K, random:K)");
    }
  } else {
    if (o.eigenvalues.empty() || o.generator.empty()) {
      throw UsageError("give --system or both --eigenvalues and --generator");
    }
    mu = cli::parse_complex_list(o.eigenvalues);
    b = cli::parse_complex_list(o.generator);
  }
  std::optional<ExponentSet> exps;
  if (o.method == "partial") {
    const auto [gen_name, gen_arg] = cli::split_kind(o.exponents);
    const ExponentGenerator gen = parse_exponent_generator(gen_name);
    const std::size_t step = gen_arg.empty() ? 1 : cli::parse_count(gen_arg, "exponent stride");
    exps = make_exponent_set(gen, o.n_max, step);
  }
  OrbitFrameSystem sys{DiagonalOperator(mu), GeneratorVector(b), exps};
  return o.stride == 1 ? sys : subsample_orbit(sys, o.stride);
}

void write_matrix(const std::string& path, const CMatrix& m) {
  std::ofstream f(path);
  if (!f) throw UsageError(path + ": cannot write matrix");
  if (path.size() >= 4 && path.substr(path.size() - 4) == ".csv") {
    io::write_matrix_csv(f, m);
  } else {
    f << io::matrix_to_json(m).dump() << '\n';
  }
}

Output run_frame_bounds(const FrameOpts& o, const Common& c) {
  if (o.stride == 0) throw UsageError("--stride must be positive");
  const OrbitFrameSystem sys = build_system(o, c);
  FrameBoundsReport fb;
  CMatrix s;
  if (o.method == "closed") {
    s = frame_operator_closed(sys);
    fb = frame_bounds(s);
  } else {
    const PartialFrameOperator p = frame_operator_partial(sys);
    s = p.matrix;
    fb = frame_bounds(s, p.tail_bound, BoundsMethod::partial_sum);
  }
  if (!o.matrix_out.empty()) write_matrix(o.matrix_out, s);
  const CarlesonFrameReport cf = check_carleson_frame(sys);

  Output out;
  out.command = "frame-bounds";
  out.parameters = {{"system", o.system},       {"eigenvalues", o.eigenvalues},
                    {"generator", o.generator}, {"method", o.method},
                    {"exponents", o.exponents}, {"n_max", o.n_max},
                    {"stride", o.stride},       {"lower_gate", o.lower_gate}};
  out.table.header = {"dimension", "stride", "lower", "upper", "tail_bound"};
  out.table.add_row({num(sys.dimension()), num(static_cast<std::size_t>(o.stride)), num(fb.lower),
                     num(fb.upper), num(fb.truncation_tail)});
  out.report = {{"method", to_string(fb.method)},
                {"lower", io::number(fb.lower)},
                {"upper", io::number(fb.upper)},
                {"tail_bound", io::number(fb.truncation_tail)},
                {"carleson_frame",
                 {{"inside_disc", cf.inside_disc},
                  {"approaches_boundary", cf.approaches_boundary},
                  {"carleson", cf.carleson},
                  {"weights_comparable", cf.weights_comparable},
                  {"carleson_constant", io::number(cf.carleson_constant)},
                  {"ratio_low", io::number(cf.ratio_low)},
                  {"ratio_high", io::number(cf.ratio_high)},
                  {"boundary_note", cf.boundary_note}}}};
  out.verdict = fb.lower > o.lower_gate;
  return out;
}

// ------------------------------------------------------------- muntz-sweep

struct SweepOpts {
  std::string exponents = "ceil_n_log_n";
  std::size_t n_max = 100000;
  std::string x;
  std::string k;
  std::string quantity = "pointwise";
  double tolerance = 1e-13;
};

Output run_muntz_sweep(const SweepOpts& o, const Common&) {
  if (!o.x.empty() && !o.k.empty()) throw UsageError("give at most one of --x, --k");
  Output out;
  out.command = "muntz-sweep";
  out.parameters = {{"exponents", o.exponents}, {"n_max", o.n_max}, {"x", o.x},
                    {"k", o.k},                 {"quantity", o.quantity}, {"tolerance", o.tolerance}};
  std::vector<SweepRow> rows;
  if (o.quantity == "xs") {
    if (!o.k.empty()) throw UsageError("--k applies to the pointwise quantity only");
    const std::vector<double> xs = o.x.empty() ? std::vector<double>{1e-1, 1e-2, 1e-3, 1e-4} : cli::parse_real_list(o.x);
    rows = xs_sweep(xs, o.tolerance);
    out.table.header = {"x", "x_s_of_x", "tail_bound"};
  } else {
    const auto [gen_name, gen_arg] = cli::split_kind(o.exponents);
    const std::size_t step = gen_arg.empty() ? 1 : cli::parse_count(gen_arg, "exponent stride");
    const ExponentSet exps = make_exponent_set(parse_exponent_generator(gen_name), o.n_max, step);
    out.report["muntz_szasz_sum"] = io::number(muntz_szasz_sum(exps));
    out.report["exponent_count"] = exps.size();
    if (!o.k.empty()) {
      for (const double k : cli::parse_real_list(o.k)) {
        const double mu = 1.0 - std::ldexp(1.0, -static_cast<int>(k));
        const PointwiseValue v = pointwise_condition(mu, exps);
        rows.push_back({k, v.value, v.tail_bound});
      }
      out.table.header = {"k", "value", "tail_bound"};
    } else {
      const std::vector<double> xs = o.x.empty() ? std::vector<double>{1e-1, 1e-2, 1e-3} : cli::parse_real_list(o.x);
      rows = pointwise_sweep(xs, exps);
      out.table.header = {"x", "value", "tail_bound"};
    }
  }
  bool decreasing = true;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out.table.add_row({num(rows[i].parameter), num(rows[i].value), num(rows[i].tail_bound)});
    if (i > 0 && !(rows[i].value < rows[i - 1].value)) decreasing = false;
  }
  out.report["strictly_decreasing"] = decreasing;
  out.verdict = decreasing;
  return out;
}

// --------------------------------------------------------------------- wco

struct WcoOpts {
  std::string phi;
  std::string weight = "one";
  std::size_t degree = 64;
  std::string check;
  std::size_t n_max = 0;
};

json map_json(const LinearFractionalMap& m) {
  return {complex_json(m.a()), complex_json(m.b()), complex_json(m.c()), complex_json(m.d())};
}

Output run_wco(const WcoOpts& o, const Common&) {
  if (o.phi.empty()) throw UsageError("--phi is required");
  if (o.check.empty()) throw UsageError("--check is required");
  const LinearFractionalMap phi = cli::parse_symbol(o.phi);
  const RationalWeight u = cli::parse_weight_kind(o.weight);

  Output out;
  out.command = "wco";
  out.parameters = {{"phi", o.phi}, {"weight_kind", o.weight}, {"degree", o.degree},
                    {"check", o.check}, {"n_max", o.n_max}};
  out.table.header = {"check", "metric", "value", "tolerance", "pass"};
  out.report["symbol"] = map_json(phi);
  out.report["automorphism"] = phi.is_automorphism();
  bool all = true;
  auto row = [&](const std::string& check, const std::string& metric, double value, double tol, bool pass) {
    out.table.add_row({check, metric, num(value), num(tol), flag(pass)});
    all = all && pass;
  };

  std::optional<WeightedCompositionOp> op;
  auto matrix = [&]() -> const WeightedCompositionOp& {
    if (!op) op = wco_matrix(phi, u, o.degree);
    return *op;
  };

  for (const std::string& check : split_checks(o.check)) {
    if (check == "invert") {
      const InvertibilityReport r = invertibility_check(matrix());
      row(check, "weight_grid_min", r.grid_min, kWeightFloor, r.invertible);
      out.report["invert"] = {{"automorphism", r.automorphism},
                              {"weight_bounded_below", r.weight_bounded_below},
                              {"weight_bounded_above", r.weight_bounded_above},
                              {"grid_min", io::number(r.grid_min)},
                              {"grid_max", io::number(r.grid_max)},
                              {"invertible", r.invertible}};
    } else if (check == "unitary") {
      const UnitarityReport r = unitarity_check(matrix());
      constexpr double tol = 1e-6;
      row(check, "truncation_defect", r.truncation_defect, tol, r.is_bn_form && r.truncation_defect < tol);
      json rep = {{"is_bn_form", r.is_bn_form},
                  {"fit_residual", io::number(r.fit_residual)},
                  {"truncation_defect", io::number(r.truncation_defect)},
                  {"resolved_columns", r.resolved_columns}};
      if (r.p) rep["p"] = complex_json(*r.p);
      if (r.c) rep["c"] = complex_json(*r.c);
      out.report["unitary"] = rep;
    } else if (check == "cowen") {
      const CowenFactors f = cowen_adjoint_factors(phi);
      const double defect = f.degenerate ? std::numeric_limits<double>::infinity() : cowen_defect(phi, o.degree);
      constexpr double tol = 1e-8;
      row(check, "adjoint_defect", defect, tol, defect < tol);
      out.report["cowen"] = {{"sigma", map_json(f.sigma)},
                             {"degenerate", f.degenerate},
                             {"sigma_maps_disc", f.sigma_maps_disc},
                             {"defect", io::number(defect)}};
    } else if (check == "isometry") {
      const IsometryReport r = isometry_rkh_check(matrix());
      constexpr double tol = 1e-10;
      row(check, "grid_violation", r.max_violation, tol, r.forces_unitary);
      out.report["isometry"] = {{"max_violation", io::number(r.max_violation)},
                                {"automorphism", r.automorphism},
                                {"bn_fit_residual", io::number(r.bn_fit_residual)},
                                {"forces_unitary", r.forces_unitary}};
    } else if (check == "orbit-frame") {
      const OrbitFrameReport r = multiplication_orbit_frame(
          phi, u, o.degree, o.n_max == 0 ? std::nullopt : std::optional<std::size_t>(o.n_max));
      row(check, "lower_bound", r.bounds.lower, kOrbitLowerGate, r.frame_proxy);
      out.report["orbit_frame"] = {{"lower", io::number(r.bounds.lower)},
                                   {"upper", io::number(r.bounds.upper)},
                                   {"n_max", r.n_max},
                                   {"unbounded_orbit", r.unbounded_orbit},
                                   {"frame_proxy", r.frame_proxy},
                                   {"invertible", r.invertible},
                                   {"agrees", r.agrees}};
    } else {
      throw UsageError("unknown check '" + check + "' (invert, unitary, cowen, isometry, orbit-frame)");
    }
  }
  out.verdict = all;
  return out;
}

// ------------------------------------------------------------------- model

struct ModelOpts {
  std::string zeros;
  std::size_t cutoff = 0;
  std::string check = "spectrum";
  std::size_t n_max = 200;
};

Output run_model(const ModelOpts& o, const Common& c) {
  if (o.zeros.empty()) throw UsageError("--zeros is required");
  const FiniteBlaschke theta(cli::parse_zeros(o.zeros));
  const std::size_t d = theta.degree();
  const std::size_t cutoff = o.cutoff == 0 ? std::max<std::size_t>(64, 16 * d) : o.cutoff;
  const FiniteBlaschkeModel model = model_basis(theta, cutoff);

  Output out;
  out.command = "model";
  out.parameters = {{"zeros", o.zeros}, {"cutoff", cutoff}, {"check", o.check}, {"n_max", o.n_max}};
  out.table.header = {"check", "metric", "value", "tolerance", "pass"};
  bool all = true;
  auto row = [&](const std::string& check, const std::string& metric, double value, double tol, bool pass) {
    out.table.add_row({check, metric, num(value), num(tol), flag(pass)});
    all = all && pass;
  };
  out.report["dimension"] = d;
  row("basis", "gram_defect", model.gram_defect(), 1e-10, model.gram_defect() < 1e-10);
  row("basis", "membership_defect", model.membership_defect(), 1e-8, model.membership_defect() < 1e-8);

  for (const std::string& check : split_checks(o.check)) {
    if (check == "spectrum") {
      const SpectrumReport r = spectrum_check(model);
      row(check, "eigenvalue_mismatch", r.max_mismatch, 1e-8, r.max_mismatch < 1e-8);
      row(check, "minimal_function_defect", r.minimal_function_defect, 1e-8, r.minimal_function_defect < 1e-8);
      row(check, "min_divisor_residual", r.min_divisor_residual, 1e-6, r.minimal);
      json ev = json::array();
      for (const cplx z : r.eigenvalues) ev.push_back(complex_json(z));
      out.report["spectrum"] = {{"eigenvalues", ev},
                                {"max_mismatch", io::number(r.max_mismatch)},
                                {"minimal_function_defect", io::number(r.minimal_function_defect)},
                                {"min_divisor_residual", io::number(r.min_divisor_residual)},
                                {"minimal", r.minimal}};
    } else if (check == "jordan") {
      json blocks = json::array();
      for (const JordanBlockInfo& b : jordan_structure(model)) {
        std::size_t total = 0;
        for (const std::size_t s : b.block_sizes) total += s;
        const bool ok = b.eigenspace_dim == 1 && b.block_sizes.size() == 1 &&
                        total == static_cast<std::size_t>(b.multiplicity);
        row(check, "largest_block@" + cli::format_complex(b.eigenvalue),
            static_cast<double>(b.block_sizes.empty() ? 0 : *std::max_element(b.block_sizes.begin(), b.block_sizes.end())),
            0.0, ok);
        blocks.push_back({{"eigenvalue", complex_json(b.eigenvalue)},
                          {"multiplicity", b.multiplicity},
                          {"eigenspace_dim", b.eigenspace_dim},
                          {"block_sizes", b.block_sizes},
                          {"rank_sequence", b.rank_sequence}});
      }
      out.report["jordan"] = blocks;
    } else if (check == "parseval") {
      Rng rng = require_rng(c, "the parseval check draws a random f");
      const CVector f = rng.complex_normal_vector(d);
      const double orbit = parseval_orbit_check(model, f);
      const double frame = parseval_frame_operator_defect(model, o.n_max);
      row(check, "taylor_pairing_defect", orbit, 1e-8, orbit < 1e-8);
      row(check, "frame_operator_defect", frame, 1e-6, frame < 1e-6);
      out.report["parseval"] = {{"taylor_pairing_defect", io::number(orbit)},
                                {"frame_operator_defect", io::number(frame)},
                                {"k0_reproducing_defect", io::number(k0_reproducing_defect(model))}};
    } else {
      throw UsageError("unknown check '" + check + "' (parseval, jordan, spectrum)");
    }
  }
  out.verdict = all;
  return out;
}

// ------------------------------------------------------------------ interp

struct InterpOpts {
  std::string problem;
  std::string nodes;
  std::string weights = "mcphail";
  std::string targets = "ones";
  std::size_t degree = 64;
  CLI::Option* degree_opt = nullptr;
  bool riesz = false;
  double gate = 1e4;
  bool coefficients = false;
};

Output run_interp(const InterpOpts& o, const Common& c) {
  if (o.problem.empty() == o.nodes.empty()) throw UsageError("give exactly one of --problem, --nodes");
  ProblemSpec spec;
  if (!o.problem.empty()) {
    spec = problem_from_json(cli::read_config_file(o.problem));
    if (o.degree_opt->count() > 0) spec.degree = o.degree;
  } else {
    const std::vector<cplx> z = generate_points(o.nodes, c);
    std::vector<cplx> u;
    std::vector<cplx> t;
    for (const cplx zk : z) {
      if (o.weights == "mcphail") {
        u.emplace_back(std::sqrt(1.0 - std::abs(zk)));
      } else if (o.weights == "one") {
        u.emplace_back(1.0);
      } else {
        throw UsageError("--weights must be mcphail or one");
      }
    }
    if (o.targets == "ones") {
      t.assign(z.size(), 1.0);
    } else if (o.targets == "random") {
      Rng rng = require_rng(c, "random targets");
      for (std::size_t k = 0; k < z.size(); ++k) t.push_back(rng.complex_normal());
    } else {
      throw UsageError("--targets must be ones or random");
    }
    spec.problem = InterpolationProblem::scalar(DiskSequence::from_values(std::span<const cplx>(z)), u, t);
    spec.degree = o.degree;
  }
  const InterpolationProblem& p = spec.problem;
  const InterpolantResult res = p.generators() == 1 ? min_norm_interpolant(p, spec.degree)
                                                    : multi_weight_interpolant(p, spec.degree);

  Output out;
  out.command = "interp";
  out.parameters = {{"problem", o.problem}, {"nodes", o.nodes},   {"weights", o.weights},
                    {"targets", o.targets}, {"degree", spec.degree}, {"riesz", o.riesz},
                    {"gate", o.gate}};
  out.table.header = {"metric", "value", "tolerance"};
  out.table.add_row({"residual", num(res.residual), num(1e-8)});
  out.table.add_row({"condition", num(res.condition), num(kIllConditioned)});
  out.table.add_row({"rank", num(res.rank), num(0.0)});
  out.report = {{"generators", p.generators()},
                {"nodes", p.nodes.size()},
                {"residual", io::number(res.residual)},
                {"condition", io::number(res.condition)},
                {"rank", res.rank},
                {"ill_conditioned", res.ill_conditioned}};
  bool ok = res.residual < 1e-8;

  if (p.generators() == 1) {
    std::vector<double> w;
    bool positive = true;
    for (const CVector& g : p.weights) {
      w.push_back(std::abs(g[0]));
      positive = positive && std::abs(g[0]) > 0.0;
    }
    if (positive) {
      const McPhailReport m = mcphail_check(p.nodes, w);
      out.table.add_row({"mcphail_ratio_low", num(m.ratio_low), num(McPhailOptions{}.ratio_floor)});
      out.table.add_row({"mcphail_ratio_high", num(m.ratio_high), num(McPhailOptions{}.ratio_ceiling)});
      out.report["mcphail"] = {{"carleson_constant", io::number(m.carleson_constant)},
                               {"carleson_pass", m.carleson_pass},
                               {"ratio_low", io::number(m.ratio_low)},
                               {"ratio_high", io::number(m.ratio_high)},
                               {"pass", m.pass}};
    }
  }
  if (o.riesz) {
    KernelFamily fam{p.nodes.points(), p.weights};
    const RieszReport r = riesz_basic_test(fam, spec.degree, o.gate);
    out.table.add_row({"riesz_condition", num(r.condition), num(r.gate)});
    out.report["riesz"] = {{"min_eig", io::number(r.min_eig)},
                           {"max_eig", io::number(r.max_eig)},
                           {"condition", io::number(r.condition)},
                           {"degenerate", r.degenerate},
                           {"riesz_proxy", r.riesz_proxy}};
    ok = ok && r.riesz_proxy;
  }
  if (o.coefficients) {
    json comps = json::array();
    for (const CVector& v : res.components) {
      json cv = json::array();
      for (Eigen::Index i = 0; i < v.size(); ++i) cv.push_back(complex_json(v[i]));
      comps.push_back(cv);
    }
    out.report["components"] = comps;
  }
  out.verdict = ok;
  return out;
}

// -------------------------------------------------------------------- main

int emit(Output out, const Common& c, const std::string& default_format) {
  if (c.seed_opt->count() > 0) out.seed = c.seed;
  const std::string format = c.format.empty() ? default_format : c.format;
  if (c.out == "-") {
    cli::write_output(out, format, std::cout);
  } else {
    std::ofstream f(c.out, std::ios::binary);
    if (!f) throw UsageError(c.out + ": cannot open output file");
    cli::write_output(out, format, f);
  }
  if (!c.expect.empty() && (c.expect == "pass") != out.verdict) {
    std::cerr << "framelab: expected " << c.expect << ", got " << (out.verdict ? "pass" : "fail") << '\n';
    return cli::kExitExpectation;
  }
  return cli::kExitOk;
}

// Splices --config fields into the argument list right after the subcommand
// so that explicit command-line options, parsed later, take precedence.
std::vector<std::string> expand_config(CLI::App& app, std::vector<std::string> args) {
  if (args.empty()) return args;
  std::string path;
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  const bool run = args[0] == "run";
  // Without a config, CLI11 reports the missing option (or prints help).
  if (path.empty()) return args;
  std::string name = args[0];
  if (run) {
    const json cfg = cli::read_config_file(path);
    if (!cfg.is_object() || !cfg.contains("experiment") || !cfg["experiment"].is_string()) {
      throw UsageError(path + ": run needs a string field 'experiment'");
    }
    name = cfg["experiment"].get<std::string>();
  }
  CLI::App* sub = nullptr;
  try {
    sub = app.get_subcommand(name);
  } catch (const CLI::OptionNotFound&) {
    throw UsageError(path + ": unknown experiment '" + name + "'");
  }
  const cli::ConfigArgs cfg = cli::config_to_args(
      path, [&](const std::string& key) { return sub->get_option_no_throw("--" + key) != nullptr; },
      [&](const std::string& key) { return sub->get_option_no_throw("--" + key)->get_type_size() == 0; });
  if (cfg.experiment && *cfg.experiment != name) {
    throw UsageError(path + ": experiment '" + *cfg.experiment + "' does not match subcommand '" + name + "'");
  }
  std::vector<std::string> out{name};
  out.insert(out.end(), cfg.tokens.begin(), cfg.tokens.end());
  out.insert(out.end(), args.begin() + 1, args.end());
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"framelab: orbit frames, Carleson interpolation and model spaces on finite sections"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);
  app.set_version_flag("--version", "framelab 0.1.0");

  std::map<std::string, Common> common;

  CarlesonOpts carleson;
  auto* c1 = app.add_subcommand("carleson", "Carleson constant of a disc sequence");
  c1->add_option("--points", carleson.points, "Complex points, e.g. 0.5,0.1+0.2i");
  c1->add_option("--sequence", carleson.sequence, "dyadic:K | harmonic:K | random:K");
  c1->add_option("--delta-min", carleson.delta_min, "Interpolation threshold");
  add_common(c1, common["carleson"]);

  FrameOpts frame;
  auto* c2 = app.add_subcommand("frame-bounds", "Frame bounds of a diagonal orbit system");
  c2->add_option("--system", frame.system, "single:MU | carleson:K | carleson-bad:K | random:K");
  c2->add_option("--eigenvalues", frame.eigenvalues, "Complex eigenvalues mu_k");
  c2->add_option("--generator", frame.generator, "Complex generator entries b_k");
  c2->add_option("--method", frame.method, "closed or partial")->check(CLI::IsMember({"closed", "partial"}));
  c2->add_option("--exponents", frame.exponents, "naturals | every_nth:N | ceil_n_log_n | primes");
  c2->add_option("--n-max", frame.n_max, "Truncation of the exponent rule");
  c2->add_option("--stride", frame.stride, "Keep every N-th orbit element");
  c2->add_option("--lower-gate", frame.lower_gate, "Verdict passes when A exceeds this");
  c2->add_option("--matrix-out", frame.matrix_out, "Write the frame operator (.csv or JSON)");
  add_common(c2, common["frame-bounds"]);

  SweepOpts sweep;
  auto* c3 = app.add_subcommand("muntz-sweep", "Pointwise frame quantity or x S(x) over a sweep");
  c3->add_option("--exponents", sweep.exponents, "naturals | every_nth:N | ceil_n_log_n | primes");
  c3->add_option("--n-max", sweep.n_max, "Truncation of the exponent rule");
  c3->add_option("--x", sweep.x, "Values of x = 1 - mu^2");
  c3->add_option("--k", sweep.k, "Atoms mu = 1 - 2^-k instead of x");
  c3->add_option("--quantity", sweep.quantity, "pointwise or xs")->check(CLI::IsMember({"pointwise", "xs"}));
  c3->add_option("--tolerance", sweep.tolerance, "Tail tolerance for S(x)");
  add_common(c3, common["muntz-sweep"]);

  WcoOpts wco;
  auto* c4 = app.add_subcommand("wco", "Weighted composition operator checks");
  c4->add_option("--phi", wco.phi, "Coefficients a,b,c,d of (az+b)/(cz+d)");
  c4->add_option("--weight-kind", wco.weight, "one | kernel:p | bn:p,c | poly:c0,c1,...");
  c4->add_option("--degree", wco.degree, "Section degree D");
  c4->add_option("--check", wco.check, "invert, unitary, cowen, isometry, orbit-frame (comma list)");
  c4->add_option("--n-max", wco.n_max, "Orbit length for orbit-frame (default 4D)");
  add_common(c4, common["wco"]);

  ModelOpts model;
  auto* c5 = app.add_subcommand("model", "Finite Blaschke model space checks");
  c5->add_option("--zeros", model.zeros, "re,im:mult,... (mult optional)");
  c5->add_option("--cutoff", model.cutoff, "Coefficient cutoff (default max(64, 16 d))");
  c5->add_option("--check", model.check, "parseval, jordan, spectrum (comma list)");
  c5->add_option("--n-max", model.n_max, "Orbit length for the partial frame operator");
  add_common(c5, common["model"]);

  InterpOpts interp;
  auto* c6 = app.add_subcommand("interp", "Weighted interpolation and Riesz tests");
  c6->add_option("--problem", interp.problem, "Problem JSON file");
  c6->add_option("--nodes", interp.nodes, "dyadic:K | harmonic:K | random:K");
  c6->add_option("--weights", interp.weights, "mcphail or one (with --nodes)");
  c6->add_option("--targets", interp.targets, "ones or random (with --nodes)");
  interp.degree_opt = c6->add_option("--degree", interp.degree, "Polynomial degree D");
  c6->add_flag("--riesz", interp.riesz, "Also run the Riesz test on the kernel family");
  c6->add_option("--gate", interp.gate, "Condition-number gate of the Riesz test");
  c6->add_flag("--coefficients", interp.coefficients, "Include the solution in the JSON report");
  add_common(c6, common["interp"]);

  auto* run = app.add_subcommand("run", "Run the experiment named by a config file");
  std::string run_config;
  run->add_option("--config", run_config, "Config with an 'experiment' field")->required();

  try {
    std::vector<std::string> args(argv + 1, argv + argc);
    args = expand_config(app, std::move(args));
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? cli::kExitOk : cli::kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "framelab: " << e.what() << '\n';
    return cli::kExitUsage;
  }

  try {
    if (c1->parsed()) return emit(run_carleson(carleson, common["carleson"]), common["carleson"], "csv");
    if (c2->parsed()) return emit(run_frame_bounds(frame, common["frame-bounds"]), common["frame-bounds"], "csv");
    if (c3->parsed()) return emit(run_muntz_sweep(sweep, common["muntz-sweep"]), common["muntz-sweep"], "csv");
    if (c4->parsed()) return emit(run_wco(wco, common["wco"]), common["wco"], "json");
    if (c5->parsed()) return emit(run_model(model, common["model"]), common["model"], "json");
    if (c6->parsed()) return emit(run_interp(interp, common["interp"]), common["interp"], "json");
  } catch (const std::exception& e) {
    std::cerr << "framelab: " << e.what() << '\n';
    return cli::kExitUsage;
  }
  return cli::kExitUsage;
}
