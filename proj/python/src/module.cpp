#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "framelab/disk.hpp"
#include "framelab/dynamical.hpp"
#include "framelab/errors.hpp"
#include "framelab/exponents.hpp"
#include "framelab/hardy.hpp"
#include "framelab/interpolation.hpp"
#include "framelab/model.hpp"
#include "framelab/muntz.hpp"
#include "framelab/numeric.hpp"

namespace py = pybind11;
using namespace framelab;

namespace {

DiskSequence to_sequence(const std::vector<cplx>& z) {
  return DiskSequence::from_values(std::span<const cplx>(z));
}

OrbitFrameSystem to_system(const std::vector<cplx>& mu, const std::vector<cplx>& b,
                           std::optional<ExponentSet> exps = std::nullopt, unsigned stride = 1) {
  return OrbitFrameSystem{DiagonalOperator(mu), GeneratorVector(b), std::move(exps), stride};
}

ExponentSet to_exponents(const std::string& name, std::size_t n_max, std::size_t stride) {
  return make_exponent_set(parse_exponent_generator(name), n_max, stride);
}

py::dict spectrum_dict(const SpectrumReport& r) {
  py::dict d;
  d["eigenvalues"] = r.eigenvalues;
  d["max_mismatch"] = r.max_mismatch;
  d["minimal_function_defect"] = r.minimal_function_defect;
  d["min_divisor_residual"] = r.min_divisor_residual;
  d["minimal"] = r.minimal;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Orbit frames, Carleson interpolation and model spaces on finite sections";
  m.attr("__version__") = "0.1.0";
  m.attr("PRNG") = Rng::kAlgorithm;

  py::register_exception<Error>(m, "FramelabError", PyExc_ValueError);

  // disc geometry
  m.def("pseudo_hyperbolic", [](cplx a, cplx b) { return pseudo_hyperbolic(a, b); });
  m.def("carleson_constant", [](const std::vector<cplx>& z) { return carleson_constant(to_sequence(z)); });
  m.def(
      "is_interpolating",
      [](const std::vector<cplx>& z, double delta_min) {
        const CarlesonReport r = is_interpolating(to_sequence(z), delta_min);
        py::dict d;
        d["constant"] = r.constant;
        d["log_constant"] = r.log_constant;
        d["argmin_index"] = r.argmin_index;
        d["pass"] = r.pass;
        return d;
      },
      py::arg("points"), py::arg("delta_min") = 1e-3);

  // diagonal orbit frames
  m.def(
      "frame_operator_closed",
      [](const std::vector<cplx>& mu, const std::vector<cplx>& b, unsigned stride) {
        return frame_operator_closed(to_system(mu, b, std::nullopt, stride));
      },
      py::arg("eigenvalues"), py::arg("generator"), py::arg("stride") = 1);
  m.def(
      "frame_operator_partial",
      [](const std::vector<cplx>& mu, const std::vector<cplx>& b, const std::string& exponents,
         std::size_t n_max, std::size_t stride) {
        const PartialFrameOperator p = frame_operator_partial(to_system(mu, b, to_exponents(exponents, n_max, stride)));
        return std::make_pair(p.matrix, p.tail_bound);
      },
      py::arg("eigenvalues"), py::arg("generator"), py::arg("exponents") = "naturals",
      py::arg("n_max") = 2000, py::arg("stride") = 1);
  m.def("frame_bounds", [](const CMatrix& s) {
    const FrameBoundsReport r = frame_bounds(s);
    return std::make_pair(r.lower, r.upper);
  });
  m.def("check_carleson_frame", [](const std::vector<cplx>& mu, const std::vector<cplx>& b) {
    const CarlesonFrameReport r = check_carleson_frame(to_system(mu, b));
    py::dict d;
    d["inside_disc"] = r.inside_disc;
    d["approaches_boundary"] = r.approaches_boundary;
    d["carleson"] = r.carleson;
    d["weights_comparable"] = r.weights_comparable;
    d["carleson_constant"] = r.carleson_constant;
    d["ratio_low"] = r.ratio_low;
    d["ratio_high"] = r.ratio_high;
    d["all"] = r.all();
    return d;
  });

  // exponent sets and the Muntz quantities
  m.def(
      "exponent_values",
      [](const std::string& name, std::size_t n_max, std::size_t stride) {
        const ExponentSet s = to_exponents(name, n_max, stride);
        return std::vector<double>(s.values().begin(), s.values().end());
      },
      py::arg("generator"), py::arg("n_max"), py::arg("stride") = 1);
  m.def(
      "muntz_szasz_sum",
      [](const std::string& name, std::size_t n_max) { return muntz_szasz_sum(to_exponents(name, n_max, 1)); },
      py::arg("generator"), py::arg("n_max"));
  m.def(
      "pointwise_condition_at",
      [](double x, const std::string& name, std::size_t n_max, std::size_t stride) {
        const PointwiseValue v = pointwise_condition_at(x, to_exponents(name, n_max, stride));
        return std::make_pair(v.value, v.tail_bound);
      },
      py::arg("x"), py::arg("generator"), py::arg("n_max"), py::arg("stride") = 1);
  m.def("pointwise_condition_closed", &pointwise_condition_closed, py::arg("mu"), py::arg("stride"));
  m.def(
      "s_of_x",
      [](double x, double tolerance) {
        const ExpLogSum s = s_of_x(x, tolerance);
        return std::make_pair(s.value, s.tail_bound);
      },
      py::arg("x"), py::arg("tolerance") = 1e-13);

  // Hardy space operators
  py::class_<LinearFractionalMap>(m, "LinearFractionalMap")
      .def(py::init<cplx, cplx, cplx, cplx>(), py::arg("a"), py::arg("b"), py::arg("c"), py::arg("d"))
      .def_static("identity", &LinearFractionalMap::identity)
      .def_static("rotation", &LinearFractionalMap::rotation)
      .def_static("automorphism", &LinearFractionalMap::automorphism, py::arg("p"),
                  py::arg("lam") = cplx{1.0, 0.0})
      .def("__call__", &LinearFractionalMap::operator())
      .def("inverse", &LinearFractionalMap::inverse)
      .def("is_automorphism", &LinearFractionalMap::is_automorphism)
      .def("maps_disc_to_disc", &LinearFractionalMap::maps_disc_to_disc)
      .def_property_readonly("coefficients", [](const LinearFractionalMap& f) {
        return std::vector<cplx>{f.a(), f.b(), f.c(), f.d()};
      });

  py::class_<RationalWeight>(m, "RationalWeight")
      .def(py::init<std::vector<cplx>, std::vector<cplx>, std::string>(), py::arg("numerator"),
           py::arg("denominator"), py::arg("label") = "")
      .def_static("one", &RationalWeight::one)
      .def_static("polynomial", &RationalWeight::polynomial)
      .def_static("kernel", &RationalWeight::kernel)
      .def_static("bourdon_narayan", &RationalWeight::bourdon_narayan, py::arg("p"), py::arg("c"))
      .def("__call__", &RationalWeight::operator())
      .def("taylor", [](const RationalWeight& w, std::size_t degree) { return w.expand(degree).coefficients(); })
      .def_property_readonly("label", &RationalWeight::label);

  m.def("wco_matrix", [](const LinearFractionalMap& phi, const RationalWeight& u, std::size_t degree) {
    return wco_matrix(phi, u, degree).matrix();
  });
  m.def("composition_matrix", &composition_matrix);
  m.def("cowen_defect", &cowen_defect);
  m.def("invertibility_check", [](const LinearFractionalMap& phi, const RationalWeight& u, std::size_t degree) {
    const InvertibilityReport r = invertibility_check(wco_matrix(phi, u, degree));
    py::dict d;
    d["automorphism"] = r.automorphism;
    d["grid_min"] = r.grid_min;
    d["grid_max"] = r.grid_max;
    d["invertible"] = r.invertible;
    return d;
  });
  m.def("unitarity_check", [](const LinearFractionalMap& phi, const RationalWeight& u, std::size_t degree) {
    const UnitarityReport r = unitarity_check(wco_matrix(phi, u, degree));
    py::dict d;
    d["is_bn_form"] = r.is_bn_form;
    d["p"] = r.p;
    d["c"] = r.c;
    d["truncation_defect"] = r.truncation_defect;
    return d;
  });
  m.def("isometry_check", [](const LinearFractionalMap& phi, const RationalWeight& u, std::size_t degree) {
    const IsometryReport r = isometry_rkh_check(wco_matrix(phi, u, degree));
    py::dict d;
    d["max_violation"] = r.max_violation;
    d["forces_unitary"] = r.forces_unitary;
    return d;
  });
  m.def(
      "multiplication_orbit_frame",
      [](const LinearFractionalMap& phi, const RationalWeight& u, std::size_t degree,
         std::optional<std::size_t> n_max) {
        const OrbitFrameReport r = multiplication_orbit_frame(phi, u, degree, n_max);
        py::dict d;
        d["lower"] = r.bounds.lower;
        d["upper"] = r.bounds.upper;
        d["n_max"] = r.n_max;
        d["unbounded_orbit"] = r.unbounded_orbit;
        d["frame_proxy"] = r.frame_proxy;
        d["invertible"] = r.invertible;
        d["agrees"] = r.agrees;
        return d;
      },
      py::arg("phi"), py::arg("u"), py::arg("degree"), py::arg("n_max") = std::nullopt);

  // interpolation
  m.def(
      "min_norm_interpolant",
      [](const std::vector<cplx>& nodes, const std::vector<cplx>& weights, const std::vector<cplx>& targets,
         std::size_t degree) {
        const InterpolantResult r =
            min_norm_interpolant(InterpolationProblem::scalar(to_sequence(nodes), weights, targets), degree);
        py::dict d;
        d["coefficients"] = r.components.front();
        d["residual"] = r.residual;
        d["condition"] = r.condition;
        d["rank"] = r.rank;
        return d;
      },
      py::arg("nodes"), py::arg("weights"), py::arg("targets"), py::arg("degree"));
  m.def(
      "riesz_basic_test",
      [](const std::vector<cplx>& nodes, const std::vector<cplx>& g, std::size_t degree, double gate) {
        std::vector<DiskPoint> pts(nodes.begin(), nodes.end());
        const RieszReport r = riesz_basic_test(KernelFamily::scalar(pts, g), degree, gate);
        py::dict d;
        d["min_eig"] = r.min_eig;
        d["max_eig"] = r.max_eig;
        d["condition"] = r.condition;
        d["riesz_proxy"] = r.riesz_proxy;
        return d;
      },
      py::arg("nodes"), py::arg("g"), py::arg("degree"), py::arg("gate") = 1e4);

  // model spaces
  py::class_<FiniteBlaschkeModel>(m, "BlaschkeModel")
      .def(py::init([](const std::vector<std::pair<cplx, int>>& zeros, std::size_t cutoff) {
             std::vector<BlaschkeZero> z;
             for (const auto& [a, mult] : zeros) z.push_back({DiskPoint(a), mult});
             return model_basis(FiniteBlaschke(std::move(z)), cutoff);
           }),
           py::arg("zeros"), py::arg("cutoff"))
      .def_property_readonly("dimension", &FiniteBlaschkeModel::dimension)
      .def_property_readonly("basis", &FiniteBlaschkeModel::basis)
      .def_property_readonly("shift", &FiniteBlaschkeModel::shift)
      .def("gram_defect", &FiniteBlaschkeModel::gram_defect)
      .def("spectrum", [](const FiniteBlaschkeModel& md) { return spectrum_dict(spectrum_check(md)); })
      .def("jordan", [](const FiniteBlaschkeModel& md) {
        py::list out;
        for (const JordanBlockInfo& b : jordan_structure(md)) {
          py::dict d;
          d["eigenvalue"] = b.eigenvalue;
          d["multiplicity"] = b.multiplicity;
          d["eigenspace_dim"] = b.eigenspace_dim;
          d["block_sizes"] = b.block_sizes;
          out.append(d);
        }
        return out;
      })
      .def("parseval_orbit_defect",
           [](const FiniteBlaschkeModel& md, const CVector& coords) { return parseval_orbit_check(md, coords); })
      .def("frame_operator_defect", &parseval_frame_operator_defect, py::arg("n_max"));
}
