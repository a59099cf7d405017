#include <optional>
#include <sstream>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "seqderiv/cli.hpp"
#include "seqderiv/dioph.hpp"
#include "seqderiv/error.hpp"
#include "seqderiv/extreal.hpp"
#include "seqderiv/gallery.hpp"
#include "seqderiv/limitset.hpp"
#include "seqderiv/quotient.hpp"
#include "seqderiv/seqgen.hpp"
#include "seqderiv/verify.hpp"

namespace py = pybind11;
using namespace seqderiv;

namespace {

py::object to_py(const nlohmann::json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

ClosedExtSet from_py(const py::object& o) {
  const std::string text = py::module_::import("json").attr("dumps")(o).cast<std::string>();
  return nlohmann::json::parse(text).get<ClosedExtSet>();
}

// +inf / -inf as IEEE infinities on the Python side.
double as_float(const ExtReal& x) { return x.to_double(); }

SamplingBudget budget(std::int64_t samples, std::uint64_t seed, double cluster_tol) {
  SamplingBudget b;
  b.samples = samples;
  b.seed = seed;
  b.cluster_tol = cluster_tol;
  return b;
}

std::optional<DecaySequence> maybe_seq(const std::optional<std::string>& spec) {
  if (!spec) return std::nullopt;
  return DecaySequence::parse(*spec);
}

}  // namespace

PYBIND11_MODULE(_seqderiv, m) {
  m.doc() = "Sequential secant and cord derivatives";

  static PyObject* error = PyErr_NewException("seqderiv._seqderiv.Error", PyExc_ValueError, nullptr);
  m.attr("Error") = py::handle(error);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      PyErr_SetString(error, (std::string(to_string(e.kind())) + ": " + e.what()).c_str());
    }
  });

  py::class_<GalleryFunction>(m, "Function")
      .def_property_readonly("name", &GalleryFunction::name)
      .def_property_readonly("spec", &GalleryFunction::spec)
      .def_property_readonly("continuous", &GalleryFunction::continuous)
      .def_property_readonly("domain", [](const GalleryFunction& f) { return f.domain().describe(); })
      .def("__call__", &GalleryFunction::operator(), py::arg("x"))
      .def("__repr__", [](const GalleryFunction& f) { return "<seqderiv.Function " + f.spec() + ">"; });

  m.def("make_function", &make_function, py::arg("spec"));
  m.def("gallery", [] {
    py::list out;
    for (const auto& e : gallery_catalog()) {
      out.append(py::dict(py::arg("name") = e.name, py::arg("spec") = e.example_spec,
                          py::arg("description") = e.description, py::arg("continuous") = e.continuous));
    }
    return out;
  });

  m.def("newton_quotient", [](const GalleryFunction& f, double x, double h, double M) {
        return as_float(newton_quotient(f, x, h, M));
      }, py::arg("f"), py::arg("x"), py::arg("h"), py::arg("infinity_threshold") = kInfinityThreshold);
  m.def("cord_quotient", [](const GalleryFunction& f, double x, double h, double k, double M) {
        return as_float(cord_quotient(f, x, h, k, M));
      }, py::arg("f"), py::arg("x"), py::arg("h"), py::arg("k"), py::arg("infinity_threshold") = kInfinityThreshold);
  m.def("symmetric_quotient", [](const GalleryFunction& f, double x, double h, double M) {
        return as_float(symmetric_quotient(f, x, h, M));
      }, py::arg("f"), py::arg("x"), py::arg("h"), py::arg("infinity_threshold") = kInfinityThreshold);
  m.def("decompose", [](const GalleryFunction& f, double h, double k) {
        const auto d = decompose(f, h, k);
        return py::dict(py::arg("h") = d.h, py::arg("k") = d.k, py::arg("r") = d.r,
                        py::arg("one_minus_r") = d.one_minus_r, py::arg("right") = as_float(d.right_q),
                        py::arg("left") = as_float(d.left_q), py::arg("cord") = as_float(d.cord),
                        py::arg("reconstructed") = as_float(d.reconstructed()));
      }, py::arg("f"), py::arg("h"), py::arg("k"));
  m.def("trace", [](const GalleryFunction& f, double x, const std::string& h_seq,
                    const std::optional<std::string>& k_seq, Index n) {
        return to_py(trace(f, x, DecaySequence::parse(h_seq), maybe_seq(k_seq), n));
      }, py::arg("f"), py::arg("x"), py::arg("h_seq"), py::arg("k_seq") = py::none(), py::arg("n") = 100);
  m.def("sequence_terms", [](const std::string& spec, Index n) {
        const auto s = DecaySequence::parse(spec);
        std::vector<double> out;
        for (Index i = s.offset(); i < s.offset() + n; ++i) out.push_back(s.term(i));
        return out;
      }, py::arg("spec"), py::arg("n"));

  m.def("subsequential_limits", [](const std::vector<double>& values, double tail_fraction, double cluster_tol) {
        std::vector<ExtReal> v;
        v.reserve(values.size());
        for (double x : values) v.push_back(ext(x));
        return to_py(subsequential_limits(v, tail_fraction, cluster_tol));
      }, py::arg("values"), py::arg("tail_fraction") = 0.5, py::arg("cluster_tol") = 1e-3);
  m.def("estimate_secant_set", [](const GalleryFunction& f, double x, const std::string& side, std::int64_t samples,
                                  std::uint64_t seed, double cluster_tol) {
        return to_py(estimate_secant_set(f, x, parse_side(side), budget(samples, seed, cluster_tol)));
      }, py::arg("f"), py::arg("x"), py::arg("side") = "both", py::arg("budget") = 100'000, py::arg("seed") = 1,
      py::arg("cluster_tol") = 1e-3);
  m.def("estimate_cord_set", [](const GalleryFunction& f, double x, std::int64_t samples, std::uint64_t seed,
                                double cluster_tol) {
        return to_py(estimate_cord_set(f, x, budget(samples, seed, cluster_tol)));
      }, py::arg("f"), py::arg("x"), py::arg("budget") = 100'000, py::arg("seed") = 1, py::arg("cluster_tol") = 1e-3);
  m.def("solve_target", [](const GalleryFunction& f, double x, double K, double tol, std::int64_t samples,
                           std::uint64_t seed) {
        return to_py(solve_target(f, x, K, tol, budget(samples, seed, 1e-3)));
      }, py::arg("f"), py::arg("x"), py::arg("target"), py::arg("tol") = 1e-9, py::arg("budget") = 100'000,
      py::arg("seed") = 1);
  m.def("predict_poly", [](double a, double b, double mm, double R, double L, std::int64_t i_max, std::int64_t j_max) {
        return to_py(predict_poly(a, b, mm, R, L, i_max, j_max));
      }, py::arg("a"), py::arg("b"), py::arg("m"), py::arg("R") = 1.0, py::arg("L") = 0.0, py::arg("i_max") = 50,
      py::arg("j_max") = 50);
  m.def("predict_exp", [](double a, double b, double R, double L, std::int64_t t_min, std::int64_t t_max) {
        return to_py(predict_exp(a, b, R, L, t_min, t_max));
      }, py::arg("a"), py::arg("b"), py::arg("R") = 1.0, py::arg("L") = 0.0, py::arg("t_min") = -60,
      py::arg("t_max") = 60);

  m.def("hausdorff", [](const py::object& a, const py::object& b) { return hausdorff(from_py(a), from_py(b)); },
        py::arg("a"), py::arg("b"));
  m.def("normalize", [](const py::object& s) { return to_py(normalize(from_py(s))); }, py::arg("set"));

  m.def("continued_fraction", [](double alpha, int depth) { return continued_fraction(alpha, depth).partial_quotients; },
        py::arg("alpha"), py::arg("depth") = 20);
  m.def("log_ratio_quotients", [](double a, double b, int depth) {
        return continued_fraction(log_ratio(a, b), depth).partial_quotients;
      }, py::arg("a"), py::arg("b"), py::arg("depth") = 20);
  m.def("approx_target", [](double alpha, double t, double eps, std::int64_t i_bound) -> py::object {
        const auto w = approx_target(alpha, t, eps, i_bound);
        if (!w) return py::none();
        return to_py(*w);
      }, py::arg("alpha"), py::arg("t"), py::arg("eps"), py::arg("i_bound") = 1'000'000);
  m.def("rational_check", [](double a, double b, std::int64_t bound) {
        const auto r = rational_check(a, b, bound);
        return py::dict(py::arg("found") = r.found, py::arg("p") = r.p, py::arg("q") = r.q,
                        py::arg("exact") = r.exact, py::arg("bound") = r.bound, py::arg("text") = to_string(r));
      }, py::arg("a"), py::arg("b"), py::arg("exp_bound") = 64);

  m.def("verify", [](const std::string& suite, std::uint64_t seed) {
        VerifyConfig c;
        c.seed = seed;
        return to_py(nlohmann::json(run_verification(suite, c)));
      }, py::arg("suite") = "all", py::arg("seed") = 1);
  m.def("run", [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      }, py::arg("args"));
}
