#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>
#include <sstream>

#include "hsl/approx_eigen.hpp"
#include "hsl/cesaro.hpp"
#include "hsl/cli.hpp"
#include "hsl/errors.hpp"
#include "hsl/io.hpp"
#include "hsl/spectra.hpp"

namespace py = pybind11;
using namespace hsl;

namespace {

using carray = py::array_t<cplx>;

template <class T>
py::array_t<T> to_array(const std::vector<T>& v) {
  return py::array_t<T>({py::ssize_t(v.size())}, {py::ssize_t(sizeof(T))}, v.data());
}

// Reports go through the same JSON the CLI writes, so both surfaces agree.
py::object to_python(const json& j) { return py::module_::import("json").attr("loads")(dump_json(j)); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Spectra of Hausdorff operators on weighted line, Hardy and Bergman spaces.";

  // HslError(message) with a .code attribute naming the ErrorCode.
  static py::handle hsl_error = py::exception<Error>(m, "HslError", PyExc_RuntimeError).release();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = py::reinterpret_borrow<py::object>(hsl_error)(e.what());
      exc.attr("code") = std::string(to_string(e.code()));
      PyErr_SetObject(hsl_error.ptr(), exc.ptr());
    }
  });

  py::class_<SpaceParams>(m, "SpaceParams")
      .def(py::init([](double p, double a, const std::string& kind) {
             return SpaceParams(p, a, space_kind_from_string(kind));
           }),
           py::arg("p") = 2.0, py::arg("a") = 0.0, py::arg("kind") = "hardy")
      .def_property_readonly("p", &SpaceParams::p)
      .def_property_readonly("a", &SpaceParams::a)
      .def_property_readonly("beta", &SpaceParams::beta)
      .def_property_readonly("kind", [](const SpaceParams& s) { return std::string(to_string(s.kind())); })
      .def("__repr__", [](const SpaceParams& s) {
        std::ostringstream os;
        os << "SpaceParams(p=" << s.p() << ", a=" << s.a() << ", kind='" << to_string(s.kind()) << "')";
        return os.str();
      });

  py::class_<KernelSpec>(m, "Kernel")
      .def_static("cesaro", &KernelSpec::cesaro, py::arg("nu"))
      .def_static("power_cut", &KernelSpec::power_cut, py::arg("exponent"), py::arg("lo"), py::arg("hi"))
      .def_static("sampled", &KernelSpec::sampled, py::arg("t"), py::arg("values"))
      .def_static(
          "atomic",
          [](const std::vector<std::pair<cplx, double>>& atoms) {
            std::vector<Atom> a;
            for (const auto& [c, t] : atoms) a.push_back({c, t});
            return KernelSpec::atomic(a);
          },
          py::arg("atoms"), "atoms: list of (mass, position)")
      .def_static("truncated", &KernelSpec::truncated, py::arg("inner"), py::arg("delta"))
      .def_static("zero", &KernelSpec::zero)
      .def_static("from_json", [](const std::string& s) { return kernel_from_json(json::parse(s)); })
      .def("to_json", [](const KernelSpec& k) { return dump_json(kernel_to_json(k)); })
      .def("describe", &KernelSpec::describe)
      .def_property_readonly("is_atomic", &KernelSpec::is_atomic)
      .def("__repr__", [](const KernelSpec& k) { return "Kernel(" + k.describe() + ")"; });

  m.def(
      "moment",
      [](const KernelSpec& k, const SpaceParams& sp, bool absolute) -> py::object {
        const auto r = moment(k, sp, absolute ? MomentMode::Absolute : MomentMode::Signed);
        if (absolute) return py::float_(r.value.real());
        return py::cast(r.value);
      },
      py::arg("kernel"), py::arg("space"), py::arg("absolute") = true);

  m.def(
      "symbol",
      [](const KernelSpec& k, const SpaceParams& sp, const std::vector<double>& xi) {
        return to_array(symbol_curve(k, sp, xi).values);
      },
      py::arg("kernel"), py::arg("space"), py::arg("xi"), "k^(xi) at each node (closed form or quadrature)");

  m.def(
      "circulant_spectrum",
      [](const KernelSpec& k, const SpaceParams& sp, double S, std::size_t N) {
        const auto c = circulant_spectrum(k, sp, LogGrid(S, N));
        return py::make_tuple(to_array(c.xi), to_array(c.eigenvalues));
      },
      py::arg("kernel"), py::arg("space"), py::arg("S") = 20.0, py::arg("N") = 16384, "(xi, eigenvalues)");

  m.def(
      "spectral_verify",
      [](const KernelSpec& k, const SpaceParams& sp, double S, std::size_t N, double tol) {
        VerifyOptions opt;
        opt.tol = tol;
        SpectralReport r;
        {
          py::gil_scoped_release release;
          r = spectral_verify(k, sp, LogGrid(S, N), opt);
        }
        return to_python(report_to_json(r));
      },
      py::arg("kernel"), py::arg("space"), py::arg("S") = 20.0, py::arg("N") = 16384, py::arg("tol") = 1e-4);

  m.def(
      "cesaro_spectrum",
      [](cplx nu, const SpaceParams& sp) {
        const auto c = cesaro_spectrum(nu, sp);
        py::dict d;
        d["center"] = c.center;
        d["radius"] = c.radius;
        d["norm"] = c.norm;
        d["displayed_norm"] = c.displayed_norm;
        return d;
      },
      py::arg("nu"), py::arg("space"));

  m.def(
      "resolvent_norm_l2", [](const KernelSpec& k, const SpaceParams& sp, cplx lam) { return resolvent_norm_l2(k, sp, lam); },
      py::arg("kernel"), py::arg("space"), py::arg("lam"));

  m.def(
      "eigen_residual",
      [](const KernelSpec& k, const SpaceParams& sp, double eps, double xi) {
        py::gil_scoped_release release;
        return eigen_residual(k, {eps, xi, sp}).residual;
      },
      py::arg("kernel"), py::arg("space"), py::arg("epsilon"), py::arg("xi"));

  m.def("lower_norm_bound", &lower_norm_bound, py::arg("kernel"), py::arg("space"));

  m.def(
      "test_function",
      [](double eps, double xi, const SpaceParams& sp, const std::vector<cplx>& z) {
        const auto f = test_function({eps, xi, sp});
        std::vector<cplx> out;
        out.reserve(z.size());
        for (const auto& w : z) out.push_back(f(w));
        return to_array(out);
      },
      py::arg("epsilon"), py::arg("xi"), py::arg("space"), py::arg("z"), "f(z) = (z+i)^{-beta-eps+i xi}");

  m.def(
      "run_cli",
      [](std::vector<std::string> args) {
        args.insert(args.begin(), "hsl");
        std::vector<const char*> argv;
        for (const auto& a : args) argv.push_back(a.c_str());
        std::ostringstream out, err;
        const int code = run(int(argv.size()), argv.data(), out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs the hsl tool in-process; returns (exit_code, stdout, stderr).");
}
