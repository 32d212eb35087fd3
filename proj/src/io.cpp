#include "hsl/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <regex>
#include <sstream>

#include "hsl/errors.hpp"

namespace hsl {

namespace {

[[noreturn]] void bad(const std::string& msg) { throw Error(ErrorCode::ConfigError, msg); }

cplx complex_of(const json& j, const char* what) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  if (j.is_string()) return parse_complex(j.get<std::string>());
  bad(std::string(what) + " must be a number, [re, im] or a string like \"2+1i\"");
}

double number_of(const json& j, const char* what) {
  if (!j.is_number()) bad(std::string(what) + " must be a number");
  return j.get<double>();
}

const json& field(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) bad(std::string("kernel field \"") + key + "\" is missing");
  return *it;
}

json cjson(cplx z) { return json::array({z.real(), z.imag()}); }

void write_number(std::string& out, double v) {
  if (!std::isfinite(v)) {
    out += "null";
    return;
  }
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out += buf;
}

void write(std::string& out, const json& j, int indent, int level) {
  const std::string pad = indent > 0 ? "\n" + std::string(std::size_t(indent * (level + 1)), ' ') : "";
  const std::string close = indent > 0 ? "\n" + std::string(std::size_t(indent * level), ' ') : "";
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",";
        first = false;
        out += pad;
        out += json(it.key()).dump();
        out += indent > 0 ? ": " : ":";
        write(out, it.value(), indent, level + 1);
      }
      out += close + "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // short numeric arrays (complex pairs, atoms) stay on one line
      const bool flat = j.size() <= 3 && std::all_of(j.begin(), j.end(), [](const json& e) { return e.is_primitive(); });
      out += "[";
      bool first = true;
      for (const auto& e : j) {
        if (!first) out += flat ? ", " : ",";
        first = false;
        if (!flat) out += pad;
        write(out, e, indent, level + 1);
      }
      out += (flat ? "" : close) + "]";
      return;
    }
    case json::value_t::number_float:
      write_number(out, j.get<double>());
      return;
    default:
      out += j.dump();
  }
}

}  // namespace

cplx parse_complex(const std::string& s) {
  static const std::string num = R"(([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?))";
  static const std::regex real_only("^\\s*" + num + "\\s*$");
  static const std::regex imag_only("^\\s*" + num + "?\\s*[ij]\\s*$");
  static const std::regex both("^\\s*" + num + "\\s*([+-])\\s*((?:\\d+\\.?\\d*|\\.\\d+)(?:[eE][+-]?\\d+)?)?\\s*[ij]\\s*$");
  std::smatch m;
  try {
    if (std::regex_match(s, m, real_only)) return {std::stod(m[1]), 0.0};
    if (std::regex_match(s, m, imag_only)) {
      const std::string c = m[1];
      return {0.0, c.empty() || c == "+" ? 1.0 : (c == "-" ? -1.0 : std::stod(c))};
    }
    if (std::regex_match(s, m, both)) {
      const double im = m[3].matched ? std::stod(m[3]) : 1.0;
      return {std::stod(m[1]), m[2] == "-" ? -im : im};
    }
  } catch (const std::exception&) {
  }
  bad("cannot parse complex number \"" + s + "\"");
}

KernelSpec kernel_from_json(const json& j) {
  if (!j.is_object()) bad("kernel must be a JSON object");
  const std::string v = field(j, "variant").is_string() ? j["variant"].get<std::string>() : "";
  if (v == "cesaro") return KernelSpec::cesaro(complex_of(field(j, "nu"), "nu"));
  if (v == "powercut") {
    const json& hi = field(j, "hi");
    double h;
    if (hi.is_string() && (hi == "inf" || hi == "infinity"))
      h = std::numeric_limits<double>::infinity();
    else
      h = number_of(hi, "hi");
    return KernelSpec::power_cut(complex_of(field(j, "exponent"), "exponent"), number_of(field(j, "lo"), "lo"), h);
  }
  if (v == "sampled") {
    const json& t = field(j, "t");
    const json& vals = field(j, "values");
    if (!t.is_array() || !vals.is_array()) bad("sampled kernel needs arrays \"t\" and \"values\"");
    std::vector<double> tt;
    std::vector<cplx> vv;
    for (const auto& e : t) tt.push_back(number_of(e, "t"));
    for (const auto& e : vals) vv.push_back(complex_of(e, "value"));
    return KernelSpec::sampled(std::move(tt), std::move(vv));
  }
  if (v == "atomic") {
    const json& atoms = field(j, "atoms");
    if (!atoms.is_array()) bad("\"atoms\" must be an array of [c_re, c_im, t]");
    std::vector<Atom> list;
    for (const auto& a : atoms) {
      if (!a.is_array() || a.size() != 3) bad("each atom must be [c_re, c_im, t]");
      list.push_back({{number_of(a[0], "mass"), number_of(a[1], "mass")}, number_of(a[2], "position")});
    }
    return KernelSpec::atomic(std::move(list));
  }
  if (v == "truncated")
    return KernelSpec::truncated(kernel_from_json(field(j, "inner")), number_of(field(j, "delta"), "delta"));
  bad("unknown kernel variant \"" + v + "\"");
}

json kernel_to_json(const KernelSpec& k) {
  return std::visit(
      [](const auto& v) -> json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, CesaroKernel>) {
          return {{"variant", "cesaro"}, {"nu", cjson(v.nu)}};
        } else if constexpr (std::is_same_v<T, PowerCutKernel>) {
          json hi = std::isfinite(v.hi) ? json(v.hi) : json("inf");
          return {{"variant", "powercut"}, {"exponent", cjson(v.exponent)}, {"lo", v.lo}, {"hi", hi}};
        } else if constexpr (std::is_same_v<T, SampledKernel>) {
          json vals = json::array();
          for (const auto& x : v.values) vals.push_back(cjson(x));
          return {{"variant", "sampled"}, {"t", v.t}, {"values", vals}};
        } else if constexpr (std::is_same_v<T, AtomicKernel>) {
          json atoms = json::array();
          for (const auto& a : v.atoms) atoms.push_back({a.mass.real(), a.mass.imag(), a.position});
          return {{"variant", "atomic"}, {"atoms", atoms}};
        } else {
          return {{"variant", "truncated"}, {"inner", kernel_to_json(*v.inner)}, {"delta", v.delta}};
        }
      },
      k.variant());
}

std::string dump_json(const json& j, int indent) {
  std::string out;
  write(out, j, indent, 0);
  out += "\n";
  return out;
}

json report_to_json(const SpectralReport& r, std::size_t max_eigenvalues) {
  const std::size_t n = r.eigenvalues.size();
  const std::size_t stride = std::max<std::size_t>(1, (n + max_eigenvalues - 1) / max_eigenvalues);
  json eig = json::array();
  for (std::size_t i = 0; i < n; i += stride) eig.push_back(cjson(r.eigenvalues[i]));
  return {
      {"kernel", r.kernel_id},
      {"space", {{"p", r.p}, {"a", r.a}, {"kind", std::string(to_string(r.kind))}}},
      {"grid", {{"S", r.grid.S()}, {"N", r.grid.N()}}},
      {"levels", r.levels},
      {"eigenvalue_count", n},
      {"eigenvalue_stride", stride},
      {"eigenvalues", eig},
      {"curve_ref", {{"nodes", r.curve.xi.size()}, {"xi_far", r.xi_far}, {"closed_through_zero", !r.inclusion_only}}},
      {"inclusion_distance", r.inclusion_distance},
      {"coverage_distance", r.coverage_distance},
      {"hausdorff_distance", r.hausdorff_distance},
      {"inclusion_only", r.inclusion_only},
      {"sup_modulus", r.sup_modulus},
      {"moment_signed_abs", r.moment_signed_abs},
      {"lower_norm_bound", r.lower_norm_bound},
      {"upper_norm_bound", r.upper_norm_bound},
      {"pass", r.pass},
  };
}

json cesaro_report_to_json(const CesaroReport& r) {
  const CesaroSpectrum& s = r.spectrum;
  return {
      {"nu", cjson(s.nu)},
      {"space", {{"p", s.sp.p()}, {"a", s.sp.a()}, {"kind", std::string(to_string(s.sp.kind()))}}},
      {"grid", {{"S", r.grid.S()}, {"N", r.grid.N()}}},
      {"center", s.center},
      {"radius", s.radius},
      {"norm", s.norm},
      {"displayed_norm", s.displayed_norm},
      {"tol", r.tol},
      {"checks",
       {{"symbol_closed_vs_quadrature", {{"deviation", r.symbol_deviation}, {"pass", r.symbol_ok}}},
        {"curve_on_circle", {{"deviation", r.circle_deviation}, {"pass", r.circle_ok}}},
        {"moment_equals_norm", {{"deviation", r.moment_deviation}, {"pass", r.moment_ok}}},
        {"eigenvalues_on_circle", {{"deviation", r.eigen_deviation}, {"pass", r.eigen_ok}}}}},
      {"pass", r.pass},
  };
}

void write_svg(std::ostream& os, const SpectralReport& r) {
  constexpr double W = 800.0, M = 70.0;
  double xmin = 0.0, xmax = 0.0, ymin = 0.0, ymax = 0.0;
  auto grow = [&](cplx z) {
    xmin = std::min(xmin, z.real());
    xmax = std::max(xmax, z.real());
    ymin = std::min(ymin, z.imag());
    ymax = std::max(ymax, z.imag());
  };
  for (const auto& z : r.curve.values) grow(z);
  for (const auto& z : r.eigenvalues) grow(z);
  // square aspect so circles look like circles
  const double span = std::max({xmax - xmin, ymax - ymin, 1e-12}) * 1.08;
  const double cx = 0.5 * (xmin + xmax), cy = 0.5 * (ymin + ymax);
  const double scale = (W - 2 * M) / span;
  auto X = [&](double x) { return W / 2 + (x - cx) * scale; };
  auto Y = [&](double y) { return W / 2 - (y - cy) * scale; };
  char buf[160];
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"800\" viewBox=\"0 0 800 800\">\n";
  os << "<rect width=\"800\" height=\"800\" fill=\"white\"/>\n";
  // axes through the origin, with end labels
  std::snprintf(buf, sizeof buf, "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"#888\"/>\n", M, Y(0),
                W - M, Y(0));
  os << buf;
  std::snprintf(buf, sizeof buf, "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"#888\"/>\n", X(0), M,
                X(0), W - M);
  os << buf;
  const double half = span / 2;
  std::snprintf(buf, sizeof buf, "<text x=\"%.2f\" y=\"%.2f\" font-size=\"12\">Re %.4g</text>\n", W - M - 60,
                Y(0) - 6, cx + half);
  os << buf;
  std::snprintf(buf, sizeof buf, "<text x=\"%.2f\" y=\"%.2f\" font-size=\"12\">Re %.4g</text>\n", M, Y(0) - 6,
                cx - half);
  os << buf;
  std::snprintf(buf, sizeof buf, "<text x=\"%.2f\" y=\"%.2f\" font-size=\"12\">Im %.4g</text>\n", X(0) + 6, M + 12,
                cy + half);
  os << buf;
  std::snprintf(buf, sizeof buf, "<text x=\"%.2f\" y=\"%.2f\" font-size=\"12\">Im %.4g</text>\n", X(0) + 6, W - M,
                cy - half);
  os << buf;
  os << "<polyline fill=\"none\" stroke=\"#1f5fbf\" stroke-width=\"1.5\" points=\"";
  const std::size_t cs = std::max<std::size_t>(1, r.curve.values.size() / 20000);
  for (std::size_t i = 0; i < r.curve.values.size(); i += cs) {
    std::snprintf(buf, sizeof buf, "%.2f,%.2f ", X(r.curve.values[i].real()), Y(r.curve.values[i].imag()));
    os << buf;
  }
  os << "\"/>\n";
  const std::size_t es = std::max<std::size_t>(1, r.eigenvalues.size() / 4000);
  for (std::size_t i = 0; i < r.eigenvalues.size(); i += es) {
    std::snprintf(buf, sizeof buf, "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"2\" fill=\"#d4502a\"/>\n",
                  X(r.eigenvalues[i].real()), Y(r.eigenvalues[i].imag()));
    os << buf;
  }
  std::snprintf(buf, sizeof buf,
                "<text x=\"20\" y=\"30\" font-size=\"14\">%s  p=%g a=%g  Hausdorff distance %.3g</text>\n",
                r.kernel_id.c_str(), r.p, r.a, r.hausdorff_distance);
  os << buf;
  os << "</svg>\n";
}

}  // namespace hsl
