#include "hsl/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include "hsl/approx_eigen.hpp"
#include "hsl/cesaro.hpp"
#include "hsl/errors.hpp"
#include "hsl/operator.hpp"
#include "hsl/spectra.hpp"
#include "hsl/symbol.hpp"

namespace hsl {

namespace {

[[noreturn]] void bad(const std::string& msg) { throw Error(ErrorCode::ConfigError, msg); }

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    bad(path + ": " + e.what());
  }
}

template <class T>
T get_as(const json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    bad(std::string("config field \"") + key + "\" has the wrong type");
  }
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) bad("cannot write " + path.string());
  os << text;
  if (!os) bad("write failed for " + path.string());
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

json cjson(cplx z) { return json::array({z.real(), z.imag()}); }

// A compact bump in ln x on [1, 4], scaled by x^{-beta}: a smooth, exactly
// supported test function for the inverse composition.
FunctionHandle log_bump(double beta) {
  return FunctionHandle::callable(
      [beta](cplx z) {
        const double x = z.real();
        const double q = (std::log(x) - std::log(2.0)) / std::log(2.0);
        if (!(std::abs(q) < 1.0)) return cplx(0.0);
        return cplx(std::pow(x, -beta) * std::exp(-1.0 / (1.0 - q * q)));
      },
      FunctionHandle::Support{1.0, 4.0});
}

struct Context {
  RunConfig cfg;
  std::filesystem::path out_dir;
  std::ostream& out;

  const KernelSpec& kernel() const {
    if (!cfg.kernel) bad("no kernel given (use --kernel FILE, --config FILE or --cesaro NU)");
    return *cfg.kernel;
  }
  double tol(double fallback) const { return cfg.tol.value_or(fallback); }
};

int cmd_symbol(Context& c) {
  const SymbolCurve curve = symbol_curve(c.kernel(), c.cfg.space(), default_xi_nodes(c.cfg.xi_max, c.cfg.xi_count));
  std::ostringstream os;
  write_curve_csv(os, curve);
  write_text(c.out_dir / "symbol.csv", os.str());
  c.out << "symbol: " << curve.xi.size() << " nodes, sup |k^| = " << fmt(curve.sup_modulus) << "\n";
  return 0;
}

int cmd_spectrum(Context& c) {
  VerifyOptions opt;
  opt.tol = c.tol(opt.tol);
  const SpectralReport rep =
      spectral_verify(c.kernel(), c.cfg.space(), c.cfg.grid_or(LogGrid(20.0, 16384)), opt);
  write_text(c.out_dir / "spectrum.json", dump_json(report_to_json(rep)));
  if (c.cfg.svg) {
    std::ostringstream os;
    write_svg(os, rep);
    write_text(c.out_dir / "spectrum.svg", os.str());
  }
  c.out << "spectrum: hausdorff " << fmt(rep.hausdorff_distance) << " (tol " << fmt(opt.tol) << ", S "
        << rep.grid.S() << ", N " << rep.grid.N() << ") " << (rep.pass ? "pass" : "FAIL") << "\n";
  return rep.pass ? 0 : 2;
}

int cmd_norm(Context& c) {
  const double tol = c.tol(1e-8);
  const SpaceParams sp = c.cfg.space();
  const NormBounds b = norm_bounds(c.kernel(), sp);
  const bool ok = b.lower <= b.upper + tol;
  const json j = {{"kernel", c.kernel().describe()},
                  {"space", {{"p", sp.p()}, {"a", sp.a()}, {"kind", std::string(to_string(sp.kind()))}}},
                  {"sup_modulus", b.sup_modulus},
                  {"moment_signed_abs", b.moment_signed_abs},
                  {"lower_norm_bound", b.lower},
                  {"upper_norm_bound", b.upper},
                  {"pass", ok}};
  write_text(c.out_dir / "norm.json", dump_json(j));
  c.out << "norm: " << fmt(b.lower) << " <= ||H|| <= " << fmt(b.upper) << (ok ? "" : "  FAIL") << "\n";
  return ok ? 0 : 2;
}

int cmd_resolvent(Context& c) {
  if (c.cfg.lambdas.empty()) bad("resolvent needs at least one --lambda");
  const double tol = c.tol(1e-6);
  const SpaceParams sp = c.cfg.space();
  const LogGrid grid = c.cfg.grid_or(default_resolvent_grid());
  const LogKernel lk = log_kernel(c.kernel(), sp, grid);
  json rows = json::array();
  bool pass = true;
  for (cplx lam : c.cfg.lambdas) {
    const ResolventKernel r = resolvent(c.kernel(), sp, grid, lam);
    const ResolventResidual res = resolvent_residual(r, lk);
    const KernelSpec psi = psi_kernel(r, sp);
    const double psi_l1 = moment(psi, sp, MomentMode::Absolute).value.real();
    const FunctionHandle f = log_bump(sp.beta());
    const double comp_a = inverse_composition_error(c.kernel(), sp, r, psi, f, 1.0, 4.0, true);
    const double comp_b = inverse_composition_error(c.kernel(), sp, r, psi, f, 1.0, 4.0, false);
    json row = {{"lambda", cjson(lam)},
                {"distance", r.distance},
                {"l1_estimate", r.l1_estimate},
                {"psi_absolute_moment", psi_l1},
                {"residual_circulant", res.circulant},
                {"residual_linear_interior", res.linear_interior},
                {"composition_error_resolvent_last", comp_a},
                {"composition_error_resolvent_first", comp_b}};
    if (sp.p() == 2.0) row["resolvent_norm_l2"] = resolvent_norm_l2(c.kernel(), sp, lam);
    const bool ok = res.linear_interior < tol;
    row["pass"] = ok;
    pass = pass && ok;
    rows.push_back(row);
    c.out << "resolvent: lambda " << fmt(lam.real()) << (lam.imag() < 0 ? "" : "+") << fmt(lam.imag())
          << "i residual " << fmt(res.linear_interior) << " composition " << fmt(std::max(comp_a, comp_b))
          << (ok ? "" : "  FAIL") << "\n";
  }
  const json j = {{"kernel", c.kernel().describe()},
                  {"grid", {{"S", grid.S()}, {"N", grid.N()}}},
                  {"tol", tol},
                  {"probes", rows},
                  {"pass", pass}};
  write_text(c.out_dir / "resolvent.json", dump_json(j));
  return pass ? 0 : 2;
}

int cmd_residuals(Context& c) {
  const SpaceParams sp = c.cfg.space();
  std::vector<ResidualRow> rows;
  bool decreasing = true;
  for (double xi : c.cfg.xis) {
    double prev = std::numeric_limits<double>::infinity();
    for (double e : c.cfg.epsilons) {
      rows.push_back(eigen_residual(c.kernel(), {e, xi, sp}));
      decreasing = decreasing && rows.back().residual < prev;
      prev = rows.back().residual;
    }
  }
  std::ostringstream os;
  write_residual_csv(os, rows);
  write_text(c.out_dir / "residuals.csv", os.str());
  c.out << "residuals: " << rows.size() << " rows, " << (decreasing ? "decreasing in epsilon" : "NOT decreasing")
        << "\n";
  return decreasing ? 0 : 2;
}

int cmd_cesaro(Context& c, const std::string& nu_text) {
  cplx nu;
  if (!nu_text.empty()) {
    nu = parse_complex(nu_text);
  } else if (c.cfg.kernel && std::holds_alternative<CesaroKernel>(c.cfg.kernel->variant())) {
    nu = std::get<CesaroKernel>(c.cfg.kernel->variant()).nu;
  } else {
    bad("cesaro needs --nu (or a Cesaro kernel)");
  }
  const double tol = c.tol(1e-6);
  const CesaroReport r = verify_cesaro(nu, c.cfg.space(), c.cfg.grid_or(LogGrid(20.0, 16384)), tol);
  write_text(c.out_dir / "cesaro.json", dump_json(cesaro_report_to_json(r)));
  c.out << "cesaro: center " << fmt(r.spectrum.center) << " radius " << fmt(r.spectrum.radius) << " norm "
        << fmt(r.spectrum.norm) << " (as displayed p/(Re nu - a - 1): " << fmt(r.spectrum.displayed_norm) << ") "
        << (r.pass ? "pass" : "FAIL") << "\n";
  return r.pass ? 0 : 2;
}

int cmd_apply(Context& c, double epsilon, double xi, double x_max, std::size_t x_count) {
  const SpaceParams sp = c.cfg.space();
  const FunctionHandle f = test_function({epsilon, xi, sp});
  const std::vector<double> x = linspace(-x_max, x_max, x_count);
  const std::vector<Estimate> v = apply_real(c.kernel(), f, x, sp);
  std::vector<cplx> vals(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) vals[i] = v[i].value;
  std::ostringstream os;
  write_function_csv(os, x, vals);
  write_text(c.out_dir / "apply.csv", os.str());
  c.out << "apply: " << x.size() << " points\n";
  return 0;
}

}  // namespace

LogGrid RunConfig::grid_or(const LogGrid& fallback) const {
  return LogGrid(S.value_or(fallback.S()), N.value_or(fallback.N()));
}

RunConfig config_from_json(const json& j) {
  if (!j.is_object()) bad("config must be a JSON object");
  RunConfig c;
  if (j.contains("variant")) {
    c.kernel = kernel_from_json(j);
    return c;
  }
  if (j.contains("kernel")) c.kernel = kernel_from_json(j["kernel"]);
  if (j.contains("space")) {
    const json& s = j["space"];
    if (s.contains("p")) c.p = s["p"].is_string() && s["p"] == "inf" ? std::numeric_limits<double>::infinity()
                                                                     : get_as<double>(s, "p");
    if (s.contains("a")) c.a = get_as<double>(s, "a");
    if (s.contains("kind")) c.kind = space_kind_from_string(get_as<std::string>(s, "kind"));
  }
  if (j.contains("grid")) {
    const json& g = j["grid"];
    if (g.contains("S")) c.S = get_as<double>(g, "S");
    if (g.contains("N")) c.N = get_as<std::size_t>(g, "N");
  }
  if (j.contains("xi_range")) {
    const json& x = j["xi_range"];
    if (x.contains("max")) c.xi_max = get_as<double>(x, "max");
    if (x.contains("count")) c.xi_count = get_as<std::size_t>(x, "count");
  }
  if (j.contains("lambdas")) {
    if (!j["lambdas"].is_array()) bad("\"lambdas\" must be an array");
    for (const auto& l : j["lambdas"]) {
      if (l.is_string())
        c.lambdas.push_back(parse_complex(l.get<std::string>()));
      else if (l.is_array() && l.size() == 2)
        c.lambdas.emplace_back(l[0].get<double>(), l[1].get<double>());
      else if (l.is_number())
        c.lambdas.emplace_back(l.get<double>(), 0.0);
      else
        bad("each lambda must be a number, [re, im] or \"re+imi\"");
    }
  }
  if (j.contains("epsilons")) c.epsilons = get_as<std::vector<double>>(j, "epsilons");
  if (j.contains("xis")) c.xis = get_as<std::vector<double>>(j, "xis");
  if (j.contains("tol")) c.tol = get_as<double>(j, "tol");
  if (j.contains("out")) c.out = get_as<std::string>(j, "out");
  if (j.contains("svg")) c.svg = get_as<bool>(j, "svg");
  return c;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hausdorff operator symbols, spectra and resolvents"};
  app.require_subcommand(1);
  std::string kernel_file, config_file, cesaro_nu, p_text, space;
  std::optional<double> a, S, xi_max, tol;
  std::optional<std::size_t> N, xi_count;
  std::vector<std::string> lambdas;
  std::string out_dir;
  bool svg = false;
  app.add_option("--kernel", kernel_file, "kernel JSON (or a full run config)");
  app.add_option("--config", config_file, "run config JSON");
  app.add_option("--cesaro,--nu", cesaro_nu, "Cesaro kernel with this nu, e.g. 1 or 2+1i");
  app.add_option("--p", p_text, "exponent p (inf allowed for lebesgue)");
  app.add_option("--a", a, "weight power a");
  app.add_option("--space", space, "lebesgue | hardy | bergman");
  app.add_option("--S", S, "log-grid half width");
  app.add_option("--N", N, "log-grid size (power of two)");
  app.add_option("--xi-max", xi_max, "symbol range [-xi_max, xi_max]");
  app.add_option("--xi-count", xi_count, "symbol nodes");
  app.add_option("--lambda", lambdas, "resolvent probe RE+IMi (repeatable)");
  app.add_option("--tol", tol, "verification tolerance");
  app.add_option("--out", out_dir, "output directory");
  app.add_flag("--svg", svg, "also write an SVG portrait (spectrum)");

  double epsilon = 0.5, fxi = 0.0, x_max = 10.0;
  std::size_t x_count = 201;
  CLI::App* c_symbol = app.add_subcommand("symbol", "symbol curve CSV");
  CLI::App* c_spectrum = app.add_subcommand("spectrum", "circulant spectrum vs symbol curve");
  CLI::App* c_norm = app.add_subcommand("norm", "operator norm bounds");
  CLI::App* c_resolvent = app.add_subcommand("resolvent", "Wiener resolvent kernels and residuals");
  CLI::App* c_residuals = app.add_subcommand("residuals", "approximate eigenfunction residual table");
  CLI::App* c_cesaro = app.add_subcommand("cesaro", "closed-form Cesaro spectrum checks");
  CLI::App* c_apply = app.add_subcommand("apply", "apply H_phi to a test function on the line");
  c_apply->add_option("--epsilon", epsilon, "test function epsilon");
  c_apply->add_option("--xi", fxi, "test function xi");
  c_apply->add_option("--x-max", x_max, "evaluate on [-x_max, x_max]");
  c_apply->add_option("--x-count", x_count, "number of points");
  for (CLI::App* s : {c_symbol, c_spectrum, c_norm, c_resolvent, c_residuals, c_cesaro, c_apply}) s->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "hsl: " << e.what() << "\n";
    return 1;
  }

  try {
    RunConfig cfg;
    if (!config_file.empty()) cfg = config_from_json(read_json_file(config_file));
    if (!kernel_file.empty()) {
      RunConfig k = config_from_json(read_json_file(kernel_file));
      if (config_file.empty())
        cfg = k;
      else
        cfg.kernel = k.kernel;
    }
    const bool cesaro_cmd = c_cesaro->parsed();
    if (!cesaro_nu.empty() && !cesaro_cmd) cfg.kernel = KernelSpec::cesaro(parse_complex(cesaro_nu));
    if (!p_text.empty()) {
      if (p_text == "inf") {
        cfg.p = std::numeric_limits<double>::infinity();
      } else {
        const cplx p = parse_complex(p_text);
        if (p.imag() != 0.0) bad("--p must be real");
        cfg.p = p.real();
      }
    }
    if (a) cfg.a = *a;
    if (!space.empty()) cfg.kind = space_kind_from_string(space);
    if (S) cfg.S = *S;
    if (N) cfg.N = *N;
    if (xi_max) cfg.xi_max = *xi_max;
    if (xi_count) cfg.xi_count = *xi_count;
    if (!lambdas.empty()) {
      cfg.lambdas.clear();
      for (const auto& l : lambdas) cfg.lambdas.push_back(parse_complex(l));
    }
    if (tol) cfg.tol = *tol;
    if (!out_dir.empty()) cfg.out = out_dir;
    if (svg) cfg.svg = true;
    (void)cfg.space();  // validate early

    Context ctx{cfg, std::filesystem::path(cfg.out), out};
    std::error_code ec;
    std::filesystem::create_directories(ctx.out_dir, ec);
    if (ec) bad("cannot create output directory " + cfg.out + ": " + ec.message());

    if (c_symbol->parsed()) return cmd_symbol(ctx);
    if (c_spectrum->parsed()) return cmd_spectrum(ctx);
    if (c_norm->parsed()) return cmd_norm(ctx);
    if (c_resolvent->parsed()) return cmd_resolvent(ctx);
    if (c_residuals->parsed()) return cmd_residuals(ctx);
    if (c_cesaro->parsed()) return cmd_cesaro(ctx, cesaro_nu);
    if (c_apply->parsed()) return cmd_apply(ctx, epsilon, fxi, x_max, x_count);
    return 1;
  } catch (const std::exception& e) {
    err << "hsl: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace hsl
