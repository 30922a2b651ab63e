#include "cli_app.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <memory>
#include <numbers>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "lfun/config.hpp"
#include "lfun/csv.hpp"
#include "lfun/deriv.hpp"
#include "lfun/errors.hpp"
#include "lfun/gamma_ft.hpp"
#include "lfun/kernel.hpp"

namespace lfun::cli {

namespace {

constexpr double kPi = std::numbers::pi;

// Slope window for the w_n^{-2} rate and the zero-spacing tolerance.
constexpr double kSlopeLow = -2.6;
constexpr double kSlopeHigh = -1.4;
constexpr double kSpacingTolerance = 0.10;

struct Flags {
  std::string builtin;
  std::string config_path;
  std::string ns;
  double zmin = 0, zmax = 0, xmin = 0, xmax = 0, tol = 0;
  int grid = 0;
  int poly_power = 0;
  std::string kernel;
  std::string out;
  std::vector<double> lambdas, alphas, Ts;
  bool dump = false;

  // set by CLI11 when the flag was given
  CLI::Option* o_builtin = nullptr;
  CLI::Option* o_config = nullptr;
  CLI::Option* o_n = nullptr;
  CLI::Option* o_zmin = nullptr;
  CLI::Option* o_zmax = nullptr;
  CLI::Option* o_xmin = nullptr;
  CLI::Option* o_xmax = nullptr;
  CLI::Option* o_grid = nullptr;
  CLI::Option* o_kernel = nullptr;
  CLI::Option* o_tol = nullptr;
  CLI::Option* o_lambda = nullptr;
  CLI::Option* o_alpha = nullptr;
  CLI::Option* o_T = nullptr;
  CLI::Option* o_m = nullptr;
};

bool given(const CLI::Option* o) { return o != nullptr && o->count() > 0; }

void add_common(CLI::App* cmd, Flags& f) {
  f.o_builtin = cmd->add_option("--builtin", f.builtin, "built-in L-function: zeta, chi4, delta");
  f.o_config = cmd->add_option("--config", f.config_path, "JSON file: L-function data or a dumped run configuration");
  f.o_builtin->excludes(f.o_config);
  cmd->add_option("--out", f.out, "output path (default: standard output)");
  cmd->add_flag("--dump-config", f.dump, "print the resolved run configuration as JSON and exit");
  f.o_tol = cmd->add_option("--tol", f.tol, "quadrature / series tolerance");
}

void add_grid(CLI::App* cmd, Flags& f) {
  f.o_n = cmd->add_option("--n", f.ns, "comma-separated derivative half-orders, e.g. 25,50,100");
  f.o_zmin = cmd->add_option("--zmin", f.zmin, "left end of the z range");
  f.o_zmax = cmd->add_option("--zmax", f.zmax, "right end of the z range");
  f.o_grid = cmd->add_option("--grid", f.grid, "number of z points");
  f.o_kernel = cmd->add_option("--kernel", f.kernel, "asym, theta, series or auto");
}

std::vector<long> parse_n_list(const std::string& text) {
  std::vector<long> ns;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    long n = -1;
    try {
      n = std::stol(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size() || n < 0) {
      throw ConfigError("field 'n' must be a comma-separated list of nonnegative integers, got '" + text + "'");
    }
    ns.push_back(n);
  }
  if (ns.empty()) throw ConfigError("field 'n' must list at least one value");
  return ns;
}

RunConfig resolve(const std::string& command, const Flags& f) {
  RunConfig cfg;
  bool have_data = false;
  if (given(f.o_config)) {
    LoadedConfig loaded = load_config_file(f.config_path);
    if (loaded.full) {
      if (!loaded.config.command.empty() && loaded.config.command != command) {
        throw ConfigError("config file was dumped for '" + loaded.config.command + "', not '" + command + "'");
      }
      cfg = loaded.config;
    } else {
      cfg.lfunction = loaded.config.lfunction;
    }
    have_data = true;
  }
  if (given(f.o_builtin)) {
    auto data = builtin::by_name(f.builtin);
    if (!data) throw ConfigError("unknown builtin '" + f.builtin + "' (expected zeta, chi4 or delta)");
    cfg.lfunction = *data;
    have_data = true;
  }
  if (!have_data) cfg.lfunction = builtin::zeta();
  const bool from_dump = given(f.o_config) && !cfg.command.empty();
  cfg.command = command;

  if (!from_dump) {
    // command defaults
    if (command == "derive") {
      cfg.ns = {50};
      cfg.zmin = -kPi;
      cfg.zmax = kPi;
      cfg.grid = 129;
    } else if (command == "converge") {
      cfg.ns = {25, 50, 100, 200, 400};
      cfg.zmin = -kPi;
      cfg.zmax = kPi;
      cfg.grid = 65;
    } else if (command == "zeros") {
      cfg.ns = {50, 100, 200, 400};
      cfg.zmin = 0;
      cfg.zmax = 3 * kPi;
    } else if (command == "ftcheck") {
      cfg.lambdas = {0.5, 0.5};
      cfg.alphas = {0.75, 1.0};
      cfg.Ts = {8, 10, 12};
    } else if (command == "kernel") {
      cfg.grid = 121;
    }
  }
  if (given(f.o_n)) cfg.ns = parse_n_list(f.ns);
  if (given(f.o_zmin)) cfg.zmin = f.zmin;
  if (given(f.o_zmax)) cfg.zmax = f.zmax;
  if (given(f.o_xmin)) cfg.xmin = f.xmin;
  if (given(f.o_xmax)) cfg.xmax = f.xmax;
  if (given(f.o_grid)) cfg.grid = f.grid;
  if (given(f.o_kernel)) cfg.kernel = f.kernel;
  if (given(f.o_tol)) cfg.tol = f.tol;
  if (given(f.o_lambda)) cfg.lambdas = f.lambdas;
  if (given(f.o_alpha)) cfg.alphas = f.alphas;
  if (given(f.o_T)) cfg.Ts = f.Ts;
  if (given(f.o_m)) cfg.poly_power = f.poly_power;
  cfg.check();
  return cfg;
}

/// 'auto' picks the exact theta kernel for zeta at n = 0 (where the leading
/// term alone misses the shape) and the asymptotic kernel otherwise.
KernelSpec make_kernel(const RunConfig& cfg, long n) {
  const DerivedConstants c = derive_constants(cfg.lfunction);
  std::string name = cfg.kernel;
  if (name == "auto") {
    name = (n == 0 && cfg.lfunction.coefficients.rule() == BuiltinCoefficients::Zeta) ? "theta" : "asym";
  }
  const auto variant = parse_kernel_variant(name);
  if (!variant) throw ConfigError("field 'kernel' must be asym, theta, series or auto");
  KernelSpec spec;
  switch (*variant) {
    case KernelVariant::Asymptotic:
      spec = KernelSpec::asymptotic(c);
      break;
    case KernelVariant::ZetaTheta:
      spec = KernelSpec::zeta_theta(cfg.lfunction);
      break;
    case KernelVariant::NumericSeries:
      spec = KernelSpec::numeric_series(cfg.lfunction, cfg.tol);
      break;
  }
  spec.check();
  return spec;
}

std::vector<double> linspace(double lo, double hi, int points) {
  std::vector<double> xs(points);
  for (int i = 0; i < points; ++i) xs[i] = lo + (hi - lo) * i / (points - 1);
  return xs;
}

int cmd_constants(const RunConfig& cfg, std::ostream& out) {
  const DerivedConstants c = derive_constants(cfg.lfunction);
  out << to_json(c).dump(2) << '\n';
  return kOk;
}

int cmd_ftcheck(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.lambdas.empty() || cfg.lambdas.size() != cfg.alphas.size()) {
    throw ConfigError("fields 'lambda' and 'alpha' must be nonempty and of equal length");
  }
  if (cfg.Ts.empty()) throw ConfigError("field 'T' must be nonempty");
  GammaProductSpec<double> spec;
  for (std::size_t j = 0; j < cfg.lambdas.size(); ++j) spec.factors.push_back({cfg.lambdas[j], {cfg.alphas[j], 0.0}});
  spec.poly_power = cfg.poly_power;
  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  DecaySweep sweep;
  try {
    sweep = decay_sweep(spec, cfg.Ts, cfg.tol);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  CsvWriter csv(out, {"T", "oracle_log_abs", "oracle_phase", "asymptotic_log_abs", "asymptotic_phase", "rel_error"});
  for (const auto& r : sweep.rows) {
    csv.row({r.T, r.oracle.log_abs, r.oracle.phase, r.asymptotic.log_abs, r.asymptotic.phase, r.rel_error});
  }
  if (sweep.exact) {
    err << "asymptotic is exact for this spec (all relative errors below " << sweep.noise_floor << ")\n";
    return kOk;
  }
  if (!sweep.holds) {
    err << "decay law violated: successive error ratios leave the factor-3 window around e^{-dT/Lambda}\n";
    return kPropertyViolation;
  }
  err << "decay law holds\n";
  return kOk;
}

int cmd_derive(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.ns.empty()) throw ConfigError("field 'n' must list at least one value");
  const DerivedConstants c = derive_constants(cfg.lfunction);
  const std::vector<double> zs = linspace(*cfg.zmin, *cfg.zmax, cfg.grid);
  CsvWriter csv(out, {"n", "z", "D_n", "cos_z_theta", "abs_error"});
  for (long n : cfg.ns) {
    const KernelSpec spec = make_kernel(cfg, n);
    std::vector<double> values(zs.size());
    if (n == 0) {
      const XiCurve curve(spec);
      for (std::size_t i = 0; i < zs.size(); ++i) values[i] = curve(zs[i]);
    } else {
      const KernelFn kappa = kernel_function(spec);
      const ScalingSequence seq = scaling_sequence(c, n);
      for_each_index(
          zs.size(), [&](std::size_t i) { values[i] = normalized_derivative(kappa, c, seq, zs[i]); }, {});
    }
    double worst = 0;
    for (std::size_t i = 0; i < zs.size(); ++i) {
      const double target = std::cos(zs[i] + c.theta);
      const double e = std::abs(values[i] - target);
      worst = std::max(worst, e);
      csv.row({n, zs[i], values[i], target, e});
    }
    err << "n=" << n << " kernel=" << to_string(spec.variant) << " max|D_n - cos(z+theta)|=" << format_number(worst)
        << '\n';
  }
  return kOk;
}

int cmd_converge(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.ns.empty()) throw ConfigError("field 'n' must list at least one value");
  if (*cfg.zmin < -kPi - 1e-12 || *cfg.zmax > kPi + 1e-12) throw ConfigError("z range must lie within [-pi, pi]");
  const DerivedConstants c = derive_constants(cfg.lfunction);
  const KernelSpec spec = make_kernel(cfg, cfg.ns.front());
  ConvergenceReport report;
  try {
    report = convergence_report(spec, c, cfg.ns, linspace(*cfg.zmin, *cfg.zmax, cfg.grid), {}, false);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  CsvWriter csv(out, {"n", "w_n", "C_n", "log10_abs_An", "sup_error", "err_at_0"});
  for (const auto& e : report.entries) csv.row({e.n, e.w, e.C, e.log10_abs_A, e.sup_error, e.error_at_0});
  if (!report.fitted_slope) {
    err << "fitted slope: undefined (fewer than two n)\n";
    return kOk;
  }
  const double slope = *report.fitted_slope;
  err << "fitted slope of ln sup_error against ln w_n: " << format_number(slope) << " (window [" << kSlopeLow << ", "
      << kSlopeHigh << "])\n";
  if (slope < kSlopeLow || slope > kSlopeHigh) {
    err << "slope outside the window\n";
    return kPropertyViolation;
  }
  return kOk;
}

int cmd_zeros(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.ns.empty()) throw ConfigError("field 'n' must list at least one value");
  const DerivedConstants c = derive_constants(cfg.lfunction);
  CsvWriter csv(out, {"n", "index", "spacing", "relative_deviation"});
  double last_worst = 0;
  std::size_t last_count = 0;
  for (long n : cfg.ns) {
    const KernelSpec spec = make_kernel(cfg, n);
    const std::vector<double> s = zero_spacings(spec, c, n, *cfg.zmin, *cfg.zmax);
    double worst = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      const double dev = std::abs(s[i] - kPi) / kPi;
      worst = std::max(worst, dev);
      csv.row({n, static_cast<long>(i), s[i], dev});
    }
    err << "n=" << n << " spacings=" << s.size() << " max relative deviation=" << format_number(worst) << '\n';
    last_worst = worst;
    last_count = s.size();
  }
  if (last_count == 0) {
    err << "fewer than two zeros at the largest n\n";
    return kPropertyViolation;
  }
  if (last_worst > kSpacingTolerance) {
    err << "spacings deviate from pi by more than 10% at the largest n\n";
    return kPropertyViolation;
  }
  return kOk;
}

int cmd_kernel(const RunConfig& cfg, std::ostream& out) {
  const KernelSpec spec = make_kernel(cfg, 1);
  CsvWriter csv(out, {"x", "log_abs", "phase", "variant"});
  for (double x : linspace(cfg.xmin, cfg.xmax, cfg.grid)) {
    const LogComplex<double> k = canonical_kernel(spec, x);
    csv.row({x, k.log_abs, k.phase, to_string(spec.variant)});
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"High derivatives of L-function Xi-functions"};
  app.require_subcommand(1);

  auto* constants = app.add_subcommand("constants", "derived constants as JSON");
  auto* ftcheck = app.add_subcommand("ftcheck", "Gamma-product transform: oracle vs asymptotic");
  auto* derive = app.add_subcommand("derive", "normalized 2n-th derivative curves");
  auto* converge = app.add_subcommand("converge", "convergence report over n");
  auto* zeros = app.add_subcommand("zeros", "zero spacings of the derivative curves");
  auto* kernel = app.add_subcommand("kernel", "kernel tools");
  auto* dump = kernel->add_subcommand("dump", "tabulate the canonical kernel");
  kernel->require_subcommand(1);

  // one Flags per subcommand so `given` sees that subcommand's options
  std::vector<std::pair<std::string, CLI::App*>> table = {{"constants", constants}, {"ftcheck", ftcheck},
                                                          {"derive", derive},       {"converge", converge},
                                                          {"zeros", zeros},         {"kernel", dump}};
  std::vector<std::unique_ptr<Flags>> flags;
  for (auto& [name, cmd] : table) {
    flags.push_back(std::make_unique<Flags>());
    add_common(cmd, *flags.back());
  }
  for (std::size_t i : {2, 3, 4}) add_grid(table[i].second, *flags[i]);
  {
    Flags& f = *flags[5];
    f.o_kernel = dump->add_option("--kernel", f.kernel, "asym, theta, series or auto");
    f.o_xmin = dump->add_option("--xmin", f.xmin, "left end of the x range");
    f.o_xmax = dump->add_option("--xmax", f.xmax, "right end of the x range");
    f.o_grid = dump->add_option("--grid", f.grid, "number of x points");
  }
  {
    Flags& f = *flags[1];
    f.o_lambda = ftcheck->add_option("--lambda", f.lambdas, "comma-separated lambda_j")->delimiter(',');
    f.o_alpha = ftcheck->add_option("--alpha", f.alphas, "comma-separated real alpha_j")->delimiter(',');
    f.o_T = ftcheck->add_option("--T", f.Ts, "comma-separated T values")->delimiter(',');
    f.o_m = ftcheck->add_option("--m", f.poly_power, "power of (1/4 + z^2)");
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  }

  std::size_t which = 0;
  while (which < table.size() && !table[which].second->parsed()) ++which;
  const std::string& command = table[which].first;
  const Flags& f = *flags[which];

  try {
    const RunConfig cfg = resolve(command, f);
    std::ofstream file;
    if (!f.out.empty()) {
      file.open(f.out);
      if (!file) throw ConfigError("cannot open output file '" + f.out + "'");
    }
    std::ostream& sink = f.out.empty() ? out : file;
    if (f.dump) {
      sink << to_json(cfg).dump(2) << '\n';
      return kOk;
    }
    if (command == "constants") return cmd_constants(cfg, sink);
    if (command == "ftcheck") return cmd_ftcheck(cfg, sink, err);
    if (command == "derive") return cmd_derive(cfg, sink, err);
    if (command == "converge") return cmd_converge(cfg, sink, err);
    if (command == "zeros") return cmd_zeros(cfg, sink, err);
    return cmd_kernel(cfg, sink);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const ValidationError& e) {
    err << "invalid L-function data:\n" << e.report().to_string() << '\n';
    return kConfigError;
  } catch (const KernelError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const InsufficientCoefficients& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const NonConvergence& e) {
    err << "quadrature nonconvergence: " << e.what() << '\n';
    return kNonConvergence;
  } catch (const PoleError& e) {
    err << "numerical error: " << e.what() << '\n';
    return kNonConvergence;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  }
}

}  // namespace lfun::cli
