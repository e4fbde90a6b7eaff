#include "bakerlab/commands.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "bakerlab/continuation.hpp"
#include "bakerlab/csv.hpp"
#include "bakerlab/dynamics.hpp"
#include "bakerlab/error.hpp"
#include "bakerlab/render.hpp"

namespace bakerlab::cli {

namespace {

// Thrown when an output file cannot be created.
struct UnwritableOutput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UnwritableOutput("cannot open " + path + " for writing");
  out << text;
  if (!out) throw UnwritableOutput("failed writing " + path);
}

std::string fmt(double x) { return format_number(x); }

std::string fmt_short(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

// "start:stop:count" from `grid`, or param_start / param_stop / points.
std::vector<Complex> grid_from_config(const ExperimentConfig& config, double start, double stop,
                                      long long points) {
  if (config.has("grid")) {
    const std::string spec = config.get_string("grid", "");
    ExperimentConfig tmp;
    std::string list = spec;
    std::replace(list.begin(), list.end(), ':', ',');
    tmp.set("grid", list);
    const auto parts = tmp.get_list("grid", {});
    if (parts.size() != 3) throw ConfigError("grid must be start:stop:count");
    start = parts[0];
    stop = parts[1];
    points = static_cast<long long>(parts[2]);
  } else {
    start = config.get_double("param_start", start);
    stop = config.get_double("param_stop", stop);
    points = config.get_int("points", points);
  }
  if (points < 1) throw ConfigError("grid needs at least one point");
  return linear_grid(start, stop, static_cast<int>(points));
}

Complex first_scalar_coefficient(const EntireMap& map) {
  for (const EntireMap* m = &map; m; m = m->base())
    if (m->kind() == EntireMap::Kind::scalar_multiple) return m->coefficient();
  return {1.0, 0.0};
}

double median_of(std::vector<double> xs) {
  if (xs.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(xs.begin(), xs.end());
  const std::size_t n = xs.size();
  return n % 2 ? xs[n / 2] : 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
}

}  // namespace

EntireMap map_from_config(const ExperimentConfig& config) {
  const std::string kind = config.get_string("map", "fatou");
  const Complex c(config.get_double("c", 1.0), config.get_double("c_im", 0.0));
  const EntireMap fatou = EntireMap::fatou(c);
  if (kind == "fatou") return fatou;
  if (kind == "scaled") {
    const Complex alpha(config.get_double("alpha", 1.0), config.get_double("alpha_im", 0.0));
    return EntireMap::scaled(fatou, alpha);
  }
  throw ConfigError("unknown map '" + kind + "' (expected fatou or scaled)");
}

int run_command(const ExperimentConfig& config, std::ostream& out, std::ostream& err) {
  const std::string command = config.command();
  if (command == "render") return run_render(config, out, err);
  if (command == "trace") return run_trace(config, out, err);
  if (command == "perturb") return run_perturb(config, out, err);
  if (command == "classify") return run_classify(config, out, err);
  if (command == "verify") return run_verify(config, out, err);
  err << "error: unknown command '" << command << "'\n";
  return kInvalidConfig;
}

// ---------------------------------------------------------------------------

int run_render(const ExperimentConfig& config, std::ostream& out, std::ostream& err) {
  RenderSpec spec;
  std::string output;
  try {
    spec.map = map_from_config(config);
    spec.window = {config.get_double("x_min", -2.0), config.get_double("x_max", 12.0),
                   config.get_double("y_min", -6.0), config.get_double("y_max", 6.0)};
    spec.width = static_cast<int>(config.get_int("width", 400));
    spec.height = static_cast<int>(config.get_int("height", 400));
    spec.rule.budget = static_cast<int>(config.get_int("max_iter", 200));
    spec.rule.escape_radius = config.get_positive("escape_radius", 1e6);
    output = config.get_string("output", "render.pgm");
    const RenderResult result = render(spec);
    write_pgm(output, result, spec.rule.budget);
    const auto counts = result.counts();
    out << "render " << spec.width << "x" << spec.height
        << " baker-right-escape=" << counts[0] << " bounded-unknown=" << counts[1]
        << " generic-escape=" << counts[2] << " output=" << output << "\n";
    return kOk;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidConfig;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidConfig;
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << "\n";
    return kUnwritableOutput;
  }
}

// ---------------------------------------------------------------------------

int run_trace(const ExperimentConfig& config, std::ostream& out, std::ostream& err) {
  ParamFamily family;
  std::vector<Complex> grid;
  Complex guess;
  TrackOptions options;
  std::string output;
  try {
    const std::string key = config.get_string("family", "scaled");
    if (key == "scaled") {
      family = scaled_family();
      grid = grid_from_config(config, 0.5, 0.999, 100);
      guess = {config.get_double("guess_re", 1.0), config.get_double("guess_im", 0.0)};
    } else if (key == "fatou") {
      family = fatou_family();
      grid = grid_from_config(config, 0.5, 0.01, 50);
      // Closed form at the first grid point: -ln(lambda) - i pi.
      const Complex closed = -std::log(grid.front()) - Complex(0.0, std::numbers::pi);
      guess = {config.get_double("guess_re", closed.real()), config.get_double("guess_im", closed.imag())};
    } else {
      throw ConfigError("unknown family '" + key + "' (expected scaled or fatou)");
    }
    options.escape_radius = config.get_positive("escape_radius", 100.0);
    options.newton_tol = config.get_positive("newton_tol", 1e-12);
    output = config.get_string("output", "trace.csv");
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidConfig;
  }

  PathTrace trace;
  int code = kOk;
  try {
    trace = track_fixed_point(family, grid, guess, options);
  } catch (const PartialResultError<PathTrace>& e) {
    trace = e.partial();
    err << "error: " << e.what() << "\n";
    code = kBranchLost;
  }

  CsvTable table;
  table.header = {"param", "re_z", "im_z", "re_rho", "im_rho", "abs_rho", "horocyclic_stat", "escaped"};
  for (std::size_t i = 0; i < trace.size(); ++i) {
    const bool escaped = trace.escaped_at && *trace.escaped_at == i;
    table.rows.push_back({fmt(trace.params[i].real()), fmt(trace.locations[i].real()),
                          fmt(trace.locations[i].imag()), fmt(trace.multipliers[i].real()),
                          fmt(trace.multipliers[i].imag()), fmt(std::abs(trace.multipliers[i])),
                          fmt(trace.horocyclic_stats[i]), escaped ? "1" : "0"});
  }
  try {
    write_text(output, to_csv(table));
  } catch (const UnwritableOutput& e) {
    err << "error: " << e.what() << "\n";
    return kUnwritableOutput;
  }
  out << "trace family=" << family.label << " rows=" << trace.size()
      << " escaped=" << (trace.escaped_at ? "yes" : "no") << " output=" << output << "\n";
  return code;
}

// ---------------------------------------------------------------------------

int run_perturb(const ExperimentConfig& config, std::ostream& out, std::ostream& err) {
  std::vector<double> s_values;
  EntireMap base = EntireMap::fatou(1.0);
  std::optional<RayCurve> ray;
  std::string output;
  try {
    base = map_from_config(config);
    s_values = config.get_list("s", {5.0, 10.0, 20.0, 50.0, 100.0});
    for (double s : s_values)
      if (!(s > 0.0)) throw ConfigError("every s must be positive");
    ray.emplace(Complex(config.get_double("ray_anchor_re", 0.0), config.get_double("ray_anchor_im", 0.0)),
                Complex(config.get_double("ray_dir_re", 1.0), config.get_double("ray_dir_im", 0.0)));
    output = config.get_string("output", "perturb.csv");
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidConfig;
  }

  CsvTable table;
  table.header = {"s",      "coeff_re", "coeff_im",          "fp_re",           "fp_im",
                  "abs_rho", "one_minus_abs_rho", "horocyclic_stat", "branch"};
  const std::string nan = fmt(std::numeric_limits<double>::quiet_NaN());
  std::size_t failures = 0;
  for (double s : s_values) {
    try {
      const StabilizedMap sm = stabilize_along_curve(base, *ray, s);
      const Complex coeff = first_scalar_coefficient(sm.map);
      const double abs_rho = std::abs(sm.fixed_point.multiplier);
      table.rows.push_back({fmt(s), fmt(coeff.real()), fmt(coeff.imag()),
                            fmt(sm.fixed_point.location.real()), fmt(sm.fixed_point.location.imag()),
                            fmt(abs_rho), fmt(1.0 - abs_rho),
                            fmt(horocyclic_statistic(sm.fixed_point.multiplier)),
                            std::string(to_string(sm.branch))});
    } catch (const Error& e) {
      ++failures;
      err << "s=" << fmt(s) << ": " << e.what() << "\n";
      table.rows.push_back({fmt(s), nan, nan, nan, nan, nan, nan, nan, "failed"});
    }
  }
  try {
    write_text(output, to_csv(table));
  } catch (const UnwritableOutput& e) {
    err << "error: " << e.what() << "\n";
    return kUnwritableOutput;
  }
  out << "perturb rows=" << table.rows.size() << " failed=" << failures << " output=" << output << "\n";
  return kOk;
}

// ---------------------------------------------------------------------------

int run_classify(const ExperimentConfig& config, std::ostream& out, std::ostream& err) {
  EntireMap map = EntireMap::fatou(1.0);
  Complex seed;
  int n = 0;
  StepDistanceOptions options;
  std::string output;
  try {
    map = map_from_config(config);
    seed = {config.get_double("seed_re", 1.0), config.get_double("seed_im", 0.0)};
    n = static_cast<int>(config.get_int("n", 100));
    if (n < 10) throw ConfigError("n must be at least 10");
    options.quadrature_steps = static_cast<int>(config.get_int("steps", options.quadrature_steps));
    options.probe.rays = static_cast<int>(config.get_int("rays", options.probe.rays));
    options.probe.tol = config.get_positive("tol", options.probe.tol);
    if (options.quadrature_steps < 1 || options.probe.rays < 8)
      throw ConfigError("steps must be >= 1 and rays >= 8");
    output = config.get_string("output", "classify.txt");
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidConfig;
  }

  const DomainOracle oracle = escape_oracle(map);
  StepDistanceSequence seq;
  try {
    seq = step_distance_sequence(map, seed, oracle, n, options);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.code() == Errc::oracle_inconclusive ? kOracleInconclusive : kInvalidConfig;
  }

  std::ostringstream report;
  report << "map: " << map.describe() << "\n";
  report << "seed: " << fmt(seed.real()) << " " << fmt(seed.imag()) << "\n";
  report << "steps: " << seq.upper.size() << "\n";
  auto line = [&](std::size_t k) {
    report << "  k=" << k << " upper=" << (seq.upper[k] ? fmt(*seq.upper[k]) : "absent") << "\n";
  };
  const std::size_t m = seq.upper.size();
  report << "upper bounds (first 10):\n";
  for (std::size_t k = 0; k < std::min<std::size_t>(10, m); ++k) line(k);
  report << "upper bounds (last 10):\n";
  for (std::size_t k = m > 10 ? m - 10 : 0; k < m; ++k) line(k);
  std::vector<double> tail;
  for (std::size_t k = m - std::max<std::size_t>(1, m / 4); k < m; ++k)
    if (seq.upper[k]) tail.push_back(*seq.upper[k]);
  const double tail_median = median_of(tail);
  report << "tail median: " << fmt(tail_median) << "\n";
  report << "verdict: " << to_string(seq.verdict) << "\n";

  try {
    write_text(output, report.str());
  } catch (const UnwritableOutput& e) {
    err << "error: " << e.what() << "\n";
    return kUnwritableOutput;
  }
  out << "classify verdict=" << to_string(seq.verdict) << " tail_median=" << fmt_short(tail_median)
      << " output=" << output << "\n";
  return kOk;
}

// ---------------------------------------------------------------------------

std::vector<CheckResult> property_battery(const ExperimentConfig& config) {
  std::uint64_t seed = kDefaultSeed;
  if (config.has("seed")) {
    const std::string text = config.get_string("seed", "");
    std::size_t used = 0;
    try {
      seed = std::stoull(text, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != text.size()) throw ConfigError("seed must be an unsigned 64-bit integer");
  }
  const int pairs = static_cast<int>(config.get_int("samples", 1000));
  const double identity_tol = config.get_positive("identity_tol", 1e-6);
  const double identity_tol_conditioned = config.get_positive("identity_tol_conditioned", 1e-5);
  const double koenigs_tol = config.get_positive("koenigs_tol", 1e-8);
  const double curve_tol = config.get_positive("curve_tol", 1e-3);

  std::vector<CheckResult> checks;
  auto add = [&](std::string name, bool pass, std::string measured) {
    checks.push_back({std::move(name), pass, std::move(measured)});
  };

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto disc_point = [&] {
    return std::polar(0.999 * std::sqrt(unit(rng)), 2.0 * std::numbers::pi * unit(rng));
  };

  {
    double worst = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < pairs; ++i) {
      const Complex z = disc_point();
      const Complex w = disc_point();
      const double d = disc_distance(z, w);
      const double log_ratio = std::log(disc_density(z) / disc_density(w));
      worst = std::max(worst, std::abs(log_ratio) - 2.0 * d);
    }
    add("harnack", worst <= 1e-12, "max(|log ratio| - 2d)=" + fmt_short(worst));
  }
  {
    double worst = 0.0;
    for (int i = 0; i < pairs; ++i) {
      const Complex z = disc_point();
      const Complex w = disc_point();
      const double d = disc_distance(z, w);
      const double bound = 2.0 * d * std::exp(2.0 * d) * (1.0 - std::abs(z));
      worst = std::max(worst, std::abs(z - w) / bound);
    }
    add("distance_bound", worst <= 1.0, "max |z-w| / bound=" + fmt_short(worst));
  }
  {
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (int i = 0; i < pairs; ++i) {
      const Complex z = disc_point();
      const double product = disc_density(z) * (1.0 - std::abs(z));
      lo = std::min(lo, product);
      hi = std::max(hi, product);
    }
    add("koebe_band", lo >= 0.5 && hi <= 2.0, "density*delta in [" + fmt_short(lo) + ", " + fmt_short(hi) + "]");
  }
  {
    const double quad = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        [](double x) { return disc_density(Complex(x, 0.0)); }, 0.0, 0.5, 15, 1e-14);
    const double gap = std::abs(disc_distance(0.0, 0.5) - quad);
    add("disc_distance_quadrature", gap < 1e-9, "|formula - quadrature|=" + fmt_short(gap));
  }
  {
    const EntireMap map = EntireMap::scaled(EntireMap::fatou(1.0), 0.9);
    const FixedPointRecord fp = find_fixed_point(map, 9.0);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const Complex z = fp.location + std::polar(0.1 + 2.9 * unit(rng), 2.0 * std::numbers::pi * unit(rng));
      const double r = std::abs(koenigs(map, fp, map(z)) - fp.multiplier * koenigs(map, fp, z));
      worst = std::max(worst, r);
    }
    add("koenigs_relation", worst < koenigs_tol, "max residual=" + fmt_short(worst));
  }
  {
    const EntireMap h = EntireMap::scaled(EntireMap::fatou(1.0), 0.9);
    const FixedPointRecord fp = find_fixed_point(h, 9.0);
    const auto curve = invariant_curve(h, fp, Complex(8.0, 1.0));
    double worst = 0.0;
    for (const Complex z : curve) worst = std::max(worst, distance_to_polyline(curve, h(z)));
    add("invariant_curve", worst < curve_tol, "max forward deviation=" + fmt_short(worst));
  }
  {
    const ParamFamily family = fatou_family();
    for (double lambda : {0.1, 0.05, 0.01}) {
      const Complex closed = -std::log(lambda) - Complex(0.0, std::numbers::pi);
      const FixedPointRecord fp = find_fixed_point(family(lambda), closed);
      const double r = multiplier_identity_residual(family, lambda, fp, 1e-5);
      const double tol = lambda < 0.05 ? identity_tol_conditioned : identity_tol;
      add("multiplier_identity lambda=" + fmt_short(lambda), r < tol, "residual=" + fmt_short(r));
    }
  }
  {
    const EntireMap f1 = EntireMap::fatou(1.0);
    for (double s : {1.0, 5.0, 10.0, 20.0}) {
      const double gap = std::abs(1.0 - std::abs(f1.derivative(s)));
      add("derivative_limit s=" + fmt_short(s), gap <= std::exp(-s) + 1e-12,
          "|1-|f'(s)||=" + fmt_short(gap));
    }
  }
  {
    for (double s : {5.0, 10.0, 20.0, 50.0, 100.0}) {
      const StabilizedMap sm = stabilize_along_curve(EntireMap::fatou(1.0), RayCurve::positive_real_axis(), s);
      const double residual = std::abs(sm.map(s) - s);
      const double gap = std::abs(1.0 - std::abs(sm.fixed_point.multiplier));
      const double stat = horocyclic_statistic(sm.fixed_point.multiplier);
      const bool pass = sm.branch == StabilizeBranch::direct && residual < 1e-12 * (1.0 + s) &&
                        sm.fixed_point.stability == Stability::attracting && gap <= 2.0 / s &&
                        stat >= s / 2.0;
      add("rescaled_fixed_point s=" + fmt_short(s), pass,
          "residual=" + fmt_short(residual) + " 1-|rho|=" + fmt_short(gap) + " stat=" + fmt_short(stat));
    }
  }
  {
    const ParamFamily family = fatou_family();
    const auto grid = linear_grid(0.5, 0.01, 50);
    const Complex guess = -std::log(0.5) - Complex(0.0, std::numbers::pi);
    const PathTrace trace = track_fixed_point(family, grid, guess);
    double worst_rho = 0.0;
    double worst_loc = 0.0;
    for (std::size_t i = 0; i < trace.size(); ++i) {
      const double lambda = trace.params[i].real();
      worst_rho = std::max(worst_rho, std::abs(std::abs(trace.multipliers[i] - 1.0) - lambda));
      worst_loc = std::max(worst_loc, std::abs(trace.locations[i].real() + std::log(lambda)));
    }
    const std::vector<Complex> zs{{0, 0}, {10, 5}, {-3, 2}, {50, -50}};
    const double bound = bounded_partial_check(family, zs, grid);
    const bool pass = trace.size() == grid.size() && worst_rho <= 1e-9 && worst_loc <= 1e-9 && bound == 1.0;
    add("escape_with_bounded_partial", pass,
        "max ||rho-1|-lambda|=" + fmt_short(worst_rho) + " max |Re z + ln lambda|=" + fmt_short(worst_loc) +
            " max partial=" + fmt_short(bound));
  }
  return checks;
}

int run_verify(const ExperimentConfig& config, std::ostream& out, std::ostream& err) {
  std::vector<CheckResult> checks;
  std::string output;
  try {
    output = config.get_string("output", "verify.txt");
    checks = property_battery(config);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidConfig;
  } catch (const std::exception& e) {
    // A library failure inside a check is a failed verification, not a bad config.
    err << "error: " << e.what() << "\n";
    return kVerificationFailed;
  }

  std::ostringstream report;
  report << "seed: " << config.get_string("seed", std::to_string(kDefaultSeed)) << "\n";
  std::size_t failed = 0;
  for (const auto& c : checks) {
    failed += c.pass ? 0 : 1;
    report << (c.pass ? "PASS " : "FAIL ") << c.name << " " << c.measured << "\n";
  }
  report << "summary: " << checks.size() - failed << "/" << checks.size() << " passed\n";

  try {
    write_text(output, report.str());
  } catch (const UnwritableOutput& e) {
    err << "error: " << e.what() << "\n";
    return kUnwritableOutput;
  }
  out << report.str();
  return failed == 0 ? kOk : kVerificationFailed;
}

}  // namespace bakerlab::cli
