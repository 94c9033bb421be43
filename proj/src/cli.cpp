#include "xyzchain/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "xyzchain/oracle.hpp"

namespace xyzchain::cli {

using analysis::SweepSpec;
using analysis::SweepVariable;

std::string format_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

// ---------------------------------------------------------------------------
// Presets

namespace {

SweepSpec kt_sweep(analysis::SweepFixed fixed, int steps = 200) {
  return {SweepVariable::KT, 0.01, 2.0, steps, fixed};
}

std::vector<double> kt_ladder() {
  std::vector<double> kts;
  for (int k = 1; k <= 20; ++k) kts.push_back(k / 20.0);
  return kts;
}

std::vector<LabeledSweep> xy_anisotropy_series(std::initializer_list<double> deltas) {
  std::vector<LabeledSweep> out;
  for (double d : deltas) {
    analysis::SweepFixed f;
    f.sigma = 1.0;
    f.anisotropy = d;
    f.jz = 0.0;
    out.push_back({"kt@anisotropy=" + format_number(d), kt_sweep(f)});
  }
  return out;
}

// Delta sweep at Sigma = 2, jz = 1 (zeros at Delta = +-4).
std::vector<LabeledSweep> delta_series(const std::vector<double>& kts) {
  std::vector<LabeledSweep> out;
  for (double kt : kts) {
    analysis::SweepFixed f;
    f.sigma = 2.0;
    f.jz = 1.0;
    f.kt = kt;
    out.push_back({"delta@kt=" + format_number(kt), {SweepVariable::Delta, -8.0, 8.0, 321, f}});
  }
  return out;
}

// jz sweep at Delta = 7, Sigma = 1 (zero at jz = 3).
std::vector<LabeledSweep> jz_series(const std::vector<double>& kts) {
  std::vector<LabeledSweep> out;
  for (double kt : kts) {
    analysis::SweepFixed f;
    f.delta = 7.0;
    f.sigma = 1.0;
    f.kt = kt;
    out.push_back({"jz@kt=" + format_number(kt), {SweepVariable::Jz, -10.0, 10.0, 201, f}});
  }
  return out;
}

}  // namespace

std::vector<std::string> preset_names() {
  return {"fig1", "fig2", "fig3", "fig4", "fig5aa", "fig5bb", "fig5a", "fig6aa", "fig6bb", "fig6a"};
}

std::vector<LabeledSweep> figure_preset(const std::string& name) {
  if (name == "fig1") return xy_anisotropy_series({0.3, 0.6, 0.8});
  if (name == "fig2") return xy_anisotropy_series({1.2, 1.4, 1.7});
  if (name == "fig3") {
    std::vector<LabeledSweep> out;
    for (double j : {0.5, 1.0, 1.5}) {
      analysis::SweepFixed f;
      f.jx = f.jy = f.jz = j;
      out.push_back({"kt@j=" + format_number(j), kt_sweep(f)});
    }
    return out;
  }
  if (name == "fig4") {
    // XXZ surface over (J, kT) at jz = -0.5.
    std::vector<LabeledSweep> out;
    for (int i = 0; i <= 40; ++i) {
      const double j = -2.0 + i / 10.0;
      analysis::SweepFixed f;
      f.jx = f.jy = j;
      f.jz = -0.5;
      out.push_back({"kt@j=" + format_number(j), kt_sweep(f, 100)});
    }
    return out;
  }
  // Surfaces (aa), line plots (bb), probability panels (a). fig5/fig6 alias the surfaces.
  const std::vector<double> lines = {0.05, 0.1, 0.2, 0.4, 0.8};
  if (name == "fig5aa" || name == "fig5") return delta_series(kt_ladder());
  if (name == "fig5bb") return delta_series(lines);
  if (name == "fig5a") return delta_series({0.4, 0.8});
  if (name == "fig6aa" || name == "fig6") return jz_series(kt_ladder());
  if (name == "fig6bb") return jz_series(lines);
  if (name == "fig6a") return jz_series({0.4, 0.8});
  throw Error(ErrorCode::InvalidSpec, "unknown preset '" + name + "'");
}

// ---------------------------------------------------------------------------
// CSV and config

void write_sweep_csv(std::ostream& os, const std::vector<LabeledSweep>& series,
                     const std::vector<analysis::SweepTable>& tables) {
  os << kSweepCsvHeader << '\n';
  for (std::size_t s = 0; s < series.size(); ++s) {
    for (const auto& r : tables[s].records) {
      os << series[s].label << ',' << format_number(r.value) << ','
         << format_number(r.concurrence.value) << ',' << to_string(r.concurrence.branch)
         << ',' << format_number(r.probabilities.phi_plus) << ','
         << format_number(r.probabilities.phi_minus) << ','
         << format_number(r.probabilities.psi_plus) << ','
         << format_number(r.probabilities.psi_minus) << '\n';
    }
  }
}

void write_violations_csv(std::ostream& os, const analysis::ScanReport& report) {
  os << "jx,jy,jz,kt,dC_dkT\n";
  for (const auto& v : report.violations) {
    os << format_number(v.couplings.jx) << ',' << format_number(v.couplings.jy) << ','
       << format_number(v.couplings.jz) << ',' << format_number(v.kt) << ','
       << format_number(v.derivative) << '\n';
  }
}

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

std::map<std::string, std::string> parse_config(std::istream& is) {
  std::map<std::string, std::string> out;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos || trim(t.substr(0, eq)).empty()) {
      throw Error(ErrorCode::InvalidSpec,
                  "config line " + std::to_string(lineno) + ": expected key=value");
    }
    out[trim(t.substr(0, eq))] = trim(t.substr(eq + 1));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Verification harness

VerifyReport verify_against_oracle(std::uint64_t n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  auto uniform = [&gen](double lo, double hi) {
    const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  };
  VerifyReport report;
  report.samples = n;
  for (std::uint64_t i = 0; i < n; ++i) {
    Couplings c;
    c.jx = uniform(-5.0, 5.0);
    c.jy = uniform(-5.0, 5.0);
    c.jz = uniform(-5.0, 5.0);
    const double kt = uniform(0.02, 5.0);
    const double closed = concurrence(c, kt).value;
    const double brute = oracle::wootters(oracle::gibbs_state_numeric(c, kt));
    const double dev = std::abs(closed - brute);
    if (dev > report.max_deviation || i == 0) {
      report.max_deviation = dev;
      report.worst_couplings = c;
      report.worst_kt = kt;
    }
  }
  return report;
}

unsigned resolve_threads(int flag_value) {
  if (flag_value > 0) return static_cast<unsigned>(flag_value);
  if (const char* env = std::getenv("XYZCHAIN_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

// ---------------------------------------------------------------------------
// Subcommands

namespace {

class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CouplingFlags {
  double jx = 0.0, jy = 0.0, jz = 0.0, delta = 0.0, sigma = 0.0, anisotropy = 0.0;
  CLI::Option* jx_opt = nullptr;
  CLI::Option* jy_opt = nullptr;
  CLI::Option* jz_opt = nullptr;
  CLI::Option* delta_opt = nullptr;
  CLI::Option* sigma_opt = nullptr;
  CLI::Option* anisotropy_opt = nullptr;

  void attach(CLI::App* app, bool with_anisotropy) {
    jx_opt = app->add_option("--jx", jx, "x coupling");
    jy_opt = app->add_option("--jy", jy, "y coupling");
    jz_opt = app->add_option("--jz", jz, "z coupling");
    delta_opt = app->add_option("--delta", delta, "Delta = jx - jy (with --sigma)");
    sigma_opt = app->add_option("--sigma", sigma, "Sigma = jx + jy (with --delta)");
    if (with_anisotropy) {
      anisotropy_opt = app->add_option("--anisotropy", anisotropy, "Delta / Sigma");
    }
  }

  static bool given(const CLI::Option* o) { return o != nullptr && o->count() > 0; }

  Couplings resolve() const {
    const bool direct = given(jx_opt) || given(jy_opt);
    const bool reparam = given(delta_opt) || given(sigma_opt);
    if (direct && reparam) {
      throw UsageError("use either --jx/--jy or --delta/--sigma, not both");
    }
    Couplings c = reparam ? Couplings::from_delta_sigma(delta, sigma, jz) : Couplings{jx, jy, jz};
    if (!std::isfinite(c.jx) || !std::isfinite(c.jy) || !std::isfinite(c.jz)) {
      throw UsageError("--jx/--jy/--jz must be finite");
    }
    return c;
  }

  analysis::SweepFixed fixed() const {
    analysis::SweepFixed f;
    if (given(jx_opt)) f.jx = jx;
    if (given(jy_opt)) f.jy = jy;
    if (given(jz_opt)) f.jz = jz;
    if (given(delta_opt)) f.delta = delta;
    if (given(sigma_opt)) f.sigma = sigma;
    if (given(anisotropy_opt)) f.anisotropy = anisotropy;
    return f;
  }
};

void require_positive_kt(double kt) {
  if (!(kt > 0.0) || !std::isfinite(kt)) throw UsageError("--kt: kt must be > 0");
}

std::ofstream open_output(const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
  return f;
}

struct EvalCommand {
  CouplingFlags couplings;
  double kt = 0.0;
  bool csv = false;

  void attach(CLI::App* app) {
    couplings.attach(app, false);
    app->add_option("--kt", kt, "temperature kT (> 0)")->required();
    app->add_flag("--csv", csv, "print a CSV header and row instead of the report");
  }

  int execute(std::ostream& out) const {
    const Couplings c = couplings.resolve();
    require_positive_kt(kt);
    const ThermalParams p = derive_params(c, kt);
    const ConcurrenceResult r = concurrence(c, kt);
    const BellProbabilities pr = bell_probabilities(c, kt);
    const double dist = analysis::zero_manifold_distance(c);
    const std::string aniso = p.anisotropy ? format_number(*p.anisotropy) : "undefined";

    const std::vector<std::pair<std::string, std::string>> rows = {
        {"jx", format_number(c.jx)},
        {"jy", format_number(c.jy)},
        {"jz", format_number(c.jz)},
        {"kt", format_number(kt)},
        {"concurrence", format_number(r.value)},
        {"branch", to_string(r.branch)},
        {"raw", format_number(r.raw)},
        {"delta", format_number(p.delta)},
        {"sigma", format_number(p.sigma)},
        {"anisotropy", aniso},
        {"alpha", format_number(p.alpha)},
        {"beta", format_number(p.beta)},
        {"gamma", format_number(p.gamma)},
        {"Z", format_number(p.z)},
        {"log_Z", format_number(p.log_z)},
        {"p_phi_plus", format_number(pr.phi_plus)},
        {"p_phi_minus", format_number(pr.phi_minus)},
        {"p_psi_plus", format_number(pr.psi_plus)},
        {"p_psi_minus", format_number(pr.psi_minus)},
        {"zero_manifold_distance", format_number(dist)},
    };
    if (csv) {
      for (std::size_t i = 0; i < rows.size(); ++i) out << (i ? "," : "") << rows[i].first;
      out << '\n';
      for (std::size_t i = 0; i < rows.size(); ++i) out << (i ? "," : "") << rows[i].second;
      out << '\n';
    } else {
      for (const auto& [k, v] : rows) out << std::left << std::setw(24) << k << v << '\n';
    }
    return kExitOk;
  }
};

struct SweepCommand {
  CouplingFlags couplings;
  std::string preset;
  std::string var;
  double from = 0.0, to = 0.0, kt = 0.0;
  int steps = 101;
  std::string output;
  int threads = 0;
  CLI::Option* kt_opt = nullptr;

  void attach(CLI::App* app) {
    couplings.attach(app, true);
    auto accepted = preset_names();
    accepted.insert(accepted.end(), {"fig5", "fig6"});
    app->add_option("--preset", preset, "figure preset")->check(CLI::IsMember(accepted));
    app->add_option("--var", var, "swept variable")
        ->check(CLI::IsMember({"delta", "sigma", "jz", "jx", "jy", "kt", "anisotropy"}));
    app->add_option("--from", from, "first grid value");
    app->add_option("--to", to, "last grid value");
    app->add_option("--steps", steps, "number of grid points (>= 2)");
    kt_opt = app->add_option("--kt", kt, "fixed temperature");
    app->add_option("-o,--output", output, "CSV path (default stdout)");
    app->add_option("--threads", threads, "worker threads");
  }

  std::vector<LabeledSweep> series() const {
    if (!preset.empty()) {
      if (!var.empty()) throw UsageError("--preset and --var are mutually exclusive");
      return figure_preset(preset);
    }
    if (var.empty()) throw UsageError("one of --preset or --var is required");
    SweepSpec spec;
    spec.variable = *analysis::parse_sweep_variable(var);
    spec.start = from;
    spec.stop = to;
    spec.steps = steps;
    spec.fixed = couplings.fixed();
    if (kt_opt->count() > 0) spec.fixed.kt = kt;
    if (!(from < to)) throw UsageError("--from must be < --to");
    if (steps < 2) throw UsageError("--steps must be >= 2");
    return {{var, spec}};
  }

  int execute(std::ostream& out) const {
    const auto list = series();
    for (const auto& s : list) analysis::validate(s.spec);
    const unsigned workers = resolve_threads(threads);
    std::vector<analysis::SweepTable> tables;
    tables.reserve(list.size());
    for (const auto& s : list) tables.push_back(analysis::sweep(s.spec, workers));

    if (output.empty()) {
      write_sweep_csv(out, list, tables);
    } else {
      auto f = open_output(output);
      write_sweep_csv(f, list, tables);
      if (!f.flush()) throw std::runtime_error("write to '" + output + "' failed");
    }
    return kExitOk;
  }
};

struct TcCommand {
  CouplingFlags couplings;
  double from = 0.01, to = 5.0;

  void attach(CLI::App* app) {
    couplings.attach(app, false);
    app->add_option("--from", from, "lower end of the kT bracket")->capture_default_str();
    app->add_option("--to", to, "upper end of the kT bracket")->capture_default_str();
  }

  int execute(std::ostream& out) const {
    const Couplings c = couplings.resolve();
    if (!(from > 0.0) || !(from < to) || !std::isfinite(to)) {
      throw UsageError("--from/--to: bracket must satisfy 0 < from < to");
    }
    const auto tc = analysis::critical_temperature(c, from, to);
    char buf[64];
    switch (tc.status) {
      case analysis::TcStatus::Found:
        std::snprintf(buf, sizeof buf, "%.8f", tc.kt);
        out << buf << '\n';
        break;
      case analysis::TcStatus::NeverEntangled:
        out << "none\n";
        break;
      case analysis::TcStatus::AboveBracket:
        std::snprintf(buf, sizeof buf, "%.8f", tc.kt);
        out << "above " << buf << '\n';
        break;
    }
    return kExitOk;
  }
};

std::vector<double> parse_list(const std::string& text, const char* flag) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (item.empty() || used != item.size()) {
      throw UsageError(std::string(flag) + ": '" + item + "' is not a number");
    }
    out.push_back(v);
  }
  if (out.empty()) throw UsageError(std::string(flag) + ": empty list");
  return out;
}

struct ScanCommand {
  double range = 2.0;
  double step = 0.05;
  std::string kts = "0.1,0.3,0.6,1.0,2.0";
  double h = 1e-4;
  double threshold = 1e-7;
  bool full_grid = false;
  std::string output;
  int threads = 0;
  CLI::Option* step_opt = nullptr;

  void attach(CLI::App* app) {
    app->add_option("--range", range, "couplings span [-range, range]")->capture_default_str();
    step_opt = app->add_option("--step", step, "grid increment")->capture_default_str();
    app->add_option("--kts", kts, "comma-separated kT samples")->capture_default_str();
    app->add_option("--fd-step", h, "finite-difference step in kT")->capture_default_str();
    app->add_option("--threshold", threshold, "violation threshold on dC/d(kT)")
        ->capture_default_str();
    app->add_flag("--full-grid", full_grid, "use the 0.01 grid step (long run)");
    app->add_option("-o,--output", output, "violations CSV path");
    app->add_option("--threads", threads, "worker threads");
  }

  int execute(std::ostream& out) const {
    analysis::ScanSpec spec;
    if (!(range >= 0.0) || !std::isfinite(range)) throw UsageError("--range must be >= 0");
    spec.range_lo = -range;
    spec.range_hi = range;
    spec.step = (full_grid && step_opt->count() == 0) ? 0.01 : step;
    if (!(spec.step > 0.0) || !std::isfinite(spec.step)) throw UsageError("--step must be > 0");
    spec.kt_samples = parse_list(kts, "--kts");
    spec.h = h;
    if (!(h > 0.0)) throw UsageError("--fd-step must be > 0");
    spec.threshold = threshold;
    if (!(threshold >= 0.0)) throw UsageError("--threshold must be >= 0");
    for (double kt : spec.kt_samples) {
      if (!(kt - h > 0.0)) throw UsageError("--kts: every sample must exceed --fd-step");
    }

    const auto t0 = std::chrono::steady_clock::now();
    const auto report = analysis::monotonicity_scan(spec, resolve_threads(threads));
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    out << "grid " << report.axis_points << "^3 x " << spec.kt_samples.size() << " kT = "
        << report.total_points << " points\n";
    out << "max dC/d(kT) " << format_number(report.max_derivative) << '\n';
    out << "elapsed " << std::fixed << std::setprecision(2) << elapsed << " s\n";
    out.unsetf(std::ios::floatfield);
    out << report.violations.size() << " violations\n";

    if (!report.violations.empty()) {
      if (!output.empty()) {
        auto f = open_output(output);
        write_violations_csv(f, report);
      } else {
        write_violations_csv(out, report);
      }
      return kExitCheckFailed;
    }
    return kExitOk;
  }
};

struct VerifyCommand {
  long long n = 10000;
  std::uint64_t seed = 42;

  void attach(CLI::App* app) {
    app->add_option("--n", n, "number of samples")->capture_default_str();
    app->add_option("--seed", seed, "PRNG seed")->capture_default_str();
  }

  int execute(std::ostream& out) const {
    if (n < 1) throw UsageError("--n must be >= 1");
    const auto t0 = std::chrono::steady_clock::now();
    const VerifyReport r = verify_against_oracle(static_cast<std::uint64_t>(n), seed);
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool ok = r.max_deviation <= kVerifyTolerance;
    out << "samples " << r.samples << '\n';
    out << "max deviation " << format_number(r.max_deviation) << " at (jx="
        << format_number(r.worst_couplings.jx) << ", jy=" << format_number(r.worst_couplings.jy)
        << ", jz=" << format_number(r.worst_couplings.jz)
        << ", kt=" << format_number(r.worst_kt) << ")\n";
    out << "elapsed " << std::fixed << std::setprecision(2) << elapsed << " s\n";
    out.unsetf(std::ios::floatfield);
    out << (ok ? "PASS" : "FAIL") << " (tolerance " << format_number(kVerifyTolerance) << ")\n";
    return ok ? kExitOk : kExitCheckFailed;
  }
};

// Expands --config into `--key=value` arguments placed before the user's own
// flags; every option takes its last value, so the command line wins.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  if (args.empty() || args[0].empty() || args[0][0] == '-') return args;
  std::string path;
  for (std::size_t i = 1; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (path.empty()) return args;

  std::ifstream f(path);
  if (!f) throw UsageError("--config: cannot read '" + path + "'");
  std::map<std::string, std::string> entries;
  try {
    entries = parse_config(f);
  } catch (const Error& e) {
    throw UsageError(std::string("--config: ") + e.what());
  }
  std::vector<std::string> out = {args[0]};
  for (const auto& [key, value] : entries) {
    if (key == "config") continue;
    out.push_back((key.size() == 1 ? "-" : "--") + key);
    out.push_back(value);
  }
  out.insert(out.end(), args.begin() + 1, args.end());
  return out;
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::OverflowGuard:
    case ErrorCode::NoConvergence:
      return kExitInternal;
    default:
      return kExitUsage;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Thermal entanglement of the two-qubit Heisenberg XYZ chain", "xyzchain"};
  app.require_subcommand(1);
  app.fallthrough(false);

  EvalCommand eval;
  SweepCommand sweep;
  SweepCommand probs;
  TcCommand tc;
  ScanCommand scan;
  VerifyCommand verify;

  auto add = [&app](const char* name, const char* help) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    sub->add_option("--config", "flat key=value file; flags override it");
    return sub;
  };
  CLI::App* eval_app = add("eval", "concurrence and derived quantities at one point");
  eval.attach(eval_app);
  CLI::App* sweep_app = add("sweep", "sweep one parameter and write CSV");
  sweep.attach(sweep_app);
  CLI::App* probs_app = add("probs", "Bell-state probability table (same CSV schema as sweep)");
  probs.attach(probs_app);
  CLI::App* tc_app = add("tc", "critical temperature");
  tc.attach(tc_app);
  CLI::App* scan_app = add("scan", "search for dC/d(kT) > 0 on a coupling grid");
  scan.attach(scan_app);
  CLI::App* verify_app = add("verify", "closed form vs Wootters oracle on random points");
  verify.attach(verify_app);

  try {
    const std::vector<std::string> expanded = expand_config(args);
    std::vector<std::string> argv_storage = {"xyzchain"};
    argv_storage.insert(argv_storage.end(), expanded.begin(), expanded.end());
    std::vector<const char*> argv;
    for (const auto& a : argv_storage) argv.push_back(a.c_str());
    try {
      app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
      const int code = app.exit(e, out, err);
      return code == 0 ? kExitOk : kExitUsage;
    }

    if (eval_app->parsed()) return eval.execute(out);
    if (sweep_app->parsed()) return sweep.execute(out);
    if (probs_app->parsed()) return probs.execute(out);
    if (tc_app->parsed()) return tc.execute(out);
    if (scan_app->parsed()) return scan.execute(out);
    if (verify_app->parsed()) return verify.execute(out);
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInternal;
  }
}

}  // namespace xyzchain::cli
