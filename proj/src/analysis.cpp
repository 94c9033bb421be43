#include "xyzchain/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "parallel.hpp"
#include "xyzchain/oracle.hpp"

namespace xyzchain::analysis {

namespace {

std::string describe(const Couplings& c, double kt) {
  std::ostringstream os;
  os.precision(12);
  os << "(jx=" << c.jx << ", jy=" << c.jy << ", jz=" << c.jz << ", kt=" << kt << ")";
  return os.str();
}

[[noreturn]] void invalid(const std::string& what) {
  throw Error(ErrorCode::InvalidSpec, what);
}

}  // namespace

CriticalTemperature critical_temperature(const Couplings& c, double kt_lo, double kt_hi) {
  if (!std::isfinite(kt_lo) || !std::isfinite(kt_hi) || !(kt_lo > 0.0) || !(kt_lo < kt_hi)) {
    throw Error(ErrorCode::InvalidBracket, "bracket must satisfy 0 < kt_lo < kt_hi");
  }
  validate(c);
  auto raw = [&c](double kt) { return concurrence(c, kt).raw; };

  if (raw(kt_hi) > 0.0) return {TcStatus::AboveBracket, kt_hi};

  const double width = kt_hi - kt_lo;
  double upper = kt_hi;  // raw(upper) <= 0
  for (int k = kTcScanCells - 1; k >= 0; --k) {
    const double t = kt_lo + width * static_cast<double>(k) / kTcScanCells;
    if (raw(t) > 0.0) {
      double lo = t;  // raw(lo) > 0
      double hi = upper;
      while (hi - lo > kTcTolerance) {
        const double mid = 0.5 * (lo + hi);
        if (raw(mid) > 0.0) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      return {TcStatus::Found, 0.5 * (lo + hi)};
    }
    upper = t;
  }
  return {TcStatus::NeverEntangled, 0.0};
}

double concurrence_zero_t(const Couplings& c) {
  const std::vector<BellState> ground = spectral(c).ground_states();
  if (ground.size() == 1) return 1.0;

  // Degenerate level: equal Boltzmann weights on every ground Bell state.
  DensityMatrix4 rho;
  const double w = 1.0 / static_cast<double>(ground.size());
  for (BellState s : ground) {
    const Vec4 v = bell_vector(s);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) rho.entries[i][j] += w * v[i] * v[j];
  }
  return oracle::wootters(rho);
}

double zero_manifold_distance(const Couplings& c) {
  validate(c);
  return 2.0 * c.jz - (std::abs(c.delta()) - std::abs(c.sigma()));
}

double temperature_derivative(const Couplings& c, double kt, double h) {
  if (!(h > 0.0) || !std::isfinite(h)) invalid("finite-difference step must be > 0");
  if (!(kt - h > 0.0)) {
    throw Error(ErrorCode::NonPositiveTemperature, "kt - h must be > 0");
  }
  const double up = concurrence(c, kt + h).value;
  const double down = concurrence(c, kt - h).value;
  return (up - down) / (2.0 * h);
}

// ---------------------------------------------------------------------------

const char* to_string(SweepVariable v) noexcept {
  switch (v) {
    case SweepVariable::Delta: return "delta";
    case SweepVariable::Sigma: return "sigma";
    case SweepVariable::Jz: return "jz";
    case SweepVariable::Jx: return "jx";
    case SweepVariable::Jy: return "jy";
    case SweepVariable::KT: return "kt";
    case SweepVariable::AnisotropyDelta: return "anisotropy";
  }
  return "unknown";
}

std::optional<SweepVariable> parse_sweep_variable(const std::string& name) {
  for (auto v : {SweepVariable::Delta, SweepVariable::Sigma, SweepVariable::Jz,
                 SweepVariable::Jx, SweepVariable::Jy, SweepVariable::KT,
                 SweepVariable::AnisotropyDelta}) {
    if (name == to_string(v)) return v;
  }
  return std::nullopt;
}

namespace {

double require(const std::optional<double>& v, const char* name) {
  if (!v) invalid(std::string("sweep requires a fixed value for ") + name);
  if (!std::isfinite(*v)) invalid(std::string("fixed ") + name + " must be finite");
  return *v;
}

// Delta from either delta or anisotropy * sigma.
double fixed_delta(const SweepFixed& f, double sigma) {
  if (f.delta && f.anisotropy) invalid("give either delta or anisotropy, not both");
  if (f.anisotropy) return require(f.anisotropy, "anisotropy") * sigma;
  return require(f.delta, "delta");
}

Couplings fixed_couplings(const SweepFixed& f, double jz) {
  const bool direct = f.jx || f.jy;
  const bool reparam = f.delta || f.sigma || f.anisotropy;
  if (direct && reparam) invalid("give couplings as (jx, jy) or (delta, sigma), not both");
  if (direct) return {require(f.jx, "jx"), require(f.jy, "jy"), jz};
  const double sigma = require(f.sigma, "sigma");
  return Couplings::from_delta_sigma(fixed_delta(f, sigma), sigma, jz);
}

}  // namespace

SweepPoint resolve_point(const SweepSpec& spec, double value) {
  const SweepFixed& f = spec.fixed;
  const double jz = spec.variable == SweepVariable::Jz ? value : f.jz.value_or(0.0);
  const double kt = spec.variable == SweepVariable::KT ? value : require(f.kt, "kt");

  SweepPoint p;
  p.kt = kt;
  switch (spec.variable) {
    case SweepVariable::Jx:
      p.couplings = {value, require(f.jy, "jy"), jz};
      break;
    case SweepVariable::Jy:
      p.couplings = {require(f.jx, "jx"), value, jz};
      break;
    case SweepVariable::Delta:
      p.couplings = Couplings::from_delta_sigma(value, require(f.sigma, "sigma"), jz);
      break;
    case SweepVariable::Sigma:
      p.couplings = Couplings::from_delta_sigma(fixed_delta(f, value), value, jz);
      break;
    case SweepVariable::AnisotropyDelta: {
      const double sigma = require(f.sigma, "sigma");
      p.couplings = Couplings::from_delta_sigma(value * sigma, sigma, jz);
      break;
    }
    case SweepVariable::Jz:
    case SweepVariable::KT:
      p.couplings = fixed_couplings(f, jz);
      break;
  }
  return p;
}

void validate(const SweepSpec& spec) {
  if (!std::isfinite(spec.start) || !std::isfinite(spec.stop)) {
    invalid("sweep bounds must be finite");
  }
  if (!(spec.start < spec.stop)) invalid("sweep requires start < stop");
  if (spec.steps < 2) invalid("sweep requires steps >= 2");
  if (spec.fixed.jz && !std::isfinite(*spec.fixed.jz)) invalid("fixed jz must be finite");
  // Resolving both ends checks the fixed parameters; kt is monotone in the
  // grid, so positivity at the ends covers every point.
  for (double v : {spec.start, spec.stop}) {
    const SweepPoint p = resolve_point(spec, v);
    validate(p.couplings);
    validate_temperature(p.kt);
  }
}

double sweep_value(const SweepSpec& spec, int i) {
  if (i == spec.steps - 1) return spec.stop;
  return spec.start + (spec.stop - spec.start) * static_cast<double>(i) / (spec.steps - 1);
}

SweepTable sweep(const SweepSpec& spec, unsigned threads) {
  validate(spec);
  SweepTable table;
  table.variable = spec.variable;
  table.records.resize(static_cast<std::size_t>(spec.steps));
  detail::parallel_for(table.records.size(), threads, [&](std::size_t i) {
    const double v = sweep_value(spec, static_cast<int>(i));
    const SweepPoint p = resolve_point(spec, v);
    try {
      table.records[i] = {v, concurrence(p.couplings, p.kt),
                          bell_probabilities(p.couplings, p.kt)};
    } catch (const Error& e) {
      throw Error(e.code(), std::string(e.what()) + " at sweep point " +
                                describe(p.couplings, p.kt));
    }
  });
  return table;
}

// ---------------------------------------------------------------------------

ScanSpec full_grid_scan() {
  ScanSpec s;
  s.step = 0.01;
  return s;
}

void validate(const ScanSpec& spec) {
  if (!std::isfinite(spec.range_lo) || !std::isfinite(spec.range_hi) ||
      spec.range_lo > spec.range_hi) {
    invalid("scan range must satisfy lo <= hi");
  }
  if (!(spec.step > 0.0) || !std::isfinite(spec.step)) invalid("scan step must be > 0");
  if (spec.kt_samples.empty()) invalid("scan needs at least one kt sample");
  if (!(spec.h > 0.0) || !std::isfinite(spec.h)) invalid("finite-difference step must be > 0");
  if (!(spec.threshold >= 0.0)) invalid("threshold must be >= 0");
  for (double kt : spec.kt_samples) {
    if (!std::isfinite(kt) || !(kt - spec.h > 0.0)) {
      throw Error(ErrorCode::NonPositiveTemperature,
                  "every kt sample must exceed the finite-difference step");
    }
  }
}

std::vector<double> scan_axis(const ScanSpec& spec) {
  // Round so that e.g. [-2, 2] / 0.05 gives 81 points despite 0.05 not being
  // exactly representable.
  const double cells = (spec.range_hi - spec.range_lo) / spec.step;
  const auto n = static_cast<std::size_t>(std::floor(cells + 1e-9)) + 1;
  std::vector<double> axis(n);
  for (std::size_t i = 0; i < n; ++i) axis[i] = spec.range_lo + spec.step * static_cast<double>(i);
  if (n > 1 && std::abs(axis.back() - spec.range_hi) < 1e-9 * spec.step) {
    axis.back() = spec.range_hi;
  }
  return axis;
}

ScanReport monotonicity_scan(const ScanSpec& spec, unsigned threads) {
  validate(spec);
  const std::vector<double> axis = scan_axis(spec);
  const std::size_t n = axis.size();

  // One slab per jx value; merged in jx order afterwards.
  struct Slab {
    std::vector<Violation> violations;
    double max_derivative = -std::numeric_limits<double>::infinity();
  };
  std::vector<Slab> slabs(n);
  detail::parallel_for(n, threads, [&](std::size_t ix) {
    Slab& slab = slabs[ix];
    for (double jy : axis) {
      for (double jz : axis) {
        const Couplings c{axis[ix], jy, jz};
        for (double kt : spec.kt_samples) {
          double d = 0.0;
          try {
            d = temperature_derivative(c, kt, spec.h);
          } catch (const Error& e) {
            throw Error(e.code(),
                        std::string(e.what()) + " at scan point " + describe(c, kt));
          }
          slab.max_derivative = std::max(slab.max_derivative, d);
          if (d > spec.threshold) slab.violations.push_back({c, kt, d});
        }
      }
    }
  });

  ScanReport report;
  report.grid = spec;
  report.axis_points = n;
  report.total_points = static_cast<std::uint64_t>(n) * n * n * spec.kt_samples.size();
  report.max_derivative = -std::numeric_limits<double>::infinity();
  for (auto& slab : slabs) {
    report.max_derivative = std::max(report.max_derivative, slab.max_derivative);
    report.violations.insert(report.violations.end(), slab.violations.begin(),
                             slab.violations.end());
  }
  return report;
}

}  // namespace xyzchain::analysis
