#pragma once

// Studies built on the closed form: critical temperatures, parameter sweeps,
// the zero-entanglement manifold, the T -> 0 limit and the dC/d(kT) scan.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "xyzchain/concurrence.hpp"
#include "xyzchain/core.hpp"

namespace xyzchain::analysis {

// ---------------------------------------------------------------------------
// Critical temperature

enum class TcStatus {
  Found,           // sign change of the raw concurrence inside the bracket
  NeverEntangled,  // raw <= 0 at every scanned temperature
  AboveBracket,    // still entangled at kt_hi
};

struct CriticalTemperature {
  TcStatus status = TcStatus::NeverEntangled;
  double kt = 0.0;  // the root when Found, kt_hi when AboveBracket

  std::optional<double> value() const {
    if (status == TcStatus::Found) return kt;
    return std::nullopt;
  }
};

inline constexpr int kTcScanCells = 256;
inline constexpr double kTcTolerance = 1e-8;

/// Largest zero of the pre-clamp concurrence in [kt_lo, kt_hi]: descending
/// scan over kTcScanCells cells, then bisection to kTcTolerance.
CriticalTemperature critical_temperature(const Couplings& c, double kt_lo, double kt_hi);

// ---------------------------------------------------------------------------
// Zero-temperature limit and the zero-entanglement manifold

/// Concurrence of the equal-weight mixture over the (possibly degenerate)
/// ground level of H.
double concurrence_zero_t(const Couplings& c);

/// 2 jz - (|Delta| - |Sigma|); zero exactly on the manifold where the thermal
/// state is separable at every temperature.
double zero_manifold_distance(const Couplings& c);

/// Central difference (C(kt + h) - C(kt - h)) / 2h of the clamped concurrence.
double temperature_derivative(const Couplings& c, double kt, double h);

// ---------------------------------------------------------------------------
// Sweeps

enum class SweepVariable { Delta, Sigma, Jz, Jx, Jy, KT, AnisotropyDelta };

const char* to_string(SweepVariable v) noexcept;
std::optional<SweepVariable> parse_sweep_variable(const std::string& name);

/// Parameters held constant during a sweep. Couplings are given either as
/// (jx, jy) or as (delta | anisotropy, sigma); jz defaults to 0.
struct SweepFixed {
  std::optional<double> jx, jy, jz, delta, sigma, anisotropy, kt;
};

struct SweepSpec {
  SweepVariable variable = SweepVariable::KT;
  double start = 0.0;
  double stop = 0.0;
  int steps = 2;
  SweepFixed fixed;
};

struct SweepPoint {
  Couplings couplings;
  double kt = 0.0;
};

/// Throws Error{InvalidSpec} (or the relevant core error) on a bad spec.
void validate(const SweepSpec& spec);

/// Grid value i of the sweep; the last point is exactly `stop`.
double sweep_value(const SweepSpec& spec, int i);

/// Couplings and temperature for one value of the swept variable.
SweepPoint resolve_point(const SweepSpec& spec, double value);

struct SweepRecord {
  double value = 0.0;
  ConcurrenceResult concurrence;
  BellProbabilities probabilities;
};

struct SweepTable {
  SweepVariable variable = SweepVariable::KT;
  std::vector<SweepRecord> records;
};

/// Evaluates every grid point, using up to `threads` workers. Record order is
/// the grid order regardless of the thread count.
SweepTable sweep(const SweepSpec& spec, unsigned threads = 1);

// ---------------------------------------------------------------------------
// Monotonicity scan

struct ScanSpec {
  double range_lo = -2.0;
  double range_hi = 2.0;
  double step = 0.05;
  std::vector<double> kt_samples = {0.1, 0.3, 0.6, 1.0, 2.0};
  double h = 1e-4;
  double threshold = 1e-7;
};

/// The fine grid: step 0.01 over [-2, 2].
ScanSpec full_grid_scan();

struct Violation {
  Couplings couplings;
  double kt = 0.0;
  double derivative = 0.0;
};

struct ScanReport {
  ScanSpec grid;
  std::size_t axis_points = 0;   // per coupling axis
  std::uint64_t total_points = 0;
  double max_derivative = 0.0;   // largest dC/d(kT) seen anywhere
  std::vector<Violation> violations;
};

void validate(const ScanSpec& spec);

/// Coupling values along one axis of the scan grid.
std::vector<double> scan_axis(const ScanSpec& spec);

/// Evaluates temperature_derivative over axis^3 x kt_samples. Violations are
/// the points whose derivative exceeds the threshold, in grid order.
ScanReport monotonicity_scan(const ScanSpec& spec, unsigned threads = 1);

}  // namespace xyzchain::analysis
