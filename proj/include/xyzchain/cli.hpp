#pragma once

// Command-line front end: subcommands, figure presets, CSV emission and the
// oracle verification harness. `run` is the whole program minus main(), so
// tests can drive it in-process.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "xyzchain/analysis.hpp"

namespace xyzchain::cli {

// Exit statuses.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitCheckFailed = 3;

inline constexpr const char* kSweepCsvHeader =
    "var,value,C,branch,p_phi_plus,p_phi_minus,p_psi_plus,p_psi_minus";

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// 12 significant digits, shortest form ("%.12g").
std::string format_number(double x);

/// One series of a sweep CSV. `label` goes into the `var` column: the swept
/// variable name, optionally qualified with the series parameter, e.g.
/// "kt@anisotropy=1.2".
struct LabeledSweep {
  std::string label;
  analysis::SweepSpec spec;
};

/// Series for --preset (see preset_names(); fig5 and fig6 alias fig5aa and
/// fig6aa). Throws Error{InvalidSpec} for an unknown
/// name.
std::vector<LabeledSweep> figure_preset(const std::string& name);

std::vector<std::string> preset_names();

void write_sweep_csv(std::ostream& os, const std::vector<LabeledSweep>& series,
                     const std::vector<analysis::SweepTable>& tables);

void write_violations_csv(std::ostream& os, const analysis::ScanReport& report);

/// Parses flat `key=value` lines; blank lines and `#` comments are skipped.
/// Throws Error{InvalidSpec} on a malformed line.
std::map<std::string, std::string> parse_config(std::istream& is);

struct VerifyReport {
  std::uint64_t samples = 0;
  double max_deviation = 0.0;
  Couplings worst_couplings;
  double worst_kt = 0.0;
};

inline constexpr double kVerifyTolerance = 1e-9;

/// Compares the closed-form concurrence with the Wootters oracle on the
/// numeric Gibbs state at `n` pseudo-random points: jx, jy, jz uniform in
/// [-5, 5] and kt uniform in [0.02, 5]. The sequence comes from
/// std::mt19937_64(seed), mapping each 64-bit draw x to (x >> 11) * 2^-53 in
/// the order jx, jy, jz, kt.
VerifyReport verify_against_oracle(std::uint64_t n, std::uint64_t seed);

/// --threads, else XYZCHAIN_THREADS, else the hardware concurrency.
unsigned resolve_threads(int flag_value);

}  // namespace xyzchain::cli
