#pragma once

// Closed-form concurrence of the XYZ thermal state and its special-case
// reductions (XY isotropic, XY anisotropic, XXX, XXZ).

#include <array>

#include "xyzchain/core.hpp"

namespace xyzchain {

/// Which of the two closed-form expressions produced the value.
/// C1 applies when 2 alpha > |beta| - |gamma|, C2 otherwise (ties go to C2).
enum class Branch { C1, C2 };

const char* to_string(Branch b) noexcept;

struct ConcurrenceResult {
  double value = 0.0;  // max(0, raw), in [0, 1]
  Branch branch = Branch::C2;
  double raw = 0.0;    // signed pre-clamp value of the selected branch
};

/// Square roots of the eigenvalues of rho * spin_flip(rho).
struct SqrtEigenvalues {
  double li_plus = 0.0;    // e^{-alpha + beta} / Z
  double li_minus = 0.0;   // e^{-alpha - beta} / Z
  double lii_plus = 0.0;   // e^{alpha + gamma} / Z
  double lii_minus = 0.0;  // e^{alpha - gamma} / Z
  std::array<double, 4> sorted{};  // descending
};

SqrtEigenvalues sqrt_eigenvalues(const Couplings& c, double kt);

/// Both branch expressions evaluated at the same point, before clamping.
struct BranchValues {
  double c1 = 0.0;
  double c2 = 0.0;
  /// 2 alpha - (|beta| - |gamma|), i.e. (2 jz - |Delta| + |Sigma|) / 4kT;
  /// positive selects C1.
  double selector = 0.0;
};

BranchValues branch_values(const Couplings& c, double kt);

ConcurrenceResult concurrence(const Couplings& c, double kt);

/// jx = jy = j, jz = 0.
ConcurrenceResult concurrence_xy_isotropic(double j, double kt);

/// jz = 0, arbitrary jx, jy.
ConcurrenceResult concurrence_xy_anisotropic(double jx, double jy, double kt);

/// jx = jy = jz = j.
ConcurrenceResult concurrence_xxx(double j, double kt);

/// jx = jy = j, independent jz.
ConcurrenceResult concurrence_xxz(double j, double jz, double kt);

}  // namespace xyzchain
