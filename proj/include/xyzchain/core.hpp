#pragma once

// Two-qubit XYZ Heisenberg model: couplings, Bell-basis spectrum and the
// closed-form Gibbs state.
//
// Conventions: Boltzmann's constant is fixed to 1, so every temperature is
// supplied as kT in the same energy units as the couplings. The basis order
// is {|00>, |01>, |10>, |11>} everywhere.

#include <array>
#include <optional>
#include <vector>

#include "xyzchain/errors.hpp"

namespace xyzchain {

using Vec4 = std::array<double, 4>;
using Mat4 = std::array<Vec4, 4>;

/// Exchange constants of H = (Jx/4) sx sx + (Jy/4) sy sy + (Jz/4) sz sz.
struct Couplings {
  double jx = 0.0;
  double jy = 0.0;
  double jz = 0.0;

  /// Builds couplings from Delta = jx - jy and Sigma = jx + jy.
  static Couplings from_delta_sigma(double delta, double sigma, double jz) {
    return {(sigma + delta) / 2.0, (sigma - delta) / 2.0, jz};
  }

  double delta() const { return jx - jy; }
  double sigma() const { return jx + jy; }
};

/// Throws Error{NonFiniteInput} unless all three couplings are finite.
void validate(const Couplings& c);

/// Throws Error{NonPositiveTemperature} unless kt > 0 (NaN included).
void validate_temperature(double kt);

/// Dimensionless quantities that parametrize the thermal state.
///
/// The partition function is kept in log form as well: for |J|/kT in the
/// hundreds `z` overflows to +inf while `log_z` stays exact, and nothing
/// downstream divides by `z` directly.
struct ThermalParams {
  double delta = 0.0;                 // jx - jy
  double sigma = 0.0;                 // jx + jy
  std::optional<double> anisotropy;   // delta / sigma; empty when sigma == 0
  double alpha = 0.0;                 // jz / 4kT
  double beta = 0.0;                  // delta / 4kT
  double gamma = 0.0;                 // sigma / 4kT
  double log_z = 0.0;
  double z = 0.0;
  double kt = 0.0;
};

ThermalParams derive_params(const Couplings& c, double kt);

enum class BellState { PhiPlus, PhiMinus, PsiPlus, PsiMinus };

inline constexpr std::array<BellState, 4> kBellStates = {
    BellState::PhiPlus, BellState::PhiMinus, BellState::PsiPlus,
    BellState::PsiMinus};

const char* to_string(BellState s) noexcept;

/// Standard-basis components of a Bell vector.
Vec4 bell_vector(BellState s);

/// Energies absolute closer than this are treated as one degenerate level.
inline constexpr double kDegeneracyTolerance = 1e-12;

struct SpectralDecomp {
  double lambda_phi_plus = 0.0;   // (jz + delta) / 4
  double lambda_phi_minus = 0.0;  // (jz - delta) / 4
  double lambda_psi_plus = 0.0;   // (-jz + sigma) / 4
  double lambda_psi_minus = 0.0;  // (-jz - sigma) / 4

  /// Bell states sorted by ascending energy; ties keep the PhiPlus, PhiMinus,
  /// PsiPlus, PsiMinus order.
  std::array<BellState, 4> ascending{};

  double energy(BellState s) const;

  /// All Bell states whose energy lies within kDegeneracyTolerance of the
  /// lowest one.
  std::vector<BellState> ground_states() const;
};

SpectralDecomp spectral(const Couplings& c);

/// H expanded in the standard basis.
Mat4 hamiltonian_matrix(const Couplings& c);

/// Real symmetric 4x4 state in the standard basis.
struct DensityMatrix4 {
  Mat4 entries{};

  double operator()(int i, int j) const { return entries[i][j]; }
  double trace() const;
};

/// Closed-form exp(-H/kT)/Z. The result is an X-state: only the diagonal and
/// antidiagonal are populated.
DensityMatrix4 thermal_state(const Couplings& c, double kt);

struct BellProbabilities {
  double phi_plus = 0.0;
  double phi_minus = 0.0;
  double psi_plus = 0.0;
  double psi_minus = 0.0;

  double of(BellState s) const;
  double sum() const { return phi_plus + phi_minus + psi_plus + psi_minus; }
};

/// Boltzmann weights exp(-lambda_X/kT)/Z of the four eigenvectors.
BellProbabilities bell_probabilities(const Couplings& c, double kt);

namespace detail {

/// The four hyperbolic combinations that appear in the thermal state and in
/// the concurrence, each multiplied by exp(-log_scale):
///
///   phi_cosh = e^{-a} cosh b,   phi_sinh = e^{-a} sinh|b|,
///   psi_cosh = e^{a}  cosh g,   psi_sinh = e^{a}  sinh|g|.
///
/// log_scale = max(-a + |b|, a + |g|), so every term is at most 1 and the
/// largest cosh term is at least 1/2.
struct ScaledHyperbolics {
  double phi_cosh = 0.0;
  double phi_sinh = 0.0;
  double psi_cosh = 0.0;
  double psi_sinh = 0.0;
  double log_scale = 0.0;
};

ScaledHyperbolics scaled_hyperbolics(double alpha, double beta, double gamma);

}  // namespace detail

}  // namespace xyzchain
