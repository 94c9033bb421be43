#include "xyzchain/core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace xyzchain {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonPositiveTemperature: return "NonPositiveTemperature";
    case ErrorCode::NonFiniteInput: return "NonFiniteInput";
    case ErrorCode::OverflowGuard: return "OverflowGuard";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::NotPositiveSemidefinite: return "NotPositiveSemidefinite";
    case ErrorCode::InvalidBracket: return "InvalidBracket";
    case ErrorCode::InvalidSpec: return "InvalidSpec";
  }
  return "Unknown";
}

const char* to_string(BellState s) noexcept {
  switch (s) {
    case BellState::PhiPlus: return "phi_plus";
    case BellState::PhiMinus: return "phi_minus";
    case BellState::PsiPlus: return "psi_plus";
    case BellState::PsiMinus: return "psi_minus";
  }
  return "unknown";
}

void validate(const Couplings& c) {
  if (!std::isfinite(c.jx) || !std::isfinite(c.jy) || !std::isfinite(c.jz)) {
    throw Error(ErrorCode::NonFiniteInput, "couplings must be finite");
  }
}

void validate_temperature(double kt) {
  if (!(kt > 0.0)) {
    throw Error(ErrorCode::NonPositiveTemperature, "kt must be > 0");
  }
  if (!std::isfinite(kt)) {
    throw Error(ErrorCode::NonFiniteInput, "kt must be finite");
  }
}

namespace detail {

ScaledHyperbolics scaled_hyperbolics(double alpha, double beta, double gamma) {
  const double b = std::abs(beta);
  const double g = std::abs(gamma);
  const double phi_exp = -alpha + b;
  const double psi_exp = alpha + g;
  const double m = std::max(phi_exp, psi_exp);
  if (!std::isfinite(m) || !std::isfinite(alpha - b) || !std::isfinite(alpha - g)) {
    throw Error(ErrorCode::OverflowGuard,
                "coupling/temperature ratio exceeds the representable range");
  }

  // cosh x = e^x (1 + e^{-2x}) / 2, sinh x = -e^x expm1(-2x) / 2 for x >= 0.
  const double phi_lead = std::exp(phi_exp - m);
  const double psi_lead = std::exp(psi_exp - m);

  ScaledHyperbolics h;
  h.phi_cosh = 0.5 * phi_lead * (1.0 + std::exp(-2.0 * b));
  h.phi_sinh = -0.5 * phi_lead * std::expm1(-2.0 * b);
  h.psi_cosh = 0.5 * psi_lead * (1.0 + std::exp(-2.0 * g));
  h.psi_sinh = -0.5 * psi_lead * std::expm1(-2.0 * g);
  h.log_scale = m;
  return h;
}

}  // namespace detail

ThermalParams derive_params(const Couplings& c, double kt) {
  validate(c);
  validate_temperature(kt);

  ThermalParams p;
  p.kt = kt;
  p.delta = c.delta();
  p.sigma = c.sigma();
  if (p.sigma != 0.0) p.anisotropy = p.delta / p.sigma;

  const double four_kt = 4.0 * kt;
  p.alpha = c.jz / four_kt;
  p.beta = p.delta / four_kt;
  p.gamma = p.sigma / four_kt;

  const auto h = detail::scaled_hyperbolics(p.alpha, p.beta, p.gamma);
  p.log_z = std::log(2.0 * (h.phi_cosh + h.psi_cosh)) + h.log_scale;
  p.z = std::exp(p.log_z);
  return p;
}

Vec4 bell_vector(BellState s) {
  const double r = 1.0 / std::sqrt(2.0);
  switch (s) {
    case BellState::PhiPlus: return {r, 0.0, 0.0, r};
    case BellState::PhiMinus: return {r, 0.0, 0.0, -r};
    case BellState::PsiPlus: return {0.0, r, r, 0.0};
    case BellState::PsiMinus: return {0.0, r, -r, 0.0};
  }
  return {};
}

double SpectralDecomp::energy(BellState s) const {
  switch (s) {
    case BellState::PhiPlus: return lambda_phi_plus;
    case BellState::PhiMinus: return lambda_phi_minus;
    case BellState::PsiPlus: return lambda_psi_plus;
    case BellState::PsiMinus: return lambda_psi_minus;
  }
  return 0.0;
}

std::vector<BellState> SpectralDecomp::ground_states() const {
  const double lowest = energy(ascending.front());
  std::vector<BellState> out;
  for (BellState s : ascending) {
    if (energy(s) - lowest <= kDegeneracyTolerance) out.push_back(s);
  }
  return out;
}

SpectralDecomp spectral(const Couplings& c) {
  validate(c);
  SpectralDecomp d;
  d.lambda_phi_plus = (c.jz + c.delta()) / 4.0;
  d.lambda_phi_minus = (c.jz - c.delta()) / 4.0;
  d.lambda_psi_plus = (-c.jz + c.sigma()) / 4.0;
  d.lambda_psi_minus = (-c.jz - c.sigma()) / 4.0;
  d.ascending = kBellStates;
  std::stable_sort(d.ascending.begin(), d.ascending.end(),
                   [&d](BellState a, BellState b) { return d.energy(a) < d.energy(b); });
  return d;
}

namespace {

using Mat2 = std::array<std::array<double, 2>, 2>;

Mat4 kron(const Mat2& a, const Mat2& b) {
  Mat4 out{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) out[2 * i + k][2 * j + l] = a[i][j] * b[k][l];
  return out;
}

void add_scaled(Mat4& acc, const Mat4& m, double s) {
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) acc[i][j] += s * m[i][j];
}

}  // namespace

Mat4 hamiltonian_matrix(const Couplings& c) {
  validate(c);
  constexpr Mat2 sx{{{0.0, 1.0}, {1.0, 0.0}}};
  constexpr Mat2 sz{{{1.0, 0.0}, {0.0, -1.0}}};
  // i*sy is real; sy (x) sy = -(i sy) (x) (i sy).
  constexpr Mat2 isy{{{0.0, 1.0}, {-1.0, 0.0}}};

  Mat4 h{};
  add_scaled(h, kron(sx, sx), c.jx / 4.0);
  add_scaled(h, kron(isy, isy), -c.jy / 4.0);
  add_scaled(h, kron(sz, sz), c.jz / 4.0);
  return h;
}

double DensityMatrix4::trace() const {
  return entries[0][0] + entries[1][1] + entries[2][2] + entries[3][3];
}

DensityMatrix4 thermal_state(const Couplings& c, double kt) {
  const ThermalParams p = derive_params(c, kt);
  const auto h = detail::scaled_hyperbolics(p.alpha, p.beta, p.gamma);
  const double norm = 2.0 * (h.phi_cosh + h.psi_cosh);

  const double outer_diag = h.phi_cosh / norm;
  const double inner_diag = h.psi_cosh / norm;
  const double corner = (p.beta < 0.0 ? h.phi_sinh : -h.phi_sinh) / norm;
  const double inner_off = (p.gamma < 0.0 ? h.psi_sinh : -h.psi_sinh) / norm;

  DensityMatrix4 rho;
  auto& e = rho.entries;
  e[0][0] = e[3][3] = outer_diag;
  e[1][1] = e[2][2] = inner_diag;
  e[0][3] = e[3][0] = corner;
  e[1][2] = e[2][1] = inner_off;
  return rho;
}

double BellProbabilities::of(BellState s) const {
  switch (s) {
    case BellState::PhiPlus: return phi_plus;
    case BellState::PhiMinus: return phi_minus;
    case BellState::PsiPlus: return psi_plus;
    case BellState::PsiMinus: return psi_minus;
  }
  return 0.0;
}

BellProbabilities bell_probabilities(const Couplings& c, double kt) {
  const ThermalParams p = derive_params(c, kt);
  // -lambda/kT for Phi+, Phi-, Psi+, Psi-.
  const std::array<double, 4> exponents = {-p.alpha - p.beta, -p.alpha + p.beta,
                                           p.alpha - p.gamma, p.alpha + p.gamma};
  const double m = *std::max_element(exponents.begin(), exponents.end());
  std::array<double, 4> w{};
  double total = 0.0;
  for (int i = 0; i < 4; ++i) {
    w[i] = std::exp(exponents[i] - m);
    total += w[i];
  }
  return {w[0] / total, w[1] / total, w[2] / total, w[3] / total};
}

}  // namespace xyzchain
