#include "xyzchain/concurrence.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace xyzchain {

const char* to_string(Branch b) noexcept { return b == Branch::C1 ? "C1" : "C2"; }

namespace {

ConcurrenceResult make_result(double raw, Branch branch) {
  return {std::max(0.0, raw), branch, raw};
}

// cosh(x) * e^{-s} and sinh(|x|) * e^{-s}, valid for any s >= |x| - 700.
double scaled_cosh(double x, double s) {
  const double ax = std::abs(x);
  return 0.5 * std::exp(ax - s) * (1.0 + std::exp(-2.0 * ax));
}

double scaled_sinh_abs(double x, double s) {
  const double ax = std::abs(x);
  return -0.5 * std::exp(ax - s) * std::expm1(-2.0 * ax);
}

void check_ratio(double x) {
  if (!std::isfinite(x)) {
    throw Error(ErrorCode::OverflowGuard,
                "coupling/temperature ratio exceeds the representable range");
  }
}

}  // namespace

SqrtEigenvalues sqrt_eigenvalues(const Couplings& c, double kt) {
  const ThermalParams p = derive_params(c, kt);
  const std::array<double, 4> exponents = {-p.alpha + p.beta, -p.alpha - p.beta,
                                           p.alpha + p.gamma, p.alpha - p.gamma};
  const double m = *std::max_element(exponents.begin(), exponents.end());
  std::array<double, 4> w{};
  double total = 0.0;
  for (int i = 0; i < 4; ++i) {
    w[i] = std::exp(exponents[i] - m);
    total += w[i];
  }
  SqrtEigenvalues out;
  out.li_plus = w[0] / total;
  out.li_minus = w[1] / total;
  out.lii_plus = w[2] / total;
  out.lii_minus = w[3] / total;
  out.sorted = {out.li_plus, out.li_minus, out.lii_plus, out.lii_minus};
  std::sort(out.sorted.begin(), out.sorted.end(), std::greater<>());
  return out;
}

BranchValues branch_values(const Couplings& c, double kt) {
  const ThermalParams p = derive_params(c, kt);
  const double b = std::abs(p.beta);
  const double g = std::abs(p.gamma);
  // Gap between the two leading exponents, (-alpha + |beta|) - (alpha + |gamma|),
  // taken straight from the couplings so it is exactly zero on the boundary.
  const double d = (std::abs(p.delta) - std::abs(p.sigma) - 2.0 * c.jz) / (4.0 * kt);
  check_ratio(d);

  // Numerators and denominator scaled by e^{-max}; near d = 0 the leading
  // terms cancel, hence expm1.
  const double eb = std::exp(-2.0 * b);
  const double eg = std::exp(-2.0 * g);
  double n1, n2, denom;
  if (d <= 0.0) {
    const double phi = std::exp(d);
    n1 = -std::expm1(d) - eg - phi * eb;
    n2 = std::expm1(d) - phi * eb - eg;
    denom = (1.0 + eg) + phi * (1.0 + eb);
  } else {
    const double psi = std::exp(-d);
    n1 = std::expm1(-d) - psi * eg - eb;
    n2 = -std::expm1(-d) - eb - psi * eg;
    denom = psi * (1.0 + eg) + (1.0 + eb);
  }
  BranchValues v;
  v.c1 = n1 / denom;
  v.c2 = n2 / denom;
  v.selector = -d;
  return v;
}

ConcurrenceResult concurrence(const Couplings& c, double kt) {
  const BranchValues v = branch_values(c, kt);
  if (v.selector > 0.0) return make_result(v.c1, Branch::C1);
  return make_result(v.c2, Branch::C2);
}

ConcurrenceResult concurrence_xy_isotropic(double j, double kt) {
  validate({j, j, 0.0});
  validate_temperature(kt);
  const double x = j / (2.0 * kt);
  check_ratio(x);
  // (sinh|x| - 1) / (cosh x + 1), numerator and denominator scaled by e^{-|x|}.
  const double s = std::abs(x);
  const double unit = std::exp(-s);
  const double raw = (scaled_sinh_abs(x, s) - unit) / (scaled_cosh(x, s) + unit);
  return make_result(raw, x != 0.0 ? Branch::C1 : Branch::C2);
}

ConcurrenceResult concurrence_xy_anisotropic(double jx, double jy, double kt) {
  validate({jx, jy, 0.0});
  validate_temperature(kt);
  const double beta = (jx - jy) / (4.0 * kt);
  const double gamma = (jx + jy) / (4.0 * kt);
  check_ratio(beta);
  check_ratio(gamma);
  const double s = std::max(std::abs(beta), std::abs(gamma));
  const double denom = scaled_cosh(gamma, s) + scaled_cosh(beta, s);

  // |delta| < 1 is the same region as jx * jy > 0.
  if (jx * jy > 0.0) {
    return make_result((scaled_sinh_abs(gamma, s) - scaled_cosh(beta, s)) / denom,
                       Branch::C1);
  }
  return make_result((scaled_sinh_abs(beta, s) - scaled_cosh(gamma, s)) / denom,
                     Branch::C2);
}

ConcurrenceResult concurrence_xxx(double j, double kt) {
  validate({j, j, j});
  validate_temperature(kt);
  const double alpha = j / (4.0 * kt);
  check_ratio(alpha);
  if (j > 0.0) {
    const double t = 3.0 * std::exp(-4.0 * alpha);
    return make_result((1.0 - t) / (1.0 + t), Branch::C1);
  }
  // Ferromagnetic side: the triplet is the ground level and C = 0. The raw
  // value is the C2 expression on this slice, -(e^{4a} + 1) / (e^{4a} + 3).
  const double e = std::exp(4.0 * alpha);
  return make_result(-(e + 1.0) / (e + 3.0), Branch::C2);
}

ConcurrenceResult concurrence_xxz(double j, double jz, double kt) {
  validate({j, j, jz});
  validate_temperature(kt);
  const double alpha = jz / (4.0 * kt);
  const double gamma = j / (2.0 * kt);
  check_ratio(alpha);
  check_ratio(gamma);

  // Everything is scaled by e^{-s}; e^{2a} cosh(g) = e^{2a + |g|}(1 + e^{-2|g|})/2.
  const double s = std::max(2.0 * alpha + std::abs(gamma), 0.0);
  const double one = std::exp(-s);
  const double lead = std::exp(2.0 * alpha + std::abs(gamma) - s);
  const double e2a_cosh = 0.5 * lead * (1.0 + std::exp(-2.0 * std::abs(gamma)));
  const double e2a_sinh = -0.5 * lead * std::expm1(-2.0 * std::abs(gamma));
  const double denom = e2a_cosh + one;

  if (2.0 * alpha <= -std::abs(gamma)) {
    // |Phi+-> degenerate ground level: separable at every temperature.
    return make_result(-e2a_cosh / denom, Branch::C2);
  }
  return make_result((e2a_sinh - one) / denom, Branch::C1);
}

}  // namespace xyzchain
