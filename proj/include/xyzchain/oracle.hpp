#pragma once

// Brute-force reference path: numeric Gibbs state and the textbook Wootters
// procedure, built on a small cyclic Jacobi eigensolver. Nothing here uses the
// closed forms from core/concurrence except the Hamiltonian matrix itself.

#include <array>

#include "xyzchain/core.hpp"

namespace xyzchain::oracle {

struct EigenSystem4 {
  Vec4 eigenvalues{};                  // ascending
  std::array<Vec4, 4> eigenvectors{};  // eigenvectors[k] pairs with eigenvalues[k]
};

/// Cyclic Jacobi on a real symmetric 4x4 matrix. Sweep order is fixed, so the
/// output is bit-for-bit reproducible. Each eigenvector is normalized so that
/// its largest-magnitude component is positive.
EigenSystem4 symmetric_eigen(const Mat4& a);

/// Principal square root of a positive semidefinite matrix; eigenvalues in
/// [-1e-9, 0) are clamped to zero.
Mat4 matrix_sqrt(const Mat4& a);

/// exp(-H/kT)/Z from the numeric spectrum of H.
DensityMatrix4 gibbs_state_numeric(const Couplings& c, double kt);

/// (sy x sy) rho* (sy x sy) for real rho.
DensityMatrix4 spin_flip(const DensityMatrix4& rho);

/// Singular values of a real 4x4 matrix, descending (one-sided Jacobi).
Vec4 singular_values(const Mat4& a);

/// Square roots of the eigenvalues of rho * spin_flip(rho), descending.
/// Computed as the singular values of spin_flip(sqrt(rho)) * sqrt(rho), whose
/// squares are the spectrum of sqrt(rho) spin_flip(rho) sqrt(rho).
Vec4 wootters_lambdas(const DensityMatrix4& rho);

/// max(0, l1 - l2 - l3 - l4).
double wootters(const DensityMatrix4& rho);

Mat4 multiply(const Mat4& a, const Mat4& b);

}  // namespace xyzchain::oracle
