#include "xyzchain/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

namespace xyzchain::oracle {

namespace {

constexpr int kMaxSweeps = 100;
constexpr double kOffDiagonalTolerance = 1e-14;
constexpr double kSymmetryTolerance = 1e-12;
constexpr double kNegativeEigenTolerance = 1e-9;

double max_off_diagonal(const Mat4& a) {
  double off = 0.0;
  for (int p = 0; p < 4; ++p)
    for (int q = p + 1; q < 4; ++q) off = std::max(off, std::abs(a[p][q]));
  return off;
}

void check_symmetric(const Mat4& a) {
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      if (!std::isfinite(a[i][j])) {
        throw Error(ErrorCode::NonFiniteInput, "matrix has non-finite entries");
      }
      if (std::abs(a[i][j] - a[j][i]) > kSymmetryTolerance) {
        throw Error(ErrorCode::NotSymmetric, "matrix is not symmetric");
      }
    }
  }
}

// One Jacobi rotation annihilating a[p][q]; v accumulates the rotations.
void rotate(Mat4& a, Mat4& v, int p, int q) {
  const double apq = a[p][q];
  if (apq == 0.0) return;

  const double theta = 0.5 * (a[q][q] - a[p][p]) / apq;
  double t = 1.0 / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
  if (!std::isfinite(theta * theta)) t = 0.5 / std::abs(theta);
  if (theta < 0.0) t = -t;
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;
  const double tau = s / (1.0 + c);

  a[p][p] -= t * apq;
  a[q][q] += t * apq;
  a[p][q] = a[q][p] = 0.0;
  for (int r = 0; r < 4; ++r) {
    if (r == p || r == q) continue;
    const double g = a[r][p];
    const double h = a[r][q];
    a[r][p] = a[p][r] = g - s * (h + g * tau);
    a[r][q] = a[q][r] = h + s * (g - h * tau);
  }
  for (int r = 0; r < 4; ++r) {
    const double g = v[r][p];
    const double h = v[r][q];
    v[r][p] = g - s * (h + g * tau);
    v[r][q] = h + s * (g - h * tau);
  }
}

Mat4 transpose(const Mat4& a) {
  Mat4 out{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out[i][j] = a[j][i];
  return out;
}

Mat4 symmetrized(const Mat4& a) {
  Mat4 out = a;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) out[i][j] = out[j][i] = 0.5 * (a[i][j] + a[j][i]);
  return out;
}

// V f(w) V^T for an eigensystem, exactly symmetric.
Mat4 reassemble(const EigenSystem4& es, const Vec4& weights) {
  Mat4 out{};
  for (int i = 0; i < 4; ++i) {
    for (int j = i; j < 4; ++j) {
      double acc = 0.0;
      for (int k = 0; k < 4; ++k) {
        acc += weights[k] * es.eigenvectors[k][i] * es.eigenvectors[k][j];
      }
      out[i][j] = out[j][i] = acc;
    }
  }
  return out;
}

}  // namespace

Mat4 multiply(const Mat4& a, const Mat4& b) {
  Mat4 out{};
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k)
      for (int j = 0; j < 4; ++j) out[i][j] += a[i][k] * b[k][j];
  return out;
}

EigenSystem4 symmetric_eigen(const Mat4& input) {
  check_symmetric(input);
  Mat4 a = symmetrized(input);
  Mat4 v{};
  for (int i = 0; i < 4; ++i) v[i][i] = 1.0;

  int sweep = 0;
  while (max_off_diagonal(a) > kOffDiagonalTolerance) {
    if (++sweep > kMaxSweeps) {
      throw Error(ErrorCode::NoConvergence, "Jacobi iteration did not converge");
    }
    for (int p = 0; p < 4; ++p) {
      for (int q = p + 1; q < 4; ++q) {
        // Below the rounding floor of both diagonal entries: drop it.
        const double g = 100.0 * std::abs(a[p][q]);
        if (sweep > 4 && std::abs(a[p][p]) + g == std::abs(a[p][p]) &&
            std::abs(a[q][q]) + g == std::abs(a[q][q])) {
          a[p][q] = a[q][p] = 0.0;
          continue;
        }
        rotate(a, v, p, q);
      }
    }
  }

  std::array<int, 4> order{};
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&a](int x, int y) { return a[x][x] < a[y][y]; });

  const Mat4 vt = transpose(v);
  EigenSystem4 es;
  for (int k = 0; k < 4; ++k) {
    es.eigenvalues[k] = a[order[k]][order[k]];
    Vec4 vec = vt[order[k]];
    const auto big = std::max_element(vec.begin(), vec.end(), [](double x, double y) {
      return std::abs(x) < std::abs(y);
    });
    if (*big < 0.0) {
      for (double& x : vec) x = -x;
    }
    es.eigenvectors[k] = vec;
  }
  return es;
}

Mat4 matrix_sqrt(const Mat4& a) {
  const EigenSystem4 es = symmetric_eigen(a);
  Vec4 roots{};
  for (int k = 0; k < 4; ++k) {
    if (es.eigenvalues[k] < -kNegativeEigenTolerance) {
      throw Error(ErrorCode::NotPositiveSemidefinite,
                  "matrix has a negative eigenvalue");
    }
    roots[k] = std::sqrt(std::max(0.0, es.eigenvalues[k]));
  }
  return reassemble(es, roots);
}

DensityMatrix4 gibbs_state_numeric(const Couplings& c, double kt) {
  validate(c);
  validate_temperature(kt);
  const EigenSystem4 es = symmetric_eigen(hamiltonian_matrix(c));

  Vec4 exponents{};
  for (int k = 0; k < 4; ++k) exponents[k] = -es.eigenvalues[k] / kt;
  const double m = *std::max_element(exponents.begin(), exponents.end());
  Vec4 weights{};
  double total = 0.0;
  for (int k = 0; k < 4; ++k) {
    weights[k] = std::exp(exponents[k] - m);
    total += weights[k];
  }
  for (double& w : weights) w /= total;
  return {reassemble(es, weights)};
}

DensityMatrix4 spin_flip(const DensityMatrix4& rho) {
  constexpr Vec4 sign = {1.0, -1.0, -1.0, 1.0};
  DensityMatrix4 out;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      out.entries[i][j] = sign[i] * sign[j] * rho.entries[3 - i][3 - j];
  return out;
}

Vec4 singular_values(const Mat4& a) {
  for (const auto& row : a)
    for (double x : row)
      if (!std::isfinite(x)) {
        throw Error(ErrorCode::NonFiniteInput, "matrix has non-finite entries");
      }

  // One-sided Jacobi: rotate column pairs until all columns are orthogonal;
  // the column norms are then the singular values.
  Mat4 u = a;
  for (int sweep = 0;; ++sweep) {
    if (sweep >= kMaxSweeps) {
      throw Error(ErrorCode::NoConvergence, "one-sided Jacobi did not converge");
    }
    bool rotated = false;
    for (int p = 0; p < 4; ++p) {
      for (int q = p + 1; q < 4; ++q) {
        double app = 0.0, aqq = 0.0, apq = 0.0;
        for (int r = 0; r < 4; ++r) {
          app += u[r][p] * u[r][p];
          aqq += u[r][q] * u[r][q];
          apq += u[r][p] * u[r][q];
        }
        if (apq == 0.0 || std::abs(apq) <= 1e-15 * std::sqrt(app * aqq)) continue;
        rotated = true;
        const double zeta = 0.5 * (aqq - app) / apq;
        double t = 1.0 / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        if (!std::isfinite(zeta * zeta)) t = 0.5 / std::abs(zeta);
        if (zeta < 0.0) t = -t;
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        for (int r = 0; r < 4; ++r) {
          const double up = u[r][p];
          const double uq = u[r][q];
          u[r][p] = c * up - s * uq;
          u[r][q] = s * up + c * uq;
        }
      }
    }
    if (!rotated) break;
  }

  Vec4 sv{};
  for (int k = 0; k < 4; ++k) {
    double norm2 = 0.0;
    for (int r = 0; r < 4; ++r) norm2 += u[r][k] * u[r][k];
    sv[k] = std::sqrt(norm2);
  }
  std::sort(sv.begin(), sv.end(), std::greater<>());
  return sv;
}

Vec4 wootters_lambdas(const DensityMatrix4& rho) {
  // The eigenvalues of sqrt(rho) flip(rho) sqrt(rho) are the squared singular
  // values of flip(sqrt(rho)) sqrt(rho); taking the singular values directly
  // keeps the small lambdas accurate to machine precision instead of its
  // square root.
  const DensityMatrix4 root{matrix_sqrt(rho.entries)};
  return singular_values(multiply(spin_flip(root).entries, root.entries));
}

double wootters(const DensityMatrix4& rho) {
  const Vec4 l = wootters_lambdas(rho);
  return std::max(0.0, l[0] - l[1] - l[2] - l[3]);
}

}  // namespace xyzchain::oracle
