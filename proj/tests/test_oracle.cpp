#include <algorithm>
#include <cmath>
#include <limits>

#include "doctest.h"
#include "support.hpp"
#include "xyzchain/oracle.hpp"

using namespace xyzchain;
using namespace xyzchain::testing;

namespace {

Mat4 diag(double a, double b, double c, double d) {
  Mat4 m{};
  m[0][0] = a;
  m[1][1] = b;
  m[2][2] = c;
  m[3][3] = d;
  return m;
}

Mat4 random_symmetric(Sampler& s) {
  Mat4 m{};
  for (int i = 0; i < 4; ++i)
    for (int j = i; j < 4; ++j) m[i][j] = m[j][i] = s.uniform(-3, 3);
  return m;
}

}  // namespace

TEST_CASE("symmetric_eigen: examples") {
  SUBCASE("diagonal") {
    const auto es = oracle::symmetric_eigen(diag(3, -1, 2, 0));
    CHECK(es.eigenvalues == Vec4{-1, 0, 2, 3});
    CHECK(es.eigenvectors[0] == Vec4{0, 1, 0, 0});
  }
  SUBCASE("2x2 block") {
    Mat4 m{};
    m[0][0] = m[1][1] = 1;
    m[0][1] = m[1][0] = 1;
    const auto es = oracle::symmetric_eigen(m);
    CHECK(std::abs(es.eigenvalues[3] - 2.0) <= 1e-14);
    CHECK(std::abs(es.eigenvalues[0]) <= 1e-14);
    const double r = 1 / std::sqrt(2.0);
    CHECK(std::abs(es.eigenvectors[3][0] - r) <= 1e-14);
    CHECK(std::abs(es.eigenvectors[3][1] - r) <= 1e-14);
  }
  SUBCASE("Hamiltonian spectrum") {
    const Couplings c{1.5, 0.5, 1};
    const auto es = oracle::symmetric_eigen(hamiltonian_matrix(c));
    const auto sp = spectral(c);
    for (int k = 0; k < 4; ++k) CHECK(std::abs(es.eigenvalues[k] - sp.energy(sp.ascending[k])) <= 1e-14);
  }
  SUBCASE("errors") {
    Mat4 m = diag(1, 2, 3, 4);
    m[0][1] = 1e-6;
    CHECK_THROWS_AS(oracle::symmetric_eigen(m), Error);
    m[0][1] = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(oracle::symmetric_eigen(m), Error);
  }
}

TEST_CASE("symmetric_eigen: properties") {
  Sampler s(31);
  for (int n = 0; n < 300; ++n) {
    const Mat4 a = random_symmetric(s);
    const auto es = oracle::symmetric_eigen(a);
    double trace = 0.0;
    for (int i = 0; i < 4; ++i) trace += a[i][i];
    CHECK(std::abs(es.eigenvalues[0] + es.eigenvalues[1] + es.eigenvalues[2] + es.eigenvalues[3] -
                   trace) <= 1e-12);
    for (int k = 0; k < 3; ++k) CHECK(es.eigenvalues[k] <= es.eigenvalues[k + 1]);
    for (int k = 0; k < 4; ++k) {
      const Vec4 av = apply(a, es.eigenvectors[k]);
      for (int i = 0; i < 4; ++i)
        CHECK(std::abs(av[i] - es.eigenvalues[k] * es.eigenvectors[k][i]) <= 1e-12);
      for (int l = 0; l < 4; ++l) {
        double dot = 0.0;
        for (int i = 0; i < 4; ++i) dot += es.eigenvectors[k][i] * es.eigenvectors[l][i];
        CHECK(std::abs(dot - (k == l ? 1.0 : 0.0)) <= 1e-12);
      }
    }
    // Bit-for-bit reproducible.
    const auto again = oracle::symmetric_eigen(a);
    CHECK(again.eigenvalues == es.eigenvalues);
    CHECK(again.eigenvectors == es.eigenvectors);
  }
}

TEST_CASE("gibbs_state_numeric") {
  Sampler s(37);
  for (int n = 0; n < 300; ++n) {
    const Couplings c = s.couplings();
    const double kt = s.kt();
    const auto rho = oracle::gibbs_state_numeric(c, kt);
    CHECK(std::abs(rho.trace() - 1.0) <= 1e-12);
    CHECK(max_abs_diff(rho.entries, thermal_state(c, kt).entries) <= 1e-12);
  }
  CHECK_THROWS_AS(oracle::gibbs_state_numeric({1, 1, 1}, 0.0), Error);
}

TEST_CASE("spin_flip") {
  SUBCASE("Bell projectors are fixed points") {
    for (auto b : kBellStates) {
      const Mat4 p = projector(bell_vector(b));
      CHECK(max_abs_diff(oracle::spin_flip(DensityMatrix4{p}).entries, p) <= 1e-15);
    }
  }
  SUBCASE("product state |00> maps to |11>") {
    const auto f = oracle::spin_flip(DensityMatrix4{diag(1, 0, 0, 0)});
    CHECK(f.entries == diag(0, 0, 0, 1));
  }
  SUBCASE("involution") {
    Sampler s(41);
    const DensityMatrix4 m{random_symmetric(s)};
    CHECK(max_abs_diff(oracle::spin_flip(oracle::spin_flip(m)).entries, m.entries) == 0.0);
  }
}

TEST_CASE("wootters") {
  SUBCASE("Bell states are maximally entangled") {
    for (auto b : kBellStates)
      CHECK(std::abs(oracle::wootters(DensityMatrix4{projector(bell_vector(b))}) - 1.0) <= 1e-12);
  }
  SUBCASE("product and maximally mixed states") {
    CHECK(oracle::wootters(DensityMatrix4{diag(1, 0, 0, 0)}) <= 1e-12);
    CHECK(oracle::wootters(DensityMatrix4{diag(0.25, 0.25, 0.25, 0.25)}) == 0.0);
  }
  SUBCASE("Werner state p|Psi-><Psi-| + (1-p) I/4") {
    for (double p : {0.2, 0.5, 0.8, 1.0}) {
      Mat4 m = projector(bell_vector(BellState::PsiMinus));
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) m[i][j] = p * m[i][j] + (i == j ? (1 - p) / 4 : 0.0);
      const double expected = std::max(0.0, (3 * p - 1) / 2);
      CHECK(std::abs(oracle::wootters(DensityMatrix4{m}) - expected) <= 1e-12);
    }
  }
  SUBCASE("not PSD") {
    CHECK_THROWS_AS(oracle::wootters(DensityMatrix4{diag(1.5, -0.5, 0, 0)}), Error);
  }
}

TEST_CASE("matrix_sqrt") {
  Sampler s(43);
  for (int n = 0; n < 200; ++n) {
    const auto rho = oracle::gibbs_state_numeric(s.couplings(), s.kt());
    const Mat4 r = oracle::matrix_sqrt(rho.entries);
    CHECK(max_abs_diff(oracle::multiply(r, r), rho.entries) <= 1e-12);
  }
  CHECK(oracle::matrix_sqrt(diag(4, 9, 0, -1e-12)) == diag(2, 3, 0, 0));
  CHECK_THROWS_AS(oracle::matrix_sqrt(diag(1, 1, 1, -1e-6)), Error);
}

TEST_CASE("wootters_lambdas match the eigenvalues of rho * rho~") {
  Sampler s(47);
  for (int n = 0; n < 200; ++n) {
    const auto rho = oracle::gibbs_state_numeric(s.couplings(2), s.kt(0.3, 5));
    const Vec4 l = oracle::wootters_lambdas(rho);
    // rho * rho~ is similar to sqrt(rho) rho~ sqrt(rho), which is symmetric.
    const Mat4 r = oracle::matrix_sqrt(rho.entries);
    const Mat4 m = oracle::multiply(oracle::multiply(r, oracle::spin_flip(rho).entries), r);
    Mat4 sym{};
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) sym[i][j] = 0.5 * (m[i][j] + m[j][i]);
    auto ev = oracle::symmetric_eigen(sym).eigenvalues;
    std::sort(ev.begin(), ev.end(), std::greater<>());
    for (int k = 0; k < 4; ++k) CHECK(std::abs(l[k] * l[k] - ev[k]) <= 1e-12);
    for (int k = 0; k < 3; ++k) CHECK(l[k] >= l[k + 1]);
  }
}

TEST_CASE("singular_values") {
  CHECK(oracle::singular_values(diag(-3, 1, 2, 0)) == Vec4{3, 2, 1, 0});
  Sampler s(53);
  for (int n = 0; n < 100; ++n) {
    Mat4 a{};
    for (auto& row : a)
      for (auto& x : row) x = s.uniform(-2, 2);
    const Vec4 sv = oracle::singular_values(a);
    Mat4 ata{};
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k) ata[i][j] += a[k][i] * a[k][j];
    auto ev = oracle::symmetric_eigen(ata).eigenvalues;
    std::sort(ev.begin(), ev.end(), std::greater<>());
    for (int k = 0; k < 4; ++k) CHECK(std::abs(sv[k] * sv[k] - ev[k]) <= 1e-11);
  }
}
