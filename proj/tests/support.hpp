#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "xyzchain/core.hpp"

namespace xyzchain::testing {

/// Seeded source of random couplings and temperatures for property tests.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : gen_(seed) {}

  double uniform(double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(gen_() >> 11) * 0x1.0p-53);
  }

  Couplings couplings(double span = 5.0) {
    const double jx = uniform(-span, span);
    const double jy = uniform(-span, span);
    const double jz = uniform(-span, span);
    return {jx, jy, jz};
  }

  double kt(double lo = 0.02, double hi = 5.0) { return uniform(lo, hi); }

 private:
  std::mt19937_64 gen_;
};

inline double max_abs_diff(const Mat4& a, const Mat4& b) {
  double d = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) d = std::max(d, std::abs(a[i][j] - b[i][j]));
  return d;
}

inline Vec4 apply(const Mat4& m, const Vec4& v) {
  Vec4 out{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out[i] += m[i][j] * v[j];
  return out;
}

inline double expectation(const Mat4& m, const Vec4& v) {
  const Vec4 mv = apply(m, v);
  double acc = 0.0;
  for (int i = 0; i < 4; ++i) acc += v[i] * mv[i];
  return acc;
}

inline Mat4 projector(const Vec4& v) {
  Mat4 out{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out[i][j] = v[i] * v[j];
  return out;
}

}  // namespace xyzchain::testing
