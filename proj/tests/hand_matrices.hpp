#pragma once

// Literal 4x4 matrices on a two-qubit register, basis order |00>,|01>,|10>,|11>
// (high qubit first). Written out by hand to check the door gadgets.

#include <array>
#include <cmath>
#include <complex>

namespace hand {

using C = std::complex<double>;
using M4 = std::array<std::array<double, 4>, 4>;
using V4 = std::array<double, 4>;

inline constexpr double r = M_SQRT1_2;

// H on the high qubit
inline const M4 kHhi{{{r, 0, r, 0}, {0, r, 0, r}, {r, 0, -r, 0}, {0, r, 0, -r}}};
// H on the low qubit
inline const M4 kHlo{{{r, r, 0, 0}, {r, -r, 0, 0}, {0, 0, r, r}, {0, 0, r, -r}}};
// H on low, controlled on high = 1
inline const M4 kCH{{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, r, r}, {0, 0, r, -r}}};
// H on low, controlled on high = 0
inline const M4 kACH{{{r, r, 0, 0}, {r, -r, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}};
// Z on low, controlled on high = 0
inline const M4 kACZ{{{1, 0, 0, 0}, {0, -1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}};

inline V4 operator*(const M4& m, const V4& v) {
  V4 out{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out[i] += m[i][j] * v[j];
  return out;
}

inline const V4 kZero{1, 0, 0, 0};

// H, H, then CH(high -> low)
inline V4 three_state() { return kCH * (kHlo * (kHhi * kZero)); }

// State after removing door code 0 (|00>), 1 (|01>) or 2 (|10>).
inline V4 after_removal(int door_code) {
  const V4 s = three_state();
  switch (door_code) {
    case 0: return kACH * (kACZ * s);
    case 1: return kACH * s;
    default: return kHhi * (kCH * s);
  }
}

}  // namespace hand
