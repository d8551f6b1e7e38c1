// Copyright 2026 The adalut Authors
// SPDX-License-Identifier: Apache-2.0

#include "adalut/lut.hpp"

#include <algorithm>

namespace adalut {

Lut1D identity_lut1d(int size) {
  Lut1D lut(size);
  const float denom = static_cast<float>(size - 1);
  for (int c = 0; c < kChannels; ++c)
    for (int i = 0; i < size; ++i) lut.at(c, i) = static_cast<float>(i) / denom;
  return lut;
}

Lut3D identity_lut3d(int size) {
  Lut3D lut(size);
  const float denom = static_cast<float>(size - 1);
  for (int r = 0; r < size; ++r)
    for (int g = 0; g < size; ++g)
      for (int b = 0; b < size; ++b) {
        lut.at(0, r, g, b) = static_cast<float>(r) / denom;
        lut.at(1, r, g, b) = static_cast<float>(g) / denom;
        lut.at(2, r, g, b) = static_cast<float>(b) / denom;
      }
  return lut;
}

bool is_monotone(const Lut1D& lut) noexcept {
  for (int c = 0; c < kChannels; ++c) {
    auto ch = lut.channel(c);
    if (!std::is_sorted(ch.begin(), ch.end())) return false;
  }
  return true;
}

}  // namespace adalut
