// Copyright 2026 The adalut Authors
// SPDX-License-Identifier: Apache-2.0

#include "random.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace adalut::testing {

ImageF random_image(Rng& rng, int h, int w) {
  ImageF img(h, w);
  for (float& v : img.data()) v = rng.uniformf();
  return img;
}

ImageU8 random_image_u8(Rng& rng, int h, int w) {
  ImageU8 img(h, w);
  for (auto& v : img.data()) v = static_cast<std::uint8_t>(rng.integer(0, 255));
  return img;
}

ImageU8 low_contrast_u8(Rng& rng, int h, int w, int lo, int hi) {
  ImageU8 img(h, w);
  for (auto& v : img.data()) v = static_cast<std::uint8_t>(rng.integer(lo, hi));
  return img;
}

ImageF low_contrast_float(Rng& rng, int h, int w, float lo, float hi) {
  ImageF img(h, w);
  for (float& v : img.data()) v = rng.uniformf(lo, hi);
  return img;
}

ImageF adversarial_image(Rng& rng, int h, int w, int lattice_size) {
  ImageF img(h, w);
  const int steps = lattice_size - 1;
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      const int kind = rng.integer(0, 5);
      const float shared = rng.uniformf();
      for (int c = 0; c < kChannels; ++c) {
        float v = rng.uniformf();
        switch (kind) {
          case 0:  // lattice node
            v = static_cast<float>(rng.integer(0, steps)) / static_cast<float>(steps);
            break;
          case 1:  // equal fractions in one cell
            v = shared;
            break;
          case 2:
            v = rng.integer(0, 1) ? 1.0f : 0.0f;
            break;
          case 3:  // slightly out of range
            v = rng.uniformf(-0.1f, 1.1f);
            break;
          default:
            break;
        }
        img.at(c, y, x) = v;
      }
    }
  return img;
}

Lut1D random_lut1d(Rng& rng, int size) {
  Lut1D lut(size);
  for (float& v : lut.values()) v = rng.uniformf();
  return lut;
}

Lut3D random_lut3d(Rng& rng, int size) {
  Lut3D lut(size);
  for (float& v : lut.values()) v = rng.uniformf();
  return lut;
}

Lut1D smooth_lut1d(Rng& rng, int size) {
  Lut1D lut(size);
  for (int c = 0; c < kChannels; ++c) {
    const double gamma = rng.uniform(0.6, 1.6);
    for (int i = 0; i < size; ++i) lut.at(c, i) = static_cast<float>(std::pow(static_cast<double>(i) / (size - 1), gamma));
  }
  return lut;
}

Lut3D smooth_lut3d(Rng& rng, int size) {
  Lut3D lut = identity_lut3d(size);
  std::array<std::array<double, 3>, 3> amp{}, phase{};
  for (auto& row : amp)
    for (double& a : row) a = rng.uniform(-0.08, 0.08);
  for (auto& row : phase)
    for (double& p : row) p = rng.uniform(0.0, 2.0 * std::numbers::pi);
  for (int r = 0; r < size; ++r)
    for (int g = 0; g < size; ++g)
      for (int b = 0; b < size; ++b) {
        const double x[3] = {static_cast<double>(r) / (size - 1), static_cast<double>(g) / (size - 1),
                             static_cast<double>(b) / (size - 1)};
        for (int c = 0; c < kChannels; ++c) {
          double v = x[c];
          for (int a = 0; a < 3; ++a) v += amp[c][a] * std::sin(std::numbers::pi * x[a] + phase[c][a]);
          lut.at(c, r, g, b) = static_cast<float>(std::clamp(v, 0.0, 1.0));
        }
      }
  return lut;
}

ContextVector random_context(Rng& rng, int length, double sigma) {
  ContextVector e;
  e.values.resize(static_cast<std::size_t>(length));
  for (float& v : e.values) v = static_cast<float>(rng.normal(sigma));
  return e;
}

}  // namespace adalut::testing
