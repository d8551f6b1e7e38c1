// Copyright 2026 The adalut Authors
// SPDX-License-Identifier: Apache-2.0

// Seeded generators for property tests.

#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "adalut/backbone.hpp"
#include "adalut/image.hpp"
#include "adalut/lut.hpp"

namespace adalut::testing {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo = 0.0, double hi = 1.0) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
  float uniformf(float lo = 0.0f, float hi = 1.0f) { return std::uniform_real_distribution<float>(lo, hi)(engine_); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }
  double normal(double sigma = 1.0) { return std::normal_distribution<double>(0.0, sigma)(engine_); }
  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

ImageF random_image(Rng& rng, int h, int w);
ImageU8 random_image_u8(Rng& rng, int h, int w);
/// Uniform codes in [lo, hi] per channel.
ImageU8 low_contrast_u8(Rng& rng, int h, int w, int lo, int hi);
ImageF low_contrast_float(Rng& rng, int h, int w, float lo, float hi);

/// Pixels whose coordinates hit lattice nodes, cell interiors, ties and the
/// 0 / 1 edges with elevated probability.
ImageF adversarial_image(Rng& rng, int h, int w, int lattice_size);

Lut1D random_lut1d(Rng& rng, int size);
Lut3D random_lut3d(Rng& rng, int size);
/// Monotone gamma-like curves.
Lut1D smooth_lut1d(Rng& rng, int size);
/// Identity plus a low-frequency colour twist, kept inside [0, 1].
Lut3D smooth_lut3d(Rng& rng, int size);

ContextVector random_context(Rng& rng, int length, double sigma = 1.0);

}  // namespace adalut::testing
