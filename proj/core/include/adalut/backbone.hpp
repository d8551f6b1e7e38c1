// Copyright 2026 The adalut Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "adalut/image.hpp"
#include "adalut/parallel.hpp"
#include "adalut/weights.hpp"

namespace adalut {

inline constexpr int kBackboneInput = 256;

/// Global image embedding of length 32m.
struct ContextVector {
  std::vector<float> values;

  std::size_t size() const noexcept { return values.size(); }
  friend bool operator==(const ContextVector&, const ContextVector&) = default;
};

struct BackboneConfig {
  int m = 8;
  float leaky_slope = 0.2f;
  float in_eps = 1e-5f;

  static BackboneConfig from(const Hyperparams& hp) { return {hp.m, hp.leaky_slope, hp.in_eps}; }
};

/// Dense (channels, height, width) activation volume.
struct FeatureMap {
  int channels = 0;
  int height = 0;
  int width = 0;
  std::vector<float> data;

  FeatureMap() = default;
  FeatureMap(int c, int h, int w) : channels(c), height(h), width(w), data(static_cast<std::size_t>(c) * h * w) {}

  float& at(int c, int y, int x) noexcept {
    return data[(static_cast<std::size_t>(c) * height + y) * width + x];
  }
  float at(int c, int y, int x) const noexcept {
    return data[(static_cast<std::size_t>(c) * height + y) * width + x];
  }
  std::span<float> plane(int c) noexcept {
    return {data.data() + static_cast<std::size_t>(c) * height * width, static_cast<std::size_t>(height) * width};
  }
  std::span<const float> plane(int c) const noexcept {
    return {data.data() + static_cast<std::size_t>(c) * height * width, static_cast<std::size_t>(height) * width};
  }
};

/// Bilinear resize with half-pixel centers to out_h x out_w. Source
/// coordinates are (dst + 0.5) * (src_len / dst_len) - 0.5, clamped to the
/// image.
ImageF resize_bilinear(const ImageF& image, int out_h, int out_w);
inline ImageF resize_bilinear_256(const ImageF& image) {
  return resize_bilinear(image, kBackboneInput, kBackboneInput);
}

/// 3x3 cross-correlation, stride 2, zero padding 1, plus bias.
/// weight is (out, in, 3, 3) row-major.
FeatureMap conv3x3_s2(const FeatureMap& in, std::span<const float> weight, std::span<const float> bias,
                      int out_channels, Exec exec = {});

void leaky_relu_inplace(FeatureMap& fm, float slope) noexcept;

/// Per-channel standardization with population variance and affine gamma/beta.
/// Channels whose samples are all equal produce beta.
void instance_norm_inplace(FeatureMap& fm, std::span<const float> gamma, std::span<const float> beta, float eps);

/// Non-overlapping window average; spatial dims must divide by `window`.
FeatureMap avg_pool(const FeatureMap& fm, int window);

/// resize -> 5 conv blocks -> 4x4 average pool -> channel-major flatten.
ContextVector backbone_forward(const ImageF& image, const WeightBundle& bundle, Exec exec = {});

}  // namespace adalut
