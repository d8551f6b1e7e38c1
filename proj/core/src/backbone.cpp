// Copyright 2026 The adalut Authors
// SPDX-License-Identifier: Apache-2.0

#include "adalut/backbone.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "adalut/errors.hpp"

namespace adalut {

namespace {

struct Tap {
  int i0, i1;
  float frac;
};

std::vector<Tap> resize_taps(int src_len, int dst_len) {
  std::vector<Tap> taps(dst_len);
  const double scale = static_cast<double>(src_len) / dst_len;
  for (int d = 0; d < dst_len; ++d) {
    double s = (d + 0.5) * scale - 0.5;
    s = std::clamp(s, 0.0, static_cast<double>(src_len - 1));
    const int i0 = static_cast<int>(std::floor(s));
    taps[d] = {i0, std::min(i0 + 1, src_len - 1), static_cast<float>(s - i0)};
  }
  return taps;
}

void check_finite(const FeatureMap& fm, const char* layer) {
  for (float v : fm.data)
    if (!std::isfinite(v)) throw NonFiniteError(std::string("non-finite activation after ") + layer);
}

void check_shape(const FeatureMap& fm, int c, int h, int w, const char* layer) {
  if (fm.channels != c || fm.height != h || fm.width != w)
    throw ShapeMismatchError(std::string("unexpected activation shape after ") + layer);
}

}  // namespace

ImageF resize_bilinear(const ImageF& image, int out_h, int out_w) {
  if (image.height() < 1 || image.width() < 1) throw TypeError("cannot resize an empty image");
  if (out_h < 1 || out_w < 1) throw TypeError("resize target must be non-empty");
  const auto ty = resize_taps(image.height(), out_h);
  const auto tx = resize_taps(image.width(), out_w);
  ImageF out(out_h, out_w);
  for (int c = 0; c < kChannels; ++c) {
    for (int y = 0; y < out_h; ++y) {
      const Tap& vy = ty[y];
      for (int x = 0; x < out_w; ++x) {
        const Tap& vx = tx[x];
        const float a = image.at(c, vy.i0, vx.i0), b = image.at(c, vy.i0, vx.i1);
        const float d = image.at(c, vy.i1, vx.i0), e = image.at(c, vy.i1, vx.i1);
        const float top = a + vx.frac * (b - a);
        const float bottom = d + vx.frac * (e - d);
        out.at(c, y, x) = top + vy.frac * (bottom - top);
      }
    }
  }
  return out;
}

FeatureMap conv3x3_s2(const FeatureMap& in, std::span<const float> weight, std::span<const float> bias,
                      int out_channels, Exec exec) {
  const std::size_t expected = static_cast<std::size_t>(out_channels) * in.channels * 9;
  if (weight.size() != expected || bias.size() != static_cast<std::size_t>(out_channels))
    throw ShapeMismatchError("conv weight/bias size does not match channel counts");
  const int oh = (in.height - 1) / 2 + 1;
  const int ow = (in.width - 1) / 2 + 1;
  FeatureMap out(out_channels, oh, ow);

  parallel_for(static_cast<std::size_t>(out_channels), exec.threads, [&](std::size_t first, std::size_t last) {
    for (std::size_t oc = first; oc < last; ++oc) {
      auto dst = out.plane(static_cast<int>(oc));
      std::fill(dst.begin(), dst.end(), bias[oc]);
      for (int ic = 0; ic < in.channels; ++ic) {
        const auto src = in.plane(ic);
        const float* k = weight.data() + (oc * in.channels + ic) * 9;
        for (int ky = 0; ky < 3; ++ky) {
          for (int kx = 0; kx < 3; ++kx) {
            const float w = k[ky * 3 + kx];
            for (int oy = 0; oy < oh; ++oy) {
              const int iy = 2 * oy - 1 + ky;
              if (iy < 0 || iy >= in.height) continue;
              const float* row = src.data() + static_cast<std::size_t>(iy) * in.width;
              float* orow = dst.data() + static_cast<std::size_t>(oy) * ow;
              // ix = 2 * ox - 1 + kx must stay inside [0, width).
              const int ox_begin = kx == 0 ? 1 : 0;
              const int ox_end = std::min(ow, (in.width - kx) / 2 + 1);
              for (int ox = ox_begin; ox < ox_end; ++ox) orow[ox] += w * row[2 * ox - 1 + kx];
            }
          }
        }
      }
    }
  });
  return out;
}

void leaky_relu_inplace(FeatureMap& fm, float slope) noexcept {
  for (float& v : fm.data) v = v >= 0.0f ? v : v * slope;
}

void instance_norm_inplace(FeatureMap& fm, std::span<const float> gamma, std::span<const float> beta, float eps) {
  if (gamma.size() != static_cast<std::size_t>(fm.channels) || beta.size() != gamma.size())
    throw ShapeMismatchError("InstanceNorm affine size does not match channel count");
  for (int c = 0; c < fm.channels; ++c) {
    auto p = fm.plane(c);
    const auto [lo, hi] = std::minmax_element(p.begin(), p.end());
    if (*lo == *hi) {
      std::fill(p.begin(), p.end(), beta[c]);
      continue;
    }
    double sum = 0.0;
    for (float v : p) sum += v;
    const double mean = sum / static_cast<double>(p.size());
    double sq = 0.0;
    for (float v : p) sq += (v - mean) * (v - mean);
    const double var = sq / static_cast<double>(p.size());
    const double inv = 1.0 / std::sqrt(var + eps);
    for (float& v : p) v = static_cast<float>((v - mean) * inv * gamma[c] + beta[c]);
  }
}

FeatureMap avg_pool(const FeatureMap& fm, int window) {
  if (window < 1 || fm.height % window != 0 || fm.width % window != 0)
    throw ShapeMismatchError("pooling window does not tile the feature map");
  FeatureMap out(fm.channels, fm.height / window, fm.width / window);
  const float norm = 1.0f / static_cast<float>(window * window);
  for (int c = 0; c < fm.channels; ++c)
    for (int y = 0; y < out.height; ++y)
      for (int x = 0; x < out.width; ++x) {
        float acc = 0.0f;
        for (int dy = 0; dy < window; ++dy)
          for (int dx = 0; dx < window; ++dx) acc += fm.at(c, y * window + dy, x * window + dx);
        out.at(c, y, x) = acc * norm;
      }
  return out;
}

ContextVector backbone_forward(const ImageF& image, const WeightBundle& bundle, Exec exec) {
  const Hyperparams& hp = bundle.hyperparams();
  const ImageF small = resize_bilinear_256(image);

  FeatureMap x(kChannels, kBackboneInput, kBackboneInput);
  std::copy(small.data().begin(), small.data().end(), x.data.begin());

  const auto widths = backbone_widths(hp.m);
  int spatial = kBackboneInput;
  for (int block = 0; block < 5; ++block) {
    const std::string conv = "backbone.conv" + std::to_string(block + 1);
    const auto weight = bundle.tensor(conv + ".weight").to_float();
    const auto bias = bundle.tensor(conv + ".bias").to_float();
    x = conv3x3_s2(x, weight, bias, widths[block], exec);
    leaky_relu_inplace(x, hp.leaky_slope);
    spatial /= 2;
    check_shape(x, widths[block], spatial, spatial, conv.c_str());
    if (block < 4) {
      const std::string norm = "backbone.in" + std::to_string(block + 1);
      instance_norm_inplace(x, bundle.tensor(norm + ".gamma").to_float(), bundle.tensor(norm + ".beta").to_float(),
                            hp.in_eps);
    }
    check_finite(x, conv.c_str());
  }
  // Dropout is the identity at inference.
  const FeatureMap pooled = avg_pool(x, 4);
  check_shape(pooled, 8 * hp.m, 2, 2, "average pooling");
  return ContextVector{pooled.data};
}

}  // namespace adalut
