// Copyright 2026 The adalut Authors
// SPDX-License-Identifier: Apache-2.0

#include "adalut/interp.hpp"

namespace adalut {

namespace {

struct CellRef {
  std::size_t base;    // offset of corner (0, 0, 0) inside one channel
  std::size_t stride_r;
  std::size_t stride_g;
  float fr, fg, fb;
};

inline CellRef locate_cell(int size, float r, float g, float b) noexcept {
  const auto pr = locate(r, size);
  const auto pg = locate(g, size);
  const auto pb = locate(b, size);
  const std::size_t s = static_cast<std::size_t>(size);
  return {(static_cast<std::size_t>(pr.cell) * s + pg.cell) * s + pb.cell, s * s, s, pr.frac, pg.frac,
          pb.frac};
}

inline std::array<float, 3> trilinear_at(const Lut3D& lut, const CellRef& cell) noexcept {
  const auto w = trilinear_weights(cell.fr, cell.fg, cell.fb);
  std::array<float, 3> out{};
  for (int c = 0; c < kChannels; ++c) {
    const float* t = lut.channel(c).data() + cell.base;
    float acc = 0.0f;
    for (int k = 0; k < 8; ++k) {
      const std::size_t off = ((k >> 2) & 1) * cell.stride_r + ((k >> 1) & 1) * cell.stride_g + (k & 1);
      acc += w[k] * t[off];
    }
    out[c] = clamp_unit(acc);
  }
  return out;
}

inline std::array<float, 3> tetrahedral_at(const Lut3D& lut, const CellRef& cell) noexcept {
  const std::size_t sr = cell.stride_r, sg = cell.stride_g, sb = 1;
  const float fr = cell.fr, fg = cell.fg, fb = cell.fb;
  // Vertices after C000, ordered along the path to C111, with their weights.
  std::size_t v1, v2;
  float w0, w1, w2, w3;
  if (fr >= fg) {
    if (fg >= fb) {
      v1 = sr, v2 = sr + sg;
      w0 = 1.0f - fr, w1 = fr - fg, w2 = fg - fb, w3 = fb;
    } else if (fr >= fb) {
      v1 = sr, v2 = sr + sb;
      w0 = 1.0f - fr, w1 = fr - fb, w2 = fb - fg, w3 = fg;
    } else {
      v1 = sb, v2 = sr + sb;
      w0 = 1.0f - fb, w1 = fb - fr, w2 = fr - fg, w3 = fg;
    }
  } else if (fg >= fb) {
    if (fr >= fb) {
      v1 = sg, v2 = sr + sg;
      w0 = 1.0f - fg, w1 = fg - fr, w2 = fr - fb, w3 = fb;
    } else {
      v1 = sg, v2 = sg + sb;
      w0 = 1.0f - fg, w1 = fg - fb, w2 = fb - fr, w3 = fr;
    }
  } else {
    v1 = sb, v2 = sg + sb;
    w0 = 1.0f - fb, w1 = fb - fg, w2 = fg - fr, w3 = fr;
  }
  const std::size_t v3 = sr + sg + sb;
  std::array<float, 3> out{};
  for (int c = 0; c < kChannels; ++c) {
    const float* t = lut.channel(c).data() + cell.base;
    out[c] = clamp_unit(w0 * t[0] + w1 * t[v1] + w2 * t[v2] + w3 * t[v3]);
  }
  return out;
}

template <typename PixelFn>
ImageF map_pixels(const ImageF& image, Exec exec, PixelFn&& fn) {
  ImageF out(image.height(), image.width());
  const float* in_r = image.plane(0).data();
  const float* in_g = image.plane(1).data();
  const float* in_b = image.plane(2).data();
  float* out_r = out.plane(0).data();
  float* out_g = out.plane(1).data();
  float* out_b = out.plane(2).data();
  parallel_for(image.pixel_count(), exec.threads, [&](std::size_t first, std::size_t last) {
    for (std::size_t p = first; p < last; ++p) {
      const auto rgb = fn(in_r[p], in_g[p], in_b[p]);
      out_r[p] = rgb[0];
      out_g[p] = rgb[1];
      out_b[p] = rgb[2];
    }
  });
  return out;
}

}  // namespace

std::array<float, 8> trilinear_weights(float fr, float fg, float fb) noexcept {
  const float r[2] = {1.0f - fr, fr};
  const float g[2] = {1.0f - fg, fg};
  const float b[2] = {1.0f - fb, fb};
  std::array<float, 8> w{};
  for (int k = 0; k < 8; ++k) w[k] = r[(k >> 2) & 1] * g[(k >> 1) & 1] * b[k & 1];
  return w;
}

std::array<float, 3> sample_trilinear(const Lut3D& lut, float r, float g, float b) noexcept {
  return trilinear_at(lut, locate_cell(lut.size(), r, g, b));
}

std::array<float, 3> sample_tetrahedral(const Lut3D& lut, float r, float g, float b) noexcept {
  return tetrahedral_at(lut, locate_cell(lut.size(), r, g, b));
}

ImageF apply_lut1d(const Lut1D& lut, const ImageF& image, Exec exec) {
  const auto cr = lut.channel(0), cg = lut.channel(1), cb = lut.channel(2);
  return map_pixels(image, exec, [&](float r, float g, float b) {
    return std::array<float, 3>{interp1d(cr, r), interp1d(cg, g), interp1d(cb, b)};
  });
}

ImageF apply_lut3d_trilinear(const Lut3D& lut, const ImageF& image, Exec exec) {
  const int size = lut.size();
  return map_pixels(image, exec,
                    [&](float r, float g, float b) { return trilinear_at(lut, locate_cell(size, r, g, b)); });
}

ImageF apply_lut3d_tetrahedral(const Lut3D& lut, const ImageF& image, Exec exec) {
  const int size = lut.size();
  return map_pixels(image, exec,
                    [&](float r, float g, float b) { return tetrahedral_at(lut, locate_cell(size, r, g, b)); });
}

ImageF apply_lut3d(const Lut3D& lut, const ImageF& image, Interpolator interp, Exec exec) {
  return interp == Interpolator::tetrahedral ? apply_lut3d_tetrahedral(lut, image, exec)
                                             : apply_lut3d_trilinear(lut, image, exec);
}

ImageF apply_cascade(const Lut1D& lut1d, const Lut3D& lut3d, const ImageF& image, Interpolator interp,
                     Exec exec) {
  const auto cr = lut1d.channel(0), cg = lut1d.channel(1), cb = lut1d.channel(2);
  const int size = lut3d.size();
  if (interp == Interpolator::tetrahedral) {
    return map_pixels(image, exec, [&](float r, float g, float b) {
      return tetrahedral_at(lut3d, locate_cell(size, interp1d(cr, r), interp1d(cg, g), interp1d(cb, b)));
    });
  }
  return map_pixels(image, exec, [&](float r, float g, float b) {
    return trilinear_at(lut3d, locate_cell(size, interp1d(cr, r), interp1d(cg, g), interp1d(cb, b)));
  });
}

}  // namespace adalut
