// Copyright 2026 The adalut Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <span>

#include "adalut/image.hpp"
#include "adalut/lut.hpp"
#include "adalut/parallel.hpp"

namespace adalut {

enum class Interpolator { trilinear, tetrahedral };

/// Lattice cell and fractional offset of a normalized coordinate.
///
/// The input is clamped to [0, 1] (NaN reads as 0). The cell index is capped
/// at size - 2 so that v == 1 lands on the last node with frac == 1.
struct AxisPosition {
  int cell;
  float frac;
};

inline AxisPosition locate(float v, int size) noexcept {
  const float c = v > 0.0f ? (v < 1.0f ? v : 1.0f) : 0.0f;
  // Exact in double: a float times a small integer.
  const double s = static_cast<double>(c) * (size - 1);
  int i = static_cast<int>(s);
  if (i > size - 2) i = size - 2;
  return {i, static_cast<float>(s - i)};
}

inline float clamp_unit(float v) noexcept { return v > 0.0f ? (v < 1.0f ? v : 1.0f) : 0.0f; }

/// Piecewise-linear evaluation of one curve, clamped to [0, 1].
inline float interp1d(std::span<const float> curve, float v) noexcept {
  const auto [i, f] = locate(v, static_cast<int>(curve.size()));
  return clamp_unit((1.0f - f) * curve[i] + f * curve[i + 1]);
}

/// Corner weights of a trilinear cell. Corner k has offsets
/// (dr, dg, db) = (k >> 2 & 1, k >> 1 & 1, k & 1).
std::array<float, 8> trilinear_weights(float fr, float fg, float fb) noexcept;

std::array<float, 3> sample_trilinear(const Lut3D& lut, float r, float g, float b) noexcept;
std::array<float, 3> sample_tetrahedral(const Lut3D& lut, float r, float g, float b) noexcept;

ImageF apply_lut1d(const Lut1D& lut, const ImageF& image, Exec exec = {});
ImageF apply_lut3d_trilinear(const Lut3D& lut, const ImageF& image, Exec exec = {});
ImageF apply_lut3d_tetrahedral(const Lut3D& lut, const ImageF& image, Exec exec = {});
ImageF apply_lut3d(const Lut3D& lut, const ImageF& image, Interpolator interp, Exec exec = {});

/// 1D curves then the 3D lattice, fused per pixel. Bitwise equal to the
/// two-stage composition.
ImageF apply_cascade(const Lut1D& lut1d, const Lut3D& lut3d, const ImageF& image,
                     Interpolator interp = Interpolator::trilinear, Exec exec = {});

}  // namespace adalut
