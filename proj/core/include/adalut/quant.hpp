// Copyright 2026 The adalut Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>

#include "adalut/image.hpp"
#include "adalut/lut.hpp"
#include "adalut/parallel.hpp"
#include "adalut/weights.hpp"

namespace adalut {

/// Per-tensor affine uint8 quantization with min/max calibration.
///
/// The calibration range is widened to include 0 so the zero point is an
/// integer in [0, 255]. An all-zero tensor is degenerate and gets scale 0.
QuantizedTensor quantize_tensor(std::span<const float> values);

/// Quantizes every gen1d.* and gen3d.* tensor; backbone tensors stay f32.
/// Already-quantized tensors are kept as they are.
WeightBundle quantize_bundle(const WeightBundle& bundle);

/// Clamp to [0, 1], then round(v * 255) half away from zero.
Lut1DQ quantize_lut1d(const Lut1D& lut);
Lut3DQ quantize_lut3d(const Lut3D& lut);

/// Fixed-point lattice position of an 8-bit code: s = v (S - 1) in Q16.
/// The cell is capped at S - 2, in which case frac reaches 65536.
struct FixedPosition {
  std::uint32_t cell;
  std::uint32_t frac;
};

inline FixedPosition fixed_locate(std::uint8_t v, int size) noexcept {
  const std::uint32_t s = (static_cast<std::uint32_t>(v) * static_cast<std::uint32_t>(size - 1) << 16) / 255u;
  std::uint32_t cell = s >> 16;
  const std::uint32_t top = static_cast<std::uint32_t>(size - 2);
  if (cell > top) cell = top;
  return {cell, s - (cell << 16)};
}

/// Integer-only 1D curve lookup.
ImageU8 apply_lut1d_fixed(const Lut1DQ& lut, const ImageU8& image, Exec exec = {});
/// Integer-only trilinear lookup; corner weights are exact Q48 products.
ImageU8 apply_lut3d_fixed(const Lut3DQ& lut, const ImageU8& image, Exec exec = {});
/// 1D then 3D, both in fixed point. Bitwise equal to the two-stage composition.
ImageU8 apply_cascade_fixed(const Lut1DQ& lut1d, const Lut3DQ& lut3d, const ImageU8& image, Exec exec = {});

/// Scalar reference of the fixed 1D lookup for one code.
std::uint8_t fixed_interp1d(std::span<const std::uint8_t> curve, std::uint8_t v) noexcept;

}  // namespace adalut
