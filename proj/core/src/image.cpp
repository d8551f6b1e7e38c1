// Copyright 2026 The adalut Authors
// SPDX-License-Identifier: Apache-2.0

#include "adalut/image.hpp"

#include <algorithm>
#include <cmath>

namespace adalut {

namespace {

template <typename Out, typename In, typename F>
Image<Out> convert(const Image<In>& in, F&& fn) {
  Image<Out> out(in.height(), in.width());
  auto src = in.data();
  auto dst = out.data();
  std::transform(src.begin(), src.end(), dst.begin(), fn);
  return out;
}

}  // namespace

std::uint8_t quantize_u8(float v) noexcept {
  const float c = std::clamp(v, 0.0f, 1.0f);
  return static_cast<std::uint8_t>(std::round(c * 255.0f));
}

std::uint16_t quantize_u16(float v) noexcept {
  const double c = std::clamp(static_cast<double>(v), 0.0, 1.0);
  return static_cast<std::uint16_t>(std::round(c * 65535.0));
}

ImageF to_float(const ImageU8& image) {
  return convert<float>(image, [](std::uint8_t v) { return v / 255.0f; });
}

ImageF to_float(const ImageU16& image) {
  return convert<float>(image, [](std::uint16_t v) { return v / 65535.0f; });
}

ImageU8 to_u8(const ImageF& image) {
  return convert<std::uint8_t>(image, quantize_u8);
}

ImageU16 to_u16(const ImageF& image) {
  return convert<std::uint16_t>(image, quantize_u16);
}

ImageU8 to_u8(const ImageU16& image) { return to_u8(to_float(image)); }

void validate_range(const ImageF& image) {
  for (float v : image.data()) {
    if (!(v >= 0.0f && v <= 1.0f))
      throw TypeError("float image sample outside [0, 1]");
  }
}

}  // namespace adalut
