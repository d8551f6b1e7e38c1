// Copyright 2026 The adalut Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <type_traits>
#include <vector>

#include "adalut/errors.hpp"

namespace adalut {

inline constexpr int kChannels = 3;

/// Sample traits: the nominal maximum of each supported depth.
template <typename T>
struct SampleTraits;

template <>
struct SampleTraits<float> {
  static constexpr double max_value = 1.0;
};
template <>
struct SampleTraits<std::uint8_t> {
  static constexpr double max_value = 255.0;
};
template <>
struct SampleTraits<std::uint16_t> {
  static constexpr double max_value = 65535.0;
};

template <typename T>
concept Sample = std::is_same_v<T, float> || std::is_same_v<T, std::uint8_t> ||
                 std::is_same_v<T, std::uint16_t>;

/// Planar three-channel raster stored channel-major as (c, y, x).
///
/// Float images hold normalized values in [0, 1]; integer images use the full
/// range of their sample type. Interleaved data is converted at the I/O
/// boundary only.
template <Sample T>
class Image {
 public:
  using value_type = T;

  Image() = default;
  Image(int height, int width, T fill = T{})
      : height_(height), width_(width) {
    if (height < 0 || width < 0) throw TypeError("negative image dimensions");
    data_.assign(static_cast<std::size_t>(kChannels) * height * width, fill);
  }

  int height() const noexcept { return height_; }
  int width() const noexcept { return width_; }
  std::size_t pixel_count() const noexcept {
    return static_cast<std::size_t>(height_) * width_;
  }
  bool empty() const noexcept { return data_.empty(); }

  T& at(int c, int y, int x) noexcept { return data_[index(c, y, x)]; }
  T at(int c, int y, int x) const noexcept { return data_[index(c, y, x)]; }

  std::span<T> plane(int c) noexcept {
    return {data_.data() + c * pixel_count(), pixel_count()};
  }
  std::span<const T> plane(int c) const noexcept {
    return {data_.data() + c * pixel_count(), pixel_count()};
  }

  std::span<T> data() noexcept { return data_; }
  std::span<const T> data() const noexcept { return data_; }

  bool same_shape(const Image& other) const noexcept {
    return height_ == other.height_ && width_ == other.width_;
  }

  friend bool operator==(const Image&, const Image&) = default;

 private:
  std::size_t index(int c, int y, int x) const noexcept {
    return (static_cast<std::size_t>(c) * height_ + y) * width_ + x;
  }

  int height_ = 0;
  int width_ = 0;
  std::vector<T> data_;
};

using ImageF = Image<float>;
using ImageU8 = Image<std::uint8_t>;
using ImageU16 = Image<std::uint16_t>;

ImageF to_float(const ImageU8& image);
ImageF to_float(const ImageU16& image);
/// Clamps to [0, 1] and rounds half away from zero.
ImageU8 to_u8(const ImageF& image);
ImageU16 to_u16(const ImageF& image);
/// 16-bit to 8-bit through the normalized representation.
ImageU8 to_u8(const ImageU16& image);

std::uint8_t quantize_u8(float v) noexcept;
std::uint16_t quantize_u16(float v) noexcept;

/// Throws TypeError when a float sample is outside [0, 1] or not finite.
void validate_range(const ImageF& image);

/// Copy of the rectangle [y0, y0+h) x [x0, x0+w).
template <Sample T>
Image<T> crop(const Image<T>& image, int y0, int x0, int h, int w) {
  if (y0 < 0 || x0 < 0 || h < 0 || w < 0 || y0 + h > image.height() ||
      x0 + w > image.width())
    throw TypeError("crop rectangle outside image");
  Image<T> out(h, w);
  for (int c = 0; c < kChannels; ++c)
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x) out.at(c, y, x) = image.at(c, y0 + y, x0 + x);
  return out;
}

}  // namespace adalut
