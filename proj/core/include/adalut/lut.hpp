// Copyright 2026 The adalut Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "adalut/errors.hpp"
#include "adalut/image.hpp"

namespace adalut {

/// Three per-channel curves of `size` samples each, stored [c][i].
template <typename T>
class BasicLut1D {
 public:
  using value_type = T;

  BasicLut1D() = default;
  explicit BasicLut1D(int size, T fill = T{}) : size_(size) {
    if (size < 2) throw InvalidSizeError("1D LUT size must be >= 2");
    values_.assign(static_cast<std::size_t>(kChannels) * size, fill);
  }
  BasicLut1D(int size, std::vector<T> values) : size_(size), values_(std::move(values)) {
    if (size < 2) throw InvalidSizeError("1D LUT size must be >= 2");
    if (values_.size() != static_cast<std::size_t>(kChannels) * size)
      throw TypeError("1D LUT value count does not match 3 x size");
  }

  int size() const noexcept { return size_; }

  T& at(int c, int i) noexcept { return values_[static_cast<std::size_t>(c) * size_ + i]; }
  T at(int c, int i) const noexcept { return values_[static_cast<std::size_t>(c) * size_ + i]; }

  std::span<T> channel(int c) noexcept { return {values_.data() + c * size_, static_cast<std::size_t>(size_)}; }
  std::span<const T> channel(int c) const noexcept {
    return {values_.data() + c * size_, static_cast<std::size_t>(size_)};
  }
  std::span<T> values() noexcept { return values_; }
  std::span<const T> values() const noexcept { return values_; }

  friend bool operator==(const BasicLut1D&, const BasicLut1D&) = default;

 private:
  int size_ = 0;
  std::vector<T> values_;
};

/// RGB-to-RGB lattice of size^3 nodes per output channel.
///
/// Storage order is [c][i_r][i_g][i_b]: red is the slowest lattice axis and
/// blue the fastest. File readers and the 3D generator output use the same
/// order.
template <typename T>
class BasicLut3D {
 public:
  using value_type = T;

  BasicLut3D() = default;
  explicit BasicLut3D(int size, T fill = T{}) : size_(size) {
    if (size < 2) throw InvalidSizeError("3D LUT size must be >= 2");
    values_.assign(static_cast<std::size_t>(kChannels) * lattice_count(), fill);
  }
  BasicLut3D(int size, std::vector<T> values) : size_(size), values_(std::move(values)) {
    if (size < 2) throw InvalidSizeError("3D LUT size must be >= 2");
    if (values_.size() != static_cast<std::size_t>(kChannels) * lattice_count())
      throw TypeError("3D LUT value count does not match 3 x size^3");
  }

  int size() const noexcept { return size_; }
  std::size_t lattice_count() const noexcept {
    return static_cast<std::size_t>(size_) * size_ * size_;
  }

  std::size_t index(int c, int r, int g, int b) const noexcept {
    return ((static_cast<std::size_t>(c) * size_ + r) * size_ + g) * size_ + b;
  }
  T& at(int c, int r, int g, int b) noexcept { return values_[index(c, r, g, b)]; }
  T at(int c, int r, int g, int b) const noexcept { return values_[index(c, r, g, b)]; }

  std::span<T> channel(int c) noexcept { return {values_.data() + c * lattice_count(), lattice_count()}; }
  std::span<const T> channel(int c) const noexcept {
    return {values_.data() + c * lattice_count(), lattice_count()};
  }
  std::span<T> values() noexcept { return values_; }
  std::span<const T> values() const noexcept { return values_; }

  friend bool operator==(const BasicLut3D&, const BasicLut3D&) = default;

 private:
  int size_ = 0;
  std::vector<T> values_;
};

using Lut1D = BasicLut1D<float>;
using Lut3D = BasicLut3D<float>;
using Lut1DQ = BasicLut1D<std::uint8_t>;
using Lut3DQ = BasicLut3D<std::uint8_t>;

/// values[c][i] == i / (size - 1).
Lut1D identity_lut1d(int size);
/// Channel c ramps along its own lattice axis.
Lut3D identity_lut3d(int size);

/// True when every channel curve is non-decreasing.
bool is_monotone(const Lut1D& lut) noexcept;

}  // namespace adalut
