// Copyright 2026 The adalut Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <variant>

#include "adalut/image.hpp"

namespace adalut::io {

/// A decoded three-channel PNG at its native depth.
using PngImage = std::variant<ImageU8, ImageU16>;

/// Reads 8- or 16-bit RGB (gray and palette images are expanded to RGB).
/// Images with an alpha channel are rejected with IoError.
PngImage read_png(const std::filesystem::path& path);

/// Normalized float view: 8-bit divides by 255, 16-bit by 65535.
ImageF to_float(const PngImage& image);
int bit_depth(const PngImage& image) noexcept;

void write_png(const std::filesystem::path& path, const ImageU8& image);
void write_png(const std::filesystem::path& path, const ImageU16& image);

}  // namespace adalut::io
