// Copyright 2026 The adalut Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "adalut/lut.hpp"

namespace adalut::io {

/// Iridas/Adobe .cube text: "LUT_3D_SIZE N" then N^3 "r g b" rows with the
/// red index varying fastest. Values are printed with 6 decimals.
/// The reader skips comments, TITLE and a DOMAIN_MIN/DOMAIN_MAX of 0 / 1.
std::string format_cube(const Lut3D& lut, std::string_view title = {});
Lut3D parse_cube(std::string_view text);
void write_cube(const std::filesystem::path& path, const Lut3D& lut, std::string_view title = {});
Lut3D read_cube(const std::filesystem::path& path);

/// "SEPLUT1D S" header, then S rows of "r g b".
std::string format_lut1d(const Lut1D& lut);
Lut1D parse_lut1d(std::string_view text);
void write_lut1d(const std::filesystem::path& path, const Lut1D& lut);
Lut1D read_lut1d(const std::filesystem::path& path);

}  // namespace adalut::io
