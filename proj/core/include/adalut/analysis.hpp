// Copyright 2026 The adalut Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "adalut/image.hpp"
#include "adalut/lut.hpp"

namespace adalut {

/// Fraction of the (S_t - 1)^3 interpolation cells that hold at least one pixel.
double cell_utilization(const ImageF& image, int lut3d_size);

/// 256-bin histogram of one channel. Float samples are first rounded to 8 bits.
struct Histogram {
  std::array<std::uint64_t, 256> counts{};
  std::uint64_t total = 0;

  double mass(int bin) const noexcept {
    return total == 0 ? 0.0 : static_cast<double>(counts[bin]) / static_cast<double>(total);
  }
  std::vector<double> normalized() const;
};

Histogram histogram(std::span<const std::uint8_t> channel);
Histogram histogram(std::span<const float> channel);

/// Population variance of the 256 normalized bin masses. Computed from the
/// integer counts, so any permutation of the bins gives the same value.
double histogram_variance(const Histogram& hist);
/// Same statistic for an arbitrary normalized histogram.
double histogram_variance(std::span<const double> masses);

std::array<double, 3> channel_histogram_variance(const ImageF& image);
std::array<double, 3> channel_histogram_variance(const ImageU8& image);

/// sum (x - y)^2 / (x + y) over bins with x + y > 0.
double chi_square_distance(std::span<const double> a, std::span<const double> b);
/// Mean of the per-channel chi-square distances of two images.
double chi_square_distance(const ImageF& a, const ImageF& b);

/// Per-channel global histogram equalization. A constant channel maps to 0.
ImageU8 histogram_equalize(const ImageU8& image);

/// 1D LUT whose curves follow each channel's empirical CDF, i.e. a
/// contrast-flattening transform sampled at `size` points.
Lut1D cdf_flattening_lut(const ImageF& image, int size);

/// +infinity for identical images.
inline constexpr double kPsnrIdentical = std::numeric_limits<double>::infinity();

double psnr(const ImageF& a, const ImageF& b);
double psnr(const ImageU8& a, const ImageU8& b);
double psnr(const ImageU16& a, const ImageU16& b);

/// Mean SSIM over channels, 11x11 Gaussian window (sigma 1.5), K1 0.01,
/// K2 0.03, computed on the valid region. Windows shrink for tiny images.
double ssim(const ImageF& a, const ImageF& b);
double ssim(const ImageU8& a, const ImageU8& b);

/// sRGB (D65) to CIELAB for one normalized pixel.
std::array<double, 3> srgb_to_lab(double r, double g, double b) noexcept;
/// Mean CIE76 colour difference in CIELAB.
double delta_e_ab(const ImageF& a, const ImageF& b);
double delta_e_ab(const ImageU8& a, const ImageU8& b);

struct AnalysisReport {
  double cell_utilization = 0.0;
  std::array<double, 3> hist_variance{};
  std::optional<double> chi_square;
  std::optional<double> psnr;
  std::optional<double> ssim;
  std::optional<double> delta_e;
};

/// {cell_utilization, hist_variance: [r, g, b], chi_square, psnr, ssim, delta_e}.
/// Missing values are null; an infinite PSNR is written as the string "inf".
std::string to_json(const AnalysisReport& report);

/// Analysis of `image` at lattice size `lut3d_size`, plus comparison
/// statistics when a reference is given.
AnalysisReport analyze(const ImageF& image, int lut3d_size, const ImageF* reference = nullptr);

}  // namespace adalut
