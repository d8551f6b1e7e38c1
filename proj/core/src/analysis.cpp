// Copyright 2026 The adalut Authors
// SPDX-License-Identifier: Apache-2.0

#include "adalut/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "adalut/errors.hpp"
#include "adalut/interp.hpp"
#include "json.hpp"

namespace adalut {

namespace {

template <typename T>
void require_same_shape(const Image<T>& a, const Image<T>& b) {
  if (!a.same_shape(b)) throw TypeError("images differ in shape");
}

template <typename T>
double psnr_impl(const Image<T>& a, const Image<T>& b) {
  require_same_shape(a, b);
  if (a.empty()) throw TypeError("PSNR of empty images");
  const auto da = a.data();
  const auto db = b.data();
  double sse = 0.0;
  for (std::size_t i = 0; i < da.size(); ++i) {
    const double d = static_cast<double>(da[i]) - static_cast<double>(db[i]);
    sse += d * d;
  }
  if (sse == 0.0) return kPsnrIdentical;
  const double mse = sse / static_cast<double>(da.size());
  const double peak = SampleTraits<T>::max_value;
  return 10.0 * std::log10(peak * peak / mse);
}

std::vector<double> gaussian_kernel(int size, double sigma) {
  std::vector<double> k(size);
  const int half = size / 2;
  for (int i = 0; i < size; ++i) k[i] = std::exp(-0.5 * (i - half) * (i - half) / (sigma * sigma));
  const double sum = std::accumulate(k.begin(), k.end(), 0.0);
  for (double& v : k) v /= sum;
  return k;
}

/// Separable "valid" filtering of an (h, w) plane.
std::vector<double> filter_valid(const std::vector<double>& src, int h, int w, const std::vector<double>& k) {
  const int n = static_cast<int>(k.size());
  const int oh = h - n + 1, ow = w - n + 1;
  std::vector<double> tmp(static_cast<std::size_t>(h) * ow);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < ow; ++x) {
      double acc = 0.0;
      for (int i = 0; i < n; ++i) acc += k[i] * src[static_cast<std::size_t>(y) * w + x + i];
      tmp[static_cast<std::size_t>(y) * ow + x] = acc;
    }
  std::vector<double> out(static_cast<std::size_t>(oh) * ow);
  for (int y = 0; y < oh; ++y)
    for (int x = 0; x < ow; ++x) {
      double acc = 0.0;
      for (int i = 0; i < n; ++i) acc += k[i] * tmp[static_cast<std::size_t>(y + i) * ow + x];
      out[static_cast<std::size_t>(y) * ow + x] = acc;
    }
  return out;
}

double ssim_plane(std::span<const float> pa, std::span<const float> pb, int h, int w) {
  int win = std::min({11, h, w});
  if (win % 2 == 0) --win;
  const auto k = gaussian_kernel(win, 1.5);
  const std::size_t n = pa.size();
  std::vector<double> x(n), y(n), xx(n), yy(n), xy(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = pa[i];
    y[i] = pb[i];
    xx[i] = x[i] * x[i];
    yy[i] = y[i] * y[i];
    xy[i] = x[i] * y[i];
  }
  const auto mx = filter_valid(x, h, w, k), my = filter_valid(y, h, w, k);
  const auto sxx = filter_valid(xx, h, w, k), syy = filter_valid(yy, h, w, k), sxy = filter_valid(xy, h, w, k);
  constexpr double c1 = 0.01 * 0.01, c2 = 0.03 * 0.03;
  double total = 0.0;
  for (std::size_t i = 0; i < mx.size(); ++i) {
    const double vx = sxx[i] - mx[i] * mx[i];
    const double vy = syy[i] - my[i] * my[i];
    const double cov = sxy[i] - mx[i] * my[i];
    total += ((2 * mx[i] * my[i] + c1) * (2 * cov + c2)) / ((mx[i] * mx[i] + my[i] * my[i] + c1) * (vx + vy + c2));
  }
  return total / static_cast<double>(mx.size());
}

double srgb_to_linear(double c) noexcept {
  return c <= 0.04045 ? c / 12.92 : std::pow((c + 0.055) / 1.055, 2.4);
}

double lab_f(double t) noexcept {
  constexpr double delta = 6.0 / 29.0;
  return t > delta * delta * delta ? std::cbrt(t) : t / (3.0 * delta * delta) + 4.0 / 29.0;
}

}  // namespace

std::vector<double> Histogram::normalized() const {
  std::vector<double> out(256);
  for (int i = 0; i < 256; ++i) out[i] = mass(i);
  return out;
}

double cell_utilization(const ImageF& image, int lut3d_size) {
  if (lut3d_size < 2) throw InvalidSizeError("S_t must be >= 2");
  const std::size_t cells = static_cast<std::size_t>(lut3d_size - 1);
  std::vector<bool> occupied(cells * cells * cells, false);
  const auto r = image.plane(0), g = image.plane(1), b = image.plane(2);
  std::size_t count = 0;
  for (std::size_t p = 0; p < image.pixel_count(); ++p) {
    const std::size_t idx = (static_cast<std::size_t>(locate(r[p], lut3d_size).cell) * cells +
                             locate(g[p], lut3d_size).cell) * cells +
                            locate(b[p], lut3d_size).cell;
    if (!occupied[idx]) {
      occupied[idx] = true;
      ++count;
    }
  }
  return static_cast<double>(count) / static_cast<double>(occupied.size());
}

Histogram histogram(std::span<const std::uint8_t> channel) {
  Histogram h;
  for (std::uint8_t v : channel) ++h.counts[v];
  h.total = channel.size();
  return h;
}

Histogram histogram(std::span<const float> channel) {
  Histogram h;
  for (float v : channel) ++h.counts[quantize_u8(v)];
  h.total = channel.size();
  return h;
}

double histogram_variance(const Histogram& hist) {
  if (hist.total == 0) return 0.0;
  // var = (1/256) sum p_i^2 - (1/256)^2 with p_i = c_i / N, kept exact in integers
  // until the final division.
  std::uint64_t sum_sq = 0;
  for (std::uint64_t c : hist.counts) sum_sq += c * c;
  const std::uint64_t n2 = hist.total * hist.total;
  const std::uint64_t numerator = 256 * sum_sq - n2;
  return static_cast<double>(numerator) / (65536.0 * static_cast<double>(n2));
}

double histogram_variance(std::span<const double> masses) {
  if (masses.empty()) return 0.0;
  const double n = static_cast<double>(masses.size());
  const double mean = std::accumulate(masses.begin(), masses.end(), 0.0) / n;
  double acc = 0.0;
  for (double m : masses) acc += (m - mean) * (m - mean);
  return acc / n;
}

std::array<double, 3> channel_histogram_variance(const ImageF& image) {
  return {histogram_variance(histogram(image.plane(0))), histogram_variance(histogram(image.plane(1))),
          histogram_variance(histogram(image.plane(2)))};
}

std::array<double, 3> channel_histogram_variance(const ImageU8& image) {
  return {histogram_variance(histogram(image.plane(0))), histogram_variance(histogram(image.plane(1))),
          histogram_variance(histogram(image.plane(2)))};
}

double chi_square_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw TypeError("histograms differ in bin count");
  double chi = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double s = a[i] + b[i];
    if (s > 0.0) chi += (a[i] - b[i]) * (a[i] - b[i]) / s;
  }
  return chi;
}

double chi_square_distance(const ImageF& a, const ImageF& b) {
  double total = 0.0;
  for (int c = 0; c < kChannels; ++c)
    total += chi_square_distance(histogram(a.plane(c)).normalized(), histogram(b.plane(c)).normalized());
  return total / kChannels;
}

ImageU8 histogram_equalize(const ImageU8& image) {
  ImageU8 out(image.height(), image.width());
  for (int c = 0; c < kChannels; ++c) {
    const Histogram h = histogram(image.plane(c));
    std::array<std::uint64_t, 256> cdf{};
    std::uint64_t running = 0, cdf_min = 0;
    for (int v = 0; v < 256; ++v) {
      running += h.counts[v];
      cdf[v] = running;
      if (cdf_min == 0 && running > 0) cdf_min = running;
    }
    std::array<std::uint8_t, 256> map{};
    if (h.total > cdf_min) {
      const double denom = static_cast<double>(h.total - cdf_min);
      for (int v = 0; v < 256; ++v) {
        const double num = cdf[v] > cdf_min ? static_cast<double>(cdf[v] - cdf_min) : 0.0;
        map[v] = static_cast<std::uint8_t>(std::round(num / denom * 255.0));
      }
    }
    const auto src = image.plane(c);
    auto dst = out.plane(c);
    for (std::size_t p = 0; p < src.size(); ++p) dst[p] = map[src[p]];
  }
  return out;
}

Lut1D cdf_flattening_lut(const ImageF& image, int size) {
  Lut1D lut(size);
  for (int c = 0; c < kChannels; ++c) {
    std::vector<float> sorted(image.plane(c).begin(), image.plane(c).end());
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());
    for (int i = 0; i < size; ++i) {
      const float x = static_cast<float>(i) / static_cast<float>(size - 1);
      const auto below = std::upper_bound(sorted.begin(), sorted.end(), x) - sorted.begin();
      lut.at(c, i) = sorted.empty() ? x : static_cast<float>(static_cast<double>(below) / n);
    }
  }
  return lut;
}

double psnr(const ImageF& a, const ImageF& b) { return psnr_impl(a, b); }
double psnr(const ImageU8& a, const ImageU8& b) { return psnr_impl(a, b); }
double psnr(const ImageU16& a, const ImageU16& b) { return psnr_impl(a, b); }

double ssim(const ImageF& a, const ImageF& b) {
  require_same_shape(a, b);
  if (a.empty()) throw TypeError("SSIM of empty images");
  double total = 0.0;
  for (int c = 0; c < kChannels; ++c) total += ssim_plane(a.plane(c), b.plane(c), a.height(), a.width());
  return total / kChannels;
}

double ssim(const ImageU8& a, const ImageU8& b) { return ssim(to_float(a), to_float(b)); }

std::array<double, 3> srgb_to_lab(double r, double g, double b) noexcept {
  const double lr = srgb_to_linear(r), lg = srgb_to_linear(g), lb = srgb_to_linear(b);
  const double x = 0.4124564 * lr + 0.3575761 * lg + 0.1804375 * lb;
  const double y = 0.2126729 * lr + 0.7151522 * lg + 0.0721750 * lb;
  const double z = 0.0193339 * lr + 0.1191920 * lg + 0.9503041 * lb;
  const double fx = lab_f(x / 0.95047), fy = lab_f(y / 1.0), fz = lab_f(z / 1.08883);
  return {116.0 * fy - 16.0, 500.0 * (fx - fy), 200.0 * (fy - fz)};
}

double delta_e_ab(const ImageF& a, const ImageF& b) {
  require_same_shape(a, b);
  if (a.empty()) throw TypeError("delta E of empty images");
  double total = 0.0;
  for (std::size_t p = 0; p < a.pixel_count(); ++p) {
    const auto la = srgb_to_lab(a.plane(0)[p], a.plane(1)[p], a.plane(2)[p]);
    const auto lb = srgb_to_lab(b.plane(0)[p], b.plane(1)[p], b.plane(2)[p]);
    total += std::sqrt((la[0] - lb[0]) * (la[0] - lb[0]) + (la[1] - lb[1]) * (la[1] - lb[1]) +
                       (la[2] - lb[2]) * (la[2] - lb[2]));
  }
  return total / static_cast<double>(a.pixel_count());
}

double delta_e_ab(const ImageU8& a, const ImageU8& b) { return delta_e_ab(to_float(a), to_float(b)); }

AnalysisReport analyze(const ImageF& image, int lut3d_size, const ImageF* reference) {
  AnalysisReport report;
  report.cell_utilization = cell_utilization(image, lut3d_size);
  report.hist_variance = channel_histogram_variance(image);
  if (reference) {
    report.chi_square = chi_square_distance(image, *reference);
    report.psnr = psnr(image, *reference);
    report.ssim = ssim(image, *reference);
    report.delta_e = delta_e_ab(image, *reference);
  }
  return report;
}

std::string to_json(const AnalysisReport& report) {
  using nlohmann::json;
  auto opt = [](const std::optional<double>& v) -> json {
    if (!v) return nullptr;
    if (std::isinf(*v)) return *v > 0 ? "inf" : "-inf";
    return *v;
  };
  json j = {
      {"cell_utilization", report.cell_utilization},
      {"hist_variance", report.hist_variance},
      {"chi_square", opt(report.chi_square)},
      {"psnr", opt(report.psnr)},
      {"ssim", opt(report.ssim)},
      {"delta_e", opt(report.delta_e)},
  };
  return j.dump(2);
}

}  // namespace adalut
