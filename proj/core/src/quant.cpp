// Copyright 2026 The adalut Authors
// SPDX-License-Identifier: Apache-2.0

#include "adalut/quant.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "adalut/errors.hpp"

namespace adalut {

namespace {

using Table256 = std::array<std::uint8_t, 256>;

std::array<Table256, kChannels> curve_tables(const Lut1DQ& lut) {
  std::array<Table256, kChannels> tables{};
  for (int c = 0; c < kChannels; ++c)
    for (int v = 0; v < 256; ++v) tables[c][v] = fixed_interp1d(lut.channel(c), static_cast<std::uint8_t>(v));
  return tables;
}

/// Lattice positions of all 256 codes plus an interleaved copy of the LUT.
class FixedLattice {
 public:
  explicit FixedLattice(const Lut3DQ& lut) : size_(lut.size()) {
    if (lut.values().size() != static_cast<std::size_t>(kChannels) * lut.lattice_count())
      throw TypeError("3D LUT array does not match its declared size");
    if (size_ > 64) throw InvalidSizeError("fixed-point 3D LUT supports S <= 64");
    for (int v = 0; v < 256; ++v) pos_[v] = fixed_locate(static_cast<std::uint8_t>(v), size_);
    packed_.resize(lut.values().size());
    const std::size_t n = lut.lattice_count();
    for (std::size_t node = 0; node < n; ++node)
      for (int c = 0; c < kChannels; ++c) packed_[node * 3 + c] = lut.channel(c)[node];
    const std::size_t s = static_cast<std::size_t>(size_);
    for (int k = 0; k < 8; ++k)
      corner_[k] = (((k >> 2) & 1) * s * s + ((k >> 1) & 1) * s + (k & 1)) * 3;
  }

  void sample(std::uint8_t r, std::uint8_t g, std::uint8_t b, std::uint8_t* out) const noexcept {
    const FixedPosition pr = pos_[r], pg = pos_[g], pb = pos_[b];
    const std::size_t s = static_cast<std::size_t>(size_);
    const std::uint8_t* base = packed_.data() + ((pr.cell * s + pg.cell) * s + pb.cell) * 3;
    const std::uint64_t wr[2] = {65536u - pr.frac, pr.frac};
    const std::uint64_t wg[2] = {65536u - pg.frac, pg.frac};
    const std::uint64_t wb[2] = {65536u - pb.frac, pb.frac};
    std::uint64_t acc0 = 0, acc1 = 0, acc2 = 0;
    for (int k = 0; k < 8; ++k) {
      // Exact product of three Q16 weights: the eight corners sum to 2^48.
      const std::uint64_t w = wr[(k >> 2) & 1] * wg[(k >> 1) & 1] * wb[k & 1];
      const std::uint8_t* t = base + corner_[k];
      acc0 += w * t[0];
      acc1 += w * t[1];
      acc2 += w * t[2];
    }
    constexpr std::uint64_t half = std::uint64_t{1} << 47;
    out[0] = static_cast<std::uint8_t>((acc0 + half) >> 48);
    out[1] = static_cast<std::uint8_t>((acc1 + half) >> 48);
    out[2] = static_cast<std::uint8_t>((acc2 + half) >> 48);
  }

 private:
  int size_;
  std::array<FixedPosition, 256> pos_{};
  std::array<std::size_t, 8> corner_{};
  std::vector<std::uint8_t> packed_;
};

void check_curve(const Lut1DQ& lut) {
  if (lut.values().size() != static_cast<std::size_t>(kChannels) * lut.size())
    throw TypeError("1D LUT array does not match its declared size");
  if (lut.size() > 64) throw InvalidSizeError("fixed-point 1D LUT supports S <= 64");
}

}  // namespace

QuantizedTensor quantize_tensor(std::span<const float> values) {
  QuantizedTensor q;
  q.data.resize(values.size());
  if (values.empty()) return q;
  const auto [min_it, max_it] = std::minmax_element(values.begin(), values.end());
  const double lo = std::min(0.0, static_cast<double>(*min_it));
  const double hi = std::max(0.0, static_cast<double>(*max_it));
  if (hi == lo) return q;  // all zeros: scale 0, zero_point 0

  double scale = (hi - lo) / 255.0;
  const int zp = static_cast<int>(std::clamp(std::round(-lo / scale), 0.0, 255.0));
  // Re-fit the scale so both ends of the range are representable with the
  // rounded zero point; otherwise the top code could clip.
  if (zp == 0)
    scale = hi / 255.0;
  else if (zp == 255)
    scale = -lo / 255.0;
  else
    scale = std::max(hi / (255 - zp), -lo / zp);
  q.scale = scale;
  q.zero_point = zp;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double code = std::round(values[i] / scale) + zp;
    q.data[i] = static_cast<std::uint8_t>(std::clamp(code, 0.0, 255.0));
  }
  return q;
}

WeightBundle quantize_bundle(const WeightBundle& bundle) {
  WeightBundle out = bundle;
  for (const auto& [name, t] : bundle.tensors()) {
    if (!(name.starts_with("gen1d.") || name.starts_with("gen3d.")) || t.dtype() != DType::f32) continue;
    out.set(name, Tensor(t.shape(), quantize_tensor(t.f32())));
  }
  return out;
}

Lut1DQ quantize_lut1d(const Lut1D& lut) {
  std::vector<std::uint8_t> q(lut.values().size());
  std::transform(lut.values().begin(), lut.values().end(), q.begin(), quantize_u8);
  return Lut1DQ(lut.size(), std::move(q));
}

Lut3DQ quantize_lut3d(const Lut3D& lut) {
  std::vector<std::uint8_t> q(lut.values().size());
  std::transform(lut.values().begin(), lut.values().end(), q.begin(), quantize_u8);
  return Lut3DQ(lut.size(), std::move(q));
}

std::uint8_t fixed_interp1d(std::span<const std::uint8_t> curve, std::uint8_t v) noexcept {
  const FixedPosition p = fixed_locate(v, static_cast<int>(curve.size()));
  const std::uint32_t acc = curve[p.cell] * (65536u - p.frac) + curve[p.cell + 1] * p.frac;
  return static_cast<std::uint8_t>((acc + 32768u) >> 16);
}

ImageU8 apply_lut1d_fixed(const Lut1DQ& lut, const ImageU8& image, Exec exec) {
  check_curve(lut);
  const auto tables = curve_tables(lut);
  ImageU8 out(image.height(), image.width());
  for (int c = 0; c < kChannels; ++c) {
    const auto src = image.plane(c);
    auto dst = out.plane(c);
    const Table256& t = tables[c];
    parallel_for(src.size(), exec.threads, [&](std::size_t first, std::size_t last) {
      for (std::size_t p = first; p < last; ++p) dst[p] = t[src[p]];
    });
  }
  return out;
}

ImageU8 apply_lut3d_fixed(const Lut3DQ& lut, const ImageU8& image, Exec exec) {
  const FixedLattice lattice(lut);
  ImageU8 out(image.height(), image.width());
  const std::uint8_t *r = image.plane(0).data(), *g = image.plane(1).data(), *b = image.plane(2).data();
  std::uint8_t *or_ = out.plane(0).data(), *og = out.plane(1).data(), *ob = out.plane(2).data();
  parallel_for(image.pixel_count(), exec.threads, [&](std::size_t first, std::size_t last) {
    std::uint8_t px[3];
    for (std::size_t p = first; p < last; ++p) {
      lattice.sample(r[p], g[p], b[p], px);
      or_[p] = px[0];
      og[p] = px[1];
      ob[p] = px[2];
    }
  });
  return out;
}

ImageU8 apply_cascade_fixed(const Lut1DQ& lut1d, const Lut3DQ& lut3d, const ImageU8& image, Exec exec) {
  check_curve(lut1d);
  const auto tables = curve_tables(lut1d);
  const FixedLattice lattice(lut3d);
  ImageU8 out(image.height(), image.width());
  const std::uint8_t *r = image.plane(0).data(), *g = image.plane(1).data(), *b = image.plane(2).data();
  std::uint8_t *or_ = out.plane(0).data(), *og = out.plane(1).data(), *ob = out.plane(2).data();
  parallel_for(image.pixel_count(), exec.threads, [&](std::size_t first, std::size_t last) {
    std::uint8_t px[3];
    for (std::size_t p = first; p < last; ++p) {
      lattice.sample(tables[0][r[p]], tables[1][g[p]], tables[2][b[p]], px);
      or_[p] = px[0];
      og[p] = px[1];
      ob[p] = px[2];
    }
  });
  return out;
}

}  // namespace adalut
