// Copyright 2026 The adalut Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <bit>
#include <cstring>
#include <filesystem>
#include <numeric>

#include "adalut/errors.hpp"
#include "adalut/image.hpp"
#include "adalut/lut.hpp"
#include "adalut/weights.hpp"
#include "json.hpp"
#include "random.hpp"

namespace adalut {
namespace {

using testing::Rng;

TEST(IdentityLut, OneDimensionalRamps) {
  const Lut1D two = identity_lut1d(2);
  for (int c = 0; c < 3; ++c) {
    EXPECT_EQ(two.at(c, 0), 0.0f);
    EXPECT_EQ(two.at(c, 1), 1.0f);
  }
  EXPECT_EQ(identity_lut1d(9).at(1, 4), 0.5f);
  EXPECT_THROW(identity_lut1d(1), InvalidSizeError);
  EXPECT_THROW(Lut1D(0), InvalidSizeError);
}

TEST(IdentityLut, ThreeDimensionalAxes) {
  EXPECT_EQ(identity_lut3d(2).at(0, 1, 0, 0), 1.0f);
  const Lut3D lut = identity_lut3d(9);
  EXPECT_EQ(lut.at(2, 3, 5, 4), 0.5f);
  EXPECT_EQ(lut.at(0, 3, 5, 4), 3.0f / 8.0f);
  EXPECT_EQ(lut.at(1, 3, 5, 4), 5.0f / 8.0f);
  EXPECT_THROW(identity_lut3d(1), InvalidSizeError);
}

TEST(IdentityLut, MonotoneAlongRampAxis) {
  for (int s : {2, 3, 9, 17, 33, 64}) {
    EXPECT_TRUE(is_monotone(identity_lut1d(s)));
    const Lut3D lut = identity_lut3d(s);
    for (int i = 0; i + 1 < s; ++i)
      for (int j = 0; j < s; j += 3)
        for (int k = 0; k < s; k += 5) {
          EXPECT_LE(lut.at(0, i, j, k), lut.at(0, i + 1, j, k));
          EXPECT_LE(lut.at(1, j, i, k), lut.at(1, j, i + 1, k));
          EXPECT_LE(lut.at(2, j, k, i), lut.at(2, j, k, i + 1));
        }
  }
}

TEST(Lut, StorageIsBlueFastest) {
  const Lut3D lut(5);
  EXPECT_EQ(lut.index(0, 0, 0, 1), 1u);
  EXPECT_EQ(lut.index(0, 0, 1, 0), 5u);
  EXPECT_EQ(lut.index(0, 1, 0, 0), 25u);
  EXPECT_EQ(lut.index(1, 0, 0, 0), 125u);
  EXPECT_THROW(Lut3D(3, std::vector<float>(10)), TypeError);
}

TEST(Conversion, U8RoundTripIsLossless) {
  ImageU8 img(1, 256);
  for (int v = 0; v < 256; ++v)
    for (int c = 0; c < 3; ++c) img.at(c, 0, v) = static_cast<std::uint8_t>(v);
  EXPECT_EQ(to_u8(to_float(img)), img);
}

TEST(Conversion, U16RoundTripIsLossless) {
  ImageU16 img(1, 65536 / 4);
  for (int x = 0; x < img.width(); ++x)
    for (int c = 0; c < 3; ++c) img.at(c, 0, x) = static_cast<std::uint16_t>(4 * x + c);
  EXPECT_EQ(to_u16(to_float(img)), img);
}

TEST(Conversion, RoundsHalfAwayFromZeroAndClamps) {
  EXPECT_EQ(quantize_u8(0.5f), 128);
  EXPECT_EQ(quantize_u8(1.0f), 255);
  EXPECT_EQ(quantize_u8(-0.2f), 0);
  EXPECT_EQ(quantize_u8(1.7f), 255);
  EXPECT_EQ(quantize_u8(2.49f / 255.0f), 2);
  EXPECT_EQ(quantize_u16(1.0f), 65535);
}

TEST(Conversion, SixteenToEightBit) {
  ImageU16 img(1, 3);
  img.at(0, 0, 0) = 0;
  img.at(0, 0, 1) = 65535;
  img.at(0, 0, 2) = 257 * 100;
  const ImageU8 out = to_u8(img);
  EXPECT_EQ(out.at(0, 0, 0), 0);
  EXPECT_EQ(out.at(0, 0, 1), 255);
  EXPECT_EQ(out.at(0, 0, 2), 100);
}

TEST(Image, RangeValidation) {
  ImageF img(2, 2, 0.5f);
  EXPECT_NO_THROW(validate_range(img));
  img.at(1, 1, 1) = 1.5f;
  EXPECT_THROW(validate_range(img), TypeError);
}

TEST(Image, CropReadsSubrectangle) {
  Rng rng(3);
  const ImageF img = testing::random_image(rng, 7, 9);
  const ImageF sub = crop(img, 2, 3, 4, 5);
  ASSERT_EQ(sub.height(), 4);
  ASSERT_EQ(sub.width(), 5);
  EXPECT_EQ(sub.at(2, 3, 4), img.at(2, 5, 7));
  EXPECT_THROW(crop(img, 5, 0, 4, 1), TypeError);
}

// ---- weight bundle ----

TEST(Hyperparams, Validation) {
  EXPECT_NO_THROW(validate(Hyperparams{6, 9, 9, 3}));
  EXPECT_THROW(validate(Hyperparams{0, 9, 9, 3}), ModelError);
  EXPECT_THROW(validate(Hyperparams{6, 1, 9, 3}), InvalidSizeError);
  EXPECT_THROW(validate(Hyperparams{6, 9, 1, 3}), InvalidSizeError);
  EXPECT_THROW(validate(Hyperparams{6, 9, 9, 0}), ModelError);
  Hyperparams bad_eps{6, 9, 9, 3};
  bad_eps.in_eps = 0.0f;
  EXPECT_THROW(validate(bad_eps), ModelError);
}

std::size_t sum_prefix(const WeightBundle& b, const std::string& prefix) {
  std::size_t n = 0;
  for (const auto& [name, t] : b.tensors())
    if (name.starts_with(prefix)) n += t.element_count();
  return n;
}

// Hand-summed layer sizes for m=6, S_o=S_t=9, K=3.
//   conv: 3*6*9+6, 6*12*9+12, 12*24*9+24, 24*48*9+48, 48*48*9+48 = 34644
//   InstanceNorm affine: 2*(6+12+24+48) = 180
//   gen1d: 27*192 + 27 = 5211
//   gen3d: 3*192 + 3 + 2187*3 + 2187 = 9327
TEST(ParameterCount, SmallModel) {
  const WeightBundle b(Hyperparams{6, 9, 9, 3});
  EXPECT_EQ(sum_prefix(b, "backbone.conv"), 34644u);
  EXPECT_EQ(sum_prefix(b, "backbone.in"), 180u);
  EXPECT_EQ(sum_prefix(b, "gen1d."), 5211u);
  EXPECT_EQ(sum_prefix(b, "gen3d."), 9327u);
  EXPECT_EQ(b.parameter_count(), 49362u);
  const ParameterCounts counts = b.parameter_counts();
  EXPECT_EQ(counts.total, 49362u);
  EXPECT_EQ(counts.weights_only, 46827u);
  EXPECT_EQ(counts.backbone, 34824u);
  EXPECT_EQ(counts.generators, 14538u);
}

TEST(ParameterCount, LargeModel) {
  const WeightBundle b(Hyperparams{8, 17, 17, 3});
  EXPECT_EQ(b.parameter_count(), 134530u);
  EXPECT_EQ(b.parameter_counts().weights_only, 119313u);
  EXPECT_EQ(sum_prefix(WeightBundle(Hyperparams{8, 9, 9, 3}), "gen3d."), 9519u);
}

TEST(ParameterCount, ContextLength) {
  EXPECT_EQ((Hyperparams{6, 9, 9, 3}.context_length()), 192);
  EXPECT_EQ((Hyperparams{8, 17, 17, 3}.context_length()), 256);
}

TEST(Layout, ShapesFollowTheArchitecture) {
  const auto layout = expected_layout(Hyperparams{8, 17, 17, 3});
  auto shape_of = [&](const std::string& name) {
    for (const auto& spec : layout)
      if (spec.name == name) return spec.shape;
    return std::vector<std::int64_t>{};
  };
  EXPECT_EQ(shape_of("backbone.conv1.weight"), (std::vector<std::int64_t>{8, 3, 3, 3}));
  EXPECT_EQ(shape_of("backbone.conv5.weight"), (std::vector<std::int64_t>{64, 64, 3, 3}));
  EXPECT_EQ(shape_of("backbone.in4.gamma"), (std::vector<std::int64_t>{64}));
  EXPECT_EQ(shape_of("gen1d.fc.weight"), (std::vector<std::int64_t>{51, 256}));
  EXPECT_EQ(shape_of("gen3d.fc1.weight"), (std::vector<std::int64_t>{3, 256}));
  EXPECT_EQ(shape_of("gen3d.fc2.weight"), (std::vector<std::int64_t>{3 * 17 * 17 * 17, 3}));
  EXPECT_TRUE(shape_of("backbone.in5.gamma").empty());
}

WeightBundle filled_bundle(const Hyperparams& hp, std::uint64_t seed) {
  WeightBundle b(hp);
  Rng rng(seed);
  for (const auto& [name, t] : b.tensors()) {
    std::vector<float> v(t.element_count());
    for (float& x : v) x = static_cast<float>(rng.normal());
    b.set(name, Tensor(t.shape(), std::move(v)));
  }
  return b;
}

TEST(Bundle, EncodeDecodeIsBitExact) {
  const WeightBundle b = filled_bundle(Hyperparams{2, 5, 4, 2}, 11);
  const auto bytes = encode_weight_bundle(b);
  const WeightBundle back = decode_weight_bundle(bytes);
  EXPECT_EQ(back, b);
  EXPECT_EQ(encode_weight_bundle(back), bytes);
}

TEST(Bundle, SaveLoadFile) {
  const auto path = std::filesystem::temp_directory_path() / "adalut_core_test.sepw";
  const WeightBundle b = filled_bundle(Hyperparams{3, 9, 5, 3}, 12);
  save_weight_bundle(b, path);
  EXPECT_EQ(load_weight_bundle(path), b);
  std::filesystem::remove(path);
  EXPECT_THROW(load_weight_bundle(path), IoError);
}

TEST(Bundle, ZeroBundlesKeepParameterCount) {
  Rng rng(5);
  for (int trial = 0; trial < 25; ++trial) {
    const Hyperparams hp{rng.integer(1, 8), rng.integer(2, 33), rng.integer(2, 17), rng.integer(1, 6)};
    const WeightBundle b(hp);
    EXPECT_EQ(decode_weight_bundle(encode_weight_bundle(b)).parameter_count(), b.parameter_count());
  }
}

TEST(Bundle, HeaderLayout) {
  const auto bytes = encode_weight_bundle(WeightBundle(Hyperparams{1, 2, 2, 1}));
  ASSERT_GE(bytes.size(), 16u);
  EXPECT_EQ(std::memcmp(bytes.data(), "SEPW", 4), 0);
  std::uint32_t version = 0;
  std::memcpy(&version, bytes.data() + 4, 4);
  EXPECT_EQ(version, 1u);
  std::uint64_t len = 0;
  std::memcpy(&len, bytes.data() + 8, 8);
  const auto manifest = nlohmann::json::parse(std::string(reinterpret_cast<const char*>(bytes.data()) + 16, len));
  EXPECT_EQ(manifest.at("m"), 1);
  EXPECT_EQ(manifest.at("S_o"), 2);
  EXPECT_EQ(manifest.at("K"), 1);
  EXPECT_EQ(manifest.at("tensors").front().at("dtype"), "f32");
}

std::vector<std::byte> rebuild(const nlohmann::json& manifest, std::span<const std::byte> payload) {
  const std::string text = manifest.dump();
  std::vector<std::byte> out(16 + text.size());
  std::memcpy(out.data(), "SEPW", 4);
  const std::uint32_t version = 1;
  const std::uint64_t len = text.size();
  std::memcpy(out.data() + 4, &version, 4);
  std::memcpy(out.data() + 8, &len, 8);
  std::memcpy(out.data() + 16, text.data(), text.size());
  out.insert(out.end(), payload.begin(), payload.end());
  return out;
}

struct Split {
  nlohmann::json manifest;
  std::vector<std::byte> payload;
};

Split split(const std::vector<std::byte>& bytes) {
  std::uint64_t len = 0;
  std::memcpy(&len, bytes.data() + 8, 8);
  return {nlohmann::json::parse(std::string(reinterpret_cast<const char*>(bytes.data()) + 16, len)),
          std::vector<std::byte>(bytes.begin() + 16 + static_cast<std::ptrdiff_t>(len), bytes.end())};
}

TEST(Bundle, ManifestShapeDisagreeingWithMIsRejected) {
  auto [manifest, payload] = split(encode_weight_bundle(WeightBundle(Hyperparams{6, 9, 9, 3})));
  manifest["m"] = 8;
  EXPECT_THROW(decode_weight_bundle(rebuild(manifest, payload)), ShapeMismatchError);
}

TEST(Bundle, MissingAndUnknownTensorsAreRejected) {
  const auto bytes = encode_weight_bundle(WeightBundle(Hyperparams{1, 2, 2, 1}));
  {
    auto [manifest, payload] = split(bytes);
    manifest["tensors"].erase(manifest["tensors"].size() - 1);
    EXPECT_THROW(decode_weight_bundle(rebuild(manifest, payload)), ShapeMismatchError);
  }
  {
    auto [manifest, payload] = split(bytes);
    manifest["tensors"][0]["name"] = "backbone.conv9.weight";
    EXPECT_THROW(decode_weight_bundle(rebuild(manifest, payload)), ShapeMismatchError);
  }
  {
    auto [manifest, payload] = split(bytes);
    manifest["tensors"][0]["dtype"] = "f16";
    EXPECT_THROW(decode_weight_bundle(rebuild(manifest, payload)), FormatError);
  }
}

TEST(Bundle, CorruptContainers) {
  auto bytes = encode_weight_bundle(WeightBundle(Hyperparams{1, 2, 2, 1}));
  {
    auto bad = bytes;
    bad[0] = std::byte{'X'};
    EXPECT_THROW(decode_weight_bundle(bad), BadMagicError);
  }
  {
    auto bad = bytes;
    bad[4] = std::byte{2};
    EXPECT_THROW(decode_weight_bundle(bad), VersionMismatchError);
  }
  {
    auto bad = bytes;
    bad.resize(bad.size() - 1);
    EXPECT_THROW(decode_weight_bundle(bad), TruncatedDataError);
  }
  {
    auto bad = bytes;
    bad.resize(20);
    EXPECT_THROW(decode_weight_bundle(bad), TruncatedDataError);
  }
  {
    auto [manifest, payload] = split(bytes);
    std::string text = manifest.dump();
    text[0] = '[';
    std::vector<std::byte> raw(16 + text.size());
    std::memcpy(raw.data(), bytes.data(), 16);
    std::memcpy(raw.data() + 16, text.data(), text.size());
    EXPECT_THROW(decode_weight_bundle(raw), FormatError);
  }
}

TEST(Bundle, SetChecksShapes) {
  WeightBundle b(Hyperparams{2, 3, 3, 1});
  EXPECT_THROW(b.set("gen1d.fc.bias", Tensor({8}, std::vector<float>(8))), ShapeMismatchError);
  EXPECT_THROW(b.set("nope", Tensor({1}, std::vector<float>(1))), ShapeMismatchError);
  EXPECT_NO_THROW(b.set("gen1d.fc.bias", Tensor({9}, std::vector<float>(9, 1.0f))));
  EXPECT_EQ(b.tensor("gen1d.fc.bias").f32()[8], 1.0f);
  EXPECT_THROW(b.tensor("gen1d.fc.bias").u8(), TypeError);
}

TEST(Bundle, QuantizedTensorsSurviveTheContainer) {
  WeightBundle b(Hyperparams{1, 2, 2, 1});
  QuantizedTensor q;
  q.data = {0, 17, 255, 3, 4, 5};
  q.scale = 0.0123;
  q.zero_point = 17;
  b.set("gen1d.fc.bias", Tensor({6}, q));
  const WeightBundle back = decode_weight_bundle(encode_weight_bundle(b));
  EXPECT_EQ(back, b);
  EXPECT_EQ(back.tensor("gen1d.fc.bias").dtype(), DType::u8);
  EXPECT_DOUBLE_EQ(b.equivalent_parameter_count(), static_cast<double>(b.parameter_count()) - 6 * 0.75);
}

}  // namespace
}  // namespace adalut
