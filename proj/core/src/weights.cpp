// Copyright 2026 The adalut Authors
// SPDX-License-Identifier: Apache-2.0

#include "adalut/weights.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <functional>
#include <iterator>
#include <numeric>
#include <sstream>

#include "adalut/errors.hpp"
#include "json.hpp"

namespace adalut {

using nlohmann::json;

namespace {

std::size_t product(const std::vector<std::int64_t>& shape) {
  return std::accumulate(shape.begin(), shape.end(), std::size_t{1},
                         [](std::size_t a, std::int64_t b) { return a * static_cast<std::size_t>(b); });
}

std::string shape_string(const std::vector<std::int64_t>& shape) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < shape.size(); ++i) os << (i ? "," : "") << shape[i];
  os << ')';
  return os.str();
}

void put_u32(std::vector<std::byte>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::byte>((v >> (8 * i)) & 0xFF));
}

void put_u64(std::vector<std::byte>& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::byte>((v >> (8 * i)) & 0xFF));
}

std::uint32_t get_u32(const std::byte* p) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(p[i]) << (8 * i);
  return v;
}

std::uint64_t get_u64(const std::byte* p) {
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(p[i]) << (8 * i);
  return v;
}

bool is_weight_matrix(const std::string& name) {
  return name.ends_with(".weight");
}

bool is_backbone(const std::string& name) { return name.starts_with("backbone."); }

}  // namespace

void validate(const Hyperparams& hp) {
  if (hp.m < 1) throw ModelError("channel multiplier m must be >= 1");
  if (hp.lut1d_size < 2) throw InvalidSizeError("S_o must be >= 2");
  if (hp.lut3d_size < 2) throw InvalidSizeError("S_t must be >= 2");
  if (hp.lut3d_size > 64) throw InvalidSizeError("S_t must be <= 64");
  if (hp.rank < 1) throw ModelError("rank K must be >= 1");
  if (!(hp.in_eps > 0.0f)) throw ModelError("InstanceNorm epsilon must be > 0");
}

std::vector<float> QuantizedTensor::dequantize() const {
  std::vector<float> out(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) out[i] = dequantize(data[i]);
  return out;
}

Tensor::Tensor(std::vector<std::int64_t> shape, std::vector<float> values)
    : shape_(std::move(shape)), storage_(std::move(values)) {
  if (product(shape_) != std::get<0>(storage_).size())
    throw ShapeMismatchError("tensor value count does not match shape " + shape_string(shape_));
}

Tensor::Tensor(std::vector<std::int64_t> shape, QuantizedTensor values)
    : shape_(std::move(shape)), storage_(std::move(values)) {
  if (product(shape_) != std::get<1>(storage_).data.size())
    throw ShapeMismatchError("tensor value count does not match shape " + shape_string(shape_));
}

Tensor Tensor::zeros(std::vector<std::int64_t> shape) {
  const std::size_t n = product(shape);
  return Tensor(std::move(shape), std::vector<float>(n, 0.0f));
}

DType Tensor::dtype() const noexcept {
  return storage_.index() == 0 ? DType::f32 : DType::u8;
}

std::size_t Tensor::element_count() const noexcept { return product(shape_); }

std::span<const float> Tensor::f32() const {
  if (auto* v = std::get_if<std::vector<float>>(&storage_)) return *v;
  throw TypeError("tensor is quantized, not f32");
}

std::span<float> Tensor::f32() {
  if (auto* v = std::get_if<std::vector<float>>(&storage_)) return *v;
  throw TypeError("tensor is quantized, not f32");
}

const QuantizedTensor& Tensor::u8() const {
  if (auto* q = std::get_if<QuantizedTensor>(&storage_)) return *q;
  throw TypeError("tensor is f32, not quantized");
}

std::vector<float> Tensor::to_float() const {
  if (auto* v = std::get_if<std::vector<float>>(&storage_)) return *v;
  return std::get<QuantizedTensor>(storage_).dequantize();
}

std::vector<int> backbone_widths(int m) { return {m, 2 * m, 4 * m, 8 * m, 8 * m}; }

std::vector<TensorSpec> expected_layout(const Hyperparams& hp) {
  std::vector<TensorSpec> specs;
  const auto widths = backbone_widths(hp.m);
  std::int64_t in_ch = 3;
  for (int i = 0; i < 5; ++i) {
    const std::int64_t out_ch = widths[i];
    const std::string p = "backbone.conv" + std::to_string(i + 1);
    specs.push_back({p + ".weight", {out_ch, in_ch, 3, 3}});
    specs.push_back({p + ".bias", {out_ch}});
    if (i < 4) {
      const std::string n = "backbone.in" + std::to_string(i + 1);
      specs.push_back({n + ".gamma", {out_ch}});
      specs.push_back({n + ".beta", {out_ch}});
    }
    in_ch = out_ch;
  }
  const std::int64_t ctx = hp.context_length();
  const std::int64_t n1d = 3 * static_cast<std::int64_t>(hp.lut1d_size);
  const std::int64_t s = hp.lut3d_size;
  const std::int64_t n3d = 3 * s * s * s;
  specs.push_back({"gen1d.fc.weight", {n1d, ctx}});
  specs.push_back({"gen1d.fc.bias", {n1d}});
  specs.push_back({"gen3d.fc1.weight", {hp.rank, ctx}});
  specs.push_back({"gen3d.fc1.bias", {hp.rank}});
  specs.push_back({"gen3d.fc2.weight", {n3d, hp.rank}});
  specs.push_back({"gen3d.fc2.bias", {n3d}});
  return specs;
}

WeightBundle::WeightBundle(Hyperparams hp) : hp_(hp) {
  adalut::validate(hp_);
  for (auto& spec : expected_layout(hp_)) tensors_.emplace(spec.name, Tensor::zeros(spec.shape));
}

const Tensor& WeightBundle::tensor(const std::string& name) const {
  auto it = tensors_.find(name);
  if (it == tensors_.end()) throw ShapeMismatchError("missing tensor: " + name);
  return it->second;
}

Tensor& WeightBundle::tensor(const std::string& name) {
  auto it = tensors_.find(name);
  if (it == tensors_.end()) throw ShapeMismatchError("missing tensor: " + name);
  return it->second;
}

void WeightBundle::set(const std::string& name, Tensor t) {
  for (const auto& spec : expected_layout(hp_)) {
    if (spec.name != name) continue;
    if (spec.shape != t.shape())
      throw ShapeMismatchError(name + ": expected shape " + shape_string(spec.shape) + ", got " +
                               shape_string(t.shape()));
    tensors_[name] = std::move(t);
    return;
  }
  throw ShapeMismatchError("unknown tensor: " + name);
}

void WeightBundle::validate() const {
  adalut::validate(hp_);
  const auto layout = expected_layout(hp_);
  for (const auto& spec : layout) {
    const Tensor& t = tensor(spec.name);
    if (t.shape() != spec.shape)
      throw ShapeMismatchError(spec.name + ": expected shape " + shape_string(spec.shape) +
                               ", got " + shape_string(t.shape()));
  }
  if (tensors_.size() != layout.size()) {
    for (const auto& [name, _] : tensors_) {
      bool known = false;
      for (const auto& spec : layout) known = known || spec.name == name;
      if (!known) throw ShapeMismatchError("unexpected tensor: " + name);
    }
  }
}

std::size_t WeightBundle::parameter_count() const { return parameter_counts().total; }

ParameterCounts WeightBundle::parameter_counts() const {
  ParameterCounts counts;
  for (const auto& [name, t] : tensors_) {
    const std::size_t n = t.element_count();
    counts.total += n;
    if (is_weight_matrix(name)) counts.weights_only += n;
    (is_backbone(name) ? counts.backbone : counts.generators) += n;
  }
  return counts;
}

double WeightBundle::equivalent_parameter_count(Accounting accounting) const {
  double total = 0.0;
  for (const auto& [name, t] : tensors_) {
    if (accounting == Accounting::weights_only && !is_weight_matrix(name)) continue;
    total += t.dtype() == DType::u8 ? 0.25 * static_cast<double>(t.element_count())
                                    : static_cast<double>(t.element_count());
  }
  return total;
}

namespace {

json build_manifest(const WeightBundle& bundle) {
  const auto& hp = bundle.hyperparams();
  json manifest = {
      {"m", hp.m},
      {"S_o", hp.lut1d_size},
      {"S_t", hp.lut3d_size},
      {"K", hp.rank},
      {"leaky_slope", hp.leaky_slope},
      {"in_eps", hp.in_eps},
      {"backbone", "cnn5"},
  };
  json tensors = json::array();
  std::uint64_t offset = 0;
  for (const auto& spec : expected_layout(hp)) {
    const Tensor& t = bundle.tensor(spec.name);
    json entry = {{"name", spec.name}, {"offset", offset}, {"shape", t.shape()}};
    if (t.dtype() == DType::f32) {
      entry["dtype"] = "f32";
      offset += 4 * t.element_count();
    } else {
      entry["dtype"] = "u8";
      entry["scale"] = t.u8().scale;
      entry["zero_point"] = t.u8().zero_point;
      offset += t.element_count();
    }
    tensors.push_back(std::move(entry));
  }
  manifest["tensors"] = std::move(tensors);
  return manifest;
}

}  // namespace

std::string manifest_json(const WeightBundle& bundle) { return build_manifest(bundle).dump(2); }

std::vector<std::byte> encode_weight_bundle(const WeightBundle& bundle) {
  bundle.validate();
  const std::string manifest = build_manifest(bundle).dump();
  std::vector<std::byte> out;
  for (char ch : kBundleMagic) out.push_back(static_cast<std::byte>(ch));
  put_u32(out, kBundleVersion);
  put_u64(out, manifest.size());
  for (char ch : manifest) out.push_back(static_cast<std::byte>(ch));
  for (const auto& spec : expected_layout(bundle.hyperparams())) {
    const Tensor& t = bundle.tensor(spec.name);
    if (t.dtype() == DType::f32) {
      for (float v : t.f32()) put_u32(out, std::bit_cast<std::uint32_t>(v));
    } else {
      for (std::uint8_t q : t.u8().data) out.push_back(static_cast<std::byte>(q));
    }
  }
  return out;
}

WeightBundle decode_weight_bundle(std::span<const std::byte> bytes) {
  if (bytes.size() < 4) throw TruncatedDataError("container shorter than its magic");
  if (std::memcmp(bytes.data(), kBundleMagic, 4) != 0) throw BadMagicError("not a .sepw container (bad magic)");
  if (bytes.size() < 16) throw TruncatedDataError("container header truncated");
  const std::uint32_t version = get_u32(bytes.data() + 4);
  if (version != kBundleVersion)
    throw VersionMismatchError("unsupported .sepw version " + std::to_string(version));
  const std::uint64_t manifest_len = get_u64(bytes.data() + 8);
  if (manifest_len > bytes.size() - 16) throw TruncatedDataError("manifest truncated");

  const auto* manifest_begin = reinterpret_cast<const char*>(bytes.data() + 16);
  json manifest;
  try {
    manifest = json::parse(manifest_begin, manifest_begin + manifest_len);
  } catch (const json::exception& e) {
    throw FormatError(std::string("manifest is not valid JSON: ") + e.what());
  }
  const std::span<const std::byte> payload = bytes.subspan(16 + manifest_len);

  WeightBundle bundle;
  try {
    Hyperparams& hp = bundle.hp_;
    hp.m = manifest.at("m").get<int>();
    hp.lut1d_size = manifest.at("S_o").get<int>();
    hp.lut3d_size = manifest.at("S_t").get<int>();
    hp.rank = manifest.at("K").get<int>();
    hp.leaky_slope = manifest.at("leaky_slope").get<float>();
    hp.in_eps = manifest.value("in_eps", 1e-5f);
    if (manifest.value("backbone", std::string("cnn5")) != "cnn5")
      throw ModelError("unsupported backbone kind: " + manifest.at("backbone").get<std::string>());
    validate(hp);

    const auto layout = expected_layout(hp);
    for (const auto& entry : manifest.at("tensors")) {
      const auto name = entry.at("name").get<std::string>();
      const auto shape = entry.at("shape").get<std::vector<std::int64_t>>();
      const auto dtype = entry.at("dtype").get<std::string>();
      const auto offset = entry.at("offset").get<std::uint64_t>();

      auto spec = std::find_if(layout.begin(), layout.end(), [&](const TensorSpec& s) { return s.name == name; });
      if (spec == layout.end()) throw ShapeMismatchError("unexpected tensor: " + name);
      if (spec->shape != shape)
        throw ShapeMismatchError(name + ": manifest shape " + shape_string(shape) + " does not match " +
                                 shape_string(spec->shape) + " implied by (m, S_o, S_t, K)");

      const std::size_t count = product(shape);
      const std::size_t width = dtype == "f32" ? 4 : dtype == "u8" ? 1 : 0;
      if (width == 0) throw FormatError(name + ": unknown dtype " + dtype);
      if (offset > payload.size() || count * width > payload.size() - offset)
        throw TruncatedDataError(name + ": payload truncated");
      const std::byte* src = payload.data() + offset;

      if (width == 4) {
        std::vector<float> values(count);
        for (std::size_t i = 0; i < count; ++i) values[i] = std::bit_cast<float>(get_u32(src + 4 * i));
        bundle.tensors_[name] = Tensor(shape, std::move(values));
      } else {
        QuantizedTensor q;
        q.scale = entry.at("scale").get<double>();
        q.zero_point = entry.value("zero_point", 0);
        if (q.zero_point < 0 || q.zero_point > 255) throw FormatError(name + ": zero_point outside [0, 255]");
        q.data.resize(count);
        for (std::size_t i = 0; i < count; ++i) q.data[i] = static_cast<std::uint8_t>(src[i]);
        bundle.tensors_[name] = Tensor(shape, std::move(q));
      }
    }
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed manifest: ") + e.what());
  }
  bundle.validate();
  return bundle;
}

void save_weight_bundle(const WeightBundle& bundle, const std::filesystem::path& path) {
  const auto bytes = encode_weight_bundle(bundle);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed: " + path.string());
}

WeightBundle load_weight_bundle(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open weight bundle: " + path.string());
  std::vector<char> raw((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  std::vector<std::byte> bytes(raw.size());
  std::memcpy(bytes.data(), raw.data(), raw.size());
  return decode_weight_bundle(bytes);
}

}  // namespace adalut
