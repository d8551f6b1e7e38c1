// Copyright 2026 The adalut Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace adalut {

/// Hyper-parameters that fix every tensor shape of a model.
struct Hyperparams {
  int m = 8;           ///< backbone channel multiplier
  int lut1d_size = 17; ///< entries per 1D curve
  int lut3d_size = 17; ///< lattice nodes per 3D axis
  int rank = 3;        ///< bottleneck width of the 3D generator
  float leaky_slope = 0.2f;
  float in_eps = 1e-5f;

  int context_length() const noexcept { return 32 * m; }
  friend bool operator==(const Hyperparams&, const Hyperparams&) = default;
};

/// Throws InvalidSizeError / ModelError for out-of-range hyper-parameters.
void validate(const Hyperparams& hp);

enum class DType { f32, u8 };

/// Per-tensor affine uint8 storage: value = scale * (q - zero_point).
struct QuantizedTensor {
  std::vector<std::uint8_t> data;
  double scale = 0.0;
  int zero_point = 0;

  float dequantize(std::uint8_t q) const noexcept {
    return static_cast<float>(scale * (static_cast<int>(q) - zero_point));
  }
  std::vector<float> dequantize() const;

  friend bool operator==(const QuantizedTensor&, const QuantizedTensor&) = default;
};

class Tensor {
 public:
  Tensor() = default;
  Tensor(std::vector<std::int64_t> shape, std::vector<float> values);
  Tensor(std::vector<std::int64_t> shape, QuantizedTensor values);

  static Tensor zeros(std::vector<std::int64_t> shape);

  const std::vector<std::int64_t>& shape() const noexcept { return shape_; }
  DType dtype() const noexcept;
  std::size_t element_count() const noexcept;

  /// Raw float storage; throws TypeError for quantized tensors.
  std::span<const float> f32() const;
  std::span<float> f32();
  const QuantizedTensor& u8() const;

  /// Float view of the values, dequantizing if needed.
  std::vector<float> to_float() const;

  friend bool operator==(const Tensor&, const Tensor&) = default;

 private:
  std::vector<std::int64_t> shape_;
  std::variant<std::vector<float>, QuantizedTensor> storage_;
};

struct TensorSpec {
  std::string name;
  std::vector<std::int64_t> shape;
};

/// Backbone channel widths after each conv block: m, 2m, 4m, 8m, 8m.
std::vector<int> backbone_widths(int m);

/// Every tensor a model with these hyper-parameters must carry, in file order.
std::vector<TensorSpec> expected_layout(const Hyperparams& hp);

/// Which tensors a parameter count includes.
enum class Accounting {
  all_parameters,  ///< weights, biases and InstanceNorm affine terms
  weights_only,    ///< conv kernels and FC matrices only
};

struct ParameterCounts {
  std::size_t total = 0;         ///< weights + biases + InstanceNorm affine
  std::size_t weights_only = 0;  ///< conv and FC weight matrices only
  std::size_t backbone = 0;
  std::size_t generators = 0;
};

/// All learned parameters of the backbone and both LUT generators.
class WeightBundle {
 public:
  WeightBundle() = default;
  /// Zero-initialized tensors with the shapes implied by `hp`.
  explicit WeightBundle(Hyperparams hp);

  const Hyperparams& hyperparams() const noexcept { return hp_; }
  const std::map<std::string, Tensor>& tensors() const noexcept { return tensors_; }

  bool contains(const std::string& name) const { return tensors_.contains(name); }
  const Tensor& tensor(const std::string& name) const;
  Tensor& tensor(const std::string& name);
  /// Replaces a tensor; throws ShapeMismatchError if the shape differs from the layout.
  void set(const std::string& name, Tensor t);

  /// Checks that exactly the expected tensors are present with matching shapes.
  void validate() const;

  std::size_t parameter_count() const;
  ParameterCounts parameter_counts() const;
  /// f32 elements count 1, u8 elements count 1/4.
  double equivalent_parameter_count(Accounting accounting = Accounting::all_parameters) const;

  friend bool operator==(const WeightBundle&, const WeightBundle&) = default;

 private:
  friend WeightBundle decode_weight_bundle(std::span<const std::byte> bytes);

  Hyperparams hp_;
  std::map<std::string, Tensor> tensors_;
};

/// .sepw container encode/decode.
std::vector<std::byte> encode_weight_bundle(const WeightBundle& bundle);
WeightBundle decode_weight_bundle(std::span<const std::byte> bytes);

void save_weight_bundle(const WeightBundle& bundle, const std::filesystem::path& path);
WeightBundle load_weight_bundle(const std::filesystem::path& path);

/// The JSON manifest stored in the container, pretty-printed.
std::string manifest_json(const WeightBundle& bundle);

inline constexpr char kBundleMagic[4] = {'S', 'E', 'P', 'W'};
inline constexpr std::uint32_t kBundleVersion = 1;

}  // namespace adalut
