// Copyright 2026 The adalut Authors
// SPDX-License-Identifier: Apache-2.0

#include "adalut/generators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "adalut/errors.hpp"

namespace adalut {

namespace {

void check_context(const ContextVector& context, const WeightBundle& bundle) {
  if (context.size() != static_cast<std::size_t>(bundle.hyperparams().context_length()))
    throw ShapeMismatchError("context vector length " + std::to_string(context.size()) + " != 32m = " +
                             std::to_string(bundle.hyperparams().context_length()));
}

/// y = W x + b with W row-major (rows, cols), accumulated in double.
std::vector<double> affine(const std::vector<float>& w, const std::vector<float>& b, std::span<const float> x) {
  const std::size_t rows = b.size();
  const std::size_t cols = x.size();
  if (w.size() != rows * cols) throw ShapeMismatchError("FC weight size does not match its input and bias");
  std::vector<double> y(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    double acc = 0.0;
    const float* row = w.data() + r * cols;
    for (std::size_t c = 0; c < cols; ++c) acc += static_cast<double>(row[c]) * x[c];
    y[r] = acc + b[r];
  }
  return y;
}

void fill_uniform(Tensor& t, float bound, std::mt19937_64& rng) {
  std::uniform_real_distribution<float> dist(-bound, bound);
  for (float& v : t.f32()) v = dist(rng);
}

}  // namespace

float identity_curve_logit(int i, int size) noexcept {
  const double p = std::clamp(static_cast<double>(i) / (size - 1), 1e-4, 1.0 - 1e-4);
  return static_cast<float>(std::log(p / (1.0 - p)));
}

Lut1D generate_lut1d(const ContextVector& context, const WeightBundle& bundle) {
  check_context(context, bundle);
  const int size = bundle.hyperparams().lut1d_size;
  const auto logits =
      affine(bundle.tensor("gen1d.fc.weight").to_float(), bundle.tensor("gen1d.fc.bias").to_float(), context.values);
  std::vector<float> values(logits.size());
  // Saturated logits would round to exactly 0 or 1 in float.
  constexpr float lo = std::numeric_limits<float>::denorm_min();
  const float hi = std::nextafter(1.0f, 0.0f);
  for (std::size_t i = 0; i < logits.size(); ++i)
    values[i] = std::clamp(static_cast<float>(1.0 / (1.0 + std::exp(-logits[i]))), lo, hi);
  return Lut1D(size, std::move(values));
}

std::vector<float> lut3d_coefficients(const ContextVector& context, const WeightBundle& bundle) {
  check_context(context, bundle);
  const auto w =
      affine(bundle.tensor("gen3d.fc1.weight").to_float(), bundle.tensor("gen3d.fc1.bias").to_float(), context.values);
  return {w.begin(), w.end()};
}

Lut3D BasisLuts::combine(const std::vector<float>& coefficients) const {
  if (coefficients.size() != basis.size()) throw ShapeMismatchError("coefficient count != basis LUT count");
  Lut3D out(base.size());
  auto dst = out.values();
  const auto b = base.values();
  for (std::size_t j = 0; j < dst.size(); ++j) {
    double acc = 0.0;
    for (std::size_t k = 0; k < basis.size(); ++k) acc += static_cast<double>(basis[k].values()[j]) * coefficients[k];
    dst[j] = static_cast<float>(acc + b[j]);
  }
  return out;
}

Lut3D generate_lut3d(const ContextVector& context, const WeightBundle& bundle) {
  const auto w = lut3d_coefficients(context, bundle);
  const auto out = affine(bundle.tensor("gen3d.fc2.weight").to_float(), bundle.tensor("gen3d.fc2.bias").to_float(), w);
  std::vector<float> values(out.begin(), out.end());
  return Lut3D(bundle.hyperparams().lut3d_size, std::move(values));
}

BasisLuts extract_basis_luts(const WeightBundle& bundle) {
  const Hyperparams& hp = bundle.hyperparams();
  const auto w2 = bundle.tensor("gen3d.fc2.weight").to_float();
  const auto b2 = bundle.tensor("gen3d.fc2.bias").to_float();
  const std::size_t k_count = static_cast<std::size_t>(hp.rank);
  if (w2.size() != b2.size() * k_count) throw ShapeMismatchError("gen3d.fc2 weight does not match its bias and K");

  BasisLuts luts{Lut3D(hp.lut3d_size, b2), {}};
  for (std::size_t k = 0; k < k_count; ++k) {
    std::vector<float> column(b2.size());
    for (std::size_t j = 0; j < b2.size(); ++j) column[j] = w2[j * k_count + k];
    luts.basis.emplace_back(hp.lut3d_size, std::move(column));
  }
  return luts;
}

WeightBundle make_identity_bundle(const Hyperparams& hp) {
  WeightBundle bundle(hp);
  for (int i = 1; i <= 4; ++i) {
    auto gamma = bundle.tensor("backbone.in" + std::to_string(i) + ".gamma").f32();
    std::fill(gamma.begin(), gamma.end(), 1.0f);
  }
  auto b1d = bundle.tensor("gen1d.fc.bias").f32();
  for (int c = 0; c < kChannels; ++c)
    for (int i = 0; i < hp.lut1d_size; ++i) b1d[c * hp.lut1d_size + i] = identity_curve_logit(i, hp.lut1d_size);
  const Lut3D ident = identity_lut3d(hp.lut3d_size);
  auto b3d = bundle.tensor("gen3d.fc2.bias").f32();
  std::copy(ident.values().begin(), ident.values().end(), b3d.begin());
  return bundle;
}

WeightBundle make_random_bundle(const Hyperparams& hp, std::uint64_t seed) {
  WeightBundle bundle = make_identity_bundle(hp);
  std::mt19937_64 rng(seed);
  for (const auto& spec : expected_layout(hp)) {
    if (!spec.name.ends_with(".weight")) continue;
    Tensor& t = bundle.tensor(spec.name);
    std::int64_t fan_in = spec.shape[1];
    std::int64_t fan_out = spec.shape[0];
    if (spec.shape.size() == 4) {
      fan_in *= 9;
      fan_out *= 9;
    }
    fill_uniform(t, static_cast<float>(std::sqrt(6.0 / static_cast<double>(fan_in + fan_out))), rng);
  }
  return bundle;
}

}  // namespace adalut
