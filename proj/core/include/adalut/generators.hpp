// Copyright 2026 The adalut Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "adalut/backbone.hpp"
#include "adalut/lut.hpp"
#include "adalut/weights.hpp"

namespace adalut {

/// sigmoid(W E + b) reshaped to 3 x S_o. Entries lie in (0, 1); monotonicity
/// is not enforced (see is_monotone).
Lut1D generate_lut1d(const ContextVector& context, const WeightBundle& bundle);

/// Bottleneck coefficients w = W1 E + b1 of the 3D generator (length K).
std::vector<float> lut3d_coefficients(const ContextVector& context, const WeightBundle& bundle);

/// T = W2 (W1 E + b1) + b2 reshaped to [c][r][g][b]. No activation, so
/// entries may leave [0, 1].
Lut3D generate_lut3d(const ContextVector& context, const WeightBundle& bundle);

/// The 3D generator seen as a base LUT plus K image-independent basis LUTs.
struct BasisLuts {
  Lut3D base;
  std::vector<Lut3D> basis;

  /// base + sum_k coefficients[k] * basis[k]
  Lut3D combine(const std::vector<float>& coefficients) const;
};

BasisLuts extract_basis_luts(const WeightBundle& bundle);

/// Backbone weights zero, generators predicting identity curves and an exact
/// identity lattice for every input.
WeightBundle make_identity_bundle(const Hyperparams& hp);

/// Xavier-uniform weights for every conv and FC layer, biases zero,
/// InstanceNorm gamma=1/beta=0, and an identity-centred 3D generator bias.
/// Used for benchmarks and tests where trained weights are unavailable.
WeightBundle make_random_bundle(const Hyperparams& hp, std::uint64_t seed);

/// logit(clamp(i / (S_o - 1), 1e-4, 1 - 1e-4)) for the identity-mode 1D bias.
float identity_curve_logit(int i, int size) noexcept;

}  // namespace adalut
