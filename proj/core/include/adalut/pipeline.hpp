// Copyright 2026 The adalut Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "adalut/backbone.hpp"
#include "adalut/generators.hpp"
#include "adalut/interp.hpp"
#include "adalut/quant.hpp"

namespace adalut {

/// Image-adaptive transforms predicted for one input.
struct PredictedLuts {
  ContextVector context;
  Lut1D lut1d;
  Lut3D lut3d;
};

/// backbone -> 1D and 3D generators.
PredictedLuts predict_luts(const ImageF& image, const WeightBundle& bundle, Exec exec = {});

/// Float path: predict, then the fused 1D/3D cascade on the input.
ImageF enhance(const ImageF& image, const WeightBundle& bundle, Interpolator interp = Interpolator::trilinear,
               Exec exec = {});

/// Fixed-point path. The backbone still reads the normalized float image;
/// only the LUTs and their application are 8-bit / integer.
ImageU8 enhance_fixed(const ImageU8& image, const WeightBundle& bundle, Exec exec = {});

}  // namespace adalut
