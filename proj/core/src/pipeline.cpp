// Copyright 2026 The adalut Authors
// SPDX-License-Identifier: Apache-2.0

#include "adalut/pipeline.hpp"

namespace adalut {

PredictedLuts predict_luts(const ImageF& image, const WeightBundle& bundle, Exec exec) {
  ContextVector context = backbone_forward(image, bundle, exec);
  Lut1D lut1d = generate_lut1d(context, bundle);
  Lut3D lut3d = generate_lut3d(context, bundle);
  return {std::move(context), std::move(lut1d), std::move(lut3d)};
}

ImageF enhance(const ImageF& image, const WeightBundle& bundle, Interpolator interp, Exec exec) {
  const PredictedLuts luts = predict_luts(image, bundle, exec);
  return apply_cascade(luts.lut1d, luts.lut3d, image, interp, exec);
}

ImageU8 enhance_fixed(const ImageU8& image, const WeightBundle& bundle, Exec exec) {
  const PredictedLuts luts = predict_luts(to_float(image), bundle, exec);
  return apply_cascade_fixed(quantize_lut1d(luts.lut1d), quantize_lut3d(luts.lut3d), image, exec);
}

}  // namespace adalut
