// Copyright 2026 The adalut Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <functional>

namespace adalut {

/// Execution settings shared by the pixel kernels. Results never depend on
/// `threads`; only the partitioning of the pixel range does.
struct Exec {
  int threads = 1;
};

/// Splits [0, count) into contiguous chunks and runs `body(first, last)` on
/// up to `threads` workers. The calling thread takes the first chunk.
void parallel_for(std::size_t count, int threads,
                  const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace adalut
