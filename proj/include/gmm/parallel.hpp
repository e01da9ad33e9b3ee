// Copyright 2026 The gmm Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>

namespace gmm {

/// Calls fn(i) for i in [0, count), handing out blocks of `chunk` indices to
/// up to `workers` threads (<= 0: hardware concurrency). fn must only write
/// state owned by its index.
void parallel_for(int count, int workers, int chunk, const std::function<void(int)>& fn);

}  // namespace gmm
