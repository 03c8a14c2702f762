// Copyright 2026 The ctfrir Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <cstddef>
#include <optional>
#include <span>

#include "ctfrir/signal.hpp"

namespace ctfrir {

struct AlignedPair {
  Rir est;
  Rir ref;
  std::ptrdiff_t shift = 0;  // est peak index minus ref peak index
};

// Crops both responses so their peaks share one index and scales each to a
// unit absolute peak. Both outputs have the same length.
AlignedPair AlignByDirectPeak(const Rir& est, const Rir& ref);

// RMSE over the 50 ms starting at the aligned peak.
double Rir50Rmse(const Rir& est, const Rir& ref);

struct Metrics {
  double mae = 0.0;
  double rmse = 0.0;
  std::optional<double> pearson;  // empty for n < 2 or zero variance
  std::size_t count = 0;
};

Metrics ComputeMetrics(std::span<const double> estimates,
                       std::span<const double> references);

// Throws kZeroVariance where ComputeMetrics reports an empty value.
double Pearson(std::span<const double> a, std::span<const double> b);

}  // namespace ctfrir
