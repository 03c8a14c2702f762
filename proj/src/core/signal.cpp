// Copyright 2026 The ctfrir Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "ctfrir/signal.hpp"

#include <cmath>

#include "ctfrir/error.hpp"

namespace ctfrir {
namespace {

void CheckSamples(std::span<const double> x, int sample_rate) {
  Require(sample_rate > 0, Errc::kInvalidArgument,
          "sample rate must be positive");
  for (double v : x) {
    if (!std::isfinite(v)) Fail(Errc::kNonFinite, "non-finite sample");
  }
}

}  // namespace

void AudioSignal::Validate() const { CheckSamples(samples, sample_rate); }

void Rir::Validate() const {
  CheckSamples(samples, sample_rate);
  Require(direct_index < samples.size(), Errc::kInvalidArgument,
          "direct index out of range");
}

Rir Rir::FromPeak(std::vector<double> samples, int sample_rate) {
  Rir rir;
  rir.direct_index = PeakIndex(samples);
  rir.samples = std::move(samples);
  rir.sample_rate = sample_rate;
  return rir;
}

std::size_t PeakIndex(std::span<const double> x) {
  std::size_t best = 0;
  double best_abs = -1.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    // Strict comparison keeps the earliest of equal peaks.
    if (std::abs(x[i]) > best_abs) {
      best_abs = std::abs(x[i]);
      best = i;
    }
  }
  return best;
}

double Energy(std::span<const double> x) {
  double e = 0.0;
  for (double v : x) e += v * v;
  return e;
}

}  // namespace ctfrir
