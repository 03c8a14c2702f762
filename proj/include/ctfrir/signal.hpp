// Copyright 2026 The ctfrir Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace ctfrir {

// Mono time-domain signal.
struct AudioSignal {
  std::vector<double> samples;
  int sample_rate = 16000;

  std::size_t size() const { return samples.size(); }
  bool empty() const { return samples.empty(); }
  // Throws kInvalidArgument on a non-positive rate, kNonFinite on NaN/Inf.
  void Validate() const;
};

// Room impulse response. |direct_index| marks the direct-path arrival that
// anchors DRR/C50 windows and alignment.
struct Rir {
  std::vector<double> samples;
  int sample_rate = 16000;
  std::size_t direct_index = 0;

  std::size_t size() const { return samples.size(); }
  void Validate() const;

  // Direct index placed at the absolute peak.
  static Rir FromPeak(std::vector<double> samples, int sample_rate);
};

std::size_t PeakIndex(std::span<const double> x);
double Energy(std::span<const double> x);

}  // namespace ctfrir
