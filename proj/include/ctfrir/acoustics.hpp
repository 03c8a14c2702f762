// Copyright 2026 The ctfrir Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <optional>
#include <vector>

#include "ctfrir/signal.hpp"

namespace ctfrir {

inline constexpr double kClampDb = 80.0;

// Schroeder backward integration in dB, EDC(0) = 0. Samples after the last
// nonzero one are -inf.
std::vector<double> Edc(const Rir& h);

enum class DecayRange { kT30, kT20 };

struct Rt60Fit {
  double seconds = 0.0;
  DecayRange range = DecayRange::kT30;
};

// Line fit to the EDC between -5 and -35 dB, or -5 and -25 dB when the
// curve never reaches -35 dB.
Rt60Fit FitRt60(const Rir& h);
double Rt60(const Rir& h);

// Direct window [d - 0.5 ms, d + 2.5 ms) around direct_index; everything
// after it is late. Clamped to +-80 dB.
double Drr(const Rir& h);

// Energy in [d, d + 50 ms) over energy in [d + 50 ms, end). Clamped to
// +-80 dB.
double C50(const Rir& h);

struct AcousticParams {
  std::optional<double> rt60;  // empty when the decay range is too short
  double drr = 0.0;
  double c50 = 0.0;
};

AcousticParams ComputeParams(const Rir& h);

}  // namespace ctfrir
