// Copyright 2026 The ctfrir Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <array>
#include <cstdint>

#include "ctfrir/signal.hpp"

namespace ctfrir {

// Shoebox room. Absorption order: x = 0, x = Lx, y = 0, y = Ly, z = 0, z = Lz.
struct RoomSpec {
  std::array<double, 3> dims{5.0, 4.0, 3.0};
  std::array<double, 3> source{1.5, 1.2, 1.5};
  std::array<double, 3> mic{3.5, 2.8, 1.4};
  std::array<double, 6> absorption{0.3, 0.3, 0.3, 0.3, 0.3, 0.3};
  int max_order = -1;  // -1: unlimited within the output length
  double speed_of_sound = 343.0;
  // 100 Hz DC-blocking filter applied to the image sum.
  bool highpass = true;
  // Throws kInvalidGeometry.
  void Validate() const;
};

// Image-source sum with per-image amplitude prod(beta) / (4 pi d) and an
// 81-tap Hann-windowed sinc fractional delay, beta = sqrt(1 - alpha).
Rir SimulateIsm(const RoomSpec& room, int sample_rate, std::size_t length);

// Uniform absorption giving |rt60| by Sabine's formula. Throws
// kInvalidTarget when no coefficient <= 1 reaches it.
double SabineAbsorption(const std::array<double, 3>& dims, double rt60);

// Direct impulse at |onset| followed, 2.5 ms later, by seeded Gaussian noise
// under the envelope 10^(-3 n / (fs rt60)). The direct amplitude is set so
// that Drr() returns |drr_db|.
Rir GenPolack(double rt60, double drr_db, int sample_rate, std::size_t length,
              std::uint64_t seed, std::size_t onset = 0);

// Voiced speech-like test signal: a glottal pulse train with jittered pitch
// through two resonators, gated by a syllabic envelope.
AudioSignal GenSyntheticSpeech(double duration_s, int sample_rate,
                               std::uint64_t seed);

struct MixSpec {
  double snr_db = 20.0;
  std::uint64_t seed = 20260101;
};

struct Mixture {
  AudioSignal y;      // x + noise
  AudioSignal x;      // h * s
  AudioSignal s_dp;   // h_dp * s
  AudioSignal noise;  // scaled noise actually added
};

// Outputs have the length of |s|. Noise is read cyclically from a seeded
// offset and scaled to the requested SNR against x.
Mixture MixDataset(const AudioSignal& s, const Rir& h, const Rir& h_dp,
                   const AudioSignal& noise, const MixSpec& mix);

}  // namespace ctfrir
