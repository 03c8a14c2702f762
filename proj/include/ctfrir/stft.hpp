// Copyright 2026 The ctfrir Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <Eigen/Core>
#include <complex>
#include <cstddef>
#include <vector>

#include "ctfrir/fft.hpp"
#include "ctfrir/signal.hpp"

namespace ctfrir {

// Band-major complex matrix: row = frequency band, column = frame (or lag).
using ComplexMatrix = Eigen::Matrix<std::complex<double>, Eigen::Dynamic,
                                    Eigen::Dynamic, Eigen::RowMajor>;

enum class WindowKind { kSqrtHann };

// Square-root periodic Hann analysis and synthesis windows with 50% overlap.
// Their product sums to exactly one across overlapping frames.
struct StftConfig {
  std::size_t win_len = 512;
  std::size_t hop = 256;
  WindowKind window = WindowKind::kSqrtHann;

  std::size_t num_bands() const { return win_len / 2 + 1; }
  // T = ceil(n / hop) + 1.
  std::size_t NumFrames(std::size_t num_samples) const;
  // Throws kInvalidConfig unless win_len is even, >= 4 and hop == win_len / 2.
  void Validate() const;

  bool operator==(const StftConfig&) const = default;
};

std::vector<double> SqrtHannWindow(std::size_t n);

struct Spectrogram {
  ComplexMatrix data;  // F x T
  StftConfig config;
  int sample_rate = 16000;

  std::size_t bands() const { return static_cast<std::size_t>(data.rows()); }
  std::size_t frames() const { return static_cast<std::size_t>(data.cols()); }
  void Validate() const;
};

// Framing: the signal is front-padded with |hop| zeros and back-padded to
// (T - 1) * hop + win_len samples, so every input sample sees the full
// overlap-add weight. Forward FFT unnormalized.
Spectrogram Stft(const AudioSignal& signal, const StftConfig& config = {});

// Overlap-add synthesis; output cropped to |out_len| samples aligned with the
// analysis padding. out_len may not exceed (T - 1) * hop.
AudioSignal Istft(const Spectrogram& spec, std::size_t out_len);

}  // namespace ctfrir
