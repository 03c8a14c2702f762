// Copyright 2026 The ctfrir Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "ctfrir/stft.hpp"

#include <cmath>
#include <numbers>

#include "ctfrir/error.hpp"
#include "ctfrir/fft.hpp"

namespace ctfrir {

std::size_t StftConfig::NumFrames(std::size_t num_samples) const {
  return (num_samples + hop - 1) / hop + 1;
}

void StftConfig::Validate() const {
  Require(win_len >= 4 && win_len % 2 == 0, Errc::kInvalidConfig,
          "window length must be even and >= 4");
  Require(hop * 2 == win_len, Errc::kInvalidConfig,
          "hop must be half the window length");
  Require(window == WindowKind::kSqrtHann, Errc::kInvalidConfig,
          "unsupported window");
}

std::vector<double> SqrtHannWindow(std::size_t n) {
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double hann =
        0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(i) /
                             static_cast<double>(n));
    w[i] = std::sqrt(hann);
  }
  return w;
}

void Spectrogram::Validate() const {
  config.Validate();
  Require(sample_rate > 0, Errc::kInvalidArgument, "sample rate");
  Require(bands() == config.num_bands(), Errc::kShapeMismatch,
          "spectrogram rows must equal the band count");
  Require(data.allFinite(), Errc::kNonFinite, "non-finite spectrogram");
}

Spectrogram Stft(const AudioSignal& signal, const StftConfig& config) {
  config.Validate();
  Require(!signal.empty(), Errc::kEmptySignal, "cannot transform empty signal");
  signal.Validate();

  const std::size_t n = signal.size();
  const std::size_t win = config.win_len;
  const std::size_t hop = config.hop;
  const std::size_t frames = config.NumFrames(n);
  const std::size_t bands = config.num_bands();
  const std::vector<double> window = SqrtHannWindow(win);

  Spectrogram out;
  out.config = config;
  out.sample_rate = signal.sample_rate;
  out.data.resize(static_cast<Eigen::Index>(bands),
                  static_cast<Eigen::Index>(frames));

  RealFft fft(win);
  std::vector<double> frame(win);
  std::vector<cdouble> bins(bands);
  for (std::size_t t = 0; t < frames; ++t) {
    // Frame t starts at padded index t*hop, i.e. original index t*hop - hop.
    for (std::size_t i = 0; i < win; ++i) {
      const std::ptrdiff_t src = static_cast<std::ptrdiff_t>(t * hop + i) -
                                 static_cast<std::ptrdiff_t>(hop);
      const double v = (src >= 0 && static_cast<std::size_t>(src) < n)
                           ? signal.samples[static_cast<std::size_t>(src)]
                           : 0.0;
      frame[i] = v * window[i];
    }
    fft.Forward(frame, bins);
    for (std::size_t f = 0; f < bands; ++f) {
      out.data(static_cast<Eigen::Index>(f), static_cast<Eigen::Index>(t)) =
          bins[f];
    }
  }
  return out;
}

AudioSignal Istft(const Spectrogram& spec, std::size_t out_len) {
  spec.config.Validate();
  Require(spec.bands() == spec.config.num_bands(), Errc::kShapeMismatch,
          "spectrogram rows must equal the band count");
  const std::size_t frames = spec.frames();
  const std::size_t win = spec.config.win_len;
  const std::size_t hop = spec.config.hop;
  if (frames == 0 || out_len > (frames - 1) * hop) {
    Fail(Errc::kOutLenTooLarge, "requested length exceeds reconstructable support");
  }
  const std::vector<double> window = SqrtHannWindow(win);

  AudioSignal out;
  out.sample_rate = spec.sample_rate;
  out.samples.assign(out_len, 0.0);

  RealFft fft(win);
  std::vector<cdouble> bins(spec.bands());
  std::vector<double> frame(win);
  for (std::size_t t = 0; t < frames; ++t) {
    const std::ptrdiff_t start = static_cast<std::ptrdiff_t>(t * hop) -
                                 static_cast<std::ptrdiff_t>(hop);
    if (start >= static_cast<std::ptrdiff_t>(out_len)) break;
    for (std::size_t f = 0; f < bins.size(); ++f) {
      bins[f] = spec.data(static_cast<Eigen::Index>(f),
                          static_cast<Eigen::Index>(t));
    }
    fft.Inverse(bins, frame);
    for (std::size_t i = 0; i < win; ++i) {
      const std::ptrdiff_t dst = start + static_cast<std::ptrdiff_t>(i);
      if (dst < 0) continue;
      if (dst >= static_cast<std::ptrdiff_t>(out_len)) break;
      out.samples[static_cast<std::size_t>(dst)] += frame[i] * window[i];
    }
  }
  return out;
}

}  // namespace ctfrir
