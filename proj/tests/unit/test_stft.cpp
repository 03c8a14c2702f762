// Copyright 2026 The ctfrir Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include <cmath>
#include <numbers>

#include "ctfrir/error.hpp"
#include "ctfrir/stft.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace ctfrir;
using ctfrir::testing::WhiteNoise;

namespace {

double MaxAbs(const std::vector<double>& x) {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  return m;
}

double RoundTripError(const AudioSignal& x, const StftConfig& cfg = {}) {
  const AudioSignal y = Istft(Stft(x, cfg), x.size());
  double err = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    err = std::max(err, std::abs(y.samples[i] - x.samples[i]));
  }
  return err / MaxAbs(x.samples);
}

}  // namespace

TEST_CASE("frame count follows the padding convention") {
  const Spectrogram s = Stft(WhiteNoise(64000, 1));
  CHECK(s.bands() == 257);
  CHECK(s.frames() == 251);
  StftConfig cfg;
  CHECK(cfg.NumFrames(1) == 2);
  CHECK(cfg.NumFrames(256) == 2);
  CHECK(cfg.NumFrames(257) == 3);
}

TEST_CASE("zero input gives a zero spectrogram and back") {
  AudioSignal z;
  z.samples.assign(3000, 0.0);
  const Spectrogram s = Stft(z);
  CHECK(s.data.cwiseAbs().maxCoeff() == 0.0);
  CHECK(MaxAbs(Istft(s, 3000).samples) == 0.0);
}

TEST_CASE("white noise round trip") {
  CHECK(RoundTripError(WhiteNoise(10000, 7)) <= 1e-10);
}

TEST_CASE("round trip covers edges and short inputs") {
  for (std::size_t n : {1u, 7u, 255u, 256u, 257u, 511u, 512u, 513u, 4097u}) {
    CAPTURE(n);
    CHECK(RoundTripError(WhiteNoise(n, n)) <= 1e-10);
  }
  StftConfig small{8, 4};
  CHECK(RoundTripError(WhiteNoise(101, 3), small) <= 1e-12);
}

TEST_CASE("frames match a direct DFT of the padded windowed signal") {
  const StftConfig cfg{16, 8};
  const AudioSignal x = WhiteNoise(40, 11);
  const Spectrogram s = Stft(x, cfg);
  const std::vector<double> w = SqrtHannWindow(16);
  double worst = 0.0;
  for (std::size_t t = 0; t < s.frames(); ++t) {
    for (std::size_t k = 0; k < s.bands(); ++k) {
      std::complex<double> acc(0.0, 0.0);
      for (std::size_t i = 0; i < 16; ++i) {
        const long src = static_cast<long>(t * 8 + i) - 8;
        if (src < 0 || src >= 40) continue;
        const double ang = -2.0 * std::numbers::pi * static_cast<double>(k * i) / 16.0;
        acc += x.samples[static_cast<std::size_t>(src)] * w[i] *
               std::polar(1.0, ang);
      }
      worst = std::max(worst, std::abs(acc - s.data(static_cast<long>(k),
                                                     static_cast<long>(t))));
    }
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("window squares sum to one across the overlap") {
  const std::vector<double> w = SqrtHannWindow(512);
  double worst = 0.0;
  for (std::size_t i = 0; i < 256; ++i) {
    worst = std::max(worst, std::abs(w[i] * w[i] + w[i + 256] * w[i + 256] - 1.0));
  }
  CHECK(worst < 1e-15);
  CHECK(w[0] == 0.0);
}

TEST_CASE("linearity") {
  const AudioSignal x = WhiteNoise(5000, 1);
  const AudioSignal y = WhiteNoise(5000, 2);
  AudioSignal z = x;
  for (std::size_t i = 0; i < z.size(); ++i) {
    z.samples[i] = 2.5 * x.samples[i] - 0.75 * y.samples[i];
  }
  const ComplexMatrix expect = 2.5 * Stft(x).data - 0.75 * Stft(y).data;
  CHECK(ctfrir::testing::RelErr(Stft(z).data, expect) < 1e-13);
}

TEST_CASE("Parseval with the one-sided spectrum weighting") {
  const AudioSignal x = WhiteNoise(20000, 5);
  const Spectrogram s = Stft(x);
  const double n = 512.0;
  double spec_energy = 0.0;
  for (long t = 0; t < s.data.cols(); ++t) {
    for (long k = 0; k < s.data.rows(); ++k) {
      const double weight = (k == 0 || k == 256) ? 1.0 : 2.0;
      spec_energy += weight * std::norm(s.data(k, t));
    }
  }
  spec_energy /= n;
  const double sig_energy = Energy(x.samples);
  CHECK(std::abs(spec_energy - sig_energy) / sig_energy < 1e-8);
}

TEST_CASE("single frame synthesis stays within its window span") {
  Spectrogram s;
  s.data = ComplexMatrix::Zero(257, 10);
  // Alternating signs put the frame's impulse at the window centre.
  for (long k = 0; k < 257; ++k) s.data(k, 4) = k % 2 ? -1.0 : 1.0;
  const AudioSignal y = Istft(s, 9 * 256);
  // Frame 4 covers original samples [3 * 256, 3 * 256 + 512).
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (i < 768 || i >= 1280) CHECK(y.samples[i] == 0.0);
  }
  CHECK(MaxAbs(y.samples) > 0.0);
}

TEST_CASE("error contracts") {
  CHECK_ERRC(Stft(AudioSignal{}), Errc::kEmptySignal);
  CHECK_ERRC(Stft(WhiteNoise(100, 1), StftConfig{512, 128}), Errc::kInvalidConfig);
  CHECK_ERRC(Stft(WhiteNoise(100, 1), StftConfig{7, 3}), Errc::kInvalidConfig);
  const Spectrogram s = Stft(WhiteNoise(1000, 1));
  CHECK_ERRC(Istft(s, (s.frames() - 1) * 256 + 1), Errc::kOutLenTooLarge);
  CHECK_NOTHROW(Istft(s, (s.frames() - 1) * 256));
  Spectrogram bad = s;
  bad.data = ComplexMatrix::Zero(100, 5);
  CHECK_ERRC(Istft(bad, 10), Errc::kShapeMismatch);
}
