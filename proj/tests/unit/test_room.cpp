// Copyright 2026 The ctfrir Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include <cfloat>
#include <cmath>
#include <numbers>

#include "ctfrir/acoustics.hpp"
#include "ctfrir/room.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace ctfrir;

namespace {

RoomSpec Anechoic() {
  RoomSpec r;
  r.dims = {10.0, 10.0, 10.0};
  r.source = {2.0, 5.0, 5.0};
  r.mic = {5.43, 5.0, 5.0};
  r.absorption.fill(1.0);
  r.highpass = false;
  return r;
}

}  // namespace

TEST_CASE("fully absorbing room yields a single arrival") {
  const Rir h = SimulateIsm(Anechoic(), 16000, 400);
  CHECK(h.direct_index == 160);
  const double amp = 1.0 / (4.0 * std::numbers::pi * 3.43);
  CHECK(h.samples[160] == doctest::Approx(amp).epsilon(1e-12));
  double rest = 0.0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (i != 160) rest = std::max(rest, std::abs(h.samples[i]));
  }
  CHECK(rest < 1e-15);

  RoomSpec hp = Anechoic();
  hp.highpass = true;
  const Rir g = SimulateIsm(hp, 16000, 400);
  CHECK(g.samples[160] == doctest::Approx(amp).epsilon(1e-12));
  CHECK(PeakIndex(g.samples) == 160);
}

TEST_CASE("order zero keeps only the direct path") {
  RoomSpec r = Anechoic();
  r.absorption.fill(0.2);
  r.mic = {5.5, 5.2, 4.9};
  r.max_order = 0;
  const Rir h = SimulateIsm(r, 16000, 2000);
  RoomSpec open = r;
  open.absorption.fill(1.0);
  open.max_order = -1;
  const Rir ref = SimulateIsm(open, 16000, 2000);
  CHECK(h.samples == ref.samples);
  CHECK(h.direct_index == ref.direct_index);

  r.max_order = 1;
  const Rir first = SimulateIsm(r, 16000, 2000);
  CHECK(Energy(first.samples) > Energy(h.samples));
}

TEST_CASE("fractional delay is a windowed sinc centred on the arrival") {
  RoomSpec r = Anechoic();
  r.mic = {5.4, 5.0, 5.0};
  const Rir h = SimulateIsm(r, 16000, 400);
  const double delay = 3.4 * 16000.0 / 343.0;
  const double amp = 1.0 / (4.0 * std::numbers::pi * 3.4);
  for (long i = 140; i < 180; ++i) {
    const double u = static_cast<double>(i) - delay;
    const double ref = amp * std::sin(std::numbers::pi * u) / (std::numbers::pi * u) *
                       0.5 * (1.0 + std::cos(2.0 * std::numbers::pi * u / 82.0));
    CHECK(h.samples[static_cast<std::size_t>(i)] == doctest::Approx(ref).epsilon(1e-10));
  }
}

TEST_CASE("image sum is symmetric under swapping source and microphone") {
  RoomSpec r;
  r.highpass = false;
  const Rir a = SimulateIsm(r, 16000, 4000);
  std::swap(r.source, r.mic);
  const Rir b = SimulateIsm(r, 16000, 4000);
  double worst = 0.0, peak = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    worst = std::max(worst, std::abs(a.samples[i] - b.samples[i]));
    peak = std::max(peak, std::abs(a.samples[i]));
  }
  CHECK(worst / peak < 1e-9);
}

TEST_CASE("Sabine absorption reaches the target RT60 roughly") {
  RoomSpec r;
  r.dims = {6.0, 5.0, 3.0};
  r.source = {1.7, 1.3, 1.6};
  r.mic = {4.1, 3.4, 1.2};
  r.absorption.fill(SabineAbsorption(r.dims, 0.5));
  const Rir h = SimulateIsm(r, 16000, 16000);
  const double rt = Rt60(h);
  CAPTURE(rt);
  CHECK(rt == doctest::Approx(0.5).epsilon(0.25));
  CHECK_ERRC(SabineAbsorption({3.0, 3.0, 2.5}, 0.01), Errc::kInvalidTarget);
}

TEST_CASE("ISM is deterministic and validates geometry") {
  RoomSpec r;
  CHECK(SimulateIsm(r, 16000, 3000).samples == SimulateIsm(r, 16000, 3000).samples);
  RoomSpec bad = r;
  bad.mic = {6.0, 1.0, 1.0};
  CHECK_ERRC(SimulateIsm(bad, 16000, 100), Errc::kInvalidGeometry);
  bad = r;
  bad.dims[2] = -1.0;
  CHECK_ERRC(SimulateIsm(bad, 16000, 100), Errc::kInvalidGeometry);
  bad = r;
  bad.absorption[3] = 0.0;
  CHECK_ERRC(SimulateIsm(bad, 16000, 100), Errc::kInvalidGeometry);
  bad = r;
  bad.source = {0.0, 1.0, 1.0};
  CHECK_ERRC(SimulateIsm(bad, 16000, 100), Errc::kInvalidGeometry);
  CHECK_ERRC(SimulateIsm(r, 16000, 10), Errc::kInvalidGeometry);
}

TEST_CASE("Polack fixtures") {
  const Rir h = GenPolack(0.6, 0.0, 16000, 16000, 42);
  CHECK(Rt60(h) == doctest::Approx(0.6).epsilon(0.05));
  CHECK(std::abs(Drr(h)) <= 0.01);
  CHECK(h.samples == GenPolack(0.6, 0.0, 16000, 16000, 42).samples);
  CHECK(h.samples != GenPolack(0.6, 0.0, 16000, 16000, 43).samples);

  const Rir g = GenPolack(0.8, 5.0, 16000, 19200, 7);
  CHECK(Rt60(g) == doctest::Approx(0.8).epsilon(0.05));
  CHECK(Drr(g) == doctest::Approx(5.0).epsilon(1e-9));

  const Rir late = GenPolack(0.4, 8.0, 16000, 9600, 1, 300);
  CHECK(late.direct_index == 300);
  CHECK(PeakIndex(late.samples) == 300);
  CHECK(Drr(late) == doctest::Approx(8.0).epsilon(1e-9));
  for (std::size_t i = 0; i < 300; ++i) REQUIRE(late.samples[i] == 0.0);
  for (std::size_t i = 301; i < 340; ++i) REQUIRE(late.samples[i] == 0.0);
}

TEST_CASE("Polack contracts") {
  CHECK_ERRC(GenPolack(0.6, 0.0, 16000, 14000, 1), Errc::kInvalidTarget);
  CHECK_ERRC(GenPolack(0.0, 0.0, 16000, 14000, 1), Errc::kInvalidTarget);
  CHECK_ERRC(GenPolack(0.6, -40.0, 16000, 16000, 1), Errc::kInvalidTarget);
}

TEST_CASE("synthetic speech is deterministic and bounded") {
  const AudioSignal s = GenSyntheticSpeech(2.0, 16000, 5);
  CHECK(s.size() == 32000);
  CHECK(s.samples == GenSyntheticSpeech(2.0, 16000, 5).samples);
  double peak = 0.0;
  for (double v : s.samples) peak = std::max(peak, std::abs(v));
  CHECK(peak == doctest::Approx(0.5));
}

TEST_CASE("mixture assembly") {
  const AudioSignal s = GenSyntheticSpeech(1.0, 16000, 1);
  const Rir h = GenPolack(0.3, 4.0, 16000, 7200, 2);
  Rir h_dp;
  h_dp.samples = {h.samples[0]};
  const AudioSignal noise = ctfrir::testing::WhiteNoise(5000, 3);

  const Mixture m = MixDataset(s, h, h_dp, noise, {20.0, 9});
  CHECK(m.y.size() == s.size());
  CHECK(m.x.size() == s.size());
  CHECK(m.s_dp.size() == s.size());
  const double snr = 10.0 * std::log10(Energy(m.x.samples) / Energy(m.noise.samples));
  CHECK(std::abs(snr - 20.0) <= 0.01);
  // One rounding in the sum and one in the difference.
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double resid = m.y.samples[i] - m.x.samples[i] - m.noise.samples[i];
    REQUIRE(std::abs(resid) <= 2.0 * DBL_EPSILON * std::abs(m.y.samples[i]) + 1e-300);
  }

  const std::vector<double> ref = ctfrir::testing::DirectConvolve(s.samples, h.samples);
  double conv_err = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    conv_err = std::max(conv_err, std::abs(m.x.samples[i] - ref[i]));
  }
  CHECK(conv_err < 1e-10);
  for (std::size_t i = 0; i < s.size(); ++i) {
    REQUIRE(m.s_dp.samples[i] == doctest::Approx(s.samples[i] * h.samples[0]).epsilon(1e-9));
  }

  const Mixture m5 = MixDataset(s, h, h_dp, noise, {5.0, 9});
  CHECK(m5.x.samples == m.x.samples);
  CHECK(m5.s_dp.samples == m.s_dp.samples);
  CHECK(MixDataset(s, h, h_dp, noise, {20.0, 9}).y.samples == m.y.samples);
}

TEST_CASE("mixture contracts") {
  const AudioSignal s = GenSyntheticSpeech(0.5, 16000, 1);
  const Rir h = GenPolack(0.3, 4.0, 16000, 7200, 2);
  AudioSignal silent;
  silent.samples.assign(100, 0.0);
  CHECK_ERRC(MixDataset(s, h, h, silent, {}), Errc::kZeroNoise);
  CHECK_ERRC(MixDataset(silent, h, h, s, {}), Errc::kZeroSpeech);
  AudioSignal other = s;
  other.sample_rate = 8000;
  CHECK_ERRC(MixDataset(s, h, h, other, {}), Errc::kSampleRateMismatch);
}
