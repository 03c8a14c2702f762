// Copyright 2026 The ctfrir Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "ctfrir/room.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "ctfrir/acoustics.hpp"
#include "ctfrir/error.hpp"
#include "ctfrir/fft.hpp"

namespace ctfrir {
namespace {

constexpr int kSincHalfWidth = 40;

struct AxisImage {
  double offset;  // image coordinate minus mic coordinate
  int low_hits;   // reflections off the wall at 0
  int high_hits;  // reflections off the wall at the far side
};

std::vector<AxisImage> AxisImages(double size, double src, double mic,
                                  double max_dist) {
  const int span = static_cast<int>(std::ceil(max_dist / (2.0 * size))) + 1;
  std::vector<AxisImage> out;
  for (int m = -span; m <= span; ++m) {
    for (int q = 0; q <= 1; ++q) {
      const double pos = (1 - 2 * q) * src + 2.0 * m * size;
      const double offset = pos - mic;
      if (std::abs(offset) > max_dist) continue;
      out.push_back({offset, std::abs(m - q), std::abs(m)});
    }
  }
  return out;
}

// DC-blocking recursion with a 100 Hz corner.
void HighPass(std::vector<double>& x, int sample_rate) {
  const double w = 2.0 * std::numbers::pi * 100.0 / sample_rate;
  const double r1 = std::exp(-w);
  const double b1 = 2.0 * r1 * std::cos(w);
  const double b2 = -r1 * r1;
  const double a1 = -(1.0 + r1);
  double y0 = 0.0, y1 = 0.0, y2 = 0.0;
  for (auto& v : x) {
    y2 = y1;
    y1 = y0;
    y0 = b1 * y1 + b2 * y2 + v;
    v = y0 + a1 * y1 + r1 * y2;
  }
}

bool Inside(const std::array<double, 3>& p, const std::array<double, 3>& dims) {
  for (int k = 0; k < 3; ++k) {
    if (!(p[k] > 0.0 && p[k] < dims[k])) return false;
  }
  return true;
}

void RequireSameRate(int a, int b, const char* what) {
  Require(a == b, Errc::kSampleRateMismatch, what);
}

}  // namespace

void RoomSpec::Validate() const {
  for (double d : dims) {
    Require(std::isfinite(d) && d > 0.0, Errc::kInvalidGeometry,
            "room dimensions must be positive");
  }
  Require(Inside(source, dims), Errc::kInvalidGeometry,
          "source must lie strictly inside the room");
  Require(Inside(mic, dims), Errc::kInvalidGeometry,
          "microphone must lie strictly inside the room");
  for (double a : absorption) {
    Require(a > 0.0 && a <= 1.0, Errc::kInvalidGeometry,
            "absorption must be in (0, 1]");
  }
  Require(max_order >= -1, Errc::kInvalidGeometry, "max_order must be >= -1");
  Require(std::isfinite(speed_of_sound) && speed_of_sound > 0.0,
          Errc::kInvalidGeometry, "speed of sound must be positive");
}

Rir SimulateIsm(const RoomSpec& room, int sample_rate, std::size_t length) {
  room.Validate();
  Require(sample_rate > 0 && length > 0, Errc::kInvalidArgument,
          "sample rate and length must be positive");
  const double fs = sample_rate;
  const double c = room.speed_of_sound;
  const double max_dist = (static_cast<double>(length) + kSincHalfWidth) * c / fs;

  std::array<double, 6> beta{};
  for (int k = 0; k < 6; ++k) beta[k] = std::sqrt(1.0 - room.absorption[k]);

  std::array<std::vector<AxisImage>, 3> axes;
  for (int k = 0; k < 3; ++k) {
    axes[k] = AxisImages(room.dims[k], room.source[k], room.mic[k], max_dist);
  }

  std::vector<double> h(length, 0.0);
  // Sign-alternating sine and a rotated cosine avoid per-tap trig calls.
  const double theta = 2.0 * std::numbers::pi / (2.0 * kSincHalfWidth + 2.0);
  const double rot_c = std::cos(theta), rot_s = std::sin(theta);
  auto add_arrival = [&](double delay, double amp) {
    const long base = static_cast<long>(std::floor(delay));
    const double frac = delay - static_cast<double>(base);
    // Reference the nearest tap so arrivals close to a sample stay accurate.
    const long near = frac < 0.5 ? 0 : 1;
    const double sin_near = -std::sin(std::numbers::pi * (frac - static_cast<double>(near)));
    double wc = std::cos(theta * (-kSincHalfWidth - frac));
    double ws = std::sin(theta * (-kSincHalfWidth - frac));
    for (long k = -kSincHalfWidth; k <= kSincHalfWidth; ++k) {
      const long i = base + k;
      const double u = static_cast<double>(k) - frac;
      if (i >= 0 && i < static_cast<long>(length)) {
        const double sign = ((k - near) % 2 == 0) ? 1.0 : -1.0;
        const double sinc = u == 0.0 ? 1.0 : sign * sin_near / (std::numbers::pi * u);
        h[static_cast<std::size_t>(i)] += amp * sinc * 0.5 * (1.0 + wc);
      }
      const double next_c = wc * rot_c - ws * rot_s;
      ws = ws * rot_c + wc * rot_s;
      wc = next_c;
    }
  };

  const double limit = static_cast<double>(length) + kSincHalfWidth;
  for (const auto& ix : axes[0]) {
    const int ox = ix.low_hits + ix.high_hits;
    const double gx = std::pow(beta[0], ix.low_hits) * std::pow(beta[1], ix.high_hits);
    for (const auto& iy : axes[1]) {
      const int oy = ox + iy.low_hits + iy.high_hits;
      if (room.max_order >= 0 && oy > room.max_order) continue;
      const double dxy2 = ix.offset * ix.offset + iy.offset * iy.offset;
      if (dxy2 > max_dist * max_dist) continue;
      const double gxy =
          gx * std::pow(beta[2], iy.low_hits) * std::pow(beta[3], iy.high_hits);
      for (const auto& iz : axes[2]) {
        const int order = oy + iz.low_hits + iz.high_hits;
        if (room.max_order >= 0 && order > room.max_order) continue;
        const double dist = std::sqrt(dxy2 + iz.offset * iz.offset);
        const double delay = dist * fs / c;
        if (delay >= limit) continue;
        const double gain =
            gxy * std::pow(beta[4], iz.low_hits) * std::pow(beta[5], iz.high_hits);
        if (gain == 0.0) continue;
        add_arrival(delay, gain / (4.0 * std::numbers::pi * dist));
      }
    }
  }
  if (room.highpass) HighPass(h, sample_rate);

  double direct = 0.0;
  for (int k = 0; k < 3; ++k) {
    direct += (room.source[k] - room.mic[k]) * (room.source[k] - room.mic[k]);
  }
  const auto direct_index =
      static_cast<std::size_t>(std::llround(std::sqrt(direct) * fs / c));
  Require(direct_index < length, Errc::kInvalidGeometry,
          "direct path arrives after the end of the response");
  Rir out;
  out.samples = std::move(h);
  out.sample_rate = sample_rate;
  out.direct_index = direct_index;
  return out;
}

double SabineAbsorption(const std::array<double, 3>& dims, double rt60) {
  for (double d : dims) {
    Require(std::isfinite(d) && d > 0.0, Errc::kInvalidGeometry,
            "room dimensions must be positive");
  }
  Require(std::isfinite(rt60) && rt60 > 0.0, Errc::kInvalidTarget,
          "RT60 must be positive");
  const double volume = dims[0] * dims[1] * dims[2];
  const double surface =
      2.0 * (dims[0] * dims[1] + dims[0] * dims[2] + dims[1] * dims[2]);
  const double alpha = 0.161 * volume / (surface * rt60);
  Require(alpha <= 1.0, Errc::kInvalidTarget,
          "RT60 too short for this room volume");
  return alpha;
}

Rir GenPolack(double rt60, double drr_db, int sample_rate, std::size_t length,
              std::uint64_t seed, std::size_t onset) {
  Require(sample_rate > 0, Errc::kInvalidArgument, "sample rate");
  Require(std::isfinite(rt60) && rt60 > 0.0, Errc::kInvalidTarget,
          "RT60 must be positive");
  Require(std::isfinite(drr_db), Errc::kInvalidTarget, "DRR must be finite");
  Require(static_cast<double>(length) >= std::ceil(1.5 * rt60 * sample_rate - 1e-6),
          Errc::kInvalidTarget, "length must cover 1.5 x RT60");
  const auto gap = static_cast<std::size_t>(std::llround(2.5e-3 * sample_rate));
  Require(onset + gap < length, Errc::kInvalidTarget,
          "no room for a tail after the onset");

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> h(length, 0.0);
  double late = 0.0, tail_peak = 0.0;
  const double decay = -3.0 / (static_cast<double>(sample_rate) * rt60);
  for (std::size_t i = onset + gap; i < length; ++i) {
    const double v =
        gauss(rng) * std::pow(10.0, decay * static_cast<double>(i - onset));
    h[i] = v;
    late += v * v;
    tail_peak = std::max(tail_peak, std::abs(v));
  }
  const double direct = std::sqrt(std::pow(10.0, drr_db / 10.0) * late);
  Require(direct > tail_peak, Errc::kInvalidTarget,
          "DRR too low for the direct impulse to remain the peak");
  h[onset] = direct;

  Rir out;
  out.samples = std::move(h);
  out.sample_rate = sample_rate;
  out.direct_index = onset;
  return out;
}

AudioSignal GenSyntheticSpeech(double duration_s, int sample_rate,
                               std::uint64_t seed) {
  Require(sample_rate > 0 && std::isfinite(duration_s) && duration_s > 0.0,
          Errc::kInvalidArgument, "duration and sample rate must be positive");
  const auto n = static_cast<std::size_t>(std::llround(duration_s * sample_rate));
  Require(n > 0, Errc::kInvalidArgument, "signal would be empty");
  const double fs = sample_rate;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);

  std::vector<double> out(n, 0.0);
  std::size_t pos = 0;
  double phase = 0.0;
  // Resonator state for two formants.
  double r1a = 0.0, r1b = 0.0, r2a = 0.0, r2b = 0.0;
  while (pos < n) {
    const auto voiced = static_cast<std::size_t>((0.15 + 0.2 * uni(rng)) * fs);
    const auto pause = static_cast<std::size_t>((0.04 + 0.1 * uni(rng)) * fs);
    const double f0_start = 90.0 + 130.0 * uni(rng);
    const double f0_end = f0_start * (0.8 + 0.4 * uni(rng));
    const double formant1 = 300.0 + 600.0 * uni(rng);
    const double formant2 = 900.0 + 1600.0 * uni(rng);
    auto coeffs = [&](double f, double bw, double& a1, double& a2) {
      const double r = std::exp(-std::numbers::pi * bw / fs);
      a1 = 2.0 * r * std::cos(2.0 * std::numbers::pi * f / fs);
      a2 = -r * r;
    };
    double c1a, c1b, c2a, c2b;
    coeffs(formant1, 80.0, c1a, c1b);
    coeffs(formant2, 120.0, c2a, c2b);
    for (std::size_t k = 0; k < voiced + pause && pos < n; ++k, ++pos) {
      double src = 0.0;
      if (k < voiced) {
        const double frac = static_cast<double>(k) / static_cast<double>(voiced);
        const double f0 = (f0_start + (f0_end - f0_start) * frac) *
                          (1.0 + 0.01 * gauss(rng));
        phase += f0 / fs;
        if (phase >= 1.0) {
          phase -= 1.0;
          src = 1.0;
        }
        src += 0.02 * gauss(rng);
        src *= std::sin(std::numbers::pi * frac);
      } else {
        src = 0.002 * gauss(rng);
      }
      const double y1 = src + c1a * r1a + c1b * r1b;
      r1b = r1a;
      r1a = y1;
      const double y2 = y1 + c2a * r2a + c2b * r2b;
      r2b = r2a;
      r2a = y2;
      out[pos] = y2;
    }
  }
  double mean = 0.0;
  for (double v : out) mean += v;
  mean /= static_cast<double>(n);
  double peak = 0.0;
  for (auto& v : out) {
    v -= mean;
    peak = std::max(peak, std::abs(v));
  }
  if (peak > 0.0) {
    for (auto& v : out) v *= 0.5 / peak;
  }
  AudioSignal s;
  s.samples = std::move(out);
  s.sample_rate = sample_rate;
  return s;
}

Mixture MixDataset(const AudioSignal& s, const Rir& h, const Rir& h_dp,
                   const AudioSignal& noise, const MixSpec& mix) {
  s.Validate();
  h.Validate();
  h_dp.Validate();
  noise.Validate();
  Require(std::isfinite(mix.snr_db), Errc::kInvalidArgument, "SNR must be finite");
  RequireSameRate(s.sample_rate, h.sample_rate, "speech and RIR sample rates differ");
  RequireSameRate(s.sample_rate, h_dp.sample_rate,
                  "speech and direct-path RIR sample rates differ");
  RequireSameRate(s.sample_rate, noise.sample_rate,
                  "speech and noise sample rates differ");
  Require(Energy(s.samples) > 0.0, Errc::kZeroSpeech, "speech is all zero");
  Require(!noise.empty() && Energy(noise.samples) > 0.0, Errc::kZeroNoise,
          "noise is all zero");
  Require(!h.samples.empty() && !h_dp.samples.empty(), Errc::kZeroRir,
          "empty impulse response");

  const std::size_t n = s.size();
  Mixture m;
  m.x.sample_rate = m.y.sample_rate = m.s_dp.sample_rate = m.noise.sample_rate =
      s.sample_rate;
  m.x.samples = FftConvolve(s.samples, h.samples);
  m.x.samples.resize(n);
  m.s_dp.samples = FftConvolve(s.samples, h_dp.samples);
  m.s_dp.samples.resize(n);
  const double ex = Energy(m.x.samples);
  Require(ex > 0.0, Errc::kZeroSpeech, "reverberant speech is all zero");

  std::mt19937_64 rng(mix.seed);
  const std::size_t offset =
      std::uniform_int_distribution<std::size_t>(0, noise.size() - 1)(rng);
  m.noise.samples.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    m.noise.samples[i] = noise.samples[(offset + i) % noise.size()];
  }
  const double en = Energy(m.noise.samples);
  Require(en > 0.0, Errc::kZeroNoise, "noise segment is all zero");
  const double gain = std::sqrt(ex / (en * std::pow(10.0, mix.snr_db / 10.0)));
  for (auto& v : m.noise.samples) v *= gain;
  m.y.samples.resize(n);
  for (std::size_t i = 0; i < n; ++i) m.y.samples[i] = m.x.samples[i] + m.noise.samples[i];
  return m;
}

}  // namespace ctfrir
