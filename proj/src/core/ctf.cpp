// Copyright 2026 The ctfrir Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "ctfrir/ctf.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "ctfrir/error.hpp"
#include "ctfrir/fft.hpp"

namespace ctfrir {
namespace {

using Index = Eigen::Index;

void RequireSameGeometry(const Spectrogram& a, const Spectrogram& b) {
  Require(a.config == b.config && a.data.rows() == b.data.rows() &&
              a.data.cols() == b.data.cols(),
          Errc::kShapeMismatch, "spectrograms differ in shape or STFT config");
}

void RequireFilterMatches(const CtfFilter& h, const Spectrogram& s) {
  Require(h.config == s.config && h.coeffs.rows() == s.data.rows(),
          Errc::kShapeMismatch, "filter and spectrogram differ in band layout");
}

double Charbonnier(double r, double eps) {
  return std::sqrt(r * r + eps * eps) - eps;
}

double CharbonnierSlope(double r, double eps) {
  return r / std::sqrt(r * r + eps * eps);
}

// One band of the smoothed reconstruction problem.
class BandObjective {
 public:
  BandObjective(const cdouble* s, const cdouble* x, std::size_t frames,
                std::size_t length, double norm, const RefineOptions& opt)
      : s_(s), x_(x), frames_(frames), length_(length), norm_(norm),
        eps_(opt.charbonnier_eps), term_(opt.magnitude_term) {}

  double Loss(const std::vector<cdouble>& h) const {
    double acc = 0.0;
    for (std::size_t t = 0; t < frames_; ++t) {
      const cdouble a = Predict(h, t);
      const cdouble b = x_[t];
      acc += FirstTerm(a, b);
      acc += Charbonnier(a.real() - b.real(), eps_);
      acc += Charbonnier(a.imag() - b.imag(), eps_);
    }
    return acc * norm_;
  }

  std::vector<cdouble> Gradient(const std::vector<cdouble>& h) const {
    std::vector<cdouble> g(length_, cdouble(0.0, 0.0));
    for (std::size_t t = 0; t < frames_; ++t) {
      const cdouble a = Predict(h, t);
      const cdouble b = x_[t];
      // dL/dRe(a) + i dL/dIm(a).
      cdouble ga(CharbonnierSlope(a.real() - b.real(), eps_),
                 CharbonnierSlope(a.imag() - b.imag(), eps_));
      if (term_ == MagnitudeTerm::kMagnitudeDifference) {
        const double mag = std::abs(a);
        if (mag > 0.0) {
          ga += CharbonnierSlope(mag - std::abs(b), eps_) * (a / mag);
        }
      } else {
        const cdouble d = a - b;
        ga += d / std::sqrt(std::norm(d) + eps_ * eps_);
      }
      const std::size_t lmax = std::min(length_ - 1, t);
      for (std::size_t l = 0; l <= lmax; ++l) {
        g[l] += ga * std::conj(s_[t - l]);
      }
    }
    for (auto& v : g) v *= norm_;
    return g;
  }

 private:
  cdouble Predict(const std::vector<cdouble>& h, std::size_t t) const {
    cdouble a(0.0, 0.0);
    const std::size_t lmax = std::min(length_ - 1, t);
    for (std::size_t l = 0; l <= lmax; ++l) a += h[l] * s_[t - l];
    return a;
  }

  double FirstTerm(cdouble a, cdouble b) const {
    if (term_ == MagnitudeTerm::kMagnitudeDifference) {
      return Charbonnier(std::abs(a) - std::abs(b), eps_);
    }
    return Charbonnier(std::abs(a - b), eps_);
  }

  const cdouble* s_;
  const cdouble* x_;
  std::size_t frames_;
  std::size_t length_;
  double norm_;
  double eps_;
  MagnitudeTerm term_;
};

std::vector<cdouble> Row(const ComplexMatrix& m, Index r) {
  std::vector<cdouble> out(static_cast<std::size_t>(m.cols()));
  for (Index c = 0; c < m.cols(); ++c) out[static_cast<std::size_t>(c)] = m(r, c);
  return out;
}

void CheckRefineInputs(const CtfFilter& h, const Spectrogram& s,
                       const Spectrogram& x) {
  RequireSameGeometry(s, x);
  RequireFilterMatches(h, s);
  Require(h.length() >= 1, Errc::kShapeMismatch, "empty filter");
}

}  // namespace

double CtfFilter::SpanSeconds() const {
  return static_cast<double>(length() * config.hop) /
         static_cast<double>(sample_rate);
}

void CtfFilter::Validate() const {
  config.Validate();
  Require(sample_rate > 0, Errc::kInvalidArgument, "sample rate");
  Require(length() >= 1, Errc::kInvalidArgument, "CTF length must be >= 1");
  Require(bands() == config.num_bands(), Errc::kShapeMismatch,
          "CTF rows must equal the band count");
  Require(coeffs.allFinite(), Errc::kNonFinite, "non-finite CTF coefficient");
}

CtfFilter CtfFilter::Zeros(const StftConfig& config, std::size_t length,
                           int sample_rate) {
  config.Validate();
  Require(length >= 1, Errc::kInvalidArgument, "CTF length must be >= 1");
  CtfFilter h;
  h.config = config;
  h.sample_rate = sample_rate;
  h.coeffs = ComplexMatrix::Zero(static_cast<Index>(config.num_bands()),
                                 static_cast<Index>(length));
  return h;
}

CtfFilter CtfFilter::Identity(const StftConfig& config, std::size_t length,
                              int sample_rate) {
  CtfFilter h = Zeros(config, length, sample_rate);
  h.coeffs.col(0).setOnes();
  return h;
}

Spectrogram CtfConvolve(const CtfFilter& filter, const Spectrogram& s) {
  RequireFilterMatches(filter, s);
  Require(filter.length() >= 1, Errc::kShapeMismatch, "empty filter");
  const Index frames = s.data.cols();
  const Index length = filter.coeffs.cols();
  Spectrogram out;
  out.config = s.config;
  out.sample_rate = s.sample_rate;
  out.data = ComplexMatrix::Zero(s.data.rows(), frames);
  for (Index f = 0; f < s.data.rows(); ++f) {
    for (Index l = 0; l < std::min(length, frames); ++l) {
      const cdouble hl = filter.coeffs(f, l);
      if (hl == cdouble(0.0, 0.0)) continue;
      for (Index t = l; t < frames; ++t) out.data(f, t) += hl * s.data(f, t - l);
    }
  }
  return out;
}

CtfFilter CtfLsFit(const Spectrogram& s, const Spectrogram& x,
                   std::size_t length, std::optional<double> ridge) {
  RequireSameGeometry(s, x);
  Require(length >= 1, Errc::kInvalidArgument, "CTF length must be >= 1");
  Require(!ridge || (*ridge >= 0.0 && std::isfinite(*ridge)),
          Errc::kInvalidArgument, "ridge must be finite and >= 0");
  const Index frames = s.data.cols();
  const Index len = static_cast<Index>(length);
  if (frames < len) Fail(Errc::kTooFewFrames, "fewer frames than CTF taps");
  Require(s.data.allFinite() && x.data.allFinite(), Errc::kNonFinite,
          "non-finite spectrogram");

  CtfFilter h = CtfFilter::Zeros(s.config, length, s.sample_rate);
  bool any_energy = false;
  Eigen::MatrixXcd gram(len, len);
  Eigen::VectorXcd rhs(len);
  for (Index f = 0; f < s.data.rows(); ++f) {
    const auto srow = s.data.row(f);
    const auto xrow = x.data.row(f);
    // gram(i, j) = sum_{t >= max(i, j)} conj(S[t - i]) S[t - j]; each
    // diagonal follows from its first entry by dropping one tail product.
    for (Index j = 0; j < len; ++j) {
      cdouble acc(0.0, 0.0);
      for (Index t = j; t < frames; ++t) acc += std::conj(srow(t)) * srow(t - j);
      gram(0, j) = acc;
    }
    for (Index i = 0; i + 1 < len; ++i) {
      for (Index j = i; j + 1 < len; ++j) {
        gram(i + 1, j + 1) =
            gram(i, j) - std::conj(srow(frames - 1 - i)) * srow(frames - 1 - j);
      }
    }
    for (Index i = 0; i < len; ++i) {
      gram(i, i) = cdouble(gram(i, i).real(), 0.0);
      for (Index j = i + 1; j < len; ++j) gram(j, i) = std::conj(gram(i, j));
    }
    const double trace = gram.diagonal().real().sum();
    if (!(trace > 0.0)) continue;  // silent band: leave zero
    any_energy = true;

    for (Index l = 0; l < len; ++l) {
      cdouble acc(0.0, 0.0);
      for (Index t = l; t < frames; ++t) acc += std::conj(srow(t - l)) * xrow(t);
      rhs(l) = acc;
    }
    const double lambda = ridge ? *ridge : 1e-10 * trace / static_cast<double>(len);
    gram.diagonal().array() += lambda;
    const Eigen::VectorXcd sol = gram.ldlt().solve(rhs);
    if (!sol.allFinite()) {
      Fail(Errc::kDegenerateInput, "singular normal equations in band " +
                                       std::to_string(f));
    }
    h.coeffs.row(f) = sol.transpose();
  }
  if (!any_energy) Fail(Errc::kDegenerateInput, "input spectrogram is all zero");
  return h;
}

double SmoothedReconstructionLoss(const CtfFilter& filter, const Spectrogram& s,
                                  const Spectrogram& x,
                                  const RefineOptions& options) {
  CheckRefineInputs(filter, s, x);
  const std::size_t frames = s.frames();
  const double norm = 1.0 / static_cast<double>(s.bands() * frames);
  double total = 0.0;
  for (Index f = 0; f < s.data.rows(); ++f) {
    const auto srow = Row(s.data, f);
    const auto xrow = Row(x.data, f);
    BandObjective obj(srow.data(), xrow.data(), frames, filter.length(), norm,
                      options);
    total += obj.Loss(Row(filter.coeffs, f));
  }
  return total;
}

ComplexMatrix SmoothedReconstructionGradient(const CtfFilter& filter,
                                             const Spectrogram& s,
                                             const Spectrogram& x,
                                             const RefineOptions& options) {
  CheckRefineInputs(filter, s, x);
  const std::size_t frames = s.frames();
  const double norm = 1.0 / static_cast<double>(s.bands() * frames);
  ComplexMatrix grad(filter.coeffs.rows(), filter.coeffs.cols());
  for (Index f = 0; f < s.data.rows(); ++f) {
    const auto srow = Row(s.data, f);
    const auto xrow = Row(x.data, f);
    BandObjective obj(srow.data(), xrow.data(), frames, filter.length(), norm,
                      options);
    const auto g = obj.Gradient(Row(filter.coeffs, f));
    for (Index l = 0; l < grad.cols(); ++l) grad(f, l) = g[static_cast<std::size_t>(l)];
  }
  return grad;
}

CtfFilter CtfL1Refine(const CtfFilter& init, const Spectrogram& s,
                      const Spectrogram& x, const RefineOptions& options) {
  CheckRefineInputs(init, s, x);
  Require(options.initial_step > 0.0 && options.charbonnier_eps > 0.0 &&
              options.max_iterations >= 0,
          Errc::kInvalidArgument, "invalid refine options");
  constexpr double kArmijo = 1e-4;
  constexpr int kMaxBacktracks = 60;

  const std::size_t frames = s.frames();
  const double norm = 1.0 / static_cast<double>(s.bands() * frames);
  CtfFilter out = init;
  for (Index f = 0; f < s.data.rows(); ++f) {
    const auto srow = Row(s.data, f);
    const auto xrow = Row(x.data, f);
    BandObjective obj(srow.data(), xrow.data(), frames, init.length(), norm,
                      options);
    std::vector<cdouble> h = Row(init.coeffs, f);
    double loss = obj.Loss(h);
    if (!std::isfinite(loss)) Fail(Errc::kNonFiniteLoss, "initial loss");

    // The step is relative to the inverse band energy, which is the natural
    // curvature scale of the normalized loss.
    double energy = 0.0;
    for (const auto& v : srow) energy += std::norm(v);
    if (!(energy > 0.0)) continue;
    double step = options.initial_step / (energy * norm);

    std::vector<cdouble> g = obj.Gradient(h);
    std::vector<cdouble> trial(h.size());
    for (int it = 0; it < options.max_iterations; ++it) {
      double g2 = 0.0;
      for (const auto& v : g) g2 += std::norm(v);
      if (!(g2 > 0.0)) break;
      bool accepted = false;
      double trial_loss = loss;
      for (int bt = 0; bt < kMaxBacktracks; ++bt) {
        for (std::size_t l = 0; l < h.size(); ++l) trial[l] = h[l] - step * g[l];
        trial_loss = obj.Loss(trial);
        if (std::isfinite(trial_loss) && trial_loss <= loss - kArmijo * step * g2) {
          accepted = true;
          break;
        }
        step *= 0.5;
      }
      if (!accepted) break;
      h.swap(trial);
      loss = trial_loss;
      g = obj.Gradient(h);
      step *= 2.0;
    }
    for (Index l = 0; l < out.coeffs.cols(); ++l) out.coeffs(f, l) = h[static_cast<std::size_t>(l)];
  }
  return out;
}

CtfFilter RirToCtf(const Rir& h, const StftConfig& config, std::size_t length,
                   const ProbeSpec& probe) {
  config.Validate();
  h.Validate();
  Require(length >= 1, Errc::kInvalidArgument, "CTF length must be >= 1");

  const std::size_t span = length * config.hop;
  std::size_t support = h.samples.size();
  while (support > 0 && h.samples[support - 1] == 0.0) --support;
  Require(support > 0, Errc::kZeroRir, "impulse response is all zero");
  std::span<const double> taps(h.samples.data(), support);
  if (support > span) {
    if (!probe.truncate_long_rir) {
      Fail(Errc::kRirTooLong, "impulse response support " +
                                  std::to_string(support) +
                                  " exceeds CTF span " + std::to_string(span));
    }
    taps = taps.first(span);
  }

  AudioSignal p;
  p.sample_rate = h.sample_rate;
  if (probe.kind == ProbeKind::kWhiteNoise) {
    Require(probe.duration_s >= 4.0, Errc::kInvalidArgument,
            "probe must last at least 4 s");
    const auto n = static_cast<std::size_t>(
        std::llround(probe.duration_s * static_cast<double>(h.sample_rate)));
    std::mt19937_64 rng(probe.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    p.samples.resize(n);
    for (auto& v : p.samples) v = gauss(rng);
  } else {
    Require(probe.sweep.sample_rate == h.sample_rate, Errc::kSampleRateMismatch,
            "sweep and impulse response sample rates differ");
    p = MeasurementExcitation(probe.sweep, length, config.hop);
  }

  std::vector<double> full = FftConvolve(taps, p.samples);
  full.resize(p.samples.size());
  const AudioSignal x{std::move(full), h.sample_rate};
  return CtfLsFit(Stft(p, config), Stft(x, config), length, probe.ridge);
}

}  // namespace ctfrir
