// Copyright 2026 The ctfrir Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "ctfrir.h"

#include <algorithm>
#include <exception>
#include <new>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ctfrir/acoustics.hpp"
#include "ctfrir/ctf.hpp"
#include "ctfrir/error.hpp"
#include "ctfrir/eval.hpp"
#include "ctfrir/io.hpp"
#include "ctfrir/loss.hpp"
#include "ctfrir/measure.hpp"
#include "ctfrir/room.hpp"
#include "ctfrir/stft.hpp"
#include "ctfrir/sweep.hpp"

struct ctfrir_signal {
  ctfrir::Rir rir;
};

struct ctfrir_spectrogram {
  ctfrir::Spectrogram spec;
};

struct ctfrir_ctf {
  ctfrir::CtfFilter filter;
};

namespace {

using ctfrir::Errc;

static_assert(static_cast<int>(Errc::kInvalidArgument) == CTFRIR_E_INVALID_ARGUMENT);
static_assert(static_cast<int>(Errc::kPeakNotFound) == CTFRIR_E_PEAK_NOT_FOUND);
static_assert(static_cast<int>(Errc::kZeroRir) == CTFRIR_E_ZERO_RIR);
static_assert(static_cast<int>(Errc::kSampleRateMismatch) ==
              CTFRIR_E_SAMPLE_RATE_MISMATCH);

thread_local std::string last_error;

template <class Fn>
ctfrir_status Guard(Fn&& fn) {
  try {
    fn();
    last_error.clear();
    return CTFRIR_OK;
  } catch (const ctfrir::Error& e) {
    last_error = e.what();
    return static_cast<ctfrir_status>(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return CTFRIR_E_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return CTFRIR_E_INTERNAL;
  } catch (...) {
    last_error = "unknown exception";
    return CTFRIR_E_INTERNAL;
  }
}

template <class... Ptrs>
void NotNull(const Ptrs*... ptrs) {
  if (((ptrs == nullptr) || ...)) {
    ctfrir::Fail(Errc::kInvalidArgument, "null pointer argument");
  }
}

ctfrir::AudioSignal AsAudio(const ctfrir_signal* s) {
  return ctfrir::AudioSignal{s->rir.samples, s->rir.sample_rate};
}

ctfrir_signal* Wrap(ctfrir::Rir rir) { return new ctfrir_signal{std::move(rir)}; }

ctfrir_signal* Wrap(ctfrir::AudioSignal s) {
  return Wrap(ctfrir::Rir::FromPeak(std::move(s.samples), s.sample_rate));
}

ctfrir::StftConfig ToConfig(const ctfrir_stft_config* c) {
  ctfrir::StftConfig out;
  if (c) {
    out.win_len = c->win_len;
    out.hop = c->hop;
  }
  return out;
}

ctfrir::SweepSpec ToSweep(const ctfrir_sweep_spec* c) {
  ctfrir::SweepSpec out;
  if (c) {
    out.f1 = c->f1;
    out.f2 = c->f2;
    out.duration_s = c->duration_s;
    out.fade_in = c->fade_in;
    out.fade_out = c->fade_out;
    out.sample_rate = c->sample_rate;
  }
  return out;
}

ctfrir::MagnitudeTerm ToTerm(ctfrir_magnitude_term t) {
  return t == CTFRIR_COMPLEX_DIFFERENCE ? ctfrir::MagnitudeTerm::kComplexDifference
                                        : ctfrir::MagnitudeTerm::kMagnitudeDifference;
}

ctfrir::RefineOptions ToRefine(const ctfrir_refine_options* c) {
  ctfrir::RefineOptions out;
  if (c) {
    out.initial_step = c->initial_step;
    out.max_iterations = c->max_iterations;
    out.charbonnier_eps = c->charbonnier_eps;
    out.magnitude_term = ToTerm(c->magnitude_term);
  }
  return out;
}

ctfrir_sweep_spec FromSweep(const ctfrir::SweepSpec& s) {
  return {s.f1, s.f2, s.duration_s, s.fade_in, s.fade_out, s.sample_rate};
}

void CopyMatrix(const ctfrir::ComplexMatrix& m, double* re_im, size_t capacity) {
  NotNull(re_im);
  const auto count = static_cast<size_t>(m.size());
  if (capacity < 2 * count) {
    ctfrir::Fail(Errc::kShapeMismatch, "output buffer too small");
  }
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      const size_t k = static_cast<size_t>(r * m.cols() + c);
      re_im[2 * k] = m(r, c).real();
      re_im[2 * k + 1] = m(r, c).imag();
    }
  }
}

}  // namespace

extern "C" {

const char* ctfrir_version(void) { return "0.1.0"; }

const char* ctfrir_last_error(void) { return last_error.c_str(); }

const char* ctfrir_status_name(ctfrir_status status) {
  if (status == CTFRIR_OK) return "Ok";
  if (status == CTFRIR_E_INTERNAL) return "Internal";
  return ctfrir::ErrcName(static_cast<Errc>(status));
}

ctfrir_stft_config ctfrir_stft_config_default(void) {
  const ctfrir::StftConfig c;
  return {c.win_len, c.hop};
}

ctfrir_sweep_spec ctfrir_sweep_spec_default(void) {
  return FromSweep(ctfrir::SweepSpec{});
}

ctfrir_probe_spec ctfrir_probe_spec_default(void) {
  const ctfrir::ProbeSpec p;
  return {CTFRIR_PROBE_WHITE_NOISE, p.duration_s, p.seed, FromSweep(p.sweep), -1.0,
          0};
}

ctfrir_refine_options ctfrir_refine_options_default(void) {
  const ctfrir::RefineOptions o;
  return {o.initial_step, o.max_iterations, o.charbonnier_eps,
          CTFRIR_MAGNITUDE_DIFFERENCE};
}

ctfrir_room_spec ctfrir_room_spec_default(void) {
  const ctfrir::RoomSpec r;
  ctfrir_room_spec out{};
  for (int k = 0; k < 3; ++k) {
    out.dims[k] = r.dims[k];
    out.source[k] = r.source[k];
    out.mic[k] = r.mic[k];
  }
  for (int k = 0; k < 6; ++k) out.absorption[k] = r.absorption[k];
  out.max_order = r.max_order;
  out.speed_of_sound = r.speed_of_sound;
  out.highpass = r.highpass ? 1 : 0;
  return out;
}

ctfrir_status ctfrir_signal_create(const double* samples, size_t n,
                                   int sample_rate, ctfrir_signal** out) {
  return Guard([&] {
    NotNull(out);
    if (n > 0) NotNull(samples);
    ctfrir::AudioSignal s{std::vector<double>(samples, samples + n), sample_rate};
    s.Validate();
    *out = Wrap(std::move(s));
  });
}

void ctfrir_signal_destroy(ctfrir_signal* signal) { delete signal; }

size_t ctfrir_signal_length(const ctfrir_signal* signal) {
  return signal ? signal->rir.size() : 0;
}

int ctfrir_signal_sample_rate(const ctfrir_signal* signal) {
  return signal ? signal->rir.sample_rate : 0;
}

const double* ctfrir_signal_data(const ctfrir_signal* signal) {
  return signal ? signal->rir.samples.data() : nullptr;
}

size_t ctfrir_signal_direct_index(const ctfrir_signal* signal) {
  return signal ? signal->rir.direct_index : 0;
}

ctfrir_status ctfrir_signal_set_direct_index(ctfrir_signal* signal, size_t index) {
  return Guard([&] {
    NotNull(signal);
    ctfrir::Require(index < signal->rir.size(), Errc::kInvalidArgument,
                    "direct index out of range");
    signal->rir.direct_index = index;
  });
}

ctfrir_status ctfrir_wav_read(const char* path, ctfrir_signal** out) {
  return Guard([&] {
    NotNull(path, out);
    *out = Wrap(ctfrir::ReadWav(path));
  });
}

ctfrir_status ctfrir_wav_write(const ctfrir_signal* signal, const char* path) {
  return Guard([&] {
    NotNull(signal, path);
    ctfrir::WriteWav(path, AsAudio(signal));
  });
}

ctfrir_status ctfrir_write_file_atomic(const char* path, const char* data,
                                       size_t size) {
  return Guard([&] {
    NotNull(path);
    if (size > 0) NotNull(data);
    ctfrir::WriteFileAtomic(path, size ? std::string_view(data, size) : std::string_view());
  });
}

ctfrir_status ctfrir_stft(const ctfrir_signal* signal,
                          const ctfrir_stft_config* config,
                          ctfrir_spectrogram** out) {
  return Guard([&] {
    NotNull(signal, out);
    *out = new ctfrir_spectrogram{ctfrir::Stft(AsAudio(signal), ToConfig(config))};
  });
}

ctfrir_status ctfrir_istft(const ctfrir_spectrogram* spec, size_t out_len,
                           ctfrir_signal** out) {
  return Guard([&] {
    NotNull(spec, out);
    *out = Wrap(ctfrir::Istft(spec->spec, out_len));
  });
}

void ctfrir_spectrogram_destroy(ctfrir_spectrogram* spec) { delete spec; }

size_t ctfrir_spectrogram_bands(const ctfrir_spectrogram* spec) {
  return spec ? spec->spec.bands() : 0;
}

size_t ctfrir_spectrogram_frames(const ctfrir_spectrogram* spec) {
  return spec ? spec->spec.frames() : 0;
}

ctfrir_status ctfrir_spectrogram_copy(const ctfrir_spectrogram* spec,
                                      double* re_im, size_t capacity) {
  return Guard([&] {
    NotNull(spec);
    CopyMatrix(spec->spec.data, re_im, capacity);
  });
}

ctfrir_status ctfrir_ctf_create(const double* re_im, size_t bands, size_t length,
                                const ctfrir_stft_config* config,
                                int sample_rate, ctfrir_ctf** out) {
  return Guard([&] {
    NotNull(re_im, out);
    ctfrir::CtfFilter h;
    h.config = ToConfig(config);
    h.sample_rate = sample_rate;
    h.coeffs.resize(static_cast<Eigen::Index>(bands), static_cast<Eigen::Index>(length));
    for (size_t k = 0; k < bands * length; ++k) {
      h.coeffs(static_cast<Eigen::Index>(k / length), static_cast<Eigen::Index>(k % length)) =
          ctfrir::cdouble(re_im[2 * k], re_im[2 * k + 1]);
    }
    h.Validate();
    *out = new ctfrir_ctf{std::move(h)};
  });
}

void ctfrir_ctf_destroy(ctfrir_ctf* ctf) { delete ctf; }

size_t ctfrir_ctf_bands(const ctfrir_ctf* ctf) { return ctf ? ctf->filter.bands() : 0; }

size_t ctfrir_ctf_length(const ctfrir_ctf* ctf) { return ctf ? ctf->filter.length() : 0; }

int ctfrir_ctf_sample_rate(const ctfrir_ctf* ctf) {
  return ctf ? ctf->filter.sample_rate : 0;
}

ctfrir_stft_config ctfrir_ctf_config(const ctfrir_ctf* ctf) {
  if (!ctf) return ctfrir_stft_config_default();
  return {ctf->filter.config.win_len, ctf->filter.config.hop};
}

ctfrir_status ctfrir_ctf_copy(const ctfrir_ctf* ctf, double* re_im, size_t capacity) {
  return Guard([&] {
    NotNull(ctf);
    CopyMatrix(ctf->filter.coeffs, re_im, capacity);
  });
}

ctfrir_status ctfrir_ctf_read(const char* path, ctfrir_ctf** out) {
  return Guard([&] {
    NotNull(path, out);
    *out = new ctfrir_ctf{ctfrir::ReadCtf(path)};
  });
}

ctfrir_status ctfrir_ctf_write(const ctfrir_ctf* ctf, const char* path) {
  return Guard([&] {
    NotNull(ctf, path);
    ctfrir::WriteCtf(path, ctf->filter);
  });
}

ctfrir_status ctfrir_ctf_convolve(const ctfrir_ctf* ctf, const ctfrir_spectrogram* s,
                                  ctfrir_spectrogram** out) {
  return Guard([&] {
    NotNull(ctf, s, out);
    *out = new ctfrir_spectrogram{ctfrir::CtfConvolve(ctf->filter, s->spec)};
  });
}

ctfrir_status ctfrir_ctf_ls_fit(const ctfrir_spectrogram* s,
                                const ctfrir_spectrogram* x, size_t length,
                                double ridge, ctfrir_ctf** out) {
  return Guard([&] {
    NotNull(s, x, out);
    std::optional<double> r;
    if (ridge >= 0.0) r = ridge;
    *out = new ctfrir_ctf{ctfrir::CtfLsFit(s->spec, x->spec, length, r)};
  });
}

ctfrir_status ctfrir_ctf_l1_refine(const ctfrir_ctf* init, const ctfrir_spectrogram* s,
                                   const ctfrir_spectrogram* x,
                                   const ctfrir_refine_options* options,
                                   ctfrir_ctf** out) {
  return Guard([&] {
    NotNull(init, s, x, out);
    *out = new ctfrir_ctf{
        ctfrir::CtfL1Refine(init->filter, s->spec, x->spec, ToRefine(options))};
  });
}

ctfrir_status ctfrir_smoothed_loss(const ctfrir_ctf* ctf, const ctfrir_spectrogram* s,
                                   const ctfrir_spectrogram* x,
                                   const ctfrir_refine_options* options,
                                   double* out) {
  return Guard([&] {
    NotNull(ctf, s, x, out);
    *out = ctfrir::SmoothedReconstructionLoss(ctf->filter, s->spec, x->spec,
                                              ToRefine(options));
  });
}

ctfrir_status ctfrir_rir_to_ctf(const ctfrir_signal* rir,
                                const ctfrir_stft_config* config, size_t length,
                                const ctfrir_probe_spec* probe, ctfrir_ctf** out) {
  return Guard([&] {
    NotNull(rir, out);
    ctfrir::ProbeSpec p;
    if (probe) {
      p.kind = probe->kind == CTFRIR_PROBE_LOG_SWEEP ? ctfrir::ProbeKind::kLogSweep
                                                     : ctfrir::ProbeKind::kWhiteNoise;
      p.duration_s = probe->duration_s;
      p.seed = probe->seed;
      p.sweep = ToSweep(&probe->sweep);
      if (probe->ridge >= 0.0) p.ridge = probe->ridge;
      p.truncate_long_rir = probe->truncate_long_rir != 0;
    }
    *out = new ctfrir_ctf{ctfrir::RirToCtf(rir->rir, ToConfig(config), length, p)};
  });
}

ctfrir_status ctfrir_loss_ri_mag(const ctfrir_spectrogram* a,
                                 const ctfrir_spectrogram* b,
                                 ctfrir_magnitude_term term, double* out) {
  return Guard([&] {
    NotNull(a, b, out);
    *out = ctfrir::LossRiMag(a->spec, b->spec, ToTerm(term));
  });
}

ctfrir_status ctfrir_loss_composite(const ctfrir_ctf* h, const ctfrir_spectrogram* s,
                                    const ctfrir_spectrogram* x,
                                    const ctfrir_spectrogram* x_hat,
                                    const ctfrir_spectrogram* s_hat,
                                    double lambda_rvb, double lambda_cln,
                                    ctfrir_magnitude_term term,
                                    ctfrir_composite_loss* out) {
  return Guard([&] {
    NotNull(h, s, x, x_hat, s_hat, out);
    const ctfrir::CompositeLoss c =
        ctfrir::LossComposite(h->filter, s->spec, x->spec, x_hat->spec, s_hat->spec,
                              {lambda_rvb, lambda_cln}, ToTerm(term));
    *out = {c.total, c.rec, c.rvb, c.cln};
  });
}

ctfrir_status ctfrir_gen_log_sweep(const ctfrir_sweep_spec* spec, ctfrir_signal** out) {
  return Guard([&] {
    NotNull(out);
    *out = Wrap(ctfrir::GenLogSweep(ToSweep(spec)));
  });
}

ctfrir_status ctfrir_gen_inverse_filter(const ctfrir_signal* sweep,
                                        const ctfrir_sweep_spec* spec, double eps,
                                        ctfrir_signal** out, size_t* zero_lag) {
  return Guard([&] {
    NotNull(sweep, out);
    ctfrir::InverseFilter inv = ctfrir::GenInverseFilter(AsAudio(sweep), ToSweep(spec), eps);
    ctfrir::Rir r;
    r.samples = std::move(inv.filter.samples);
    r.sample_rate = inv.filter.sample_rate;
    r.direct_index = ctfrir::PeakIndex(r.samples);
    if (zero_lag) *zero_lag = inv.zero_lag;
    *out = Wrap(std::move(r));
  });
}

ctfrir_status ctfrir_ctf_to_rir(const ctfrir_ctf* ctf, const ctfrir_sweep_spec* spec,
                                ctfrir_signal** out) {
  return Guard([&] {
    NotNull(ctf, out);
    *out = Wrap(ctfrir::CtfToRir(ctf->filter, ToSweep(spec)));
  });
}

ctfrir_status ctfrir_acoustic_params_compute(const ctfrir_signal* rir,
                                             ctfrir_acoustic_params* out) {
  return Guard([&] {
    NotNull(rir, out);
    const ctfrir::AcousticParams p = ctfrir::ComputeParams(rir->rir);
    *out = {p.rt60.has_value() ? 1 : 0, p.rt60.value_or(0.0), p.drr, p.c50};
  });
}

ctfrir_status ctfrir_rt60(const ctfrir_signal* rir, double* out) {
  return Guard([&] {
    NotNull(rir, out);
    *out = ctfrir::Rt60(rir->rir);
  });
}

ctfrir_status ctfrir_drr(const ctfrir_signal* rir, double* out) {
  return Guard([&] {
    NotNull(rir, out);
    *out = ctfrir::Drr(rir->rir);
  });
}

ctfrir_status ctfrir_c50(const ctfrir_signal* rir, double* out) {
  return Guard([&] {
    NotNull(rir, out);
    *out = ctfrir::C50(rir->rir);
  });
}

ctfrir_status ctfrir_edc(const ctfrir_signal* rir, double* out, size_t capacity) {
  return Guard([&] {
    NotNull(rir, out);
    const std::vector<double> edc = ctfrir::Edc(rir->rir);
    ctfrir::Require(capacity >= edc.size(), Errc::kShapeMismatch,
                    "output buffer too small");
    std::copy(edc.begin(), edc.end(), out);
  });
}

ctfrir_status ctfrir_simulate_ism(const ctfrir_room_spec* room, int sample_rate,
                                  size_t length, ctfrir_signal** out) {
  return Guard([&] {
    NotNull(room, out);
    ctfrir::RoomSpec r;
    for (int k = 0; k < 3; ++k) {
      r.dims[k] = room->dims[k];
      r.source[k] = room->source[k];
      r.mic[k] = room->mic[k];
    }
    for (int k = 0; k < 6; ++k) r.absorption[k] = room->absorption[k];
    r.max_order = room->max_order;
    r.speed_of_sound = room->speed_of_sound;
    r.highpass = room->highpass != 0;
    *out = Wrap(ctfrir::SimulateIsm(r, sample_rate, length));
  });
}

ctfrir_status ctfrir_sabine_absorption(const double dims[3], double rt60, double* out) {
  return Guard([&] {
    NotNull(dims, out);
    *out = ctfrir::SabineAbsorption({dims[0], dims[1], dims[2]}, rt60);
  });
}

ctfrir_status ctfrir_gen_polack(double rt60, double drr_db, int sample_rate,
                                size_t length, uint64_t seed, size_t onset,
                                ctfrir_signal** out) {
  return Guard([&] {
    NotNull(out);
    *out = Wrap(ctfrir::GenPolack(rt60, drr_db, sample_rate, length, seed, onset));
  });
}

ctfrir_status ctfrir_gen_speech(double duration_s, int sample_rate, uint64_t seed,
                                ctfrir_signal** out) {
  return Guard([&] {
    NotNull(out);
    *out = Wrap(ctfrir::GenSyntheticSpeech(duration_s, sample_rate, seed));
  });
}

ctfrir_status ctfrir_mix(const ctfrir_signal* speech, const ctfrir_signal* rir,
                         const ctfrir_signal* rir_direct, const ctfrir_signal* noise,
                         double snr_db, uint64_t seed, ctfrir_signal** y,
                         ctfrir_signal** x, ctfrir_signal** s_dp,
                         ctfrir_signal** scaled_noise) {
  return Guard([&] {
    NotNull(speech, rir, rir_direct, noise);
    ctfrir::Mixture m = ctfrir::MixDataset(AsAudio(speech), rir->rir, rir_direct->rir,
                                           AsAudio(noise), {snr_db, seed});
    if (y) *y = Wrap(std::move(m.y));
    if (x) *x = Wrap(std::move(m.x));
    if (s_dp) *s_dp = Wrap(std::move(m.s_dp));
    if (scaled_noise) *scaled_noise = Wrap(std::move(m.noise));
  });
}

ctfrir_status ctfrir_rir50_rmse(const ctfrir_signal* est, const ctfrir_signal* ref,
                                double* out) {
  return Guard([&] {
    NotNull(est, ref, out);
    *out = ctfrir::Rir50Rmse(est->rir, ref->rir);
  });
}

ctfrir_status ctfrir_metrics_compute(const double* estimates, const double* references,
                                     size_t n, ctfrir_metrics* out) {
  return Guard([&] {
    NotNull(out);
    if (n > 0) NotNull(estimates, references);
    const ctfrir::Metrics m = ctfrir::ComputeMetrics({estimates, n}, {references, n});
    *out = {m.mae, m.rmse, m.pearson.has_value() ? 1 : 0,
            m.pearson.value_or(0.0), m.count};
  });
}

}  // extern "C"
