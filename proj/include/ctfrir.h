/* Copyright 2026 The ctfrir Authors
 * License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)
 *
 * C interface to the ctfrir library. Every fallible call returns a
 * ctfrir_status; on failure ctfrir_last_error() describes the problem for the
 * calling thread. Objects are opaque and released with their _destroy call.
 */

#ifndef CTFRIR_H_
#define CTFRIR_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(CTFRIR_BUILDING_LIBRARY)
#define CTFRIR_API __declspec(dllexport)
#else
#define CTFRIR_API __declspec(dllimport)
#endif
#else
#define CTFRIR_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ctfrir_status {
  CTFRIR_OK = 0,
  CTFRIR_E_INVALID_ARGUMENT = 1,
  CTFRIR_E_EMPTY_SIGNAL,
  CTFRIR_E_INVALID_CONFIG,
  CTFRIR_E_SHAPE_MISMATCH,
  CTFRIR_E_OUT_LEN_TOO_LARGE,
  CTFRIR_E_DEGENERATE_INPUT,
  CTFRIR_E_TOO_FEW_FRAMES,
  CTFRIR_E_NON_FINITE_LOSS,
  CTFRIR_E_RIR_TOO_LONG,
  CTFRIR_E_INVALID_SPEC,
  CTFRIR_E_NON_FINITE,
  CTFRIR_E_PEAK_NOT_FOUND,
  CTFRIR_E_ZERO_ENERGY,
  CTFRIR_E_INSUFFICIENT_DECAY_RANGE,
  CTFRIR_E_TOO_SHORT,
  CTFRIR_E_INVALID_GEOMETRY,
  CTFRIR_E_INVALID_TARGET,
  CTFRIR_E_ZERO_NOISE,
  CTFRIR_E_ZERO_SPEECH,
  CTFRIR_E_ZERO_RIR,
  CTFRIR_E_LENGTH_MISMATCH,
  CTFRIR_E_ZERO_VARIANCE,
  CTFRIR_E_IO,
  CTFRIR_E_FORMAT,
  CTFRIR_E_SAMPLE_RATE_MISMATCH,
  CTFRIR_E_INTERNAL = 100
} ctfrir_status;

typedef struct ctfrir_signal ctfrir_signal;
typedef struct ctfrir_spectrogram ctfrir_spectrogram;
typedef struct ctfrir_ctf ctfrir_ctf;

typedef struct ctfrir_stft_config {
  size_t win_len;
  size_t hop;
} ctfrir_stft_config;

typedef struct ctfrir_sweep_spec {
  double f1;
  double f2;
  double duration_s;
  size_t fade_in;
  size_t fade_out;
  int sample_rate;
} ctfrir_sweep_spec;

typedef enum ctfrir_probe_kind {
  CTFRIR_PROBE_WHITE_NOISE = 0,
  CTFRIR_PROBE_LOG_SWEEP = 1
} ctfrir_probe_kind;

typedef struct ctfrir_probe_spec {
  ctfrir_probe_kind kind;
  double duration_s;
  uint64_t seed;
  ctfrir_sweep_spec sweep;
  double ridge; /* negative: per-band default */
  int truncate_long_rir;
} ctfrir_probe_spec;

typedef enum ctfrir_magnitude_term {
  CTFRIR_MAGNITUDE_DIFFERENCE = 0,
  CTFRIR_COMPLEX_DIFFERENCE = 1
} ctfrir_magnitude_term;

typedef struct ctfrir_refine_options {
  double initial_step;
  int max_iterations;
  double charbonnier_eps;
  ctfrir_magnitude_term magnitude_term;
} ctfrir_refine_options;

typedef struct ctfrir_room_spec {
  double dims[3];
  double source[3];
  double mic[3];
  double absorption[6];
  int max_order;
  double speed_of_sound;
  int highpass;
} ctfrir_room_spec;

typedef struct ctfrir_acoustic_params {
  int has_rt60;
  double rt60;
  double drr;
  double c50;
} ctfrir_acoustic_params;

typedef struct ctfrir_metrics {
  double mae;
  double rmse;
  int has_pearson;
  double pearson;
  size_t count;
} ctfrir_metrics;

typedef struct ctfrir_composite_loss {
  double total;
  double rec;
  double rvb;
  double cln;
} ctfrir_composite_loss;

CTFRIR_API const char* ctfrir_version(void);
CTFRIR_API const char* ctfrir_last_error(void);
CTFRIR_API const char* ctfrir_status_name(ctfrir_status status);

CTFRIR_API ctfrir_stft_config ctfrir_stft_config_default(void);
CTFRIR_API ctfrir_sweep_spec ctfrir_sweep_spec_default(void);
CTFRIR_API ctfrir_probe_spec ctfrir_probe_spec_default(void);
CTFRIR_API ctfrir_refine_options ctfrir_refine_options_default(void);
CTFRIR_API ctfrir_room_spec ctfrir_room_spec_default(void);

/* Signals. A signal doubles as an impulse response through its direct
 * index, which defaults to the absolute peak. */
CTFRIR_API ctfrir_status ctfrir_signal_create(const double* samples, size_t n,
                                              int sample_rate,
                                              ctfrir_signal** out);
CTFRIR_API void ctfrir_signal_destroy(ctfrir_signal* signal);
CTFRIR_API size_t ctfrir_signal_length(const ctfrir_signal* signal);
CTFRIR_API int ctfrir_signal_sample_rate(const ctfrir_signal* signal);
CTFRIR_API const double* ctfrir_signal_data(const ctfrir_signal* signal);
CTFRIR_API size_t ctfrir_signal_direct_index(const ctfrir_signal* signal);
CTFRIR_API ctfrir_status ctfrir_signal_set_direct_index(ctfrir_signal* signal,
                                                        size_t index);
CTFRIR_API ctfrir_status ctfrir_wav_read(const char* path, ctfrir_signal** out);
CTFRIR_API ctfrir_status ctfrir_wav_write(const ctfrir_signal* signal,
                                          const char* path);
/* Writes |size| bytes through a temporary sibling file and a rename. */
CTFRIR_API ctfrir_status ctfrir_write_file_atomic(const char* path,
                                                  const char* data, size_t size);

/* STFT. */
CTFRIR_API ctfrir_status ctfrir_stft(const ctfrir_signal* signal,
                                     const ctfrir_stft_config* config,
                                     ctfrir_spectrogram** out);
CTFRIR_API ctfrir_status ctfrir_istft(const ctfrir_spectrogram* spec,
                                      size_t out_len, ctfrir_signal** out);
CTFRIR_API void ctfrir_spectrogram_destroy(ctfrir_spectrogram* spec);
CTFRIR_API size_t ctfrir_spectrogram_bands(const ctfrir_spectrogram* spec);
CTFRIR_API size_t ctfrir_spectrogram_frames(const ctfrir_spectrogram* spec);
/* Copies bands * frames (re, im) pairs in band-major order. */
CTFRIR_API ctfrir_status ctfrir_spectrogram_copy(const ctfrir_spectrogram* spec,
                                                 double* re_im, size_t capacity);

/* CTF filters. Coefficients are bands * length (re, im) pairs, band-major. */
CTFRIR_API ctfrir_status ctfrir_ctf_create(const double* re_im, size_t bands,
                                           size_t length,
                                           const ctfrir_stft_config* config,
                                           int sample_rate, ctfrir_ctf** out);
CTFRIR_API void ctfrir_ctf_destroy(ctfrir_ctf* ctf);
CTFRIR_API size_t ctfrir_ctf_bands(const ctfrir_ctf* ctf);
CTFRIR_API size_t ctfrir_ctf_length(const ctfrir_ctf* ctf);
CTFRIR_API int ctfrir_ctf_sample_rate(const ctfrir_ctf* ctf);
CTFRIR_API ctfrir_stft_config ctfrir_ctf_config(const ctfrir_ctf* ctf);
CTFRIR_API ctfrir_status ctfrir_ctf_copy(const ctfrir_ctf* ctf, double* re_im,
                                         size_t capacity);
CTFRIR_API ctfrir_status ctfrir_ctf_read(const char* path, ctfrir_ctf** out);
CTFRIR_API ctfrir_status ctfrir_ctf_write(const ctfrir_ctf* ctf,
                                          const char* path);

CTFRIR_API ctfrir_status ctfrir_ctf_convolve(const ctfrir_ctf* ctf,
                                             const ctfrir_spectrogram* s,
                                             ctfrir_spectrogram** out);
/* ridge < 0 selects the per-band default. */
CTFRIR_API ctfrir_status ctfrir_ctf_ls_fit(const ctfrir_spectrogram* s,
                                           const ctfrir_spectrogram* x,
                                           size_t length, double ridge,
                                           ctfrir_ctf** out);
CTFRIR_API ctfrir_status ctfrir_ctf_l1_refine(
    const ctfrir_ctf* init, const ctfrir_spectrogram* s,
    const ctfrir_spectrogram* x, const ctfrir_refine_options* options,
    ctfrir_ctf** out);
CTFRIR_API ctfrir_status ctfrir_smoothed_loss(
    const ctfrir_ctf* ctf, const ctfrir_spectrogram* s,
    const ctfrir_spectrogram* x, const ctfrir_refine_options* options,
    double* out);
CTFRIR_API ctfrir_status ctfrir_rir_to_ctf(const ctfrir_signal* rir,
                                           const ctfrir_stft_config* config,
                                           size_t length,
                                           const ctfrir_probe_spec* probe,
                                           ctfrir_ctf** out);

/* Losses. */
CTFRIR_API ctfrir_status ctfrir_loss_ri_mag(const ctfrir_spectrogram* a,
                                            const ctfrir_spectrogram* b,
                                            ctfrir_magnitude_term term,
                                            double* out);
CTFRIR_API ctfrir_status ctfrir_loss_composite(
    const ctfrir_ctf* h, const ctfrir_spectrogram* s,
    const ctfrir_spectrogram* x, const ctfrir_spectrogram* x_hat,
    const ctfrir_spectrogram* s_hat, double lambda_rvb, double lambda_cln,
    ctfrir_magnitude_term term, ctfrir_composite_loss* out);

/* Sweep measurement. */
CTFRIR_API ctfrir_status ctfrir_gen_log_sweep(const ctfrir_sweep_spec* spec,
                                              ctfrir_signal** out);
CTFRIR_API ctfrir_status ctfrir_gen_inverse_filter(
    const ctfrir_signal* sweep, const ctfrir_sweep_spec* spec, double eps,
    ctfrir_signal** out, size_t* zero_lag);
CTFRIR_API ctfrir_status ctfrir_ctf_to_rir(const ctfrir_ctf* ctf,
                                           const ctfrir_sweep_spec* spec,
                                           ctfrir_signal** out);

/* Acoustic parameters. */
CTFRIR_API ctfrir_status ctfrir_acoustic_params_compute(
    const ctfrir_signal* rir, ctfrir_acoustic_params* out);
CTFRIR_API ctfrir_status ctfrir_rt60(const ctfrir_signal* rir, double* out);
CTFRIR_API ctfrir_status ctfrir_drr(const ctfrir_signal* rir, double* out);
CTFRIR_API ctfrir_status ctfrir_c50(const ctfrir_signal* rir, double* out);
/* Fills out[0 .. length) with the energy decay curve in dB. */
CTFRIR_API ctfrir_status ctfrir_edc(const ctfrir_signal* rir, double* out,
                                    size_t capacity);

/* Simulation. */
CTFRIR_API ctfrir_status ctfrir_simulate_ism(const ctfrir_room_spec* room,
                                             int sample_rate, size_t length,
                                             ctfrir_signal** out);
CTFRIR_API ctfrir_status ctfrir_sabine_absorption(const double dims[3],
                                                  double rt60, double* out);
CTFRIR_API ctfrir_status ctfrir_gen_polack(double rt60, double drr_db,
                                           int sample_rate, size_t length,
                                           uint64_t seed, size_t onset,
                                           ctfrir_signal** out);
CTFRIR_API ctfrir_status ctfrir_gen_speech(double duration_s, int sample_rate,
                                           uint64_t seed, ctfrir_signal** out);
/* Any of the outputs may be NULL when not needed. */
CTFRIR_API ctfrir_status ctfrir_mix(const ctfrir_signal* speech,
                                    const ctfrir_signal* rir,
                                    const ctfrir_signal* rir_direct,
                                    const ctfrir_signal* noise, double snr_db,
                                    uint64_t seed, ctfrir_signal** y,
                                    ctfrir_signal** x, ctfrir_signal** s_dp,
                                    ctfrir_signal** scaled_noise);

/* Evaluation. */
CTFRIR_API ctfrir_status ctfrir_rir50_rmse(const ctfrir_signal* est,
                                           const ctfrir_signal* ref,
                                           double* out);
CTFRIR_API ctfrir_status ctfrir_metrics_compute(const double* estimates,
                                                const double* references,
                                                size_t n, ctfrir_metrics* out);

#ifdef __cplusplus
}
#endif

#endif  /* CTFRIR_H_ */
