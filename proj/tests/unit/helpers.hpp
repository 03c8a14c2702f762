// Copyright 2026 The ctfrir Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "doctest.h"

#include "ctfrir/ctf.hpp"
#include "ctfrir/error.hpp"
#include "ctfrir/signal.hpp"
#include "ctfrir/stft.hpp"

namespace ctfrir::testing {

inline AudioSignal WhiteNoise(std::size_t n, std::uint64_t seed,
                              int sample_rate = 16000) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  AudioSignal s;
  s.sample_rate = sample_rate;
  s.samples.resize(n);
  for (auto& v : s.samples) v = g(rng);
  return s;
}

inline ComplexMatrix RandomComplex(Eigen::Index rows, Eigen::Index cols,
                                   std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  ComplexMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = {g(rng), g(rng)};
  }
  return m;
}

// Spectrogram with arbitrary band count: the config only has to validate, so
// tests that never leave the CTF domain use small windows.
inline Spectrogram RandomSpectrogram(std::size_t bands, std::size_t frames,
                                     std::mt19937_64& rng) {
  Spectrogram s;
  s.config.win_len = 2 * (bands - 1);
  s.config.hop = bands - 1;
  s.data = RandomComplex(static_cast<Eigen::Index>(bands),
                         static_cast<Eigen::Index>(frames), rng);
  return s;
}

inline CtfFilter RandomFilter(const Spectrogram& like, std::size_t length,
                              std::mt19937_64& rng) {
  CtfFilter h;
  h.config = like.config;
  h.sample_rate = like.sample_rate;
  h.coeffs = RandomComplex(like.data.rows(), static_cast<Eigen::Index>(length), rng);
  return h;
}

// Time-domain convolution by the definition, for small inputs.
inline std::vector<double> DirectConvolve(const std::vector<double>& a,
                                          const std::vector<double>& b) {
  std::vector<double> out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

inline double RelErr(const ComplexMatrix& est, const ComplexMatrix& ref) {
  return (est - ref).norm() / ref.norm();
}

}  // namespace ctfrir::testing

#define CHECK_ERRC(expr, errc)                                   \
  do {                                                           \
    bool thrown_ = false;                                        \
    try {                                                        \
      (void)(expr);                                              \
    } catch (const ::ctfrir::Error& e_) {                        \
      thrown_ = true;                                            \
      CHECK_MESSAGE(e_.code() == (errc), ::ctfrir::ErrcName(e_.code())); \
    }                                                            \
    CHECK_MESSAGE(thrown_, "expected " #errc);                   \
  } while (0)
