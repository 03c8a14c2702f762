// Copyright 2026 The ctfrir Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#pragma once

#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ctfrir.h"

namespace ctfrir_cli {

struct SignalDeleter {
  void operator()(ctfrir_signal* p) const { ctfrir_signal_destroy(p); }
};
struct SpectrogramDeleter {
  void operator()(ctfrir_spectrogram* p) const { ctfrir_spectrogram_destroy(p); }
};
struct CtfDeleter {
  void operator()(ctfrir_ctf* p) const { ctfrir_ctf_destroy(p); }
};

using Signal = std::unique_ptr<ctfrir_signal, SignalDeleter>;
using Spectrogram = std::unique_ptr<ctfrir_spectrogram, SpectrogramDeleter>;
using Ctf = std::unique_ptr<ctfrir_ctf, CtfDeleter>;

// Library failure carried up to main, which maps it to an exit code.
class ApiError : public std::runtime_error {
 public:
  ApiError(ctfrir_status status, const std::string& what)
      : std::runtime_error(what), status_(status) {}
  ctfrir_status status() const { return status_; }

 private:
  ctfrir_status status_;
};

// Invalid flags or inputs detected by the tool itself.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void Check(ctfrir_status status) {
  if (status != CTFRIR_OK) {
    throw ApiError(status, std::string(ctfrir_status_name(status)) + ": " +
                               ctfrir_last_error());
  }
}

template <class Handle, class Fn>
Handle Make(Fn&& fn) {
  typename Handle::pointer raw = nullptr;
  Check(fn(&raw));
  return Handle(raw);
}

inline std::span<const double> Samples(const Signal& s) {
  return {ctfrir_signal_data(s.get()), ctfrir_signal_length(s.get())};
}

inline Signal FromSamples(const std::vector<double>& x, int sample_rate) {
  return Make<Signal>([&](ctfrir_signal** out) {
    return ctfrir_signal_create(x.data(), x.size(), sample_rate, out);
  });
}

inline Signal ReadWav(const std::string& path) {
  return Make<Signal>([&](ctfrir_signal** out) { return ctfrir_wav_read(path.c_str(), out); });
}

inline void WriteWav(const Signal& s, const std::string& path) {
  Check(ctfrir_wav_write(s.get(), path.c_str()));
}

}  // namespace ctfrir_cli
