// Copyright 2026 The ctfrir Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "ctfrir/io.hpp"

#include <bit>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <random>

#include "ctfrir/error.hpp"
#include "ctfrir/fft.hpp"

namespace ctfrir {
namespace {

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatFloat = 3;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

std::string ReadAll(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(Errc::kIo, "cannot open " + path);
  std::string data((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  if (in.bad()) Fail(Errc::kIo, "cannot read " + path);
  return data;
}

class Reader {
 public:
  Reader(std::string_view data, const std::string& path)
      : data_(data), path_(path) {}
  std::size_t remaining() const { return data_.size() - pos_; }
  std::size_t pos() const { return pos_; }
  void Seek(std::size_t p) {
    if (p > data_.size()) Truncated();
    pos_ = p;
  }
  std::string_view Bytes(std::size_t n) {
    if (n > remaining()) Truncated();
    auto out = data_.substr(pos_, n);
    pos_ += n;
    return out;
  }
  std::uint16_t U16() {
    auto b = Bytes(2);
    return static_cast<std::uint16_t>(static_cast<std::uint8_t>(b[0]) |
                                      (static_cast<std::uint8_t>(b[1]) << 8));
  }
  std::uint32_t U32() {
    auto b = Bytes(4);
    std::uint32_t v = 0;
    for (int i = 3; i >= 0; --i) v = (v << 8) | static_cast<std::uint8_t>(b[i]);
    return v;
  }
  float F32() { return std::bit_cast<float>(U32()); }

 private:
  [[noreturn]] void Truncated() const {
    Fail(Errc::kFormat, "truncated file " + path_);
  }
  std::string_view data_;
  std::string path_;
  std::size_t pos_ = 0;
};

void PutU16(std::string& out, std::uint16_t v) {
  out.push_back(static_cast<char>(v & 0xFF));
  out.push_back(static_cast<char>(v >> 8));
}

void PutU32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

void PutF32(std::string& out, double v) {
  PutU32(out, std::bit_cast<std::uint32_t>(static_cast<float>(v)));
}

std::uint32_t CheckedU32(std::size_t v, const char* what) {
  Require(v <= 0xFFFFFFFFu, Errc::kInvalidArgument, what);
  return static_cast<std::uint32_t>(v);
}

}  // namespace

void WriteFileAtomic(const std::string& path, std::string_view bytes) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  std::random_device rd;
  const fs::path tmp =
      target.string() + ".tmp" + std::to_string(rd() & 0xFFFFFFu);
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) Fail(Errc::kIo, "cannot open " + tmp.string() + " for writing");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) {
      std::error_code ec;
      fs::remove(tmp, ec);
      Fail(Errc::kIo, "cannot write " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    Fail(Errc::kIo, "cannot replace " + path);
  }
}

AudioSignal ReadWav(const std::string& path) {
  const std::string data = ReadAll(path);
  Reader r(data, path);
  if (r.Bytes(4) != "RIFF") Fail(Errc::kFormat, path + ": not a RIFF file");
  r.U32();
  if (r.Bytes(4) != "WAVE") Fail(Errc::kFormat, path + ": not a WAVE file");

  std::uint16_t format = 0, channels = 0, bits = 0;
  std::uint32_t rate = 0;
  bool have_fmt = false;
  while (r.remaining() >= 8) {
    const std::string_view id = r.Bytes(4);
    const std::uint32_t size = r.U32();
    const std::size_t body = r.pos();
    if (id == "fmt ") {
      format = r.U16();
      channels = r.U16();
      rate = r.U32();
      r.U32();
      r.U16();
      bits = r.U16();
      if (format == kFormatExtensible && size >= 40) {
        r.U16();
        r.U16();
        r.U32();
        format = r.U16();
      }
      have_fmt = true;
    } else if (id == "data") {
      if (!have_fmt) Fail(Errc::kFormat, path + ": data before fmt chunk");
      if (channels != 1) Fail(Errc::kFormat, path + ": only mono is supported");
      if (rate == 0 || rate > 0x7FFFFFFFu) Fail(Errc::kFormat, path + ": bad sample rate");
      const std::size_t avail = std::min<std::size_t>(size, r.remaining());
      AudioSignal s;
      s.sample_rate = static_cast<int>(rate);
      if (format == kFormatFloat && bits == 32) {
        s.samples.resize(avail / 4);
        for (auto& v : s.samples) v = r.F32();
      } else if (format == kFormatPcm && bits == 16) {
        s.samples.resize(avail / 2);
        for (auto& v : s.samples) {
          v = static_cast<std::int16_t>(r.U16()) / 32768.0;
        }
      } else {
        Fail(Errc::kFormat, path + ": expected 32-bit float or 16-bit PCM");
      }
      s.Validate();
      return s;
    }
    r.Seek(body + size + (size & 1u));
  }
  Fail(Errc::kFormat, path + ": no data chunk");
}

void WriteWav(const std::string& path, const AudioSignal& signal) {
  signal.Validate();
  const std::uint32_t data_bytes = CheckedU32(signal.size() * 4, "signal too long");
  std::string out;
  out.reserve(44 + data_bytes);
  out += "RIFF";
  PutU32(out, 36 + data_bytes);
  out += "WAVEfmt ";
  PutU32(out, 16);
  PutU16(out, kFormatFloat);
  PutU16(out, 1);
  PutU32(out, static_cast<std::uint32_t>(signal.sample_rate));
  PutU32(out, static_cast<std::uint32_t>(signal.sample_rate) * 4);
  PutU16(out, 4);
  PutU16(out, 32);
  out += "data";
  PutU32(out, data_bytes);
  for (double v : signal.samples) PutF32(out, v);
  WriteFileAtomic(path, out);
}

CtfFilter ReadCtf(const std::string& path) {
  const std::string data = ReadAll(path);
  Reader r(data, path);
  if (r.Bytes(4) != "CTF1") Fail(Errc::kFormat, path + ": bad CTF1 magic");
  const std::uint32_t bands = r.U32();
  const std::uint32_t length = r.U32();
  const std::uint32_t rate = r.U32();
  const std::uint32_t win_len = r.U32();
  const std::uint32_t hop = r.U32();
  CtfFilter h;
  h.config.win_len = win_len;
  h.config.hop = hop;
  try {
    h.config.Validate();
  } catch (const Error& e) {
    Fail(Errc::kFormat, path + ": " + e.what());
  }
  if (bands != h.config.num_bands() || length == 0 || rate == 0 ||
      rate > 0x7FFFFFFFu) {
    Fail(Errc::kFormat, path + ": inconsistent CTF1 header");
  }
  const std::uint64_t count = std::uint64_t{bands} * length;
  if (r.remaining() != count * 8) {
    Fail(Errc::kFormat, path + ": payload size does not match header");
  }
  h.sample_rate = static_cast<int>(rate);
  h.coeffs.resize(bands, length);
  for (Eigen::Index f = 0; f < h.coeffs.rows(); ++f) {
    for (Eigen::Index l = 0; l < h.coeffs.cols(); ++l) {
      const double re = r.F32();
      const double im = r.F32();
      h.coeffs(f, l) = cdouble(re, im);
    }
  }
  if (!h.coeffs.allFinite()) Fail(Errc::kFormat, path + ": non-finite coefficient");
  return h;
}

void WriteCtf(const std::string& path, const CtfFilter& filter) {
  filter.Validate();
  std::string out = "CTF1";
  PutU32(out, CheckedU32(filter.bands(), "too many bands"));
  PutU32(out, CheckedU32(filter.length(), "CTF too long"));
  PutU32(out, static_cast<std::uint32_t>(filter.sample_rate));
  PutU32(out, CheckedU32(filter.config.win_len, "window too long"));
  PutU32(out, CheckedU32(filter.config.hop, "hop too long"));
  out.reserve(out.size() + filter.bands() * filter.length() * 8);
  for (Eigen::Index f = 0; f < filter.coeffs.rows(); ++f) {
    for (Eigen::Index l = 0; l < filter.coeffs.cols(); ++l) {
      PutF32(out, filter.coeffs(f, l).real());
      PutF32(out, filter.coeffs(f, l).imag());
    }
  }
  WriteFileAtomic(path, out);
}

}  // namespace ctfrir
