// Copyright 2026 The ctfrir Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include <cstring>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <random>

#include "ctfrir/io.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace ctfrir;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    std::random_device rd;
    path = fs::temp_directory_path() / ("ctfrir_io_" + std::to_string(rd()));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

std::string Slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void Spit(const std::string& path, const std::string& bytes) {
  std::ofstream(path, std::ios::binary) << bytes;
}

std::uint32_t U32At(const std::string& b, std::size_t off) {
  std::uint32_t v = 0;
  for (int i = 3; i >= 0; --i) v = (v << 8) | static_cast<unsigned char>(b[off + i]);
  return v;
}

std::string Le16(std::uint16_t v) { return {char(v & 0xFF), char(v >> 8)}; }
std::string Le32(std::uint32_t v) {
  return {char(v & 0xFF), char((v >> 8) & 0xFF), char((v >> 16) & 0xFF), char(v >> 24)};
}

}  // namespace

TEST_CASE("float WAV round trip is bit exact after the first write") {
  TempDir dir;
  const AudioSignal x = ctfrir::testing::WhiteNoise(1000, 3, 22050);
  WriteWav(dir / "a.wav", x);
  const AudioSignal y = ReadWav(dir / "a.wav");
  CHECK(y.sample_rate == 22050);
  REQUIRE(y.size() == x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    REQUIRE(y.samples[i] == static_cast<double>(static_cast<float>(x.samples[i])));
  }
  WriteWav(dir / "b.wav", y);
  CHECK(Slurp(dir / "a.wav") == Slurp(dir / "b.wav"));
  CHECK(ReadWav(dir / "b.wav").samples == y.samples);
  const std::string bytes = Slurp(dir / "a.wav");
  CHECK(bytes.size() == 44 + 4000);
  CHECK(bytes.substr(0, 4) == "RIFF");
  CHECK(U32At(bytes, 24) == 22050);
}

TEST_CASE("16-bit PCM WAV is accepted on read") {
  TempDir dir;
  std::string fmt = Le16(1) + Le16(1) + Le32(16000) + Le32(32000) + Le16(2) + Le16(16);
  std::string data = Le16(0) + Le16(16384) + Le16(static_cast<std::uint16_t>(-32768));
  std::string body = "WAVE" + std::string("fmt ") + Le32(16) + fmt + "LIST" + Le32(3) +
                     "abc" + std::string(1, '\0') + "data" + Le32(6) + data;
  Spit(dir / "p.wav", "RIFF" + Le32(static_cast<std::uint32_t>(body.size())) + body);
  const AudioSignal s = ReadWav(dir / "p.wav");
  REQUIRE(s.size() == 3);
  CHECK(s.samples[0] == 0.0);
  CHECK(s.samples[1] == 0.5);
  CHECK(s.samples[2] == -1.0);
}

TEST_CASE("WAV rejects what it cannot represent") {
  TempDir dir;
  CHECK_ERRC(ReadWav(dir / "missing.wav"), Errc::kIo);
  Spit(dir / "junk.wav", "hello world, not a wave file");
  CHECK_ERRC(ReadWav(dir / "junk.wav"), Errc::kFormat);
  std::string fmt = Le16(1) + Le16(2) + Le32(16000) + Le32(64000) + Le16(4) + Le16(16);
  std::string body = "WAVEfmt " + Le32(16) + fmt + "data" + Le32(4) + Le32(0);
  Spit(dir / "st.wav", "RIFF" + Le32(static_cast<std::uint32_t>(body.size())) + body);
  CHECK_ERRC(ReadWav(dir / "st.wav"), Errc::kFormat);
  CHECK_ERRC(WriteWav((dir / "no/such/dir/x.wav"), ctfrir::testing::WhiteNoise(4, 1)),
             Errc::kIo);
}

TEST_CASE("CTF1 layout and round trip") {
  TempDir dir;
  std::mt19937_64 rng(4);
  CtfFilter h;
  h.config = StftConfig{};
  h.sample_rate = 16000;
  h.coeffs = ctfrir::testing::RandomComplex(257, 60, rng);
  WriteCtf(dir / "h.ctf", h);
  const std::string b = Slurp(dir / "h.ctf");
  CHECK(b.size() == 24 + 257 * 60 * 8);
  CHECK(b.substr(0, 4) == "CTF1");
  CHECK(U32At(b, 4) == 257);
  CHECK(U32At(b, 8) == 60);
  CHECK(U32At(b, 12) == 16000);
  CHECK(U32At(b, 16) == 512);
  CHECK(U32At(b, 20) == 256);
  // Band 1, lag 2 sits at pair index 1 * 60 + 2.
  float re = 0.0f, im = 0.0f;
  std::memcpy(&re, b.data() + 24 + (60 + 2) * 8, 4);
  std::memcpy(&im, b.data() + 24 + (60 + 2) * 8 + 4, 4);
  CHECK(re == static_cast<float>(h.coeffs(1, 2).real()));
  CHECK(im == static_cast<float>(h.coeffs(1, 2).imag()));

  const CtfFilter r = ReadCtf(dir / "h.ctf");
  CHECK(r.config == h.config);
  CHECK(r.sample_rate == 16000);
  CHECK(r.coeffs.rows() == 257);
  CHECK(r.coeffs.cols() == 60);
  WriteCtf(dir / "h2.ctf", r);
  CHECK(Slurp(dir / "h2.ctf") == b);
  CHECK(ReadCtf(dir / "h2.ctf").coeffs == r.coeffs);
}

TEST_CASE("CTF1 rejects malformed files") {
  TempDir dir;
  CHECK_ERRC(ReadCtf(dir / "none.ctf"), Errc::kIo);
  Spit(dir / "bad.ctf", "CTF2" + std::string(20, '\0'));
  CHECK_ERRC(ReadCtf(dir / "bad.ctf"), Errc::kFormat);
  Spit(dir / "short.ctf", "CTF1" + Le32(257) + Le32(2) + Le32(16000) + Le32(512) +
                              Le32(256) + std::string(8, '\0'));
  CHECK_ERRC(ReadCtf(dir / "short.ctf"), Errc::kFormat);
  Spit(dir / "geom.ctf", "CTF1" + Le32(100) + Le32(1) + Le32(16000) + Le32(512) +
                             Le32(256) + std::string(800, '\0'));
  CHECK_ERRC(ReadCtf(dir / "geom.ctf"), Errc::kFormat);
}

TEST_CASE("atomic writes leave no temporary files behind") {
  TempDir dir;
  WriteFileAtomic(dir / "x.json", "{}");
  WriteFileAtomic(dir / "x.json", "{\"a\":1}");
  CHECK(Slurp(dir / "x.json") == "{\"a\":1}");
  std::size_t count = 0;
  for (const auto& e : fs::directory_iterator(dir.path)) {
    (void)e;
    ++count;
  }
  CHECK(count == 1);
}
