// Copyright 2026 The ctfrir Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ctfrir.h"
#include "handles.hpp"
#include "json.hpp"

namespace {

using namespace ctfrir_cli;
using nlohmann::ordered_json;
namespace fs = std::filesystem;

constexpr int kSchemaVersion = 1;
constexpr std::uint64_t kDefaultSeed = 20260101;
constexpr int kExitRuntime = 1;
constexpr int kExitValidation = 2;

// Log verbosity comes from CTFRIR_LOG_LEVEL: error, warn (default), info, debug.
enum class Level { kError = 0, kWarn, kInfo, kDebug };

Level LogLevel() {
  static const Level level = [] {
    const char* env = std::getenv("CTFRIR_LOG_LEVEL");
    const std::string v = env ? env : "";
    if (v == "error") return Level::kError;
    if (v == "info") return Level::kInfo;
    if (v == "debug") return Level::kDebug;
    return Level::kWarn;
  }();
  return level;
}

void Log(Level level, const std::string& msg) {
  static const char* kNames[] = {"error", "warn", "info", "debug"};
  if (level <= LogLevel()) {
    std::cerr << "[ctfrir " << kNames[static_cast<int>(level)] << "] " << msg << "\n";
  }
}

bool IsValidationStatus(ctfrir_status s) {
  switch (s) {
    case CTFRIR_E_INVALID_ARGUMENT:
    case CTFRIR_E_EMPTY_SIGNAL:
    case CTFRIR_E_INVALID_CONFIG:
    case CTFRIR_E_SHAPE_MISMATCH:
    case CTFRIR_E_OUT_LEN_TOO_LARGE:
    case CTFRIR_E_RIR_TOO_LONG:
    case CTFRIR_E_INVALID_SPEC:
    case CTFRIR_E_TOO_SHORT:
    case CTFRIR_E_INVALID_GEOMETRY:
    case CTFRIR_E_INVALID_TARGET:
    case CTFRIR_E_LENGTH_MISMATCH:
    case CTFRIR_E_FORMAT:
    case CTFRIR_E_SAMPLE_RATE_MISMATCH:
      return true;
    default:
      return false;
  }
}

// Selected by the global --report-format flag.
int g_json_indent = 2;

void WriteJson(const ordered_json& j, const std::string& path) {
  const std::string text = j.dump(g_json_indent) + "\n";
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  Check(ctfrir_write_file_atomic(path.c_str(), text.data(), text.size()));
  Log(Level::kInfo, "wrote " + path);
}

ordered_json Report(const std::string& command) {
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = command;
  j["library_version"] = ctfrir_version();
  return j;
}

// JSON has no NaN; undefined values are written as null.
ordered_json Num(double v) { return std::isfinite(v) ? ordered_json(v) : ordered_json(); }

ordered_json ParamsJson(const ctfrir_acoustic_params& p) {
  ordered_json j;
  j["rt60_s"] = p.has_rt60 ? ordered_json(p.rt60) : ordered_json();
  j["drr_db"] = Num(p.drr);
  j["c50_db"] = Num(p.c50);
  return j;
}

ctfrir_acoustic_params Params(const Signal& rir) {
  ctfrir_acoustic_params p{};
  Check(ctfrir_acoustic_params_compute(rir.get(), &p));
  return p;
}

ordered_json MetricsJson(const ctfrir_metrics& m) {
  ordered_json j;
  j["mae"] = m.mae;
  j["rmse"] = m.rmse;
  j["pearson"] = m.has_pearson ? ordered_json(m.pearson) : ordered_json();
  j["count"] = m.count;
  return j;
}

// Options shared by several subcommands.
struct StftOptions {
  std::size_t win_len = 512;
  std::size_t hop = 256;
  void Add(CLI::App* app) {
    app->add_option("--win-len", win_len, "STFT window length in samples")
        ->capture_default_str();
    app->add_option("--hop", hop, "STFT hop in samples (half the window)")
        ->capture_default_str();
  }
  ctfrir_stft_config Get() const { return {win_len, hop}; }
};

struct SweepOptions {
  ctfrir_sweep_spec spec = ctfrir_sweep_spec_default();
  void Add(CLI::App* app) {
    app->add_option("--f1", spec.f1, "Sweep start frequency in Hz")->capture_default_str();
    app->add_option("--f2", spec.f2, "Sweep stop frequency in Hz")->capture_default_str();
    app->add_option("--sweep-duration", spec.duration_s, "Sweep duration in seconds")
        ->capture_default_str();
    app->add_option("--fade-in", spec.fade_in, "Fade-in length in samples")
        ->capture_default_str();
    app->add_option("--fade-out", spec.fade_out, "Fade-out length in samples")
        ->capture_default_str();
  }
  ctfrir_sweep_spec Get(int sample_rate) const {
    ctfrir_sweep_spec s = spec;
    s.sample_rate = sample_rate;
    return s;
  }
};

ordered_json SweepJson(const ctfrir_sweep_spec& s) {
  ordered_json j;
  j["f1_hz"] = s.f1;
  j["f2_hz"] = s.f2;
  j["duration_s"] = s.duration_s;
  j["fade_in"] = s.fade_in;
  j["fade_out"] = s.fade_out;
  j["sample_rate"] = s.sample_rate;
  return j;
}

// ---------------------------------------------------------------- sweep

struct SweepCmd {
  SweepOptions sweep;
  int sample_rate = 16000;
  double eps = 1e-8;
  std::string out_sweep, out_inverse, report;

  void Register(CLI::App& root) {
    CLI::App* app = root.add_subcommand("sweep", "Write the excitation sweep and its inverse filter");
    sweep.Add(app);
    app->add_option("--fs", sample_rate, "Sample rate in Hz")->capture_default_str();
    app->add_option("--eps", eps, "Inverse filter regularization")->capture_default_str();
    app->add_option("--out-sweep", out_sweep, "Output WAV for the sweep")->required();
    app->add_option("--out-inverse", out_inverse, "Output WAV for the inverse filter")->required();
    app->add_option("--report", report, "JSON report path (stdout when omitted)");
    app->callback([this] { Run(); });
  }

  void Run() {
    const ctfrir_sweep_spec spec = sweep.Get(sample_rate);
    Signal e = Make<Signal>([&](ctfrir_signal** o) { return ctfrir_gen_log_sweep(&spec, o); });
    std::size_t zero_lag = 0;
    Signal v = Make<Signal>([&](ctfrir_signal** o) {
      return ctfrir_gen_inverse_filter(e.get(), &spec, eps, o, &zero_lag);
    });
    WriteWav(e, out_sweep);
    WriteWav(v, out_inverse);
    ordered_json j = Report("sweep");
    j["sweep"] = SweepJson(spec);
    j["eps"] = eps;
    j["sweep_samples"] = ctfrir_signal_length(e.get());
    j["inverse_samples"] = ctfrir_signal_length(v.get());
    j["zero_lag"] = zero_lag;
    j["outputs"] = {{"sweep", out_sweep}, {"inverse", out_inverse}};
    WriteJson(j, report);
  }
};

// --------------------------------------------------------- simulate-rir

struct RoomOptions {
  std::vector<double> dims{5.0, 4.0, 3.0};
  std::vector<double> source{1.5, 1.2, 1.5};
  std::vector<double> mic{3.5, 2.8, 1.4};
  std::optional<double> absorption;
  int max_order = -1;
  bool no_highpass = false;

  void Add(CLI::App* app) {
    app->add_option("--dims", dims, "Room size x y z in metres")->expected(3)->capture_default_str();
    app->add_option("--source", source, "Source position in metres")->expected(3)->capture_default_str();
    app->add_option("--mic", mic, "Microphone position in metres")->expected(3)->capture_default_str();
    app->add_option("--absorption", absorption,
                    "Uniform wall absorption; chosen from --rt60 by Sabine when omitted");
    app->add_option("--max-order", max_order, "Reflection order limit, -1 for none")
        ->capture_default_str();
    app->add_flag("--no-highpass", no_highpass, "Skip the 100 Hz DC-blocking filter");
  }

  ctfrir_room_spec Get(double rt60) const {
    ctfrir_room_spec r = ctfrir_room_spec_default();
    for (int k = 0; k < 3; ++k) {
      r.dims[k] = dims[k];
      r.source[k] = source[k];
      r.mic[k] = mic[k];
    }
    double alpha = 0.0;
    if (absorption) {
      alpha = *absorption;
    } else {
      Check(ctfrir_sabine_absorption(r.dims, rt60, &alpha));
    }
    std::fill(std::begin(r.absorption), std::end(r.absorption), alpha);
    r.max_order = max_order;
    r.highpass = no_highpass ? 0 : 1;
    return r;
  }
};

ordered_json RoomJson(const ctfrir_room_spec& r) {
  ordered_json j;
  j["dims_m"] = {r.dims[0], r.dims[1], r.dims[2]};
  j["source_m"] = {r.source[0], r.source[1], r.source[2]};
  j["mic_m"] = {r.mic[0], r.mic[1], r.mic[2]};
  j["absorption"] = r.absorption[0];
  j["max_order"] = r.max_order;
  j["highpass"] = r.highpass != 0;
  return j;
}

struct SimulateCmd {
  std::string model = "ism";
  RoomOptions room;
  double rt60 = 0.5;
  double drr = 5.0;
  double length_s = 0.96;
  int sample_rate = 16000;
  std::uint64_t seed = kDefaultSeed;
  std::size_t onset = 0;
  std::string out, report;

  void Register(CLI::App& root) {
    CLI::App* app = root.add_subcommand("simulate-rir", "Simulate a ground-truth impulse response");
    app->add_option("--model", model, "ism or polack")
        ->check(CLI::IsMember({"ism", "polack"}))
        ->capture_default_str();
    room.Add(app);
    app->add_option("--rt60", rt60, "Target RT60 in seconds")->capture_default_str();
    app->add_option("--drr", drr, "Polack target DRR in dB")->capture_default_str();
    app->add_option("--onset", onset, "Polack direct-path sample index")->capture_default_str();
    app->add_option("--length", length_s, "Response length in seconds")->capture_default_str();
    app->add_option("--fs", sample_rate, "Sample rate in Hz")->capture_default_str();
    app->add_option("--seed", seed, "Random seed")->capture_default_str();
    app->add_option("--out", out, "Output WAV")->required();
    app->add_option("--report", report, "JSON report path (stdout when omitted)");
    app->callback([this] { Run(); });
  }

  void Run() {
    const auto length = static_cast<std::size_t>(std::llround(length_s * sample_rate));
    ordered_json j = Report("simulate-rir");
    j["model"] = model;
    Signal h;
    if (model == "ism") {
      const ctfrir_room_spec r = room.Get(rt60);
      h = Make<Signal>([&](ctfrir_signal** o) {
        return ctfrir_simulate_ism(&r, sample_rate, length, o);
      });
      j["room"] = RoomJson(r);
    } else {
      h = Make<Signal>([&](ctfrir_signal** o) {
        return ctfrir_gen_polack(rt60, drr, sample_rate, length, seed, onset, o);
      });
      j["seed"] = seed;
      j["target_drr_db"] = drr;
    }
    WriteWav(h, out);
    j["target_rt60_s"] = rt60;
    j["sample_rate"] = sample_rate;
    j["samples"] = length;
    j["direct_index"] = ctfrir_signal_direct_index(h.get());
    j["params"] = ParamsJson(Params(h));
    j["output"] = out;
    WriteJson(j, report);
  }
};

// --------------------------------------------------------- make-dataset

std::string ItemName(std::size_t i) {
  std::ostringstream s;
  s << "item_" << std::setw(4) << std::setfill('0') << i;
  return s.str();
}

struct DatasetCmd {
  std::string out_dir;
  std::size_t count = 8;
  std::uint64_t seed = kDefaultSeed;
  double duration_s = 4.0;
  double snr_min = 5.0, snr_max = 20.0;
  double rt60_min = 0.3, rt60_max = 0.9;
  std::size_t ctf_length = 60;
  bool no_ctf = false;
  int sample_rate = 16000;
  StftOptions stft;
  SweepOptions sweep;

  void Register(CLI::App& root) {
    CLI::App* app = root.add_subcommand(
        "make-dataset", "Simulate noisy reverberant mixtures with ground truth");
    app->add_option("--out-dir", out_dir, "Output directory")->required();
    app->add_option("--count", count, "Number of items")->capture_default_str();
    app->add_option("--seed", seed, "Random seed")->capture_default_str();
    app->add_option("--duration", duration_s, "Speech duration in seconds")->capture_default_str();
    app->add_option("--snr-min", snr_min, "Lowest SNR in dB")->capture_default_str();
    app->add_option("--snr-max", snr_max, "Highest SNR in dB")->capture_default_str();
    app->add_option("--rt60-min", rt60_min, "Lowest target RT60 in seconds")->capture_default_str();
    app->add_option("--rt60-max", rt60_max, "Highest target RT60 in seconds")->capture_default_str();
    app->add_option("--L", ctf_length, "CTF length in frames")->capture_default_str();
    app->add_flag("--no-ctf", no_ctf, "Skip the ground-truth CTF files");
    app->add_option("--fs", sample_rate, "Sample rate in Hz")->capture_default_str();
    stft.Add(app);
    sweep.Add(app);
    app->callback([this] { Run(); });
  }

  void Run() {
    if (!(snr_min <= snr_max) || !(rt60_min <= rt60_max) || rt60_min <= 0.0) {
      throw UsageError("SNR and RT60 ranges must be ordered and positive");
    }
    fs::create_directories(out_dir);
    std::mt19937_64 master(seed);
    const std::size_t rir_len = ctf_length * stft.hop;
    const ctfrir_stft_config cfg = stft.Get();

    ordered_json manifest = Report("make-dataset");
    manifest["seed"] = seed;
    manifest["sample_rate"] = sample_rate;
    manifest["stft"] = {{"win_len", cfg.win_len}, {"hop", cfg.hop}};
    manifest["ctf_length"] = ctf_length;
    manifest["ctf_probe"] = SweepJson(sweep.Get(sample_rate));
    manifest["items"] = ordered_json::array();

    for (std::size_t i = 0; i < count; ++i) {
      const std::uint64_t item_seed = master();
      std::mt19937_64 rng(item_seed);
      std::uniform_real_distribution<double> uni(0.0, 1.0);
      const double rt60 = rt60_min + (rt60_max - rt60_min) * uni(rng);
      const double snr = snr_min + (snr_max - snr_min) * uni(rng);

      ctfrir_room_spec room = ctfrir_room_spec_default();
      room.dims[0] = 3.0 + 12.0 * uni(rng);
      room.dims[1] = 3.0 + 12.0 * uni(rng);
      room.dims[2] = 2.5 + 3.5 * uni(rng);
      double alpha = 0.0;
      if (ctfrir_sabine_absorption(room.dims, rt60, &alpha) != CTFRIR_OK) {
        alpha = 1.0;
        Log(Level::kWarn, ItemName(i) + ": RT60 unreachable, using full absorption");
      }
      std::fill(std::begin(room.absorption), std::end(room.absorption), alpha);
      // Positions keep 0.5 m from walls and at least 1 m between source and mic.
      do {
        for (int k = 0; k < 3; ++k) {
          room.source[k] = 0.5 + (room.dims[k] - 1.0) * uni(rng);
          room.mic[k] = 0.5 + (room.dims[k] - 1.0) * uni(rng);
        }
      } while (std::hypot(room.source[0] - room.mic[0], room.source[1] - room.mic[1],
                          room.source[2] - room.mic[2]) < 1.0);

      Signal h = Make<Signal>([&](ctfrir_signal** o) {
        return ctfrir_simulate_ism(&room, sample_rate, rir_len, o);
      });
      ctfrir_room_spec direct = room;
      direct.max_order = 0;
      Signal h_dp = Make<Signal>([&](ctfrir_signal** o) {
        return ctfrir_simulate_ism(&direct, sample_rate, rir_len, o);
      });
      Signal s = Make<Signal>([&](ctfrir_signal** o) {
        return ctfrir_gen_speech(duration_s, sample_rate, item_seed, o);
      });
      std::normal_distribution<double> gauss(0.0, 1.0);
      std::vector<double> noise_samples(ctfrir_signal_length(s.get()));
      for (auto& v : noise_samples) v = gauss(rng);
      Signal noise = FromSamples(noise_samples, sample_rate);

      ctfrir_signal *y = nullptr, *x = nullptr, *s_dp = nullptr, *w = nullptr;
      Check(ctfrir_mix(s.get(), h.get(), h_dp.get(), noise.get(), snr, item_seed, &y, &x,
                       &s_dp, &w));
      Signal ys(y), xs(x), sdps(s_dp), ws(w);

      const std::string name = ItemName(i);
      const fs::path dir = fs::path(out_dir) / name;
      fs::create_directories(dir);
      ordered_json files;
      auto put = [&](const Signal& sig, const char* key) {
        const std::string rel = name + "/" + key + ".wav";
        WriteWav(sig, (fs::path(out_dir) / rel).string());
        files[key] = rel;
      };
      put(ys, "y");
      put(xs, "x");
      put(s, "s");
      put(sdps, "s_dp");
      put(ws, "noise");
      put(h, "h");
      put(h_dp, "h_dp");
      if (!no_ctf) {
        ctfrir_probe_spec probe = ctfrir_probe_spec_default();
        probe.kind = CTFRIR_PROBE_LOG_SWEEP;
        probe.sweep = sweep.Get(sample_rate);
        Ctf ctf = Make<Ctf>([&](ctfrir_ctf** o) {
          return ctfrir_rir_to_ctf(h.get(), &cfg, ctf_length, &probe, o);
        });
        const std::string rel = name + "/h.ctf";
        Check(ctfrir_ctf_write(ctf.get(), (fs::path(out_dir) / rel).string().c_str()));
        files["ctf"] = rel;
      }

      ordered_json item;
      item["id"] = name;
      item["seed"] = item_seed;
      item["files"] = files;
      item["snr_db"] = snr;
      item["target_rt60_s"] = rt60;
      item["room"] = RoomJson(room);
      item["params"] = ParamsJson(Params(h));
      manifest["items"].push_back(item);
      Log(Level::kInfo, "generated " + name);
    }
    WriteJson(manifest, (fs::path(out_dir) / "manifest.json").string());
  }
};

// ------------------------------------------------------------- fit-ctf

struct FitCmd {
  std::string clean, reverb, out, report;
  std::size_t ctf_length = 60;
  double ridge = -1.0;
  bool refine = false;
  bool complex_difference = false;
  ctfrir_refine_options opts = ctfrir_refine_options_default();
  StftOptions stft;

  void Register(CLI::App& root) {
    CLI::App* app = root.add_subcommand("fit-ctf", "Fit a CTF filter from clean and reverberant audio");
    app->add_option("--clean", clean, "Clean (source) WAV")->required()->check(CLI::ExistingFile);
    app->add_option("--reverb", reverb, "Reverberant WAV")->required()->check(CLI::ExistingFile);
    app->add_option("--L", ctf_length, "CTF length in frames")->capture_default_str();
    app->add_option("--ridge", ridge, "Ridge weight, negative for the per-band default")
        ->capture_default_str();
    app->add_flag("--refine", refine, "Follow the least-squares fit with L1 refinement");
    app->add_option("--iterations", opts.max_iterations, "Refinement iterations")
        ->capture_default_str();
    app->add_option("--step", opts.initial_step, "Initial step relative to band energy")
        ->capture_default_str();
    app->add_option("--charbonnier-eps", opts.charbonnier_eps, "L1 smoothing width")
        ->capture_default_str();
    app->add_flag("--complex-difference", complex_difference,
                  "Use |A - B| instead of ||A| - |B|| as the first loss term");
    stft.Add(app);
    app->add_option("--out", out, "Output CTF1 file")->required();
    app->add_option("--report", report, "JSON report path (stdout when omitted)");
    app->callback([this] { Run(); });
  }

  void Run() {
    Signal s = ReadWav(clean);
    Signal x = ReadWav(reverb);
    const int fs_s = ctfrir_signal_sample_rate(s.get());
    const int fs_x = ctfrir_signal_sample_rate(x.get());
    if (fs_s != fs_x) {
      throw ApiError(CTFRIR_E_SAMPLE_RATE_MISMATCH,
                     "sample rate mismatch: clean is " + std::to_string(fs_s) +
                         " Hz, reverberant is " + std::to_string(fs_x) + " Hz");
    }
    const std::size_t ns = ctfrir_signal_length(s.get());
    const std::size_t nx = ctfrir_signal_length(x.get());
    if (ns != nx) {
      const std::size_t n = std::min(ns, nx);
      Log(Level::kWarn, "lengths differ (" + std::to_string(ns) + " vs " +
                            std::to_string(nx) + "), using the first " +
                            std::to_string(n) + " samples");
      s = FromSamples(std::vector<double>(Samples(s).begin(), Samples(s).begin() + n), fs_s);
      x = FromSamples(std::vector<double>(Samples(x).begin(), Samples(x).begin() + n), fs_x);
    }
    const ctfrir_stft_config cfg = stft.Get();
    Spectrogram S = Make<Spectrogram>([&](ctfrir_spectrogram** o) { return ctfrir_stft(s.get(), &cfg, o); });
    Spectrogram X = Make<Spectrogram>([&](ctfrir_spectrogram** o) { return ctfrir_stft(x.get(), &cfg, o); });
    Ctf h = Make<Ctf>([&](ctfrir_ctf** o) {
      return ctfrir_ctf_ls_fit(S.get(), X.get(), ctf_length, ridge, o);
    });
    opts.magnitude_term =
        complex_difference ? CTFRIR_COMPLEX_DIFFERENCE : CTFRIR_MAGNITUDE_DIFFERENCE;

    ordered_json j = Report("fit-ctf");
    double loss_ls = 0.0;
    Check(ctfrir_smoothed_loss(h.get(), S.get(), X.get(), &opts, &loss_ls));
    j["ls_loss"] = loss_ls;
    if (refine) {
      h = Make<Ctf>([&](ctfrir_ctf** o) {
        return ctfrir_ctf_l1_refine(h.get(), S.get(), X.get(), &opts, o);
      });
      double loss_l1 = 0.0;
      Check(ctfrir_smoothed_loss(h.get(), S.get(), X.get(), &opts, &loss_l1));
      j["refined_loss"] = loss_l1;
      j["refine"] = {{"iterations", opts.max_iterations},
                     {"initial_step", opts.initial_step},
                     {"charbonnier_eps", opts.charbonnier_eps},
                     {"first_term", complex_difference ? "complex_difference"
                                                       : "magnitude_difference"}};
    }
    Check(ctfrir_ctf_write(h.get(), out.c_str()));
    j["bands"] = ctfrir_ctf_bands(h.get());
    j["length"] = ctfrir_ctf_length(h.get());
    j["frames"] = ctfrir_spectrogram_frames(S.get());
    j["sample_rate"] = fs_s;
    j["stft"] = {{"win_len", cfg.win_len}, {"hop", cfg.hop}};
    j["ridge"] = ridge < 0.0 ? ordered_json("default") : ordered_json(ridge);
    j["output"] = out;
    WriteJson(j, report);
  }
};

// ----------------------------------------------------------- ctf-to-rir

struct CtfToRirCmd {
  std::string ctf, out, report;
  SweepOptions sweep;

  void Register(CLI::App& root) {
    CLI::App* app = root.add_subcommand("ctf-to-rir", "Convert a CTF filter to an impulse response");
    app->add_option("--ctf", ctf, "Input CTF1 file")->required()->check(CLI::ExistingFile);
    sweep.Add(app);
    app->add_option("--out", out, "Output WAV")->required();
    app->add_option("--report", report, "JSON report path (stdout when omitted)");
    app->callback([this] { Run(); });
  }

  void Run() {
    Ctf h = Make<Ctf>([&](ctfrir_ctf** o) { return ctfrir_ctf_read(ctf.c_str(), o); });
    const ctfrir_sweep_spec spec = sweep.Get(ctfrir_ctf_sample_rate(h.get()));
    Signal rir = Make<Signal>([&](ctfrir_signal** o) { return ctfrir_ctf_to_rir(h.get(), &spec, o); });
    WriteWav(rir, out);
    ordered_json j = Report("ctf-to-rir");
    j["sweep"] = SweepJson(spec);
    j["samples"] = ctfrir_signal_length(rir.get());
    j["direct_index"] = ctfrir_signal_direct_index(rir.get());
    j["params"] = ParamsJson(Params(rir));
    j["output"] = out;
    WriteJson(j, report);
  }
};

// ----------------------------------------------------------- rir-params

struct ParamsCmd {
  std::string rir, out;
  std::optional<std::size_t> direct_index;

  void Register(CLI::App& root) {
    CLI::App* app = root.add_subcommand("rir-params", "Compute RT60, DRR and C50 of an impulse response");
    app->add_option("--rir", rir, "Input WAV")->required()->check(CLI::ExistingFile);
    app->add_option("--direct-index", direct_index, "Direct-path sample (default: peak)");
    app->add_option("--out", out, "JSON report path (stdout when omitted)");
    app->callback([this] { Run(); });
  }

  void Run() {
    Signal h = ReadWav(rir);
    if (direct_index) Check(ctfrir_signal_set_direct_index(h.get(), *direct_index));
    ordered_json j = Report("rir-params");
    j["input"] = rir;
    j["sample_rate"] = ctfrir_signal_sample_rate(h.get());
    j["direct_index"] = ctfrir_signal_direct_index(h.get());
    j["params"] = ParamsJson(Params(h));
    WriteJson(j, out);
  }
};

// ------------------------------------------------------------- evaluate

ordered_json Conventions() {
  ordered_json j;
  j["rir50"] = "RMSE over 50 ms from the aligned peak, each response scaled to unit peak";
  j["drr_window"] = "[direct - 0.5 ms, direct + 2.5 ms), late = after the window";
  j["c50_split"] = "50 ms after the direct index";
  j["rt60_fit"] = "EDC line fit over [-5, -35] dB, [-5, -25] dB fallback";
  return j;
}

struct EvaluateCmd {
  std::vector<std::string> est, ref;
  std::string list, out;

  void Register(CLI::App& root) {
    CLI::App* app = root.add_subcommand("evaluate", "Compare estimated impulse responses with references");
    app->add_option("--est", est, "Estimated WAVs")->check(CLI::ExistingFile);
    app->add_option("--ref", ref, "Reference WAVs, paired with --est by position")
        ->check(CLI::ExistingFile);
    app->add_option("--list", list, "Text file of 'estimate reference' path pairs")
        ->check(CLI::ExistingFile);
    app->add_option("--out", out, "JSON report path (stdout when omitted)");
    app->callback([this] { Run(); });
  }

  void Run() {
    if (!list.empty()) {
      std::ifstream in(list);
      std::string a, b;
      while (in >> a >> b) {
        est.push_back(a);
        ref.push_back(b);
      }
    }
    if (est.empty() || est.size() != ref.size()) {
      throw UsageError("need equally many --est and --ref responses (at least one)");
    }
    std::vector<double> rt_e, rt_r, drr_e, drr_r, c50_e, c50_r, rir50;
    ordered_json items = ordered_json::array();
    for (std::size_t i = 0; i < est.size(); ++i) {
      Signal e = ReadWav(est[i]);
      Signal r = ReadWav(ref[i]);
      const ctfrir_acoustic_params pe = Params(e);
      const ctfrir_acoustic_params pr = Params(r);
      double rmse = 0.0;
      Check(ctfrir_rir50_rmse(e.get(), r.get(), &rmse));
      ordered_json item;
      item["est"] = est[i];
      item["ref"] = ref[i];
      item["est_params"] = ParamsJson(pe);
      item["ref_params"] = ParamsJson(pr);
      item["rir50_rmse"] = rmse;
      items.push_back(item);
      if (pe.has_rt60 && pr.has_rt60) {
        rt_e.push_back(pe.rt60);
        rt_r.push_back(pr.rt60);
      }
      drr_e.push_back(pe.drr);
      drr_r.push_back(pr.drr);
      c50_e.push_back(pe.c50);
      c50_r.push_back(pr.c50);
      rir50.push_back(rmse);
    }
    auto metrics = [](const std::vector<double>& a, const std::vector<double>& b) {
      if (a.empty()) return ordered_json();
      ctfrir_metrics m{};
      Check(ctfrir_metrics_compute(a.data(), b.data(), a.size(), &m));
      return MetricsJson(m);
    };
    ordered_json j = Report("evaluate");
    j["conventions"] = Conventions();
    j["count"] = est.size();
    j["summary"] = {{"rt60_s", metrics(rt_e, rt_r)},
                    {"drr_db", metrics(drr_e, drr_r)},
                    {"c50_db", metrics(c50_e, c50_r)}};
    double mean = 0.0;
    for (double v : rir50) mean += v;
    j["summary"]["rir50_rmse_mean"] = mean / static_cast<double>(rir50.size());
    j["items"] = items;
    WriteJson(j, out);
  }
};

// ------------------------------------------------------------ roundtrip

struct RoundtripCmd {
  std::string rir, out, out_rir, out_ctf;
  std::size_t ctf_length = 60;
  std::string probe = "sweep";
  std::uint64_t seed = kDefaultSeed;
  double probe_duration = 8.0;
  bool truncate = false;
  StftOptions stft;
  SweepOptions sweep;

  void Register(CLI::App& root) {
    CLI::App* app = root.add_subcommand(
        "roundtrip", "Impulse response to CTF and back, with parameter comparison");
    app->add_option("--rir", rir, "Input WAV")->required()->check(CLI::ExistingFile);
    app->add_option("--L", ctf_length, "CTF length in frames")->capture_default_str();
    app->add_option("--probe", probe, "Probe for the CTF fit: sweep or noise")
        ->check(CLI::IsMember({"sweep", "noise"}))
        ->capture_default_str();
    app->add_option("--seed", seed, "Noise probe seed")->capture_default_str();
    app->add_option("--probe-duration", probe_duration, "Noise probe length in seconds")
        ->capture_default_str();
    app->add_flag("--truncate", truncate, "Truncate responses longer than the CTF span");
    stft.Add(app);
    sweep.Add(app);
    app->add_option("--out", out, "JSON report path (stdout when omitted)");
    app->add_option("--out-rir", out_rir, "Optional WAV of the recovered response");
    app->add_option("--out-ctf", out_ctf, "Optional CTF1 file of the fitted filter");
    app->callback([this] { Run(); });
  }

  void Run() {
    Signal h = ReadWav(rir);
    const int fs = ctfrir_signal_sample_rate(h.get());
    const ctfrir_stft_config cfg = stft.Get();
    const ctfrir_sweep_spec spec = sweep.Get(fs);
    ctfrir_probe_spec p = ctfrir_probe_spec_default();
    p.kind = probe == "sweep" ? CTFRIR_PROBE_LOG_SWEEP : CTFRIR_PROBE_WHITE_NOISE;
    p.seed = seed;
    p.duration_s = probe_duration;
    p.sweep = spec;
    p.truncate_long_rir = truncate ? 1 : 0;
    Ctf ctf = Make<Ctf>([&](ctfrir_ctf** o) {
      return ctfrir_rir_to_ctf(h.get(), &cfg, ctf_length, &p, o);
    });
    Signal rec = Make<Signal>([&](ctfrir_signal** o) { return ctfrir_ctf_to_rir(ctf.get(), &spec, o); });
    if (!out_ctf.empty()) Check(ctfrir_ctf_write(ctf.get(), out_ctf.c_str()));
    if (!out_rir.empty()) WriteWav(rec, out_rir);

    const ctfrir_acoustic_params pin = Params(h);
    const ctfrir_acoustic_params pout = Params(rec);
    double rmse = 0.0;
    Check(ctfrir_rir50_rmse(rec.get(), h.get(), &rmse));

    ordered_json j = Report("roundtrip");
    j["input"] = rir;
    j["sample_rate"] = fs;
    j["ctf_length"] = ctf_length;
    j["probe"] = probe;
    if (probe == "noise") j["seed"] = seed;
    j["stft"] = {{"win_len", cfg.win_len}, {"hop", cfg.hop}};
    j["sweep"] = SweepJson(spec);
    j["conventions"] = Conventions();
    j["input_params"] = ParamsJson(pin);
    j["recovered_params"] = ParamsJson(pout);
    ordered_json err;
    err["rt60_rel"] = (pin.has_rt60 && pout.has_rt60)
                          ? ordered_json(pout.rt60 / pin.rt60 - 1.0)
                          : ordered_json();
    err["drr_db"] = Num(pout.drr - pin.drr);
    err["c50_db"] = Num(pout.c50 - pin.c50);
    j["errors"] = err;
    j["rir50_rmse"] = rmse;
    WriteJson(j, out);
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"CTF-based room impulse response identification and measurement"};
  app.set_config("--config", "", "Read options from a TOML/INI file (same names as the flags)");
  app.require_subcommand(1);
  std::string report_format = "json";
  app.add_option("--report-format", report_format, "json (indented) or json-compact")
      ->check(CLI::IsMember({"json", "json-compact"}))
      ->capture_default_str();
  app.parse_complete_callback(
      [&] { g_json_indent = report_format == "json-compact" ? -1 : 2; });
  app.set_version_flag("--version", std::string(ctfrir_version()));

  SweepCmd sweep;
  SimulateCmd simulate;
  DatasetCmd dataset;
  FitCmd fit;
  CtfToRirCmd ctf_to_rir;
  ParamsCmd params;
  EvaluateCmd evaluate;
  RoundtripCmd roundtrip;
  sweep.Register(app);
  simulate.Register(app);
  dataset.Register(app);
  fit.Register(app);
  ctf_to_rir.Register(app);
  params.Register(app);
  evaluate.Register(app);
  roundtrip.Register(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  } catch (const UsageError& e) {
    Log(Level::kError, e.what());
    return kExitValidation;
  } catch (const ApiError& e) {
    Log(Level::kError, e.what());
    return IsValidationStatus(e.status()) ? kExitValidation : kExitRuntime;
  } catch (const std::exception& e) {
    Log(Level::kError, e.what());
    return kExitRuntime;
  }
  return 0;
}
