// csasr/features.cc

// Copyright 2026  CSASR Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "csasr/features.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstring>
#include <fstream>
#include <numbers>
#include <stdexcept>

#include "csasr/common.h"
#include "json.hpp"

namespace csasr {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kLogFloor = 1e-10;

int FrameLengthSamples(const AudioBuffer& audio, double frame_length_ms) {
  return static_cast<int>(
      std::lround(frame_length_ms * audio.sample_rate_hz / 1000.0));
}

int FrameShiftSamples(const AudioBuffer& audio, double frame_shift_ms) {
  return static_cast<int>(
      std::lround(frame_shift_ms * audio.sample_rate_hz / 1000.0));
}

int NumFrames(size_t num_samples, int win, int hop) {
  if (num_samples < static_cast<size_t>(win)) return 0;
  return 1 + static_cast<int>((num_samples - win) / hop);
}

// In-place iterative radix-2 FFT; n must be a power of two.
void Fft(std::vector<std::complex<double>>* buf) {
  size_t n = buf->size();
  auto& a = *buf;
  for (size_t i = 1, j = 0; i < n; ++i) {
    size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (size_t len = 2; len <= n; len <<= 1) {
    double angle = -2.0 * kPi / static_cast<double>(len);
    std::complex<double> wlen(std::cos(angle), std::sin(angle));
    for (size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (size_t k = 0; k < len / 2; ++k) {
        std::complex<double> u = a[i + k];
        std::complex<double> v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wlen;
      }
    }
  }
}

double HzToMel(double hz) { return 1127.0 * std::log1p(hz / 700.0); }
double MelToHz(double mel) { return 700.0 * (std::exp(mel / 1127.0) - 1.0); }

// Deterministic, platform-independent RNG (splitmix64).
struct SplitMix64 {
  uint64_t state;
  explicit SplitMix64(uint64_t seed) : state(seed) {}
  uint64_t Next() {
    state += 0x9E3779B97F4A7C15ULL;
    uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
  // Uniform in [0, bound); bound > 0.
  uint64_t Uniform(uint64_t bound) { return Next() % bound; }
};

void PutU32(std::string* out, uint32_t v) {
  for (int i = 0; i < 4; ++i) {
    out->push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
  }
}

void PutF32(std::string* out, float f) {
  PutU32(out, std::bit_cast<uint32_t>(f));
}

uint32_t GetU32(const unsigned char* p) {
  return static_cast<uint32_t>(p[0]) | (static_cast<uint32_t>(p[1]) << 8) |
         (static_cast<uint32_t>(p[2]) << 16) |
         (static_cast<uint32_t>(p[3]) << 24);
}

float GetF32(const unsigned char* p) {
  return std::bit_cast<float>(GetU32(p));
}

}  // namespace

AudioBuffer SpeedPerturb(const AudioBuffer& audio, double factor) {
  if (!(factor > 0.0)) {
    throw std::invalid_argument("speed factor must be positive");
  }
  AudioBuffer out;
  out.sample_rate_hz = audio.sample_rate_hz;
  const long in_len = static_cast<long>(audio.samples.size());
  const long out_len = std::lround(static_cast<double>(in_len) / factor);
  out.samples.resize(static_cast<size_t>(std::max(0L, out_len)));
  if (in_len == 0 || out_len <= 0) return out;

  // Band-limited interpolation: cutoff at the lower of the two Nyquists.
  const double cutoff = std::min(1.0, 1.0 / factor);
  const double half_width = 16.0 / cutoff;
  for (long n = 0; n < out_len; ++n) {
    const double center = static_cast<double>(n) * factor;
    const long k_lo = std::max(0L, static_cast<long>(std::ceil(center - half_width)));
    const long k_hi =
        std::min(in_len - 1, static_cast<long>(std::floor(center + half_width)));
    double acc = 0.0;
    for (long k = k_lo; k <= k_hi; ++k) {
      const double d = center - static_cast<double>(k);
      double sinc;
      if (std::abs(d) < 1e-12) {
        sinc = 1.0;
      } else {
        const double x = kPi * cutoff * d;
        sinc = std::sin(x) / x;
      }
      const double window = 0.5 * (1.0 + std::cos(kPi * d / half_width));
      acc += static_cast<double>(audio.samples[k]) * cutoff * sinc * window;
    }
    out.samples[n] = static_cast<float>(acc);
  }
  return out;
}

FeatureMatrix LogMel(const AudioBuffer& audio, int n_mels,
                     double frame_length_ms, double frame_shift_ms) {
  if (audio.sample_rate_hz <= 0) {
    throw std::invalid_argument("sample rate must be positive");
  }
  if (n_mels <= 0) throw std::invalid_argument("n_mels must be positive");
  const int win = FrameLengthSamples(audio, frame_length_ms);
  const int hop = FrameShiftSamples(audio, frame_shift_ms);
  if (win <= 0 || hop <= 0) {
    throw std::invalid_argument("frame geometry must be positive");
  }
  const int num_frames = NumFrames(audio.samples.size(), win, hop);
  if (num_frames < 1) {
    throw std::invalid_argument(
        "audio shorter than one frame (" +
        std::to_string(audio.samples.size()) + " samples, window " +
        std::to_string(win) + ")");
  }
  int n_fft = 1;
  while (n_fft < win) n_fft <<= 1;
  const int n_bins = n_fft / 2 + 1;

  // Hamming window.
  std::vector<double> window(win);
  for (int i = 0; i < win; ++i) {
    window[i] = 0.54 - 0.46 * std::cos(2.0 * kPi * i / (win - 1));
  }

  // Triangular mel filters, 20 Hz .. Nyquist.
  const double mel_lo = HzToMel(20.0);
  const double mel_hi = HzToMel(audio.sample_rate_hz / 2.0);
  std::vector<double> hz_points(n_mels + 2);
  for (int j = 0; j < n_mels + 2; ++j) {
    hz_points[j] = MelToHz(mel_lo + (mel_hi - mel_lo) * j / (n_mels + 1));
  }
  const double bin_hz =
      static_cast<double>(audio.sample_rate_hz) / static_cast<double>(n_fft);

  FeatureMatrix out = FeatureMatrix::Zeros(num_frames, n_mels);
  out.frame_shift_ms = static_cast<float>(frame_shift_ms);
  out.frame_length_ms = static_cast<float>(frame_length_ms);

  std::vector<std::complex<double>> buf(n_fft);
  std::vector<double> power(n_bins);
  for (int t = 0; t < num_frames; ++t) {
    const size_t start = static_cast<size_t>(t) * hop;
    for (int i = 0; i < n_fft; ++i) {
      double s = i < win ? audio.samples[start + i] * window[i] : 0.0;
      buf[i] = {s, 0.0};
    }
    Fft(&buf);
    for (int k = 0; k < n_bins; ++k) power[k] = std::norm(buf[k]);
    for (int m = 0; m < n_mels; ++m) {
      const double lo = hz_points[m], mid = hz_points[m + 1],
                   hi = hz_points[m + 2];
      double energy = 0.0;
      for (int k = 0; k < n_bins; ++k) {
        const double f = k * bin_hz;
        if (f <= lo || f >= hi) continue;
        const double w = f <= mid ? (f - lo) / (mid - lo) : (hi - f) / (hi - mid);
        energy += w * power[k];
      }
      out.At(t, m) = static_cast<float>(std::log(energy + kLogFloor));
    }
  }
  return out;
}

FeatureMatrix PitchFeatures(const AudioBuffer& audio, double frame_length_ms,
                            double frame_shift_ms) {
  const int win = FrameLengthSamples(audio, frame_length_ms);
  const int hop = FrameShiftSamples(audio, frame_shift_ms);
  if (win <= 0 || hop <= 0) {
    throw std::invalid_argument("frame geometry must be positive");
  }
  const int num_frames = NumFrames(audio.samples.size(), win, hop);
  if (num_frames < 1) {
    throw std::invalid_argument("audio shorter than one frame");
  }
  const double fs = audio.sample_rate_hz;
  const int min_lag = std::max(2, static_cast<int>(fs / 400.0));  // <= 400 Hz
  const int max_lag = static_cast<int>(std::ceil(fs / 50.0));     // >= 50 Hz
  constexpr double kVoicingThreshold = 0.45;
  constexpr double kDefaultPitchHz = 100.0;

  // Zero-pad so every frame can correlate out to max_lag.
  std::vector<double> x(audio.samples.begin(), audio.samples.end());
  x.resize(audio.samples.size() + static_cast<size_t>(max_lag) + win, 0.0);
  std::vector<double> sq_prefix(x.size() + 1, 0.0);
  for (size_t i = 0; i < x.size(); ++i) {
    sq_prefix[i + 1] = sq_prefix[i] + x[i] * x[i];
  }
  auto energy = [&](size_t begin, size_t count) {
    return sq_prefix[begin + count] - sq_prefix[begin];
  };

  std::vector<double> pov(num_frames, 0.0);
  std::vector<double> pitch(num_frames, 0.0);
  std::vector<bool> voiced(num_frames, false);
  std::vector<double> nccf(max_lag + 2, 0.0);
  for (int t = 0; t < num_frames; ++t) {
    const size_t start = static_cast<size_t>(t) * hop;
    const double e1 = energy(start, win);
    double best = -2.0;
    for (int lag = min_lag; lag <= max_lag; ++lag) {
      double cross = 0.0;
      for (int i = 0; i < win; ++i) {
        cross += x[start + i] * x[start + i + lag];
      }
      const double e2 = energy(start + lag, win);
      const double denom = std::sqrt(e1 * e2) + 1e-10;
      nccf[lag] = cross / denom;
      best = std::max(best, nccf[lag]);
    }
    // Periodic signals peak at every lag multiple of the period, and a
    // larger multiple can score marginally higher when the period is not
    // an integer. Take the smallest local maximum within epsilon of the
    // global peak so the fundamental wins; parabolic refinement recovers
    // the fractional part.
    constexpr double kPeakEpsilon = 0.01;
    int best_lag = min_lag;
    bool found = false;
    for (int lag = min_lag; lag <= max_lag && !found; ++lag) {
      const bool local_max = (lag == min_lag || nccf[lag] >= nccf[lag - 1]) &&
                             (lag == max_lag || nccf[lag] >= nccf[lag + 1]);
      if (local_max && nccf[lag] >= best - kPeakEpsilon) {
        best_lag = lag;
        found = true;
      }
    }
    if (!found) {
      for (int lag = min_lag; lag <= max_lag; ++lag) {
        if (nccf[lag] == best) {
          best_lag = lag;
          break;
        }
      }
    }
    pov[t] = std::clamp(best, 0.0, 1.0);
    voiced[t] = pov[t] >= kVoicingThreshold;
    // Parabolic refinement around the NCCF peak.
    double lag = best_lag;
    if (best_lag > min_lag && best_lag < max_lag) {
      const double a = nccf[best_lag - 1], b = nccf[best_lag],
                   c = nccf[best_lag + 1];
      const double denom = a - 2.0 * b + c;
      if (std::abs(denom) > 1e-12) {
        double shift = 0.5 * (a - c) / denom;
        lag += std::clamp(shift, -1.0, 1.0);
      }
    }
    pitch[t] = fs / lag;
  }

  // Unvoiced frames borrow pitch from voiced neighbours (log-linear
  // interpolation); a fully unvoiced signal gets a flat default track.
  std::vector<int> voiced_idx;
  for (int t = 0; t < num_frames; ++t) {
    if (voiced[t]) voiced_idx.push_back(t);
  }
  std::vector<double> log_pitch(num_frames);
  if (voiced_idx.empty()) {
    std::fill(log_pitch.begin(), log_pitch.end(), std::log(kDefaultPitchHz));
  } else {
    for (int t = 0; t < num_frames; ++t) {
      if (voiced[t]) {
        log_pitch[t] = std::log(pitch[t]);
        continue;
      }
      auto next = std::lower_bound(voiced_idx.begin(), voiced_idx.end(), t);
      if (next == voiced_idx.begin()) {
        log_pitch[t] = std::log(pitch[voiced_idx.front()]);
      } else if (next == voiced_idx.end()) {
        log_pitch[t] = std::log(pitch[voiced_idx.back()]);
      } else {
        const int hi = *next, lo = *(next - 1);
        const double w = static_cast<double>(t - lo) / (hi - lo);
        log_pitch[t] =
            (1.0 - w) * std::log(pitch[lo]) + w * std::log(pitch[hi]);
      }
    }
  }

  // Median smoothing (window 5).
  std::vector<double> smoothed(num_frames);
  for (int t = 0; t < num_frames; ++t) {
    double window5[5];
    int n = 0;
    for (int k = t - 2; k <= t + 2; ++k) {
      if (k >= 0 && k < num_frames) window5[n++] = log_pitch[k];
    }
    std::sort(window5, window5 + n);
    smoothed[t] = window5[n / 2];
  }

  FeatureMatrix out = FeatureMatrix::Zeros(num_frames, 3);
  out.frame_shift_ms = static_cast<float>(frame_shift_ms);
  out.frame_length_ms = static_cast<float>(frame_length_ms);
  for (int t = 0; t < num_frames; ++t) {
    const int prev = std::max(0, t - 1), next = std::min(num_frames - 1, t + 1);
    out.At(t, 0) = static_cast<float>(pov[t]);
    out.At(t, 1) = static_cast<float>(smoothed[t]);
    out.At(t, 2) = static_cast<float>((smoothed[next] - smoothed[prev]) / 2.0);
  }
  return out;
}

FeatureMatrix StackFeatures(const FeatureMatrix& mel,
                            const FeatureMatrix& pitch) {
  if (mel.rows != pitch.rows) {
    throw std::invalid_argument(
        "stack: frame counts differ (" + std::to_string(mel.rows) + " vs " +
        std::to_string(pitch.rows) + ")");
  }
  FeatureMatrix out = FeatureMatrix::Zeros(mel.rows, mel.cols + pitch.cols);
  out.frame_shift_ms = mel.frame_shift_ms;
  out.frame_length_ms = mel.frame_length_ms;
  for (int t = 0; t < mel.rows; ++t) {
    for (int d = 0; d < mel.cols; ++d) out.At(t, d) = mel.At(t, d);
    for (int d = 0; d < pitch.cols; ++d) {
      out.At(t, mel.cols + d) = pitch.At(t, d);
    }
  }
  return out;
}

CmvnStats ComputeCmvn(const FeatureMatrix& features) {
  if (features.rows < 2) {
    throw std::invalid_argument(
        "cmvn statistics need at least 2 frames, got " +
        std::to_string(features.rows));
  }
  CmvnStats stats;
  stats.dim = features.cols;
  stats.mean.assign(features.cols, 0.0);
  stats.var.assign(features.cols, 0.0);
  for (int t = 0; t < features.rows; ++t) {
    for (int d = 0; d < features.cols; ++d) {
      stats.mean[d] += features.At(t, d);
    }
  }
  for (int d = 0; d < features.cols; ++d) stats.mean[d] /= features.rows;
  for (int t = 0; t < features.rows; ++t) {
    for (int d = 0; d < features.cols; ++d) {
      const double delta = features.At(t, d) - stats.mean[d];
      stats.var[d] += delta * delta;
    }
  }
  for (int d = 0; d < features.cols; ++d) stats.var[d] /= features.rows;
  return stats;
}

FeatureMatrix ApplyCmvn(const FeatureMatrix& features, const CmvnStats* stats) {
  CmvnStats self;
  if (stats == nullptr) {
    self = ComputeCmvn(features);
    stats = &self;
  }
  if (stats->dim != features.cols) {
    throw std::invalid_argument("cmvn stats dimension " +
                                std::to_string(stats->dim) +
                                " does not match features " +
                                std::to_string(features.cols));
  }
  FeatureMatrix out = features;
  for (int d = 0; d < features.cols; ++d) {
    const double mean = stats->mean[d];
    const double var = stats->var[d];
    const double scale = var < 1e-10 ? 1.0 : 1.0 / std::sqrt(var);
    for (int t = 0; t < features.rows; ++t) {
      out.At(t, d) = static_cast<float>((features.At(t, d) - mean) * scale);
    }
  }
  return out;
}

FeatureMatrix SpecAugment(const FeatureMatrix& features,
                          const SpecAugmentConfig& config) {
  if (config.num_freq_masks < 0 || config.num_time_masks < 0 ||
      config.max_freq_width < 0 || config.max_time_width < 0) {
    throw std::invalid_argument("specaugment: counts and widths must be >= 0");
  }
  if (config.num_freq_masks > 0 && config.max_freq_width > features.cols) {
    throw std::invalid_argument(
        "specaugment: frequency mask width " +
        std::to_string(config.max_freq_width) + " exceeds " +
        std::to_string(features.cols) + " dims");
  }
  if (config.num_time_masks > 0 && config.max_time_width > features.rows) {
    throw std::invalid_argument("specaugment: time mask width " +
                                std::to_string(config.max_time_width) +
                                " exceeds " + std::to_string(features.rows) +
                                " frames");
  }
  FeatureMatrix out = features;
  if (features.rows == 0 || features.cols == 0) return out;

  std::vector<float> dim_mean(features.cols, 0.0f);
  for (int d = 0; d < features.cols; ++d) {
    double acc = 0.0;
    for (int t = 0; t < features.rows; ++t) acc += features.At(t, d);
    dim_mean[d] = static_cast<float>(acc / features.rows);
  }

  SplitMix64 rng(config.seed);
  for (int i = 0; i < config.num_freq_masks; ++i) {
    if (config.max_freq_width == 0) break;
    const int f0 = static_cast<int>(
        rng.Uniform(static_cast<uint64_t>(features.cols - config.max_freq_width + 1)));
    for (int d = f0; d < f0 + config.max_freq_width; ++d) {
      for (int t = 0; t < features.rows; ++t) out.At(t, d) = dim_mean[d];
    }
  }
  for (int i = 0; i < config.num_time_masks; ++i) {
    if (config.max_time_width == 0) break;
    const int t0 = static_cast<int>(
        rng.Uniform(static_cast<uint64_t>(features.rows - config.max_time_width + 1)));
    for (int t = t0; t < t0 + config.max_time_width; ++t) {
      for (int d = 0; d < features.cols; ++d) out.At(t, d) = dim_mean[d];
    }
  }
  return out;
}

void SaveFeatureMatrix(const FeatureMatrix& features, const std::string& path) {
  std::string out;
  out.reserve(20 + features.data.size() * 4);
  out += "CSFM";
  PutU32(&out, static_cast<uint32_t>(features.rows));
  PutU32(&out, static_cast<uint32_t>(features.cols));
  PutF32(&out, features.frame_shift_ms);
  PutF32(&out, features.frame_length_ms);
  for (float value : features.data) PutF32(&out, value);
  std::ofstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot write feature file '" + path + "'");
  file.write(out.data(), static_cast<std::streamsize>(out.size()));
  if (!file) throw IoError("failed writing feature file '" + path + "'");
}

FeatureMatrix LoadFeatureMatrix(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot open feature file '" + path + "'");
  std::string bytes((std::istreambuf_iterator<char>(file)),
                    std::istreambuf_iterator<char>());
  if (bytes.size() < 20 || bytes.compare(0, 4, "CSFM") != 0) {
    throw std::invalid_argument("feature file '" + path +
                                "': bad magic or truncated header");
  }
  const unsigned char* p = reinterpret_cast<const unsigned char*>(bytes.data());
  FeatureMatrix out;
  out.rows = static_cast<int>(GetU32(p + 4));
  out.cols = static_cast<int>(GetU32(p + 8));
  out.frame_shift_ms = GetF32(p + 12);
  out.frame_length_ms = GetF32(p + 16);
  const size_t expected = static_cast<size_t>(out.rows) * out.cols;
  if (bytes.size() != 20 + expected * 4) {
    throw std::invalid_argument("feature file '" + path +
                                "': size does not match header");
  }
  out.data.resize(expected);
  for (size_t i = 0; i < expected; ++i) {
    out.data[i] = GetF32(p + 20 + 4 * i);
  }
  return out;
}

void SaveCmvnStats(const CmvnStats& stats, const std::string& path) {
  nlohmann::ordered_json j;
  j["dim"] = stats.dim;
  j["mean"] = stats.mean;
  j["var"] = stats.var;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write cmvn stats '" + path + "'");
  out << j.dump(2) << '\n';
}

CmvnStats LoadCmvnStats(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open cmvn stats '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument("cmvn stats '" + path + "': " + e.what());
  }
  CmvnStats stats;
  stats.dim = j.at("dim").get<int>();
  stats.mean = j.at("mean").get<std::vector<double>>();
  stats.var = j.at("var").get<std::vector<double>>();
  if (static_cast<int>(stats.mean.size()) != stats.dim ||
      static_cast<int>(stats.var.size()) != stats.dim) {
    throw std::invalid_argument("cmvn stats '" + path +
                                "': dim does not match arrays");
  }
  for (double v : stats.var) {
    if (v < 0.0) {
      throw std::invalid_argument("cmvn stats '" + path +
                                  "': negative variance");
    }
  }
  return stats;
}

}  // namespace csasr
