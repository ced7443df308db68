// tests/test_features.cc

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

#include <cmath>
#include <filesystem>

#include "csasr/common.h"
#include <fstream>
#include <numbers>
#include <random>
#include <stdexcept>

#include "csasr/wav.h"
#include "doctest.h"

using csasr::ApplyCmvn;
using csasr::AudioBuffer;
using csasr::CmvnStats;
using csasr::ComputeCmvn;
using csasr::FeatureMatrix;
using csasr::LoadFeatureMatrix;
using csasr::LogMel;
using csasr::PitchFeatures;
using csasr::SaveFeatureMatrix;
using csasr::SpecAugment;
using csasr::SpecAugmentConfig;
using csasr::SpeedPerturb;
using csasr::StackFeatures;

namespace {

AudioBuffer Sine(double freq_hz, double seconds = 1.0, int fs = 16000,
                 double amplitude = 0.5) {
  AudioBuffer audio;
  audio.sample_rate_hz = fs;
  size_t n = static_cast<size_t>(seconds * fs);
  audio.samples.resize(n);
  for (size_t i = 0; i < n; ++i) {
    audio.samples[i] = static_cast<float>(
        amplitude * std::sin(2.0 * std::numbers::pi * freq_hz * i / fs));
  }
  return audio;
}

AudioBuffer Noise(size_t n, uint32_t seed, int fs = 16000) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<float> dist(-0.5f, 0.5f);
  AudioBuffer audio;
  audio.sample_rate_hz = fs;
  audio.samples.resize(n);
  for (auto& s : audio.samples) s = dist(rng);
  return audio;
}

FeatureMatrix RandomMatrix(int rows, int cols, uint32_t seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<float> dist(0.0f, 2.0f);
  FeatureMatrix m = FeatureMatrix::Zeros(rows, cols);
  for (auto& v : m.data) v = dist(rng);
  return m;
}

int CountChangedCells(const FeatureMatrix& a, const FeatureMatrix& b) {
  int changed = 0;
  for (size_t i = 0; i < a.data.size(); ++i) {
    if (a.data[i] != b.data[i]) ++changed;
  }
  return changed;
}

}  // namespace

TEST_CASE("speed perturbation lengths") {
  AudioBuffer one_second = Sine(440.0);
  REQUIRE(one_second.samples.size() == 16000);

  AudioBuffer same = SpeedPerturb(one_second, 1.0);
  REQUIRE(same.samples.size() == 16000);
  for (size_t i = 0; i < same.samples.size(); ++i) {
    CHECK(std::abs(same.samples[i] - one_second.samples[i]) < 1e-6f);
  }

  size_t fast = SpeedPerturb(one_second, 1.1).samples.size();
  CHECK((fast == 14545 || fast == 14546));
  size_t slow = SpeedPerturb(one_second, 0.9).samples.size();
  CHECK((slow == 17777 || slow == 17778));

  for (double factor : {0.8, 0.9, 1.0, 1.05, 1.1, 1.5}) {
    double expected = 16000.0 / factor;
    double actual = SpeedPerturb(one_second, factor).samples.size();
    CHECK(std::abs(actual - expected) <= 1.0);
  }
  CHECK_THROWS_AS(SpeedPerturb(one_second, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(SpeedPerturb(one_second, -1.0), std::invalid_argument);
}

TEST_CASE("speed perturbation keeps a tone a tone") {
  // 200 Hz played 10% faster should read as ~220 Hz.
  AudioBuffer tone = Sine(200.0);
  FeatureMatrix pitch = PitchFeatures(SpeedPerturb(tone, 1.1));
  std::vector<float> values;
  for (int t = 0; t < pitch.rows; ++t) {
    values.push_back(std::exp(pitch.At(t, 1)));
  }
  std::nth_element(values.begin(), values.begin() + values.size() / 2,
                   values.end());
  CHECK(values[values.size() / 2] == doctest::Approx(220.0).epsilon(0.05));
}

TEST_CASE("log mel frame geometry") {
  FeatureMatrix mel = LogMel(Sine(440.0));
  CHECK(mel.rows == 98);  // 1 + (16000 - 400) / 160
  CHECK(mel.cols == 80);
  CHECK(mel.frame_shift_ms == 10.0f);

  // Too short for one 25 ms window.
  AudioBuffer tiny;
  tiny.sample_rate_hz = 16000;
  tiny.samples.assign(300, 0.0f);
  CHECK_THROWS_AS(LogMel(tiny), std::invalid_argument);
}

TEST_CASE("silence hits the log floor everywhere") {
  AudioBuffer silence;
  silence.sample_rate_hz = 16000;
  silence.samples.assign(16000, 0.0f);
  FeatureMatrix mel = LogMel(silence);
  const float floor_value = std::log(1e-10f);
  for (float v : mel.data) {
    CHECK(v == doctest::Approx(floor_value).epsilon(1e-6));
  }
}

TEST_CASE("a pure tone lands in the right mel bin") {
  FeatureMatrix mel = LogMel(Sine(1000.0));
  // argmax over bins, averaged across frames
  std::vector<double> avg(mel.cols, 0.0);
  for (int t = 0; t < mel.rows; ++t) {
    for (int d = 0; d < mel.cols; ++d) avg[d] += mel.At(t, d);
  }
  int best = 0;
  for (int d = 1; d < mel.cols; ++d) {
    if (avg[d] > avg[best]) best = d;
  }
  // The winning filter's support must bracket 1 kHz. Reconstruct the
  // filter edges from the same mel-scale definition.
  auto mel_of = [](double hz) { return 1127.0 * std::log1p(hz / 700.0); };
  auto hz_of = [](double mel) { return 700.0 * (std::exp(mel / 1127.0) - 1.0); };
  double lo_mel = mel_of(20.0), hi_mel = mel_of(8000.0);
  double lo = hz_of(lo_mel + (hi_mel - lo_mel) * best / 81.0);
  double hi = hz_of(lo_mel + (hi_mel - lo_mel) * (best + 2) / 81.0);
  CHECK(lo <= 1000.0);
  CHECK(hi >= 1000.0);
}

TEST_CASE("log mel grows monotonically with amplitude") {
  FeatureMatrix quiet = LogMel(Sine(500.0, 1.0, 16000, 0.2));
  FeatureMatrix loud = LogMel(Sine(500.0, 1.0, 16000, 0.4));
  const float floor_value = std::log(1e-10f);
  for (size_t i = 0; i < quiet.data.size(); ++i) {
    if (quiet.data[i] > floor_value + 1e-3f) {
      CHECK(loud.data[i] > quiet.data[i]);
    }
  }
}

TEST_CASE("pitch features on a 200 Hz tone") {
  AudioBuffer tone = Sine(200.0);
  FeatureMatrix pitch = PitchFeatures(tone);
  CHECK(pitch.cols == 3);
  CHECK(pitch.rows == LogMel(tone).rows);

  std::vector<double> estimates;
  for (int t = 0; t < pitch.rows; ++t) {
    estimates.push_back(std::exp(pitch.At(t, 1)));
  }
  std::nth_element(estimates.begin(), estimates.begin() + estimates.size() / 2,
                   estimates.end());
  double median = estimates[estimates.size() / 2];
  CHECK(std::abs(median - 200.0) <= 5.0);
}

TEST_CASE("pitch stays finite through unvoiced stretches") {
  // Half tone, half silence: the silent frames take interpolated pitch.
  AudioBuffer half = Sine(200.0, 0.5);
  half.samples.resize(16000, 0.0f);
  FeatureMatrix pitch = PitchFeatures(half);
  CHECK(pitch.rows == 98);
  for (float v : pitch.data) CHECK(std::isfinite(v));

  // Fully silent audio keeps a finite default track with low POV.
  AudioBuffer silence;
  silence.sample_rate_hz = 16000;
  silence.samples.assign(16000, 0.0f);
  FeatureMatrix flat = PitchFeatures(silence);
  for (int t = 0; t < flat.rows; ++t) {
    CHECK(std::isfinite(flat.At(t, 1)));
    CHECK(flat.At(t, 0) < 0.45f);
  }
}

TEST_CASE("voicing proxy separates tone from noise") {
  FeatureMatrix tone = PitchFeatures(Sine(200.0));
  FeatureMatrix noise = PitchFeatures(Noise(16000, 8));
  auto mean_pov = [](const FeatureMatrix& m) {
    double acc = 0.0;
    for (int t = 0; t < m.rows; ++t) acc += m.At(t, 0);
    return acc / m.rows;
  };
  CHECK(mean_pov(noise) < mean_pov(tone));
}

TEST_CASE("stacking mel and pitch") {
  AudioBuffer tone = Sine(300.0);
  FeatureMatrix mel = LogMel(tone);
  FeatureMatrix pitch = PitchFeatures(tone);
  FeatureMatrix stacked = StackFeatures(mel, pitch);
  CHECK(stacked.rows == 98);
  CHECK(stacked.cols == 83);
  for (int t = 0; t < stacked.rows; ++t) {
    for (int d = 0; d < 80; ++d) CHECK(stacked.At(t, d) == mel.At(t, d));
    for (int d = 0; d < 3; ++d) CHECK(stacked.At(t, 80 + d) == pitch.At(t, d));
  }

  FeatureMatrix short_pitch = FeatureMatrix::Zeros(97, 3);
  CHECK_THROWS_AS(StackFeatures(mel, short_pitch), std::invalid_argument);
}

TEST_CASE("cmvn standardizes every dimension") {
  FeatureMatrix m = RandomMatrix(98, 83, 5);
  FeatureMatrix normalized = ApplyCmvn(m);
  for (int d = 0; d < normalized.cols; ++d) {
    double mean = 0.0, var = 0.0;
    for (int t = 0; t < normalized.rows; ++t) mean += normalized.At(t, d);
    mean /= normalized.rows;
    for (int t = 0; t < normalized.rows; ++t) {
      double delta = normalized.At(t, d) - mean;
      var += delta * delta;
    }
    var /= normalized.rows;
    CHECK(std::abs(mean) < 1e-6);
    CHECK(std::abs(var - 1.0) < 1e-6);
  }
  // Idempotent within tolerance.
  FeatureMatrix twice = ApplyCmvn(normalized);
  for (size_t i = 0; i < twice.data.size(); ++i) {
    CHECK(twice.data[i] == doctest::Approx(normalized.data[i]).epsilon(1e-4));
  }
}

TEST_CASE("cmvn leaves degenerate dimensions centered only") {
  FeatureMatrix m = FeatureMatrix::Zeros(10, 2);
  for (int t = 0; t < 10; ++t) {
    m.At(t, 0) = 4.5f;                          // constant
    m.At(t, 1) = static_cast<float>(t);         // varying
  }
  FeatureMatrix normalized = ApplyCmvn(m);
  for (int t = 0; t < 10; ++t) CHECK(normalized.At(t, 0) == 0.0f);
}

TEST_CASE("cmvn with precomputed statistics matches self-statistics") {
  FeatureMatrix m = RandomMatrix(50, 10, 6);
  CmvnStats stats = ComputeCmvn(m);
  FeatureMatrix via_stats = ApplyCmvn(m, &stats);
  FeatureMatrix self = ApplyCmvn(m);
  CHECK(via_stats.data == self.data);

  FeatureMatrix one_row = FeatureMatrix::Zeros(1, 4);
  CHECK_THROWS_AS(ApplyCmvn(one_row), std::invalid_argument);

  CmvnStats wrong_dim = stats;
  wrong_dim.dim = 7;
  wrong_dim.mean.resize(7);
  wrong_dim.var.resize(7);
  CHECK_THROWS_AS(ApplyCmvn(m, &wrong_dim), std::invalid_argument);
}

TEST_CASE("specaugment geometry and determinism") {
  FeatureMatrix m = RandomMatrix(98, 83, 7);

  SpecAugmentConfig identity;
  identity.num_freq_masks = 0;
  identity.num_time_masks = 0;
  CHECK(SpecAugment(m, identity).data == m.data);

  SpecAugmentConfig freq_only;
  freq_only.num_freq_masks = 1;
  freq_only.max_freq_width = 10;
  freq_only.num_time_masks = 0;
  freq_only.seed = 21;
  FeatureMatrix masked = SpecAugment(m, freq_only);
  CHECK(CountChangedCells(m, masked) == 10 * 98);

  SpecAugmentConfig time_only;
  time_only.num_freq_masks = 0;
  time_only.num_time_masks = 1;
  time_only.max_time_width = 7;
  time_only.seed = 21;
  CHECK(CountChangedCells(m, SpecAugment(m, time_only)) == 7 * 83);

  SpecAugmentConfig both;
  both.seed = 9;
  FeatureMatrix a = SpecAugment(m, both);
  FeatureMatrix b = SpecAugment(m, both);
  CHECK(a.data == b.data);

  SpecAugmentConfig other = both;
  other.seed = 10;
  CHECK(SpecAugment(m, other).data != a.data);

  SpecAugmentConfig too_wide;
  too_wide.num_freq_masks = 1;
  too_wide.max_freq_width = 84;
  CHECK_THROWS_AS(SpecAugment(m, too_wide), std::invalid_argument);
  SpecAugmentConfig too_long;
  too_long.num_time_masks = 1;
  too_long.max_time_width = 99;
  CHECK_THROWS_AS(SpecAugment(m, too_long), std::invalid_argument);
}

TEST_CASE("specaugment masks carry the per-dimension mean") {
  FeatureMatrix m = RandomMatrix(40, 12, 11);
  SpecAugmentConfig config;
  config.num_freq_masks = 0;
  config.num_time_masks = 1;
  config.max_time_width = 5;
  config.seed = 3;
  FeatureMatrix masked = SpecAugment(m, config);
  // Recover the masked rows and check the fill values.
  CmvnStats stats = ComputeCmvn(m);
  for (int t = 0; t < m.rows; ++t) {
    if (masked.At(t, 0) != m.At(t, 0)) {
      for (int d = 0; d < m.cols; ++d) {
        CHECK(masked.At(t, d) ==
              doctest::Approx(stats.mean[d]).epsilon(1e-5));
      }
    }
  }
}

TEST_CASE("feature matrix binary format") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "csasr-feat-test";
  fs::create_directories(dir);
  fs::path path = dir / "m.fea";

  FeatureMatrix m = RandomMatrix(17, 5, 13);
  m.frame_shift_ms = 10.0f;
  m.frame_length_ms = 25.0f;
  SaveFeatureMatrix(m, path.string());
  FeatureMatrix loaded = LoadFeatureMatrix(path.string());
  CHECK(loaded.rows == m.rows);
  CHECK(loaded.cols == m.cols);
  CHECK(loaded.frame_shift_ms == m.frame_shift_ms);
  CHECK(loaded.frame_length_ms == m.frame_length_ms);
  CHECK(loaded.data == m.data);

  // Little-endian header layout.
  std::ifstream in(path, std::ios::binary);
  std::string bytes((std::istreambuf_iterator<char>(in)),
                    std::istreambuf_iterator<char>());
  REQUIRE(bytes.size() == 20 + 17 * 5 * 4);
  CHECK(bytes.compare(0, 4, "CSFM") == 0);
  CHECK(static_cast<unsigned char>(bytes[4]) == 17);
  CHECK(static_cast<unsigned char>(bytes[5]) == 0);
  CHECK(static_cast<unsigned char>(bytes[8]) == 5);

  CHECK_THROWS_AS(LoadFeatureMatrix((dir / "missing.fea").string()),
                  csasr::IoError);
  fs::remove_all(dir);
}

TEST_CASE("wav io round trip") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "csasr-wav-test";
  fs::create_directories(dir);
  fs::path path = dir / "t.wav";

  AudioBuffer tone = Sine(440.0, 0.25);
  csasr::SaveWav(tone, path.string());
  AudioBuffer loaded = csasr::LoadWav(path.string());
  CHECK(loaded.sample_rate_hz == tone.sample_rate_hz);
  REQUIRE(loaded.samples.size() == tone.samples.size());
  for (size_t i = 0; i < loaded.samples.size(); ++i) {
    CHECK(std::abs(loaded.samples[i] - tone.samples[i]) <= 1.0f / 32768.0f);
  }
  fs::remove_all(dir);
}

TEST_CASE("cmvn stats json round trip") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "csasr-cmvn-test";
  fs::create_directories(dir);
  fs::path path = dir / "stats.json";

  CmvnStats stats = ComputeCmvn(RandomMatrix(30, 4, 19));
  csasr::SaveCmvnStats(stats, path.string());
  CmvnStats loaded = csasr::LoadCmvnStats(path.string());
  CHECK(loaded.dim == stats.dim);
  CHECK(loaded.mean == stats.mean);
  CHECK(loaded.var == stats.var);
  fs::remove_all(dir);
}
