// tests/test_ctc.cc

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

#include "csasr/ctc.h"

#include <cmath>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "oracles.h"

using csasr::CeLoss;
using csasr::CombineLosses;
using csasr::CtcGrad;
using csasr::CtcLoss;
using csasr::GreedyDecode;
using csasr::LogProbMatrix;
using csasr_test::BruteForceCtcProb;
using csasr_test::RandomFeasibleLabels;
using csasr_test::RandomLogProb;

namespace {

LogProbMatrix FromProbs(const std::vector<std::vector<double>>& rows) {
  LogProbMatrix logp;
  logp.num_frames = static_cast<int>(rows.size());
  logp.vocab_size = static_cast<int>(rows[0].size());
  for (const auto& row : rows) {
    for (double p : row) logp.values.push_back(std::log(p));
  }
  return logp;
}

LogProbMatrix Uniform(int T, int V) {
  std::vector<std::vector<double>> rows(T, std::vector<double>(V, 1.0 / V));
  return FromProbs(rows);
}

// log_softmax over explicit logits, the representation CtcGrad
// differentiates against.
LogProbMatrix FromLogits(const std::vector<double>& logits, int T, int V) {
  LogProbMatrix logp;
  logp.num_frames = T;
  logp.vocab_size = V;
  logp.values.resize(logits.size());
  for (int t = 0; t < T; ++t) {
    double mx = logits[t * V];
    for (int v = 1; v < V; ++v) mx = std::max(mx, logits[t * V + v]);
    double z = 0.0;
    for (int v = 0; v < V; ++v) z += std::exp(logits[t * V + v] - mx);
    double log_z = mx + std::log(z);
    for (int v = 0; v < V; ++v) {
      logp.At(t, v) = logits[t * V + v] - log_z;
    }
  }
  return logp;
}

}  // namespace

TEST_CASE("ctc loss matches hand-enumerated paths") {
  // T=2, V=2, uniform: paths aa, a-, -a collapse to [1]; p = 3/4.
  LogProbMatrix logp = Uniform(2, 2);
  double loss = CtcLoss(logp, {1});
  CHECK(loss == doctest::Approx(-std::log(0.75)).epsilon(1e-12));
  CHECK(loss == doctest::Approx(0.2876820724517809).epsilon(1e-12));

  // T=1: single feasible path.
  LogProbMatrix one = FromProbs({{0.3, 0.7}});
  CHECK(CtcLoss(one, {1}) ==
        doctest::Approx(0.35667494393873245).epsilon(1e-12));
}

TEST_CASE("ctc loss rejects infeasible instances") {
  LogProbMatrix one = FromProbs({{0.3, 0.7}});
  CHECK_THROWS_AS(CtcLoss(one, {1, 1}), std::invalid_argument);
  LogProbMatrix logp = Uniform(1, 3);
  CHECK_THROWS_AS(CtcLoss(logp, {1, 2}), std::invalid_argument);
  // Adjacent duplicates need a separating blank.
  LogProbMatrix three = Uniform(2, 2);
  CHECK_THROWS_AS(CtcLoss(three, {1, 1}), std::invalid_argument);
}

TEST_CASE("ctc loss rejects bad labels and matrices") {
  LogProbMatrix logp = Uniform(3, 3);
  CHECK_THROWS_AS(CtcLoss(logp, {0}), std::invalid_argument);   // blank
  CHECK_THROWS_AS(CtcLoss(logp, {3}), std::invalid_argument);   // range
  CHECK_THROWS_AS(CtcLoss(logp, {-1}), std::invalid_argument);
  LogProbMatrix bad = Uniform(2, 2);
  bad.At(0, 0) = std::log(0.9);  // row no longer sums to 1
  CHECK_THROWS_AS(CtcLoss(bad, {1}), std::invalid_argument);
}

TEST_CASE("ctc loss equals brute-force path enumeration") {
  std::mt19937 rng(20260810);
  for (int it = 0; it < 200; ++it) {
    int T = 1 + static_cast<int>(rng() % 6);
    int V = 2 + static_cast<int>(rng() % 3);
    LogProbMatrix logp = RandomLogProb(rng, T, V);
    std::vector<int> labels = RandomFeasibleLabels(rng, T, V, 3);
    double expected = BruteForceCtcProb(logp, labels);
    double actual = std::exp(-CtcLoss(logp, labels));
    CHECK(std::abs(actual - expected) < 1e-9);
  }
}

TEST_CASE("ctc total probability over feasible label sequences is 1") {
  std::mt19937 rng(7);
  LogProbMatrix logp = RandomLogProb(rng, 3, 3);
  // All label sequences over {1, 2} of length 0..3.
  double total = 0.0;
  std::vector<std::vector<int>> sequences = {{}};
  for (int len = 1; len <= 3; ++len) {
    std::vector<std::vector<int>> next;
    for (int a = 1; a <= 2; ++a) {
      for (const auto& seq : sequences) {
        if (static_cast<int>(seq.size()) == len - 1) {
          auto extended = seq;
          extended.push_back(a);
          next.push_back(extended);
        }
      }
    }
    sequences.insert(sequences.end(), next.begin(), next.end());
  }
  for (const auto& labels : sequences) {
    int dups = 0;
    for (size_t i = 1; i < labels.size(); ++i) {
      if (labels[i] == labels[i - 1]) ++dups;
    }
    if (static_cast<int>(labels.size()) + dups > 3) continue;
    total += std::exp(-CtcLoss(logp, labels));
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("ctc gradient rows sum to zero") {
  std::mt19937 rng(11);
  LogProbMatrix logp = RandomLogProb(rng, 5, 4);
  std::vector<int> labels = {1, 3, 2};
  std::vector<double> grad = CtcGrad(logp, labels);
  for (int t = 0; t < 5; ++t) {
    double row_sum = 0.0;
    for (int v = 0; v < 4; ++v) row_sum += grad[t * 4 + v];
    CHECK(std::abs(row_sum) < 1e-9);
  }
}

TEST_CASE("ctc gradient matches central finite differences") {
  std::mt19937 rng(13);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const int T = 5, V = 4;
  const double eps = 1e-5;
  for (int it = 0; it < 25; ++it) {
    std::vector<double> logits(T * V);
    for (double& z : logits) z = gauss(rng);
    std::vector<int> labels = RandomFeasibleLabels(rng, T, V, 3);
    std::vector<double> grad = CtcGrad(FromLogits(logits, T, V), labels);
    for (int k = 0; k < T * V; ++k) {
      auto plus = logits, minus = logits;
      plus[k] += eps;
      minus[k] -= eps;
      double fd = (CtcLoss(FromLogits(plus, T, V), labels) -
                   CtcLoss(FromLogits(minus, T, V), labels)) /
                  (2 * eps);
      CHECK(std::abs(grad[k] - fd) < 1e-4 * std::max(1.0, std::abs(fd)));
    }
  }
}

TEST_CASE("uniform rows make the per-frame gradients equal") {
  LogProbMatrix logp = Uniform(2, 2);
  std::vector<double> grad = CtcGrad(logp, {1});
  CHECK(grad[0] == doctest::Approx(grad[2]).epsilon(1e-12));
  CHECK(grad[1] == doctest::Approx(grad[3]).epsilon(1e-12));
}

TEST_CASE("cross entropy") {
  LogProbMatrix perfect = FromProbs({{1e-12, 1.0 - 2e-12, 1e-12}});
  CHECK(CeLoss(perfect, {1}) == doctest::Approx(0.0).epsilon(1e-9));

  LogProbMatrix logp = Uniform(3, 4);
  CHECK(CeLoss(logp, {1, 2, 3}) ==
        doctest::Approx(std::log(4.0)).epsilon(1e-12));

  CHECK_THROWS_AS(CeLoss(logp, {1, 2}), std::invalid_argument);
}

TEST_CASE("loss combination") {
  CHECK(CombineLosses(1.0, 2.0, 0.3) == 1.7);
  CHECK(CombineLosses(1.25, 2.0, 1.0) == 1.25);
  CHECK(CombineLosses(1.25, 2.0, 0.0) == 2.0);
  CHECK_THROWS_AS(CombineLosses(1.0, 2.0, -0.1), std::invalid_argument);
  CHECK_THROWS_AS(CombineLosses(1.0, 2.0, 1.1), std::invalid_argument);
  // Monotone in each argument.
  CHECK(CombineLosses(2.0, 2.0, 0.3) > CombineLosses(1.0, 2.0, 0.3));
  CHECK(CombineLosses(1.0, 3.0, 0.3) > CombineLosses(1.0, 2.0, 0.3));
}

TEST_CASE("greedy decoding collapses best paths") {
  auto from_path = [](const std::vector<int>& path, int V) {
    std::vector<std::vector<double>> rows;
    for (int symbol : path) {
      std::vector<double> row(V, 0.1 / (V - 1));
      row[symbol] = 0.9;
      rows.push_back(row);
    }
    return FromProbs(rows);
  };
  CHECK(GreedyDecode(from_path({1, 1, 0, 2}, 3)) == std::vector<int>{1, 2});
  CHECK(GreedyDecode(from_path({0, 0, 0}, 3)).empty());
  CHECK(GreedyDecode(from_path({1, 0, 1}, 3)) == std::vector<int>{1, 1});
  // Ties break toward the lower id.
  CHECK(GreedyDecode(Uniform(1, 4)).empty());  // argmax is blank
  LogProbMatrix tie = FromProbs({{0.2, 0.4, 0.4}});
  CHECK(GreedyDecode(tie) == std::vector<int>{1});
}
