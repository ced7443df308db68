// csasr/ctc.cc

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

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace csasr {

namespace {

constexpr double kLogZero = -std::numeric_limits<double>::infinity();

double LogAdd(double a, double b) {
  if (a == kLogZero) return b;
  if (b == kLogZero) return a;
  double hi = std::max(a, b), lo = std::min(a, b);
  return hi + std::log1p(std::exp(lo - hi));
}

// Extended label sequence: blank, l1, blank, l2, ..., blank.
std::vector<int> ExtendLabels(const std::vector<int>& labels, int blank) {
  std::vector<int> ext;
  ext.reserve(2 * labels.size() + 1);
  ext.push_back(blank);
  for (int label : labels) {
    ext.push_back(label);
    ext.push_back(blank);
  }
  return ext;
}

void ValidateLabels(const LogProbMatrix& logp, const std::vector<int>& labels) {
  for (int label : labels) {
    if (label == logp.blank_id) {
      throw std::invalid_argument("labels must not contain the blank id");
    }
    if (label < 0 || label >= logp.vocab_size) {
      throw std::invalid_argument("label id " + std::to_string(label) +
                                  " out of range [0, " +
                                  std::to_string(logp.vocab_size) + ")");
    }
  }
}

int AdjacentDuplicates(const std::vector<int>& labels) {
  int dups = 0;
  for (size_t i = 1; i < labels.size(); ++i) {
    if (labels[i] == labels[i - 1]) ++dups;
  }
  return dups;
}

void CheckFeasible(const LogProbMatrix& logp, const std::vector<int>& labels) {
  int needed = static_cast<int>(labels.size()) + AdjacentDuplicates(labels);
  if (logp.num_frames < needed) {
    throw std::invalid_argument(
        "infeasible CTC instance: " + std::to_string(logp.num_frames) +
        " frames for a label sequence needing at least " +
        std::to_string(needed));
  }
}

// Forward variables: alpha[t][s] includes the emission at frame t.
std::vector<double> Forward(const LogProbMatrix& logp,
                            const std::vector<int>& ext) {
  int T = logp.num_frames;
  int S = static_cast<int>(ext.size());
  std::vector<double> alpha(static_cast<size_t>(T) * S, kLogZero);
  alpha[0] = logp.At(0, ext[0]);
  if (S > 1) alpha[1] = logp.At(0, ext[1]);
  for (int t = 1; t < T; ++t) {
    for (int s = 0; s < S; ++s) {
      double acc = alpha[(t - 1) * S + s];
      if (s >= 1) acc = LogAdd(acc, alpha[(t - 1) * S + s - 1]);
      if (s >= 2 && ext[s] != logp.blank_id && ext[s] != ext[s - 2]) {
        acc = LogAdd(acc, alpha[(t - 1) * S + s - 2]);
      }
      alpha[t * S + s] =
          acc == kLogZero ? kLogZero : acc + logp.At(t, ext[s]);
    }
  }
  return alpha;
}

// Backward variables: beta[t][s] covers frames t+1..T-1 only, so that
// alpha[t][s] + beta[t][s] log-sums to the total log-probability at any t.
std::vector<double> Backward(const LogProbMatrix& logp,
                             const std::vector<int>& ext) {
  int T = logp.num_frames;
  int S = static_cast<int>(ext.size());
  std::vector<double> beta(static_cast<size_t>(T) * S, kLogZero);
  beta[(T - 1) * S + S - 1] = 0.0;
  if (S > 1) beta[(T - 1) * S + S - 2] = 0.0;
  for (int t = T - 2; t >= 0; --t) {
    for (int s = S - 1; s >= 0; --s) {
      double acc = beta[(t + 1) * S + s] + logp.At(t + 1, ext[s]);
      if (s + 1 < S) {
        acc = LogAdd(acc,
                     beta[(t + 1) * S + s + 1] + logp.At(t + 1, ext[s + 1]));
      }
      if (s + 2 < S && ext[s + 2] != logp.blank_id && ext[s + 2] != ext[s]) {
        acc = LogAdd(acc,
                     beta[(t + 1) * S + s + 2] + logp.At(t + 1, ext[s + 2]));
      }
      beta[t * S + s] = acc;
    }
  }
  return beta;
}

double TotalLogProb(const std::vector<double>& alpha, int T, int S) {
  double total = alpha[(T - 1) * S + S - 1];
  if (S > 1) total = LogAdd(total, alpha[(T - 1) * S + S - 2]);
  return total;
}

}  // namespace

void ValidateLogProbMatrix(const LogProbMatrix& logp) {
  if (logp.num_frames < 1 || logp.vocab_size < 2) {
    throw std::invalid_argument("log-prob matrix needs T >= 1 and V >= 2");
  }
  if (logp.values.size() !=
      static_cast<size_t>(logp.num_frames) * logp.vocab_size) {
    throw std::invalid_argument("log-prob matrix storage size mismatch");
  }
  if (logp.blank_id < 0 || logp.blank_id >= logp.vocab_size) {
    throw std::invalid_argument("blank id out of range");
  }
  for (int t = 0; t < logp.num_frames; ++t) {
    double sum = 0.0;
    for (int v = 0; v < logp.vocab_size; ++v) sum += std::exp(logp.At(t, v));
    if (std::abs(sum - 1.0) > 1e-6) {
      throw std::invalid_argument(
          "log-prob row " + std::to_string(t) +
          " is not normalized (exp-sum " + std::to_string(sum) + ")");
    }
  }
}

double CtcLoss(const LogProbMatrix& logp, const std::vector<int>& labels) {
  ValidateLogProbMatrix(logp);
  ValidateLabels(logp, labels);
  CheckFeasible(logp, labels);
  std::vector<int> ext = ExtendLabels(labels, logp.blank_id);
  std::vector<double> alpha = Forward(logp, ext);
  double total =
      TotalLogProb(alpha, logp.num_frames, static_cast<int>(ext.size()));
  return -total;
}

std::vector<double> CtcGrad(const LogProbMatrix& logp,
                            const std::vector<int>& labels) {
  ValidateLogProbMatrix(logp);
  ValidateLabels(logp, labels);
  CheckFeasible(logp, labels);
  int T = logp.num_frames;
  int V = logp.vocab_size;
  std::vector<int> ext = ExtendLabels(labels, logp.blank_id);
  int S = static_cast<int>(ext.size());
  std::vector<double> alpha = Forward(logp, ext);
  std::vector<double> beta = Backward(logp, ext);
  double log_z = TotalLogProb(alpha, T, S);

  // grad wrt logits = softmax - posterior occupancy per symbol.
  std::vector<double> grad(static_cast<size_t>(T) * V, 0.0);
  for (int t = 0; t < T; ++t) {
    std::vector<double> log_gamma(V, kLogZero);
    for (int s = 0; s < S; ++s) {
      double joint = alpha[t * S + s] + beta[t * S + s];
      log_gamma[ext[s]] = LogAdd(log_gamma[ext[s]], joint);
    }
    for (int v = 0; v < V; ++v) {
      double occupancy =
          log_gamma[v] == kLogZero ? 0.0 : std::exp(log_gamma[v] - log_z);
      grad[t * V + v] = std::exp(logp.At(t, v)) - occupancy;
    }
  }
  return grad;
}

double CeLoss(const LogProbMatrix& logp, const std::vector<int>& labels) {
  ValidateLogProbMatrix(logp);
  ValidateLabels(logp, labels);
  if (logp.num_frames != static_cast<int>(labels.size())) {
    throw std::invalid_argument(
        "cross entropy needs one output distribution per target position (" +
        std::to_string(logp.num_frames) + " rows for " +
        std::to_string(labels.size()) + " labels)");
  }
  double sum = 0.0;
  for (size_t t = 0; t < labels.size(); ++t) {
    sum += logp.At(static_cast<int>(t), labels[t]);
  }
  return -sum / static_cast<double>(labels.size());
}

double CombineLosses(double ctc, double ce, double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw std::invalid_argument("alpha must lie in [0, 1]");
  }
  double weighted_ctc = alpha * ctc;
  double weighted_ce = (1.0 - alpha) * ce;
  return weighted_ctc + weighted_ce;
}

std::vector<int> GreedyDecode(const LogProbMatrix& logp) {
  ValidateLogProbMatrix(logp);
  std::vector<int> path(logp.num_frames);
  for (int t = 0; t < logp.num_frames; ++t) {
    int best = 0;
    for (int v = 1; v < logp.vocab_size; ++v) {
      if (logp.At(t, v) > logp.At(t, best)) best = v;
    }
    path[t] = best;
  }
  std::vector<int> out;
  int prev = -1;
  for (int symbol : path) {
    if (symbol != prev && symbol != logp.blank_id) out.push_back(symbol);
    prev = symbol;
  }
  return out;
}

}  // namespace csasr
