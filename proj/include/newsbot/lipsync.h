// Copyright 2026 The Newsbot Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef NEWSBOT_LIPSYNC_H_
#define NEWSBOT_LIPSYNC_H_

// Sliding-window lip-sync model. Each video frame t is described by the
// one-hot phoneme ids of frames t-5..t+5 (SIL outside the sequence); a
// feed-forward network maps that window to blendshape weights for frames
// t-2..t+2, and every frame's final weights are the mean of all window
// predictions that cover it.
//
// Network: hidden layers of linear -> batch norm -> tanh, dropout between
// the last hidden layer and the linear output layer.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "newsbot/phoneme_timeline.h"
#include "newsbot/random.h"

namespace newsbot {

struct FrameWindowing {
  int input_window = 11;
  int output_window = 5;
  int num_blendshapes = 32;

  // Both windows odd and >= 1; num_blendshapes >= 1. Throws kShape.
  void Validate() const;
  std::size_t InputSize(std::size_t inventory_size) const {
    return static_cast<std::size_t>(input_window) * inventory_size;
  }
  std::size_t OutputSize() const {
    return static_cast<std::size_t>(output_window) *
           static_cast<std::size_t>(num_blendshapes);
  }

  bool operator==(const FrameWindowing &other) const = default;
};

inline constexpr double kBatchNormEpsilon = 1e-5;

struct HiddenLayer {
  Eigen::MatrixXd weight;  // out x in
  Eigen::VectorXd bias;
  Eigen::VectorXd bn_scale;
  Eigen::VectorXd bn_shift;
  Eigen::VectorXd running_mean;
  Eigen::VectorXd running_var;
};

struct OutputLayer {
  Eigen::MatrixXd weight;
  Eigen::VectorXd bias;
};

struct MlpParameters {
  std::vector<HiddenLayer> hidden;
  OutputLayer output;

  std::size_t InputSize() const;
  std::size_t OutputSize() const;
  // Dimensions chain, running variances > 0, all values finite. Throws
  // Error(kShape) for shape problems and Error(kNumeric) otherwise.
  void Validate() const;
};

struct TrainingConfig {
  int batch_size = 128;
  double learning_rate = 1e-3;
  int steps = 8000;
  double dropout_p = 0.5;
  double bn_momentum = 0.9;  // running = momentum * running + (1 - momentum) * batch
  uint64_t rng_seed = 0;

  void Validate() const;  // throws Error(kUsage)
};

// Hidden widths of the full-size model.
std::vector<std::size_t> DefaultHiddenSizes();

// Weights ~ U(-sqrt(3 / fan_in), sqrt(3 / fan_in)); biases and batch-norm
// shifts 0, scales 1, running mean 0 and running variance 1.
MlpParameters InitializeMlp(std::size_t input_size,
                            std::span<const std::size_t> hidden_sizes,
                            std::size_t output_size, uint64_t seed);

// Input windows for frames 0..T-1, one column each (InputSize(P) x T). Slot
// k of column t is the one-hot code of frame t - input_window/2 + k,
// position-major; out-of-range frames encode SIL (id 0). Ids >= P raise
// Error(kValidation).
Eigen::MatrixXd OneHotWindows(std::span<const int> frame_ids, std::size_t inventory_size,
                              const FrameWindowing &windowing);

// The ids behind each one-hot window (T x input_window, SIL padded).
std::vector<std::vector<int>> WindowIds(std::span<const int> frame_ids,
                                        std::size_t inventory_size,
                                        const FrameWindowing &windowing);
Eigen::MatrixXd EncodeWindows(std::span<const std::vector<int>> windows,
                              std::size_t inventory_size);

enum class Mode { kTrain, kInfer };

// Batched forward pass, one example per column. In kTrain mode batch norm
// uses the batch statistics and, when dropout_p > 0, inverted dropout masks
// are drawn from dropout_rng (column-major). In kInfer mode the running
// statistics are used and dropout is off. Non-finite outputs raise
// Error(kNumeric).
Eigen::MatrixXd ForwardBatch(const MlpParameters &params, const Eigen::MatrixXd &inputs,
                             Mode mode, double dropout_p = 0.0,
                             RandomStream *dropout_rng = nullptr);

// Single-example convenience wrapper. Output is frame-major:
// element r * num_blendshapes + j is blendshape j of window row r.
Eigen::VectorXd Forward(const MlpParameters &params, const Eigen::VectorXd &input,
                        Mode mode, double dropout_p = 0.0,
                        RandomStream *dropout_rng = nullptr);

// Gradients with the same layout as MlpParameters (running statistics unused).
struct MlpGradients {
  std::vector<HiddenLayer> hidden;
  OutputLayer output;
};

struct BatchStatistics {
  std::vector<Eigen::VectorXd> mean;
  std::vector<Eigen::VectorXd> var;  // biased
};

// Squared-error loss summed over the output units and averaged over the
// batch, L = (1/B) sum_b ||y_b - t_b||^2, evaluated in training mode. Fills
// gradients and per-layer batch statistics when requested.
double LossAndGradients(const MlpParameters &params, const Eigen::MatrixXd &inputs,
                        const Eigen::MatrixXd &targets, double dropout_p,
                        RandomStream *dropout_rng, MlpGradients *gradients,
                        BatchStatistics *stats = nullptr);

// Training set: input windows as phoneme ids plus frame-major targets.
struct LipsyncDataset {
  std::size_t inventory_size = 0;
  FrameWindowing windowing;
  std::vector<std::vector<int>> windows;  // each input_window ids
  Eigen::MatrixXd targets;                // OutputSize() x N

  std::size_t size() const { return windows.size(); }
  void Validate() const;
};

struct TrainResult {
  MlpParameters params;
  // Per-element mean squared error of each step's mini-batch in training
  // mode (L / OutputSize()).
  std::vector<double> loss_trace;
};

// Mini-batch SGD for config.steps steps. Batches are consecutive slices of a
// seeded permutation that is redrawn each epoch (the whole set when it is
// smaller than one batch). Running statistics follow each batch with
// config.bn_momentum. A non-finite loss raises Error(kTraining) naming the
// step.
TrainResult Train(MlpParameters params, const LipsyncDataset &dataset,
                  const TrainingConfig &config);

// Per-element mean squared error in inference mode.
double EvaluateMse(const MlpParameters &params, const LipsyncDataset &dataset);

struct GradCheckResult {
  double max_relative_error = 0.0;
  std::string worst_parameter;
  std::size_t parameters_checked = 0;
};

// Compares LossAndGradients (no dropout, batch statistics of `inputs`) with
// the fourth-order central difference
//   (8 (L(p + h) - L(p - h)) - (L(p + 2h) - L(p - 2h))) / (12 h),  h = epsilon
// for every weight, bias and batch-norm scale/shift. Relative error is
// |analytic - numeric| / max(|analytic|, |numeric|, 1e-6 * max(1, |L|)).
GradCheckResult GradCheck(const MlpParameters &params, const Eigen::MatrixXd &inputs,
                          const Eigen::MatrixXd &targets, double epsilon);

// Frame f is the mean over windows t with |t - f| <= output_window/2 of row
// f - t + output_window/2 of window t, clamped to [0, 1].
// predictions: OutputSize() x T.
std::vector<std::vector<double>> BlendWindows(const Eigen::MatrixXd &predictions,
                                              std::size_t frame_count,
                                              const FrameWindowing &windowing);

struct BlendshapeAnimation {
  double fps = 25.0;
  int num_blendshapes = 32;
  std::vector<std::vector<double>> frames;

  bool operator==(const BlendshapeAnimation &other) const = default;
};

struct LipsyncModel {
  FrameWindowing windowing;
  PhonemeInventory inventory;
  bool prosodic_inventory = false;
  TrainingConfig training;
  MlpParameters params;
};

// timeline -> frames -> one-hot windows -> inference -> blending. The
// timeline's inventory must equal the model's (Error(kValidation)).
BlendshapeAnimation SynthesizeAnimation(const LipsyncModel &model,
                                        const PhonemeTimeline &timeline, double fps);

struct SyntheticTaskConfig {
  std::size_t inventory_size = 8;  // including SIL
  FrameWindowing windowing;
  std::size_t sequences = 64;
  std::size_t sequence_frames = 64;
  int min_run = 2;  // frames per phoneme
  int max_run = 6;
  double silence_probability = 0.15;
  double noise = 0.01;  // uniform noise amplitude added to targets
  uint64_t seed = 0;
};

struct SyntheticTask {
  LipsyncDataset dataset;
  Eigen::MatrixXd poses;  // num_blendshapes x inventory_size; SIL column is 0
};

// Random phoneme runs; every phoneme maps to a fixed pose in [0.1, 0.9]
// (SIL to zero) and a window's targets are the poses of frames t-2..t+2
// plus seeded uniform noise.
SyntheticTask MakeSyntheticTask(const SyntheticTaskConfig &config);

}  // namespace newsbot

#endif  // NEWSBOT_LIPSYNC_H_
