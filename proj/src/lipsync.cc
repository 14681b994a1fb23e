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

#include "newsbot/lipsync.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include "newsbot/error.h"

namespace newsbot {
namespace {

// Random-stream labels.
constexpr uint64_t kInitStream = 1;
constexpr uint64_t kShuffleStream = 2;
constexpr uint64_t kDropoutStream = 3;
constexpr uint64_t kSyntheticStream = 4;

bool AllFinite(const Eigen::MatrixXd &m) { return m.allFinite(); }

void CheckFinite(const Eigen::MatrixXd &m, const char *what) {
  if (!AllFinite(m)) throw Error(ErrorKind::kNumeric, std::string("non-finite ") + what);
}

// Activations retained for the backward pass.
struct LayerTrace {
  Eigen::MatrixXd xhat;        // normalized pre-activation
  Eigen::VectorXd inv_std;     // 1 / sqrt(var + eps)
  Eigen::MatrixXd activation;  // tanh output
  Eigen::VectorXd mean;
  Eigen::VectorXd var;
};

struct ForwardTrace {
  std::vector<LayerTrace> layers;
  Eigen::MatrixXd dropout_scale;  // empty when dropout is off
  Eigen::MatrixXd last_hidden;    // after dropout, input to the output layer
  Eigen::MatrixXd output;
};

void ForwardImpl(const MlpParameters &params, const Eigen::MatrixXd &inputs, Mode mode,
                 double dropout_p, RandomStream *dropout_rng, ForwardTrace &trace) {
  params.Validate();
  if (static_cast<std::size_t>(inputs.rows()) != params.InputSize()) {
    throw Error(ErrorKind::kShape, "input length " + std::to_string(inputs.rows()) +
                                       " does not match network input " +
                                       std::to_string(params.InputSize()));
  }
  const Eigen::Index batch = inputs.cols();
  trace.layers.clear();
  trace.layers.reserve(params.hidden.size());
  const Eigen::MatrixXd *current = &inputs;
  for (const HiddenLayer &layer : params.hidden) {
    LayerTrace lt;
    Eigen::MatrixXd z = layer.weight * (*current);
    z.colwise() += layer.bias;
    if (mode == Mode::kTrain) {
      if (batch == 0) throw Error(ErrorKind::kShape, "empty training batch");
      lt.mean = z.rowwise().mean();
      z.colwise() -= lt.mean;
      lt.var = z.array().square().rowwise().mean();
    } else {
      lt.mean = layer.running_mean;
      lt.var = layer.running_var;
      z.colwise() -= lt.mean;
    }
    lt.inv_std = (lt.var.array() + kBatchNormEpsilon).rsqrt();
    lt.xhat = lt.inv_std.asDiagonal() * z;
    Eigen::MatrixXd y = (layer.bn_scale.asDiagonal() * lt.xhat);
    y.colwise() += layer.bn_shift;
    lt.activation = y.array().tanh();
    trace.layers.push_back(std::move(lt));
    current = &trace.layers.back().activation;
  }
  trace.dropout_scale.resize(0, 0);
  if (mode == Mode::kTrain && dropout_p > 0.0) {
    if (dropout_rng == nullptr) {
      throw Error(ErrorKind::kUsage, "dropout requires a random stream");
    }
    const double keep_scale = 1.0 / (1.0 - dropout_p);
    trace.dropout_scale.resize(current->rows(), current->cols());
    double *mask = trace.dropout_scale.data();
    for (Eigen::Index i = 0; i < trace.dropout_scale.size(); ++i) {
      mask[i] = dropout_rng->UniformDouble() < dropout_p ? 0.0 : keep_scale;
    }
    trace.last_hidden = current->cwiseProduct(trace.dropout_scale);
  } else {
    trace.last_hidden = *current;
  }
  trace.output = params.output.weight * trace.last_hidden;
  trace.output.colwise() += params.output.bias;
  CheckFinite(trace.output, "network output");
}

void CheckRange(int id, std::size_t inventory_size) {
  if (id < 0 || static_cast<std::size_t>(id) >= inventory_size) {
    throw Error(ErrorKind::kValidation, "phoneme id " + std::to_string(id) +
                                            " outside inventory of size " +
                                            std::to_string(inventory_size));
  }
}

void Apply(HiddenLayer &layer, const HiddenLayer &grad, double lr) {
  layer.weight.noalias() -= lr * grad.weight;
  layer.bias.noalias() -= lr * grad.bias;
  layer.bn_scale.noalias() -= lr * grad.bn_scale;
  layer.bn_shift.noalias() -= lr * grad.bn_shift;
}

Eigen::MatrixXd GatherColumns(const Eigen::MatrixXd &m, std::span<const std::size_t> cols) {
  Eigen::MatrixXd out(m.rows(), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t i = 0; i < cols.size(); ++i) {
    out.col(static_cast<Eigen::Index>(i)) = m.col(static_cast<Eigen::Index>(cols[i]));
  }
  return out;
}

}  // namespace

void FrameWindowing::Validate() const {
  if (input_window < 1 || input_window % 2 == 0) {
    throw Error(ErrorKind::kShape, "input_window must be odd and >= 1");
  }
  if (output_window < 1 || output_window % 2 == 0) {
    throw Error(ErrorKind::kShape, "output_window must be odd and >= 1");
  }
  if (num_blendshapes < 1) throw Error(ErrorKind::kShape, "num_blendshapes must be >= 1");
}

std::size_t MlpParameters::InputSize() const {
  if (hidden.empty()) return static_cast<std::size_t>(output.weight.cols());
  return static_cast<std::size_t>(hidden.front().weight.cols());
}

std::size_t MlpParameters::OutputSize() const {
  return static_cast<std::size_t>(output.weight.rows());
}

void MlpParameters::Validate() const {
  if (hidden.empty()) throw Error(ErrorKind::kShape, "network has no hidden layers");
  Eigen::Index width = hidden.front().weight.cols();
  if (width == 0) throw Error(ErrorKind::kShape, "network input size is zero");
  for (std::size_t k = 0; k < hidden.size(); ++k) {
    const HiddenLayer &layer = hidden[k];
    const Eigen::Index out = layer.weight.rows();
    const std::string where = "hidden layer " + std::to_string(k);
    if (out == 0) throw Error(ErrorKind::kShape, where + " has zero units");
    if (layer.weight.cols() != width) {
      throw Error(ErrorKind::kShape, where + " expects " + std::to_string(layer.weight.cols()) +
                                         " inputs but receives " + std::to_string(width));
    }
    if (layer.bias.size() != out || layer.bn_scale.size() != out ||
        layer.bn_shift.size() != out || layer.running_mean.size() != out ||
        layer.running_var.size() != out) {
      throw Error(ErrorKind::kShape, where + " vector sizes do not match its width");
    }
    if (!AllFinite(layer.weight) || !AllFinite(layer.bias) || !AllFinite(layer.bn_scale) ||
        !AllFinite(layer.bn_shift) || !AllFinite(layer.running_mean) ||
        !AllFinite(layer.running_var)) {
      throw Error(ErrorKind::kNumeric, where + " has non-finite values");
    }
    if ((layer.running_var.array() <= 0.0).any()) {
      throw Error(ErrorKind::kNumeric, where + " has a non-positive running variance");
    }
    width = out;
  }
  if (output.weight.rows() == 0) throw Error(ErrorKind::kShape, "output layer has zero units");
  if (output.weight.cols() != width) {
    throw Error(ErrorKind::kShape, "output layer expects " +
                                       std::to_string(output.weight.cols()) +
                                       " inputs but receives " + std::to_string(width));
  }
  if (output.bias.size() != output.weight.rows()) {
    throw Error(ErrorKind::kShape, "output bias size does not match its width");
  }
  if (!AllFinite(output.weight) || !AllFinite(output.bias)) {
    throw Error(ErrorKind::kNumeric, "output layer has non-finite values");
  }
}

void TrainingConfig::Validate() const {
  if (batch_size < 1) throw Error(ErrorKind::kUsage, "batch_size must be >= 1");
  if (!(learning_rate >= 0.0) || !std::isfinite(learning_rate)) {
    throw Error(ErrorKind::kUsage, "learning_rate must be finite and >= 0");
  }
  if (steps < 0) throw Error(ErrorKind::kUsage, "steps must be >= 0");
  if (!(dropout_p >= 0.0 && dropout_p < 1.0)) {
    throw Error(ErrorKind::kUsage, "dropout_p must be in [0, 1)");
  }
  if (!(bn_momentum >= 0.0 && bn_momentum <= 1.0)) {
    throw Error(ErrorKind::kUsage, "bn_momentum must be in [0, 1]");
  }
}

std::vector<std::size_t> DefaultHiddenSizes() { return {2048, 2048, 2048}; }

MlpParameters InitializeMlp(std::size_t input_size, std::span<const std::size_t> hidden_sizes,
                            std::size_t output_size, uint64_t seed) {
  if (input_size == 0 || output_size == 0 || hidden_sizes.empty()) {
    throw Error(ErrorKind::kShape, "network needs an input, a hidden layer and an output");
  }
  RandomStream rng(DeriveSeed(seed, kInitStream));
  auto uniform = [&rng](Eigen::Index rows, Eigen::Index cols) {
    const double limit = std::sqrt(3.0 / static_cast<double>(cols));
    Eigen::MatrixXd m(rows, cols);
    // Row-major draw order so the layout does not depend on Eigen storage.
    for (Eigen::Index r = 0; r < rows; ++r) {
      for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = rng.Uniform(-limit, limit);
    }
    return m;
  };
  MlpParameters params;
  auto fan_in = static_cast<Eigen::Index>(input_size);
  for (std::size_t width : hidden_sizes) {
    if (width == 0) throw Error(ErrorKind::kShape, "hidden layer width must be > 0");
    const auto n = static_cast<Eigen::Index>(width);
    HiddenLayer layer;
    layer.weight = uniform(n, fan_in);
    layer.bias = Eigen::VectorXd::Zero(n);
    layer.bn_scale = Eigen::VectorXd::Ones(n);
    layer.bn_shift = Eigen::VectorXd::Zero(n);
    layer.running_mean = Eigen::VectorXd::Zero(n);
    layer.running_var = Eigen::VectorXd::Ones(n);
    params.hidden.push_back(std::move(layer));
    fan_in = n;
  }
  const auto out = static_cast<Eigen::Index>(output_size);
  params.output.weight = uniform(out, fan_in);
  params.output.bias = Eigen::VectorXd::Zero(out);
  return params;
}

std::vector<std::vector<int>> WindowIds(std::span<const int> frame_ids,
                                        std::size_t inventory_size,
                                        const FrameWindowing &windowing) {
  windowing.Validate();
  if (inventory_size == 0) throw Error(ErrorKind::kShape, "empty phoneme inventory");
  for (int id : frame_ids) CheckRange(id, inventory_size);
  const auto count = static_cast<std::ptrdiff_t>(frame_ids.size());
  const int half = windowing.input_window / 2;
  std::vector<std::vector<int>> windows;
  windows.reserve(frame_ids.size());
  for (std::ptrdiff_t t = 0; t < count; ++t) {
    std::vector<int> window(static_cast<std::size_t>(windowing.input_window), 0);
    for (int k = 0; k < windowing.input_window; ++k) {
      const std::ptrdiff_t f = t - half + k;
      if (f >= 0 && f < count) window[static_cast<std::size_t>(k)] = frame_ids[f];
    }
    windows.push_back(std::move(window));
  }
  return windows;
}

Eigen::MatrixXd EncodeWindows(std::span<const std::vector<int>> windows,
                              std::size_t inventory_size) {
  if (windows.empty()) return Eigen::MatrixXd(0, 0);
  const std::size_t slots = windows.front().size();
  const auto p = static_cast<Eigen::Index>(inventory_size);
  Eigen::MatrixXd encoded =
      Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(slots) * p,
                            static_cast<Eigen::Index>(windows.size()));
  for (std::size_t t = 0; t < windows.size(); ++t) {
    if (windows[t].size() != slots) throw Error(ErrorKind::kShape, "ragged input windows");
    for (std::size_t k = 0; k < slots; ++k) {
      const int id = windows[t][k];
      CheckRange(id, inventory_size);
      encoded(static_cast<Eigen::Index>(k) * p + id, static_cast<Eigen::Index>(t)) = 1.0;
    }
  }
  return encoded;
}

Eigen::MatrixXd OneHotWindows(std::span<const int> frame_ids, std::size_t inventory_size,
                              const FrameWindowing &windowing) {
  const auto windows = WindowIds(frame_ids, inventory_size, windowing);
  if (windows.empty()) {
    return Eigen::MatrixXd(static_cast<Eigen::Index>(windowing.InputSize(inventory_size)), 0);
  }
  return EncodeWindows(windows, inventory_size);
}

Eigen::MatrixXd ForwardBatch(const MlpParameters &params, const Eigen::MatrixXd &inputs,
                             Mode mode, double dropout_p, RandomStream *dropout_rng) {
  ForwardTrace trace;
  ForwardImpl(params, inputs, mode, dropout_p, dropout_rng, trace);
  return std::move(trace.output);
}

Eigen::VectorXd Forward(const MlpParameters &params, const Eigen::VectorXd &input, Mode mode,
                        double dropout_p, RandomStream *dropout_rng) {
  Eigen::MatrixXd batch = input;
  return ForwardBatch(params, batch, mode, dropout_p, dropout_rng).col(0);
}

double LossAndGradients(const MlpParameters &params, const Eigen::MatrixXd &inputs,
                        const Eigen::MatrixXd &targets, double dropout_p,
                        RandomStream *dropout_rng, MlpGradients *gradients,
                        BatchStatistics *stats) {
  ForwardTrace trace;
  ForwardImpl(params, inputs, Mode::kTrain, dropout_p, dropout_rng, trace);
  if (targets.rows() != trace.output.rows() || targets.cols() != trace.output.cols()) {
    throw Error(ErrorKind::kShape, "target shape does not match network output");
  }
  const double batch = static_cast<double>(inputs.cols());
  Eigen::MatrixXd diff = trace.output - targets;
  const double loss = diff.squaredNorm() / batch;

  if (stats != nullptr) {
    stats->mean.clear();
    stats->var.clear();
    for (const LayerTrace &lt : trace.layers) {
      stats->mean.push_back(lt.mean);
      stats->var.push_back(lt.var);
    }
  }
  if (gradients == nullptr) return loss;

  MlpGradients &g = *gradients;
  g.hidden.resize(params.hidden.size());
  Eigen::MatrixXd d_out = (2.0 / batch) * diff;
  g.output.weight.noalias() = d_out * trace.last_hidden.transpose();
  g.output.bias = d_out.rowwise().sum();
  Eigen::MatrixXd d_act = params.output.weight.transpose() * d_out;
  if (trace.dropout_scale.size() > 0) d_act = d_act.cwiseProduct(trace.dropout_scale);

  for (std::size_t k = params.hidden.size(); k-- > 0;) {
    const HiddenLayer &layer = params.hidden[k];
    const LayerTrace &lt = trace.layers[k];
    HiddenLayer &gl = g.hidden[k];
    // tanh' = 1 - tanh^2
    Eigen::MatrixXd d_y = d_act.array() * (1.0 - lt.activation.array().square());
    gl.bn_scale = d_y.cwiseProduct(lt.xhat).rowwise().sum();
    gl.bn_shift = d_y.rowwise().sum();
    Eigen::MatrixXd d_xhat = layer.bn_scale.asDiagonal() * d_y;
    // dz = inv_std / B * (B dxhat - sum(dxhat) - xhat * sum(dxhat * xhat))
    const Eigen::VectorXd sum_dxhat = d_xhat.rowwise().sum();
    const Eigen::VectorXd sum_dxhat_xhat = d_xhat.cwiseProduct(lt.xhat).rowwise().sum();
    Eigen::MatrixXd d_z = batch * d_xhat;
    d_z.colwise() -= sum_dxhat;
    d_z -= sum_dxhat_xhat.asDiagonal() * lt.xhat;
    d_z = (lt.inv_std / batch).asDiagonal() * d_z;
    const Eigen::MatrixXd &layer_input = k == 0 ? inputs : trace.layers[k - 1].activation;
    gl.weight.noalias() = d_z * layer_input.transpose();
    gl.bias = d_z.rowwise().sum();
    if (k > 0) d_act.noalias() = layer.weight.transpose() * d_z;
  }
  return loss;
}

void LipsyncDataset::Validate() const {
  windowing.Validate();
  if (windows.empty()) throw Error(ErrorKind::kValidation, "dataset is empty");
  if (static_cast<std::size_t>(targets.cols()) != windows.size() ||
      static_cast<std::size_t>(targets.rows()) != windowing.OutputSize()) {
    throw Error(ErrorKind::kShape, "dataset targets do not match its windows");
  }
  for (const auto &w : windows) {
    if (w.size() != static_cast<std::size_t>(windowing.input_window)) {
      throw Error(ErrorKind::kShape, "dataset window has the wrong length");
    }
    for (int id : w) CheckRange(id, inventory_size);
  }
  if (!AllFinite(targets)) throw Error(ErrorKind::kValidation, "dataset targets not finite");
}

TrainResult Train(MlpParameters params, const LipsyncDataset &dataset,
                  const TrainingConfig &config) {
  config.Validate();
  dataset.Validate();
  params.Validate();
  if (params.InputSize() != dataset.windowing.InputSize(dataset.inventory_size) ||
      params.OutputSize() != dataset.windowing.OutputSize()) {
    throw Error(ErrorKind::kShape, "network shape does not match the dataset");
  }
  RandomStream shuffle_rng(DeriveSeed(config.rng_seed, kShuffleStream));
  RandomStream dropout_rng(DeriveSeed(config.rng_seed, kDropoutStream));
  const std::size_t n = dataset.size();
  const auto batch_size = static_cast<std::size_t>(config.batch_size);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::size_t cursor = n;  // forces a shuffle before the first batch

  TrainResult result;
  result.loss_trace.reserve(static_cast<std::size_t>(config.steps));
  const double per_element = 1.0 / static_cast<double>(dataset.windowing.OutputSize());
  MlpGradients grads;
  BatchStatistics stats;
  std::vector<std::vector<int>> batch_windows;
  for (int step = 0; step < config.steps; ++step) {
    std::span<const std::size_t> batch;
    if (n <= batch_size) {
      batch = order;
    } else {
      if (cursor + batch_size > n) {
        shuffle_rng.Shuffle(std::span<std::size_t>(order));
        cursor = 0;
      }
      batch = std::span<const std::size_t>(order).subspan(cursor, batch_size);
      cursor += batch_size;
    }
    batch_windows.clear();
    for (std::size_t i : batch) batch_windows.push_back(dataset.windows[i]);
    const Eigen::MatrixXd inputs = EncodeWindows(batch_windows, dataset.inventory_size);
    const Eigen::MatrixXd targets = GatherColumns(dataset.targets, batch);

    double loss = 0.0;
    try {
      loss = LossAndGradients(params, inputs, targets, config.dropout_p, &dropout_rng, &grads,
                              &stats);
    } catch (const Error &e) {
      if (e.kind() != ErrorKind::kNumeric) throw;
      throw Error(ErrorKind::kTraining,
                  "training diverged at step " + std::to_string(step) + ": " + e.what());
    }
    if (!std::isfinite(loss)) {
      throw Error(ErrorKind::kTraining,
                  "training diverged at step " + std::to_string(step) + ": loss is not finite");
    }
    result.loss_trace.push_back(loss * per_element);

    const double lr = config.learning_rate;
    const double m = config.bn_momentum;
    for (std::size_t k = 0; k < params.hidden.size(); ++k) {
      HiddenLayer &layer = params.hidden[k];
      Apply(layer, grads.hidden[k], lr);
      layer.running_mean = m * layer.running_mean + (1.0 - m) * stats.mean[k];
      layer.running_var = m * layer.running_var + (1.0 - m) * stats.var[k];
    }
    params.output.weight.noalias() -= lr * grads.output.weight;
    params.output.bias.noalias() -= lr * grads.output.bias;
    // Zero-variance batches (e.g. a single example) would otherwise run the
    // running variance down towards zero, which Validate rejects.
    for (HiddenLayer &layer : params.hidden) {
      layer.running_var = layer.running_var.cwiseMax(1e-12);
    }
  }
  result.params = std::move(params);
  return result;
}

double EvaluateMse(const MlpParameters &params, const LipsyncDataset &dataset) {
  dataset.Validate();
  const Eigen::MatrixXd inputs = EncodeWindows(dataset.windows, dataset.inventory_size);
  const Eigen::MatrixXd out = ForwardBatch(params, inputs, Mode::kInfer);
  return (out - dataset.targets).squaredNorm() / static_cast<double>(out.size());
}

GradCheckResult GradCheck(const MlpParameters &params, const Eigen::MatrixXd &inputs,
                          const Eigen::MatrixXd &targets, double epsilon) {
  params.Validate();
  if (!(epsilon > 0.0)) throw Error(ErrorKind::kUsage, "epsilon must be > 0");
  MlpGradients analytic;
  const double loss = LossAndGradients(params, inputs, targets, 0.0, nullptr, &analytic);
  // Parameters the loss is invariant to (pre-batch-norm biases, weights of
  // inputs that are constant across the batch) have an exact zero gradient;
  // their numeric estimate is rounding noise of a few ulps of the loss over
  // epsilon, hence a floor proportional to the loss.
  const double floor = 1e-6 * std::max(1.0, std::abs(loss));

  GradCheckResult result;
  MlpParameters probe = params;
  auto loss_at = [&](double *value, double x) {
    *value = x;
    return LossAndGradients(probe, inputs, targets, 0.0, nullptr, nullptr);
  };
  auto check = [&](double *value, const double *grad, Eigen::Index size,
                   const std::string &name) {
    for (Eigen::Index i = 0; i < size; ++i) {
      double *v = value + i;
      const double saved = *v;
      const double h = epsilon;
      // Fourth-order central difference.
      const double d1 = loss_at(v, saved + h) - loss_at(v, saved - h);
      const double d2 = loss_at(v, saved + 2 * h) - loss_at(v, saved - 2 * h);
      *v = saved;
      const double numeric = (8.0 * d1 - d2) / (12.0 * h);
      const double denom = std::max({std::abs(grad[i]), std::abs(numeric), floor});
      const double rel = std::abs(grad[i] - numeric) / denom;
      ++result.parameters_checked;
      if (rel > result.max_relative_error || result.worst_parameter.empty()) {
        result.max_relative_error = std::max(rel, result.max_relative_error);
        result.worst_parameter = name + "[" + std::to_string(i) + "]";
      }
    }
  };
  auto check_all = [&](auto &value, const auto &grad, const std::string &name) {
    check(value.data(), grad.data(), value.size(), name);
  };
  for (std::size_t k = 0; k < probe.hidden.size(); ++k) {
    const std::string prefix = "hidden" + std::to_string(k) + ".";
    check_all(probe.hidden[k].weight, analytic.hidden[k].weight, prefix + "weight");
    check_all(probe.hidden[k].bias, analytic.hidden[k].bias, prefix + "bias");
    check_all(probe.hidden[k].bn_scale, analytic.hidden[k].bn_scale, prefix + "bn_scale");
    check_all(probe.hidden[k].bn_shift, analytic.hidden[k].bn_shift, prefix + "bn_shift");
  }
  check_all(probe.output.weight, analytic.output.weight, "output.weight");
  check_all(probe.output.bias, analytic.output.bias, "output.bias");
  return result;
}

std::vector<std::vector<double>> BlendWindows(const Eigen::MatrixXd &predictions,
                                              std::size_t frame_count,
                                              const FrameWindowing &windowing) {
  windowing.Validate();
  const auto width = static_cast<std::size_t>(windowing.num_blendshapes);
  if (static_cast<std::size_t>(predictions.cols()) != frame_count ||
      (frame_count > 0 && static_cast<std::size_t>(predictions.rows()) != windowing.OutputSize())) {
    throw Error(ErrorKind::kShape, "expected one " + std::to_string(windowing.OutputSize()) +
                                       "-value prediction per frame");
  }
  const auto count = static_cast<std::ptrdiff_t>(frame_count);
  const int half = windowing.output_window / 2;
  std::vector<std::vector<double>> frames(frame_count, std::vector<double>(width, 0.0));
  for (std::ptrdiff_t f = 0; f < count; ++f) {
    std::vector<double> &frame = frames[static_cast<std::size_t>(f)];
    int covers = 0;
    for (std::ptrdiff_t t = std::max<std::ptrdiff_t>(0, f - half);
         t <= std::min<std::ptrdiff_t>(count - 1, f + half); ++t) {
      const auto row = static_cast<Eigen::Index>(f - t + half);
      for (std::size_t j = 0; j < width; ++j) {
        frame[j] += predictions(row * static_cast<Eigen::Index>(width) +
                                    static_cast<Eigen::Index>(j),
                                static_cast<Eigen::Index>(t));
      }
      ++covers;
    }
    for (double &w : frame) w = std::clamp(w / covers, 0.0, 1.0);
  }
  return frames;
}

BlendshapeAnimation SynthesizeAnimation(const LipsyncModel &model,
                                        const PhonemeTimeline &timeline, double fps) {
  if (!(timeline.inventory == model.inventory) ||
      timeline.prosodic_inventory != model.prosodic_inventory) {
    throw Error(ErrorKind::kValidation,
                "timeline phoneme inventory does not match the lip-sync model inventory");
  }
  model.windowing.Validate();
  model.params.Validate();
  if (model.params.InputSize() != model.windowing.InputSize(model.inventory.size()) ||
      model.params.OutputSize() != model.windowing.OutputSize()) {
    throw Error(ErrorKind::kShape, "model parameters do not match its windowing");
  }
  const std::vector<int> frames = TimelineToFrames(timeline, fps);
  BlendshapeAnimation animation;
  animation.fps = fps;
  animation.num_blendshapes = model.windowing.num_blendshapes;
  if (frames.empty()) return animation;
  const Eigen::MatrixXd inputs = OneHotWindows(frames, model.inventory.size(), model.windowing);
  const Eigen::MatrixXd predictions = ForwardBatch(model.params, inputs, Mode::kInfer);
  animation.frames = BlendWindows(predictions, frames.size(), model.windowing);
  return animation;
}

SyntheticTask MakeSyntheticTask(const SyntheticTaskConfig &config) {
  config.windowing.Validate();
  if (config.inventory_size < 2) {
    throw Error(ErrorKind::kUsage, "synthetic inventory needs SIL and one phoneme");
  }
  if (config.min_run < 1 || config.max_run < config.min_run) {
    throw Error(ErrorKind::kUsage, "invalid synthetic run lengths");
  }
  if (config.sequences == 0 || config.sequence_frames == 0) {
    throw Error(ErrorKind::kUsage, "synthetic task needs at least one frame");
  }
  RandomStream rng(DeriveSeed(config.seed, kSyntheticStream));
  const auto p = static_cast<Eigen::Index>(config.inventory_size);
  const auto width = static_cast<Eigen::Index>(config.windowing.num_blendshapes);
  SyntheticTask task;
  task.poses = Eigen::MatrixXd::Zero(width, p);
  for (Eigen::Index id = 1; id < p; ++id) {
    for (Eigen::Index j = 0; j < width; ++j) task.poses(j, id) = rng.Uniform(0.1, 0.9);
  }

  LipsyncDataset &data = task.dataset;
  data.inventory_size = config.inventory_size;
  data.windowing = config.windowing;
  const std::size_t total = config.sequences * config.sequence_frames;
  data.targets.resize(static_cast<Eigen::Index>(config.windowing.OutputSize()),
                      static_cast<Eigen::Index>(total));
  const int half = config.windowing.output_window / 2;
  Eigen::Index column = 0;
  for (std::size_t s = 0; s < config.sequences; ++s) {
    std::vector<int> ids;
    ids.reserve(config.sequence_frames);
    while (ids.size() < config.sequence_frames) {
      int id = 0;
      if (!rng.Bernoulli(config.silence_probability)) {
        id = 1 + static_cast<int>(rng.UniformBelow(config.inventory_size - 1));
      }
      const int run = config.min_run + static_cast<int>(rng.UniformBelow(
                                           static_cast<uint64_t>(config.max_run -
                                                                 config.min_run + 1)));
      for (int r = 0; r < run && ids.size() < config.sequence_frames; ++r) ids.push_back(id);
    }
    auto windows = WindowIds(ids, config.inventory_size, config.windowing);
    const auto count = static_cast<std::ptrdiff_t>(ids.size());
    for (std::ptrdiff_t t = 0; t < count; ++t, ++column) {
      for (int r = 0; r < config.windowing.output_window; ++r) {
        const std::ptrdiff_t f = t - half + r;
        const int id = (f >= 0 && f < count) ? ids[static_cast<std::size_t>(f)] : 0;
        for (Eigen::Index j = 0; j < width; ++j) {
          data.targets(r * width + j, column) =
              task.poses(j, id) + rng.Uniform(-config.noise, config.noise);
        }
      }
      data.windows.push_back(std::move(windows[static_cast<std::size_t>(t)]));
    }
  }
  return task;
}

}  // namespace newsbot
