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

#include "newsbot/lipsync_io.h"

#include <bit>
#include <cstring>
#include <optional>
#include <string>
#include <vector>

#include "newsbot/error.h"
#include "newsbot/text_util.h"

namespace newsbot {
namespace {

static_assert(std::endian::native == std::endian::little,
              "model files are written in native little-endian order");

constexpr char kMagic[4] = {'N', 'B', 'L', 'S'};
constexpr uint32_t kVersion = 1;

class Writer {
 public:
  template <typename T>
  void Put(T value) {
    char buf[sizeof(T)];
    std::memcpy(buf, &value, sizeof(T));
    out_.append(buf, sizeof(T));
  }
  void PutString(const std::string &s) {
    Put<uint32_t>(static_cast<uint32_t>(s.size()));
    out_ += s;
  }
  void PutVector(const Eigen::VectorXd &v) {
    for (Eigen::Index i = 0; i < v.size(); ++i) Put<double>(v(i));
  }
  void PutMatrix(const Eigen::MatrixXd &m) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      for (Eigen::Index c = 0; c < m.cols(); ++c) Put<double>(m(r, c));
    }
  }
  std::string Take() { return std::move(out_); }

 private:
  std::string out_;
};

class Reader {
 public:
  explicit Reader(std::string_view in) : in_(in) {}

  template <typename T>
  T Get() {
    Need(sizeof(T));
    T value;
    std::memcpy(&value, in_.data() + pos_, sizeof(T));
    pos_ += sizeof(T);
    return value;
  }
  std::string GetString() {
    const auto n = Get<uint32_t>();
    Need(n);
    std::string s(in_.substr(pos_, n));
    pos_ += n;
    return s;
  }
  Eigen::VectorXd GetVector(uint64_t n) {
    Need(n * sizeof(double));
    Eigen::VectorXd v(static_cast<Eigen::Index>(n));
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = Get<double>();
    return v;
  }
  Eigen::MatrixXd GetMatrix(uint64_t rows, uint64_t cols) {
    if (cols != 0 && rows > (in_.size() / sizeof(double)) / cols) Fail();
    Eigen::MatrixXd m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) = Get<double>();
    }
    return m;
  }
  bool AtEnd() const { return pos_ == in_.size(); }

 private:
  void Need(uint64_t n) const {
    if (n > in_.size() - pos_) Fail();
  }
  [[noreturn]] static void Fail() {
    throw Error(ErrorKind::kParse, "model file is truncated or corrupt");
  }

  std::string_view in_;
  std::size_t pos_ = 0;
};

std::vector<double> ParseReals(const std::string &field, std::size_t line) {
  std::vector<double> values;
  for (const std::string &token : SplitWhitespace(field)) {
    auto v = ParseDouble(token);
    if (!v) {
      throw Error(ErrorKind::kParse,
                  "line " + std::to_string(line) + ": bad number '" + token + "'");
    }
    values.push_back(*v);
  }
  return values;
}

}  // namespace

std::string SerializeModel(const LipsyncModel &model) {
  model.params.Validate();
  Writer w;
  for (char c : kMagic) w.Put<char>(c);
  w.Put<uint32_t>(kVersion);
  w.Put<int32_t>(model.windowing.input_window);
  w.Put<int32_t>(model.windowing.output_window);
  w.Put<int32_t>(model.windowing.num_blendshapes);
  w.Put<uint8_t>(model.prosodic_inventory ? 1 : 0);
  w.Put<uint32_t>(static_cast<uint32_t>(model.inventory.size()));
  for (const std::string &s : model.inventory.symbols()) w.PutString(s);
  w.Put<int32_t>(model.training.batch_size);
  w.Put<double>(model.training.learning_rate);
  w.Put<int32_t>(model.training.steps);
  w.Put<double>(model.training.dropout_p);
  w.Put<double>(model.training.bn_momentum);
  w.Put<uint64_t>(model.training.rng_seed);
  w.Put<uint32_t>(static_cast<uint32_t>(model.params.hidden.size()));
  w.Put<uint64_t>(model.params.InputSize());
  for (const HiddenLayer &layer : model.params.hidden) {
    w.Put<uint64_t>(static_cast<uint64_t>(layer.weight.rows()));
    w.PutMatrix(layer.weight);
    w.PutVector(layer.bias);
    w.PutVector(layer.bn_scale);
    w.PutVector(layer.bn_shift);
    w.PutVector(layer.running_mean);
    w.PutVector(layer.running_var);
  }
  w.Put<uint64_t>(static_cast<uint64_t>(model.params.output.weight.rows()));
  w.PutMatrix(model.params.output.weight);
  w.PutVector(model.params.output.bias);
  return w.Take();
}

LipsyncModel ParseModel(std::string_view bytes) {
  Reader r(bytes);
  for (char c : kMagic) {
    if (r.Get<char>() != c) throw Error(ErrorKind::kParse, "not a lip-sync model file");
  }
  const auto version = r.Get<uint32_t>();
  if (version != kVersion) {
    throw Error(ErrorKind::kParse, "unsupported model version " + std::to_string(version));
  }
  LipsyncModel model;
  model.windowing.input_window = r.Get<int32_t>();
  model.windowing.output_window = r.Get<int32_t>();
  model.windowing.num_blendshapes = r.Get<int32_t>();
  model.prosodic_inventory = r.Get<uint8_t>() != 0;
  const auto symbols = r.Get<uint32_t>();
  std::vector<std::string> inventory;
  for (uint32_t i = 0; i < symbols; ++i) inventory.push_back(r.GetString());
  model.inventory = PhonemeInventory(inventory);
  model.training.batch_size = r.Get<int32_t>();
  model.training.learning_rate = r.Get<double>();
  model.training.steps = r.Get<int32_t>();
  model.training.dropout_p = r.Get<double>();
  model.training.bn_momentum = r.Get<double>();
  model.training.rng_seed = r.Get<uint64_t>();
  const auto layers = r.Get<uint32_t>();
  uint64_t fan_in = r.Get<uint64_t>();
  for (uint32_t k = 0; k < layers; ++k) {
    HiddenLayer layer;
    const auto width = r.Get<uint64_t>();
    layer.weight = r.GetMatrix(width, fan_in);
    layer.bias = r.GetVector(width);
    layer.bn_scale = r.GetVector(width);
    layer.bn_shift = r.GetVector(width);
    layer.running_mean = r.GetVector(width);
    layer.running_var = r.GetVector(width);
    model.params.hidden.push_back(std::move(layer));
    fan_in = width;
  }
  const auto out = r.Get<uint64_t>();
  model.params.output.weight = r.GetMatrix(out, fan_in);
  model.params.output.bias = r.GetVector(out);
  if (!r.AtEnd()) throw Error(ErrorKind::kParse, "trailing bytes after model data");
  model.windowing.Validate();
  model.params.Validate();
  if (model.params.InputSize() != model.windowing.InputSize(model.inventory.size()) ||
      model.params.OutputSize() != model.windowing.OutputSize()) {
    throw Error(ErrorKind::kParse, "model layer shapes do not match its windowing");
  }
  return model;
}

std::string SerializeDataset(const LipsyncDataset &dataset) {
  dataset.Validate();
  std::string out;
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    const auto &w = dataset.windows[i];
    for (std::size_t k = 0; k < w.size(); ++k) {
      if (k > 0) out += ' ';
      out += std::to_string(w[k]);
    }
    out += '\t';
    const auto col = dataset.targets.col(static_cast<Eigen::Index>(i));
    for (Eigen::Index j = 0; j < col.size(); ++j) {
      if (j > 0) out += ' ';
      out += FormatDouble(col(j));
    }
    out += '\n';
  }
  return out;
}

LipsyncDataset ParseDataset(std::string_view text, std::size_t inventory_size,
                            const FrameWindowing &windowing) {
  windowing.Validate();
  LipsyncDataset dataset;
  dataset.inventory_size = inventory_size;
  dataset.windowing = windowing;
  std::vector<std::vector<double>> targets;
  const auto lines = SplitLines(text);
  for (std::size_t n = 0; n < lines.size(); ++n) {
    const std::string_view line = Trim(lines[n]);
    if (line.empty() || line.front() == '#') continue;
    const std::size_t lineno = n + 1;
    const auto fields = Split(line, '\t');
    if (fields.size() != 2) {
      throw Error(ErrorKind::kParse,
                  "line " + std::to_string(lineno) + ": expected ids TAB targets");
    }
    std::vector<int> ids;
    for (const std::string &token : SplitWhitespace(fields[0])) {
      auto v = ParseInt(token);
      if (!v || *v < 0 || static_cast<uint64_t>(*v) >= inventory_size) {
        throw Error(ErrorKind::kParse, "line " + std::to_string(lineno) +
                                           ": bad phoneme id '" + token + "'");
      }
      ids.push_back(static_cast<int>(*v));
    }
    if (ids.size() != static_cast<std::size_t>(windowing.input_window)) {
      throw Error(ErrorKind::kParse, "line " + std::to_string(lineno) + ": expected " +
                                         std::to_string(windowing.input_window) + " ids");
    }
    auto reals = ParseReals(fields[1], lineno);
    if (reals.size() != windowing.OutputSize()) {
      throw Error(ErrorKind::kParse, "line " + std::to_string(lineno) + ": expected " +
                                         std::to_string(windowing.OutputSize()) + " targets");
    }
    dataset.windows.push_back(std::move(ids));
    targets.push_back(std::move(reals));
  }
  dataset.targets.resize(static_cast<Eigen::Index>(windowing.OutputSize()),
                         static_cast<Eigen::Index>(targets.size()));
  for (std::size_t i = 0; i < targets.size(); ++i) {
    for (std::size_t j = 0; j < targets[i].size(); ++j) {
      dataset.targets(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) =
          targets[i][j];
    }
  }
  dataset.Validate();
  return dataset;
}

std::string SerializeAnimation(const BlendshapeAnimation &animation) {
  std::string out = "fps=" + FormatDouble(animation.fps) +
                    " num_blendshapes=" + std::to_string(animation.num_blendshapes) +
                    " frame_count=" + std::to_string(animation.frames.size()) + "\n";
  for (const auto &frame : animation.frames) {
    for (std::size_t j = 0; j < frame.size(); ++j) {
      if (j > 0) out += ' ';
      out += FormatDouble(frame[j]);
    }
    out += '\n';
  }
  return out;
}

BlendshapeAnimation ParseAnimation(std::string_view text) {
  const auto lines = SplitLines(text);
  if (lines.empty()) throw Error(ErrorKind::kParse, "animation file is empty");
  BlendshapeAnimation animation;
  std::optional<int64_t> frame_count;
  bool have_fps = false;
  bool have_width = false;
  for (const std::string &field : SplitWhitespace(lines[0])) {
    const auto eq = field.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorKind::kParse, "animation header field '" + field + "' lacks '='");
    }
    const std::string key = field.substr(0, eq);
    const std::string value = field.substr(eq + 1);
    if (key == "fps") {
      auto v = ParseDouble(value);
      if (!v || !(*v > 0)) throw Error(ErrorKind::kParse, "bad fps '" + value + "'");
      animation.fps = *v;
      have_fps = true;
    } else if (key == "num_blendshapes") {
      auto v = ParseInt(value);
      if (!v || *v < 1) throw Error(ErrorKind::kParse, "bad num_blendshapes '" + value + "'");
      animation.num_blendshapes = static_cast<int>(*v);
      have_width = true;
    } else if (key == "frame_count") {
      frame_count = ParseInt(value);
      if (!frame_count || *frame_count < 0) {
        throw Error(ErrorKind::kParse, "bad frame_count '" + value + "'");
      }
    } else {
      throw Error(ErrorKind::kParse, "unknown animation header field '" + key + "'");
    }
  }
  if (!have_fps || !have_width || !frame_count) {
    throw Error(ErrorKind::kParse, "animation header needs fps, num_blendshapes, frame_count");
  }
  for (std::size_t n = 1; n < lines.size(); ++n) {
    auto weights = ParseReals(lines[n], n + 1);
    if (weights.size() != static_cast<std::size_t>(animation.num_blendshapes)) {
      throw Error(ErrorKind::kParse, "line " + std::to_string(n + 1) + ": expected " +
                                         std::to_string(animation.num_blendshapes) +
                                         " weights");
    }
    animation.frames.push_back(std::move(weights));
  }
  if (animation.frames.size() != static_cast<std::size_t>(*frame_count)) {
    throw Error(ErrorKind::kParse, "frame_count does not match the number of frame lines");
  }
  return animation;
}

}  // namespace newsbot
