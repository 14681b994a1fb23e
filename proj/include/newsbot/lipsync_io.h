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

#ifndef NEWSBOT_LIPSYNC_IO_H_
#define NEWSBOT_LIPSYNC_IO_H_

#include <string>
#include <string_view>

#include "newsbot/lipsync.h"

namespace newsbot {

// Model file, little-endian binary:
//   "NBLS" magic, u32 version (1)
//   i32 input_window, i32 output_window, i32 num_blendshapes
//   u8 prosodic_inventory, u32 symbol count, then per symbol u32 length + bytes
//   i32 batch_size, f64 learning_rate, i32 steps, f64 dropout_p,
//   f64 bn_momentum, u64 rng_seed
//   u32 hidden layer count, u64 input size
//   per hidden layer: u64 width, weight (row-major), bias, bn_scale,
//                     bn_shift, running_mean, running_var as f64
//   output layer: u64 width, weight (row-major), bias
// Truncated, trailing or inconsistent data raises Error(kParse).
std::string SerializeModel(const LipsyncModel &model);
LipsyncModel ParseModel(std::string_view bytes);

// One example per line: input_window ids separated by spaces, TAB, then
// OutputSize() target reals separated by spaces. Blank lines and lines
// starting with '#' are ignored.
std::string SerializeDataset(const LipsyncDataset &dataset);
LipsyncDataset ParseDataset(std::string_view text, std::size_t inventory_size,
                            const FrameWindowing &windowing = {});

// "fps=25 num_blendshapes=32 frame_count=N" then one line of weights per frame.
std::string SerializeAnimation(const BlendshapeAnimation &animation);
BlendshapeAnimation ParseAnimation(std::string_view text);

}  // namespace newsbot

#endif  // NEWSBOT_LIPSYNC_IO_H_
