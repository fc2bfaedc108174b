// Copyright 2026 The dcrhlab Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "dcrhlab/iegen/generator.hpp"

namespace dcrhlab::iegen {

// G(x) = x, one block.
BlockGenerator identity_generator(int s);
// G(x) = 0^len, one block.
BlockGenerator constant_generator(int s, int len);
// G(z, x) = x XOR z with c = s.
BlockGenerator xor_generator(int s);

// Draws x with the first block's coins and replays G(z, x) block by block.
OnlineGenerator honest_wrap(const BlockGenerator& g);
// Ignores its coins: every block is 0.
OnlineGenerator deterministic_generator(int blocks, int len);
// y_i = r_i with one fresh coin bit per block.
OnlineGenerator echo_generator(int blocks);

}  // namespace dcrhlab::iegen
