// Copyright 2026 The tlg Authors.
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

#pragma once

#include <span>
#include <vector>

namespace tlg {

// Max-shifted softmax.
std::vector<double> softmax(std::span<const double> z);

// Euclidean projection of z onto the probability simplex (sort and
// threshold); may return exact zeros.
std::vector<double> sparsemax(std::span<const double> z);

// argmax_p  p.z + H^T_alpha(p)  over the simplex, with H^T the Tsallis
// entropy. alpha = 1 is softmax, alpha = 2 is sparsemax; other alpha > 1 are
// solved by bisection on the threshold tau in
//   p_i = [(alpha - 1) z_i - tau]_+ ^ (1 / (alpha - 1)).
std::vector<double> entmax(std::span<const double> z, double alpha);

// Tsallis entropy; alpha = 1 gives the Shannon entropy in nats.
double tsallis_entropy(std::span<const double> p, double alpha);

}  // namespace tlg
