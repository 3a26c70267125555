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

#include <cstdint>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

namespace tlg {

struct SvdOptions {
  std::size_t oversample = 10;
  std::size_t power_iterations = 4;
  std::uint64_t seed = 0;
};

// X ~ U diag(sigma) V^T with sigma non-increasing. Column signs are fixed so
// that the largest-magnitude entry of every U column is positive.
struct TruncatedSvd {
  Eigen::MatrixXd U;
  Eigen::VectorXd sigma;
  Eigen::MatrixXd V;
};

// Randomized range finder with subspace (power) iteration followed by an
// exact SVD of the small projected matrix. When k + oversample reaches
// min(rows, cols) the result is exact up to rounding.
TruncatedSvd randomized_svd(const Eigen::SparseMatrix<double, Eigen::ColMajor, std::int64_t>& X,
                            std::size_t k, const SvdOptions& options = {});
TruncatedSvd randomized_svd(const Eigen::MatrixXd& X, std::size_t k,
                            const SvdOptions& options = {});

}  // namespace tlg
