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

#include "tlg/topics/svd.hpp"

#include <algorithm>

#include <Eigen/QR>
#include <Eigen/SVD>

#include "tlg/common/error.hpp"
#include "tlg/common/rng.hpp"

namespace tlg {

namespace {

Eigen::MatrixXd orthonormal_basis(const Eigen::MatrixXd& Y) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(Y);
  return qr.householderQ() * Eigen::MatrixXd::Identity(Y.rows(), Y.cols());
}

template <typename Matrix>
TruncatedSvd randomized_svd_impl(const Matrix& X, std::size_t k, const SvdOptions& options) {
  const auto rows = static_cast<std::size_t>(X.rows());
  const auto cols = static_cast<std::size_t>(X.cols());
  if (k == 0) throw InvalidArgument("truncated svd: rank must be positive");
  if (k > std::min(rows, cols)) {
    throw InvalidArgument("truncated svd: rank " + std::to_string(k) + " exceeds min(" +
                          std::to_string(rows) + ", " + std::to_string(cols) + ")");
  }
  const std::size_t width = std::min(k + options.oversample, std::min(rows, cols));
  const auto l = static_cast<Eigen::Index>(width);

  CounterRng rng(options.seed, 0x5bd1e995);
  Eigen::MatrixXd omega(X.cols(), l);
  for (Eigen::Index j = 0; j < l; ++j) {
    for (Eigen::Index i = 0; i < X.cols(); ++i) omega(i, j) = rng.normal();
  }

  Eigen::MatrixXd Q = orthonormal_basis(X * omega);
  for (std::size_t it = 0; it < options.power_iterations; ++it) {
    const Eigen::MatrixXd Z = orthonormal_basis(X.transpose() * Q);
    Q = orthonormal_basis(X * Z);
  }

  const Eigen::MatrixXd B = (X.transpose() * Q).transpose();  // l x cols
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(B, Eigen::ComputeThinU | Eigen::ComputeThinV);

  const auto kk = static_cast<Eigen::Index>(k);
  TruncatedSvd out;
  out.U = Q * svd.matrixU().leftCols(kk);
  out.sigma = svd.singularValues().head(kk);
  out.V = svd.matrixV().leftCols(kk);
  for (Eigen::Index j = 0; j < kk; ++j) {
    Eigen::Index arg = 0;
    out.U.col(j).cwiseAbs().maxCoeff(&arg);
    if (out.U(arg, j) < 0.0) {
      out.U.col(j) *= -1.0;
      out.V.col(j) *= -1.0;
    }
  }
  return out;
}

}  // namespace

TruncatedSvd randomized_svd(const Eigen::SparseMatrix<double, Eigen::ColMajor, std::int64_t>& X,
                            std::size_t k, const SvdOptions& options) {
  return randomized_svd_impl(X, k, options);
}

TruncatedSvd randomized_svd(const Eigen::MatrixXd& X, std::size_t k, const SvdOptions& options) {
  return randomized_svd_impl(X, k, options);
}

}  // namespace tlg
