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

#include "tlg/topics/lsi.hpp"

#include "tlg/common/blob_io.hpp"
#include "tlg/common/error.hpp"

namespace tlg {

LsiModel::LsiModel(Eigen::MatrixXd U, Eigen::VectorXd sigma, std::vector<std::uint8_t> kept_mask)
    : U_(std::move(U)), sigma_(std::move(sigma)), kept_mask_(std::move(kept_mask)) {
  if (kept_mask_.empty()) kept_mask_.assign(static_cast<std::size_t>(U_.rows()), 1);
  if (static_cast<std::size_t>(U_.rows()) != kept_mask_.size()) {
    throw InvalidArgument("lsi: kept_mask length does not match U rows");
  }
  if (sigma_.size() != U_.cols()) throw InvalidArgument("lsi: sigma length does not match U columns");
}

std::vector<double> LsiModel::topic_scores(std::size_t topic) const {
  if (topic >= num_topics()) {
    throw InvalidArgument("topic " + std::to_string(topic) + " out of range [0, " +
                          std::to_string(num_topics()) + ")");
  }
  const auto col = U_.col(static_cast<Eigen::Index>(topic));
  const double norm = col.norm();
  std::vector<double> out(vocab_size(), 0.0);
  if (norm == 0.0) return out;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = col(static_cast<Eigen::Index>(i)) / norm;
  return out;
}

LsiModel train_lsi(const TokenDocMatrix& X, std::size_t num_topics, const SvdOptions& options,
                   std::vector<std::uint8_t> kept_mask) {
  if (num_topics == 0) throw InvalidArgument("train_lsi: number of topics must be positive");
  auto svd = randomized_svd(X.counts, num_topics, options);
  return LsiModel(std::move(svd.U), std::move(svd.sigma), std::move(kept_mask));
}

void LsiModel::save(const std::filesystem::path& path) const {
  std::vector<double> sigma(sigma_.begin(), sigma_.end());
  nlohmann::json header = {
      {"kind", "lsi"}, {"K", num_topics()}, {"vocab_size", vocab_size()}, {"sigma", sigma}};
  Tensor u{"U", {U_.rows(), U_.cols()}, {}};
  u.data.reserve(static_cast<std::size_t>(U_.size()));
  for (Eigen::Index i = 0; i < U_.rows(); ++i) {
    for (Eigen::Index k = 0; k < U_.cols(); ++k) u.data.push_back(static_cast<float>(U_(i, k)));
  }
  Tensor s{"sigma", {sigma_.size()}, {}};
  for (double v : sigma_) s.data.push_back(static_cast<float>(v));
  Tensor mask{"kept_mask", {static_cast<std::int64_t>(kept_mask_.size())}, {}};
  for (auto m : kept_mask_) mask.data.push_back(m ? 1.0f : 0.0f);
  write_tensor_file(path, header, {u, s, mask});
}

LsiModel LsiModel::load(const std::filesystem::path& path) {
  const auto file = read_tensor_file(path);
  if (file.header.value("kind", std::string()) != "lsi") {
    throw DataError(path.string() + " is not an lsi model");
  }
  const auto& u_t = file.get("U");
  if (u_t.shape.size() != 2) throw DataError("lsi: U must be 2-d");
  Eigen::MatrixXd U(u_t.shape[0], u_t.shape[1]);
  for (Eigen::Index i = 0; i < U.rows(); ++i) {
    for (Eigen::Index k = 0; k < U.cols(); ++k) {
      U(i, k) = u_t.data[static_cast<std::size_t>(i * U.cols() + k)];
    }
  }
  Eigen::VectorXd sigma(U.cols());
  if (file.header.contains("sigma")) {
    const auto s = file.header["sigma"].get<std::vector<double>>();
    if (s.size() != static_cast<std::size_t>(U.cols())) throw DataError("lsi: sigma length mismatch");
    for (std::size_t k = 0; k < s.size(); ++k) sigma(static_cast<Eigen::Index>(k)) = s[k];
  } else {
    const auto& s_t = file.get("sigma");
    for (std::size_t k = 0; k < s_t.data.size(); ++k) sigma(static_cast<Eigen::Index>(k)) = s_t.data[k];
  }
  std::vector<std::uint8_t> mask;
  for (float v : file.get("kept_mask").data) mask.push_back(v != 0.0f ? 1 : 0);
  return LsiModel(std::move(U), std::move(sigma), std::move(mask));
}

}  // namespace tlg
