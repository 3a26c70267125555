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
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace tlg {

// A named float tensor stored row-major.
struct Tensor {
  std::string name;
  std::vector<std::int64_t> shape;
  std::vector<float> data;

  std::int64_t numel() const;
};

// File layout: one line of JSON header, '\n', then every tensor's data as
// little-endian float32 in the order listed under header["tensors"].
void write_tensor_file(const std::filesystem::path& path, nlohmann::json header,
                       const std::vector<Tensor>& tensors);

struct TensorFile {
  nlohmann::json header;
  std::vector<Tensor> tensors;

  const Tensor& get(const std::string& name) const;
};

TensorFile read_tensor_file(const std::filesystem::path& path);

nlohmann::json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const nlohmann::json& j);

}  // namespace tlg
