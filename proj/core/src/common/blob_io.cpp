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

#include "tlg/common/blob_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>

#include "tlg/common/error.hpp"

namespace tlg {

static_assert(std::endian::native == std::endian::little,
              "tensor files are little-endian; add byte swapping for this target");

std::int64_t Tensor::numel() const {
  std::int64_t n = 1;
  for (auto d : shape) n *= d;
  return n;
}

void write_tensor_file(const std::filesystem::path& path, nlohmann::json header,
                       const std::vector<Tensor>& tensors) {
  nlohmann::json list = nlohmann::json::array();
  for (const auto& t : tensors) {
    if (t.numel() != static_cast<std::int64_t>(t.data.size())) {
      throw InvalidArgument("tensor '" + t.name + "' shape does not match its data");
    }
    list.push_back({{"name", t.name}, {"shape", t.shape}});
  }
  header["tensors"] = std::move(list);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  out << header.dump() << '\n';
  for (const auto& t : tensors) {
    out.write(reinterpret_cast<const char*>(t.data.data()),
              static_cast<std::streamsize>(t.data.size() * sizeof(float)));
  }
  if (!out) throw DataError("short write to " + path.string());
}

TensorFile read_tensor_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  std::string line;
  std::getline(in, line);
  TensorFile file;
  try {
    file.header = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw DataError(path.string() + ": bad header: " + e.what());
  }
  if (!file.header.contains("tensors")) throw DataError(path.string() + ": header lacks tensors");
  for (const auto& entry : file.header["tensors"]) {
    Tensor t;
    t.name = entry.at("name").get<std::string>();
    t.shape = entry.at("shape").get<std::vector<std::int64_t>>();
    t.data.resize(static_cast<std::size_t>(t.numel()));
    in.read(reinterpret_cast<char*>(t.data.data()),
            static_cast<std::streamsize>(t.data.size() * sizeof(float)));
    if (!in) throw DataError(path.string() + ": truncated tensor '" + t.name + "'");
    file.tensors.push_back(std::move(t));
  }
  return file;
}

const Tensor& TensorFile::get(const std::string& name) const {
  for (const auto& t : tensors) {
    if (t.name == name) return t;
  }
  throw DataError("tensor file has no tensor '" + name + "'");
}

nlohmann::json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw DataError(path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const nlohmann::json& j) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path.string());
  out << j.dump(1) << '\n';
}

}  // namespace tlg
