// Copyright 2026 The eeginception Authors
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

#include "eeginception/config_json.hpp"
#include "eeginception/model.hpp"

#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

namespace eeginc {

// Model container: a two-line textual header (magic+version, then one JSON
// line with the config, seed, parameter total and a tensor manifest of
// names/shapes/offsets), followed by raw little-endian 32-bit floats. Each
// tensor is stored column-major; offsets count floats from the start of the
// binary section. Parameters come first, then the batch-norm running
// statistics, in the model's canonical order.
inline constexpr const char* kModelMagic = "eeginception-model v1";

struct ModelHeader {
  ModelConfig config;
  long long total_params = 0;
  struct TensorInfo {
    std::string name;
    Index rows = 0, cols = 0;
    std::uint64_t offset = 0;  // in floats
  };
  std::vector<TensorInfo> tensors;
};

namespace detail {

inline ModelHeader read_model_header(std::istream& in,
                                     const std::string& path) {
  std::string magic;
  if (!std::getline(in, magic))
    throw DataError("model file is empty: " + path);
  if (magic != kModelMagic)
    throw DataError("model version mismatch in " + path + ": got '" + magic +
                    "', expected '" + kModelMagic + "'");
  std::string header_line;
  if (!std::getline(in, header_line))
    throw DataError("model header missing in " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(header_line);
  } catch (const nlohmann::json::exception& e) {
    throw DataError("model header parse error in " + path + ": " + e.what());
  }
  ModelHeader h;
  h.config = model_config_from_json(j.at("config"));
  h.total_params = j.at("total_params").get<long long>();
  for (const auto& t : j.at("tensors")) {
    h.tensors.push_back({t.at("name").get<std::string>(),
                         t.at("rows").get<Index>(), t.at("cols").get<Index>(),
                         t.at("offset").get<std::uint64_t>()});
  }
  return h;
}

}  // namespace detail

// Reads config and parameter count without touching the weights.
inline ModelHeader peek_model_header(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open model file: " + path);
  return detail::read_model_header(in, path);
}

template <typename Scalar>
void save_model(EegInception<Scalar>& model, const std::string& path) {
  auto tensors = model.params();
  auto buffers = model.buffers();
  tensors.insert(tensors.end(), buffers.begin(), buffers.end());

  nlohmann::json manifest = nlohmann::json::array();
  std::uint64_t offset = 0;
  for (const auto& t : tensors) {
    nlohmann::json e;
    e["name"] = t.name;
    e["rows"] = t.value->rows();
    e["cols"] = t.value->cols();
    e["offset"] = offset;
    manifest.push_back(e);
    offset += static_cast<std::uint64_t>(t.value->size());
  }
  nlohmann::json header;
  header["config"] = to_json(model.config());
  header["total_params"] = model.n_params();
  header["tensors"] = manifest;

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot open model file for writing: " + path);
  out << kModelMagic << "\n" << header.dump() << "\n";
  std::vector<float> buf;
  for (const auto& t : tensors) {
    buf.resize(static_cast<size_t>(t.value->size()));
    for (Index i = 0; i < t.value->size(); ++i)
      buf[static_cast<size_t>(i)] =
          static_cast<float>(t.value->data()[i]);
    out.write(reinterpret_cast<const char*>(buf.data()),
              static_cast<std::streamsize>(buf.size() * sizeof(float)));
  }
  if (!out) throw DataError("model write failed: " + path);
}

template <typename Scalar = float>
EegInception<Scalar> load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open model file: " + path);
  const ModelHeader h = detail::read_model_header(in, path);

  EegInception<Scalar> model(h.config);
  auto tensors = model.params();
  auto buffers = model.buffers();
  tensors.insert(tensors.end(), buffers.begin(), buffers.end());
  if (tensors.size() != h.tensors.size())
    throw DataError("model file tensor count mismatch in " + path);

  for (size_t i = 0; i < tensors.size(); ++i) {
    const auto& info = h.tensors[i];
    auto& dst = *tensors[i].value;
    if (tensors[i].name != info.name || dst.rows() != info.rows ||
        dst.cols() != info.cols)
      throw DataError("model file shape mismatch for tensor '" + info.name +
                      "' in " + path);
    std::vector<float> buf(static_cast<size_t>(dst.size()));
    in.read(reinterpret_cast<char*>(buf.data()),
            static_cast<std::streamsize>(buf.size() * sizeof(float)));
    if (in.gcount() !=
        static_cast<std::streamsize>(buf.size() * sizeof(float)))
      throw DataError("truncated model file: " + path);
    for (Index k = 0; k < dst.size(); ++k)
      dst.data()[k] = static_cast<Scalar>(buf[static_cast<size_t>(k)]);
  }
  return model;
}

}  // namespace eeginc
