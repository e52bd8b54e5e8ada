// Copyright 2026 The vidcap Authors
// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "vidcap/checkpoint.h"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <vector>

#include "vidcap/error.h"

namespace vidcap {

namespace {

constexpr char kMagic[4] = {'S', 'Q', '2', 'S'};

class Writer {
 public:
  void Bytes(const void* p, size_t n) {
    buf_.append(static_cast<const char*>(p), n);
  }
  void U8(uint8_t v) { buf_.push_back(static_cast<char>(v)); }
  void U16(uint16_t v) {
    for (int i = 0; i < 2; ++i) U8(static_cast<uint8_t>(v >> (8 * i)));
  }
  void U32(uint32_t v) {
    for (int i = 0; i < 4; ++i) U8(static_cast<uint8_t>(v >> (8 * i)));
  }
  void Tensor(const std::string& name, const std::vector<size_t>& dims,
              std::span<const float> values) {
    U16(static_cast<uint16_t>(name.size()));
    Bytes(name.data(), name.size());
    U8(static_cast<uint8_t>(dims.size()));
    for (size_t d : dims) U32(static_cast<uint32_t>(d));
    for (float v : values) U32(std::bit_cast<uint32_t>(v));
  }
  std::string Take() { return std::move(buf_); }

 private:
  std::string buf_;
};

class Reader {
 public:
  explicit Reader(const std::string& bytes) : bytes_(bytes) {}

  bool AtEnd() const { return pos_ == bytes_.size(); }

  void Need(size_t n, const char* what) {
    if (bytes_.size() - pos_ < n) {
      throw IoError(std::string("checkpoint truncated while reading ") + what);
    }
  }
  uint8_t U8(const char* what) {
    Need(1, what);
    return static_cast<uint8_t>(bytes_[pos_++]);
  }
  uint16_t U16(const char* what) {
    Need(2, what);
    uint16_t v = 0;
    for (int i = 0; i < 2; ++i) {
      v |= static_cast<uint16_t>(static_cast<uint8_t>(bytes_[pos_++]) << (8 * i));
    }
    return v;
  }
  uint32_t U32(const char* what) {
    Need(4, what);
    uint32_t v = 0;
    for (int i = 0; i < 4; ++i) {
      v |= static_cast<uint32_t>(static_cast<uint8_t>(bytes_[pos_++])) << (8 * i);
    }
    return v;
  }
  std::string Str(size_t n, const char* what) {
    Need(n, what);
    std::string s = bytes_.substr(pos_, n);
    pos_ += n;
    return s;
  }

 private:
  const std::string& bytes_;
  size_t pos_ = 0;
};

struct RawTensor {
  std::string name;
  std::vector<size_t> dims;
  std::vector<float> values;
};

RawTensor ReadTensor(Reader& r) {
  RawTensor t;
  const uint16_t name_len = r.U16("tensor name length");
  t.name = r.Str(name_len, "tensor name");
  const uint8_t rank = r.U8("tensor rank");
  uint64_t count = 1;
  for (uint8_t i = 0; i < rank; ++i) {
    t.dims.push_back(r.U32("tensor dims"));
    count *= t.dims.back();
    if (count > (uint64_t{1} << 40)) {
      throw IoError("checkpoint tensor '" + t.name + "' is implausibly large");
    }
  }
  r.Need(4 * count, "tensor payload");
  t.values.resize(count);
  for (uint64_t i = 0; i < count; ++i) {
    t.values[i] = std::bit_cast<float>(r.U32("tensor payload"));
  }
  return t;
}

void CopyInto(const RawTensor& src, const nn::TensorView<float>& dst) {
  if (src.name != dst.name || src.dims != dst.dims) {
    std::string want = dst.name + " [";
    for (size_t d : dst.dims) want += std::to_string(d) + ",";
    want += "]";
    throw IoError("checkpoint tensor '" + src.name +
                  "' does not match expected " + want);
  }
  std::copy(src.values.begin(), src.values.end(), dst.values.begin());
}

}  // namespace

std::string SerializeCheckpoint(const ModelParams<float>& params,
                                const nn::AdamState<float>* adam) {
  Writer w;
  w.Bytes(kMagic, 4);
  w.U32(kCheckpointFormatVersion);
  const ModelConfig& cfg = params.config;
  for (size_t d : {cfg.frames, cfg.feature_dim, cfg.latent, cfg.max_words,
                   cfg.vocab}) {
    w.U32(static_cast<uint32_t>(d));
  }
  const auto tensors = params.Tensors();
  for (const auto& t : tensors) w.Tensor(t.name, t.dims, t.values);
  if (adam != nullptr) {
    if (adam->m.size() != tensors.size() || adam->v.size() != tensors.size()) {
      throw Error("checkpoint: optimizer state does not mirror the model");
    }
    for (size_t k = 0; k < tensors.size(); ++k) {
      w.Tensor("adam.m." + tensors[k].name, tensors[k].dims, adam->m[k]);
    }
    for (size_t k = 0; k < tensors.size(); ++k) {
      w.Tensor("adam.v." + tensors[k].name, tensors[k].dims, adam->v[k]);
    }
    const float step = static_cast<float>(adam->step);
    w.Tensor("adam.step", {}, std::span<const float>(&step, 1));
  }
  return w.Take();
}

Checkpoint ParseCheckpoint(const std::string& bytes) {
  Reader r(bytes);
  if (r.Str(4, "magic") != std::string(kMagic, 4)) {
    throw IoError("checkpoint: bad magic");
  }
  const uint32_t version = r.U32("version");
  if (version != kCheckpointFormatVersion) {
    throw IoError("checkpoint: unsupported format version " +
                  std::to_string(version));
  }
  ModelConfig cfg;
  cfg.frames = r.U32("config");
  cfg.feature_dim = r.U32("config");
  cfg.latent = r.U32("config");
  cfg.max_words = r.U32("config");
  cfg.vocab = r.U32("config");
  cfg.Validate();

  Checkpoint ckpt{ModelParams<float>::Zeros(cfg), std::nullopt};
  const auto tensors = ckpt.params.Tensors();
  for (const auto& t : tensors) CopyInto(ReadTensor(r), t);
  if (r.AtEnd()) return ckpt;

  nn::AdamState<float> adam = nn::MakeAdamState<float>(tensors, {});
  for (size_t k = 0; k < tensors.size(); ++k) {
    RawTensor t = ReadTensor(r);
    CopyInto(t, {"adam.m." + tensors[k].name, tensors[k].dims, adam.m[k]});
  }
  for (size_t k = 0; k < tensors.size(); ++k) {
    RawTensor t = ReadTensor(r);
    CopyInto(t, {"adam.v." + tensors[k].name, tensors[k].dims, adam.v[k]});
  }
  RawTensor step = ReadTensor(r);
  if (step.name != "adam.step" || step.values.size() != 1) {
    throw IoError("checkpoint: expected 'adam.step', found '" + step.name + "'");
  }
  adam.step = static_cast<uint64_t>(step.values[0]);
  if (!r.AtEnd()) throw IoError("checkpoint: trailing bytes");
  ckpt.adam = std::move(adam);
  return ckpt;
}

void SaveCheckpoint(const std::filesystem::path& path,
                    const ModelParams<float>& params,
                    const nn::AdamState<float>* adam) {
  const std::string bytes = SerializeCheckpoint(params, adam);
  // Write-then-rename so an interrupted save never clobbers a good file.
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw IoError("cannot write checkpoint '" + tmp.string() + "'");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("write failure on '" + tmp.string() + "'");
  }
  std::filesystem::rename(tmp, path);
}

Checkpoint LoadCheckpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open checkpoint '" + path.string() + "'");
  const std::string bytes((std::istreambuf_iterator<char>(in)),
                          std::istreambuf_iterator<char>());
  try {
    return ParseCheckpoint(bytes);
  } catch (const Error& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

}  // namespace vidcap
