// SPDX-License-Identifier: Apache-2.0
//
// umic - UM-MIMO channel synthesis, sounding emulation and characterization
// Copyright (C) 2025-2026 The umic authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "umic/tensor_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <vector>

namespace umic {

static_assert(std::endian::native == std::endian::little,
              "tensor blobs are little-endian; byte swapping not implemented");

namespace {

constexpr std::size_t kHeaderBytes = 4 + 5 * sizeof(std::uint32_t);

void put_u32(std::vector<char> &buf, std::uint32_t v) {
  char b[4];
  std::memcpy(b, &v, 4);
  buf.insert(buf.end(), b, b + 4);
}

std::uint32_t get_u32(const char *p) {
  std::uint32_t v;
  std::memcpy(&v, p, 4);
  return v;
}

} // namespace

void save_tensor(const std::string &path, const ChannelTensor &tensor) {
  std::vector<char> header;
  header.reserve(kHeaderBytes);
  header.insert(header.end(), kTensorMagic, kTensorMagic + 4);
  put_u32(header, kTensorFormatVersion);
  put_u32(header, static_cast<std::uint32_t>(tensor.n_snapshots()));
  put_u32(header, static_cast<std::uint32_t>(tensor.n_freq()));
  put_u32(header, static_cast<std::uint32_t>(tensor.n_rx()));
  put_u32(header, static_cast<std::uint32_t>(tensor.n_tx()));

  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f)
    throw FormatError("cannot open '" + path + "' for writing");
  f.write(header.data(), static_cast<std::streamsize>(header.size()));

  std::vector<float> payload;
  payload.reserve(2 * tensor.size());
  for (const cxd &v : tensor.data()) {
    payload.push_back(static_cast<float>(v.real()));
    payload.push_back(static_cast<float>(v.imag()));
  }
  f.write(reinterpret_cast<const char *>(payload.data()),
          static_cast<std::streamsize>(payload.size() * sizeof(float)));
  if (!f)
    throw FormatError("write failed for '" + path + "'");
}

ChannelTensor load_tensor(const std::string &path, double carrier_hz,
                          double bandwidth_hz) {
  std::ifstream f(path, std::ios::binary);
  if (!f)
    throw FormatError("cannot open '" + path + "'");
  f.seekg(0, std::ios::end);
  const std::size_t file_size = static_cast<std::size_t>(f.tellg());
  f.seekg(0);

  if (file_size < kHeaderBytes)
    throw FormatError("truncated header in '" + path + "'", file_size);
  char header[kHeaderBytes];
  f.read(header, kHeaderBytes);

  if (std::memcmp(header, kTensorMagic, 4) != 0)
    throw FormatError("bad magic in '" + path + "'", 0);
  const std::uint32_t version = get_u32(header + 4);
  if (version != kTensorFormatVersion)
    throw FormatError("unsupported format version " + std::to_string(version),
                      4);
  const std::uint32_t n_s = get_u32(header + 8);
  const std::uint32_t n_f = get_u32(header + 12);
  const std::uint32_t n_rx = get_u32(header + 16);
  const std::uint32_t n_tx = get_u32(header + 20);
  if (n_s == 0 || n_f == 0 || n_rx == 0 || n_tx == 0)
    throw FormatError("zero dimension in header", 8);

  const std::size_t n_entries = static_cast<std::size_t>(n_s) * n_f *
                                static_cast<std::size_t>(n_rx) * n_tx;
  const std::size_t expected = kHeaderBytes + n_entries * 2 * sizeof(float);
  if (file_size != expected)
    throw FormatError("payload size mismatch: header implies " +
                          std::to_string(expected) + " bytes, file has " +
                          std::to_string(file_size),
                      kHeaderBytes);

  std::vector<double> axis;
  if (carrier_hz > 0.0 && bandwidth_hz > 0.0) {
    axis = make_freq_axis(carrier_hz, bandwidth_hz, n_f);
  } else {
    axis.resize(n_f);
    for (std::size_t k = 0; k < n_f; ++k)
      axis[k] = static_cast<double>(k);
  }
  ChannelTensor t(n_s, n_f, n_rx, n_tx, std::move(axis));

  std::vector<float> payload(n_entries * 2);
  f.read(reinterpret_cast<char *>(payload.data()),
         static_cast<std::streamsize>(payload.size() * sizeof(float)));
  if (!f)
    throw FormatError("payload read failed", kHeaderBytes);
  for (std::size_t i = 0; i < n_entries; ++i)
    t.data()[i] = cxd{payload[2 * i], payload[2 * i + 1]};
  return t;
}

} // namespace umic
