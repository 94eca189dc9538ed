// Copyright 2026 The trimcode Authors
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

#ifndef TRIMCODE_BYTE_IO_H_
#define TRIMCODE_BYTE_IO_H_

#include <bit>
#include <cstddef>
#include <cstdint>
#include <cstring>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "trimcode/error.h"

namespace trimcode {

// Little-endian field writer for container and model headers.
class ByteWriter {
 public:
  void PutU32(uint32_t v) {
    for (int b = 0; b < 4; ++b) bytes_.push_back(static_cast<uint8_t>(v >> (8 * b)));
  }
  void PutU64(uint64_t v) {
    for (int b = 0; b < 8; ++b) bytes_.push_back(static_cast<uint8_t>(v >> (8 * b)));
  }
  void PutF64(double v) { PutU64(std::bit_cast<uint64_t>(v)); }
  void PutBytes(std::span<const uint8_t> data) {
    bytes_.insert(bytes_.end(), data.begin(), data.end());
  }

  const std::vector<uint8_t>& bytes() const { return bytes_; }
  std::vector<uint8_t> Release() { return std::move(bytes_); }

 private:
  std::vector<uint8_t> bytes_;
};

class ByteReader {
 public:
  explicit ByteReader(std::span<const uint8_t> data) : data_(data) {}

  uint32_t GetU32() {
    Need(4, "uint32");
    uint32_t v = 0;
    for (int b = 0; b < 4; ++b) v |= uint32_t{data_[pos_++]} << (8 * b);
    return v;
  }
  uint64_t GetU64() {
    Need(8, "uint64");
    uint64_t v = 0;
    for (int b = 0; b < 8; ++b) v |= uint64_t{data_[pos_++]} << (8 * b);
    return v;
  }
  double GetF64() { return std::bit_cast<double>(GetU64()); }
  std::span<const uint8_t> GetBytes(size_t n) {
    Need(n, "byte block");
    auto out = data_.subspan(pos_, n);
    pos_ += n;
    return out;
  }

  size_t position() const { return pos_; }
  size_t remaining() const { return data_.size() - pos_; }

 private:
  void Need(size_t n, const char* what) const {
    if (data_.size() - pos_ < n) {
      throw Error(std::string("truncated input while reading ") + what);
    }
  }

  std::span<const uint8_t> data_;
  size_t pos_ = 0;
};

}  // namespace trimcode

#endif  // TRIMCODE_BYTE_IO_H_
