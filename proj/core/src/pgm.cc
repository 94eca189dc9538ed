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

#include "trimcode/pgm.h"

#include <cctype>
#include <string>

#include "trimcode/error.h"
#include "trimcode/model_io.h"

namespace trimcode {

namespace {

class HeaderScanner {
 public:
  explicit HeaderScanner(std::span<const uint8_t> bytes) : bytes_(bytes) {}

  void SkipSpaceAndComments() {
    while (pos_ < bytes_.size()) {
      if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else if (std::isspace(bytes_[pos_])) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  size_t ReadNumber(const char* what) {
    SkipSpaceAndComments();
    size_t value = 0;
    size_t digits = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      value = value * 10 + (bytes_[pos_] - '0');
      if (value > (size_t{1} << 24)) throw Error(std::string("PGM ") + what + " too large");
      ++pos_;
      ++digits;
    }
    if (digits == 0) throw Error(std::string("PGM header: missing ") + what);
    return value;
  }

  size_t pos() const { return pos_; }
  void Advance(size_t n) { pos_ += n; }

 private:
  std::span<const uint8_t> bytes_;
  size_t pos_ = 0;
};

}  // namespace

GrayImage ParsePgm(std::span<const uint8_t> bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '5') {
    throw Error("not a binary PGM (expected P5 magic)");
  }
  HeaderScanner scan(bytes);
  scan.Advance(2);
  const size_t width = scan.ReadNumber("width");
  const size_t height = scan.ReadNumber("height");
  const size_t maxval = scan.ReadNumber("maxval");
  if (width == 0 || height == 0) throw Error("PGM has zero extent");
  if (maxval != 255) throw Error("only 8-bit PGM (maxval 255) is supported");
  // Exactly one whitespace byte separates the header from the raster.
  if (scan.pos() >= bytes.size() || !std::isspace(bytes[scan.pos()])) {
    throw Error("PGM header not terminated");
  }
  scan.Advance(1);
  if (bytes.size() - scan.pos() < width * height) {
    throw Error("PGM raster truncated");
  }
  GrayImage image(width, height);
  std::copy_n(bytes.begin() + scan.pos(), width * height, image.pixels.begin());
  return image;
}

std::vector<uint8_t> EncodePgm(const GrayImage& image) {
  const std::string header = "P5\n" + std::to_string(image.width) + " " +
                             std::to_string(image.height) + "\n255\n";
  std::vector<uint8_t> out(header.begin(), header.end());
  out.insert(out.end(), image.pixels.begin(), image.pixels.end());
  return out;
}

GrayImage ReadPgm(const std::string& path) {
  return ParsePgm(ReadFileBytes(path));
}

void WritePgm(const GrayImage& image, const std::string& path) {
  WriteFileBytes(path, EncodePgm(image));
}

}  // namespace trimcode
