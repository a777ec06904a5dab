// Copyright 2026 rmc authors.
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

#include <bit>
#include <cstdint>
#include <cstring>
#include <string>
#include <vector>

#include "rmc/errors.hpp"

namespace rmc::bytes {

// Little-endian scalar packing shared by the binary file and wire codecs.
// The host is assumed little-endian; the static_assert keeps a port from
// silently producing byte-swapped files.
static_assert(std::endian::native == std::endian::little,
              "serialization assumes a little-endian host");

template <typename T>
void append(std::vector<std::uint8_t>& out, T value) {
  const auto* p = reinterpret_cast<const std::uint8_t*>(&value);
  out.insert(out.end(), p, p + sizeof(T));
}

/// Cursor over an immutable byte buffer. Reads past the end throw
/// DecodeError tagged with the offending offset.
class Reader {
 public:
  Reader(const std::uint8_t* data, std::size_t size)
      : data_(data), size_(size) {}

  template <typename T>
  T read(const char* what) {
    if (size_ - pos_ < sizeof(T)) {
      throw DecodeError(std::string("truncated field: ") + what, pos_);
    }
    T value;
    std::memcpy(&value, data_ + pos_, sizeof(T));
    pos_ += sizeof(T);
    return value;
  }

  std::size_t pos() const { return pos_; }
  std::size_t remaining() const { return size_ - pos_; }

 private:
  const std::uint8_t* data_;
  std::size_t size_;
  std::size_t pos_ = 0;
};

}  // namespace rmc::bytes
