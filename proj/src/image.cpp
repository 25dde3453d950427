// Copyright 2026 The ipmo Authors
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

#include "ipmo/image.hpp"

#include <algorithm>
#include <stdexcept>

namespace ipmo {

RgbImage crop_rows(const RgbImage& img, int first_row) {
  if (first_row < 0 || first_row >= img.height()) {
    throw std::out_of_range("crop_rows: first_row outside image");
  }
  RgbImage out(img.width(), img.height() - first_row);
  for (int v = 0; v < out.height(); ++v) {
    auto src = img.row(v + first_row);
    std::copy(src.begin(), src.end(), out.row(v).begin());
  }
  return out;
}

std::size_t count_set(const BinaryMask& mask) {
  auto px = mask.pixels();
  return static_cast<std::size_t>(std::count_if(px.begin(), px.end(), [](std::uint8_t b) { return b != 0; }));
}

}  // namespace ipmo
