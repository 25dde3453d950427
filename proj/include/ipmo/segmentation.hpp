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

#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "ipmo/colorspace.hpp"
#include "ipmo/geometry.hpp"
#include "ipmo/image.hpp"

namespace ipmo {

// 0 is background; regions are 1..count with no gaps.
struct LabelImage {
  Image<std::int32_t> labels;
  int count = 0;
};

// Two-pass union-find labelling, 8-connectivity. Final labels follow the
// raster order in which each component is first met.
LabelImage label_components(const BinaryMask& mask);

struct Eigenvalues {
  double lambda1 = 0.0;
  double lambda2 = 0.0;
};

// Ordered eigenvalues of [[mu20, mu11], [mu11, mu02]]. Round-off negatives
// down to -1e-9 are clamped to 0; anything lower throws NotPsd.
Eigenvalues inertia_eigenvalues(double mu20, double mu02, double mu11);

struct Region {
  int label = 0;
  int area = 0;
  PixelCoord centroid;
  // Second central moments divided by area (pixels^2).
  double mu20 = 0.0;
  double mu02 = 0.0;
  double mu11 = 0.0;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  // Axis-aligned box on pixel edges: top-left, top-right, bottom-right,
  // bottom-left.
  std::array<PixelCoord, 4> quad{};
  ColorClass color = ColorClass::yellow;
};

// Throws UnknownLabel unless 1 <= label <= li.count.
Region region_properties(const LabelImage& li, int label, ColorClass color = ColorClass::yellow);

// Every region in one pass over the image, ordered by label.
std::vector<Region> all_region_properties(const LabelImage& li, ColorClass color);

}  // namespace ipmo
