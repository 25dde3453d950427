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

// Per-pixel image kernels. Each has a serial reference loop and an OpenMP
// loop over rows that share the same per-pixel code, so both produce
// bit-identical output. The public API calls the parallel variants; tests
// and the benchmark compare the two.

#include "ipmo/colorspace.hpp"
#include "ipmo/geometry.hpp"

namespace ipmo::kernels {

enum class Exec { serial, parallel };

// out(u, v) = src sampled at dst_to_src * (u, v, 1); black outside src.
RgbImage warp(const RgbImage& src, const Mat3& dst_to_src, int out_width, int out_height, Interpolation interp,
              Exec exec);

HsvImage rgb_to_hsv(const RgbImage& img, Exec exec);

BinaryMask band_mask(const HsvImage& img, const ColorBand& band, Exec exec);

RgbImage color_gain(const RgbImage& img, const ColorGain& gain, Exec exec);

}  // namespace ipmo::kernels
