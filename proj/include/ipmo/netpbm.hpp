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

#include <filesystem>

#include "ipmo/image.hpp"
#include "ipmo/segmentation.hpp"

namespace ipmo {

// Binary Netpbm I/O (P6 colour, P5 grey, maxval 255). Throws ConfigError on
// unreadable or malformed files.
RgbImage read_ppm(const std::filesystem::path& path);
void write_ppm(const std::filesystem::path& path, const RgbImage& img);
// Mask pixels are written as 0 / 255.
void write_pgm(const std::filesystem::path& path, const BinaryMask& mask);

// False-colour rendering of a label image (background black).
RgbImage colorize_labels(const LabelImage& labels);

void draw_line(RgbImage& img, PixelCoord a, PixelCoord b, Rgb color);
void draw_quad(RgbImage& img, const std::array<PixelCoord, 4>& quad, Rgb color);

}  // namespace ipmo
