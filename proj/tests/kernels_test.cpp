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

#include "ipmo/kernels.hpp"

#include <gtest/gtest.h>

#include <random>

namespace ipmo {
namespace {

using kernels::Exec;

RgbImage noise_image(int w, int h, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> c(0, 255);
  RgbImage img(w, h);
  for (auto& p : img.pixels()) {
    p = {static_cast<std::uint8_t>(c(rng)), static_cast<std::uint8_t>(c(rng)), static_cast<std::uint8_t>(c(rng))};
  }
  return img;
}

TEST(Kernels, HsvSerialEqualsParallel) {
  const RgbImage img = noise_image(641, 123, 1);
  EXPECT_TRUE(kernels::rgb_to_hsv(img, Exec::serial) == kernels::rgb_to_hsv(img, Exec::parallel));
}

TEST(Kernels, BandMaskSerialEqualsParallel) {
  const HsvImage hsv = kernels::rgb_to_hsv(noise_image(333, 211, 2), Exec::serial);
  for (const auto& band : {default_yellow_band(), default_orange_band(), default_white_band()}) {
    EXPECT_TRUE(kernels::band_mask(hsv, band, Exec::serial) == kernels::band_mask(hsv, band, Exec::parallel));
  }
}

TEST(Kernels, GainSerialEqualsParallel) {
  ColorGain g;
  g.rgb = {{{1.3, -12.0}, {0.8, 5.5}, {1.0, 40.0}}};
  const RgbImage img = noise_image(300, 200, 3);
  EXPECT_TRUE(kernels::color_gain(img, g, Exec::serial) == kernels::color_gain(img, g, Exec::parallel));
}

TEST(Kernels, WarpSerialEqualsParallel) {
  const RgbImage img = noise_image(320, 240, 4);
  Mat3 m;
  m << 0.9, 0.05, 3.0, -0.02, 1.1, -4.0, 1e-4, 3e-4, 1.0;
  for (auto interp : {Interpolation::bilinear, Interpolation::nearest}) {
    EXPECT_TRUE(kernels::warp(img, m, 400, 260, interp, Exec::serial) ==
                kernels::warp(img, m, 400, 260, interp, Exec::parallel));
  }
}

TEST(Kernels, IdentityWarpCopiesImage) {
  const RgbImage img = noise_image(50, 40, 5);
  for (auto interp : {Interpolation::bilinear, Interpolation::nearest}) {
    EXPECT_TRUE(kernels::warp(img, Mat3::Identity(), 50, 40, interp, Exec::parallel) == img);
  }
}

TEST(Kernels, PublicWrappersUseSameKernels) {
  const RgbImage img = noise_image(64, 48, 6);
  EXPECT_TRUE(rgb_to_hsv(img) == kernels::rgb_to_hsv(img, Exec::serial));
  const HsvImage hsv = rgb_to_hsv(img);
  EXPECT_TRUE(apply_band_filter(hsv, default_white_band()) ==
              kernels::band_mask(hsv, default_white_band(), Exec::serial));
}

}  // namespace
}  // namespace ipmo
