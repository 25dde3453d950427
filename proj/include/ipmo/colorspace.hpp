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
#include <string_view>

#include "ipmo/image.hpp"

namespace ipmo {

// Hexcone HSV. Hue in degrees [0, 360), saturation in [0, 1], value in the
// same 0..255 units as the RGB channels.
struct HsvPixel {
  double h = 0.0;
  double s = 0.0;
  double v = 0.0;

  friend bool operator==(const HsvPixel&, const HsvPixel&) = default;
};

using HsvImage = Image<HsvPixel>;

// V = max(R, G, B); S = (V - min) / V (0 for black); hue from the dominant
// channel's sector. Grey pixels get h = 0.
HsvPixel rgb_to_hsv(Rgb c);

HsvImage rgb_to_hsv(const RgbImage& img);

enum class ColorClass { yellow, orange, white };

std::string_view to_string(ColorClass c);
ColorClass color_class_from_string(std::string_view name);

// Closed HSV box. h_lo > h_hi selects the hue range that wraps through 0.
struct ColorBand {
  ColorClass name = ColorClass::yellow;
  double h_lo = 0.0;
  double h_hi = 360.0;
  double s_lo = 0.0;
  double s_hi = 1.0;
  double v_lo = 0.0;
  double v_hi = 255.0;

  bool contains(const HsvPixel& p) const;
  // Throws ConfigError when a bound leaves its channel domain.
  void validate() const;
};

// Calibration defaults; tune per image corpus.
ColorBand default_yellow_band();
ColorBand default_orange_band();
ColorBand default_white_band();

BinaryMask apply_band_filter(const HsvImage& img, const ColorBand& band);

struct ChannelGain {
  double a = 1.0;
  double b = 0.0;
};

// Per-channel affine correction c' = clamp(a*c + b, 0, 255), stand-in for an
// upstream colour-correction stage.
struct ColorGain {
  std::array<ChannelGain, 3> rgb{};
};

Rgb apply_color_gain(Rgb c, const ColorGain& gain);
RgbImage apply_color_gain(const RgbImage& img, const ColorGain& gain);

}  // namespace ipmo
