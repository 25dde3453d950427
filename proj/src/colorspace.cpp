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

#include "ipmo/colorspace.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ipmo/errors.hpp"
#include "ipmo/kernels.hpp"

namespace ipmo {

namespace {

// The sector hue is snapped to a 2^-32 degree grid; sums with the sector
// bases 0/120/240/360 are then exact in double precision.
double snap_hue(double q) { return std::ldexp(std::nearbyint(std::ldexp(q, 32)), -32); }

std::uint8_t clamp_channel(double x) {
  return static_cast<std::uint8_t>(std::clamp(std::lround(x), 0L, 255L));
}

}  // namespace

HsvPixel rgb_to_hsv(Rgb c) {
  const int r = c.r, g = c.g, b = c.b;
  const int mx = std::max({r, g, b});
  const int mn = std::min({r, g, b});
  const int delta = mx - mn;

  HsvPixel out;
  out.v = mx;
  out.s = mx > 0 ? static_cast<double>(delta) / mx : 0.0;
  if (delta == 0) return out;

  int num;
  double base;
  if (mx == r) {
    num = g - b;
    base = 0.0;
  } else if (mx == g) {
    num = b - r;
    base = 120.0;
  } else {
    num = r - g;
    base = 240.0;
  }
  double h = base + snap_hue(60.0 * num / delta);
  if (h < 0.0) h += 360.0;
  if (h >= 360.0) h -= 360.0;
  out.h = h;
  return out;
}

HsvImage rgb_to_hsv(const RgbImage& img) { return kernels::rgb_to_hsv(img, kernels::Exec::parallel); }

std::string_view to_string(ColorClass c) {
  switch (c) {
    case ColorClass::yellow: return "yellow";
    case ColorClass::orange: return "orange";
    case ColorClass::white: return "white";
  }
  return "unknown";
}

ColorClass color_class_from_string(std::string_view name) {
  if (name == "yellow") return ColorClass::yellow;
  if (name == "orange") return ColorClass::orange;
  if (name == "white") return ColorClass::white;
  throw ConfigError("unknown colour band '" + std::string(name) + "'");
}

bool ColorBand::contains(const HsvPixel& p) const {
  const bool hue_ok = h_lo <= h_hi ? (p.h >= h_lo && p.h <= h_hi) : (p.h >= h_lo || p.h <= h_hi);
  return hue_ok && p.s >= s_lo && p.s <= s_hi && p.v >= v_lo && p.v <= v_hi;
}

void ColorBand::validate() const {
  auto within = [](double x, double lo, double hi) { return x >= lo && x <= hi; };
  if (!within(h_lo, 0, 360) || !within(h_hi, 0, 360) || !within(s_lo, 0, 1) || !within(s_hi, 0, 1) ||
      !within(v_lo, 0, 255) || !within(v_hi, 0, 255)) {
    throw ConfigError("colour band '" + std::string(to_string(name)) + "' has a bound outside its channel domain");
  }
  if (s_lo > s_hi || v_lo > v_hi) {
    throw ConfigError("colour band '" + std::string(to_string(name)) + "' has an empty s or v range");
  }
}

ColorBand default_yellow_band() { return {ColorClass::yellow, 40.0, 70.0, 0.4, 1.0, 100.0, 255.0}; }
ColorBand default_orange_band() { return {ColorClass::orange, 10.0, 35.0, 0.4, 1.0, 100.0, 255.0}; }
ColorBand default_white_band() { return {ColorClass::white, 0.0, 360.0, 0.0, 0.25, 150.0, 255.0}; }

BinaryMask apply_band_filter(const HsvImage& img, const ColorBand& band) {
  return kernels::band_mask(img, band, kernels::Exec::parallel);
}

Rgb apply_color_gain(Rgb c, const ColorGain& gain) {
  return {clamp_channel(gain.rgb[0].a * c.r + gain.rgb[0].b), clamp_channel(gain.rgb[1].a * c.g + gain.rgb[1].b),
          clamp_channel(gain.rgb[2].a * c.b + gain.rgb[2].b)};
}

RgbImage apply_color_gain(const RgbImage& img, const ColorGain& gain) {
  return kernels::color_gain(img, gain, kernels::Exec::parallel);
}

}  // namespace ipmo
