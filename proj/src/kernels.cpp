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

#include <algorithm>
#include <cmath>

namespace ipmo::kernels {

namespace {

// Tolerance for samples that land a hair outside the source because of
// rounding in the homography.
constexpr double kEdgeSlack = 1e-6;

inline std::uint8_t lerp_channel(double c00, double c10, double c01, double c11, double fu, double fv) {
  const double top = c00 + (c10 - c00) * fu;
  const double bottom = c01 + (c11 - c01) * fu;
  return static_cast<std::uint8_t>(std::floor(top + (bottom - top) * fv + 0.5));
}

inline Rgb sample(const RgbImage& src, const Mat3& m, int u, int v, Interpolation interp) {
  const double x = m(0, 0) * u + m(0, 1) * v + m(0, 2);
  const double y = m(1, 0) * u + m(1, 1) * v + m(1, 2);
  const double w = m(2, 0) * u + m(2, 1) * v + m(2, 2);
  if (std::abs(w) < 1e-12) return {};
  double su = x / w;
  double sv = y / w;
  const double umax = src.width() - 1;
  const double vmax = src.height() - 1;
  if (!(su >= -kEdgeSlack && su <= umax + kEdgeSlack && sv >= -kEdgeSlack && sv <= vmax + kEdgeSlack)) return {};
  su = std::clamp(su, 0.0, umax);
  sv = std::clamp(sv, 0.0, vmax);

  if (interp == Interpolation::nearest) {
    return src(static_cast<int>(std::lround(su)), static_cast<int>(std::lround(sv)));
  }
  const int u0 = static_cast<int>(su);
  const int v0 = static_cast<int>(sv);
  const int u1 = std::min(u0 + 1, src.width() - 1);
  const int v1 = std::min(v0 + 1, src.height() - 1);
  const double fu = su - u0;
  const double fv = sv - v0;
  const Rgb a = src(u0, v0), b = src(u1, v0), c = src(u0, v1), d = src(u1, v1);
  return {lerp_channel(a.r, b.r, c.r, d.r, fu, fv), lerp_channel(a.g, b.g, c.g, d.g, fu, fv),
          lerp_channel(a.b, b.b, c.b, d.b, fu, fv)};
}

template <typename Out, typename RowFn>
void for_rows(Image<Out>& out, Exec exec, RowFn&& fn) {
  const int rows = out.height();
  if (exec == Exec::serial) {
    for (int v = 0; v < rows; ++v) fn(v);
    return;
  }
#pragma omp parallel for schedule(static)
  for (int v = 0; v < rows; ++v) fn(v);
}

}  // namespace

RgbImage warp(const RgbImage& src, const Mat3& dst_to_src, int out_width, int out_height, Interpolation interp,
              Exec exec) {
  RgbImage out(out_width, out_height);
  if (src.empty()) return out;
  for_rows(out, exec, [&](int v) {
    auto row = out.row(v);
    for (int u = 0; u < out_width; ++u) row[u] = sample(src, dst_to_src, u, v, interp);
  });
  return out;
}

HsvImage rgb_to_hsv(const RgbImage& img, Exec exec) {
  HsvImage out(img.width(), img.height());
  for_rows(out, exec, [&](int v) {
    auto in = img.row(v);
    auto row = out.row(v);
    for (std::size_t u = 0; u < in.size(); ++u) row[u] = ipmo::rgb_to_hsv(in[u]);
  });
  return out;
}

BinaryMask band_mask(const HsvImage& img, const ColorBand& band, Exec exec) {
  BinaryMask out(img.width(), img.height());
  for_rows(out, exec, [&](int v) {
    auto in = img.row(v);
    auto row = out.row(v);
    for (std::size_t u = 0; u < in.size(); ++u) row[u] = band.contains(in[u]) ? 1 : 0;
  });
  return out;
}

RgbImage color_gain(const RgbImage& img, const ColorGain& gain, Exec exec) {
  RgbImage out(img.width(), img.height());
  for_rows(out, exec, [&](int v) {
    auto in = img.row(v);
    auto row = out.row(v);
    for (std::size_t u = 0; u < in.size(); ++u) row[u] = ipmo::apply_color_gain(in[u], gain);
  });
  return out;
}

}  // namespace ipmo::kernels
