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

// Independent reference implementations used by the tests. None of these
// call into the library code they are checking.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "ipmo/image.hpp"
#include "ipmo/segmentation.hpp"
#include "ipmo/synth.hpp"

namespace ipmo::testing {

// Recursive 8-connected flood fill. Labels in raster order of first visit.
inline void flood(const BinaryMask& m, Image<std::int32_t>& out, int u, int v, int label) {
  if (!m.contains(u, v) || !m(u, v) || out(u, v) != 0) return;
  out(u, v) = label;
  for (int dv = -1; dv <= 1; ++dv) {
    for (int du = -1; du <= 1; ++du) {
      if (du || dv) flood(m, out, u + du, v + dv, label);
    }
  }
}

inline Image<std::int32_t> flood_fill_labels(const BinaryMask& m, int* count = nullptr) {
  Image<std::int32_t> out(m.width(), m.height(), 0);
  int next = 0;
  for (int v = 0; v < m.height(); ++v) {
    for (int u = 0; u < m.width(); ++u) {
      if (m(u, v) && out(u, v) == 0) flood(m, out, u, v, ++next);
    }
  }
  if (count) *count = next;
  return out;
}

// True when the two label images induce the same partition (labels may be
// renamed, background must agree).
inline bool same_partition(const Image<std::int32_t>& a, const Image<std::int32_t>& b) {
  if (a.width() != b.width() || a.height() != b.height()) return false;
  std::map<std::int32_t, std::int32_t> ab, ba;
  for (int v = 0; v < a.height(); ++v) {
    for (int u = 0; u < a.width(); ++u) {
      const auto x = a(u, v), y = b(u, v);
      if ((x == 0) != (y == 0)) return false;
      if (x == 0) continue;
      auto [i, fresh_a] = ab.emplace(x, y);
      auto [j, fresh_b] = ba.emplace(y, x);
      if (i->second != y || j->second != x) return false;
    }
  }
  return true;
}

inline BinaryMask random_mask(std::mt19937_64& rng, int w, int h, double density) {
  std::bernoulli_distribution on(density);
  BinaryMask m(w, h, 0);
  for (auto& p : m.pixels()) p = on(rng) ? 1 : 0;
  return m;
}

struct MomentOracle {
  long area = 0;
  double cu = 0.0, cv = 0.0;
  double mu20 = 0.0, mu02 = 0.0, mu11 = 0.0;
  double lambda1 = 0.0, lambda2 = 0.0;
};

// Direct two-pass summation followed by the quadratic-formula roots.
inline MomentOracle moments_of(const LabelImage& li, int label) {
  MomentOracle o;
  long double su = 0, sv = 0;
  for (int v = 0; v < li.labels.height(); ++v) {
    for (int u = 0; u < li.labels.width(); ++u) {
      if (li.labels(u, v) != label) continue;
      ++o.area;
      su += u;
      sv += v;
    }
  }
  o.cu = static_cast<double>(su / o.area);
  o.cv = static_cast<double>(sv / o.area);
  long double a = 0, b = 0, c = 0;
  for (int v = 0; v < li.labels.height(); ++v) {
    for (int u = 0; u < li.labels.width(); ++u) {
      if (li.labels(u, v) != label) continue;
      const long double du = u - su / o.area, dv = v - sv / o.area;
      a += du * du;
      b += dv * dv;
      c += du * dv;
    }
  }
  o.mu20 = static_cast<double>(a / o.area);
  o.mu02 = static_cast<double>(b / o.area);
  o.mu11 = static_cast<double>(c / o.area);
  const double tr = o.mu20 + o.mu02, det = o.mu20 * o.mu02 - o.mu11 * o.mu11;
  const double disc = std::sqrt(std::max(0.0, tr * tr / 4.0 - det));
  o.lambda1 = tr / 2.0 + disc;
  o.lambda2 = std::max(0.0, tr / 2.0 - disc);
  return o;
}

// Textbook hexcone hue with an explicit if-chain on the max channel.
inline double hand_hue(int r, int g, int b) {
  const int mx = std::max({r, g, b}), mn = std::min({r, g, b});
  if (mx == mn) return 0.0;
  const double d = mx - mn;
  double h;
  if (mx == r) {
    h = 60.0 * (g - b) / d;
    if (h < 0) h += 360.0;
  } else if (mx == g) {
    h = 60.0 * (b - r) / d + 120.0;
  } else {
    h = 60.0 * (r - g) / d + 240.0;
  }
  return h;
}

// Camera orientation composed from elementary rotations: optical axis along
// world +x, then pitch about world y, then yaw about world z.
inline Eigen::Matrix3d camera_rotation(double pitch, double yaw) {
  Eigen::Matrix3d base;
  base << 0, 0, 1,   //
      -1, 0, 0,      //
      0, -1, 0;
  const Eigen::Matrix3d ry = Eigen::AngleAxisd(pitch, Eigen::Vector3d::UnitY()).toRotationMatrix();
  const Eigen::Matrix3d rz = Eigen::AngleAxisd(yaw, Eigen::Vector3d::UnitZ()).toRotationMatrix();
  return rz * ry * base;
}

// Intersects the viewing ray through (u, v) with z = 0.
inline GroundPoint ray_plane(const synth::PinholeParams& k, const synth::CameraPose& pose, double u, double v) {
  const Eigen::Vector3d dir_cam((u - k.cx) / k.f, (v - k.cy) / k.f, 1.0);
  const Eigen::Vector3d dir = camera_rotation(pose.pitch_rad, pose.yaw_rad) * dir_cam;
  const double t = -pose.height_m / dir.z();
  return {t * dir.x(), t * dir.y()};
}

// Pinhole forward projection of a world point.
inline PixelCoord project(const synth::PinholeParams& k, const synth::CameraPose& pose, const Eigen::Vector3d& w) {
  const Eigen::Vector3d c =
      camera_rotation(pose.pitch_rad, pose.yaw_rad).transpose() * (w - Eigen::Vector3d(0, 0, pose.height_m));
  return {k.f * c.x() / c.z() + k.cx, k.f * c.y() / c.z() + k.cy};
}

inline BinaryMask rotate90(const BinaryMask& m) {
  BinaryMask out(m.height(), m.width(), 0);
  for (int v = 0; v < m.height(); ++v) {
    for (int u = 0; u < m.width(); ++u) out(m.height() - 1 - v, u) = m(u, v);
  }
  return out;
}

}  // namespace ipmo::testing
