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

#include "ipmo/segmentation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "ipmo/errors.hpp"

namespace ipmo {

namespace {

class DisjointSets {
 public:
  std::int32_t make() {
    parent_.push_back(static_cast<std::int32_t>(parent_.size()));
    return parent_.back();
  }

  std::int32_t find(std::int32_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  // Keeps the smaller id as root.
  void unite(std::int32_t a, std::int32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a < b) std::swap(a, b);
    parent_[a] = b;
  }

  std::size_t size() const { return parent_.size(); }

 private:
  std::vector<std::int32_t> parent_;
};

struct MomentSums {
  std::int64_t n = 0;
  std::int64_t su = 0, sv = 0;
  std::int64_t suu = 0, svv = 0, suv = 0;
  int umin = 0, umax = 0, vmin = 0, vmax = 0;

  void add(int u, int v) {
    if (n == 0) {
      umin = umax = u;
      vmin = vmax = v;
    } else {
      umin = std::min(umin, u);
      umax = std::max(umax, u);
      vmin = std::min(vmin, v);
      vmax = std::max(vmax, v);
    }
    ++n;
    su += u;
    sv += v;
    suu += static_cast<std::int64_t>(u) * u;
    svv += static_cast<std::int64_t>(v) * v;
    suv += static_cast<std::int64_t>(u) * v;
  }
};

Region make_region(int label, const MomentSums& m, ColorClass color) {
  Region r;
  r.label = label;
  r.area = static_cast<int>(m.n);
  r.color = color;
  const double n = static_cast<double>(m.n);
  r.centroid = {static_cast<double>(m.su) / n, static_cast<double>(m.sv) / n};
  // n * sum(x^2) - sum(x)^2 is exact in 64-bit integers for any raster we
  // handle, so the only rounding is the final division.
  const double nn = n * n;
  r.mu20 = static_cast<double>(m.n * m.suu - m.su * m.su) / nn;
  r.mu02 = static_cast<double>(m.n * m.svv - m.sv * m.sv) / nn;
  r.mu11 = static_cast<double>(m.n * m.suv - m.su * m.sv) / nn;
  const Eigenvalues ev = inertia_eigenvalues(r.mu20, r.mu02, r.mu11);
  r.lambda1 = ev.lambda1;
  r.lambda2 = ev.lambda2;
  const double left = m.umin - 0.5, right = m.umax + 0.5, top = m.vmin - 0.5, bottom = m.vmax + 0.5;
  r.quad = {{{left, top}, {right, top}, {right, bottom}, {left, bottom}}};
  return r;
}

}  // namespace

LabelImage label_components(const BinaryMask& mask) {
  const int w = mask.width();
  const int h = mask.height();
  LabelImage out{Image<std::int32_t>(w, h, 0), 0};
  DisjointSets sets;
  sets.make();  // id 0 is background

  // First pass: provisional labels from the already-visited half of the
  // 8-neighbourhood (W, NW, N, NE).
  for (int v = 0; v < h; ++v) {
    for (int u = 0; u < w; ++u) {
      if (!mask(u, v)) continue;
      std::int32_t label = 0;
      auto visit = [&](int nu, int nv) {
        if (nu < 0 || nu >= w || nv < 0) return;
        const std::int32_t other = out.labels(nu, nv);
        if (other == 0) return;
        if (label == 0) {
          label = other;
        } else if (other != label) {
          sets.unite(label, other);
        }
      };
      visit(u - 1, v);
      visit(u - 1, v - 1);
      visit(u, v - 1);
      visit(u + 1, v - 1);
      if (label == 0) label = sets.make();
      out.labels(u, v) = label;
    }
  }

  // Second pass: resolve roots and renumber in first-appearance order.
  std::vector<std::int32_t> final_label(sets.size(), 0);
  std::int32_t next = 0;
  for (auto& px : out.labels.pixels()) {
    if (px == 0) continue;
    const std::int32_t root = sets.find(px);
    if (final_label[root] == 0) final_label[root] = ++next;
    px = final_label[root];
  }
  out.count = next;
  return out;
}

Eigenvalues inertia_eigenvalues(double mu20, double mu02, double mu11) {
  const double mean = 0.5 * (mu20 + mu02);
  const double radius = std::hypot(0.5 * (mu20 - mu02), mu11);
  Eigenvalues ev{mean + radius, mean - radius};
  if (ev.lambda2 < -1e-9) {
    throw NotPsd("moment matrix has eigenvalue " + std::to_string(ev.lambda2));
  }
  ev.lambda2 = std::max(ev.lambda2, 0.0);
  return ev;
}

Region region_properties(const LabelImage& li, int label, ColorClass color) {
  if (label < 1 || label > li.count) {
    throw UnknownLabel("label " + std::to_string(label) + " not in 1.." + std::to_string(li.count));
  }
  MomentSums sums;
  for (int v = 0; v < li.labels.height(); ++v) {
    auto row = li.labels.row(v);
    for (int u = 0; u < li.labels.width(); ++u) {
      if (row[u] == label) sums.add(u, v);
    }
  }
  return make_region(label, sums, color);
}

std::vector<Region> all_region_properties(const LabelImage& li, ColorClass color) {
  std::vector<MomentSums> sums(static_cast<std::size_t>(li.count) + 1);
  for (int v = 0; v < li.labels.height(); ++v) {
    auto row = li.labels.row(v);
    for (int u = 0; u < li.labels.width(); ++u) {
      if (row[u] != 0) sums[row[u]].add(u, v);
    }
  }
  std::vector<Region> regions;
  regions.reserve(li.count);
  for (int label = 1; label <= li.count; ++label) regions.push_back(make_region(label, sums[label], color));
  return regions;
}

}  // namespace ipmo
