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

#include "ipmo/netpbm.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <string>

#include "ipmo/errors.hpp"

namespace ipmo {

namespace {

// Next whitespace-separated header token, skipping '#' comments.
std::string header_token(std::istream& in) {
  std::string tok;
  char c;
  while (in.get(c)) {
    if (c == '#') {
      std::string ignored;
      std::getline(in, ignored);
      if (!tok.empty()) break;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      if (!tok.empty()) break;
      continue;
    }
    tok.push_back(c);
  }
  return tok;
}

int header_int(std::istream& in, const std::filesystem::path& path) {
  const std::string tok = header_token(in);
  try {
    return std::stoi(tok);
  } catch (const std::exception&) {
    throw ConfigError(path.string() + ": malformed Netpbm header");
  }
}

}  // namespace

RgbImage read_ppm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open " + path.string());
  const std::string magic = header_token(in);
  if (magic != "P6" && magic != "P5") throw ConfigError(path.string() + ": expected a binary PPM or PGM");
  const int w = header_int(in, path);
  const int h = header_int(in, path);
  const int maxval = header_int(in, path);
  if (w < 1 || h < 1 || maxval != 255) throw ConfigError(path.string() + ": unsupported Netpbm dimensions or maxval");

  const int channels = magic == "P6" ? 3 : 1;
  std::vector<unsigned char> buf(static_cast<std::size_t>(w) * h * channels);
  in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
  if (in.gcount() != static_cast<std::streamsize>(buf.size())) throw ConfigError(path.string() + ": truncated pixel data");

  RgbImage img(w, h);
  auto px = img.pixels();
  for (std::size_t i = 0; i < px.size(); ++i) {
    px[i] = channels == 3 ? Rgb{buf[3 * i], buf[3 * i + 1], buf[3 * i + 2]} : Rgb{buf[i], buf[i], buf[i]};
  }
  return img;
}

void write_ppm(const std::filesystem::path& path, const RgbImage& img) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << "P6\n" << img.width() << ' ' << img.height() << "\n255\n";
  for (const Rgb& p : img.pixels()) {
    const char bytes[3] = {static_cast<char>(p.r), static_cast<char>(p.g), static_cast<char>(p.b)};
    out.write(bytes, 3);
  }
}

void write_pgm(const std::filesystem::path& path, const BinaryMask& mask) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << "P5\n" << mask.width() << ' ' << mask.height() << "\n255\n";
  for (const std::uint8_t b : mask.pixels()) out.put(static_cast<char>(b ? 255 : 0));
}

RgbImage colorize_labels(const LabelImage& labels) {
  RgbImage out(labels.labels.width(), labels.labels.height());
  auto src = labels.labels.pixels();
  auto dst = out.pixels();
  for (std::size_t i = 0; i < src.size(); ++i) {
    if (src[i] == 0) continue;
    const auto k = static_cast<std::uint32_t>(src[i]) * 2654435761u;
    dst[i] = {static_cast<std::uint8_t>(64 + (k >> 24) % 192), static_cast<std::uint8_t>(64 + (k >> 16) % 192),
              static_cast<std::uint8_t>(64 + (k >> 8) % 192)};
  }
  return out;
}

void draw_line(RgbImage& img, PixelCoord a, PixelCoord b, Rgb color) {
  const double du = b.u - a.u, dv = b.v - a.v;
  const int steps = std::max(1, static_cast<int>(std::ceil(std::max(std::abs(du), std::abs(dv)))));
  for (int i = 0; i <= steps; ++i) {
    const double t = static_cast<double>(i) / steps;
    const int u = static_cast<int>(std::lround(a.u + t * du));
    const int v = static_cast<int>(std::lround(a.v + t * dv));
    if (img.contains(u, v)) img(u, v) = color;
  }
}

void draw_quad(RgbImage& img, const std::array<PixelCoord, 4>& quad, Rgb color) {
  for (int i = 0; i < 4; ++i) draw_line(img, quad[i], quad[(i + 1) % 4], color);
}

}  // namespace ipmo
