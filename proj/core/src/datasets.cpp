// Copyright 2026 The dbandit Authors.
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

#include "dbandit/datasets.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iterator>
#include <set>
#include <sstream>
#include <string>

#include "dbandit/errors.hpp"

namespace dbandit {

namespace {

constexpr std::uint32_t kIdxImageMagic = 0x00000803;
constexpr std::uint32_t kIdxLabelMagic = 0x00000801;

std::vector<unsigned char> read_all(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string(), 0);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::uint32_t read_be32(const std::vector<unsigned char>& buf, std::size_t offset,
                        const std::filesystem::path& path) {
  if (offset + 4 > buf.size())
    throw FormatError(path.string() + ": truncated header at byte " +
                          std::to_string(offset),
                      offset);
  return (std::uint32_t{buf[offset]} << 24) | (std::uint32_t{buf[offset + 1]} << 16) |
         (std::uint32_t{buf[offset + 2]} << 8) | std::uint32_t{buf[offset + 3]};
}

void expect_magic(std::uint32_t got, std::uint32_t want,
                  const std::filesystem::path& path) {
  if (got != want) {
    std::ostringstream msg;
    msg << path.string() << ": bad IDX magic 0x" << std::hex << got
        << " at byte 0 (expected 0x" << want << ")";
    throw FormatError(msg.str(), 0);
  }
}

void expect_payload(std::size_t have, std::size_t offset, std::size_t need,
                    const std::filesystem::path& path) {
  if (have < offset + need)
    throw FormatError(path.string() + ": truncated payload at byte " +
                          std::to_string(have) + " (expected " +
                          std::to_string(offset + need) + " bytes)",
                      have);
}

}  // namespace

std::vector<Vector> load_idx_images(const std::filesystem::path& path) {
  const auto buf = read_all(path);
  expect_magic(read_be32(buf, 0, path), kIdxImageMagic, path);
  const std::size_t count = read_be32(buf, 4, path);
  const std::size_t rows = read_be32(buf, 8, path);
  const std::size_t cols = read_be32(buf, 12, path);
  const std::size_t pixels = rows * cols;
  constexpr std::size_t kHeader = 16;
  expect_payload(buf.size(), kHeader, count * pixels, path);

  std::vector<Vector> images;
  images.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    Vector img(static_cast<Eigen::Index>(pixels));
    const unsigned char* src = buf.data() + kHeader + i * pixels;
    for (std::size_t j = 0; j < pixels; ++j) img[static_cast<Eigen::Index>(j)] = src[j] / 255.0;
    images.push_back(std::move(img));
  }
  return images;
}

std::vector<int> load_idx_labels(const std::filesystem::path& path) {
  const auto buf = read_all(path);
  expect_magic(read_be32(buf, 0, path), kIdxLabelMagic, path);
  const std::size_t count = read_be32(buf, 4, path);
  constexpr std::size_t kHeader = 8;
  expect_payload(buf.size(), kHeader, count, path);
  return {buf.begin() + kHeader, buf.begin() + static_cast<std::ptrdiff_t>(kHeader + count)};
}

std::vector<LabeledSample> load_idx(const std::filesystem::path& images,
                                    const std::filesystem::path& labels) {
  auto xs = load_idx_images(images);
  const auto ys = load_idx_labels(labels);
  if (xs.size() != ys.size())
    throw FormatError(labels.string() + ": label count " + std::to_string(ys.size()) +
                          " does not match image count " + std::to_string(xs.size()),
                      4);
  std::vector<LabeledSample> out;
  out.reserve(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i)
    out.push_back(LabeledSample{std::move(xs[i]), ys[i]});
  return out;
}

std::vector<LabeledSample> load_mushroom_csv(const std::filesystem::path& path) {
  constexpr std::size_t kFields = 23;
  constexpr std::size_t kAttributes = kFields - 1;
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path.string(), 0);

  std::vector<std::array<char, kFields>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::array<char, kFields> row{};
    std::size_t field = 0;
    std::stringstream ss(line);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      if (field >= kFields || tok.size() != 1) {
        field = kFields + 1;
        break;
      }
      row[field++] = tok[0];
    }
    if (field != kFields)
      throw FormatError(path.string() + ":" + std::to_string(line_no) +
                            ": expected 23 single-letter fields",
                        line_no);
    if (row[0] != 'e' && row[0] != 'p')
      throw FormatError(path.string() + ":" + std::to_string(line_no) +
                            ": class must be 'e' or 'p'",
                        line_no);
    rows.push_back(row);
  }

  std::array<std::set<char>, kFields> categories;
  for (const auto& row : rows)
    for (std::size_t c = 1; c < kFields; ++c) categories[c].insert(row[c]);

  std::vector<LabeledSample> out;
  out.reserve(rows.size());
  for (const auto& row : rows) {
    Vector x(static_cast<Eigen::Index>(kAttributes));
    for (std::size_t c = 1; c < kFields; ++c) {
      const auto& cats = categories[c];
      const auto rank = std::distance(cats.begin(), cats.find(row[c]));
      x[static_cast<Eigen::Index>(c - 1)] =
          cats.size() > 1 ? static_cast<double>(rank) / static_cast<double>(cats.size() - 1)
                          : 0.0;
    }
    out.push_back(LabeledSample{std::move(x), row[0] == 'e' ? 0 : 1});
  }
  return out;
}

ContextSet disjoint_transform(const Vector& x, int arms) {
  if (arms < 2) throw ArgumentError("disjoint transform needs K >= 2");
  const Eigen::Index d0 = x.size();
  ContextSet out;
  out.reserve(static_cast<std::size_t>(arms));
  for (int a = 0; a < arms; ++a) {
    Vector v = Vector::Zero(d0 * arms);
    v.segment(a * d0, d0) = x;
    out.push_back(std::move(v));
  }
  return out;
}

Vector mirror_embed(const Vector& x) {
  const double norm = x.norm();
  if (!(norm > 0.0)) throw DegenerateContextError("cannot normalize a zero context");
  Vector out(2 * x.size());
  const double scale = 1.0 / (std::sqrt(2.0) * norm);
  out.head(x.size()) = x * scale;
  out.tail(x.size()) = x * scale;
  return out;
}

SyntheticKind parse_synthetic_kind(std::string_view id) {
  if (id == "linear") return SyntheticKind::kLinear;
  if (id == "quadratic-clipped") return SyntheticKind::kQuadratic;
  if (id == "cosine-clipped") return SyntheticKind::kCosine;
  throw ConfigError("unknown synthetic reward '" + std::string(id) +
                    "' (expected linear, quadratic-clipped, cosine-clipped)");
}

std::string_view to_string(SyntheticKind kind) {
  switch (kind) {
    case SyntheticKind::kLinear: return "linear";
    case SyntheticKind::kQuadratic: return "quadratic-clipped";
    case SyntheticKind::kCosine: return "cosine-clipped";
  }
  return "?";
}

RewardFunction synthetic_h(SyntheticKind kind, Vector direction) {
  auto clip = [](double v) { return std::clamp(v, 0.0, 1.0); };
  switch (kind) {
    case SyntheticKind::kLinear:
      return [a = std::move(direction), clip](const Vector& x) { return clip(x.dot(a)); };
    case SyntheticKind::kQuadratic:
      return [a = std::move(direction), clip](const Vector& x) {
        const double s = x.dot(a);
        return clip(s * s);
      };
    case SyntheticKind::kCosine:
      return [a = std::move(direction), clip](const Vector& x) {
        return clip((1.0 + std::cos(3.0 * x.dot(a))) / 2.0);
      };
  }
  throw ConfigError("unknown synthetic reward kind");
}

Vector random_unit_vector(int dim, Rng& rng) {
  std::normal_distribution<double> standard(0.0, 1.0);
  Vector v(dim);
  do {
    for (int i = 0; i < dim; ++i) v[i] = standard(rng);
  } while (v.norm() == 0.0);
  return v / v.norm();
}

}  // namespace dbandit
