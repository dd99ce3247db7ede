// Copyright 2026 The Percolation Games Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "percolation/lattice.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>

#include "percolation/errors.hpp"

namespace percolation {

LatticePoint& LatticePoint::operator+=(const LatticePoint& other) {
  if (other.dim() != dim()) {
    throw ConfigError("dimension mismatch: " + to_string() + " + " +
                      other.to_string());
  }
  for (std::size_t k = 0; k < coords_.size(); ++k) {
    if (__builtin_add_overflow(coords_[k], other.coords_[k], &coords_[k])) {
      throw OverflowError("coordinate overflow in lattice addition");
    }
  }
  return *this;
}

Coord dot(std::span<const Coord> a, std::span<const Coord> b) {
  Coord s = 0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s;
}

Coord LatticePoint::dot(const LatticePoint& other) const {
  return percolation::dot(coords_, other.coords_);
}

Coord LatticePoint::norm1() const {
  Coord s = 0;
  for (Coord c : coords_) s += std::abs(c);
  return s;
}

Coord LatticePoint::norm_inf() const {
  Coord s = 0;
  for (Coord c : coords_) s = std::max<Coord>(s, std::abs(c));
  return s;
}

std::string LatticePoint::to_string() const {
  std::string out = "(";
  for (std::size_t k = 0; k < coords_.size(); ++k) {
    if (k) out += ",";
    out += std::to_string(coords_[k]);
  }
  return out + ")";
}

Box::Box(std::vector<Coord> lo, std::vector<Coord> hi)
    : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (lo_.size() != hi_.size()) {
    throw ConfigError("box bounds have different dimensions");
  }
}

Box Box::around(const LatticePoint& p) {
  std::vector<Coord> c(p.coords().begin(), p.coords().end());
  return Box(c, c);
}

Box Box::hull(std::span<const LatticePoint> points) {
  if (points.empty()) throw ConfigError("hull of an empty point set");
  Box b = around(points.front());
  for (const auto& p : points) {
    if (p.dim() != b.dim()) throw ConfigError("hull: dimension mismatch");
    for (std::size_t k = 0; k < b.dim(); ++k) {
      b.lo_[k] = std::min(b.lo_[k], p[k]);
      b.hi_[k] = std::max(b.hi_[k], p[k]);
    }
  }
  return b;
}

bool Box::empty() const {
  if (lo_.empty()) return true;
  for (std::size_t k = 0; k < lo_.size(); ++k) {
    if (hi_[k] < lo_[k]) return true;
  }
  return false;
}

std::uint64_t Box::volume() const {
  if (empty()) return 0;
  constexpr std::uint64_t kLimit = std::uint64_t{1} << 62;
  std::uint64_t v = 1;
  for (std::size_t k = 0; k < lo_.size(); ++k) {
    const auto e = static_cast<std::uint64_t>(extent(k));
    if (e != 0 && v > kLimit / e) {
      throw OverflowError("box volume overflow: " + to_string());
    }
    v *= e;
  }
  return v;
}

bool Box::contains(std::span<const Coord> z) const {
  if (z.size() != lo_.size() || empty()) return false;
  for (std::size_t k = 0; k < lo_.size(); ++k) {
    if (z[k] < lo_[k] || z[k] > hi_[k]) return false;
  }
  return true;
}

bool Box::contains(const Box& other) const {
  if (other.empty()) return true;
  return contains(other.lo()) && contains(other.hi());
}

std::vector<std::size_t> Box::strides() const {
  std::vector<std::size_t> s(lo_.size(), 1);
  for (std::size_t k = lo_.size(); k-- > 1;) {
    s[k - 1] = s[k] * static_cast<std::size_t>(extent(k));
  }
  return s;
}

std::size_t Box::index(std::span<const Coord> z) const {
  std::size_t idx = 0;
  for (std::size_t k = 0; k < lo_.size(); ++k) {
    idx = idx * static_cast<std::size_t>(extent(k)) +
          static_cast<std::size_t>(z[k] - lo_[k]);
  }
  return idx;
}

std::ptrdiff_t Box::signed_index(std::span<const Coord> z) const {
  std::ptrdiff_t idx = 0;
  for (std::size_t k = 0; k < lo_.size(); ++k) {
    idx = idx * static_cast<std::ptrdiff_t>(extent(k)) +
          static_cast<std::ptrdiff_t>(z[k] - lo_[k]);
  }
  return idx;
}

LatticePoint Box::point(std::size_t index) const {
  std::vector<Coord> z(lo_.size());
  for (std::size_t k = lo_.size(); k-- > 0;) {
    const auto e = static_cast<std::size_t>(extent(k));
    z[k] = lo_[k] + static_cast<Coord>(index % e);
    index /= e;
  }
  return LatticePoint(std::move(z));
}

Box Box::shifted(std::span<const Coord> lo_step,
                 std::span<const Coord> hi_step) const {
  Box b = *this;
  for (std::size_t k = 0; k < lo_.size(); ++k) {
    if (__builtin_add_overflow(b.lo_[k], lo_step[k], &b.lo_[k]) ||
        __builtin_add_overflow(b.hi_[k], hi_step[k], &b.hi_[k])) {
      throw OverflowError("coordinate overflow growing " + to_string());
    }
  }
  return b;
}

Box Box::dilated(std::span<const Coord> radius) const {
  std::vector<Coord> neg(radius.size());
  for (std::size_t k = 0; k < radius.size(); ++k) neg[k] = -radius[k];
  return shifted(neg, radius);
}

std::string Box::to_string() const {
  std::string out = "[";
  for (std::size_t k = 0; k < lo_.size(); ++k) {
    if (k) out += ",";
    out += std::to_string(lo_[k]) + ":" + std::to_string(hi_[k]);
  }
  return out + "]";
}

}  // namespace percolation
