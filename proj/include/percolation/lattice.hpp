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

#ifndef PERCOLATION_LATTICE_HPP_
#define PERCOLATION_LATTICE_HPP_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace percolation {

using Coord = std::int64_t;

// A state z of the lattice Z^d.
class LatticePoint {
 public:
  LatticePoint() = default;
  explicit LatticePoint(std::vector<Coord> coords)
      : coords_(std::move(coords)) {}
  LatticePoint(std::initializer_list<Coord> coords) : coords_(coords) {}

  static LatticePoint zero(std::size_t dim) {
    return LatticePoint(std::vector<Coord>(dim, 0));
  }

  std::size_t dim() const { return coords_.size(); }
  Coord operator[](std::size_t k) const { return coords_[k]; }
  Coord& operator[](std::size_t k) { return coords_[k]; }
  std::span<const Coord> coords() const { return coords_; }

  LatticePoint& operator+=(const LatticePoint& other);
  friend LatticePoint operator+(LatticePoint a, const LatticePoint& b) {
    a += b;
    return a;
  }

  Coord dot(const LatticePoint& other) const;
  Coord norm1() const;
  Coord norm_inf() const;

  std::string to_string() const;

  friend bool operator==(const LatticePoint&, const LatticePoint&) = default;
  friend auto operator<=>(const LatticePoint&, const LatticePoint&) = default;

 private:
  std::vector<Coord> coords_;
};

Coord dot(std::span<const Coord> a, std::span<const Coord> b);

// Axis-aligned box with inclusive bounds. Points are linearised in row-major
// order (last coordinate fastest), so iterating indices visits points in
// lexicographic order.
class Box {
 public:
  Box() = default;
  Box(std::vector<Coord> lo, std::vector<Coord> hi);

  static Box around(const LatticePoint& p);
  static Box hull(std::span<const LatticePoint> points);

  std::size_t dim() const { return lo_.size(); }
  std::span<const Coord> lo() const { return lo_; }
  std::span<const Coord> hi() const { return hi_; }
  Coord extent(std::size_t k) const { return hi_[k] - lo_[k] + 1; }
  bool empty() const;

  // Number of lattice points; throws OverflowError past 2^62.
  std::uint64_t volume() const;

  bool contains(std::span<const Coord> z) const;
  bool contains(const LatticePoint& z) const { return contains(z.coords()); }
  bool contains(const Box& other) const;

  std::vector<std::size_t> strides() const;
  std::size_t index(std::span<const Coord> z) const;
  // Row-major offset of z relative to lo(); valid for points outside the box.
  std::ptrdiff_t signed_index(std::span<const Coord> z) const;
  LatticePoint point(std::size_t index) const;

  // Grows by `lo_step` / `hi_step` on each side per coordinate.
  Box shifted(std::span<const Coord> lo_step, std::span<const Coord> hi_step) const;
  Box dilated(std::span<const Coord> radius) const;

  std::string to_string() const;

  friend bool operator==(const Box&, const Box&) = default;

 private:
  std::vector<Coord> lo_;
  std::vector<Coord> hi_;
};

// Calls fn(z, index) for every point of the box in index order.
template <class Fn>
void for_each_point(const Box& box, Fn&& fn) {
  if (box.empty()) return;
  const std::size_t d = box.dim();
  std::vector<Coord> z(box.lo().begin(), box.lo().end());
  const std::uint64_t total = box.volume();
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    fn(std::span<const Coord>(z), static_cast<std::size_t>(idx));
    for (std::size_t k = d; k-- > 0;) {
      if (z[k] < box.hi()[k]) {
        ++z[k];
        break;
      }
      z[k] = box.lo()[k];
    }
  }
}

}  // namespace percolation

#endif  // PERCOLATION_LATTICE_HPP_
