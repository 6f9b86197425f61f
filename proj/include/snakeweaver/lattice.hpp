// Copyright 2026 The snakeweaver Authors
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
#include <compare>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

namespace snakeweaver {

struct Vertex {
  int x = 0;
  int y = 0;

  friend bool operator==(const Vertex&, const Vertex&) = default;
  // Canonical order: ascending y, then ascending x.
  friend std::strong_ordering operator<=>(const Vertex& a, const Vertex& b) {
    if (auto c = a.y <=> b.y; c != 0) return c;
    return a.x <=> b.x;
  }
  Vertex operator+(const Vertex& o) const { return {x + o.x, y + o.y}; }
  Vertex operator-(const Vertex& o) const { return {x - o.x, y - o.y}; }
};

inline constexpr Vertex kEx{1, 0};
inline constexpr Vertex kEy{0, 1};

std::string to_string(const Vertex& v);

// Canonically ordered set of distinct lattice sites.
class Region {
 public:
  Region() = default;
  // Sorts into canonical order. Throws GeometryError on duplicates.
  explicit Region(std::vector<Vertex> sites);
  Region(std::initializer_list<Vertex> sites);

  const std::vector<Vertex>& sites() const { return sites_; }
  std::size_t size() const { return sites_.size(); }
  bool empty() const { return sites_.empty(); }
  const Vertex& operator[](std::size_t i) const { return sites_[i]; }
  auto begin() const { return sites_.begin(); }
  auto end() const { return sites_.end(); }

  bool contains(const Vertex& v) const;
  bool contains(const Region& r) const;
  bool intersects(const Region& r) const;
  // Position of v in canonical order, or -1.
  int index_of(const Vertex& v) const;

  Region unite(const Region& r) const;
  Region intersect(const Region& r) const;
  Region minus(const Region& r) const;
  Region translated(const Vertex& shift) const;

  friend bool operator==(const Region&, const Region&) = default;
  friend auto operator<=>(const Region& a, const Region& b) { return a.sites_ <=> b.sites_; }

 private:
  std::vector<Vertex> sites_;
};

std::string to_string(const Region& r);

struct Cluster {
  Vertex anchor;
  int width = 1;
  int height = 1;

  Region region() const;
};

// Sites {(anchor.x - n + i, anchor.y + j) : i in 1..n, j in 0..m-1}; the
// anchor is the bottom-right member.
Region cluster_region(const Vertex& anchor, int n, int m);

Region neighbors(const Vertex& v);
// Union of site neighborhoods, minus the region itself.
Region region_neighborhood(const Region& r);

// Coordinates inside a 3x3 cluster, (0,0) at the bottom-left site.
struct LocalCoord {
  int x = 0;
  int y = 0;
  friend bool operator==(const LocalCoord&, const LocalCoord&) = default;
};

LocalCoord rotate_pi_local(const LocalCoord& p);
Vertex cluster_site(const Vertex& anchor3x3, const LocalCoord& p);
Region cluster_sites(const Vertex& anchor3x3, const std::vector<LocalCoord>& pts);

struct Window {
  int width = 1;
  int height = 1;

  Window() = default;
  Window(int w, int h);
  bool contains(const Vertex& v) const;
  bool contains(const Region& r) const;
  Region region() const;
  std::size_t num_sites() const { return static_cast<std::size_t>(width) * height; }
  // Anchors of the 3x3 clusters fully inside, in canonical order.
  std::vector<Vertex> cluster_anchors() const;
  bool has_cluster(const Vertex& anchor3x3) const;
  friend bool operator==(const Window&, const Window&) = default;
};

// Ordered disjoint blocks, each touching the neighborhood of the ones before.
class BlockPath {
 public:
  BlockPath() = default;
  explicit BlockPath(std::vector<Region> blocks);

  const std::vector<Region>& blocks() const { return blocks_; }
  std::size_t size() const { return blocks_.size(); }
  Region support() const;
  // Union of blocks [0, k).
  Region prefix(std::size_t k) const;
  // N(block_k) intersected with the union of earlier blocks.
  Region conditioning(std::size_t k) const;

  static BlockPath singletons(const Region& sites_in_order);
  // Sites of the window row by row, bottom to top.
  static BlockPath row_major(const Window& w);
  // Columns x0..x1 of rows y0..y1, left to right.
  static BlockPath columns(int x0, int x1, int y0, int y1);

 private:
  std::vector<Region> blocks_;
};

// Sheared embedding of a vertex for plotting only.
std::pair<double, double> display_coordinates(const Vertex& v);

}  // namespace snakeweaver

template <>
struct std::hash<snakeweaver::Vertex> {
  std::size_t operator()(const snakeweaver::Vertex& v) const noexcept {
    return std::hash<long long>()((static_cast<long long>(v.x) << 32) ^ static_cast<unsigned>(v.y));
  }
};
