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

#include "snakeweaver/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>

#include "snakeweaver/errors.hpp"

namespace snakeweaver {

std::string to_string(const Vertex& v) {
  return "(" + std::to_string(v.x) + "," + std::to_string(v.y) + ")";
}

Region::Region(std::vector<Vertex> sites) : sites_(std::move(sites)) {
  std::sort(sites_.begin(), sites_.end());
  if (std::adjacent_find(sites_.begin(), sites_.end()) != sites_.end()) {
    throw GeometryError("region contains duplicate vertex");
  }
}

Region::Region(std::initializer_list<Vertex> sites) : Region(std::vector<Vertex>(sites)) {}

bool Region::contains(const Vertex& v) const {
  return std::binary_search(sites_.begin(), sites_.end(), v);
}

bool Region::contains(const Region& r) const {
  return std::includes(sites_.begin(), sites_.end(), r.sites_.begin(), r.sites_.end());
}

bool Region::intersects(const Region& r) const { return !intersect(r).empty(); }

int Region::index_of(const Vertex& v) const {
  auto it = std::lower_bound(sites_.begin(), sites_.end(), v);
  if (it == sites_.end() || *it != v) return -1;
  return static_cast<int>(it - sites_.begin());
}

Region Region::unite(const Region& r) const {
  Region out;
  std::set_union(sites_.begin(), sites_.end(), r.sites_.begin(), r.sites_.end(),
                 std::back_inserter(out.sites_));
  return out;
}

Region Region::intersect(const Region& r) const {
  Region out;
  std::set_intersection(sites_.begin(), sites_.end(), r.sites_.begin(), r.sites_.end(),
                        std::back_inserter(out.sites_));
  return out;
}

Region Region::minus(const Region& r) const {
  Region out;
  std::set_difference(sites_.begin(), sites_.end(), r.sites_.begin(), r.sites_.end(),
                      std::back_inserter(out.sites_));
  return out;
}

Region Region::translated(const Vertex& shift) const {
  Region out;
  out.sites_.reserve(sites_.size());
  for (const auto& v : sites_) out.sites_.push_back(v + shift);
  return out;
}

std::string to_string(const Region& r) {
  std::string s = "{";
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i) s += ",";
    s += to_string(r[i]);
  }
  return s + "}";
}

Region Cluster::region() const { return cluster_region(anchor, width, height); }

Region cluster_region(const Vertex& anchor, int n, int m) {
  if (n < 1 || m < 1) {
    throw GeometryError("cluster dimensions must be positive, got " + std::to_string(n) + "x" +
                        std::to_string(m));
  }
  std::vector<Vertex> sites;
  sites.reserve(static_cast<std::size_t>(n) * m);
  for (int j = 0; j < m; ++j) {
    for (int i = 1; i <= n; ++i) sites.push_back({anchor.x - n + i, anchor.y + j});
  }
  return Region(std::move(sites));
}

Region neighbors(const Vertex& v) {
  return Region{{v.x, v.y - 1}, {v.x - 1, v.y}, {v.x + 1, v.y}, {v.x, v.y + 1}};
}

Region region_neighborhood(const Region& r) {
  std::vector<Vertex> out;
  for (const auto& v : r) {
    for (const auto& w : neighbors(v)) {
      if (!r.contains(w)) out.push_back(w);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return Region(std::move(out));
}

LocalCoord rotate_pi_local(const LocalCoord& p) {
  if (p.x < 0 || p.x > 2 || p.y < 0 || p.y > 2) {
    throw GeometryError("local coordinate out of range");
  }
  return {2 - p.x, 2 - p.y};
}

Vertex cluster_site(const Vertex& anchor3x3, const LocalCoord& p) {
  return {anchor3x3.x - 2 + p.x, anchor3x3.y + p.y};
}

Region cluster_sites(const Vertex& anchor3x3, const std::vector<LocalCoord>& pts) {
  std::vector<Vertex> out;
  out.reserve(pts.size());
  for (const auto& p : pts) out.push_back(cluster_site(anchor3x3, p));
  return Region(std::move(out));
}

Window::Window(int w, int h) : width(w), height(h) {
  if (w < 1 || h < 1) throw GeometryError("window dimensions must be positive");
}

bool Window::contains(const Vertex& v) const {
  return v.x >= 0 && v.x < width && v.y >= 0 && v.y < height;
}

bool Window::contains(const Region& r) const {
  return std::all_of(r.begin(), r.end(), [&](const Vertex& v) { return contains(v); });
}

Region Window::region() const { return cluster_region({width - 1, 0}, width, height); }

std::vector<Vertex> Window::cluster_anchors() const {
  std::vector<Vertex> out;
  for (int y = 0; y + 2 < height; ++y) {
    for (int x = 2; x < width; ++x) out.push_back({x, y});
  }
  return out;
}

bool Window::has_cluster(const Vertex& a) const {
  return a.x >= 2 && a.x < width && a.y >= 0 && a.y + 2 < height;
}

BlockPath::BlockPath(std::vector<Region> blocks) : blocks_(std::move(blocks)) {
  Region seen;
  for (std::size_t k = 0; k < blocks_.size(); ++k) {
    if (blocks_[k].empty()) throw GeometryError("block path contains an empty block");
    if (seen.intersects(blocks_[k])) throw GeometryError("block path blocks overlap");
    if (k > 0 && !region_neighborhood(seen).intersects(blocks_[k])) {
      throw GeometryError("block " + std::to_string(k) + " is not adjacent to earlier blocks");
    }
    seen = seen.unite(blocks_[k]);
  }
}

Region BlockPath::support() const { return prefix(blocks_.size()); }

Region BlockPath::prefix(std::size_t k) const {
  Region out;
  for (std::size_t i = 0; i < k && i < blocks_.size(); ++i) out = out.unite(blocks_[i]);
  return out;
}

Region BlockPath::conditioning(std::size_t k) const {
  return region_neighborhood(blocks_.at(k)).intersect(prefix(k));
}

BlockPath BlockPath::singletons(const Region& sites_in_order) {
  std::vector<Region> blocks;
  for (const auto& v : sites_in_order) blocks.push_back(Region{v});
  return BlockPath(std::move(blocks));
}

BlockPath BlockPath::row_major(const Window& w) { return singletons(w.region()); }

BlockPath BlockPath::columns(int x0, int x1, int y0, int y1) {
  std::vector<Region> blocks;
  for (int x = x0; x <= x1; ++x) blocks.push_back(cluster_region({x, y0}, 1, y1 - y0 + 1));
  return BlockPath(std::move(blocks));
}

std::pair<double, double> display_coordinates(const Vertex& v) {
  return {v.x - 0.5 * v.y, std::sqrt(3.0) / 2.0 * v.y};
}

}  // namespace snakeweaver
