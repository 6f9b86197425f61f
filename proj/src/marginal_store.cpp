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

#include "snakeweaver/marginal_store.hpp"

#include <algorithm>

#include "snakeweaver/errors.hpp"
#include "snakeweaver/parallel.hpp"

namespace snakeweaver {
namespace {

std::vector<LocalCoord> rotated(const std::vector<LocalCoord>& pts) {
  std::vector<LocalCoord> out;
  for (const auto& p : pts) out.push_back(rotate_pi_local(p));
  return out;
}

std::string anchor_tag(const Vertex& v) { return std::to_string(v.x) + "," + std::to_string(v.y); }

}  // namespace

std::string CmCondition::label() const {
  return std::to_string(index % 4 + 1) + (index >= 4 ? "r" : "");
}

const std::vector<CmPattern>& c_m_base_patterns() {
  static const std::vector<CmPattern> patterns = {
      {{{1, 0}}, {{0, 0}}, {{0, 1}}},
      {{{2, 0}, {2, 1}}, {{1, 0}, {1, 1}}, {{0, 0}, {0, 1}, {0, 2}, {1, 2}}},
      {{{0, 0}, {1, 0}, {2, 0}, {2, 1}}, {{0, 1}, {1, 1}}, {{0, 2}, {1, 2}}},
      {{{0, 0}, {1, 0}, {2, 0}, {0, 1}, {0, 2}}, {{1, 1}, {2, 1}, {1, 2}}, {{2, 2}}},
  };
  return patterns;
}

std::vector<CmCondition> c_m_conditions(const Vertex& anchor) {
  std::vector<CmCondition> out;
  const auto& base = c_m_base_patterns();
  for (int rot = 0; rot < 2; ++rot) {
    for (int k = 0; k < 4; ++k) {
      const auto& p = base[k];
      CmCondition c;
      c.anchor = anchor;
      c.index = rot * 4 + k;
      c.a = cluster_sites(anchor, rot ? rotated(p.a) : p.a);
      c.b = cluster_sites(anchor, rot ? rotated(p.b) : p.b);
      c.c = cluster_sites(anchor, rot ? rotated(p.c) : p.c);
      if (c.a.intersects(c.b) || c.a.intersects(c.c) || c.b.intersects(c.c)) {
        throw GeometryError("condition pattern " + c.label() + " is not disjoint");
      }
      out.push_back(std::move(c));
    }
  }
  return out;
}

std::vector<CmCondition> c_m_conditions(const Window& window, const Vertex& anchor) {
  if (!window.has_cluster(anchor)) {
    throw GeometryError("3x3 cluster at " + to_string(anchor) + " is not inside the window");
  }
  return c_m_conditions(anchor);
}

MarginalSet::MarginalSet(Window window, int local_dim, std::map<Vertex, DensityOperator> marginals,
                         MarginalSetMetadata meta)
    : window_(window), local_dim_(local_dim), marginals_(std::move(marginals)), meta_(std::move(meta)) {
  if (window_.width < 3 || window_.height < 3) {
    throw GeometryError("window must hold at least one 3x3 cluster");
  }
  const auto anchors = window_.cluster_anchors();
  for (const auto& a : anchors) {
    auto it = marginals_.find(a);
    if (it == marginals_.end()) throw FormatError("missing marginal for cluster " + to_string(a));
    if (it->second.region() != cluster_region(a, 3, 3)) {
      throw FormatError("marginal at " + to_string(a) + " is not on its cluster");
    }
    if (it->second.local_dim() != local_dim_) {
      throw FormatError("marginal at " + to_string(a) + " has the wrong local dimension");
    }
  }
  if (marginals_.size() != anchors.size()) {
    for (const auto& [a, op] : marginals_) {
      if (!window_.has_cluster(a)) throw FormatError("marginal at " + to_string(a) + " is outside the window");
    }
  }
}

const DensityOperator& MarginalSet::marginal(const Vertex& anchor) const {
  auto it = marginals_.find(anchor);
  if (it == marginals_.end()) throw RegionError("no marginal for cluster " + to_string(anchor));
  return it->second;
}

MarginalSet MarginalSet::with_marginal(const Vertex& anchor, DensityOperator op) const {
  auto copy = marginals_;
  copy.insert_or_assign(anchor, std::move(op));
  return MarginalSet(window_, local_dim_, std::move(copy), meta_);
}

std::vector<Vertex> MarginalSet::parents(const Region& r) const {
  std::vector<Vertex> out;
  if (r.empty()) return out;
  for (const auto& [a, op] : marginals_) {
    if (op.region().contains(r)) out.push_back(a);
  }
  return out;
}

DensityOperator MarginalSet::derived_marginal_unchecked(const Region& r) const {
  const auto ps = parents(r);
  if (ps.empty()) throw RegionError("region " + to_string(r) + " is not inside any 3x3 cluster");
  return partial_trace(marginal(ps.front()), r);
}

DensityOperator MarginalSet::derived_marginal(const Region& r, double tol) const {
  {
    std::lock_guard<std::mutex> lock(cache_->mutex);
    if (auto it = cache_->derived.find(r); it != cache_->derived.end()) return it->second;
  }
  const auto ps = parents(r);
  if (ps.empty()) throw RegionError("region " + to_string(r) + " is not inside any 3x3 cluster");
  DensityOperator first = partial_trace(marginal(ps.front()), r);
  for (std::size_t i = 1; i < ps.size(); ++i) {
    const double dist = trace_distance(first, partial_trace(marginal(ps[i]), r));
    if (dist > tol) {
      throw ConsistencyError("clusters " + to_string(ps.front()) + " and " + to_string(ps[i]) +
                             " disagree on " + to_string(r) + " by " + std::to_string(dist));
    }
  }
  std::lock_guard<std::mutex> lock(cache_->mutex);
  cache_->derived.emplace(r, first);
  return first;
}

bool MarginalSetEntropyProvider::available(const Region& r) const { return r.empty() || ms_.covers(r); }

double MarginalSetEntropyProvider::entropy(const Region& r, LogBase base) const {
  if (r.empty()) return 0.0;
  {
    std::lock_guard<std::mutex> lock(mutex_);
    if (auto it = nats_.find(r); it != nats_.end()) return from_nats(it->second, base);
  }
  const double s = snakeweaver::entropy(ms_.derived_marginal(r, tol_), LogBase::e);
  std::lock_guard<std::mutex> lock(mutex_);
  nats_.emplace(r, s);
  return from_nats(s, base);
}

CheckReport check_markov_conditions(const MarginalSet& ms, double tol, LogBase base) {
  const auto anchors = ms.window().cluster_anchors();
  std::vector<CheckReport> parts(anchors.size());
  parallel_for(anchors.size(), [&](std::size_t i) {
    const Vertex a = anchors[i];
    StateEntropyProvider cluster(ms.marginal(a));
    CheckReport part;
    for (const auto& c : c_m_conditions(ms.window(), a)) {
      auto s = [&](const Region& r) { return cluster.entropy(r, base); };
      const double value = s(c.a.unite(c.b)) + s(c.b.unite(c.c)) - s(c.b) - s(c.support());
      part.add("cm/" + anchor_tag(a) + "/" + c.label(), {{"A", c.a}, {"B", c.b}, {"C", c.c}},
               value, tol);
    }
    parts[i] = std::move(part);
  });
  CheckReport out("markov_conditions");
  for (const auto& p : parts) out.append(p);
  return out;
}

CheckReport check_local_consistency(const MarginalSet& ms, double tol, bool full_pairwise) {
  const auto anchors = ms.window().cluster_anchors();
  std::vector<std::pair<Vertex, Vertex>> pairs;
  for (std::size_t i = 0; i < anchors.size(); ++i) {
    for (std::size_t j = i + 1; j < anchors.size(); ++j) {
      const Vertex delta = anchors[j] - anchors[i];
      const bool adjacent = std::abs(delta.x) + std::abs(delta.y) == 1;
      const bool overlapping = std::abs(delta.x) <= 2 && std::abs(delta.y) <= 2;
      if (full_pairwise ? overlapping : adjacent) pairs.emplace_back(anchors[i], anchors[j]);
    }
  }
  std::vector<CheckReport> parts(pairs.size());
  parallel_for(pairs.size(), [&](std::size_t i) {
    const auto& [a, b] = pairs[i];
    const DensityOperator& ma = ms.marginal(a);
    const DensityOperator& mb = ms.marginal(b);
    const Region overlap = ma.region().intersect(mb.region());
    const double dist = trace_distance(partial_trace(ma, overlap), partial_trace(mb, overlap));
    CheckReport part;
    part.add("consistency/" + anchor_tag(a) + "/" + anchor_tag(b),
             {{"overlap", overlap}, {"first", ma.region()}, {"second", mb.region()}}, dist, tol);
    parts[i] = std::move(part);
  });
  CheckReport out("local_consistency");
  for (const auto& p : parts) out.append(p);
  return out;
}

}  // namespace snakeweaver
