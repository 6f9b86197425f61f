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

#include "snakeweaver/ci_calculus.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <unordered_map>

#include "snakeweaver/errors.hpp"
#include "snakeweaver/marginal_store.hpp"

namespace snakeweaver::ci {
namespace {

using Mask = std::uint64_t;

struct Key {
  Mask x, y;
  friend bool operator==(const Key&, const Key&) = default;
};

struct KeyHash {
  std::size_t operator()(const Key& k) const noexcept {
    return std::hash<Mask>()(k.x * 0x9E3779B97F4A7C15ULL ^ k.y);
  }
};

struct MStatement {
  Mask a = 0, b = 0, c = 0;
  friend bool operator==(const MStatement&, const MStatement&) = default;
};

struct MHash {
  std::size_t operator()(const MStatement& s) const noexcept {
    return KeyHash()({s.a ^ (s.b << 1), s.c * 31 + s.b});
  }
};

// Lexicographic order of the sorted site lists the masks stand for.
bool lex_less(Mask p, Mask q) {
  while (p && q) {
    const int lp = std::countr_zero(p), lq = std::countr_zero(q);
    if (lp != lq) return lp < lq;
    p &= p - 1;
    q &= q - 1;
  }
  return !p && q;
}

MStatement canon(Mask a, Mask b, Mask c) {
  if (lex_less(c, a)) std::swap(a, c);
  return {a, b, c};
}

class Universe {
 public:
  void add(const Region& r) {
    for (const auto& v : r) sites_.push_back(v);
  }
  void add(const Statement& s) {
    add(s.a);
    add(s.b);
    add(s.c);
  }
  void finish() {
    Region r(dedup());
    sites_ = r.sites();
    if (sites_.size() > 64) throw Error("derivation universe exceeds 64 sites");
  }
  Mask mask(const Region& r) const {
    Mask m = 0;
    for (const auto& v : r) {
      auto it = std::lower_bound(sites_.begin(), sites_.end(), v);
      m |= Mask{1} << (it - sites_.begin());
    }
    return m;
  }
  Region region(Mask m) const {
    std::vector<Vertex> out;
    for (; m; m &= m - 1) out.push_back(sites_[std::countr_zero(m)]);
    return Region(std::move(out));
  }
  MStatement encode(const Statement& s) const { return canon(mask(s.a), mask(s.b), mask(s.c)); }
  Statement decode(const MStatement& s) const { return {region(s.a), region(s.b), region(s.c)}; }

 private:
  std::vector<Vertex> dedup() {
    std::sort(sites_.begin(), sites_.end());
    sites_.erase(std::unique(sites_.begin(), sites_.end()), sites_.end());
    return sites_;
  }
  std::vector<Vertex> sites_;
};

template <typename F>
void for_proper_submasks(Mask x, F&& f) {
  for (Mask d = (x - 1) & x; d; d = (d - 1) & x) f(d);
}

template <typename F>
void mono_moves(const MStatement& s, F&& emit) {
  const Mask sides[2][2] = {{s.a, s.c}, {s.c, s.a}};
  for (const auto& side : sides) {
    const Mask x = side[0], y = side[1];
    for_proper_submasks(x, [&](Mask d) {
      emit(canon(x & ~d, s.b, y));
      emit(canon(x & ~d, s.b | d, y));
    });
  }
}

// s1 oriented (x, y | b1) and s2 oriented (x, z | b2) with b2 u z = b1.
template <typename F>
void revmono_moves(const MStatement& s1, const MStatement& s2, F&& emit) {
  const MStatement o1[2] = {s1, {s1.c, s1.b, s1.a}};
  const MStatement o2[2] = {s2, {s2.c, s2.b, s2.a}};
  for (const auto& p : o1) {
    for (const auto& q : o2) {
      if (p.a == q.a && (q.b | q.c) == p.b) emit(canon(p.a, q.b, p.c | q.c));
      if (q.a == p.a && (p.b | p.c) == q.b) emit(canon(q.a, p.b, q.c | p.c));
    }
  }
}

struct Provenance {
  int move = 0;  // 0 axiom, 1 mono, 2 revmono
  int in1 = -1, in2 = -1;
};

class Engine {
 public:
  explicit Engine(const Universe& u) : u_(u) {}

  int insert(const MStatement& s, Provenance p) {
    auto [it, fresh] = ids_.emplace(s, static_cast<int>(all_.size()));
    if (!fresh) return -1;
    all_.push_back(s);
    prov_.push_back(p);
    return it->second;
  }

  void index(int id) {
    const MStatement s = all_[id];
    const MStatement o[2] = {s, {s.c, s.b, s.a}};
    for (const auto& q : o) {
      // As the smaller-conditioning partner: keyed by (x, b u z).
      by_union_[{q.a, q.b | q.c}].push_back(id);
      // As the larger-conditioning partner: keyed by (x, b).
      by_cond_[{q.a, q.b}].push_back(id);
    }
  }

  // Runs up to `depth` rounds; stops early once `stop` returns true.
  void run(int depth, const std::function<bool(int)>& stop) {
    std::vector<int> frontier;
    for (int i = 0; i < static_cast<int>(all_.size()); ++i) {
      index(i);
      frontier.push_back(i);
      if (stop && stop(i)) return;
    }
    for (int round = 0; round < depth && !frontier.empty(); ++round) {
      std::vector<int> next;
      bool done = false;
      auto add = [&](const MStatement& s, Provenance p) {
        if (done) return;
        const int id = insert(s, p);
        if (id < 0) return;
        next.push_back(id);
        if (stop && stop(id)) done = true;
      };
      for (int id : frontier) {
        const MStatement s = all_[id];
        mono_moves(s, [&](const MStatement& c) { add(c, {1, id, -1}); });
        const MStatement o[2] = {s, {s.c, s.b, s.a}};
        for (const auto& p : o) {
          // s plays I(x:y|b u z); partners I(x:z|b) have b u z = p.b.
          if (auto it = by_union_.find({p.a, p.b}); it != by_union_.end()) {
            for (int other : it->second) {
              revmono_moves(s, all_[other], [&](const MStatement& c) { add(c, {2, id, other}); });
            }
          }
          // s plays I(x:z|b); partners I(x:y|b u z).
          if (auto it = by_cond_.find({p.a, p.b | p.c}); it != by_cond_.end()) {
            for (int other : it->second) {
              revmono_moves(all_[other], s, [&](const MStatement& c) { add(c, {2, other, id}); });
            }
          }
        }
        if (done) break;
      }
      for (int id : next) index(id);
      if (done) return;
      frontier = std::move(next);
    }
  }

  int find(const MStatement& s) const {
    auto it = ids_.find(s);
    return it == ids_.end() ? -1 : it->second;
  }
  const std::vector<MStatement>& all() const { return all_; }

  Derivation trace(int target) const {
    Derivation d;
    std::vector<bool> seen(all_.size(), false);
    std::function<void(int)> visit = [&](int id) {
      if (seen[id]) return;
      seen[id] = true;
      const auto& p = prov_[id];
      if (p.move == 0) return;
      visit(p.in1);
      if (p.in2 >= 0) visit(p.in2);
      Step st;
      st.move = p.move == 1 ? "mono" : "revmono";
      st.inputs.push_back(u_.decode(all_[p.in1]));
      if (p.in2 >= 0) st.inputs.push_back(u_.decode(all_[p.in2]));
      st.output = u_.decode(all_[id]);
      d.steps.push_back(std::move(st));
    };
    visit(target);
    return d;
  }

 private:
  const Universe& u_;
  std::vector<MStatement> all_;
  std::vector<Provenance> prov_;
  std::unordered_map<MStatement, int, MHash> ids_;
  std::unordered_map<Key, std::vector<int>, KeyHash> by_union_;
  std::unordered_map<Key, std::vector<int>, KeyHash> by_cond_;
};

Universe universe_of(const std::vector<Statement>& ss) {
  Universe u;
  for (const auto& s : ss) u.add(s);
  u.finish();
  return u;
}

}  // namespace

Statement make_statement(Region a, Region b, Region c) {
  if (a.empty() || c.empty()) throw GeometryError("CI statement needs nonempty A and C");
  if (a.intersects(b) || a.intersects(c) || b.intersects(c)) {
    throw GeometryError("CI statement parts must be pairwise disjoint");
  }
  if (c < a) std::swap(a, c);
  return {std::move(a), std::move(b), std::move(c)};
}

std::string to_string(const Statement& s) {
  return "I(" + snakeweaver::to_string(s.a) + ":" + snakeweaver::to_string(s.c) + "|" +
         snakeweaver::to_string(s.b) + ")";
}

std::vector<Statement> mono_children(const Statement& s) {
  const Universe u = universe_of({s});
  std::vector<Statement> out;
  std::unordered_map<MStatement, bool, MHash> seen;
  mono_moves(u.encode(s), [&](const MStatement& c) {
    if (seen.emplace(c, true).second) out.push_back(u.decode(c));
  });
  return out;
}

std::vector<Statement> rev_mono_all(const Statement& s1, const Statement& s2) {
  const Universe u = universe_of({s1, s2});
  std::vector<Statement> out;
  revmono_moves(u.encode(s1), u.encode(s2), [&](const MStatement& c) {
    Statement st = u.decode(c);
    if (std::find(out.begin(), out.end(), st) == out.end()) out.push_back(std::move(st));
  });
  return out;
}

std::optional<Statement> rev_mono(const Statement& s1, const Statement& s2) {
  auto all = rev_mono_all(s1, s2);
  if (all.empty()) return std::nullopt;
  return all.front();
}

std::optional<Derivation> derive(const std::vector<Statement>& axioms, const Statement& target,
                                 int depth) {
  if (axioms.empty()) return std::nullopt;
  std::vector<Statement> everything = axioms;
  everything.push_back(target);
  const Universe u = universe_of(everything);
  Engine e(u);
  for (const auto& ax : axioms) e.insert(u.encode(ax), {});
  const MStatement goal = u.encode(target);
  int hit = -1;
  e.run(depth, [&](int id) {
    if (e.all()[id] == goal) hit = id;
    return hit >= 0;
  });
  if (hit < 0) return std::nullopt;
  return e.trace(hit);
}

std::vector<Statement> closure(const std::vector<Statement>& axioms, int depth) {
  if (axioms.empty()) return {};
  const Universe u = universe_of(axioms);
  Engine e(u);
  for (const auto& ax : axioms) e.insert(u.encode(ax), {});
  e.run(depth, nullptr);
  std::vector<Statement> out;
  out.reserve(e.all().size());
  for (const auto& s : e.all()) out.push_back(u.decode(s));
  return out;
}

std::vector<Statement> cluster_axioms(const Vertex& anchor) {
  const Region cluster = cluster_region(anchor, 3, 3);
  std::vector<Statement> out;
  std::vector<Vertex> shifts{{0, 0}};
  for (int dy = -2; dy <= 2; ++dy) {
    for (int dx = -2; dx <= 2; ++dx) {
      if (dx || dy) shifts.push_back({dx, dy});
    }
  }
  for (const auto& shift : shifts) {
    for (const auto& c : c_m_conditions(anchor + shift)) {
      if (!cluster.contains(c.support())) continue;
      Statement s = make_statement(c.a, c.b, c.c);
      if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(std::move(s));
    }
  }
  return out;
}

Statement level1_snake_target(const Vertex& anchor) {
  return make_statement(Region{cluster_site(anchor, {2, 1})}, Region{cluster_site(anchor, {1, 1})},
                        Region{cluster_site(anchor, {0, 1})});
}

}  // namespace snakeweaver::ci
