#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "simplexlab/errors.hpp"
#include "simplexlab/ortho.hpp"
#include "simplexlab/structure.hpp"

namespace simplexlab {

enum class RewriteOp { branch_shift, unbalance, cycle_unbalance };

inline std::string op_name(RewriteOp op) {
  switch (op) {
    case RewriteOp::branch_shift: return "branch-shift";
    case RewriteOp::unbalance: return "unbalance";
    case RewriteOp::cycle_unbalance: return "cycle-unbalance";
  }
  return "?";
}

struct RewriteStep {
  RewriteOp operation = RewriteOp::branch_shift;
  std::vector<std::string> simplices;
  std::vector<std::string> vertices;
  std::vector<int> amounts;
  SimplexStructure first;
  SimplexStructure second;
};

namespace detail {

// Fresh names "<base>#<n>" with the smallest unused n >= 2.
class NameAllocator {
 public:
  explicit NameAllocator(const SimplexStructure& s) {
    for (const auto& sx : s.simplices) {
      used_.insert(sx.id);
      used_.insert(sx.vertices.begin(), sx.vertices.end());
    }
  }
  std::string fresh(const std::string& base) {
    for (int n = 2;; ++n) {
      std::string c = base + "#" + std::to_string(n);
      if (used_.insert(c).second) return c;
    }
  }

 private:
  std::set<std::string> used_;
};

inline std::set<std::string> branch_set(const VertexRoles& roles, const std::string& s, const std::string& v) {
  std::set<std::string> out;
  for (const auto& r : branch_roots(roles, s, v)) {
    for (const auto& id : subtree(roles, r)) out.insert(id);
  }
  return out;
}

// Removes the simplices in `drop` and appends copies of those in `dup`; the
// copies keep `anchor` and get fresh names for everything else.
inline SimplexStructure drop_and_duplicate(const SimplexStructure& s, const std::set<std::string>& drop,
                                           const std::set<std::string>& dup, const std::string& anchor) {
  SimplexStructure out;
  out.kind = s.kind;
  for (const auto& sx : s.simplices) {
    if (!drop.count(sx.id)) out.simplices.push_back(sx);
  }
  NameAllocator names(s);
  std::map<std::string, std::string> vmap{{anchor, anchor}};
  for (const auto& sx : s.simplices) {
    if (!dup.count(sx.id)) continue;
    Simplex copy;
    copy.id = names.fresh(sx.id);
    for (const auto& v : sx.vertices) {
      auto it = vmap.find(v);
      if (it == vmap.end()) it = vmap.emplace(v, names.fresh(v)).first;
      copy.vertices.push_back(it->second);
    }
    out.simplices.push_back(std::move(copy));
  }
  return out;
}

inline std::vector<std::string> deletable_free(const RootedTree& t, const SimplexRole& role) {
  std::vector<std::string> out;
  for (const auto& v : role.free_vertices) {
    if (t.designated_free_vertex && *t.designated_free_vertex == v) continue;
    out.push_back(v);
  }
  return out;
}

// Moves the last `count` entries of `from_free` out of simplex `from` and adds
// `count` fresh vertices to simplex `to`.
inline SimplexStructure move_free(const SimplexStructure& s, const std::string& from,
                                  const std::vector<std::string>& from_free, int count, const std::string& to) {
  std::set<std::string> gone(from_free.end() - count, from_free.end());
  NameAllocator names(s);
  SimplexStructure out = s;
  for (auto& sx : out.simplices) {
    if (sx.id == from) {
      std::vector<std::string> keep;
      for (const auto& v : sx.vertices) {
        if (!gone.count(v)) keep.push_back(v);
      }
      sx.vertices = keep;
    }
  }
  for (auto& sx : out.simplices) {
    if (sx.id == to) {
      for (int i = 0; i < count; ++i) sx.vertices.push_back(names.fresh(to + ".f"));
    }
  }
  return out;
}

}  // namespace detail

// T1 drops the branches of s2 at v2 and doubles those of s1 at v1; T2 is the
// mirror image.
inline std::pair<RootedTree, RootedTree> branch_shift(const RootedTree& t, const std::string& s1,
                                                      const std::string& v1, const std::string& s2,
                                                      const std::string& v2) {
  VertexRoles roles = classify_vertices(t);
  for (const auto& [s, v] : {std::pair{s1, v1}, std::pair{s2, v2}}) {
    t.structure.get(s);
    const auto& cv = roles.at(s).child_vertices;
    if (std::find(cv.begin(), cv.end(), v) == cv.end()) {
      throw ParameterError("'" + v + "' is not a child vertex of '" + s + "'");
    }
  }
  if (v1 == v2) throw ParameterError("branch shifting needs two distinct child vertices");
  auto b1 = detail::branch_set(roles, s1, v1);
  auto b2 = detail::branch_set(roles, s2, v2);
  if (b1.count(s2) || b2.count(s1)) {
    throw ParameterError("one branch set contains the other simplex; shifting would not be well defined");
  }
  RootedTree t1{detail::drop_and_duplicate(t.structure, b2, b1, v1), t.root, t.designated_free_vertex};
  RootedTree t2{detail::drop_and_duplicate(t.structure, b1, b2, v2), t.root, t.designated_free_vertex};
  require_tree(t1);
  require_tree(t2);
  return {t1, t2};
}

// T1 moves k2 free vertices from s2 to s1; T2 moves k1 free vertices from s1 to s2.
inline std::pair<RootedTree, RootedTree> simplex_unbalance(const RootedTree& t, const std::string& s1, int k1,
                                                           const std::string& s2, int k2) {
  VertexRoles roles = classify_vertices(t);
  if (s1 == s2) throw ParameterError("simplex unbalancing needs two distinct simplices");
  const Simplex& a = t.structure.get(s1);
  const Simplex& b = t.structure.get(s2);
  if (a.dim() < 2 || b.dim() < 2) throw ParameterError("both simplices need dimension at least 2");
  auto fa = detail::deletable_free(t, roles.at(s1));
  auto fb = detail::deletable_free(t, roles.at(s2));
  if (fa.empty() || fb.empty()) throw ParameterError("both simplices need a free vertex");
  if (k1 < 1 || k1 > int(fa.size()) || k1 > a.dim() - 1) throw ParameterError("k1 out of range");
  if (k2 < 1 || k2 > int(fb.size()) || k2 > b.dim() - 1) throw ParameterError("k2 out of range");
  RootedTree t1{detail::move_free(t.structure, s2, fb, k2, s1), t.root, t.designated_free_vertex};
  RootedTree t2{detail::move_free(t.structure, s1, fa, k1, s2), t.root, t.designated_free_vertex};
  require_tree(t1);
  require_tree(t2);
  return {t1, t2};
}

inline std::vector<std::string> cycle_free_vertices(const SimplexStructure& c, const std::string& id) {
  const Simplex& s = c.get(id);
  std::vector<std::string> out;
  for (const auto& v : s.vertices) {
    bool shared = false;
    for (const auto& o : c.simplices) {
      if (o.id != id && o.contains(v)) shared = true;
    }
    if (!shared) out.push_back(v);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// C1 strips every free vertex of s2 and gives that many new ones to s1; C2 is
// the mirror image.
inline std::pair<SimplexStructure, SimplexStructure> cycle_unbalance(const SimplexStructure& c,
                                                                     const std::string& s1,
                                                                     const std::string& s2) {
  if (c.kind != StructureKind::cycle) throw ParameterError("expected a cycle structure");
  require_valid(c);
  if (s1 == s2) throw ParameterError("cycle unbalancing needs two distinct simplices");
  if (c.get(s1).dim() < 2 || c.get(s2).dim() < 2) throw ParameterError("both simplices need dimension at least 2");
  auto f1 = cycle_free_vertices(c, s1);
  auto f2 = cycle_free_vertices(c, s2);
  auto c1 = detail::move_free(c, s2, f2, int(f2.size()), s1);
  auto c2 = detail::move_free(c, s1, f1, int(f1.size()), s2);
  require_valid(c1);
  require_valid(c2);
  return {c1, c2};
}

// Every cycle reachable by repeated cycle unbalancing until at most one
// simplex has dimension above 1, deduplicated by canonical form.
inline std::vector<SimplexStructure> cycle_normal_forms(const SimplexStructure& c,
                                                        std::vector<RewriteStep>* trace = nullptr) {
  std::deque<SimplexStructure> work{c};
  std::map<std::string, SimplexStructure> done;
  std::set<std::string> seen;
  while (!work.empty()) {
    SimplexStructure cur = work.front();
    work.pop_front();
    if (!seen.insert(canonical_form(cur)).second) continue;
    std::vector<std::string> big;
    for (const auto& s : cur.simplices) {
      if (s.dim() >= 2) big.push_back(s.id);
    }
    if (big.size() <= 1) {
      done.emplace(canonical_form(cur), cur);
      continue;
    }
    auto [c1, c2] = cycle_unbalance(cur, big[0], big[1]);
    if (trace) trace->push_back({RewriteOp::cycle_unbalance, {big[0], big[1]}, {}, {}, c1, c2});
    work.push_back(c1);
    work.push_back(c2);
  }
  std::vector<SimplexStructure> out;
  for (auto& [k, v] : done) out.push_back(v);
  return out;
}

struct ExponentIdentity {
  bool ok = false;
  std::int64_t stab_part = 0;  // e(n) - e(n-1) + e(m) - e(m+1)
  std::int64_t c_part = 0;     // c(T') - c(T)
};

// One free vertex moves from an n-simplex to an m-simplex. The stabilizer
// exponents and class-count exponents must cancel exactly.
inline ExponentIdentity exponent_identity_check(int d, int n, int m) {
  if (d < 2 || n < 1 || m < 1) throw ParameterError("exponent identity needs d >= 2, n >= 1, m >= 1");
  ExponentIdentity r;
  r.stab_part = stab_exponent(n, d) - stab_exponent(n - 1, d) + stab_exponent(m, d) - stab_exponent(m + 1, d);
  r.c_part = c_simplex(n - 1, d) + c_simplex(m + 1, d) - c_simplex(n, d) - c_simplex(m, d);
  r.ok = r.stab_part + r.c_part == 0;
  return r;
}

namespace detail {

// Big simplices (dimension > k) with big simplices in at most one direction.
inline std::vector<std::string> extremal_big(const SimplexStructure& s, int k) {
  std::map<std::string, std::vector<std::string>> by_vertex;
  for (const auto& sx : s.simplices) {
    for (const auto& v : sx.vertices) by_vertex[v].push_back(sx.id);
  }
  std::vector<std::string> out;
  for (const auto& sx : s.simplices) {
    if (sx.dim() <= k) continue;
    int directions = 0;
    for (const auto& v : sx.vertices) {
      std::set<std::string> seen{sx.id};
      std::deque<std::string> queue;
      for (const auto& o : by_vertex[v]) {
        if (seen.insert(o).second) queue.push_back(o);
      }
      bool big = false;
      while (!queue.empty()) {
        const Simplex& cur = s.get(queue.front());
        queue.pop_front();
        if (cur.dim() > k) big = true;
        for (const auto& w : cur.vertices) {
          for (const auto& o : by_vertex[w]) {
            if (seen.insert(o).second) queue.push_back(o);
          }
        }
      }
      if (big) ++directions;
    }
    if (directions <= 1) out.push_back(sx.id);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<std::string> small_child_vertices(const VertexRoles& roles, const SimplexStructure& s,
                                                     const std::string& id, int k) {
  std::vector<std::string> out;
  for (const auto& v : roles.at(id).child_vertices) {
    bool small = true;
    for (const auto& r : branch_roots(roles, id, v)) {
      for (const auto& sub : subtree(roles, r)) {
        if (s.get(sub).dim() > k) small = false;
      }
    }
    if (small) out.push_back(v);
  }
  return out;
}

}  // namespace detail

struct CanonicalResult {
  std::vector<RootedTree> terminals;
  std::vector<RewriteStep> trace;
};

// Applies branch shifting and simplex unbalancing to pairs of extremal big
// simplices until each tree has at most one simplex of dimension > k.
inline CanonicalResult canonicalize(const RootedTree& tree, int k) {
  if (k < 1) throw ParameterError("k must be at least 1");
  require_tree(tree);
  CanonicalResult res;
  std::deque<RootedTree> work{tree};
  std::set<std::string> seen;
  std::map<std::string, RootedTree> done;
  while (!work.empty()) {
    RootedTree cur = work.front();
    work.pop_front();
    std::string key = canonical_form(cur.structure);
    if (!seen.insert(key).second) continue;
    int big = 0;
    for (const auto& s : cur.structure.simplices) big += s.dim() > k;
    if (big <= 1) {
      done.emplace(key, cur);
      continue;
    }
    auto ext = detail::extremal_big(cur.structure, k);
    if (ext.size() < 2) throw ParameterError("internal: fewer than two extremal big simplices");
    const std::string a = ext[0];
    const std::string b = ext[1];
    RootedTree rooted{cur.structure, a, std::nullopt};
    VertexRoles roles = classify_vertices(rooted);
    bool shifted = false;
    for (const auto& s : {a, b}) {
      auto small = detail::small_child_vertices(roles, rooted.structure, s, k);
      if (small.size() >= 2) {
        auto [t1, t2] = branch_shift(rooted, s, small[0], s, small[1]);
        res.trace.push_back({RewriteOp::branch_shift, {s, s}, {small[0], small[1]}, {}, t1.structure, t2.structure});
        work.push_back(t1);
        work.push_back(t2);
        shifted = true;
        break;
      }
    }
    if (shifted) continue;
    int ka = rooted.structure.get(a).dim() - k;
    int kb = rooted.structure.get(b).dim() - k;
    auto [t1, t2] = simplex_unbalance(rooted, a, ka, b, kb);
    res.trace.push_back({RewriteOp::unbalance, {a, b}, {}, {ka, kb}, t1.structure, t2.structure});
    work.push_back(t1);
    work.push_back(t2);
  }
  for (auto& [key, t] : done) {
    // Root the terminal tree at its big simplex when it has one.
    for (const auto& s : t.structure.simplices) {
      if (s.dim() > k) {
        t.root = s.id;
        t.designated_free_vertex.reset();
      }
    }
    res.terminals.push_back(t);
  }
  return res;
}

}  // namespace simplexlab
