#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "simplexlab/errors.hpp"
#include "simplexlab/field.hpp"

namespace simplexlab {

enum class StructureKind { tree, cycle };

inline std::string kind_name(StructureKind k) { return k == StructureKind::tree ? "tree" : "cycle"; }

struct Simplex {
  std::string id;
  std::vector<std::string> vertices;

  int dim() const { return int(vertices.size()) - 1; }
  bool contains(const std::string& v) const {
    return std::find(vertices.begin(), vertices.end(), v) != vertices.end();
  }
};

// Simplices glued at shared vertex names. For the cycle kind the simplices are
// listed in cyclic order.
struct SimplexStructure {
  StructureKind kind = StructureKind::tree;
  std::vector<Simplex> simplices;

  std::vector<std::string> vertex_names() const {
    std::set<std::string> s;
    for (const auto& sx : simplices) s.insert(sx.vertices.begin(), sx.vertices.end());
    return {s.begin(), s.end()};
  }
  std::size_t vertex_count() const { return vertex_names().size(); }

  const Simplex* find(const std::string& id) const {
    for (const auto& s : simplices) {
      if (s.id == id) return &s;
    }
    return nullptr;
  }
  const Simplex& get(const std::string& id) const {
    const Simplex* s = find(id);
    if (!s) throw ParameterError("unknown simplex id '" + id + "'");
    return *s;
  }
  int max_dim() const {
    int m = 0;
    for (const auto& s : simplices) m = std::max(m, s.dim());
    return m;
  }
};

struct ValidationReport {
  bool ok = true;
  int axiom = 0;  // 0 = malformed input, otherwise the violated axiom number
  std::string message;
  std::vector<std::string> witnesses;
};

struct RootedTree {
  SimplexStructure structure;
  std::string root;
  std::optional<std::string> designated_free_vertex;
};

struct SimplexRole {
  std::optional<std::string> parent_vertex;
  std::optional<std::string> parent_simplex;
  std::vector<std::string> child_vertices;
  std::vector<std::string> free_vertices;
  int depth = 0;
};

using VertexRoles = std::map<std::string, SimplexRole>;

namespace detail {

inline ValidationReport violation(int axiom, std::string msg, std::vector<std::string> w) {
  return {false, axiom, std::move(msg), std::move(w)};
}

inline ValidationReport check_well_formed(const SimplexStructure& s) {
  if (s.simplices.empty()) return violation(0, "structure has no simplices", {});
  std::set<std::string> ids;
  for (const auto& sx : s.simplices) {
    if (sx.id.empty()) return violation(0, "simplex with empty id", {});
    if (!ids.insert(sx.id).second) return violation(0, "duplicate simplex id", {sx.id});
    if (sx.vertices.size() < 2) return violation(0, "simplex needs at least two vertices", {sx.id});
    std::set<std::string> vs(sx.vertices.begin(), sx.vertices.end());
    if (vs.size() != sx.vertices.size()) return violation(0, "repeated vertex inside a simplex", {sx.id});
  }
  return {};
}

inline std::vector<std::string> shared(const Simplex& a, const Simplex& b) {
  std::vector<std::string> out;
  for (const auto& v : a.vertices) {
    if (b.contains(v)) out.push_back(v);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

inline ValidationReport validate(const SimplexStructure& s) {
  if (auto r = detail::check_well_formed(s); !r.ok) return r;
  const auto& sx = s.simplices;
  if (s.kind == StructureKind::tree) {
    for (std::size_t i = 0; i < sx.size(); ++i) {
      for (std::size_t j = i + 1; j < sx.size(); ++j) {
        auto sh = detail::shared(sx[i], sx[j]);
        if (sh.size() > 1) {
          std::vector<std::string> w{sx[i].id, sx[j].id};
          w.insert(w.end(), sh.begin(), sh.end());
          return detail::violation(1, "simplices share more than one vertex", w);
        }
      }
    }
    // Simplex-vertex incidence graph must be connected and acyclic.
    std::map<std::string, std::vector<std::size_t>> by_vertex;
    for (std::size_t i = 0; i < sx.size(); ++i) {
      for (const auto& v : sx[i].vertices) by_vertex[v].push_back(i);
    }
    std::vector<bool> seen(sx.size(), false);
    std::deque<std::size_t> queue{0};
    seen[0] = true;
    while (!queue.empty()) {
      std::size_t i = queue.front();
      queue.pop_front();
      for (const auto& v : sx[i].vertices) {
        for (std::size_t j : by_vertex[v]) {
          if (!seen[j]) {
            seen[j] = true;
            queue.push_back(j);
          }
        }
      }
    }
    for (std::size_t i = 0; i < sx.size(); ++i) {
      if (!seen[i]) return detail::violation(2, "structure is not connected", {sx[0].id, sx[i].id});
    }
    std::size_t incidences = 0;
    for (const auto& x : sx) incidences += x.vertices.size();
    if (incidences != sx.size() + by_vertex.size() - 1) {
      // Peel leaves off the incidence graph; what survives lies on loops.
      std::vector<int> deg(sx.size());
      std::map<std::string, int> vdeg;
      for (std::size_t i = 0; i < sx.size(); ++i) deg[i] = int(sx[i].vertices.size());
      for (const auto& [v, owners] : by_vertex) vdeg[v] = int(owners.size());
      bool changed = true;
      while (changed) {
        changed = false;
        for (auto& [v, dv] : vdeg) {
          if (dv != 1) continue;
          dv = 0;
          changed = true;
          for (std::size_t j : by_vertex[v]) {
            if (deg[j] > 0) --deg[j];
          }
        }
        for (std::size_t i = 0; i < sx.size(); ++i) {
          if (deg[i] != 1) continue;
          deg[i] = 0;
          changed = true;
          for (const auto& v : sx[i].vertices) {
            if (vdeg[v] > 0) --vdeg[v];
          }
        }
      }
      std::vector<std::string> w;
      for (std::size_t i = 0; i < sx.size(); ++i) {
        if (deg[i] > 1) w.push_back(sx[i].id);
      }
      return detail::violation(3, "closed loop of simplices", w);
    }
    return {};
  }
  std::size_t k = sx.size();
  if (k < 3) return detail::violation(1, "a cycle needs at least three simplices", {});
  for (std::size_t i = 0; i < k; ++i) {
    std::size_t j = (i + 1) % k;
    auto sh = detail::shared(sx[i], sx[j]);
    if (sh.size() != 1) {
      std::vector<std::string> w{sx[i].id, sx[j].id};
      w.insert(w.end(), sh.begin(), sh.end());
      return detail::violation(1, "consecutive simplices must share exactly one vertex", w);
    }
  }
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 2; j < k; ++j) {
      if (i == 0 && j == k - 1) continue;
      auto sh = detail::shared(sx[i], sx[j]);
      if (!sh.empty()) {
        std::vector<std::string> w{sx[i].id, sx[j].id};
        w.insert(w.end(), sh.begin(), sh.end());
        return detail::violation(2, "nonconsecutive simplices share a vertex", w);
      }
    }
  }
  for (std::size_t i = 0; i < k; ++i) {
    auto a = detail::shared(sx[i], sx[(i + k - 1) % k]);
    auto b = detail::shared(sx[i], sx[(i + 1) % k]);
    if (a == b) return detail::violation(2, "a simplex meets both neighbours at one vertex", {sx[i].id});
  }
  return {};
}

inline void require_valid(const SimplexStructure& s) {
  auto r = validate(s);
  if (!r.ok) throw ParameterError("invalid structure (axiom " + std::to_string(r.axiom) + "): " + r.message);
}

inline void require_tree(const RootedTree& t) {
  if (t.structure.kind != StructureKind::tree) throw ParameterError("expected a tree structure");
  require_valid(t.structure);
  t.structure.get(t.root);
}

inline VertexRoles classify_vertices(const RootedTree& t) {
  require_tree(t);
  const auto& sx = t.structure.simplices;
  std::map<std::string, std::vector<std::string>> by_vertex;
  for (const auto& s : sx) {
    for (const auto& v : s.vertices) by_vertex[v].push_back(s.id);
  }
  VertexRoles roles;
  std::deque<std::string> queue{t.root};
  roles[t.root] = SimplexRole{};
  while (!queue.empty()) {
    std::string id = queue.front();
    queue.pop_front();
    const Simplex& s = t.structure.get(id);
    SimplexRole& role = roles[id];
    for (const auto& v : s.vertices) {
      if (role.parent_vertex && *role.parent_vertex == v) continue;
      bool child = false;
      for (const auto& other : by_vertex[v]) {
        if (other == id) continue;
        child = true;
        SimplexRole r;
        r.parent_vertex = v;
        r.parent_simplex = id;
        r.depth = role.depth + 1;
        roles[other] = r;
        queue.push_back(other);
      }
      (child ? role.child_vertices : role.free_vertices).push_back(v);
    }
    SimplexRole& again = roles[id];
    std::sort(again.child_vertices.begin(), again.child_vertices.end());
    std::sort(again.free_vertices.begin(), again.free_vertices.end());
  }
  if (t.designated_free_vertex) {
    const auto& fr = roles[t.root].free_vertices;
    if (std::find(fr.begin(), fr.end(), *t.designated_free_vertex) == fr.end()) {
      throw ParameterError("designated vertex is not a free vertex of the root");
    }
  }
  return roles;
}

// Simplex ids of the branches hanging from simplex `s` at vertex `v`.
inline std::vector<std::string> branch_roots(const VertexRoles& roles, const std::string& s, const std::string& v) {
  std::vector<std::string> out;
  for (const auto& [id, r] : roles) {
    if (r.parent_simplex && *r.parent_simplex == s && *r.parent_vertex == v) out.push_back(id);
  }
  return out;
}

// All simplices in the subtree under `s`, including `s`.
inline std::vector<std::string> subtree(const VertexRoles& roles, const std::string& s) {
  std::vector<std::string> out{s};
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (const auto& [id, r] : roles) {
      if (r.parent_simplex && *r.parent_simplex == out[i]) out.push_back(id);
    }
  }
  return out;
}

inline std::int64_t n_k(const SimplexStructure& s, int k) {
  if (k < 1) throw ParameterError("k must be at least 1");
  std::int64_t n = k;
  for (const auto& sx : s.simplices) {
    if (sx.dim() > k) n += sx.dim() - k;
  }
  return n;
}

// Exponent of q in the number of congruence classes of an n-simplex in F_q^d.
inline std::int64_t c_simplex(int n, int d) {
  if (n < 0 || d < 1) throw ParameterError("c_simplex needs n >= 0 and d >= 1");
  if (n <= d) return binom(n + 1, 2);
  return std::int64_t(d) * (n + 1) - binom(d + 1, 2);
}

inline std::int64_t c_structure(const SimplexStructure& s, int d) {
  require_valid(s);
  std::int64_t c = 0;
  for (const auto& sx : s.simplices) c += c_simplex(sx.dim(), d);
  return c;
}

namespace detail {

inline std::string ahu(const std::vector<std::vector<int>>& adj, const std::vector<std::string>& label, int node,
                       int parent) {
  std::vector<std::string> kids;
  for (int nb : adj[node]) {
    if (nb != parent) kids.push_back(ahu(adj, label, nb, node));
  }
  std::sort(kids.begin(), kids.end());
  std::string s = label[node] + "(";
  for (const auto& k : kids) s += k;
  return s + ")";
}

}  // namespace detail

// Relabelling-invariant text form: AHU encoding of the simplex-vertex
// incidence tree (simplex nodes labelled by dimension) for trees, the minimal
// rotation or reflection of the dimension sequence for cycles.
inline std::string canonical_form(const SimplexStructure& s) {
  require_valid(s);
  if (s.kind == StructureKind::cycle) {
    std::vector<int> dims;
    for (const auto& sx : s.simplices) dims.push_back(sx.dim());
    std::vector<int> best;
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t r = 0; r < dims.size(); ++r) {
        std::vector<int> cand(dims.begin() + r, dims.end());
        cand.insert(cand.end(), dims.begin(), dims.begin() + r);
        if (best.empty() || cand < best) best = cand;
      }
      std::reverse(dims.begin(), dims.end());
    }
    std::string out = "cycle:";
    for (std::size_t i = 0; i < best.size(); ++i) out += (i ? "," : "") + std::to_string(best[i]);
    return out;
  }
  auto names = s.vertex_names();
  std::map<std::string, int> vidx;
  for (const auto& v : names) vidx[v] = int(vidx.size());
  int nv = int(names.size());
  int n = nv + int(s.simplices.size());
  std::vector<std::vector<int>> adj(n);
  std::vector<std::string> label(n, "v");
  for (std::size_t i = 0; i < s.simplices.size(); ++i) {
    int node = nv + int(i);
    label[node] = "S" + std::to_string(s.simplices[i].dim());
    for (const auto& v : s.simplices[i].vertices) {
      adj[node].push_back(vidx[v]);
      adj[vidx[v]].push_back(node);
    }
  }
  std::vector<int> deg(n);
  std::vector<int> layer;
  for (int i = 0; i < n; ++i) {
    deg[i] = int(adj[i].size());
    if (deg[i] <= 1) layer.push_back(i);
  }
  int remaining = n;
  while (remaining > 2) {
    remaining -= int(layer.size());
    std::vector<int> next;
    for (int leaf : layer) {
      for (int nb : adj[leaf]) {
        if (--deg[nb] == 1) next.push_back(nb);
      }
    }
    layer = next;
  }
  std::string best;
  for (int c : layer) {
    std::string e = detail::ahu(adj, label, c, -1);
    if (best.empty() || e < best) best = e;
  }
  return "tree:" + best;
}

inline std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::uint64_t structural_hash(const SimplexStructure& s) { return fnv1a(canonical_form(s)); }

// Builds a structure from integer vertex lists; simplex i gets id "S<i>" and
// vertex j the name "v<j>".
inline SimplexStructure make_structure(StructureKind kind, const std::vector<std::vector<int>>& simplices) {
  SimplexStructure s;
  s.kind = kind;
  for (std::size_t i = 0; i < simplices.size(); ++i) {
    Simplex sx;
    sx.id = "S" + std::to_string(i);
    for (int v : simplices[i]) sx.vertices.push_back("v" + std::to_string(v));
    s.simplices.push_back(std::move(sx));
  }
  return s;
}

// Dense vertex numbering shared by the counting code: vertex names sorted.
struct IndexedStructure {
  std::vector<std::string> names;
  std::vector<std::vector<int>> simplices;
  std::vector<std::string> ids;

  explicit IndexedStructure(const SimplexStructure& s) : names(s.vertex_names()) {
    std::map<std::string, int> idx;
    for (const auto& v : names) idx[v] = int(idx.size());
    for (const auto& sx : s.simplices) {
      std::vector<int> vs;
      for (const auto& v : sx.vertices) vs.push_back(idx[v]);
      simplices.push_back(vs);
      ids.push_back(sx.id);
    }
  }
  int vertex(const std::string& name) const {
    auto it = std::lower_bound(names.begin(), names.end(), name);
    if (it == names.end() || *it != name) throw ParameterError("unknown vertex '" + name + "'");
    return int(it - names.begin());
  }
};

}  // namespace simplexlab
