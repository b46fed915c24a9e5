#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <ostream>
#include <string>
#include <unordered_map>
#include <vector>

#include "simplexlab/counting.hpp"
#include "simplexlab/errors.hpp"
#include "simplexlab/grid.hpp"
#include "simplexlab/rational.hpp"
#include "simplexlab/structure.hpp"

namespace simplexlab {

// nu: congruence class key -> number of maps V -> E realizing it.
struct ClassHistogram {
  std::vector<std::string> edges;  // "S0:a-b" in key order
  std::map<ClassKey, std::uint64_t> counts;

  static bool has_zero(const ClassKey& k) { return std::find(k.begin(), k.end(), Residue(0)) != k.end(); }

  std::uint64_t total() const {
    std::uint64_t s = 0;
    for (const auto& [k, c] : counts) s += c;
    return s;
  }
  std::size_t support_size() const { return counts.size(); }
  std::size_t nonzero_support_size() const {
    std::size_t n = 0;
    for (const auto& [k, c] : counts) n += has_zero(k) ? 0 : 1;
    return n;
  }
  int128 sum_squares() const {
    int128 s = 0;
    for (const auto& [k, c] : counts) s = checked_add(s, checked_mul(int128(c), int128(c)));
    return s;
  }

  void write_csv(std::ostream& os) const {
    for (std::size_t i = 0; i < edges.size(); ++i) os << "t" << (i + 1) << ",";
    os << "count\n";
    for (const auto& [k, c] : counts) {
      for (auto t : k) os << t << ",";
      os << c << "\n";
    }
  }
};

// Edge order for class keys: simplices by id, then vertex pairs by name.
inline std::vector<std::pair<std::string, std::pair<std::string, std::string>>> class_key_edges(
    const SimplexStructure& s) {
  std::vector<const Simplex*> sx;
  for (const auto& x : s.simplices) sx.push_back(&x);
  std::sort(sx.begin(), sx.end(), [](const Simplex* a, const Simplex* b) { return a->id < b->id; });
  std::vector<std::pair<std::string, std::pair<std::string, std::string>>> out;
  for (const Simplex* x : sx) {
    std::vector<std::string> vs = x->vertices;
    std::sort(vs.begin(), vs.end());
    for (std::size_t a = 0; a < vs.size(); ++a) {
      for (std::size_t b = a + 1; b < vs.size(); ++b) out.push_back({x->id, {vs[a], vs[b]}});
    }
  }
  return out;
}

inline ClassHistogram nu_histogram(const Metric& m, const PointSet& e, const SimplexStructure& s,
                                   EmbeddingMode mode = EmbeddingMode::all) {
  require_valid(s);
  IndexedStructure ix(s);
  const std::size_t nv = ix.names.size();
  if (nv > 8) throw ResourceError("histogram guard: more than 8 vertices");
  if (e.size() > 60) throw ResourceError("histogram guard: more than 60 points");
  long double maps = 1;
  for (std::size_t i = 0; i < nv; ++i) maps *= (long double)e.size();
  if (maps > 4294967296.0L) throw ResourceError("histogram guard: more than 2^32 maps");

  ClassHistogram h;
  std::vector<std::pair<int, int>> edges;
  for (const auto& [id, pr] : class_key_edges(s)) {
    h.edges.push_back(id + ":" + pr.first + "-" + pr.second);
    edges.push_back({ix.vertex(pr.first), ix.vertex(pr.second)});
  }
  const std::uint32_t q = e.params().q();
  long double span = 1;
  for (std::size_t i = 0; i < edges.size(); ++i) span *= q;
  const bool packed = span < 1e36L;

  struct Hash {
    std::size_t operator()(uint128 v) const {
      return std::hash<std::uint64_t>()(std::uint64_t(v) ^ (std::uint64_t(v >> 64) * 0x9E3779B97F4A7C15ull));
    }
  };
  std::unordered_map<uint128, std::uint64_t, Hash> fast;
  std::vector<std::uint32_t> h_idx(nv);
  ClassKey key(edges.size());
  const FieldParams& p = e.params();

  auto nondegenerate = [&] {
    for (const auto& sx : ix.simplices) {
      std::vector<Vector> pts;
      for (int v : sx) pts.push_back(p.point(h_idx[v]));
      if (!is_nondegenerate(p, pts)) return false;
    }
    return true;
  };

  std::function<void(std::size_t)> dfs = [&](std::size_t i) {
    if (i == nv) {
      if (mode == EmbeddingMode::nondegenerate && !nondegenerate()) return;
      if (packed) {
        uint128 code = 0;
        for (auto [a, b] : edges) code = code * q + m.dist(h_idx[a], h_idx[b]);
        ++fast[code];
      } else {
        for (std::size_t j = 0; j < edges.size(); ++j) key[j] = m.dist(h_idx[edges[j].first], h_idx[edges[j].second]);
        ++h.counts[key];
      }
      return;
    }
    for (auto x : e.indices()) {
      h_idx[i] = x;
      dfs(i + 1);
    }
  };
  if (!e.empty()) dfs(0);
  if (packed) {
    for (auto [packed_key, c] : fast) {
      uint128 code = packed_key;
      for (std::size_t j = edges.size(); j-- > 0;) {
        key[j] = Residue(code % q);
        code /= q;
      }
      h.counts[key] = c;
    }
  }
  return h;
}

inline ClassHistogram nu_histogram(const PointSet& e, const SimplexStructure& s,
                                   EmbeddingMode mode = EmbeddingMode::all) {
  Metric m(e.params());
  return nu_histogram(m, e, s, mode);
}

// (sum nu)^2 / sum nu^2; 0 for an empty histogram.
inline Rational cauchy_schwarz_lower_bound(const ClassHistogram& h) {
  int128 sq = h.sum_squares();
  if (sq == 0) return Rational(0);
  int128 t = int128(h.total());
  return Rational(checked_mul(t, t), sq);
}

namespace detail {

// Counts congruent pairs (h1, h2) of maps of an ordered vertex list into E
// extending a pinned prefix, weighted by weight(j, x, x') per new vertex j.
// Positions are indices into E.
template <class Weight, class Accept>
int128 congruent_extensions(const DistanceBuckets& b, std::size_t total, std::vector<std::uint32_t>& h1,
                            std::vector<std::uint32_t>& h2, std::size_t q, std::size_t n_points, Weight&& weight,
                            Accept&& accept) {
  std::size_t j = h1.size();
  if (j == total) return accept(h1, h2) ? int128(1) : int128(0);
  int128 sum = 0;
  auto step = [&](std::uint32_t y, std::uint32_t yp) {
    int128 w = weight(j, y, yp);
    if (w == 0) return;
    h1.push_back(y);
    h2.push_back(yp);
    int128 rest = congruent_extensions(b, total, h1, h2, q, n_points, weight, accept);
    h1.pop_back();
    h2.pop_back();
    if (rest) sum = checked_add(sum, checked_mul(w, rest));
  };
  if (j == 0) {
    for (std::uint32_t y = 0; y < n_points; ++y) {
      for (std::uint32_t yp = 0; yp < n_points; ++yp) step(y, yp);
    }
    return sum;
  }
  for (Residue t = 0; t < q; ++t) {
    auto [lo1, hi1] = b.at(h1[0], t);
    auto [lo2, hi2] = b.at(h2[0], t);
    for (auto y = lo1; y != hi1; ++y) {
      for (auto yp = lo2; yp != hi2; ++yp) {
        bool ok = true;
        for (std::size_t a = 1; a < j && ok; ++a) ok = b.dist(h1[a], *y) == b.dist(h2[a], *yp);
        if (ok) step(*y, *yp);
      }
    }
  }
  return sum;
}

inline bool nondegenerate_positions(const PointSet& e, const std::vector<std::uint32_t>& pos) {
  const auto& p = e.params();
  std::vector<Vector> pts;
  for (auto x : pos) pts.push_back(p.point(e[x]));
  return is_nondegenerate(p, pts);
}

}  // namespace detail

// Number of congruent pairs of embeddings of a tree structure into E, i.e.
// sum over classes of nu^2, by dynamic programming over branches. In
// nondegenerate mode every simplex in both embeddings must be nondegenerate.
inline int128 congruent_pair_count(const Metric& m, const PointSet& e, const SimplexStructure& s,
                                   EmbeddingMode mode = EmbeddingMode::all) {
  require_valid(s);
  if (s.kind != StructureKind::tree) throw ParameterError("pair count oracle expects a tree; use the cycle oracle");
  if (e.empty()) return 0;
  RootedTree t{s, s.simplices.front().id, std::nullopt};
  VertexRoles roles = classify_vertices(t);
  detail::DistanceBuckets b(m, e);
  const std::size_t n = e.size();
  const std::size_t q = e.params().q();
  std::map<std::string, std::vector<int128>> kernels;

  auto accept = [&](const std::vector<std::uint32_t>& h1, const std::vector<std::uint32_t>& h2) {
    if (mode == EmbeddingMode::all) return true;
    return detail::nondegenerate_positions(e, h1) && detail::nondegenerate_positions(e, h2);
  };

  std::function<const std::vector<int128>&(const std::string&)> kernel;
  // Vertex order with the anchor first and the branch kernels hanging off each.
  auto layout = [&](const std::string& id, const std::optional<std::string>& anchor) {
    const Simplex& sx = s.get(id);
    std::vector<std::string> order;
    if (anchor) order.push_back(*anchor);
    for (const auto& v : sx.vertices) {
      if (!anchor || v != *anchor) order.push_back(v);
    }
    std::vector<std::vector<const std::vector<int128>*>> ws(order.size());
    for (std::size_t j = (anchor ? 1 : 0); j < order.size(); ++j) {
      for (const auto& br : branch_roots(roles, id, order[j])) ws[j].push_back(&kernel(br));
    }
    return ws;
  };
  auto weight_fn = [&](const std::vector<std::vector<const std::vector<int128>*>>& ws) {
    return [&ws, n](std::size_t j, std::uint32_t y, std::uint32_t yp) {
      int128 w = 1;
      for (const auto* k : ws[j]) {
        w = checked_mul(w, (*k)[std::size_t(y) * n + yp]);
        if (w == 0) break;
      }
      return w;
    };
  };

  kernel = [&](const std::string& id) -> const std::vector<int128>& {
    auto it = kernels.find(id);
    if (it != kernels.end()) return it->second;
    auto ws = layout(id, roles.at(id).parent_vertex);
    auto wf = weight_fn(ws);
    std::vector<int128> k(n * n, 0);
    std::vector<std::uint32_t> h1, h2;
    for (std::uint32_t x = 0; x < n; ++x) {
      for (std::uint32_t xp = 0; xp < n; ++xp) {
        h1.assign(1, x);
        h2.assign(1, xp);
        k[std::size_t(x) * n + xp] = detail::congruent_extensions(b, ws.size(), h1, h2, q, n, wf, accept);
      }
    }
    return kernels.emplace(id, std::move(k)).first->second;
  };

  auto ws = layout(t.root, std::nullopt);
  auto wf = weight_fn(ws);
  std::vector<std::uint32_t> h1, h2;
  return detail::congruent_extensions(b, ws.size(), h1, h2, q, n, wf, accept);
}

inline int128 congruent_pair_count(const PointSet& e, const SimplexStructure& s,
                                   EmbeddingMode mode = EmbeddingMode::all) {
  Metric m(e.params());
  return congruent_pair_count(m, e, s, mode);
}

// Vertices where consecutive cycle simplices meet: links[i] is shared by
// simplices i and i+1 (mod k).
inline std::vector<std::string> cycle_links(const SimplexStructure& c) {
  std::vector<std::string> links;
  const auto& sx = c.simplices;
  for (std::size_t i = 0; i < sx.size(); ++i) {
    const auto& a = sx[i];
    const auto& b = sx[(i + 1) % sx.size()];
    for (const auto& v : a.vertices) {
      if (b.contains(v)) {
        links.push_back(v);
        break;
      }
    }
  }
  return links;
}

// Sum of nu^2 over a cycle as the trace of the product of per-simplex pair
// transfer matrices indexed by the pair images of the link vertices.
inline int128 cycle_congruent_pair_count(const Metric& m, const PointSet& e, const SimplexStructure& c) {
  require_valid(c);
  if (c.kind != StructureKind::cycle) throw ParameterError("expected a cycle structure");
  if (e.empty()) return 0;
  const std::size_t n = e.size();
  const std::size_t nn = n * n;
  if (nn > 4096) throw ResourceError("cycle oracle guard: |E|^2 exceeds 4096");
  detail::DistanceBuckets b(m, e);
  const std::size_t k = c.simplices.size();
  auto one = [](std::size_t, std::uint32_t, std::uint32_t) { return int128(1); };
  auto all = [](const std::vector<std::uint32_t>&, const std::vector<std::uint32_t>&) { return true; };

  std::vector<int128> acc;  // running product
  for (std::size_t i = 0; i < k; ++i) {
    const Simplex& sx = c.simplices[i];
    std::size_t total = sx.vertices.size();
    std::vector<int128> mtx(nn * nn, 0);
    std::vector<std::uint32_t> h1, h2;
    for (std::uint32_t a = 0; a < n; ++a) {
      for (std::uint32_t ap = 0; ap < n; ++ap) {
        for (std::uint32_t o = 0; o < n; ++o) {
          for (std::uint32_t op = 0; op < n; ++op) {
            if (b.dist(a, o) != b.dist(ap, op)) continue;
            h1 = {a, o};
            h2 = {ap, op};
            int128 cnt = detail::congruent_extensions(b, total, h1, h2, e.params().q(), n, one, all);
            mtx[(std::size_t(a) * n + ap) * nn + (std::size_t(o) * n + op)] = cnt;
          }
        }
      }
    }
    if (acc.empty()) {
      acc = std::move(mtx);
      continue;
    }
    std::vector<int128> next(nn * nn, 0);
    for (std::size_t r = 0; r < nn; ++r) {
      for (std::size_t mid = 0; mid < nn; ++mid) {
        int128 x = acc[r * nn + mid];
        if (x == 0) continue;
        for (std::size_t col = 0; col < nn; ++col) {
          int128 y = mtx[mid * nn + col];
          if (y) next[r * nn + col] = checked_add(next[r * nn + col], checked_mul(x, y));
        }
      }
    }
    acc = std::move(next);
  }
  int128 tr = 0;
  for (std::size_t r = 0; r < nn; ++r) tr = checked_add(tr, acc[r * nn + r]);
  return tr;
}

}  // namespace simplexlab
