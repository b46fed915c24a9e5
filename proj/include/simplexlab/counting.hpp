#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "simplexlab/errors.hpp"
#include "simplexlab/field.hpp"
#include "simplexlab/grid.hpp"
#include "simplexlab/ortho.hpp"
#include "simplexlab/rational.hpp"
#include "simplexlab/structure.hpp"

namespace simplexlab {

using ClassKey = std::vector<Residue>;

enum class EmbeddingMode { all, nondegenerate };

inline const char* mode_name(EmbeddingMode m) { return m == EmbeddingMode::all ? "all" : "nondegenerate"; }

inline std::size_t theta_index(const Geometry& geo, const OrthogonalElement& theta) {
  auto i = geo.group().find(theta);
  if (!i) throw ParameterError("element is not in the orthogonal group");
  return *i;
}

inline void require_same_space(const Geometry& geo, const PointSet& e) {
  if (geo.params() != e.params()) throw ParameterError("point set and geometry use different parameters");
}

// lambda_theta(w) = #{(u, u') in E^2 : u - theta u' = w}
inline CountGrid lambda(const Geometry& geo, const PointSet& e, std::size_t theta) {
  require_same_space(geo, e);
  CountGrid g(e.params());
  std::vector<std::uint32_t> rot;
  rot.reserve(e.size());
  for (auto x : e.indices()) rot.push_back(geo.rotate(theta, x));
  for (auto u : e.indices()) {
    for (auto r : rot) ++g[geo.sub(u, r)];
  }
  return g;
}

inline CountGrid lambda(const Geometry& geo, const PointSet& e, const OrthogonalElement& theta) {
  return lambda(geo, e, theta_index(geo, theta));
}

// lambda_theta for every group element, flattened as [theta][w].
class LambdaTable {
 public:
  LambdaTable(const Geometry& geo, const PointSet& e) : n_(e.params().size()), v_(geo.group().size() * n_, 0) {
    for (std::size_t t = 0; t < geo.group().size(); ++t) {
      auto g = lambda(geo, e, t);
      for (std::uint32_t w = 0; w < n_; ++w) v_[t * n_ + w] = g[w];
    }
  }
  std::uint64_t operator()(std::size_t theta, std::uint32_t w) const { return v_[theta * n_ + w]; }
  const std::uint64_t* row(std::size_t theta) const { return v_.data() + theta * n_; }

 private:
  std::uint32_t n_;
  std::vector<std::uint64_t> v_;
};

// The pairs (x, x') in E^2 with x - theta x' = w, grouped by (theta, w).
// Entries are positions in E.
class OffsetPairs {
 public:
  OffsetPairs(const Geometry& geo, const PointSet& e) : n_(e.params().size()), groups_(geo.group().size()) {
    for (std::size_t t = 0; t < groups_; ++t) {
      std::vector<std::uint32_t> count(n_ + 1, 0);
      std::vector<std::uint32_t> w_of(e.size() * e.size());
      for (std::size_t i = 0; i < e.size(); ++i) {
        for (std::size_t j = 0; j < e.size(); ++j) {
          std::uint32_t w = geo.sub(e[i], geo.rotate(t, e[j]));
          w_of[i * e.size() + j] = w;
          ++count[w + 1];
        }
      }
      for (std::uint32_t w = 0; w < n_; ++w) count[w + 1] += count[w];
      std::vector<std::pair<std::uint32_t, std::uint32_t>> flat(e.size() * e.size());
      std::vector<std::uint32_t> fill(count.begin(), count.end() - 1);
      for (std::size_t i = 0; i < e.size(); ++i) {
        for (std::size_t j = 0; j < e.size(); ++j) {
          flat[fill[w_of[i * e.size() + j]]++] = {std::uint32_t(i), std::uint32_t(j)};
        }
      }
      start_.insert(start_.end(), count.begin(), count.end() - 1);
      pairs_.push_back(std::move(flat));
    }
  }

  struct Range {
    const std::pair<std::uint32_t, std::uint32_t>* first;
    const std::pair<std::uint32_t, std::uint32_t>* last;
    const auto* begin() const { return first; }
    const auto* end() const { return last; }
    std::size_t size() const { return std::size_t(last - first); }
  };

  Range at(std::size_t theta, std::uint32_t w) const {
    const auto& flat = pairs_[theta];
    std::uint32_t b = start_[theta * n_ + w];
    std::uint32_t e = w + 1 < n_ ? start_[theta * n_ + w + 1] : std::uint32_t(flat.size());
    return {flat.data() + b, flat.data() + e};
  }

 private:
  std::uint32_t n_;
  std::size_t groups_;
  std::vector<std::uint32_t> start_;
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> pairs_;
};

// A weak k-tree: the edges of an ordinary tree, each extended to a k-simplex
// by k-1 private vertices.
struct WeakTree {
  int k = 1;
  int vertex_count = 2;
  int root = 0;
  std::vector<std::pair<int, int>> edges;

  std::size_t ell() const { return edges.size(); }
  std::size_t key_length() const { return edges.size() * std::size_t(binom(k + 1, 2)); }
};

// Local vertex pairs of one k-simplex in key order: (0,1), (0,2), ..., (k-1,k).
// Local 0 and 1 are the endpoints of the tree edge as listed.
inline std::vector<std::pair<int, int>> local_pairs(int k) {
  std::vector<std::pair<int, int>> out;
  for (int a = 0; a <= k; ++a) {
    for (int b = a + 1; b <= k; ++b) out.push_back({a, b});
  }
  return out;
}

inline WeakTree path_tree(int edges, int k = 1) {
  WeakTree t;
  t.k = k;
  t.vertex_count = edges + 1;
  for (int i = 0; i < edges; ++i) t.edges.push_back({i, i + 1});
  return t;
}

inline void validate_weak_tree(const WeakTree& t) {
  if (t.k < 1) throw ParameterError("weak tree needs k >= 1");
  if (t.vertex_count < 1 || t.edges.size() + 1 != std::size_t(t.vertex_count)) {
    throw ParameterError("weak tree needs exactly vertex_count - 1 edges");
  }
  if (t.root < 0 || t.root >= t.vertex_count) throw ParameterError("weak tree root out of range");
  std::vector<int> parent(t.vertex_count);
  for (int i = 0; i < t.vertex_count; ++i) parent[i] = i;
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (auto [a, b] : t.edges) {
    if (a < 0 || b < 0 || a >= t.vertex_count || b >= t.vertex_count || a == b) {
      throw ParameterError("weak tree edge out of range");
    }
    int ra = find(a), rb = find(b);
    if (ra == rb) throw ParameterError("weak tree edges contain a cycle");
    parent[ra] = rb;
  }
}

inline void validate_key(const WeakTree& t, const ClassKey& key, const FieldParams& p) {
  if (key.size() != t.key_length()) {
    throw ParameterError("key length " + std::to_string(key.size()) + " does not match " + std::to_string(t.key_length()));
  }
  for (auto v : key) {
    if (v == 0) throw ParameterError("key entries must be nonzero distances");
    if (v >= p.q()) throw ParameterError("key entry out of range");
  }
}

namespace detail {

// For every member a of E and every residue t, the members at distance t from a.
class DistanceBuckets {
 public:
  DistanceBuckets(const Metric& m, const PointSet& e) : q_(e.params().q()), n_(e.size()) {
    start_.assign(n_ * q_ + 1, 0);
    std::vector<Residue> dist(n_ * n_);
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) {
        dist[i * n_ + j] = m.dist(e[i], e[j]);
        ++start_[i * q_ + dist[i * n_ + j] + 1];
      }
    }
    for (std::size_t c = 0; c < n_ * q_; ++c) start_[c + 1] += start_[c];
    items_.resize(n_ * n_);
    std::vector<std::uint32_t> fill(start_.begin(), start_.end() - 1);
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) items_[fill[i * q_ + dist[i * n_ + j]]++] = std::uint32_t(j);
    }
    dist_ = std::move(dist);
  }
  std::pair<const std::uint32_t*, const std::uint32_t*> at(std::size_t a, Residue t) const {
    return {items_.data() + start_[a * q_ + t], items_.data() + start_[a * q_ + t + 1]};
  }
  Residue dist(std::size_t a, std::size_t b) const { return dist_[a * n_ + b]; }

 private:
  std::uint32_t q_;
  std::size_t n_;
  std::vector<std::uint32_t> start_;
  std::vector<std::uint32_t> items_;
  std::vector<Residue> dist_;
};

inline std::uint64_t to_u64(uint128 v) {
  if (v > std::numeric_limits<std::uint64_t>::max()) throw std::overflow_error("count exceeds 64 bits");
  return std::uint64_t(v);
}

}  // namespace detail

// f(x): number of maps of the weak tree into E with the root at x and every
// edge distance prescribed by the key.
inline CountGrid f_tree(const Metric& m, const PointSet& e, const WeakTree& t, const ClassKey& key) {
  validate_weak_tree(t);
  validate_key(t, key, e.params());
  const std::size_t n = e.size();
  const auto lp = local_pairs(t.k);
  const std::size_t per = lp.size();
  detail::DistanceBuckets buckets(m, e);

  // links[i][a * n + b]: completions of edge i's simplex with local 0 at a and local 1 at b.
  std::vector<std::vector<std::uint64_t>> links(t.edges.size(), std::vector<std::uint64_t>(n * n, 0));
  for (std::size_t ei = 0; ei < t.edges.size(); ++ei) {
    const Residue* k = key.data() + ei * per;
    auto pair_key = [&](int a, int b) { return k[std::size_t(std::find(lp.begin(), lp.end(), std::make_pair(a, b)) - lp.begin())]; };
    std::vector<std::size_t> local(t.k + 1);
    std::function<std::uint64_t(int)> extend = [&](int j) -> std::uint64_t {
      if (j > t.k) return 1;
      std::uint64_t total = 0;
      auto [lo, hi] = buckets.at(local[0], pair_key(0, j));
      for (auto it = lo; it != hi; ++it) {
        bool ok = true;
        for (int a = 1; a < j && ok; ++a) ok = buckets.dist(local[a], *it) == pair_key(a, j);
        if (!ok) continue;
        local[j] = *it;
        total += extend(j + 1);
      }
      return total;
    };
    for (std::size_t a = 0; a < n; ++a) {
      auto [lo, hi] = buckets.at(a, pair_key(0, 1));
      for (auto it = lo; it != hi; ++it) {
        local[0] = a;
        local[1] = *it;
        links[ei][a * n + *it] = extend(2);
      }
    }
  }

  std::vector<std::vector<std::pair<std::size_t, bool>>> adj(t.vertex_count);  // (edge, forward)
  for (std::size_t ei = 0; ei < t.edges.size(); ++ei) {
    adj[t.edges[ei].first].push_back({ei, true});
    adj[t.edges[ei].second].push_back({ei, false});
  }
  std::function<std::vector<uint128>(int, int)> sub = [&](int v, int parent) {
    std::vector<uint128> f(n, 1);
    for (auto [ei, forward] : adj[v]) {
      int c = forward ? t.edges[ei].second : t.edges[ei].first;
      if (c == parent) continue;
      auto g = sub(c, v);
      for (std::size_t x = 0; x < n; ++x) {
        if (f[x] == 0) continue;
        uint128 s = 0;
        for (std::size_t y = 0; y < n; ++y) {
          std::uint64_t l = forward ? links[ei][x * n + y] : links[ei][y * n + x];
          if (l && g[y]) s = uint128(checked_add(int128(s), checked_mul(int128(l), int128(g[y]))));
        }
        f[x] = uint128(checked_mul(int128(f[x]), int128(s)));
      }
    }
    return f;
  };
  auto f = sub(t.root, -1);
  CountGrid out(e.params());
  for (std::size_t x = 0; x < n; ++x) out[e[x]] = detail::to_u64(f[x]);
  return out;
}

inline CountGrid f_tree(const PointSet& e, const WeakTree& t, const ClassKey& key) {
  Metric m(e.params());
  return f_tree(m, e, t, key);
}

// Gamma_theta(w) = sum over x - theta x' = w of f(x) f(x').
inline CountGrid gamma_of(const Geometry& geo, const CountGrid& f, std::size_t theta) {
  CountGrid out(f.params);
  std::vector<std::uint32_t> supp;
  for (std::uint32_t x = 0; x < f.params.size(); ++x) {
    if (f[x]) supp.push_back(x);
  }
  std::vector<uint128> acc(f.params.size(), 0);
  for (auto x : supp) {
    for (auto y : supp) {
      auto w = geo.sub(x, geo.rotate(theta, y));
      acc[w] = uint128(checked_add(int128(acc[w]), checked_mul(int128(f[x]), int128(f[y]))));
    }
  }
  for (std::uint32_t w = 0; w < f.params.size(); ++w) out[w] = detail::to_u64(acc[w]);
  return out;
}

inline CountGrid gamma(const Geometry& geo, const PointSet& e, std::size_t theta, const WeakTree& t,
                       const ClassKey& key) {
  Metric m(e.params());
  return gamma_of(geo, f_tree(m, e, t, key), theta);
}

// Exact minimal stabilizer size Stab(n) for the geometry.
inline std::size_t stab(const Geometry& geo, int n) { return geo.stabilizers().minimal_stabilizer(n); }

// (1/Stab(n)) sum_theta lambda_theta(u - theta u')^n
inline Rational d_simplex(const Geometry& geo, const PointSet& e, const Vector& u, const Vector& up, int n) {
  require_same_space(geo, e);
  if (n < 1) throw ParameterError("simplex dimension must be at least 1");
  const auto& p = geo.params();
  p.check(u);
  p.check(up);
  std::uint32_t ui = p.index(u), upi = p.index(up);
  int128 sum = 0;
  for (std::size_t t = 0; t < geo.group().size(); ++t) {
    auto lam = lambda(geo, e, t);
    sum = checked_add(sum, checked_pow(int128(lam[geo.sub(ui, geo.rotate(t, upi))]), unsigned(n)));
  }
  return Rational(sum, int128(stab(geo, n)));
}

// The recursive D and R sums of a rooted simplex tree over E.
//
// Every branch B hanging from a parent vertex carries an integer table
// Num_B over E x E and a fixed denominator Den_B with D_B = Num_B / Den_B.
// In nondegenerate mode only pairs of nondegenerate simplex embeddings are
// kept, each congruent pair weighted once, so every denominator is 1.
class TreeSums {
 public:
  TreeSums(const Geometry& geo, const PointSet& e, RootedTree tree, EmbeddingMode mode = EmbeddingMode::all)
      : geo_(geo), e_(e), tree_(std::move(tree)), mode_(mode), roles_(classify_vertices(tree_)) {
    require_same_space(geo, e);
    if (mode_ == EmbeddingMode::all) {
      lambda_.emplace(geo, e);
    }
    offsets_.emplace(geo, e);
  }

  EmbeddingMode mode() const { return mode_; }

  // D for the designated free vertex of the root mapped to (u, u').
  Rational d_free(const Vector& u, const Vector& up) {
    if (!tree_.designated_free_vertex) throw ParameterError("tree has no designated free vertex");
    const auto& p = geo_.params();
    p.check(u);
    p.check(up);
    Node node = prepare(tree_.root, tree_.designated_free_vertex);
    return Rational(anchored(node, p.index(u), p.index(up)), node.den);
  }

  Rational r() {
    if (e_.empty()) return Rational(0);
    Node node = prepare(tree_.root, std::nullopt);
    return Rational(unanchored(node), node.den);
  }

 private:
  struct Table {
    std::vector<int128> num;  // over E positions, row-major
    int128 den = 1;
  };

  // One simplex with its anchor removed: the remaining vertices, each with the
  // branch tables hanging from it, and the per-theta offset sums.
  struct Node {
    std::string id;
    int dim = 0;
    std::vector<std::vector<const Table*>> weights;  // per non-anchor vertex
    std::vector<std::vector<int128>> f;              // [vertex][theta * q^d + w], all mode
    int128 den = 1;
  };

  int128 weight(const std::vector<const Table*>& ts, std::uint32_t x, std::uint32_t xp) const {
    int128 w = 1;
    for (const Table* t : ts) {
      w = checked_mul(w, t->num[std::size_t(x) * e_.size() + xp]);
      if (w == 0) return 0;
    }
    return w;
  }

  Node prepare(const std::string& id, const std::optional<std::string>& anchor) {
    const Simplex& s = tree_.structure.get(id);
    Node node;
    node.id = id;
    node.dim = s.dim();
    int128 den = mode_ == EmbeddingMode::all ? int128(stab(geo_, s.dim())) : int128(1);
    for (const auto& v : s.vertices) {
      if (anchor && v == *anchor) continue;
      std::vector<const Table*> ts;
      for (const auto& b : branch_roots(roles_, id, v)) {
        const Table& t = table(b);
        den = checked_mul(den, t.den);
        ts.push_back(&t);
      }
      node.weights.push_back(std::move(ts));
    }
    node.den = den;
    if (mode_ == EmbeddingMode::all) {
      const std::uint32_t q_d = geo_.params().size();
      const std::size_t g = geo_.group().size();
      for (const auto& ts : node.weights) {
        std::vector<int128> f(g * q_d, 0);
        for (std::size_t t = 0; t < g; ++t) {
          if (ts.empty()) {
            for (std::uint32_t w = 0; w < q_d; ++w) f[t * q_d + w] = int128((*lambda_)(t, w));
            continue;
          }
          for (std::uint32_t w = 0; w < q_d; ++w) {
            int128 s = 0;
            for (auto [x, xp] : offsets_->at(t, w)) s = checked_add(s, weight(ts, x, xp));
            f[t * q_d + w] = s;
          }
        }
        node.f.push_back(std::move(f));
      }
    }
    return node;
  }

  const Table& table(const std::string& id) {
    auto it = tables_.find(id);
    if (it != tables_.end()) return it->second;
    const auto& role = roles_.at(id);
    Node node = prepare(id, role.parent_vertex);
    Table t;
    t.den = node.den;
    t.num.resize(e_.size() * e_.size());
    for (std::size_t a = 0; a < e_.size(); ++a) {
      for (std::size_t b = 0; b < e_.size(); ++b) t.num[a * e_.size() + b] = anchored(node, e_[a], e_[b]);
    }
    return tables_.emplace(id, std::move(t)).first->second;
  }

  // Numerator of D for the node with its anchor at (u, u').
  int128 anchored(const Node& node, std::uint32_t u, std::uint32_t up) const {
    int128 total = 0;
    const std::uint32_t q_d = geo_.params().size();
    for (std::size_t t = 0; t < geo_.group().size(); ++t) {
      std::uint32_t w = geo_.sub(u, geo_.rotate(t, up));
      if (mode_ == EmbeddingMode::all) {
        int128 prod = 1;
        for (const auto& f : node.f) {
          prod = checked_mul(prod, f[t * q_d + w]);
          if (prod == 0) break;
        }
        total = checked_add(total, prod);
      } else {
        std::vector<std::uint32_t> h1{u}, h2{up};
        total = checked_add(total, nondegenerate_tuples(node, t, w, 0, h1, h2, 1));
      }
    }
    if (mode_ == EmbeddingMode::nondegenerate) total = exact_div(total);
    return total;
  }

  int128 unanchored(const Node& node) const {
    int128 total = 0;
    const std::uint32_t q_d = geo_.params().size();
    for (std::size_t t = 0; t < geo_.group().size(); ++t) {
      for (std::uint32_t w = 0; w < q_d; ++w) {
        if (mode_ == EmbeddingMode::all) {
          int128 prod = 1;
          for (const auto& f : node.f) {
            prod = checked_mul(prod, f[t * q_d + w]);
            if (prod == 0) break;
          }
          total = checked_add(total, prod);
        } else {
          std::vector<std::uint32_t> h1, h2;
          total = checked_add(total, nondegenerate_tuples(node, t, w, 0, h1, h2, 1));
        }
      }
    }
    if (mode_ == EmbeddingMode::nondegenerate) total = exact_div(total);
    return total;
  }

  int128 exact_div(int128 total) const {
    int128 g = int128(geo_.group().size());
    if (total % g != 0) throw std::logic_error("nondegenerate weights did not sum to a multiple of |G|");
    return total / g;
  }

  // Sum over tuples (x_v, x'_v) in A(theta, w) for the remaining vertices of
  // the branch weights, times |G| / |Stab(h2)| when h1 is nondegenerate.
  int128 nondegenerate_tuples(const Node& node, std::size_t theta, std::uint32_t w, std::size_t i,
                              std::vector<std::uint32_t>& h1, std::vector<std::uint32_t>& h2, int128 acc) const {
    if (i == node.weights.size()) {
      const auto& p = geo_.params();
      std::vector<Vector> pts;
      for (auto x : h1) pts.push_back(p.point(x));
      if (!is_nondegenerate(p, pts)) return 0;
      std::size_t st = geo_.stabilizers().stabilizer_of_points(h2);
      return checked_mul(acc, int128(geo_.group().size() / st));
    }
    int128 total = 0;
    for (auto [x, xp] : offsets_->at(theta, w)) {
      int128 wt = weight(node.weights[i], x, xp);
      if (wt == 0) continue;
      h1.push_back(e_[x]);
      h2.push_back(e_[xp]);
      total = checked_add(total, nondegenerate_tuples(node, theta, w, i + 1, h1, h2, checked_mul(acc, wt)));
      h1.pop_back();
      h2.pop_back();
    }
    return total;
  }

  const Geometry& geo_;
  const PointSet& e_;
  RootedTree tree_;
  EmbeddingMode mode_;
  VertexRoles roles_;
  std::optional<LambdaTable> lambda_;
  std::optional<OffsetPairs> offsets_;
  std::map<std::string, Table> tables_;
};

inline Rational d_free_rooted(const Geometry& geo, const PointSet& e, const RootedTree& tree, const Vector& u,
                              const Vector& up, EmbeddingMode mode = EmbeddingMode::all) {
  TreeSums sums(geo, e, tree, mode);
  return sums.d_free(u, up);
}

inline Rational r_rooted(const Geometry& geo, const PointSet& e, const RootedTree& tree,
                         EmbeddingMode mode = EmbeddingMode::all) {
  TreeSums sums(geo, e, tree, mode);
  return sums.r();
}

// Sum phi^n against q^{-d(n-1)} |phi|_1^n + |phi|_inf^{n-2} sum (phi - |phi|_1/q^d)^2.
struct TaylorCheck {
  Rational lhs;
  Rational rhs;  // without the constant
  Rational ratio() const { return rhs == Rational(0) ? Rational(0) : lhs / rhs; }
  bool holds(int c) const { return lhs <= Rational(c) * rhs; }
};

inline TaylorCheck taylor_check(const CountGrid& phi, int n) {
  if (n < 2) throw ParameterError("taylor check needs n >= 2");
  int128 qd = int128(phi.params.size());
  int128 l1 = int128(phi.l1());
  int128 linf = int128(phi.linf());
  int128 pow_sum = 0, sq = 0;
  for (auto v : phi.counts) {
    pow_sum = checked_add(pow_sum, checked_pow(int128(v), unsigned(n)));
    sq = checked_add(sq, checked_mul(int128(v), int128(v)));
  }
  TaylorCheck c;
  c.lhs = Rational(pow_sum);
  Rational variance = Rational(sq) - Rational(checked_mul(l1, l1), qd);
  c.rhs = Rational(checked_pow(l1, unsigned(n)), checked_pow(qd, unsigned(n - 1))) +
          Rational(checked_pow(linf, unsigned(n - 2))) * variance;
  return c;
}

}  // namespace simplexlab
