#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "simplexlab/counting.hpp"
#include "simplexlab/errors.hpp"
#include "simplexlab/grid.hpp"
#include "simplexlab/oracle.hpp"
#include "simplexlab/rational.hpp"
#include "simplexlab/structure.hpp"

namespace simplexlab {

enum class Adjacency { adjacent, nonadjacent };

// K((a, a'), (b, b')) = sum over classes delta of f(a, b) f(a', b'), where
// f(a, b) counts maps of the chain with `from` at a and `to` at b in class
// delta. Indexed [(a * n + a') * n^2 + (b * n + b')] over E positions.
inline std::vector<int128> chain_pair_kernel(const Metric& m, const PointSet& e,
                                             const std::vector<Simplex>& chain, const std::string& from,
                                             const std::string& to) {
  SimplexStructure s{StructureKind::tree, chain};
  IndexedStructure ix(s);
  const std::size_t nv = ix.names.size();
  const std::size_t n = e.size();
  long double maps = 1;
  for (std::size_t i = 0; i < nv; ++i) maps *= (long double)n;
  if (maps > 268435456.0L) throw ResourceError("chain kernel guard: more than 2^28 maps");
  std::vector<std::pair<int, int>> edges;
  for (const auto& sx : ix.simplices) {
    for (std::size_t a = 0; a < sx.size(); ++a) {
      for (std::size_t b = a + 1; b < sx.size(); ++b) edges.push_back({sx[a], sx[b]});
    }
  }
  const int vf = ix.vertex(from), vt = ix.vertex(to);
  const std::uint32_t q = e.params().q();
  std::unordered_map<std::uint64_t, std::unordered_map<std::uint32_t, std::uint64_t>> classes;
  std::vector<std::uint32_t> h(nv);
  std::function<void(std::size_t)> dfs = [&](std::size_t i) {
    if (i == nv) {
      std::uint64_t code = 0;
      for (auto [a, b] : edges) code = code * q + m.dist(e[h[a]], e[h[b]]);
      ++classes[code][h[vf] * std::uint32_t(n) + h[vt]];
      return;
    }
    for (std::uint32_t x = 0; x < n; ++x) {
      h[i] = x;
      dfs(i + 1);
    }
  };
  if (n) dfs(0);
  const std::size_t nn = n * n;
  std::vector<int128> k(nn * nn, 0);
  for (const auto& [code, cells] : classes) {
    for (const auto& [ab, c1] : cells) {
      std::uint32_t a = ab / n, b = ab % n;
      for (const auto& [ab2, c2] : cells) {
        std::uint32_t ap = ab2 / n, bp = ab2 % n;
        std::size_t cell = (std::size_t(a) * n + ap) * nn + (std::size_t(b) * n + bp);
        k[cell] = checked_add(k[cell], checked_mul(int128(c1), int128(c2)));
      }
    }
  }
  return k;
}

namespace detail {

// Agg[theta][w1][phi][w2] = sum over a in A(theta, w1), b in A(phi, w2) of K(a, b).
inline std::vector<int128> aggregate_kernel(const Geometry& geo, const PointSet& e, const std::vector<int128>& k) {
  const std::size_t n = e.size(), nn = n * n, g = geo.group().size(), qd = geo.params().size();
  std::vector<std::uint32_t> off(g * nn);
  for (std::size_t t = 0; t < g; ++t) {
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t xp = 0; xp < n; ++xp) off[t * nn + x * n + xp] = geo.sub(e[x], geo.rotate(t, e[xp]));
    }
  }
  std::vector<int128> agg(g * qd * g * qd, 0);
  std::vector<int128> rows(qd * nn);
  for (std::size_t t = 0; t < g; ++t) {
    std::fill(rows.begin(), rows.end(), int128(0));
    for (std::size_t a = 0; a < nn; ++a) {
      int128* row = rows.data() + std::size_t(off[t * nn + a]) * nn;
      const int128* src = k.data() + a * nn;
      for (std::size_t b = 0; b < nn; ++b) {
        if (src[b]) row[b] = checked_add(row[b], src[b]);
      }
    }
    for (std::size_t w1 = 0; w1 < qd; ++w1) {
      const int128* row = rows.data() + w1 * nn;
      int128* dst = agg.data() + (t * qd + w1) * g * qd;
      for (std::size_t ph = 0; ph < g; ++ph) {
        for (std::size_t b = 0; b < nn; ++b) {
          if (row[b]) {
            int128& cell = dst[ph * qd + off[ph * nn + b]];
            cell = checked_add(cell, row[b]);
          }
        }
      }
    }
  }
  return agg;
}

inline std::size_t simplex_position(const SimplexStructure& c, const std::string& id) {
  for (std::size_t i = 0; i < c.simplices.size(); ++i) {
    if (c.simplices[i].id == id) return i;
  }
  throw ParameterError("unknown simplex id '" + id + "'");
}

// Simplices strictly after `from` and strictly before `to` going forward.
inline std::vector<Simplex> cycle_chain(const SimplexStructure& c, std::size_t from, std::size_t to) {
  std::vector<Simplex> out;
  const std::size_t k = c.simplices.size();
  for (std::size_t i = (from + 1) % k; i != to; i = (i + 1) % k) out.push_back(c.simplices[i]);
  return out;
}

}  // namespace detail

inline bool cycle_adjacent(const SimplexStructure& c, const std::string& s1, const std::string& s2) {
  const std::size_t k = c.simplices.size();
  std::size_t i = detail::simplex_position(c, s1), j = detail::simplex_position(c, s2);
  return (i + 1) % k == j || (j + 1) % k == i;
}

// The adjacent or nonadjacent pair sum for simplices s1, s2 of a cycle.
inline Rational cycle_sums(const Geometry& geo, const PointSet& e, const SimplexStructure& c, const std::string& s1,
                           const std::string& s2, Adjacency adj) {
  require_same_space(geo, e);
  require_valid(c);
  if (c.kind != StructureKind::cycle) throw ParameterError("expected a cycle structure");
  if (s1 == s2) throw ParameterError("cycle sums need two different simplices");
  const bool is_adj = cycle_adjacent(c, s1, s2);
  if (is_adj != (adj == Adjacency::adjacent)) {
    throw ParameterError(std::string("simplices ") + s1 + " and " + s2 + " are " + (is_adj ? "" : "not ") +
                         "adjacent in the cycle");
  }
  if (e.empty()) return Rational(0);
  Metric m(geo.params());
  const std::size_t k = c.simplices.size();
  std::size_t i1 = detail::simplex_position(c, s1), i2 = detail::simplex_position(c, s2);
  if (is_adj && (i1 + 1) % k != i2) std::swap(i1, i2);
  auto links = cycle_links(c);  // links[i] = S_i cap S_{i+1}
  const int dm = c.simplices[i1].dim(), dn = c.simplices[i2].dim();
  const std::size_t n = e.size(), g = geo.group().size(), qd = geo.params().size();
  LambdaTable lam(geo, e);
  auto lam_pow = [&](std::size_t t, std::uint32_t w, int exp) {
    return checked_pow(int128(lam(t, w)), unsigned(exp));
  };
  const int128 den = checked_mul(int128(stab(geo, dm)), int128(stab(geo, dn)));
  int128 total = 0;

  if (is_adj) {
    // S1 = S_i1, S2 = S_i1+1; H runs from S2's far link around to S1's far link.
    const std::string& v1 = links[(i1 + k - 1) % k];
    const std::string& v2 = links[i2];
    auto h = detail::cycle_chain(c, i2, i1);
    auto kern = chain_pair_kernel(m, e, h, v1, v2);
    auto agg = detail::aggregate_kernel(geo, e, kern);
    for (std::size_t t = 0; t < g; ++t) {
      for (std::size_t ph = 0; ph < g; ++ph) {
        for (std::size_t x = 0; x < n; ++x) {
          for (std::size_t xp = 0; xp < n; ++xp) {
            std::uint32_t w1 = geo.sub(e[x], geo.rotate(t, e[xp]));
            std::uint32_t w2 = geo.sub(e[x], geo.rotate(ph, e[xp]));
            int128 a = agg[((t * qd + w1) * g + ph) * qd + w2];
            if (!a) continue;
            total = checked_add(total, checked_mul(checked_mul(lam_pow(t, w1, dm - 1), lam_pow(ph, w2, dn - 1)), a));
          }
        }
      }
    }
    return Rational(total, den);
  }

  // H1 joins S1's forward link to S2's backward link; H2 closes the loop.
  const std::string& v11 = links[i1];
  const std::string& v21 = links[(i2 + k - 1) % k];
  const std::string& v12 = links[(i1 + k - 1) % k];
  const std::string& v22 = links[i2];
  auto agg1 = detail::aggregate_kernel(geo, e, chain_pair_kernel(m, e, detail::cycle_chain(c, i1, i2), v11, v21));
  auto agg2 = detail::aggregate_kernel(geo, e, chain_pair_kernel(m, e, detail::cycle_chain(c, i2, i1), v12, v22));
  for (std::size_t t = 0; t < g; ++t) {
    for (std::uint32_t w1 = 0; w1 < qd; ++w1) {
      int128 l1 = lam_pow(t, w1, dm - 1);
      if (!l1) continue;
      for (std::size_t ph = 0; ph < g; ++ph) {
        for (std::uint32_t w2 = 0; w2 < qd; ++w2) {
          std::size_t cell = ((t * qd + w1) * g + ph) * qd + w2;
          if (!agg1[cell] || !agg2[cell]) continue;
          int128 term = checked_mul(checked_mul(l1, lam_pow(ph, w2, dn - 1)), checked_mul(agg1[cell], agg2[cell]));
          total = checked_add(total, term);
        }
      }
    }
  }
  return Rational(total, den);
}

inline int128 cycle_congruent_pair_count(const PointSet& e, const SimplexStructure& c) {
  Metric m(e.params());
  return cycle_congruent_pair_count(m, e, c);
}

}  // namespace simplexlab
