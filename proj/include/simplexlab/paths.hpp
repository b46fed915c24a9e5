#pragma once

#include <cstdint>
#include <vector>

#include "simplexlab/counting.hpp"
#include "simplexlab/errors.hpp"
#include "simplexlab/grid.hpp"
#include "simplexlab/rational.hpp"

namespace simplexlab {

// P(u, u'): paths x1..xk in E with x1 = u, x2 = u' and |x_i - x_{i+1}| = t_i.
inline PairGrid path_counts(const Metric& m, const PointSet& e, const ClassKey& key) {
  if (key.empty()) throw ParameterError("path key needs at least one distance");
  for (auto t : key) {
    if (t == 0) throw ParameterError("key entries must be nonzero distances");
    if (t >= e.params().q()) throw ParameterError("key entry out of range");
  }
  const std::size_t n = e.size();
  detail::DistanceBuckets b(m, e);
  // tail[x]: continuations x_i -> ... -> x_k starting at position x.
  std::vector<uint128> tail(n, 1);
  for (std::size_t i = key.size(); i-- > 1;) {
    std::vector<uint128> next(n, 0);
    for (std::size_t x = 0; x < n; ++x) {
      auto [lo, hi] = b.at(x, key[i]);
      uint128 s = 0;
      for (auto y = lo; y != hi; ++y) s = uint128(checked_add(int128(s), int128(tail[*y])));
      next[x] = s;
    }
    tail = std::move(next);
  }
  PairGrid p(e.params());
  for (std::size_t u = 0; u < n; ++u) {
    auto [lo, hi] = b.at(u, key[0]);
    for (auto v = lo; v != hi; ++v) p.at(e[u], e[*v]) = detail::to_u64(tail[*v]);
  }
  return p;
}

inline PairGrid path_counts(const PointSet& e, const ClassKey& key) {
  Metric m(e.params());
  return path_counts(m, e, key);
}

struct BetaAlpha {
  CountGrid beta;
  PairGrid alpha;
  Rational beta_hat0;    // q^-d sum beta
  Rational alpha_hat00;  // q^-2d sum alpha

  Rational ratio() const { return alpha_hat00 == Rational(0) ? Rational(0) : beta_hat0 / alpha_hat00; }
};

// beta_theta(w) = sum over u - theta u' = v - theta v' = w of P(u, v) P(u', v')
// alpha_theta(w1, w2) = sum over u - theta u' = w1, v - theta v' = w2 of the same
inline BetaAlpha beta_alpha(const Geometry& geo, const PointSet& e, std::size_t theta, const PairGrid& paths) {
  require_same_space(geo, e);
  const auto& p = geo.params();
  BetaAlpha out{CountGrid(p), PairGrid(p), Rational(0), Rational(0)};

  std::vector<std::pair<std::uint32_t, std::uint32_t>> supp;
  for (auto u : e.indices()) {
    for (auto v : e.indices()) {
      if (paths.at(u, v)) supp.push_back({u, v});
    }
  }
  std::vector<uint128> alpha(out.alpha.counts.size(), 0);
  for (auto [u, v] : supp) {
    for (auto [up, vp] : supp) {
      std::uint64_t cell = std::uint64_t(geo.sub(u, geo.rotate(theta, up))) * p.size() +
                           geo.sub(v, geo.rotate(theta, vp));
      alpha[cell] = uint128(checked_add(int128(alpha[cell]), checked_mul(int128(paths.at(u, v)), int128(paths.at(up, vp)))));
    }
  }
  int128 alpha_sum = 0;
  for (std::size_t c = 0; c < alpha.size(); ++c) {
    out.alpha.counts[c] = detail::to_u64(alpha[c]);
    alpha_sum = checked_add(alpha_sum, int128(alpha[c]));
  }

  OffsetPairs offs(geo, e);
  int128 beta_sum = 0;
  for (std::uint32_t w = 0; w < p.size(); ++w) {
    auto a = offs.at(theta, w);
    int128 s = 0;
    for (auto [u, up] : a) {
      for (auto [v, vp] : a) {
        std::uint64_t x = paths.at(e[u], e[v]);
        if (!x) continue;
        std::uint64_t y = paths.at(e[up], e[vp]);
        if (y) s = checked_add(s, checked_mul(int128(x), int128(y)));
      }
    }
    out.beta[w] = detail::to_u64(uint128(s));
    beta_sum = checked_add(beta_sum, s);
  }
  int128 qd = int128(p.size());
  out.beta_hat0 = Rational(beta_sum, qd);
  out.alpha_hat00 = Rational(alpha_sum, checked_mul(qd, qd));
  return out;
}

}  // namespace simplexlab
