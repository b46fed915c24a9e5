#pragma once

#include <optional>
#include <string>
#include <vector>

#include "simplexlab/errors.hpp"
#include "simplexlab/rational.hpp"
#include "simplexlab/structure.hpp"

namespace simplexlab {

struct ThresholdRow {
  std::string route;  // "general-d", "plane", "small-simplex"
  Rational s;
  std::string note;
};

struct ThresholdPrediction {
  int d = 0;
  int k = 0;
  std::int64_t n_k = 0;
  std::vector<ThresholdRow> rows;
  Rational minimum;
};

inline int max_k(int d) { return (d + 2) / 2 - 1; }  // ceil((d+1)/2) - 1

inline ThresholdPrediction predict_threshold(const SimplexStructure& s, int d, int k) {
  if (s.kind != StructureKind::tree) throw ParameterError("threshold prediction needs a tree");
  require_valid(s);
  if (d < 2) throw ParameterError("threshold prediction needs d >= 2");
  if (k < 1 || k > max_k(d)) {
    throw ParameterError("k must lie in [1, " + std::to_string(max_k(d)) + "] for d = " + std::to_string(d));
  }
  ThresholdPrediction p;
  p.d = d;
  p.k = k;
  p.n_k = n_k(s, k);
  Rational group_route(d * p.n_k + 1, p.n_k + 1);
  Rational tree_route = Rational(k) + Rational(d - 1, 2);
  p.rows.push_back({"general-d", std::max(group_route, tree_route),
                    "max((d N_k + 1)/(N_k + 1), k + (d-1)/2) with N_k = " + std::to_string(p.n_k)});
  if (d == 2) {
    std::int64_t n = n_k(s, 1);
    p.rows.push_back({"plane", Rational(4 * n, 2 * n + 1),
                      "4N/(2N+1) with N = " + std::to_string(n) + "; requires q = 3 (mod 4)"});
  }
  int top = s.max_dim();
  if (2 * top < d + 1) {
    p.rows.push_back({"small-simplex", Rational(top) + Rational(d - 1, 2),
                      "n + (d-1)/2 with n = " + std::to_string(top)});
  }
  p.minimum = p.rows.front().s;
  for (const auto& r : p.rows) p.minimum = std::min(p.minimum, r.s);
  return p;
}

struct KSweep {
  std::vector<ThresholdPrediction> per_k;
  int best_k = 0;
  Rational best;
};

// Predictions for every admissible k and the k with the smallest threshold
// (first one on ties).
inline KSweep predict_all_k(const SimplexStructure& s, int d) {
  KSweep out;
  for (int k = 1; k <= max_k(d); ++k) {
    out.per_k.push_back(predict_threshold(s, d, k));
    const Rational& m = out.per_k.back().minimum;
    if (out.best_k == 0 || m < out.best) {
      out.best = m;
      out.best_k = k;
    }
  }
  if (out.per_k.empty()) throw ParameterError("no admissible k for d = " + std::to_string(d));
  return out;
}

}  // namespace simplexlab
