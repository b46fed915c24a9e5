#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "simplexlab/counting.hpp"
#include "simplexlab/experiments.hpp"
#include "simplexlab/fourier.hpp"
#include "simplexlab/oracle.hpp"
#include "simplexlab/ortho.hpp"
#include "simplexlab/paths.hpp"
#include "simplexlab/rewrite.hpp"
#include "simplexlab/threshold.hpp"

namespace simplexlab {

struct CheckResult {
  std::string suite;
  std::string name;
  bool pass = false;
  std::string detail;
};

struct VerifyOptions {
  std::uint64_t seed = 1;
  unsigned threads = 1;
  std::optional<std::filesystem::path> cache_dir;
};

inline const std::vector<std::string>& verify_suites() {
  static const std::vector<std::string> s = {"ortho", "fourier", "bounds", "identity"};
  return s;
}

namespace detail {

inline std::vector<CheckResult> verify_ortho(const VerifyOptions& opt) {
  std::vector<CheckResult> out;
  for (std::uint32_t q : {3u, 5u, 7u}) {
    FieldParams p(q, 2);
    auto a = enumerate_group(p), b = enumerate_group_scan(p);
    bool same = a.elements() == b.elements();
    out.push_back({"ortho", "frame-equals-scan q=" + std::to_string(q), same, "|G|=" + std::to_string(a.size())});
  }
  for (std::uint32_t q : {3u, 5u}) {
    auto g = enumerate_group(FieldParams(q, 2));
    out.push_back({"ortho", "order-2d q=" + std::to_string(q), g.size() == 8, "|G|=" + std::to_string(g.size())});
  }
  for (auto [q, d] : {std::pair{7u, 2}, std::pair{3u, 3}}) {
    auto g = enumerate_group(FieldParams(q, d));
    bool ok = g.is_closed();
    for (const auto& m : g.elements()) ok = ok && m.is_orthogonal(g.params());
    out.push_back({"ortho", "closed-and-orthogonal q=" + std::to_string(q) + " d=" + std::to_string(d), ok,
                   "|G|=" + std::to_string(g.size())});
  }
  for (int d : {2, 3}) {
    std::map<int, double> sizes;
    for (std::uint32_t q : {3u, 5u, 7u, 11u}) sizes[int(q)] = double(cached_group(FieldParams(q, d), opt.cache_dir).size());
    auto fit = exponent_fit(sizes);
    double want = double(binom(d, 2));
    out.push_back({"ortho", "order-exponent d=" + std::to_string(d), std::abs(fit.slope - want) <= 0.35,
                   "slope=" + fixed(fit.slope) + " target=" + fixed(want)});
  }

  std::mt19937_64 rng(opt.seed);
  for (int d : {1, 2, 3}) {
    for (std::uint32_t q : {3u, 5u, 7u}) {
      FieldParams p(q, d);
      auto g = cached_group(p, opt.cache_dir);
      double worst = 1;
      for (int n = 1; n <= d + 1; ++n) {
        for (int trial = 0; trial < 10; ++trial) {
          std::vector<Vector> pts;
          do {
            pts.assign(1, p.zero());
            for (int i = 0; i < n; ++i) pts.push_back(p.point(std::uint32_t(rng() % p.size())));
          } while (!is_nondegenerate(p, pts));
          double got = double(stabilizer_size(g, pts));
          double want = std::pow(double(q), stab_exponent(n, d));
          worst = std::max(worst, std::max(got / want, want / got));
        }
      }
      out.push_back({"ortho", "stabilizer-law q=" + std::to_string(q) + " d=" + std::to_string(d), worst <= 4.0,
                     "worst factor " + fixed(worst)});
    }
  }
  return out;
}

inline std::vector<CheckResult> verify_fourier(const VerifyOptions& opt) {
  std::vector<CheckResult> out;
  std::mt19937_64 rng(opt.seed + 1);
  double worst = 0;
  for (int i = 0; i < 50; ++i) {
    FieldParams p(std::vector<std::uint32_t>{3, 5, 7}[i % 3], 1 + i % 2);
    ComplexGrid f(p);
    std::uniform_real_distribution<double> u(-1, 1);
    for (auto& v : f.values) v = Complex(u(rng), u(rng));
    double base = f.l2_squared() / double(p.size());
    worst = std::max(worst, parseval_defect(f) / base);
  }
  out.push_back({"fourier", "parseval", worst <= 1e-9, "max relative defect " + std::to_string(worst)});

  GeometryCache cache(opt.cache_dir);
  double gamma_err = 0;
  bool lambda_ok = true;
  for (std::uint32_t q : {3u, 5u}) {
    FieldParams p(q, 2);
    const Geometry& geo = cache.get(p);
    PointSet e = sample_dense(p, 1, 2, mix_seed({opt.seed, q}));
    CountGrid f = f_tree(e, path_tree(2), {1, 2});
    ComplexGrid fh = transform(to_complex(p, f.counts));
    for (std::size_t t = 0; t < geo.group().size(); ++t) {
      ComplexGrid gh = transform(to_complex(p, gamma_of(geo, f, t).counts));
      std::size_t inv = geo.group().inverse_index(t);
      for (std::uint32_t m = 0; m < p.size(); ++m) {
        Complex want = double(p.size()) * fh[m] * std::conj(fh[geo.rotate(inv, m)]);
        gamma_err = std::max(gamma_err, std::abs(gh[m] - want) / std::max(1.0, std::abs(want)));
      }
      ComplexGrid lh = transform(to_complex(p, lambda(geo, e, t).counts));
      double want = double(e.size()) * double(e.size()) / double(p.size());
      lambda_ok = lambda_ok && std::abs(lh[0].real() - want) <= 1e-9 * std::max(1.0, want);
    }
  }
  out.push_back({"fourier", "gamma-factorization", gamma_err <= 1e-9, "max relative error " + std::to_string(gamma_err)});
  out.push_back({"fourier", "lambda-zero-mode", lambda_ok, "lambda^(0) = |E|^2/q^d"});
  return out;
}

inline std::vector<CheckResult> verify_bounds(const VerifyOptions& opt) {
  std::vector<CheckResult> out;
  GeometryCache cache(opt.cache_dir);
  BoundCorpusSpec spec;
  spec.seed = opt.seed;
  for (const auto& lemma : bound_lemmas()) {
    auto rep = bound_report(lemma, bound_corpus(lemma, spec), cache, opt.threads);
    out.push_back({"bounds", lemma, rep.pass(), "max ratio " + fixed(rep.max_ratio()) + ", max slope " + fixed(rep.max_slope())});
  }
  return out;
}

// Checks every applicable branch shift and unbalancing of one tree. Returns
// an empty string when all conserve N_k and the class exponent.
inline std::string check_rewrites(const RootedTree& t) {
  VertexRoles roles = classify_vertices(t);
  const auto& s = t.structure;
  std::vector<std::pair<std::string, std::string>> children;
  for (const auto& [id, r] : roles) {
    for (const auto& v : r.child_vertices) children.push_back({id, v});
  }
  for (std::size_t i = 0; i < children.size(); ++i) {
    for (std::size_t j = 0; j < children.size(); ++j) {
      if (i == j) continue;
      const auto& [s1, v1] = children[i];
      const auto& [s2, v2] = children[j];
      std::pair<RootedTree, RootedTree> outp;
      try {
        outp = branch_shift(t, s1, v1, s2, v2);
      } catch (const ParameterError&) {
        continue;
      }
      if (!validate(outp.first.structure).ok || !validate(outp.second.structure).ok) return "branch shift output invalid";
      int moved = 1;
      for (const auto& side : {detail::branch_set(roles, s1, v1), detail::branch_set(roles, s2, v2)}) {
        for (const auto& id : side) moved = std::max(moved, s.get(id).dim());
      }
      for (int k = moved; k <= s.max_dim() + 1; ++k) {
        if (n_k(outp.first.structure, k) != n_k(s, k) || n_k(outp.second.structure, k) != n_k(s, k)) {
          return "branch shift changed N_" + std::to_string(k);
        }
      }
      for (int d = 2; d <= 6; ++d) {
        if (2 * c_structure(s, d) != c_structure(outp.first.structure, d) + c_structure(outp.second.structure, d)) {
          return "branch shift broke 2c(T) = c(T1) + c(T2)";
        }
      }
    }
  }
  for (const auto& a : s.simplices) {
    for (const auto& b : s.simplices) {
      if (a.id == b.id) continue;
      for (int k1 = 1; k1 < a.dim(); ++k1) {
        for (int k2 = 1; k2 < b.dim(); ++k2) {
          std::pair<RootedTree, RootedTree> outp;
          try {
            outp = simplex_unbalance(t, a.id, k1, b.id, k2);
          } catch (const ParameterError&) {
            continue;
          }
          if (!validate(outp.first.structure).ok || !validate(outp.second.structure).ok) {
            return "unbalancing output invalid";
          }
          for (int k = 1; k <= std::min(a.dim() - k1, b.dim() - k2); ++k) {
            if (n_k(outp.first.structure, k) != n_k(s, k) || n_k(outp.second.structure, k) != n_k(s, k)) {
              return "unbalancing changed N_" + std::to_string(k);
            }
          }
        }
      }
    }
  }
  for (int k = 1; k <= 3; ++k) {
    auto res = canonicalize(t, k);
    for (const auto& term : res.terminals) {
      int big = 0, top = 0;
      for (const auto& sx : term.structure.simplices) {
        big += sx.dim() > k;
        top = std::max(top, sx.dim());
      }
      bool ok = big == 0 ? n_k(s, k) == k : (big == 1 && top == n_k(s, k));
      if (!ok) return "canonical terminal does not carry a single simplex of dimension N_" + std::to_string(k);
    }
  }
  return "";
}

inline std::vector<CheckResult> verify_identity(const VerifyOptions& opt) {
  std::vector<CheckResult> out;
  int bad = 0;
  for (int d = 2; d <= 6; ++d) {
    for (int n = 1; n <= 8; ++n) {
      for (int m = 1; m <= 8; ++m) bad += exponent_identity_check(d, n, m).ok ? 0 : 1;
    }
  }
  out.push_back({"identity", "exponent-identity", bad == 0, std::to_string(bad) + " mismatches over n, m in [1,8], d in [2,6]"});

  auto chain = make_structure(StructureKind::tree, {{0, 1, 2}, {2, 3, 4}, {4, 5, 6}});
  auto bowtie = make_structure(StructureKind::tree, {{0, 1, 2}, {2, 3, 4}});
  auto p4 = predict_threshold(chain, 4, 1);
  Rational general = p4.rows[0].s, small(0);
  for (const auto& r : p4.rows) {
    if (r.route == "small-simplex") small = r.s;
  }
  out.push_back({"identity", "threshold-chain-general", general == Rational(17, 5), general.str()});
  out.push_back({"identity", "threshold-chain-small-simplex", small == Rational(7, 2), small.str()});
  Rational plane(0);
  for (const auto& r : predict_threshold(bowtie, 2, 1).rows) {
    if (r.route == "plane") plane = r.s;
  }
  out.push_back({"identity", "threshold-bowtie-plane", plane == Rational(12, 7), plane.str()});

  std::mt19937_64 rng(opt.seed + 2);
  int failures = 0;
  std::string first;
  for (int i = 0; i < 200; ++i) {
    auto s = random_tree(rng, 6, 4);
    auto msg = check_rewrites(RootedTree{s, s.simplices.front().id, std::nullopt});
    if (!msg.empty()) {
      ++failures;
      if (first.empty()) first = msg;
    }
  }
  out.push_back({"identity", "rewrite-conservation", failures == 0,
                 failures ? first : std::string("200 random trees")});

  FieldParams p(5, 2);
  PointSet e = sample_dense(p, 1, 2, mix_seed({opt.seed, 5}));
  ClassKey key{1, 2, 3};
  auto f = f_tree(e, path_tree(3), key);
  auto paths = path_counts(e, key);
  out.push_back({"identity", "path-total-equals-tree-total", paths.l1() == f.l1(),
                 std::to_string(paths.l1()) + " vs " + std::to_string(f.l1())});

  GeometryCache cache(opt.cache_dir);
  FieldParams p3(3, 2);
  const Geometry& geo = cache.get(p3);
  PointSet full = PointSet::full(p3);
  RootedTree t{bowtie, "S0", std::nullopt};
  Rational r = r_rooted(geo, full, t, EmbeddingMode::nondegenerate);
  int128 oracle = congruent_pair_count(full, bowtie, EmbeddingMode::nondegenerate);
  out.push_back({"identity", "nondegenerate-r-equals-oracle", r == Rational(oracle), r.str() + " vs " + to_string(oracle)});
  return out;
}

}  // namespace detail

inline std::vector<CheckResult> run_verify(const std::string& suite, const VerifyOptions& opt) {
  std::vector<CheckResult> out;
  auto add = [&](std::vector<CheckResult> v) { out.insert(out.end(), v.begin(), v.end()); };
  bool all = suite == "all";
  if (!all && std::find(verify_suites().begin(), verify_suites().end(), suite) == verify_suites().end()) {
    throw ParameterError("unknown suite '" + suite + "'");
  }
  if (all || suite == "ortho") add(detail::verify_ortho(opt));
  if (all || suite == "fourier") add(detail::verify_fourier(opt));
  if (all || suite == "bounds") add(detail::verify_bounds(opt));
  if (all || suite == "identity") add(detail::verify_identity(opt));
  return out;
}

}  // namespace simplexlab
