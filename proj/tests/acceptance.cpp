// One line per acceptance criterion. Exit status is nonzero if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "simplexlab/simplexlab.hpp"

using namespace simplexlab;

namespace {

// Pinned tolerances.
constexpr double kFourierTol = 1e-9;        // relative
constexpr double kStabFactor = 4.0;         // stabilizer law
constexpr double kExponentTol = 0.35;       // group-order slope
constexpr double kSandwich = 16.0;          // R and cycle sums against the oracle
constexpr double kObstruction = 8.0;        // beta/alpha against q^{d-1}
constexpr double kBoundRatio = 64.0;
constexpr double kBoundSlope = 0.3;

struct Outcome {
  bool pass = true;
  std::string detail;
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

SimplexStructure tree(std::vector<std::vector<std::string>> s, StructureKind kind = StructureKind::tree) {
  SimplexStructure out;
  out.kind = kind;
  for (std::size_t i = 0; i < s.size(); ++i) out.simplices.push_back({"S" + std::to_string(i), s[i]});
  return out;
}

Outcome ac1() {
  Outcome o;
  for (std::uint32_t q : {3u, 5u, 7u}) {
    FieldParams p(q, 2);
    if (enumerate_group(p).elements() != enumerate_group_scan(p).elements()) {
      o.pass = false;
      o.detail += "frame != scan at q=" + std::to_string(q) + "; ";
    }
  }
  auto g3 = oracle::orthogonal_group(FieldParams(3, 2)).size();
  auto g5 = oracle::orthogonal_group(FieldParams(5, 2)).size();
  o.pass = o.pass && g3 == 8 && g5 == 8 && enumerate_group(FieldParams(3, 2)).size() == g3 &&
           enumerate_group(FieldParams(5, 2)).size() == g5;
  o.detail += "|O_2(F_3)|=" + std::to_string(g3) + " |O_2(F_5)|=" + std::to_string(g5);
  return o;
}

Outcome ac2() {
  Outcome o;
  for (int d : {2, 3}) {
    std::map<int, double> sizes;
    for (std::uint32_t q : {3u, 5u, 7u, 11u}) sizes[int(q)] = double(enumerate_group(FieldParams(q, d)).size());
    double slope = exponent_fit(sizes).slope;
    double want = double(binom(d, 2));
    o.pass = o.pass && std::abs(slope - want) <= kExponentTol;
    o.detail += "d=" + std::to_string(d) + " slope " + fixed(slope, 3) + " (target " + fixed(want, 0) + ") ";
  }
  return o;
}

Outcome ac3() {
  Outcome o;
  std::mt19937_64 rng(3);
  double worst = 1;
  int samples = 0;
  for (int d = 1; d <= 3; ++d) {
    for (std::uint32_t q : {3u, 5u, 7u}) {
      FieldParams p(q, d);
      auto g = enumerate_group(p);
      for (int n = 1; n <= d + 1; ++n) {
        for (int t = 0; t < 10; ++t) {
          std::vector<Vector> pts;
          do {
            pts.assign(1, p.zero());
            for (int i = 0; i < n; ++i) pts.push_back(p.point(std::uint32_t(rng() % p.size())));
          } while (!is_nondegenerate(p, pts));
          double got = double(stabilizer_size(g, pts));
          double want = std::pow(double(q), stab_exponent(n, d));
          worst = std::max(worst, std::max(got / want, want / got));
          ++samples;
        }
      }
    }
  }
  o.pass = worst <= kStabFactor;
  o.detail = std::to_string(samples) + " samples, worst factor " + fixed(worst, 3);
  return o;
}

Outcome ac4() {
  Outcome o;
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-1, 1);
  double parseval = 0;
  for (int i = 0; i < 50; ++i) {
    FieldParams p(std::vector<std::uint32_t>{3, 5, 7}[i % 3], 1 + (i / 3) % 2);
    ComplexGrid f(p);
    for (auto& v : f.values) v = Complex(u(rng), u(rng));
    parseval = std::max(parseval, parseval_defect(f) / (f.l2_squared() / double(p.size())));
  }
  double gamma_err = 0;
  int gamma_instances = 0;
  double lambda_err = 0;
  int lambda_instances = 0;
  for (std::uint32_t q : {3u, 5u, 7u}) {
    FieldParams p(q, 2);
    Geometry geo(p);
    for (int i = 0; i < 4 && gamma_instances < 10; ++i, ++gamma_instances) {
      PointSet e = sample_dense(p, 1, 2, rng());
      std::size_t t = rng() % geo.group().size();
      ClassKey key{Residue(1 + rng() % (q - 1)), Residue(1 + rng() % (q - 1))};
      CountGrid f = f_tree(e, path_tree(2), key);
      ComplexGrid fh = transform(to_complex(p, f.counts));
      ComplexGrid gh = transform(to_complex(p, gamma_of(geo, f, t).counts));
      std::size_t inv = geo.group().inverse_index(t);
      for (std::uint32_t m = 0; m < p.size(); ++m) {
        Complex want = double(p.size()) * fh[m] * std::conj(fh[geo.rotate(inv, m)]);
        gamma_err = std::max(gamma_err, std::abs(gh[m] - want) / std::max(1.0, std::abs(want)));
      }
    }
    for (int i = 0; i < 7 && lambda_instances < 20; ++i, ++lambda_instances) {
      PointSet e = sample_dense(p, 1 + rng() % 3, 4, rng());
      std::size_t t = rng() % geo.group().size();
      ComplexGrid lh = transform(to_complex(p, lambda(geo, e, t).counts));
      double want = double(e.size()) * double(e.size()) / double(p.size());
      lambda_err = std::max(lambda_err, std::abs(lh[0] - Complex(want, 0)) / std::max(1.0, want));
    }
  }
  o.pass = parseval <= kFourierTol && gamma_err <= kFourierTol && lambda_err <= kFourierTol;
  o.detail = "parseval " + sci(parseval) + " (50 grids), gamma " + sci(gamma_err) + " (" +
             std::to_string(gamma_instances) + "), lambda(0) " + sci(lambda_err) + " (" +
             std::to_string(lambda_instances) + ")";
  return o;
}

Outcome ac5() {
  Outcome o;
  std::mt19937_64 rng(5);
  int agree = 0;
  for (int i = 0; i < 20; ++i) {
    std::uint32_t q = i % 2 ? 5 : 3;
    FieldParams p(q, 2);
    std::vector<std::uint32_t> idx;
    for (std::uint32_t x = 0; x < p.size(); ++x) {
      if (rng() % 3) idx.push_back(x);
    }
    if (idx.size() > 40) idx.resize(40);
    PointSet e = PointSet::from_indices(p, idx);
    WeakTree t;
    t.k = 1 + i % 2;
    int edges = 1 + int(rng() % 3);
    t.vertex_count = edges + 1;
    for (int v = 1; v <= edges; ++v) t.edges.push_back({int(rng() % v), v});
    t.root = int(rng() % t.vertex_count);
    ClassKey key;
    for (std::size_t j = 0; j < t.key_length(); ++j) key.push_back(Residue(1 + rng() % (q - 1)));
    agree += f_tree(e, t, key).l1() == oracle::weak_tree_total(p, idx, t, key);
  }
  int paths = 0;
  for (int i = 0; i < 5; ++i) {
    FieldParams p(5, 2);
    PointSet e = sample_dense(p, 1, 2, rng());
    ClassKey key;
    for (int j = 0; j < 2 + i % 3; ++j) key.push_back(Residue(1 + rng() % 4));
    auto pc = path_counts(e, key).l1();
    paths += pc == f_tree(e, path_tree(int(key.size())), key).l1() &&
             pc == oracle::weak_tree_total(p, e.indices(), path_tree(int(key.size())), key);
  }
  o.pass = agree == 20 && paths == 5;
  o.detail = std::to_string(agree) + "/20 tree totals exact, " + std::to_string(paths) + "/5 path totals exact";
  return o;
}

// Trees with at most three simplices and at most seven vertices.
std::vector<SimplexStructure> regression_shapes() {
  return {tree({{"a", "b"}}),
          tree({{"a", "b", "c"}}),
          tree({{"a", "b"}, {"b", "c"}}),
          tree({{"a", "b", "c", "d"}}),
          tree({{"a", "b"}, {"b", "c"}, {"c", "d"}}),
          tree({{"a", "b"}, {"a", "c"}, {"a", "d"}}),
          tree({{"a", "b", "c"}, {"c", "d"}}),
          tree({{"a", "b", "c"}, {"c", "d", "e"}}),
          tree({{"a", "b", "c", "d"}, {"d", "e"}}),
          tree({{"a", "b", "c"}, {"b", "d"}, {"c", "e"}}),
          tree({{"a", "b", "c"}, {"c", "d", "e"}, {"e", "f", "g"}}),
          tree({{"a", "b", "c"}, {"c", "d", "e"}, {"c", "f"}}),
          tree({{"a", "b", "c", "d"}, {"d", "e", "f"}}),
          tree({{"a", "b", "c"}, {"a", "d", "e"}, {"a", "f", "g"}}),
          tree({{"a", "b", "c", "d", "e"}, {"e", "f"}})};
}

Outcome ac6() {
  Outcome o;
  std::mt19937_64 rng(6);
  auto shapes = regression_shapes();
  double lo = 1e9, hi = 0;
  int instances = 0, nd_equal = 0, clean = 0, clean_equal = 0;
  for (std::uint32_t q : {3u, 5u}) {
    FieldParams p(q, 2);
    Geometry geo(p);
    for (const auto& s : shapes) {
      const std::size_t nv = s.vertex_names().size();
      // keep |E|^|V| near 10^7 so the histogram stays quick
      std::size_t cap = std::min<std::size_t>(p.size(), std::size_t(std::pow(1e7, 1.0 / double(nv))));
      std::vector<std::uint32_t> all(p.size());
      for (std::uint32_t i = 0; i < p.size(); ++i) all[i] = i;
      std::shuffle(all.begin(), all.end(), rng);
      std::size_t size = std::max<std::size_t>(3, cap - rng() % 3);
      all.resize(std::min<std::size_t>(size, p.size()));
      PointSet e = PointSet::from_indices(p, all);
      RootedTree t{s, "S0", std::nullopt};
      auto h = nu_histogram(e, s);
      auto hn = nu_histogram(e, s, EmbeddingMode::nondegenerate);
      double ratio = r_rooted(geo, e, t).to_double() / double(h.sum_squares());
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
      Rational rn = r_rooted(geo, e, t, EmbeddingMode::nondegenerate);
      nd_equal += rn == Rational(hn.sum_squares());
      if (h.total() == hn.total()) {
        ++clean;
        clean_equal += rn == Rational(h.sum_squares());
      }
      ++instances;
    }
  }
  o.pass = lo >= 1 / kSandwich && hi <= kSandwich && nd_equal == instances && clean_equal == clean;
  o.detail = std::to_string(instances) + " instances, ratio in [" + fixed(lo, 3) + ", " + fixed(hi, 3) +
             "], nondegenerate exact " + std::to_string(nd_equal) + "/" + std::to_string(instances) +
             ", degeneracy-free exact " + std::to_string(clean_equal) + "/" + std::to_string(clean);
  return o;
}

Outcome ac7() {
  Outcome o;
  std::mt19937_64 rng(7);
  int bad = 0;
  for (int i = 0; i < 200; ++i) {
    auto s = random_tree(rng, 6, 4);
    auto msg = detail::check_rewrites({s, s.simplices.front().id, std::nullopt});
    if (!msg.empty()) {
      if (!bad) o.detail = msg + "; ";
      ++bad;
    }
  }
  o.pass = bad == 0;
  o.detail += std::to_string(200 - bad) + "/200 trees conserve";
  return o;
}

Outcome ac8() {
  Outcome o;
  int cases = 0, bad = 0;
  for (int d = 2; d <= 6; ++d) {
    for (int n = 1; n <= 8; ++n) {
      for (int m = 1; m <= 8; ++m, ++cases) bad += !exponent_identity_check(d, n, m).ok;
    }
  }
  o.pass = bad == 0;
  o.detail = std::to_string(cases - bad) + "/" + std::to_string(cases) + " cases";
  return o;
}

Outcome ac9() {
  Outcome o;
  auto chain = tree({{"a", "b", "c"}, {"c", "d", "e"}, {"e", "f", "g"}});
  auto bowtie = tree({{"a", "b", "c"}, {"c", "d", "e"}});
  auto pc = predict_threshold(chain, 4, 1);
  auto pb = predict_threshold(bowtie, 2, 1);
  auto row = [](const ThresholdPrediction& p, const std::string& route) {
    for (const auto& r : p.rows) {
      if (r.route == route) return r.s;
    }
    return Rational(-1);
  };
  Rational a = row(pc, "general-d"), b = row(pc, "small-simplex"), c = row(pb, "plane");
  o.pass = a == Rational(17, 5) && b == Rational(7, 2) && c == Rational(12, 7);
  o.detail = "chain " + a.str() + " and " + b.str() + ", bowtie " + c.str();
  return o;
}

Outcome ac10() {
  Outcome o;
  GeometryCache cache;
  BoundCorpusSpec spec;
  double ratio = 0, slope = 0;
  for (const auto& lemma : bound_lemmas()) {
    auto rep = bound_report(lemma, bound_corpus(lemma, spec), cache);
    ratio = std::max(ratio, rep.max_ratio());
    slope = std::max(slope, rep.max_slope());
    if (!rep.pass(kBoundRatio, kBoundSlope)) {
      o.pass = false;
      o.detail += lemma + " fails; ";
    }
  }
  o.detail += std::to_string(bound_lemmas().size()) + " reports, max ratio " + fixed(ratio, 3) + ", max slope " +
              fixed(slope, 3);
  return o;
}

Outcome ac11() {
  Outcome o;
  std::mt19937_64 rng(11);
  double worst = 1;
  int cases = 0;
  for (std::uint32_t q : {3u, 5u}) {
    FieldParams p(q, 2);
    Geometry geo(p);
    for (int i = 0; i < 3; ++i) {
      PointSet e = sample_dense(p, 2, 3, rng());
      ClassKey key{Residue(1 + rng() % (q - 1)), Residue(1 + rng() % (q - 1))};
      auto paths = path_counts(e, key);
      for (std::size_t t = 0; t < geo.group().size(); ++t, ++cases) {
        double r = beta_alpha(geo, e, t, paths).ratio().to_double() / double(q);
        worst = std::max(worst, std::max(r, 1 / r));
      }
    }
  }
  o.pass = worst <= kObstruction;
  o.detail = std::to_string(cases) + " (E, theta) cases, worst factor " + fixed(worst, 3) + " from q^{d-1}";
  return o;
}

Outcome ac12() {
  Outcome o;
  std::mt19937_64 rng(12);
  FieldParams p(3, 2);
  Geometry geo(p);
  std::vector<SimplexStructure> cycles = {
      tree({{"a", "b"}, {"b", "c"}, {"c", "a"}}, StructureKind::cycle),
      tree({{"a", "b"}, {"b", "c"}, {"c", "d"}, {"d", "a"}}, StructureKind::cycle),
      tree({{"a", "b", "x"}, {"b", "c"}, {"c", "a"}}, StructureKind::cycle),
      tree({{"a", "b", "x"}, {"b", "c"}, {"c", "d"}, {"d", "a"}}, StructureKind::cycle),
      tree({{"a", "b"}, {"b", "c"}, {"c", "d"}, {"d", "e"}, {"e", "a"}}, StructureKind::cycle),
  };
  double lo = 1e9, hi = 0;
  int instances = 0, sums = 0;
  for (const auto& c : cycles) {
    for (int i = 0; i < 2; ++i, ++instances) {
      PointSet e = i == 0 ? PointSet::full(p) : sample_dense(p, 3, 4, rng());
      double want = double(cycle_congruent_pair_count(e, c));
      auto check = [&](const std::string& a, const std::string& b, Adjacency adj) {
        double r = cycle_sums(geo, e, c, a, b, adj).to_double() / want;
        lo = std::min(lo, r);
        hi = std::max(hi, r);
        ++sums;
      };
      check("S0", "S1", Adjacency::adjacent);
      if (c.simplices.size() >= 4) check("S0", "S2", Adjacency::nonadjacent);
    }
  }
  o.pass = lo >= 1 / kSandwich && hi <= kSandwich;
  o.detail = std::to_string(instances) + " instances, " + std::to_string(sums) + " sums, ratio in [" + fixed(lo, 3) +
             ", " + fixed(hi, 3) + "]";
  return o;
}

Outcome ac13() {
  Outcome o;
  SweepConfig cfg;
  cfg.structure = tree({{"a", "b", "c"}});
  cfg.d = 2;
  cfg.qs = {3, 5, 7};
  cfg.s_grid = {Rational(1), Rational(3, 2), Rational(2)};
  cfg.trials = 4;
  cfg.seed = 13;
  auto sweep_csv = [&](unsigned threads) {
    std::ostringstream os;
    threshold_sweep(cfg, threads).write_csv(os);
    return os.str();
  };
  auto verify_text = [](unsigned threads) {
    VerifyOptions vo;
    vo.seed = 13;
    vo.threads = threads;
    std::ostringstream os;
    for (const auto& r : run_verify("all", vo)) os << r.suite << r.name << r.pass << r.detail << "\n";
    return os.str();
  };
  bool sweep_same = sweep_csv(1) == sweep_csv(1) && sweep_csv(1) == sweep_csv(4);
  bool verify_same = verify_text(1) == verify_text(3);
  o.pass = sweep_same && verify_same;
  o.detail = std::string("sweep ") + (sweep_same ? "identical" : "differs") + " across runs and 1/4 threads, verify " +
             (verify_same ? "identical" : "differs") + " across 1/3 threads";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"orthogonal-group exactness", ac1},
      {"group-size exponent", ac2},
      {"stabilizer law", ac3},
      {"fourier suite", ac4},
      {"counting oracle equivalence", ac5},
      {"R sandwich", ac6},
      {"rewrite conservation", ac7},
      {"exponent identity", ac8},
      {"threshold regression", ac9},
      {"bound reports", ac10},
      {"obstruction probe", ac11},
      {"cycle sums", ac12},
      {"determinism", ac13},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failed += !o.pass;
    std::printf("AC%-2zu %s  %s: %s [%.2fs]\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first.c_str(),
                o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria pass\n", int(criteria.size()) - failed, criteria.size());
  return failed ? 1 : 0;
}
