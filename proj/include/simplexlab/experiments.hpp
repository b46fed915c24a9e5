#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "simplexlab/counting.hpp"
#include "simplexlab/errors.hpp"
#include "simplexlab/grid.hpp"
#include "simplexlab/io.hpp"
#include "simplexlab/oracle.hpp"
#include "simplexlab/parallel.hpp"
#include "simplexlab/rational.hpp"
#include "simplexlab/structure.hpp"

namespace simplexlab {

inline const char* kSweepCaveat =
    "consistency probe at desk-scale q: a passing sweep shows no counterexample, it does not confirm the asymptotic "
    "threshold";

inline Rational parse_rational(const std::string& text) {
  auto slash = text.find('/');
  try {
    std::size_t used = 0;
    if (slash == std::string::npos) {
      long long v = std::stoll(text, &used);
      if (used != text.size()) throw ParameterError("bad rational '" + text + "'");
      return Rational(v);
    }
    long long a = std::stoll(text.substr(0, slash), &used);
    if (used != slash) throw ParameterError("bad rational '" + text + "'");
    std::string rest = text.substr(slash + 1);
    long long b = std::stoll(rest, &used);
    if (used != rest.size() || b == 0) throw ParameterError("bad rational '" + text + "'");
    return Rational(a, b);
  } catch (const std::logic_error&) {
    throw ParameterError("bad rational '" + text + "'");
  }
}

inline std::string fixed(double v, int digits = 6) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << v;
  return os.str();
}

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

inline std::uint64_t mix_seed(std::initializer_list<std::uint64_t> parts) {
  std::uint64_t h = 0;
  for (auto p : parts) h = splitmix64(h ^ p);
  return h;
}

// Bernoulli subset with inclusion probability q^(s-d) per point.
inline PointSet sample_subset(const FieldParams& p, const Rational& s, std::uint64_t seed) {
  if (s > Rational(p.d())) throw ParameterError("s must not exceed d");
  long double prob = std::pow((long double)p.q(), (long double)(s - Rational(p.d())).to_double());
  std::mt19937_64 rng(seed);
  std::vector<std::uint32_t> idx;
  const bool all = s == Rational(p.d());
  const long double scale = 18446744073709551616.0L;
  const std::uint64_t cut = all ? 0 : std::uint64_t(std::floor(prob * scale));
  for (std::uint32_t i = 0; i < p.size(); ++i) {
    std::uint64_t draw = rng();
    if (all || draw < cut) idx.push_back(i);
  }
  return PointSet::from_indices(p, std::move(idx));
}

// Dense subset: every point with probability num/den.
inline PointSet sample_dense(const FieldParams& p, std::uint64_t num, std::uint64_t den, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::uint32_t> idx;
  for (std::uint32_t i = 0; i < p.size(); ++i) {
    if (rng() % den < num) idx.push_back(i);
  }
  return PointSet::from_indices(p, std::move(idx));
}

// Random simplex tree: each new simplex hangs off one existing vertex.
inline SimplexStructure random_tree(std::mt19937_64& rng, int max_simplices, int max_dim) {
  if (max_simplices < 1 || max_dim < 1) throw ParameterError("random tree needs positive limits");
  int count = 1 + int(rng() % std::uint64_t(max_simplices));
  std::vector<std::vector<int>> simplices;
  int next = 0;
  for (int i = 0; i < count; ++i) {
    int dim = 1 + int(rng() % std::uint64_t(max_dim));
    std::vector<int> vs;
    if (i > 0) vs.push_back(int(rng() % std::uint64_t(next)));
    while (int(vs.size()) < dim + 1) vs.push_back(next++);
    simplices.push_back(vs);
  }
  return make_structure(StructureKind::tree, simplices);
}

struct ExponentFit {
  double slope = 0;
  double intercept = 0;
  double residual = 0;  // root mean square in log space
};

inline ExponentFit exponent_fit(const std::map<int, double>& values) {
  if (values.size() < 3) throw ParameterError("exponent fit needs at least three distinct q");
  double n = double(values.size()), sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (auto [q, v] : values) {
    if (!(v > 0)) throw ParameterError("exponent fit needs positive values");
    double x = std::log(double(q)), y = std::log(v);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  ExponentFit f;
  f.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  f.intercept = (sy - f.slope * sx) / n;
  double ss = 0;
  for (auto [q, v] : values) {
    double r = std::log(v) - (f.intercept + f.slope * std::log(double(q)));
    ss += r * r;
  }
  f.residual = std::sqrt(ss / n);
  return f;
}

// One Geometry per (q, d), built on first use.
class GeometryCache {
 public:
  explicit GeometryCache(std::optional<std::filesystem::path> dir = std::nullopt) : dir_(std::move(dir)) {}
  const Geometry& get(const FieldParams& p) {
    std::lock_guard<std::mutex> lock(mu_);
    auto key = std::make_pair(p.q(), p.d());
    auto it = cache_.find(key);
    if (it == cache_.end()) it = cache_.emplace(key, std::make_unique<Geometry>(p, dir_)).first;
    return *it->second;
  }

 private:
  std::optional<std::filesystem::path> dir_;
  std::mutex mu_;
  std::map<std::pair<std::uint32_t, int>, std::unique_ptr<Geometry>> cache_;
};

// Histogram guard for sweep cells.
struct HistogramBudget {
  std::size_t max_vertices = 8;
  std::size_t max_points = 60;
  long double max_maps = 4294967296.0L;
};

struct SweepConfig {
  SimplexStructure structure;
  int d = 2;
  std::vector<int> qs;
  std::vector<Rational> s_grid;
  int trials = 1;
  std::uint64_t seed = 1;
  double c0 = 0.01;
  bool nonzero_only = true;
  HistogramBudget budget;
};

inline SweepConfig sweep_config_from_json(const json& j, const std::string& base_dir = ".") {
  SweepConfig c;
  try {
    if (j.contains("structure_file")) {
      std::filesystem::path f = j["structure_file"].get<std::string>();
      if (f.is_relative()) f = std::filesystem::path(base_dir) / f;
      c.structure = load_structure(f.string()).structure;
    } else if (j.contains("structure")) {
      c.structure = structure_from_json(j["structure"]).structure;
    } else {
      throw ParameterError("sweep config needs structure or structure_file");
    }
    c.d = j.value("d", 2);
    c.qs = j.at("q").get<std::vector<int>>();
    for (const auto& s : j.at("s")) {
      c.s_grid.push_back(s.is_string() ? parse_rational(s.get<std::string>()) : Rational(s.get<long long>()));
    }
    c.trials = j.value("trials", 1);
    c.seed = j.value("seed", std::uint64_t(1));
    c.c0 = j.value("c0", 0.01);
    c.nonzero_only = j.value("nonzero_only", true);
    if (j.contains("max_points")) c.budget.max_points = j["max_points"].get<std::size_t>();
  } catch (const json::exception& e) {
    throw ParameterError(std::string("malformed sweep config: ") + e.what());
  }
  require_valid(c.structure);
  if (c.qs.empty() || c.s_grid.empty()) throw ParameterError("sweep needs q and s values");
  for (int q : c.qs) {
    if (q < 3 || !is_prime(std::uint64_t(q))) throw ParameterError("sweep q values must be odd primes");
  }
  for (const auto& s : c.s_grid) {
    if (s <= Rational(0) || s > Rational(c.d)) throw ParameterError("sweep s values must lie in (0, d]");
  }
  if (c.trials < 1) throw ParameterError("sweep needs at least one trial");
  return c;
}

struct SweepCell {
  int q = 0;
  Rational s;
  int trial = 0;
  std::size_t size = 0;
  std::size_t delta = 0;
  Rational cs_bound;
  Rational proportion;
  bool pass = false;
  std::string status = "ok";  // or the skip reason
};

struct SweepReport {
  SweepConfig config;
  std::int64_t c = 0;  // class exponent of the structure
  std::vector<SweepCell> cells;
  // median proportion per (q, s) and the smallest s reaching c0 per q
  std::map<std::pair<int, Rational>, double> medians;
  std::map<int, std::optional<Rational>> transition;

  void write_csv(std::ostream& os) const {
    os << "q,s,trial,size,delta,cs_bound,proportion,pass,status\n";
    for (const auto& x : cells) {
      os << x.q << "," << x.s.str() << "," << x.trial << "," << x.size << "," << x.delta << ","
         << fixed(x.cs_bound.to_double()) << "," << fixed(x.proportion.to_double()) << "," << (x.pass ? 1 : 0) << ","
         << x.status << "\n";
    }
    os << "# median\n";
    for (const auto& [k, v] : medians) os << "# q=" << k.first << " s=" << k.second.str() << " median=" << fixed(v) << "\n";
    for (const auto& [q, s] : transition) os << "# q=" << q << " transition=" << (s ? s->str() : "none") << "\n";
    os << "# " << kSweepCaveat << "\n";
  }

  json to_json_value() const {
    json j;
    j["c"] = c;
    j["c0"] = config.c0;
    j["seed"] = config.seed;
    j["caveat"] = kSweepCaveat;
    j["cells"] = json::array();
    for (const auto& x : cells) {
      j["cells"].push_back({{"q", x.q},
                            {"s", x.s.str()},
                            {"trial", x.trial},
                            {"size", x.size},
                            {"delta", x.delta},
                            {"cs_bound", fixed(x.cs_bound.to_double())},
                            {"proportion", fixed(x.proportion.to_double())},
                            {"pass", x.pass},
                            {"status", x.status}});
    }
    j["medians"] = json::array();
    for (const auto& [k, v] : medians) j["medians"].push_back({{"q", k.first}, {"s", k.second.str()}, {"median", fixed(v)}});
    j["transition"] = json::object();
    for (const auto& [q, s] : transition) j["transition"][std::to_string(q)] = s ? json(s->str()) : json(nullptr);
    return j;
  }
};

inline SweepReport threshold_sweep(const SweepConfig& cfg, unsigned threads = 1) {
  require_valid(cfg.structure);
  SweepReport rep;
  rep.config = cfg;
  rep.c = c_structure(cfg.structure, cfg.d);
  const std::size_t nv = cfg.structure.vertex_count();
  for (int q : cfg.qs) {
    for (const auto& s : cfg.s_grid) {
      for (int t = 0; t < cfg.trials; ++t) rep.cells.push_back({q, s, t, 0, 0, Rational(0), Rational(0), false, "ok"});
    }
  }
  parallel_for(rep.cells.size(), threads, [&](std::size_t i) {
    SweepCell& cell = rep.cells[i];
    FieldParams p(std::uint32_t(cell.q), cfg.d);
    std::uint64_t seed = mix_seed({cfg.seed, std::uint64_t(cell.q), std::uint64_t(cell.s.num()),
                                   std::uint64_t(cell.s.den()), std::uint64_t(cell.trial)});
    PointSet e = sample_subset(p, cell.s, seed);
    cell.size = e.size();
    long double maps = std::pow((long double)e.size(), (long double)nv);
    if (nv > cfg.budget.max_vertices || e.size() > cfg.budget.max_points || maps > cfg.budget.max_maps) {
      cell.status = "skipped: histogram guard";
      return;
    }
    ClassHistogram h = nu_histogram(e, cfg.structure);
    if (cfg.nonzero_only) {
      for (auto it = h.counts.begin(); it != h.counts.end();) {
        it = ClassHistogram::has_zero(it->first) ? h.counts.erase(it) : std::next(it);
      }
    }
    cell.delta = h.support_size();
    cell.cs_bound = cauchy_schwarz_lower_bound(h);
    cell.proportion = Rational(int128(cell.delta), checked_pow(int128(cell.q), unsigned(rep.c)));
    cell.pass = cell.proportion.to_double() >= cfg.c0;
  });
  std::map<std::pair<int, Rational>, std::vector<double>> groups;
  for (const auto& x : rep.cells) {
    if (x.status == "ok") groups[{x.q, x.s}].push_back(x.proportion.to_double());
  }
  for (auto& [k, v] : groups) {
    std::sort(v.begin(), v.end());
    std::size_t m = v.size();
    rep.medians[k] = m % 2 ? v[m / 2] : (v[m / 2 - 1] + v[m / 2]) / 2;
  }
  for (int q : cfg.qs) {
    rep.transition[q] = std::nullopt;
    std::vector<Rational> grid = cfg.s_grid;
    std::sort(grid.begin(), grid.end());
    for (const auto& s : grid) {
      auto it = rep.medians.find({q, s});
      if (it != rep.medians.end() && it->second >= cfg.c0) {
        rep.transition[q] = s;
        break;
      }
    }
  }
  return rep;
}

// ---- bound reports ----

inline const std::vector<std::string>& bound_lemmas() {
  static const std::vector<std::string> ids = {"lambda-moment-d",  "lambda-variance-d",  "lambda-moment-2d",
                                               "lambda-variance-2d", "lambda-gamma-2d",   "lambda-gamma-d",
                                               "gamma-variance-2d",  "gamma-variance-d"};
  return ids;
}

struct BoundInstance {
  std::string label;  // "full" or "dense"
  FieldParams params{3, 2};
  std::vector<std::uint32_t> points;
  int n = 1;        // power of lambda
  WeakTree tree;    // for the Gamma lemmas
  ClassKey key;

  std::uint64_t hash() const {
    std::string s = label + ":" + std::to_string(params.q()) + ":" + std::to_string(params.d()) + ":" +
                    std::to_string(n) + ":" + std::to_string(tree.k) + ":";
    for (auto [a, b] : tree.edges) s += std::to_string(a) + "-" + std::to_string(b) + ",";
    for (auto t : key) s += std::to_string(t) + ",";
    for (auto x : points) s += std::to_string(x) + ",";
    return fnv1a(s);
  }
};

struct BoundRow {
  std::string lemma;
  int q = 0;
  int d = 0;
  std::string series;  // instance family used for the q-slope
  std::uint64_t hash = 0;
  Rational lhs;
  double rhs = 0;
  double ratio = 0;
  std::string skip;  // empty when computed
};

struct BoundReport {
  std::vector<BoundRow> rows;
  std::map<std::string, std::optional<double>> slopes;  // per lemma/series; nullopt = flat or too few q

  double max_ratio() const {
    double m = 0;
    for (const auto& r : rows) {
      if (r.skip.empty()) m = std::max(m, r.ratio);
    }
    return m;
  }
  double max_slope() const {
    double m = 0;
    for (const auto& [k, s] : slopes) {
      if (s) m = std::max(m, *s);
    }
    return m;
  }
  bool pass(double c = 64, double slope = 0.3) const { return max_ratio() <= c && max_slope() <= slope; }

  void write_csv(std::ostream& os) const {
    os << "lemma,q,d,instance,lhs,rhs,ratio,skip\n";
    for (const auto& r : rows) {
      std::ostringstream h;
      h << std::hex << std::setw(16) << std::setfill('0') << r.hash;
      os << r.lemma << "," << r.q << "," << r.d << "," << h.str() << ",";
      if (r.skip.empty()) {
        os << r.lhs.str() << "," << std::setprecision(9) << r.rhs << "," << fixed(r.ratio) << ",\n";
      } else {
        os << ",,," << r.skip << "\n";
      }
    }
    for (const auto& [k, s] : slopes) os << "# slope " << k << " = " << (s ? fixed(*s) : "flat") << "\n";
  }
};

namespace detail {

inline bool lemma_is_plane(const std::string& id) { return id.size() > 3 && id.substr(id.size() - 3) == "-2d"; }

inline bool lemma_uses_gamma(const std::string& id) { return id.find("gamma") != std::string::npos; }

inline double qpow(int q, double e) { return std::pow(double(q), e); }

inline BoundRow evaluate_bound(const std::string& lemma, const BoundInstance& inst, GeometryCache& cache) {
  const FieldParams& p = inst.params;
  const int q = int(p.q()), d = p.d(), n = inst.n;
  BoundRow row{lemma, q, d, "", inst.hash(), Rational(0), 0, 0, ""};
  row.series = lemma + "/" + inst.label + "/d" + std::to_string(d) + "/n" + std::to_string(n);
  if (lemma_uses_gamma(lemma)) row.series += "/l" + std::to_string(inst.tree.ell());
  const bool plane = lemma_is_plane(lemma);
  if (plane && d != 2) {
    row.skip = "lemma is planar";
    return row;
  }
  if (plane && q % 4 != 3) {
    row.skip = "needs q = 3 mod 4";
    return row;
  }
  const int k = inst.tree.k;
  const double ell = double(inst.tree.ell());
  if (lemma == "lambda-gamma-d" || lemma == "gamma-variance-d") {
    if (!(2 * k < d + 1)) {
      row.skip = "needs k < (d+1)/2";
      return row;
    }
  }
  if (plane && lemma_uses_gamma(lemma) && k != 1) {
    row.skip = "planar lemma takes 1-weak trees";
    return row;
  }
  const Geometry& geo = cache.get(p);
  PointSet e = PointSet::from_indices(p, inst.points);
  const double size = double(e.size());
  const std::size_t g = geo.group().size();
  const std::uint32_t qd = p.size();
  const int128 e2 = int128(e.size()) * int128(e.size());

  int128 lhs = 0;
  Rational exact(0);
  if (lemma == "lambda-moment-d" || lemma == "lambda-moment-2d") {
    for (std::size_t t = 0; t < g; ++t) {
      auto lam = lambda(geo, e, t);
      for (std::uint32_t w = 0; w < qd; ++w) lhs = checked_add(lhs, checked_pow(int128(lam[w]), unsigned(n)));
    }
    exact = Rational(lhs);
    row.rhs = lemma == "lambda-moment-d"
                  ? std::pow(size, 2.0 * n) * qpow(q, -double(d) * n + double(binom(d + 1, 2)))
                  : std::pow(size, 2.0 * n) / qpow(q, 2.0 * n - 3);
  } else if (lemma == "lambda-variance-d" || lemma == "lambda-variance-2d") {
    // sum (lambda - |E|^2/q^d)^2 = sum lambda^2 - |E|^4/q^d per theta
    for (std::size_t t = 0; t < g; ++t) {
      auto lam = lambda(geo, e, t);
      for (std::uint32_t w = 0; w < qd; ++w) lhs = checked_add(lhs, checked_mul(int128(lam[w]), int128(lam[w])));
    }
    exact = Rational(lhs) - Rational(checked_mul(int128(g), checked_mul(e2, e2)), int128(qd));
    row.rhs = lemma == "lambda-variance-d" ? qpow(q, double(binom(d, 2)) + 1) * size * size
                                           : std::pow(size, 2.5) * q;
  } else {
    Metric m(p);
    CountGrid f = f_tree(m, e, inst.tree, inst.key);
    if (lemma == "lambda-gamma-2d" || lemma == "lambda-gamma-d") {
      for (std::size_t t = 0; t < g; ++t) {
        auto lam = lambda(geo, e, t);
        auto gam = gamma_of(geo, f, t);
        for (std::uint32_t w = 0; w < qd; ++w) {
          if (lam[w] && gam[w]) {
            lhs = checked_add(lhs, checked_mul(checked_pow(int128(lam[w]), unsigned(n)), int128(gam[w])));
          }
        }
      }
      exact = Rational(lhs);
      if (lemma == "lambda-gamma-2d") {
        row.rhs = std::pow(size, 2 * ell + 2.0 * n + 2) / qpow(q, 2 * ell + 2.0 * n - 1);
      } else {
        double kk = double(binom(k + 1, 2));
        row.rhs = std::pow(size, 2 * ell * k + 2.0 * n + 2) /
                  qpow(q, 2 * ell * kk + double(d) * (n + 1) - double(binom(d + 1, 2)));
      }
    } else {
      // sum_theta (sum Gamma^2 - (sum Gamma)^2 / q^d)
      Rational total(0);
      for (std::size_t t = 0; t < g; ++t) {
        auto gam = gamma_of(geo, f, t);
        int128 sq = 0, s1 = 0;
        for (std::uint32_t w = 0; w < qd; ++w) {
          sq = checked_add(sq, checked_mul(int128(gam[w]), int128(gam[w])));
          s1 = checked_add(s1, int128(gam[w]));
        }
        total = total + Rational(sq) - Rational(checked_mul(s1, s1), int128(qd));
      }
      exact = total;
      if (lemma == "gamma-variance-2d") {
        row.rhs = std::pow(size, 4 * ell + 2.5) / qpow(q, 4 * ell - 1);
      } else {
        double kk = double(binom(k + 1, 2));
        row.rhs = std::pow(size, 4 * ell * k + 2) * qpow(q, double(d) + double(binom(d - 1, 2)) - 4 * ell * kk);
      }
    }
  }
  row.lhs = exact;
  row.ratio = row.rhs > 0 ? exact.to_double() / row.rhs : 0.0;
  return row;
}

}  // namespace detail

// Instances for one lemma: E = full space (and optionally dense random E)
// across q, with lambda powers n and tree sizes ell.
struct BoundCorpusSpec {
  std::vector<int> d_values{2, 3};
  std::vector<int> q_plane{3, 5, 7, 11};
  std::vector<int> q_space{3, 5, 7};
  std::vector<int> powers{1, 2, 3};
  std::vector<int> tree_sizes{1, 2};
  bool dense = false;
  std::uint64_t seed = 1;
};

inline std::vector<BoundInstance> bound_corpus(const std::string& lemma, const BoundCorpusSpec& spec) {
  std::vector<BoundInstance> out;
  const bool gamma_lemma = detail::lemma_uses_gamma(lemma);
  const bool variance = lemma.find("variance") != std::string::npos;
  for (int d : spec.d_values) {
    if (detail::lemma_is_plane(lemma) && d != 2) continue;
    const auto& qs = d == 2 ? spec.q_plane : spec.q_space;
    for (int q : qs) {
      FieldParams p(std::uint32_t(q), d);
      std::vector<std::string> labels{"full"};
      if (spec.dense) labels.push_back("dense");
      for (const auto& label : labels) {
        std::vector<std::uint32_t> pts;
        if (label == "full") {
          for (std::uint32_t i = 0; i < p.size(); ++i) pts.push_back(i);
        } else {
          pts = sample_dense(p, 1, 2, mix_seed({spec.seed, std::uint64_t(q), std::uint64_t(d)})).indices();
        }
        std::vector<int> powers = variance && !gamma_lemma ? std::vector<int>{2} : spec.powers;
        if (lemma.find("gamma-variance") == 0) powers = {2};
        std::vector<int> sizes = gamma_lemma ? spec.tree_sizes : std::vector<int>{0};
        for (int n : powers) {
          for (int ell : sizes) {
            BoundInstance inst;
            inst.label = label;
            inst.params = p;
            inst.points = pts;
            inst.n = n;
            if (ell > 0) {
              inst.tree = path_tree(ell, 1);
              // t = -1: -t is a square for every q, so sphere sizes keep one sign of correction
              inst.key.assign(inst.tree.key_length(), Residue(q - 1));
            }
            out.push_back(std::move(inst));
          }
        }
      }
    }
  }
  return out;
}

inline BoundReport bound_report(const std::string& lemma, const std::vector<BoundInstance>& corpus,
                                GeometryCache& cache, unsigned threads = 1) {
  const auto& ids = bound_lemmas();
  if (std::find(ids.begin(), ids.end(), lemma) == ids.end()) throw ParameterError("unknown lemma id '" + lemma + "'");
  BoundReport rep;
  rep.rows.resize(corpus.size());
  parallel_for(corpus.size(), threads, [&](std::size_t i) { rep.rows[i] = detail::evaluate_bound(lemma, corpus[i], cache); });
  std::map<std::string, std::map<int, double>> series;
  std::map<std::string, bool> flat;
  for (const auto& r : rep.rows) {
    if (!r.skip.empty()) continue;
    if (r.ratio <= 0) {
      flat[r.series] = true;
      continue;
    }
    series[r.series][r.q] = r.ratio;
  }
  for (const auto& [k, v] : flat) rep.slopes[k] = std::nullopt;
  for (const auto& [k, v] : series) {
    if (flat.count(k) || v.size() < 3) {
      rep.slopes[k] = std::nullopt;
      continue;
    }
    rep.slopes[k] = exponent_fit(v).slope;
  }
  return rep;
}

}  // namespace simplexlab
