#pragma once

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "simplexlab/counting.hpp"
#include "simplexlab/cycles.hpp"
#include "simplexlab/experiments.hpp"
#include "simplexlab/io.hpp"
#include "simplexlab/oracle.hpp"
#include "simplexlab/rewrite.hpp"
#include "simplexlab/threshold.hpp"
#include "simplexlab/verify.hpp"

namespace simplexlab::cli {

inline constexpr int kExitViolation = 1;
inline constexpr int kExitResource = 2;
inline constexpr int kExitUsage = 64;

inline const char* kDefaultCacheDir = ".simplexlab-cache";

// {"points": [[x1, ..., xd], ...]}; coordinates are reduced mod q.
inline PointSet load_point_set(const std::string& path, const FieldParams& p) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open " + path);
  std::vector<Vector> pts;
  try {
    json j;
    in >> j;
    for (const auto& row : j.at("points")) {
      auto coords = row.get<std::vector<std::int64_t>>();
      if (int(coords.size()) != p.d()) throw ParameterError("point of dimension " + std::to_string(coords.size()));
      Vector v(p.d());
      for (int i = 0; i < p.d(); ++i) v[i] = p.reduce(coords[i]);
      pts.push_back(v);
    }
  } catch (const json::exception& e) {
    throw ParameterError("malformed point set " + path + ": " + e.what());
  }
  return PointSet::from_points(p, pts);
}

inline json step_json(const RewriteStep& s) {
  return {{"operation", op_name(s.operation)},
          {"simplices", s.simplices},
          {"vertices", s.vertices},
          {"amounts", s.amounts},
          {"first", to_json(s.first)},
          {"second", to_json(s.second)}};
}

inline std::string join(const std::vector<std::string>& v, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i];
  return out;
}

struct Options {
  std::string structure;
  int k = 1;
  bool all_k = false;
  int d = 2;
  int q = 3;
  std::string set;
  bool full = false;
  std::string mode = "all";
  std::string config;
  std::string suite = "all";
  std::uint64_t seed = 1;
  unsigned threads = 1;
  std::string cache_dir;
  bool json = false;
};

inline int cmd_validate(const Options& o, std::ostream& out) {
  auto f = load_structure(o.structure);
  auto r = validate(f.structure);
  if (o.json) {
    out << json{{"ok", r.ok}, {"axiom", r.axiom}, {"message", r.message}, {"witnesses", r.witnesses}}.dump(2) << "\n";
  } else if (r.ok) {
    out << "ok: " << kind_name(f.structure.kind) << " with " << f.structure.simplices.size() << " simplices\n";
  } else {
    out << "violation: axiom " << r.axiom << ": " << r.message;
    if (!r.witnesses.empty()) out << " [" << join(r.witnesses, ", ") << "]";
    out << "\n";
  }
  return r.ok ? 0 : kExitViolation;
}

inline int cmd_reduce(const Options& o, std::ostream& out) {
  auto f = load_structure(o.structure);
  require_valid(f.structure);
  json j;
  j["k"] = o.k;
  j["trace"] = json::array();
  j["terminals"] = json::array();
  if (f.structure.kind == StructureKind::cycle) {
    std::vector<RewriteStep> trace;
    for (const auto& c : cycle_normal_forms(f.structure, &trace)) j["terminals"].push_back(to_json(c));
    for (const auto& s : trace) j["trace"].push_back(step_json(s));
  } else {
    auto res = canonicalize(f.rooted(), o.k);
    for (const auto& s : res.trace) j["trace"].push_back(step_json(s));
    for (const auto& t : res.terminals) {
      json tj = to_json(t);
      tj["n_k"] = n_k(t.structure, o.k);
      j["terminals"].push_back(tj);
    }
  }
  out << j.dump(2) << "\n";
  return 0;
}

inline int cmd_predict(const Options& o, std::ostream& out) {
  auto f = load_structure(o.structure);
  std::vector<ThresholdPrediction> preds;
  if (o.all_k) {
    preds = predict_all_k(f.structure, o.d).per_k;
  } else {
    preds.push_back(predict_threshold(f.structure, o.d, o.k));
  }
  if (o.json) {
    json j = json::array();
    for (const auto& p : preds) {
      json rows = json::array();
      for (const auto& r : p.rows) rows.push_back({{"route", r.route}, {"s", r.s.str()}, {"note", r.note}});
      j.push_back({{"d", p.d}, {"k", p.k}, {"n_k", p.n_k}, {"rows", rows}, {"minimum", p.minimum.str()}});
    }
    out << j.dump(2) << "\n";
    return 0;
  }
  out << "k,route,s,note\n";
  for (const auto& p : preds) {
    for (const auto& r : p.rows) out << p.k << "," << r.route << "," << r.s.str() << ",\"" << r.note << "\"\n";
  }
  return 0;
}

inline int cmd_count(const Options& o, std::ostream& out) {
  auto f = load_structure(o.structure);
  require_valid(f.structure);
  FieldParams p(std::uint32_t(o.q), o.d);
  if (o.full == !o.set.empty()) throw ParameterError("count needs exactly one of --set and --full");
  PointSet e = o.full ? PointSet::full(p) : load_point_set(o.set, p);
  EmbeddingMode mode = EmbeddingMode::all;
  if (o.mode == "nondegenerate") {
    mode = EmbeddingMode::nondegenerate;
  } else if (o.mode != "all") {
    throw ParameterError("unknown mode '" + o.mode + "'");
  }
  std::optional<std::filesystem::path> cache;
  if (!o.cache_dir.empty()) cache = o.cache_dir;

  ClassHistogram h = nu_histogram(e, f.structure, mode);
  std::vector<std::pair<std::string, std::string>> summary;
  summary.push_back({"points", std::to_string(e.size())});
  summary.push_back({"mode", mode_name(mode)});
  summary.push_back({"delta", std::to_string(h.support_size())});
  summary.push_back({"delta_nonzero", std::to_string(h.nonzero_support_size())});
  summary.push_back({"cs_bound", cauchy_schwarz_lower_bound(h).str()});
  const int128 sq = h.sum_squares();
  summary.push_back({"sum_nu_squared", to_string(sq)});
  if (f.structure.kind == StructureKind::tree) {
    Geometry geo(p, cache);
    Rational r = r_rooted(geo, e, f.rooted(), mode);
    summary.push_back({"r_rooted", r.str()});
    summary.push_back({"ratio", sq ? fixed((r / Rational(sq)).to_double()) : std::string("nan")});
  } else {
    if (mode != EmbeddingMode::all) throw ParameterError("cycle sums count all embeddings");
    Geometry geo(p, cache);
    const auto& sx = f.structure.simplices;
    int128 trace = cycle_congruent_pair_count(e, f.structure);
    summary.push_back({"cycle_oracle", to_string(trace)});
    Rational adj = cycle_sums(geo, e, f.structure, sx[0].id, sx[1].id, Adjacency::adjacent);
    summary.push_back({"d_adjacent", adj.str()});
    summary.push_back({"ratio_adjacent", trace ? fixed((adj / Rational(trace)).to_double()) : std::string("nan")});
    if (sx.size() >= 4) {
      Rational non = cycle_sums(geo, e, f.structure, sx[0].id, sx[2].id, Adjacency::nonadjacent);
      summary.push_back({"d_nonadjacent", non.str()});
      summary.push_back({"ratio_nonadjacent", trace ? fixed((non / Rational(trace)).to_double()) : std::string("nan")});
    }
  }
  if (o.json) {
    json j;
    j["edges"] = h.edges;
    j["classes"] = json::array();
    for (const auto& [k, c] : h.counts) j["classes"].push_back({{"key", k}, {"count", c}});
    for (const auto& [k, v] : summary) j["summary"][k] = v;
    out << j.dump(2) << "\n";
    return 0;
  }
  h.write_csv(out);
  out << "\nmetric,value\n";
  for (const auto& [k, v] : summary) out << k << "," << v << "\n";
  return 0;
}

inline int cmd_sweep(const Options& o, std::ostream& out) {
  std::ifstream in(o.config);
  if (!in) throw ParameterError("cannot open " + o.config);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ParameterError("cannot parse " + o.config + ": " + e.what());
  }
  auto cfg = sweep_config_from_json(j, std::filesystem::path(o.config).parent_path().string());
  auto rep = threshold_sweep(cfg, o.threads);
  if (o.json) {
    out << rep.to_json_value().dump(2) << "\n";
  } else {
    rep.write_csv(out);
  }
  return 0;
}

inline int cmd_verify(const Options& o, std::ostream& out) {
  VerifyOptions vo;
  vo.seed = o.seed;
  vo.threads = o.threads;
  if (!o.cache_dir.empty()) vo.cache_dir = o.cache_dir;
  auto results = run_verify(o.suite, vo);
  bool ok = true;
  if (o.json) {
    json j = json::array();
    for (const auto& r : results) j.push_back({{"suite", r.suite}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
    out << j.dump(2) << "\n";
  } else {
    out << "suite,check,result,detail\n";
    for (const auto& r : results) {
      out << r.suite << "," << r.name << "," << (r.pass ? "pass" : "FAIL") << ",\"" << r.detail << "\"\n";
    }
  }
  for (const auto& r : results) ok = ok && r.pass;
  return ok ? 0 : kExitViolation;
}

inline int cmd_group(const Options& o, std::ostream& out) {
  FieldParams p(std::uint32_t(o.q), o.d);
  std::filesystem::path dir = kDefaultCacheDir;
  if (!o.cache_dir.empty()) {
    dir = o.cache_dir;
  } else if (const char* env = std::getenv("SIMPLEXLAB_CACHE_DIR"); env && *env) {
    dir = env;
  }
  GroupTable g = cached_group(p, dir);
  auto path = group_cache_path(dir, p);
  if (o.json) {
    out << json{{"q", o.q}, {"d", o.d}, {"size", g.size()}, {"cache", path.string()}}.dump(2) << "\n";
  } else {
    out << "q,d,size,cache\n" << o.q << "," << o.d << "," << g.size() << "," << path.string() << "\n";
  }
  return 0;
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Congruence classes of simplex structures over finite fields"};
  app.require_subcommand(1);
  Options o;

  auto* validate_cmd = app.add_subcommand("validate", "Check a structure file against the axioms");
  validate_cmd->add_option("structure", o.structure, "Structure JSON")->required();

  auto* reduce_cmd = app.add_subcommand("reduce", "Canonicalize by rewriting; prints trace and terminals");
  reduce_cmd->add_option("structure", o.structure, "Structure JSON")->required();
  reduce_cmd->add_option("--k", o.k, "Simplex size threshold")->check(CLI::PositiveNumber);

  auto* predict_cmd = app.add_subcommand("predict", "Threshold table for a tree");
  predict_cmd->add_option("structure", o.structure, "Structure JSON")->required();
  predict_cmd->add_option("--d", o.d, "Dimension")->required();
  auto* k_opt = predict_cmd->add_option("--k", o.k, "Simplex size threshold");
  predict_cmd->add_flag("--all-k", o.all_k, "Every admissible k")->excludes(k_opt);

  auto* count_cmd = app.add_subcommand("count", "Class histogram and pair sums");
  count_cmd->add_option("structure", o.structure, "Structure JSON")->required();
  count_cmd->add_option("--q", o.q, "Field size")->required();
  count_cmd->add_option("--d", o.d, "Dimension")->required();
  count_cmd->add_option("--set", o.set, "Point set JSON");
  count_cmd->add_flag("--full", o.full, "Use the whole space");
  count_cmd->add_option("--mode", o.mode, "all or nondegenerate");

  auto* sweep_cmd = app.add_subcommand("sweep", "Positive-proportion sweep");
  sweep_cmd->add_option("--config", o.config, "Sweep JSON")->required();

  auto* verify_cmd = app.add_subcommand("verify", "Invariant suites");
  verify_cmd->add_option("--suite", o.suite, "all, ortho, fourier, bounds or identity");
  verify_cmd->add_option("--seed", o.seed, "Seed");

  auto* group_cmd = app.add_subcommand("group", "Enumerate and cache the orthogonal group");
  group_cmd->add_option("--q", o.q, "Field size")->required();
  group_cmd->add_option("--d", o.d, "Dimension")->required();

  for (auto* c : {validate_cmd, reduce_cmd, predict_cmd, count_cmd, sweep_cmd, verify_cmd, group_cmd}) {
    c->add_flag("--json", o.json, "JSON output");
  }
  for (auto* c : {sweep_cmd, verify_cmd}) c->add_option("--threads", o.threads, "Worker threads");
  for (auto* c : {count_cmd, verify_cmd, group_cmd}) {
    c->add_option("--cache-dir", o.cache_dir, "Group table cache directory")->envname("SIMPLEXLAB_CACHE_DIR");
  }

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::Success&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    if (const auto* sub = app.get_subcommands().empty() ? nullptr : app.get_subcommands().front()) {
      err << sub->help();
    }
    return kExitUsage;
  }

  try {
    if (validate_cmd->parsed()) return cmd_validate(o, out);
    if (reduce_cmd->parsed()) return cmd_reduce(o, out);
    if (predict_cmd->parsed()) return cmd_predict(o, out);
    if (count_cmd->parsed()) return cmd_count(o, out);
    if (sweep_cmd->parsed()) return cmd_sweep(o, out);
    if (verify_cmd->parsed()) return cmd_verify(o, out);
    if (group_cmd->parsed()) return cmd_group(o, out);
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << "\n";
    return kExitViolation;
  } catch (const ResourceError& e) {
    err << "resource guard: " << e.what() << "\n";
    return kExitResource;
  }
  return kExitUsage;
}

}  // namespace simplexlab::cli
