#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <ostream>
#include <vector>

#include "simplexlab/errors.hpp"
#include "simplexlab/field.hpp"
#include "simplexlab/ortho.hpp"

namespace simplexlab {

// A subset E of F_q^d, kept both as a sorted index list and a membership map.
class PointSet {
 public:
  explicit PointSet(FieldParams p) : params_(p), pos_(p.size(), -1) {}

  static PointSet from_indices(FieldParams p, std::vector<std::uint32_t> idx) {
    PointSet e(p);
    std::sort(idx.begin(), idx.end());
    idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
    for (auto i : idx) {
      if (i >= p.size()) throw ParameterError("point index out of range");
    }
    e.idx_ = std::move(idx);
    for (std::size_t i = 0; i < e.idx_.size(); ++i) e.pos_[e.idx_[i]] = std::int32_t(i);
    return e;
  }

  static PointSet from_points(FieldParams p, const std::vector<Vector>& pts) {
    std::vector<std::uint32_t> idx;
    for (const auto& x : pts) {
      p.check(x);
      idx.push_back(p.index(x));
    }
    std::size_t before = idx.size();
    auto e = from_indices(p, idx);
    if (e.size() != before) throw ParameterError("point set contains duplicates");
    return e;
  }

  static PointSet full(FieldParams p) {
    std::vector<std::uint32_t> idx(p.size());
    for (std::uint32_t i = 0; i < p.size(); ++i) idx[i] = i;
    return from_indices(p, std::move(idx));
  }

  const FieldParams& params() const { return params_; }
  std::size_t size() const { return idx_.size(); }
  bool empty() const { return idx_.empty(); }
  const std::vector<std::uint32_t>& indices() const { return idx_; }
  std::uint32_t operator[](std::size_t i) const { return idx_[i]; }
  bool contains(std::uint32_t i) const { return pos_[i] >= 0; }
  bool contains(const Vector& x) const { return contains(params_.index(x)); }
  // Position of a member in indices(), or -1.
  std::int32_t position(std::uint32_t i) const { return pos_[i]; }

  std::vector<Vector> points() const {
    std::vector<Vector> out;
    for (auto i : idx_) out.push_back(params_.point(i));
    return out;
  }

 private:
  FieldParams params_;
  std::vector<std::uint32_t> idx_;
  std::vector<std::int32_t> pos_;
};

// Nonnegative integer counts on every point of F_q^d.
struct CountGrid {
  FieldParams params;
  std::vector<std::uint64_t> counts;

  explicit CountGrid(FieldParams p) : params(p), counts(p.size(), 0) {}

  std::uint64_t& operator[](std::uint32_t i) { return counts[i]; }
  std::uint64_t operator[](std::uint32_t i) const { return counts[i]; }
  std::uint64_t at(const Vector& x) const { return counts[params.index(x)]; }

  std::uint64_t l1() const {
    std::uint64_t s = 0;
    for (auto c : counts) s += c;
    return s;
  }
  std::uint64_t linf() const {
    std::uint64_t m = 0;
    for (auto c : counts) m = std::max(m, c);
    return m;
  }
  friend bool operator==(const CountGrid& a, const CountGrid& b) { return a.counts == b.counts; }

  void write_csv(std::ostream& os) const {
    for (int i = 0; i < params.d(); ++i) os << "x" << (i + 1) << ",";
    os << "count\n";
    for (std::uint32_t i = 0; i < params.size(); ++i) {
      Vector x = params.point(i);
      for (int c = 0; c < params.d(); ++c) os << x[c] << ",";
      os << counts[i] << "\n";
    }
  }
};

// Counts indexed by an ordered pair of points.
struct PairGrid {
  FieldParams params;
  std::vector<std::uint64_t> counts;

  explicit PairGrid(FieldParams p) : params(p) {
    std::uint64_t n = std::uint64_t(p.size()) * p.size();
    if (n > (std::uint64_t(1) << 26)) throw ResourceError("pair grid exceeds 2^26 cells");
    counts.assign(n, 0);
  }
  std::uint64_t& at(std::uint32_t a, std::uint32_t b) { return counts[std::uint64_t(a) * params.size() + b]; }
  std::uint64_t at(std::uint32_t a, std::uint32_t b) const {
    return counts[std::uint64_t(a) * params.size() + b];
  }
  std::uint64_t l1() const {
    std::uint64_t s = 0;
    for (auto c : counts) s += c;
    return s;
  }
};

// Group, action table, stabilizer oracle and difference tables for one
// FieldParams; built once and shared read-only.
class Geometry {
 public:
  explicit Geometry(FieldParams p, std::optional<std::filesystem::path> cache_dir = std::nullopt)
      : params_(p), group_(cached_group(p, cache_dir)), action_(group_), stabs_(group_, action_), norms_(norm_table(p)) {
    std::uint64_t n = p.size();
    if (n * n <= (std::uint64_t(1) << 22)) {
      sub_.resize(n * n);
      for (std::uint32_t a = 0; a < n; ++a) {
        for (std::uint32_t b = 0; b < n; ++b) sub_[std::uint64_t(a) * n + b] = p.sub_index(a, b);
      }
    }
  }
  Geometry(const Geometry&) = delete;
  Geometry& operator=(const Geometry&) = delete;

  const FieldParams& params() const { return params_; }
  const GroupTable& group() const { return group_; }
  const ActionTable& action() const { return action_; }
  const StabilizerOracle& stabilizers() const { return stabs_; }

  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const {
    if (!sub_.empty()) return sub_[std::uint64_t(a) * params_.size() + b];
    return params_.sub_index(a, b);
  }
  Residue dist(std::uint32_t a, std::uint32_t b) const { return norms_[sub(a, b)]; }
  // theta applied to a point index.
  std::uint32_t rotate(std::size_t theta, std::uint32_t x) const { return action_(theta, x); }

 private:
  FieldParams params_;
  GroupTable group_;
  ActionTable action_;
  StabilizerOracle stabs_;
  std::vector<Residue> norms_;
  std::vector<std::uint32_t> sub_;
};

// Distances without a group: enough for the embedding oracles.
class Metric {
 public:
  explicit Metric(FieldParams p) : params_(p), norms_(norm_table(p)) {
    std::uint64_t n = p.size();
    if (n * n <= (std::uint64_t(1) << 22)) {
      sub_.resize(n * n);
      for (std::uint32_t a = 0; a < n; ++a) {
        for (std::uint32_t b = 0; b < n; ++b) sub_[std::uint64_t(a) * n + b] = p.sub_index(a, b);
      }
    }
  }
  const FieldParams& params() const { return params_; }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const {
    if (!sub_.empty()) return sub_[std::uint64_t(a) * params_.size() + b];
    return params_.sub_index(a, b);
  }
  Residue dist(std::uint32_t a, std::uint32_t b) const { return norms_[sub(a, b)]; }

 private:
  FieldParams params_;
  std::vector<Residue> norms_;
  std::vector<std::uint32_t> sub_;
};

}  // namespace simplexlab
