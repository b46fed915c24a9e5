#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "simplexlab/errors.hpp"
#include "simplexlab/field.hpp"

namespace simplexlab {

// A d x d matrix over F_q with M^T M = I, stored row-major.
class OrthogonalElement {
 public:
  OrthogonalElement() = default;
  OrthogonalElement(int d, std::vector<Residue> m) : d_(d), m_(std::move(m)) {
    if (int(m_.size()) != d * d) throw ParameterError("matrix entry count does not match d");
  }

  static OrthogonalElement identity(int d) {
    std::vector<Residue> m(d * d, 0);
    for (int i = 0; i < d; ++i) m[i * d + i] = 1;
    return OrthogonalElement(d, std::move(m));
  }

  int dim() const { return d_; }
  Residue at(int r, int c) const { return m_[r * d_ + c]; }
  const std::vector<Residue>& entries() const { return m_; }

  Vector apply(const FieldParams& p, const Vector& x) const {
    Vector y(d_);
    for (int r = 0; r < d_; ++r) {
      std::uint64_t s = 0;
      for (int c = 0; c < d_; ++c) s += std::uint64_t(m_[r * d_ + c]) * x[c];
      y[r] = Residue(s % p.q());
    }
    return y;
  }

  OrthogonalElement compose(const FieldParams& p, const OrthogonalElement& o) const {
    std::vector<Residue> m(d_ * d_);
    for (int r = 0; r < d_; ++r) {
      for (int c = 0; c < d_; ++c) {
        std::uint64_t s = 0;
        for (int k = 0; k < d_; ++k) s += std::uint64_t(m_[r * d_ + k]) * o.m_[k * d_ + c];
        m[r * d_ + c] = Residue(s % p.q());
      }
    }
    return OrthogonalElement(d_, std::move(m));
  }

  OrthogonalElement transpose() const {
    std::vector<Residue> m(d_ * d_);
    for (int r = 0; r < d_; ++r) {
      for (int c = 0; c < d_; ++c) m[c * d_ + r] = m_[r * d_ + c];
    }
    return OrthogonalElement(d_, std::move(m));
  }

  OrthogonalElement inverse() const { return transpose(); }

  bool is_orthogonal(const FieldParams& p) const {
    for (int i = 0; i < d_; ++i) {
      for (int j = 0; j < d_; ++j) {
        std::uint64_t s = 0;
        for (int k = 0; k < d_; ++k) s += std::uint64_t(m_[k * d_ + i]) * m_[k * d_ + j];
        if (s % p.q() != (i == j ? 1u : 0u)) return false;
      }
    }
    return true;
  }

  // Row-major residues, each little-endian in residue_width(q) bytes.
  std::string encode(const FieldParams& p) const {
    int w = residue_width(p.q());
    std::string s;
    s.reserve(m_.size() * w);
    for (Residue r : m_) {
      for (int b = 0; b < w; ++b) s.push_back(char((r >> (8 * b)) & 0xff));
    }
    return s;
  }

  static int residue_width(std::uint32_t q) {
    if (q <= 0x100) return 1;
    if (q <= 0x10000) return 2;
    return 3;
  }

  friend bool operator==(const OrthogonalElement&, const OrthogonalElement&) = default;
  friend auto operator<=>(const OrthogonalElement&, const OrthogonalElement&) = default;

 private:
  int d_ = 0;
  std::vector<Residue> m_;
};

struct RigidMotion {
  OrthogonalElement rotation;
  Vector translation;

  Vector apply(const FieldParams& p, const Vector& x) const {
    return p.add(rotation.apply(p, x), translation);
  }

  // (this after o)(x) = rotation (o.rotation x + o.translation) + translation
  RigidMotion compose(const FieldParams& p, const RigidMotion& o) const {
    return {rotation.compose(p, o.rotation), p.add(rotation.apply(p, o.translation), translation)};
  }
};

class GroupTable {
 public:
  GroupTable(FieldParams params, std::vector<OrthogonalElement> elements)
      : params_(params), elements_(std::move(elements)) {
    std::sort(elements_.begin(), elements_.end(), [&](const auto& a, const auto& b) {
      return a.encode(params_) < b.encode(params_);
    });
    elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
    for (std::size_t i = 0; i < elements_.size(); ++i) lookup_[elements_[i].encode(params_)] = i;
    auto id = find(OrthogonalElement::identity(params_.d()));
    if (!id) throw ParameterError("group table lacks the identity");
    identity_ = *id;
    inverse_.resize(elements_.size());
    for (std::size_t i = 0; i < elements_.size(); ++i) {
      auto j = find(elements_[i].transpose());
      if (!j) throw ParameterError("group table not closed under inverse");
      inverse_[i] = *j;
    }
  }

  const FieldParams& params() const { return params_; }
  std::size_t size() const { return elements_.size(); }
  const OrthogonalElement& operator[](std::size_t i) const { return elements_[i]; }
  const std::vector<OrthogonalElement>& elements() const { return elements_; }
  std::size_t identity_index() const { return identity_; }
  std::size_t inverse_index(std::size_t i) const { return inverse_[i]; }

  std::optional<std::size_t> find(const OrthogonalElement& m) const {
    auto it = lookup_.find(m.encode(params_));
    if (it == lookup_.end()) return std::nullopt;
    return it->second;
  }

  bool is_closed() const {
    for (const auto& a : elements_) {
      for (const auto& b : elements_) {
        if (!find(a.compose(params_, b))) return false;
      }
    }
    return true;
  }

 private:
  FieldParams params_;
  std::vector<OrthogonalElement> elements_;
  std::map<std::string, std::size_t> lookup_;
  std::size_t identity_ = 0;
  std::vector<std::size_t> inverse_;
};

inline void check_group_guard(const FieldParams& p) {
  if (p.d() > 3 || p.q() > 31) {
    throw ResourceError("orthogonal group enumeration limited to d <= 3 and q <= 31");
  }
}

// Columns are chosen one at a time from the unit sphere, each orthogonal to
// the columns already placed.
inline GroupTable enumerate_group(const FieldParams& p) {
  check_group_guard(p);
  int d = p.d();
  std::vector<Vector> unit;
  for (std::uint32_t i = 0; i < p.size(); ++i) {
    Vector x = p.point(i);
    if (p.norm(x) == 1) unit.push_back(x);
  }
  std::vector<OrthogonalElement> out;
  std::vector<Vector> cols;
  auto extend = [&](auto&& self) -> void {
    if (int(cols.size()) == d) {
      std::vector<Residue> m(d * d);
      for (int c = 0; c < d; ++c) {
        for (int r = 0; r < d; ++r) m[r * d + c] = cols[c][r];
      }
      out.emplace_back(d, std::move(m));
      return;
    }
    for (const Vector& u : unit) {
      bool ok = true;
      for (const Vector& c : cols) {
        if (p.dot(u, c) != 0) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      cols.push_back(u);
      self(self);
      cols.pop_back();
    }
  };
  extend(extend);
  return GroupTable(p, std::move(out));
}

// Tests every one of the q^(d^2) matrices.
inline GroupTable enumerate_group_scan(const FieldParams& p) {
  int d = p.d();
  std::uint64_t total = 1;
  for (int i = 0; i < d * d; ++i) {
    total *= p.q();
    if (total > (std::uint64_t(1) << 22)) throw ResourceError("full matrix scan exceeds 2^22 candidates");
  }
  std::vector<OrthogonalElement> out;
  std::vector<Residue> m(d * d, 0);
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t c = code;
    for (int i = 0; i < d * d; ++i) {
      m[i] = Residue(c % p.q());
      c /= p.q();
    }
    OrthogonalElement e(d, m);
    if (e.is_orthogonal(p)) out.push_back(std::move(e));
  }
  return GroupTable(p, std::move(out));
}

// Cache file: "OGRP", then q, d, count as u32 little-endian, then each element
// as its canonical encoding.
inline void save_group(const GroupTable& g, const std::filesystem::path& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ParameterError("cannot write group cache " + path.string());
  auto put32 = [&](std::uint32_t v) {
    for (int b = 0; b < 4; ++b) f.put(char((v >> (8 * b)) & 0xff));
  };
  f.write("OGRP", 4);
  put32(g.params().q());
  put32(std::uint32_t(g.params().d()));
  put32(std::uint32_t(g.size()));
  for (const auto& e : g.elements()) {
    std::string s = e.encode(g.params());
    f.write(s.data(), std::streamsize(s.size()));
  }
}

inline std::optional<GroupTable> load_group(const std::filesystem::path& path, const FieldParams& p) {
  std::ifstream f(path, std::ios::binary);
  if (!f) return std::nullopt;
  char magic[4];
  if (!f.read(magic, 4) || std::string(magic, 4) != "OGRP") return std::nullopt;
  auto get32 = [&](std::uint32_t& v) {
    unsigned char b[4];
    if (!f.read(reinterpret_cast<char*>(b), 4)) return false;
    v = b[0] | (b[1] << 8) | (b[2] << 16) | (std::uint32_t(b[3]) << 24);
    return true;
  };
  std::uint32_t q, d, count;
  if (!get32(q) || !get32(d) || !get32(count)) return std::nullopt;
  if (q != p.q() || int(d) != p.d()) return std::nullopt;
  int w = OrthogonalElement::residue_width(q);
  std::vector<OrthogonalElement> els;
  std::vector<unsigned char> buf(std::size_t(d) * d * w);
  for (std::uint32_t i = 0; i < count; ++i) {
    if (!f.read(reinterpret_cast<char*>(buf.data()), std::streamsize(buf.size()))) return std::nullopt;
    std::vector<Residue> m(d * d);
    for (std::size_t k = 0; k < m.size(); ++k) {
      Residue r = 0;
      for (int b = 0; b < w; ++b) r |= Residue(buf[k * w + b]) << (8 * b);
      if (r >= q) return std::nullopt;
      m[k] = r;
    }
    OrthogonalElement e(int(d), std::move(m));
    if (!e.is_orthogonal(p)) return std::nullopt;
    els.push_back(std::move(e));
  }
  if (f.peek() != std::char_traits<char>::eof()) return std::nullopt;
  return GroupTable(p, std::move(els));
}

inline std::filesystem::path group_cache_path(const std::filesystem::path& dir, const FieldParams& p) {
  return dir / ("o_" + std::to_string(p.d()) + "_" + std::to_string(p.q()) + ".bin");
}

// Reads from and writes to the cache directory when one is given, otherwise
// from SIMPLEXLAB_CACHE_DIR when set.
inline GroupTable cached_group(const FieldParams& p, std::optional<std::filesystem::path> dir = std::nullopt) {
  if (!dir) {
    if (const char* env = std::getenv("SIMPLEXLAB_CACHE_DIR"); env && *env) dir = env;
  }
  if (dir) {
    auto path = group_cache_path(*dir, p);
    if (auto g = load_group(path, p)) return *g;
    GroupTable g = enumerate_group(p);
    std::error_code ec;
    std::filesystem::create_directories(*dir, ec);
    save_group(g, path);
    return g;
  }
  return enumerate_group(p);
}

// theta x for every group element and every point index.
class ActionTable {
 public:
  explicit ActionTable(const GroupTable& g) : n_(g.params().size()) {
    const FieldParams& p = g.params();
    std::uint64_t cells = std::uint64_t(g.size()) * n_;
    if (cells > (std::uint64_t(1) << 27)) throw ResourceError("action table exceeds 2^27 entries");
    map_.resize(cells);
    for (std::size_t t = 0; t < g.size(); ++t) {
      for (std::uint32_t x = 0; x < n_; ++x) map_[t * n_ + x] = p.index(g[t].apply(p, p.point(x)));
    }
  }

  std::uint32_t operator()(std::size_t theta, std::uint32_t x) const { return map_[theta * n_ + x]; }
  const std::uint32_t* row(std::size_t theta) const { return map_.data() + theta * n_; }

 private:
  std::uint32_t n_;
  std::vector<std::uint32_t> map_;
};

inline std::vector<Vector> pinned_differences(const FieldParams& p, const std::vector<Vector>& points) {
  std::vector<Vector> diffs;
  for (std::size_t i = 1; i < points.size(); ++i) diffs.push_back(p.sub(points[i], points[0]));
  return diffs;
}

// Counts group elements fixing every difference points[i] - points[0]; for a
// pinned simplex (points[0] = 0) that is the pointwise stabilizer.
inline std::size_t stabilizer_size(const GroupTable& g, const std::vector<Vector>& points) {
  const FieldParams& p = g.params();
  for (const auto& x : points) p.check(x);
  auto diffs = pinned_differences(p, points);
  std::size_t count = 0;
  for (const auto& t : g.elements()) {
    bool fixes = true;
    for (const auto& v : diffs) {
      if (t.apply(p, v) != v) {
        fixes = false;
        break;
      }
    }
    if (fixes) ++count;
  }
  return count;
}

// Exponent e with Stab(n) of order q^e; n = 0 (a lone pinned point) gives C(d, 2).
inline int stab_exponent(int n, int d) {
  if (n < 0 || d < 1) throw ParameterError("stab_exponent needs n >= 0 and d >= 1");
  if (n < d - 1) return int(binom(d - n, 2));
  return 0;
}

inline bool is_nondegenerate(const FieldParams& p, const std::vector<Vector>& points) {
  if (points.size() < 2) throw ParameterError("nondegeneracy needs at least two points");
  auto diffs = pinned_differences(p, points);
  int r = rank(p, diffs);
  return r == int(diffs.size()) || r == p.d();
}

// Fixed-point sets of every vector as bitsets over group elements, used for
// fast stabilizer intersections.
class StabilizerOracle {
 public:
  StabilizerOracle(const GroupTable& g, const ActionTable& act)
      : g_(&g), words_((g.size() + 63) / 64), fix_(std::size_t(g.params().size()) * words_, 0) {
    for (std::size_t t = 0; t < g.size(); ++t) {
      const std::uint32_t* row = act.row(t);
      for (std::uint32_t x = 0; x < g.params().size(); ++x) {
        if (row[x] == x) fix_[x * words_ + t / 64] |= std::uint64_t(1) << (t % 64);
      }
    }
  }

  const GroupTable& group() const { return *g_; }

  // Stabilizer size of the pinned tuple given by difference-vector indices.
  std::size_t stabilizer_of_differences(const std::vector<std::uint32_t>& diffs) const {
    std::vector<std::uint64_t> acc(words_, ~std::uint64_t(0));
    trim(acc);
    for (std::uint32_t v : diffs) {
      for (std::size_t w = 0; w < words_; ++w) acc[w] &= fix_[v * words_ + w];
    }
    return popcount(acc);
  }

  std::size_t stabilizer_of_points(const std::vector<std::uint32_t>& pts) const {
    const FieldParams& p = g_->params();
    std::vector<std::uint32_t> diffs;
    for (std::size_t i = 1; i < pts.size(); ++i) diffs.push_back(p.sub_index(pts[i], pts[0]));
    return stabilizer_of_differences(diffs);
  }

  // Minimal stabilizer size over nondegenerate pinned n-simplices.
  std::size_t minimal_stabilizer(int n) const {
    if (n < 0) throw ParameterError("simplex dimension must be nonnegative");
    std::lock_guard<std::mutex> lock(mu_);
    auto it = min_cache_.find(n);
    if (it != min_cache_.end()) return it->second;
    std::size_t best = compute_minimal(n);
    min_cache_[n] = best;
    return best;
  }

 private:
  void trim(std::vector<std::uint64_t>& acc) const {
    std::size_t extra = words_ * 64 - g_->size();
    if (extra) acc.back() &= ~std::uint64_t(0) >> extra;
  }
  static std::size_t popcount(const std::vector<std::uint64_t>& acc) {
    std::size_t c = 0;
    for (auto w : acc) c += std::size_t(__builtin_popcountll(w));
    return c;
  }

  std::size_t compute_minimal(int n) const {
    const FieldParams& p = g_->params();
    int d = p.d();
    if (n == 0) return g_->size();
    if (n >= d) return 1;
    std::size_t best = g_->size();
    std::vector<Vector> chosen;
    std::vector<std::uint64_t> start(words_, ~std::uint64_t(0));
    trim(start);
    auto dfs = [&](auto&& self, const std::vector<std::uint64_t>& acc) -> void {
      if (best == 1) return;
      if (int(chosen.size()) == n) {
        best = std::min(best, popcount(acc));
        return;
      }
      for (std::uint32_t v = 1; v < p.size(); ++v) {
        Vector x = p.point(v);
        chosen.push_back(x);
        if (rank(p, chosen) == int(chosen.size())) {
          std::vector<std::uint64_t> next(acc);
          for (std::size_t w = 0; w < words_; ++w) next[w] &= fix_[v * words_ + w];
          self(self, next);
        }
        chosen.pop_back();
        if (best == 1) return;
      }
    };
    dfs(dfs, start);
    return best;
  }

  const GroupTable* g_;
  std::size_t words_;
  std::vector<std::uint64_t> fix_;
  mutable std::mutex mu_;
  mutable std::map<int, std::size_t> min_cache_;
};

}  // namespace simplexlab
