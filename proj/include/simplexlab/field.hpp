#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "simplexlab/errors.hpp"

namespace simplexlab {

using Residue = std::uint32_t;

inline constexpr int kMaxDim = 16;
inline constexpr std::uint64_t kMaxPoints = std::uint64_t(1) << 24;

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) return false;
  }
  return true;
}

inline std::uint64_t ipow(std::uint64_t base, unsigned exp) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < exp; ++i) r *= base;
  return r;
}

inline std::int64_t binom(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n) return 0;
  std::int64_t r = 1;
  for (std::int64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// A point of F_q^d; coordinates beyond dim() are zero.
class Vector {
 public:
  Vector() = default;
  explicit Vector(int dim) : dim_(dim) {
    if (dim < 1 || dim > kMaxDim) throw ParameterError("vector dimension out of range");
  }
  Vector(std::initializer_list<Residue> coords) : dim_(int(coords.size())) {
    if (dim_ < 1 || dim_ > kMaxDim) throw ParameterError("vector dimension out of range");
    int i = 0;
    for (Residue c : coords) c_[i++] = c;
  }

  int dim() const { return dim_; }
  Residue operator[](int i) const { return c_[i]; }
  Residue& operator[](int i) { return c_[i]; }

  friend bool operator==(const Vector&, const Vector&) = default;
  friend auto operator<=>(const Vector&, const Vector&) = default;

  std::string str() const {
    std::string s = "(";
    for (int i = 0; i < dim_; ++i) {
      if (i) s += ",";
      s += std::to_string(c_[i]);
    }
    return s + ")";
  }

 private:
  int dim_ = 0;
  std::array<Residue, kMaxDim> c_{};
};

// The ambient space F_q^d for a prime q. Points are also addressed by a dense
// index in [0, q^d) with little-endian base-q digits.
class FieldParams {
 public:
  FieldParams(std::uint32_t q, int d) : q_(q), d_(d) {
    if (q < 3 || !is_prime(q)) throw ParameterError("q must be an odd prime, got " + std::to_string(q));
    if (d < 1 || d > kMaxDim) throw ParameterError("d must be in [1, 16], got " + std::to_string(d));
    std::uint64_t n = 1;
    for (int i = 0; i < d; ++i) {
      n *= q;
      if (n > kMaxPoints) throw ResourceError("q^d exceeds 2^24");
    }
    size_ = std::uint32_t(n);
  }

  std::uint32_t q() const { return q_; }
  int d() const { return d_; }
  std::uint32_t size() const { return size_; }

  friend bool operator==(const FieldParams& a, const FieldParams& b) { return a.q_ == b.q_ && a.d_ == b.d_; }

  Residue reduce(std::int64_t v) const {
    std::int64_t r = v % std::int64_t(q_);
    return Residue(r < 0 ? r + q_ : r);
  }
  Residue add(Residue a, Residue b) const { return Residue((a + b) % q_); }
  Residue sub(Residue a, Residue b) const { return Residue((a + q_ - b) % q_); }
  Residue mul(Residue a, Residue b) const { return Residue(std::uint64_t(a) * b % q_); }
  Residue neg(Residue a) const { return a == 0 ? 0 : q_ - a; }
  Residue pow(Residue a, std::uint64_t e) const {
    std::uint64_t r = 1, b = a % q_;
    while (e) {
      if (e & 1) r = r * b % q_;
      b = b * b % q_;
      e >>= 1;
    }
    return Residue(r);
  }
  Residue inv(Residue a) const {
    if (a % q_ == 0) throw ParameterError("inverse of zero");
    return pow(a, q_ - 2);
  }

  Vector zero() const { return Vector(d_); }

  Vector make(std::initializer_list<std::int64_t> coords) const {
    if (int(coords.size()) != d_) throw ParameterError("coordinate count does not match d");
    Vector v(d_);
    int i = 0;
    for (auto c : coords) v[i++] = reduce(c);
    return v;
  }

  Vector basis(int i) const {
    Vector v(d_);
    v[i] = 1;
    return v;
  }

  void check(const Vector& x) const {
    if (x.dim() != d_) throw ParameterError("vector dimension mismatch");
    for (int i = 0; i < d_; ++i) {
      if (x[i] >= q_) throw ParameterError("coordinate not reduced mod q");
    }
  }

  std::uint32_t index(const Vector& x) const {
    std::uint32_t idx = 0;
    for (int i = d_ - 1; i >= 0; --i) idx = idx * q_ + x[i];
    return idx;
  }

  Vector point(std::uint32_t idx) const {
    Vector v(d_);
    for (int i = 0; i < d_; ++i) {
      v[i] = idx % q_;
      idx /= q_;
    }
    return v;
  }

  Vector add(const Vector& x, const Vector& y) const {
    Vector r(d_);
    for (int i = 0; i < d_; ++i) r[i] = add(x[i], y[i]);
    return r;
  }
  Vector sub(const Vector& x, const Vector& y) const {
    Vector r(d_);
    for (int i = 0; i < d_; ++i) r[i] = sub(x[i], y[i]);
    return r;
  }
  Vector scale(Residue a, const Vector& x) const {
    Vector r(d_);
    for (int i = 0; i < d_; ++i) r[i] = mul(a, x[i]);
    return r;
  }

  std::uint32_t add_index(std::uint32_t a, std::uint32_t b) const {
    std::uint32_t r = 0, place = 1;
    for (int i = 0; i < d_; ++i) {
      r += ((a % q_ + b % q_) % q_) * place;
      a /= q_;
      b /= q_;
      place *= q_;
    }
    return r;
  }
  std::uint32_t sub_index(std::uint32_t a, std::uint32_t b) const {
    std::uint32_t r = 0, place = 1;
    for (int i = 0; i < d_; ++i) {
      r += ((a % q_ + q_ - b % q_) % q_) * place;
      a /= q_;
      b /= q_;
      place *= q_;
    }
    return r;
  }
  std::uint32_t neg_index(std::uint32_t a) const { return sub_index(0, a); }

  Residue dot(const Vector& x, const Vector& y) const {
    std::uint64_t s = 0;
    for (int i = 0; i < d_; ++i) s += std::uint64_t(x[i]) * y[i];
    return Residue(s % q_);
  }

  Residue norm(const Vector& x) const { return dot(x, x); }

 private:
  std::uint32_t q_;
  int d_;
  std::uint32_t size_ = 0;
};

inline Residue distance(const FieldParams& p, const Vector& x, const Vector& y) {
  if (x.dim() != p.d() || y.dim() != p.d()) throw ParameterError("vector dimension mismatch");
  std::uint64_t s = 0;
  for (int i = 0; i < p.d(); ++i) {
    std::uint64_t diff = (x[i] + p.q() - y[i]) % p.q();
    s += diff * diff;
  }
  return Residue(s % p.q());
}

// Distance table over point indices: norm of every point, so that
// distance(x, y) = norms[sub_index(x, y)].
inline std::vector<Residue> norm_table(const FieldParams& p) {
  std::vector<Residue> t(p.size());
  for (std::uint32_t i = 0; i < p.size(); ++i) t[i] = p.norm(p.point(i));
  return t;
}

struct Sphere {
  Residue radius = 0;
  std::vector<Vector> points;
};

inline Sphere sphere(const FieldParams& p, Residue t) {
  if (t >= p.q()) throw ParameterError("radius not reduced mod q");
  Sphere s;
  s.radius = t;
  for (std::uint32_t i = 0; i < p.size(); ++i) {
    Vector x = p.point(i);
    if (p.norm(x) == t) s.points.push_back(x);
  }
  return s;
}

inline bool has_sqrt_minus_one(const FieldParams& p) {
  Residue m1 = p.q() - 1;
  for (Residue x = 1; x < p.q(); ++x) {
    if (p.mul(x, x) == m1) return true;
  }
  return false;
}

// Rank of a list of vectors by Gaussian elimination over F_q.
inline int rank(const FieldParams& p, std::vector<Vector> rows) {
  int d = p.d();
  int r = 0;
  for (int col = 0; col < d && r < int(rows.size()); ++col) {
    int piv = -1;
    for (int i = r; i < int(rows.size()); ++i) {
      if (rows[i][col] != 0) {
        piv = i;
        break;
      }
    }
    if (piv < 0) continue;
    std::swap(rows[piv], rows[r]);
    Residue inv = p.inv(rows[r][col]);
    for (int c = 0; c < d; ++c) rows[r][c] = p.mul(rows[r][c], inv);
    for (int i = 0; i < int(rows.size()); ++i) {
      if (i == r || rows[i][col] == 0) continue;
      Residue f = rows[i][col];
      for (int c = 0; c < d; ++c) rows[i][c] = p.sub(rows[i][c], p.mul(f, rows[r][c]));
    }
    ++r;
  }
  return r;
}

}  // namespace simplexlab
