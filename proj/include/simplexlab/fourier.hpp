#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

#include "simplexlab/errors.hpp"
#include "simplexlab/field.hpp"

namespace simplexlab {

using Complex = std::complex<double>;

// chi(a) = exp(2 pi i a / q).
class Character {
 public:
  explicit Character(std::uint32_t q) : q_(q), table_(q) {
    for (std::uint32_t a = 0; a < q; ++a) {
      double ang = 2.0 * std::numbers::pi * double(a) / double(q);
      table_[a] = Complex(std::cos(ang), std::sin(ang));
    }
  }
  std::uint32_t modulus() const { return q_; }
  Complex operator()(std::int64_t a) const {
    std::int64_t r = a % std::int64_t(q_);
    if (r < 0) r += q_;
    return table_[std::size_t(r)];
  }

 private:
  std::uint32_t q_;
  std::vector<Complex> table_;
};

// A complex-valued function on all q^d points, indexed like FieldParams::index.
struct ComplexGrid {
  FieldParams params;
  std::vector<Complex> values;

  explicit ComplexGrid(FieldParams p) : params(p), values(p.size()) {}

  Complex& operator[](std::uint32_t i) { return values[i]; }
  const Complex& operator[](std::uint32_t i) const { return values[i]; }
  Complex& at(const Vector& x) { return values[params.index(x)]; }
  const Complex& at(const Vector& x) const { return values[params.index(x)]; }

  double l2_squared() const {
    double s = 0;
    for (const auto& v : values) s += std::norm(v);
    return s;
  }
};

namespace detail {

// Sum over x of chi(sign * m.x) f(x) for every m, scaled by `scale`.
inline ComplexGrid character_sum(const ComplexGrid& f, int sign, double scale) {
  const FieldParams& p = f.params;
  Character chi(p.q());
  ComplexGrid out(p);
  std::vector<Vector> pts(p.size());
  for (std::uint32_t i = 0; i < p.size(); ++i) pts[i] = p.point(i);
  std::vector<std::uint32_t> support;
  for (std::uint32_t x = 0; x < p.size(); ++x) {
    if (f.values[x] != Complex(0, 0)) support.push_back(x);
  }
  for (std::uint32_t m = 0; m < p.size(); ++m) {
    Complex acc(0, 0);
    for (std::uint32_t x : support) {
      Residue dot = p.dot(pts[m], pts[x]);
      acc += chi(sign * std::int64_t(dot)) * f.values[x];
    }
    out.values[m] = acc * scale;
  }
  return out;
}

}  // namespace detail

// f^(m) = q^-d sum_x chi(-m.x) f(x)
inline ComplexGrid transform(const ComplexGrid& f) {
  return detail::character_sum(f, -1, 1.0 / double(f.params.size()));
}

// f(x) = sum_m chi(m.x) g(m)
inline ComplexGrid inverse_transform(const ComplexGrid& g) { return detail::character_sum(g, +1, 1.0); }

inline double parseval_defect(const ComplexGrid& f) {
  ComplexGrid fh = transform(f);
  return std::abs(fh.l2_squared() - f.l2_squared() / double(f.params.size()));
}

template <class Counts>
ComplexGrid to_complex(const FieldParams& p, const Counts& counts) {
  ComplexGrid g(p);
  for (std::uint32_t i = 0; i < p.size(); ++i) g.values[i] = Complex(double(counts[i]), 0.0);
  return g;
}

struct SphereNorms {
  double l4_of_transform = 0;  // ||(h S_t)^||_4
  double l2 = 0;               // ||h S_t||_2
  bool in_hypothesis = false;  // d = 2 and q = 3 mod 4

  // ||(h S_t)^||_4 / (q^{-3/2} ||h S_t||_2), zero when h S_t vanishes.
  double ratio(std::uint32_t q) const {
    if (l2 == 0) return 0;
    return l4_of_transform / (std::pow(double(q), -1.5) * l2);
  }
};

// Norms use counting measure on both sides.
inline SphereNorms sphere_restricted_norms(const ComplexGrid& h, Residue t) {
  const FieldParams& p = h.params;
  if (t >= p.q()) throw ParameterError("radius not reduced mod q");
  ComplexGrid hs(p);
  for (std::uint32_t i = 0; i < p.size(); ++i) {
    if (p.norm(p.point(i)) == t) hs.values[i] = h.values[i];
  }
  ComplexGrid hh = transform(hs);
  SphereNorms r;
  double s4 = 0;
  for (const auto& v : hh.values) s4 += std::norm(v) * std::norm(v);
  r.l4_of_transform = std::pow(s4, 0.25);
  r.l2 = std::sqrt(hs.l2_squared());
  r.in_hypothesis = p.d() == 2 && p.q() % 4 == 3;
  return r;
}

}  // namespace simplexlab
