#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <vector>

namespace dtop {

using Int = mpz_class;
using Rational = mpq_class;
using Vec = std::vector<Int>;

inline Vec zero_vec(std::size_t n) { return Vec(n, Int(0)); }

inline bool is_zero(const Vec& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

inline Vec operator+(const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline Vec operator-(const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline Vec operator-(const Vec& a) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}

inline Vec operator*(const Int& s, const Vec& a) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
  return r;
}

// Least nonnegative residue; m > 0.
inline Int mod_floor(const Int& a, const Int& m) {
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

inline std::string to_string(const Vec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += v[i].get_str();
  }
  return s + ")";
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

}  // namespace dtop
