#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <numeric>
#include <sstream>
#include <string>
#include <vector>

namespace shardforge {

using Int = long long;
using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

using IntVec = std::vector<Int>;
using BigVec = std::vector<BigInt>;
using RatVec = std::vector<BigRat>;

inline Int lcm_ll(Int a, Int b) { return std::lcm(a, b); }

inline BigInt big_gcd(const BigInt& a, const BigInt& b) { return boost::multiprecision::gcd(a, b); }

inline bool is_zero_vec(const BigVec& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

inline bool is_zero_vec(const IntVec& v) {
  for (auto x : v)
    if (x != 0) return false;
  return true;
}

inline BigVec to_big(const IntVec& v) {
  BigVec r(v.size());
  for (size_t i = 0; i < v.size(); ++i) r[i] = v[i];
  return r;
}

inline BigInt dot(const BigVec& a, const BigVec& b) {
  BigInt s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline BigInt dot(const BigVec& a, const IntVec& b) {
  BigInt s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline BigVec add(const BigVec& a, const BigVec& b) {
  BigVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline BigVec scale(const BigInt& c, const BigVec& v) {
  BigVec r(v.size());
  for (size_t i = 0; i < v.size(); ++i) r[i] = c * v[i];
  return r;
}

// c1*a + c2*b
inline BigVec combine(const BigInt& c1, const BigVec& a, const BigInt& c2, const BigVec& b) {
  BigVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = c1 * a[i] + c2 * b[i];
  return r;
}

inline BigVec negate(const BigVec& v) {
  BigVec r(v.size());
  for (size_t i = 0; i < v.size(); ++i) r[i] = -v[i];
  return r;
}

// Divide by the (positive) gcd of the entries; the direction is preserved.
inline void make_primitive(BigVec& v) {
  BigInt g = 0;
  for (const auto& x : v) g = big_gcd(g, x);
  if (g <= 1) return;
  for (auto& x : v) x /= g;
}

// Primitive with first nonzero entry positive; canonicalizes a line/normal
// where both signs describe the same object.
inline void make_primitive_signless(BigVec& v) {
  make_primitive(v);
  for (const auto& x : v) {
    if (x > 0) return;
    if (x < 0) {
      for (auto& y : v) y = -y;
      return;
    }
  }
}

// Clear denominators and reduce to a primitive integer vector (direction kept).
inline BigVec primitive_from_rational(const RatVec& v) {
  BigInt l = 1;
  for (const auto& x : v) l = l / big_gcd(l, denominator(x)) * denominator(x);
  BigVec r(v.size());
  for (size_t i = 0; i < v.size(); ++i) r[i] = numerator(v[i]) * (l / denominator(v[i]));
  make_primitive(r);
  return r;
}

inline std::string vec_to_string(const BigVec& v, char sep = ',') {
  std::ostringstream os;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) os << sep;
    os << v[i];
  }
  return os.str();
}

inline std::string vec_to_string(const IntVec& v, char sep = ',') {
  std::ostringstream os;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) os << sep;
    os << v[i];
  }
  return os.str();
}

}  // namespace shardforge
