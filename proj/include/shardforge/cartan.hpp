#pragma once

#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "shardforge/errors.hpp"
#include "shardforge/numeric.hpp"

namespace shardforge {

// Vector in the simple-root basis: beta = sum coords[i] * alpha_i.
struct Root {
  IntVec coords;

  bool operator==(const Root& o) const { return coords == o.coords; }
  bool operator<(const Root& o) const { return coords < o.coords; }
  int rank() const { return int(coords.size()); }
};

// Vector in the fundamental-weight basis; <Weight, Root> is the coordinate
// dot product (omega_i dual to alpha_j).
struct Weight {
  RatVec coords;

  bool operator==(const Weight& o) const { return coords == o.coords; }
  int rank() const { return int(coords.size()); }
};

inline Root simple_root(int n, int i) {
  Root r;
  r.coords.assign(n, 0);
  r.coords[size_t(i)] = 1;
  return r;
}

inline bool is_positive(const Root& r) {
  bool nonzero = false;
  for (auto c : r.coords) {
    if (c < 0) return false;
    if (c > 0) nonzero = true;
  }
  return nonzero;
}

inline bool is_negative(const Root& r) {
  bool nonzero = false;
  for (auto c : r.coords) {
    if (c > 0) return false;
    if (c < 0) nonzero = true;
  }
  return nonzero;
}

inline std::optional<int> simple_index(const Root& r) {
  int idx = -1;
  for (int i = 0; i < r.rank(); ++i) {
    if (r.coords[size_t(i)] == 0) continue;
    if (r.coords[size_t(i)] != 1 || idx >= 0) return std::nullopt;
    idx = i;
  }
  if (idx < 0) return std::nullopt;
  return idx;
}

inline BigRat pair(const Weight& w, const Root& r) {
  BigRat s = 0;
  for (int i = 0; i < r.rank(); ++i) s += w.coords[size_t(i)] * r.coords[size_t(i)];
  return s;
}

// Symmetrizable crystallographic Cartan matrix together with its symmetrizer.
struct CartanData {
  std::string name;
  int n = 0;
  std::vector<IntVec> A;  // n x n
  IntVec d;               // symmetrizer, d_i A_ij = d_j A_ji
  Int L = 1;              // lcm(d_1..d_n)
  Int prime = 0;          // 0 means the rational module backend

  Int a(int i, int j) const { return A[size_t(i)][size_t(j)]; }
  Int d_ij(int i, int j) const { return std::lcm(d[size_t(i)], d[size_t(j)]); }
  bool edge(int i, int j) const { return i != j && a(i, j) < 0; }
  // arrow multiplicity of the species quiver, -d_i A_ij / d_ij
  Int arrows(int i, int j) const { return -d[size_t(i)] * a(i, j) / d_ij(i, j); }
};

inline bool is_prime_ll(Int p) {
  if (p < 2) return false;
  for (Int q = 2; q * q <= p; ++q)
    if (p % q == 0) return false;
  return true;
}

inline CartanData validate(const std::vector<IntVec>& raw, const IntVec& d,
                           Int prime = 0, const std::string& name = "") {
  const int n = int(raw.size());
  if (n == 0) throw ValidationError("cartan: empty matrix");
  for (const auto& row : raw)
    if (int(row.size()) != n) throw ValidationError("cartan: matrix is not square");
  if (int(d.size()) != n) throw ValidationError("cartan: symmetrizer length differs from rank");
  for (int i = 0; i < n; ++i)
    if (d[size_t(i)] <= 0)
      throw ValidationError("cartan: symmetrizer entry d[" + std::to_string(i + 1) + "] must be positive");

  for (int i = 0; i < n; ++i) {
    if (raw[size_t(i)][size_t(i)] != 2)
      throw ValidationError("cartan: diagonal entry A[" + std::to_string(i + 1) + "][" +
                            std::to_string(i + 1) + "] must equal 2");
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      if (raw[size_t(i)][size_t(j)] > 0)
        throw ValidationError("cartan: sign violation, A[" + std::to_string(i + 1) + "][" +
                              std::to_string(j + 1) + "] must be <= 0");
    }
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (d[size_t(i)] * raw[size_t(i)][size_t(j)] != d[size_t(j)] * raw[size_t(j)][size_t(i)])
        throw ValidationError("cartan: symmetrizability violated at (" + std::to_string(i + 1) +
                              "," + std::to_string(j + 1) + "): d_i A_ij != d_j A_ji");
    }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      Int dij = std::lcm(d[size_t(i)], d[size_t(j)]);
      if ((d[size_t(i)] * raw[size_t(i)][size_t(j)]) % dij != 0)
        throw ValidationError("cartan: arrow count d_i A_ij / lcm(d_i,d_j) not integral at (" +
                              std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
    }

  if (prime == 0) {
    for (int i = 0; i < n; ++i)
      if (d[size_t(i)] != 1)
        throw ValidationError("cartan: rational backend requires all d_i = 1; d[" +
                              std::to_string(i + 1) + "] = " + std::to_string(d[size_t(i)]) +
                              " needs a prime");
  } else if (!is_prime_ll(prime)) {
    throw ValidationError("cartan: backend characteristic " + std::to_string(prime) +
                          " is not prime");
  }

  CartanData c;
  c.name = name;
  c.n = n;
  c.A = raw;
  c.d = d;
  c.L = 1;
  for (int i = 0; i < n; ++i) c.L = std::lcm(c.L, d[size_t(i)]);
  c.prime = prime;
  return c;
}

// (x, y) = sum_ij x_i d_i A_ij y_j
inline Int bilinear(const CartanData& c, const Root& x, const Root& y) {
  Int s = 0;
  for (int i = 0; i < c.n; ++i) {
    if (x.coords[size_t(i)] == 0) continue;
    for (int j = 0; j < c.n; ++j)
      s += x.coords[size_t(i)] * c.d[size_t(i)] * c.a(i, j) * y.coords[size_t(j)];
  }
  return s;
}

// (alpha_i^vee, x) = sum_j A_ij x_j
inline Int coroot_pairing(const CartanData& c, int i, const Root& x) {
  Int s = 0;
  for (int j = 0; j < c.n; ++j) s += c.a(i, j) * x.coords[size_t(j)];
  return s;
}

// s_i(x) = x - (alpha_i^vee, x) alpha_i
inline Root reflect_root(const CartanData& c, int i, const Root& x) {
  Root r = x;
  r.coords[size_t(i)] -= coroot_pairing(c, i, x);
  return r;
}

// Dual action on the omega basis: s_i fixes omega_j (j != i) and sends
// omega_i to -omega_i + sum_{k != i} (-A_ik) omega_k.
inline Weight reflect_weight(const CartanData& c, int i, const Weight& w) {
  Weight r = w;
  const BigRat ci = w.coords[size_t(i)];
  r.coords[size_t(i)] = -ci;
  for (int k = 0; k < c.n; ++k) {
    if (k == i) continue;
    r.coords[size_t(k)] += BigRat(-c.a(i, k)) * ci;
  }
  return r;
}

// Same action on an integer vector of omega coordinates (no denominators
// appear, so cone generators stay integral).
inline BigVec reflect_weight_int(const CartanData& c, int i, const BigVec& w) {
  BigVec r = w;
  const BigInt ci = w[size_t(i)];
  r[size_t(i)] = -ci;
  for (int k = 0; k < c.n; ++k) {
    if (k == i) continue;
    r[size_t(k)] += BigInt(-c.a(i, k)) * ci;
  }
  return r;
}

inline BigVec reflect_normal_int(const CartanData& c, int i, const BigVec& x) {
  // s_i on root-space integer vectors.
  BigInt p = 0;
  for (int j = 0; j < c.n; ++j) p += BigInt(c.a(i, j)) * x[size_t(j)];
  BigVec r = x;
  r[size_t(i)] -= p;
  return r;
}

// d_beta = (beta, beta) / 2 for a real root; lies in {d_1, ..., d_n}.
inline Int d_beta(const CartanData& c, const Root& beta) {
  Int q = bilinear(c, beta, beta);
  if (q <= 0)
    throw PreconditionError("d_beta: (beta,beta) = " + std::to_string(q) +
                            " <= 0, not a real root");
  return q / 2;
}

inline std::string root_to_string(const Root& r) { return vec_to_string(r.coords); }

inline Root root_from_string(const std::string& s, int n) {
  Root r;
  std::string cur;
  for (char ch : s) {
    if (ch == ',') {
      r.coords.push_back(std::stoll(cur));
      cur.clear();
    } else if (!isspace(static_cast<unsigned char>(ch))) {
      cur.push_back(ch);
    }
  }
  if (!cur.empty()) r.coords.push_back(std::stoll(cur));
  if (int(r.coords.size()) != n)
    throw ValidationError("root string '" + s + "' has " + std::to_string(r.coords.size()) +
                          " coordinates, expected " + std::to_string(n));
  return r;
}

}  // namespace shardforge
