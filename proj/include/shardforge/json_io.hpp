#pragma once

#include <fstream>
#include <string>

#include <json.hpp>

#include "shardforge/stability.hpp"

namespace shardforge {

using nlohmann::json;

inline long long big_to_ll(const BigInt& x) {
  if (x > BigInt(std::numeric_limits<long long>::max()) ||
      x < BigInt(std::numeric_limits<long long>::min()))
    throw ValidationError("integer too large for JSON serialization");
  return x.convert_to<long long>();
}

inline json vec_to_json(const BigVec& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(big_to_ll(x));
  return a;
}

inline json vec_to_json(const IntVec& v) {
  json a = json::array();
  for (auto x : v) a.push_back(x);
  return a;
}

inline BigVec vec_from_json(const json& a) {
  BigVec v;
  for (const auto& x : a) v.push_back(BigInt(x.get<long long>()));
  return v;
}

// --- Cartan input file ------------------------------------------------------

inline CartanData cartan_from_json(const json& j) {
  if (!j.contains("A") || !j.contains("d")) throw ValidationError("cartan file: need 'A' and 'd'");
  std::vector<IntVec> A;
  for (const auto& row : j.at("A")) {
    IntVec r;
    for (const auto& x : row) r.push_back(x.get<Int>());
    A.push_back(std::move(r));
  }
  IntVec d;
  for (const auto& x : j.at("d")) d.push_back(x.get<Int>());
  Int prime = j.value("prime", Int(0));
  std::string name = j.value("name", std::string("cartan"));
  return validate(A, d, prime, name);
}

inline json cartan_to_json(const CartanData& c) {
  json j;
  j["name"] = c.name;
  json A = json::array();
  for (const auto& row : c.A) A.push_back(vec_to_json(row));
  j["A"] = A;
  j["d"] = vec_to_json(c.d);
  if (c.prime != 0) j["prime"] = c.prime;
  return j;
}

inline CartanData load_cartan_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open cartan file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ValidationError("cartan file '" + path + "': " + e.what());
  }
  return cartan_from_json(j);
}

// --- cones and shards -------------------------------------------------------

inline json cone_to_json(const Cone& K) {
  auto [eqs, ineqs] = K.facet_enumeration();
  const VRep& v = K.vrep();
  json j;
  json je = json::array(), ji = json::array(), jr = json::array(), jl = json::array();
  for (const auto& e : eqs) je.push_back(vec_to_json(e));
  for (const auto& q : ineqs) ji.push_back(vec_to_json(q));
  for (const auto& r : v.rays) jr.push_back(vec_to_json(r));
  for (const auto& l : v.lineality) jl.push_back(vec_to_json(l));
  j["equalities"] = je;
  j["inequalities"] = ji;
  j["rays"] = jr;
  j["lineality"] = jl;
  j["dim"] = v.dim;
  return j;
}

inline Cone cone_from_json(const json& j, int n) {
  std::vector<BigVec> eqs, ineqs;
  for (const auto& e : j.at("equalities")) eqs.push_back(vec_from_json(e));
  for (const auto& q : j.at("inequalities")) ineqs.push_back(vec_from_json(q));
  return Cone(n, std::move(eqs), std::move(ineqs));
}

inline json shard_to_json(const Shard& s) {
  json j;
  j["normal"] = vec_to_json(s.normal.coords);
  j["provenance"] = s.provenance;
  j["cone"] = cone_to_json(s.cone);
  return j;
}

// --- species modules --------------------------------------------------------

inline json scalar_to_json(const PrimeField&, const PrimeField::Elt& x) { return json(x); }
inline json scalar_to_json(const RationalScalar&, const BigRat& x) {
  std::ostringstream os;
  os << x;
  return json(os.str());
}
inline void scalar_from_json(const PrimeField& sf, const json& j, PrimeField::Elt& out) {
  out = sf.from_int(j.get<Int>());
}
inline void scalar_from_json(const RationalScalar&, const json& j, BigRat& out) {
  out = BigRat(j.get<std::string>());
}

template <class SF>
json module_to_json(const SpeciesContext<SF>& ctx, const SpeciesModule<SF>& M) {
  json j;
  j["dims"] = json::array();
  for (int m : M.dims) j["dims"].push_back(m);
  json maps = json::object();
  for (const auto& [key, mat] : M.maps) {
    std::string name = std::to_string(key.first + 1) + "<-" + std::to_string(key.second + 1);
    json rows = json::array();
    for (int r = 0; r < mat.rows; ++r) {
      json row = json::array();
      for (int cidx = 0; cidx < mat.cols; ++cidx) {
        json elt = json::array();
        for (const auto& coeff : mat.at(r, cidx))
          elt.push_back(scalar_to_json(ctx.tower.scalar_field(), coeff));
        row.push_back(elt);
      }
      rows.push_back(row);
    }
    maps[name] = rows;
  }
  j["maps"] = maps;
  return j;
}

template <class SF>
SpeciesModule<SF> module_from_json(const SpeciesContext<SF>& ctx, const json& j) {
  std::vector<int> dims;
  for (const auto& x : j.at("dims")) dims.push_back(x.get<int>());
  if (int(dims.size()) != ctx.c.n) throw ValidationError("module: wrong number of dims");
  SpeciesModule<SF> M = zero_module(ctx, dims);
  for (const auto& [name, rows] : j.at("maps").items()) {
    auto sep = name.find("<-");
    if (sep == std::string::npos) throw ValidationError("module: bad map key '" + name + "'");
    int tgt = std::stoi(name.substr(0, sep)) - 1;
    int src = std::stoi(name.substr(sep + 2)) - 1;
    auto it = M.maps.find({tgt, src});
    if (it == M.maps.end()) throw ValidationError("module: '" + name + "' is not an edge");
    auto& mat = it->second;
    if (int(rows.size()) != mat.rows) throw ValidationError("module: row count mismatch in '" + name + "'");
    for (int r = 0; r < mat.rows; ++r) {
      const auto& row = rows.at(size_t(r));
      if (int(row.size()) != mat.cols)
        throw ValidationError("module: column count mismatch in '" + name + "'");
      for (int cidx = 0; cidx < mat.cols; ++cidx) {
        auto elt = ctx.tower.zero();
        const auto& je = row.at(size_t(cidx));
        if (int(je.size()) != ctx.tower.degree())
          throw ValidationError("module: field element length mismatch in '" + name + "'");
        for (int k = 0; k < ctx.tower.degree(); ++k)
          scalar_from_json(ctx.tower.scalar_field(), je.at(size_t(k)), elt[size_t(k)]);
        mat.at(r, cidx) = elt;
      }
    }
  }
  return M;
}

template <class SF>
json stab_result_to_json(const SpeciesContext<SF>& ctx, const StabResult<SF>& r) {
  (void)ctx;
  json j;
  j["word"] = signed_word_to_string(r.word);
  j["dim"] = vec_to_json(r.dim.coords);
  j["cone"] = cone_to_json(r.cone);
  j["method"] = r.method;
  j["is_shard_module"] = r.is_shard_module;
  return j;
}

}  // namespace shardforge
