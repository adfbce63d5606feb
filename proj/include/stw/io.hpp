#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "stw/catalog.hpp"
#include "stw/module.hpp"

namespace stw {

using Json = nlohmann::ordered_json;

// Algebra interchange schema:
// {"p": int, "dim": int, "basis": [names], "unit": 0, "generators": [indices],
//  "table": [[i, j, [[k, coeff], ...]], ...]}   (sparse; absent products are zero)
inline Json algebra_to_json(const Algebra& a) {
  Json j;
  j["p"] = a.field.p;
  j["dim"] = a.dim;
  j["basis"] = a.basis_names;
  j["unit"] = 0;
  j["generators"] = a.generators;
  Json table = Json::array();
  for (std::size_t i = 0; i < a.dim; ++i)
    for (std::size_t jj = 0; jj < a.dim; ++jj) {
      Json terms = Json::array();
      for (std::size_t k = 0; k < a.dim; ++k)
        if (a.table[i][jj][k]) terms.push_back(Json::array({k, a.table[i][jj][k]}));
      if (!terms.empty()) table.push_back(Json::array({i, jj, terms}));
    }
  j["table"] = table;
  return j;
}

inline AlgebraPtr algebra_from_json(const Json& j) {
  try {
    RawAlgebra raw;
    raw.p = j.at("p").get<uint32_t>();
    raw.dim = j.at("dim").get<std::size_t>();
    if (j.contains("basis")) raw.basis_names = j.at("basis").get<std::vector<std::string>>();
    if (j.contains("unit") && j.at("unit").get<int>() != 0)
      throw Error("ParseError", "unit index must be 0");
    if (j.contains("generators"))
      raw.generators = j.at("generators").get<std::vector<std::size_t>>();
    raw.table.assign(raw.dim, std::vector<Vec>(raw.dim, Vec(raw.dim, 0)));
    for (const auto& entry : j.at("table")) {
      std::size_t a = entry.at(0).get<std::size_t>(), b = entry.at(1).get<std::size_t>();
      if (a >= raw.dim || b >= raw.dim) throw Error("ParseError", "table index out of range");
      for (const auto& term : entry.at(2)) {
        std::size_t k = term.at(0).get<std::size_t>();
        if (k >= raw.dim) throw Error("ParseError", "table term index out of range");
        raw.table[a][b][k] = term.at(1).get<uint32_t>() % raw.p;
      }
    }
    return validate_algebra(raw);
  } catch (const Json::exception& e) {
    throw Error("ParseError", e.what());
  }
}

// Catalog names: dihedral:q=..:p=.. | semidihedral:q=..:p=..:delta=.. |
// klein:p=.. | extraspecial:p=..
inline CatalogAlgebra catalog_algebra(const std::string& spec) {
  auto fields = [&] {
    std::map<std::string, long> kv;
    std::stringstream ss(spec);
    std::string tok;
    std::getline(ss, tok, ':');
    std::string family = tok;
    while (std::getline(ss, tok, ':')) {
      auto eq = tok.find('=');
      if (eq == std::string::npos) throw Error("ParseError", "bad catalog field '" + tok + "'");
      kv[tok.substr(0, eq)] = std::stol(tok.substr(eq + 1));
    }
    return std::make_pair(family, kv);
  }();
  const auto& family = fields.first;
  auto& kv = fields.second;
  auto need = [&](const char* k) {
    auto it = kv.find(k);
    if (it == kv.end()) throw Error("ParseError", std::string("catalog spec needs ") + k);
    return it->second;
  };
  if (family == "dihedral") return dihedral_algebra((std::size_t)need("q"), (uint32_t)need("p"));
  if (family == "semidihedral")
    return semidihedral_algebra((std::size_t)need("q"), (uint32_t)need("delta"), (uint32_t)need("p"));
  if (family == "klein") return klein_commutative_algebra((uint32_t)need("p"));
  if (family == "extraspecial") return extraspecial_group_algebra((uint32_t)need("p"));
  throw Error("ParseError", "unknown catalog family '" + family + "'");
}

inline Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("ParseError", "cannot open " + path);
  Json j;
  try {
    in >> j;
  } catch (const Json::exception& e) {
    throw Error("ParseError", e.what());
  }
  return j;
}

// Algebra given either as a catalog name or a JSON file path / inline object.
inline CatalogAlgebra resolve_algebra(const std::string& spec) {
  if (spec.size() > 5 && spec.substr(spec.size() - 5) == ".json") {
    auto j = load_json_file(spec);
    return {algebra_from_json(j), spec};
  }
  return catalog_algebra(spec);
}

// Module schema: {"algebra": name-or-inline, "dim": int, "action": [...]}
// with one row-major matrix per basis element, or one per generator (the
// rest are synthesized from monomial products).
inline Json module_to_json(const Module& m, const std::string& algebra_name) {
  Json j;
  j["algebra"] = algebra_name;
  j["dim"] = m.dim;
  Json act = Json::array();
  for (const auto& a : m.action) act.push_back(a.a);
  j["action"] = act;
  return j;
}

inline ModulePtr module_from_json(const Json& j, AlgebraPtr fallback_algebra = nullptr) {
  try {
    AlgebraPtr A = fallback_algebra;
    if (j.contains("algebra")) {
      if (j.at("algebra").is_string())
        A = resolve_algebra(j.at("algebra").get<std::string>()).A;
      else
        A = algebra_from_json(j.at("algebra"));
    }
    if (!A) throw Error("ParseError", "module needs an algebra");
    std::size_t dim = j.at("dim").get<std::size_t>();
    const auto& act = j.at("action");
    auto parse_mat = [&](const Json& rows) {
      Mat m(A->field.p, dim, dim);
      if (rows.size() != dim * dim && rows.size() != dim)
        throw Error("ParseError", "action matrix has wrong shape");
      if (rows.size() == dim && dim > 0 && rows[0].is_array()) {
        for (std::size_t r = 0; r < dim; ++r)
          for (std::size_t c = 0; c < dim; ++c) m.at(r, c) = rows[r][c].get<uint32_t>() % A->field.p;
      } else {
        for (std::size_t i = 0; i < dim * dim; ++i) m.a[i] = rows[i].get<uint32_t>() % A->field.p;
      }
      return m;
    };
    if (act.size() == A->dim) {
      std::vector<Mat> action;
      for (const auto& rows : act) action.push_back(parse_mat(rows));
      return make_module(A, std::move(action), Check::Auto);
    }
    if (act.size() == A->generators.size()) {
      std::map<std::size_t, Mat> gen_acts;
      for (std::size_t i = 0; i < act.size(); ++i) gen_acts[A->generators[i]] = parse_mat(act[i]);
      return from_generator_actions(A, gen_acts, dim);
    }
    throw Error("ParseError", "action list must cover all basis elements or exactly the generators");
  } catch (const Json::exception& e) {
    throw Error("ParseError", e.what());
  }
}

inline void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw Error("ParseError", "cannot write " + path);
  out << j.dump(2) << "\n";
}

}  // namespace stw
