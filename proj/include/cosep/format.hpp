#pragma once

#include <cstdint>
#include <cstdio>
#include <string>
#include <utility>

#include <json.hpp>

#include "cosep/coalgebra.hpp"

namespace cosep {

using ordered_json = nlohmann::ordered_json;

struct ParsedSpec {
  std::string name;
  Coalgebra coalgebra;
};

namespace detail {

inline std::pair<std::size_t, std::size_t> line_column(const std::string& text,
                                                       std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

inline Scalar coeff_from_json(const Field& f, const nlohmann::json& j,
                              const char* what) {
  if (j.is_number_integer()) return Scalar::from_int(f, j.get<std::int64_t>());
  if (j.is_string()) return Scalar::parse(f, j.get<std::string>());
  throw input_error(std::string(what) + ": coefficient must be an integer or a "
                                        "string rational \"a/b\"");
}

inline std::size_t index_from_json(const nlohmann::json& j, std::size_t dim,
                                   const char* what) {
  if (!j.is_number_integer() || j.get<std::int64_t>() < 0)
    throw input_error(std::string(what) + ": index must be a non-negative integer");
  auto v = j.get<std::uint64_t>();
  if (v >= dim)
    throw input_error(std::string(what) + ": index " + std::to_string(v) +
                      " out of range [0," + std::to_string(dim) + ")");
  return static_cast<std::size_t>(v);
}

}  // namespace detail

/// Parses a coalgebra presentation file (UTF-8 JSON). Coefficients are
/// exact strings or integers; duplicate (from,left,right) entries are
/// summed. The parsed coalgebra is validated: non-coassociative input
/// is rejected with the failing basis index.
inline ParsedSpec parse_spec(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    auto [line, col] = detail::line_column(text, e.byte ? e.byte - 1 : 0);
    throw input_error("syntax error at line " + std::to_string(line) + ", column " +
                      std::to_string(col) + ": " + e.what());
  }
  if (!j.is_object()) throw input_error("top level must be a JSON object");
  ParsedSpec out;
  out.name = j.value("name", std::string("unnamed"));
  if (!j.contains("field") || !j["field"].is_string())
    throw input_error("missing or non-string \"field\" (expected \"Q\" or \"Fp:<p>\")");
  Field f = Field::parse(j["field"].get<std::string>());
  if (!j.contains("dim") || !j["dim"].is_number_integer() ||
      j["dim"].get<std::int64_t>() < 1)
    throw input_error("\"dim\" must be a positive integer");
  std::size_t dim = j["dim"].get<std::size_t>();

  Coalgebra& c = out.coalgebra;
  c.field = f;
  c.dim = dim;
  if (j.contains("basis")) {
    if (!j["basis"].is_array() || j["basis"].size() != dim)
      throw input_error("\"basis\" must list exactly dim labels");
    for (const auto& b : j["basis"]) {
      if (!b.is_string()) throw input_error("basis labels must be strings");
      c.basis_names.push_back(b.get<std::string>());
    }
  } else {
    for (std::size_t i = 0; i < dim; ++i) c.basis_names.push_back("e" + std::to_string(i));
  }

  c.delta = DenseMatrix(f, dim * dim, dim);
  if (!j.contains("delta") || !j["delta"].is_array())
    throw input_error("missing \"delta\" array");
  for (const auto& rec : j["delta"]) {
    if (!rec.is_object()) throw input_error("delta entries must be objects");
    std::size_t from = detail::index_from_json(rec.at("from"), dim, "delta.from");
    std::size_t left = detail::index_from_json(rec.at("left"), dim, "delta.left");
    std::size_t right = detail::index_from_json(rec.at("right"), dim, "delta.right");
    c.delta.at(left * dim + right, from) +=
        detail::coeff_from_json(f, rec.at("coeff"), "delta.coeff");
  }

  if (j.contains("epsilon")) {
    if (!j["epsilon"].is_array()) throw input_error("\"epsilon\" must be an array");
    Vec eps = zero_vec(f, dim);
    for (const auto& rec : j["epsilon"]) {
      if (!rec.is_object()) throw input_error("epsilon entries must be objects");
      std::size_t at = detail::index_from_json(rec.at("at"), dim, "epsilon.at");
      eps[at] += detail::coeff_from_json(f, rec.at("coeff"), "epsilon.coeff");
    }
    c.epsilon = std::move(eps);
  }

  auto rep = validate_coalgebra(c);
  if (!rep.coassociative)
    throw input_error("input is not coassociative; first failing basis index " +
                      std::to_string(*rep.witness) + " (" +
                      c.basis_names[*rep.witness] + ")");
  return out;
}

/// Canonical serialization: fixed key order, delta entries sorted by
/// (from,left,right), epsilon by position, coefficients as exact
/// strings. Parsing it back reproduces the coalgebra field by field.
inline ordered_json serialize_spec(const std::string& name, const Coalgebra& c) {
  ordered_json j;
  j["name"] = name;
  j["field"] = c.field.name();
  j["dim"] = c.dim;
  j["basis"] = c.basis_names;
  ordered_json delta = ordered_json::array();
  for (std::size_t from = 0; from < c.dim; ++from)
    for (std::size_t left = 0; left < c.dim; ++left)
      for (std::size_t right = 0; right < c.dim; ++right) {
        const Scalar& v = c.d(from, left, right);
        if (v.is_zero()) continue;
        ordered_json rec;
        rec["from"] = from;
        rec["left"] = left;
        rec["right"] = right;
        rec["coeff"] = v.to_string();
        delta.push_back(std::move(rec));
      }
  j["delta"] = std::move(delta);
  if (c.epsilon) {
    ordered_json eps = ordered_json::array();
    for (std::size_t i = 0; i < c.dim; ++i) {
      if ((*c.epsilon)[i].is_zero()) continue;
      ordered_json rec;
      rec["at"] = i;
      rec["coeff"] = (*c.epsilon)[i].to_string();
      eps.push_back(std::move(rec));
    }
    j["epsilon"] = std::move(eps);
  }
  return j;
}

/// FNV-1a 64 digest of the canonical serialization; recorded in every
/// report so certificates can be tied to their exact input.
inline std::string input_hash(const Coalgebra& c) {
  std::string canon = serialize_spec("", c).dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : canon) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string("fnv1a64:") + buf;
}

inline ordered_json vec_json(const Vec& v) {
  ordered_json a = ordered_json::array();
  for (const auto& x : v) a.push_back(x.to_string());
  return a;
}

inline ordered_json matrix_json(const DenseMatrix& m) {
  ordered_json rows = ordered_json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(vec_json(m.row(r)));
  return rows;
}

/// Plain-text rendering of a report for --text mode.
inline void render_text(const ordered_json& j, std::string indent, std::string& out) {
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) {
      if (value.is_object() || (value.is_array() && !value.empty() &&
                                (value.front().is_object() || value.front().is_array()))) {
        out += indent + key + ":\n";
        render_text(value, indent + "  ", out);
      } else {
        out += indent + key + ": " + value.dump() + "\n";
      }
    }
  } else if (j.is_array()) {
    for (const auto& value : j) {
      if (value.is_object() || value.is_array()) {
        out += indent + "-\n";
        render_text(value, indent + "  ", out);
      } else {
        out += indent + "- " + value.dump() + "\n";
      }
    }
  } else {
    out += indent + j.dump() + "\n";
  }
}

}  // namespace cosep
