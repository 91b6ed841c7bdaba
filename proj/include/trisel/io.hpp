#pragma once

// File formats. Instances are JSON {"points": [[x, y], ...], "triangles":
// [[i, j, k], ...]} with integer coordinates and 0-based indices.
// Certificates serialize every SelectionCertificate field with rationals as
// "p/q" strings; serialization round-trips losslessly and emitted bytes are
// deterministic (fixed key order, fixed indentation).

#include "trisel/geometry.hpp"
#include "trisel/selection.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace trisel {

using Json = nlohmann::ordered_json;

struct Instance {
  PointSet points;
  TriangleSet triangles;
};

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

inline void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << content;
}

inline Json parse_json_text(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(what + ": " + e.what());
  }
}

inline Instance instance_from_json(const Json& doc) {
  if (!doc.is_object()) throw std::invalid_argument("instance: top level must be an object");
  if (!doc.contains("points") || !doc["points"].is_array())
    throw std::invalid_argument("instance: 'points' must be an array");
  if (!doc.contains("triangles") || !doc["triangles"].is_array())
    throw std::invalid_argument("instance: 'triangles' must be an array");

  Instance inst;
  std::size_t idx = 0;
  for (const auto& entry : doc["points"]) {
    if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number_integer() ||
        !entry[1].is_number_integer())
      throw std::invalid_argument("instance: points[" + std::to_string(idx) +
                                  "] must be a pair of integers");
    inst.points.points.push_back(
        {Rational(entry[0].get<long long>()), Rational(entry[1].get<long long>())});
    ++idx;
  }
  idx = 0;
  for (const auto& entry : doc["triangles"]) {
    if (!entry.is_array() || entry.size() != 3 || !entry[0].is_number_integer() ||
        !entry[1].is_number_integer() || !entry[2].is_number_integer())
      throw std::invalid_argument("instance: triangles[" + std::to_string(idx) +
                                  "] must be a triple of integers");
    const long long i = entry[0].get<long long>();
    const long long j = entry[1].get<long long>();
    const long long k = entry[2].get<long long>();
    const long long n = static_cast<long long>(inst.points.size());
    if (i < 0 || i >= n || j < 0 || j >= n || k < 0 || k >= n)
      throw std::invalid_argument("instance: triangles[" + std::to_string(idx) +
                                  "] index out of range");
    if (i == j || j == k || i == k)
      throw std::invalid_argument("instance: triangles[" + std::to_string(idx) +
                                  "] has repeated vertices");
    inst.triangles.emplace_back(static_cast<int>(i), static_cast<int>(j), static_cast<int>(k));
    ++idx;
  }
  return inst;
}

inline Instance parse_instance_text(const std::string& text) {
  return instance_from_json(parse_json_text(text, "instance"));
}

inline Instance load_instance(const std::string& path) {
  return parse_instance_text(read_text_file(path));
}

// Instance emission assumes integer coordinates (the file schema); the
// generators only ever produce integers.
inline Json instance_to_json(const Instance& inst) {
  Json doc;
  doc["points"] = Json::array();
  for (const Point2& p : inst.points.points) {
    if (rational_den(p.x) != 1 || rational_den(p.y) != 1)
      throw std::invalid_argument("instance files require integer coordinates");
    doc["points"].push_back({std::stoll(rational_num(p.x).str()),
                             std::stoll(rational_num(p.y).str())});
  }
  doc["triangles"] = Json::array();
  for (const Triangle& t : inst.triangles) doc["triangles"].push_back({t.v[0], t.v[1], t.v[2]});
  return doc;
}

inline std::string dump_json(const Json& doc) { return doc.dump(2) + "\n"; }

inline Json certificate_to_json(const SelectionCertificate& c) {
  Json doc;
  doc["n"] = c.n;
  doc["m"] = c.m;
  doc["m_discarded"] = c.m_discarded;
  doc["j_star"] = c.j_star;
  doc["m_j"] = c.m_j;
  doc["M0_size"] = c.M0_size;
  doc["n0"] = c.n0;
  doc["M1_size"] = c.M1_size;
  doc["n1"] = c.n1;
  doc["M2_size"] = c.M2_size;
  doc["n2"] = c.n2;
  doc["levels_used"] = c.levels_used;
  doc["z0_retries"] = c.z0_retries;
  doc["shear_eps"] = to_fraction_string(c.shear_eps);
  doc["z0"] = to_fraction_string(c.z0);
  doc["x0"] = Json{{"x", to_fraction_string(c.x0.x)}, {"y", to_fraction_string(c.x0.y)}};
  doc["depth_pairs"] = c.depth_pairs;
  doc["depth_triangles"] = c.depth_triangles;
  doc["bound_rhs"] = to_fraction_string(c.bound_rhs);
  doc["chain_checks"] = Json::array();
  for (const ChainCheck& check : c.chain_checks) {
    doc["chain_checks"].push_back(Json{{"name", check.name},
                                       {"lhs", to_fraction_string(check.lhs)},
                                       {"op", check.op},
                                       {"rhs", to_fraction_string(check.rhs)},
                                       {"pass", check.pass}});
  }
  return doc;
}

inline SelectionCertificate certificate_from_json(const Json& doc) {
  const auto require = [&doc](const char* key) -> const Json& {
    if (!doc.contains(key))
      throw std::invalid_argument(std::string("certificate: missing field '") + key + "'");
    return doc[key];
  };
  SelectionCertificate c;
  c.n = require("n").get<std::size_t>();
  c.m = require("m").get<std::size_t>();
  c.m_discarded = require("m_discarded").get<std::size_t>();
  c.j_star = require("j_star").get<int>();
  c.m_j = require("m_j").get<std::size_t>();
  c.M0_size = require("M0_size").get<std::size_t>();
  c.n0 = require("n0").get<std::size_t>();
  c.M1_size = require("M1_size").get<std::size_t>();
  c.n1 = require("n1").get<std::size_t>();
  c.M2_size = require("M2_size").get<std::size_t>();
  c.n2 = require("n2").get<std::size_t>();
  c.levels_used = require("levels_used").get<int>();
  c.z0_retries = require("z0_retries").get<std::size_t>();
  c.shear_eps = parse_fraction(require("shear_eps").get<std::string>());
  c.z0 = parse_fraction(require("z0").get<std::string>());
  const Json& x0 = require("x0");
  c.x0 = {parse_fraction(x0.at("x").get<std::string>()),
          parse_fraction(x0.at("y").get<std::string>())};
  c.depth_pairs = require("depth_pairs").get<std::size_t>();
  c.depth_triangles = require("depth_triangles").get<std::size_t>();
  c.bound_rhs = parse_fraction(require("bound_rhs").get<std::string>());
  for (const Json& entry : require("chain_checks")) {
    ChainCheck check;
    check.name = entry.at("name").get<std::string>();
    check.lhs = parse_fraction(entry.at("lhs").get<std::string>());
    check.op = entry.at("op").get<std::string>();
    check.rhs = parse_fraction(entry.at("rhs").get<std::string>());
    check.pass = entry.at("pass").get<bool>();
    c.chain_checks.push_back(std::move(check));
  }
  return c;
}

inline SelectionCertificate load_certificate(const std::string& path) {
  return certificate_from_json(parse_json_text(read_text_file(path), "certificate"));
}

}  // namespace trisel
