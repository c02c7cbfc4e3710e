// On-disk formats: the fan document ({"rank", "rays", "cones"}, JSON) with a
// canonical emitter that round-trips bit-exactly, and divisor coefficient
// files (whitespace-separated integers aligned with the fan's ray order).
#pragma once

#include "toric/fan.hpp"
#include "toric/divisor.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace toric {

inline long long to_i64(const Int& v) {
  if (v > Int(std::numeric_limits<long long>::max()) ||
      v < Int(std::numeric_limits<long long>::min()))
    throw Error("Overflow", "value too large for the document format");
  return static_cast<long long>(v);
}

inline nlohmann::json fan_to_json(const Fan& fan) {
  nlohmann::json j;
  j["rank"] = fan.rank;
  auto& rays = j["rays"] = nlohmann::json::array();
  for (const auto& r : fan.rays) {
    nlohmann::json row = nlohmann::json::array();
    for (const Int& x : r) row.push_back(to_i64(x));
    rays.push_back(std::move(row));
  }
  auto& cones = j["cones"] = nlohmann::json::array();
  for (const auto& c : fan.max_cones) cones.push_back(c.rays);
  return j;
}

inline Fan fan_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("rank") || !j.contains("rays") || !j.contains("cones"))
    throw Error("ParseError", "fan document needs fields rank, rays, cones");
  int rank = j.at("rank").get<int>();
  std::vector<LatticeVector> rays;
  for (const auto& row : j.at("rays")) {
    LatticeVector v;
    for (const auto& x : row) v.push_back(Int(x.get<long long>()));
    rays.push_back(std::move(v));
  }
  std::vector<std::vector<int>> cones;
  for (const auto& c : j.at("cones")) cones.push_back(c.get<std::vector<int>>());
  return make_fan(rank, std::move(rays), std::move(cones));
}

inline std::string emit_fan(const Fan& fan) { return fan_to_json(fan).dump(2) + "\n"; }

inline Fan parse_fan(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error("ParseError", std::string("fan document: ") + e.what());
  }
  return fan_from_json(j);
}

inline Fan read_fan_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("IOError", "cannot open fan file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_fan(ss.str());
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error("IOError", "cannot write file '" + path + "'");
  out << text;
}

// Divisor files: integer coefficients separated by whitespace, aligned with
// the fan's ray order.
inline TorusInvariantDivisor parse_divisor(const std::string& text) {
  TorusInvariantDivisor d;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    try {
      d.coeff.push_back(Int(tok));
    } catch (const std::exception&) {
      throw Error("ParseError", "divisor coefficient '" + tok + "' is not an integer");
    }
  }
  return d;
}

inline TorusInvariantDivisor read_divisor_file(const std::string& path, const Fan& fan) {
  std::ifstream in(path);
  if (!in) throw Error("IOError", "cannot open divisor file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  TorusInvariantDivisor d = parse_divisor(ss.str());
  if (d.coeff.size() != fan.rays.size())
    throw Error("ParseError", "divisor has " + std::to_string(d.coeff.size()) +
                                  " coefficients but the fan has " +
                                  std::to_string(fan.rays.size()) + " rays");
  return d;
}

inline std::string emit_divisor(const TorusInvariantDivisor& d) {
  std::string out;
  for (std::size_t i = 0; i < d.coeff.size(); ++i) {
    if (i) out += " ";
    out += d.coeff[i].str();
  }
  return out + "\n";
}

}  // namespace toric
