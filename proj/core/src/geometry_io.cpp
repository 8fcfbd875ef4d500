#include "halo/geometry_io.hpp"

#include <stdexcept>

#include <json.hpp>

namespace halo {

Geometry parse_geometry_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("geometry: invalid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("dim") || !j["dim"].is_number_integer())
    throw std::invalid_argument("geometry: missing integer 'dim'");
  Geometry g;
  g.dim = j["dim"].get<int>();
  if (g.dim < 1 || g.dim > 3) throw std::invalid_argument("geometry: dim must be 1..3");

  std::vector<Box> raw;
  if (j.contains("boxes")) {
    if (!j["boxes"].is_array()) throw std::invalid_argument("geometry: 'boxes' must be an array");
    for (const auto& jb : j["boxes"]) {
      if (!jb.is_array() || static_cast<int>(jb.size()) != g.dim)
        throw std::invalid_argument("geometry: box axis count must equal dim");
      Box b;
      for (const auto& ax : jb) {
        if (!ax.is_array() || ax.size() != 2 || !ax[0].is_string() || !ax[1].is_string())
          throw std::invalid_argument("geometry: box axis must be [\"lo\",\"hi\"] strings");
        const Rational lo = Rational::parse(ax[0].get<std::string>());
        const Rational hi = Rational::parse(ax[1].get<std::string>());
        if (!(lo < hi)) throw std::invalid_argument("geometry: box axis needs lo < hi");
        b.axes.emplace_back(lo, hi);
      }
      raw.push_back(std::move(b));
    }
  }
  g.boxes = BoxSet::from_raw(g.dim, std::move(raw));

  if (j.contains("balls")) {
    if (!j["balls"].is_array()) throw std::invalid_argument("geometry: 'balls' must be an array");
    for (const auto& jb : j["balls"]) {
      if (!jb.is_object() || !jb.contains("c") || !jb.contains("r") || !jb["c"].is_array() ||
          static_cast<int>(jb["c"].size()) != g.dim || !jb["r"].is_number())
        throw std::invalid_argument("geometry: ball must be {\"c\":[..dim..],\"r\":number}");
      std::vector<double> c;
      for (const auto& v : jb["c"]) {
        if (!v.is_number()) throw std::invalid_argument("geometry: ball center must be numeric");
        c.push_back(v.get<double>());
      }
      const double r = jb["r"].get<double>();
      if (!(r > 0.0)) throw std::invalid_argument("geometry: ball radius must be positive");
      g.balls.emplace_back(std::move(c), r);
    }
  }
  return g;
}

std::string geometry_to_json(const BoxSet& boxes, std::span<const Ball> balls) {
  nlohmann::ordered_json j;
  j["dim"] = boxes.dim();
  auto jboxes = nlohmann::ordered_json::array();
  for (const auto& b : boxes.boxes()) {
    auto jb = nlohmann::ordered_json::array();
    for (const auto& ax : b.axes) jb.push_back({ax.lo.str(), ax.hi.str()});
    jboxes.push_back(std::move(jb));
  }
  j["boxes"] = std::move(jboxes);
  if (!balls.empty()) {
    auto jballs = nlohmann::ordered_json::array();
    for (const auto& b : balls) jballs.push_back({{"c", b.center}, {"r", b.radius}});
    j["balls"] = std::move(jballs);
  }
  return j.dump(2) + "\n";
}

}  // namespace halo
