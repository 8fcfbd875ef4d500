#pragma once

#include <span>
#include <string>
#include <vector>

#include "halo/ball.hpp"
#include "halo/box_set.hpp"

namespace halo {

// Geometry JSON schema:
//   {"dim": n,
//    "boxes": [[["lo","hi"], ...axis...], ...box...],
//    "balls": [{"c": [..], "r": ..}, ...]}
// Box coordinates are exact scalars serialized as "num/den" strings (plain
// integers and "p/q" accepted on input); ball data is binary floating point.
struct Geometry {
  int dim = 0;
  BoxSet boxes;
  std::vector<Ball> balls;
};

// Throws std::invalid_argument on malformed input.
Geometry parse_geometry_json(const std::string& text);

std::string geometry_to_json(const BoxSet& boxes, std::span<const Ball> balls = {});

}  // namespace halo
