#pragma once

#include <array>
#include <set>
#include <vector>

#include "deltashape/geometry.hpp"

namespace deltashape {

/// Reference Delaunay enumerator: accepts every vertex triple whose open
/// circumdisk contains no other point, resolving cocircular groups as the fan
/// from their lowest-index point. O(n^4); intended for cross-checking the
/// mesh builder, with its own long-double predicates.
std::set<std::array<int, 3>> delaunay_bruteforce(const std::vector<Vec2>& points);

}  // namespace deltashape
