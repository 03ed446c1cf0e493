#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "diamond/ensemble.hpp"

namespace diamond {

/// Header `x,y,z`, one point per row, 17 significant digits.
void write_points_csv(std::ostream& out, std::span<const Vec3> points);

/// Parses the format above. Rows must hold three finite numbers (MalformedCsv)
/// whose Euclidean norm is within 1e-6 of 1 (NonUnitPoint).
std::vector<Vec3> read_points_csv(std::istream& in);

/// {seed, generator_id, profile, N, p, counts, phases[], ordering}
nlohmann::json sidecar_json(const PointSet& set);

/// Sidecar plus a "points" array of [x, y, z] rows.
nlohmann::json point_set_json(const PointSet& set);

}  // namespace diamond
