#include "diamond/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <string>

#include <nlohmann/json.hpp>

#include "diamond/rng.hpp"

namespace diamond {

void write_points_csv(std::ostream& out, std::span<const Vec3> points) {
  out << "x,y,z\n";
  char line[96];
  for (const Vec3& p : points) {
    const int n = std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g\n", p[0], p[1], p[2]);
    out.write(line, n);
  }
}

namespace {

[[noreturn]] void malformed(std::size_t row, const std::string& why) {
  throw Error(ErrorCode::MalformedCsv, "row " + std::to_string(row) + ": " + why);
}

double parse_field(std::string_view text, std::size_t row) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\r')) text.remove_suffix(1);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) malformed(row, "'" + std::string(text) + "' is not a number");
  if (!std::isfinite(value)) malformed(row, "non-finite coordinate");
  return value;
}

}  // namespace

std::vector<Vec3> read_points_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::MalformedCsv, "empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "x,y,z") throw Error(ErrorCode::MalformedCsv, "expected header 'x,y,z'");

  std::vector<Vec3> points;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty() || line == "\r") continue;
    std::string_view rest(line);
    Vec3 p{};
    for (std::size_t k = 0; k < 3; ++k) {
      const auto comma = rest.find(',');
      if ((k < 2) == (comma == std::string_view::npos)) malformed(row, "expected three comma-separated fields");
      p[k] = parse_field(rest.substr(0, comma), row);
      if (comma != std::string_view::npos) rest.remove_prefix(comma + 1);
    }
    const double norm = std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
    if (std::abs(norm - 1.0) > 1e-6) {
      throw Error(ErrorCode::NonUnitPoint, "row " + std::to_string(row) + " has norm " + std::to_string(norm));
    }
    points.push_back(p);
  }
  return points;
}

nlohmann::json sidecar_json(const PointSet& set) {
  std::vector<std::int64_t> counts(set.layout.counts().begin(), set.layout.counts().end());
  return {{"seed", set.seed},
          {"generator_id", SplitMix64::kGeneratorId},
          {"profile", set.profile},
          {"N", set.layout.N()},
          {"p", set.layout.p()},
          {"counts", counts},
          {"phases", set.phases},
          {"ordering", "north pole, parallels 1..p with i = 1..r_j, south pole"}};
}

nlohmann::json point_set_json(const PointSet& set) {
  nlohmann::json doc = sidecar_json(set);
  nlohmann::json rows = nlohmann::json::array();
  for (const Vec3& p : set.points) rows.push_back({p[0], p[1], p[2]});
  doc["points"] = std::move(rows);
  return doc;
}

}  // namespace diamond
