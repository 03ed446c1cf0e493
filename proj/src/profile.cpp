#include "diamond/profile.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <numbers>

#include <nlohmann/json.hpp>

#include "diamond/checked_int.hpp"

namespace diamond {

using detail::checked_add;
using detail::checked_mul;
__extension__ using wide = __int128;

namespace {

ValidationIssue issue(ErrorCode code, std::string message) { return {code, std::move(message)}; }

std::int64_t piece_value(const Piece& piece, std::int64_t x) {
  return checked_add(piece.alpha, checked_mul(piece.beta, x));
}

}  // namespace

std::optional<ValidationIssue> validate(const Profile& profile) {
  if (profile.M < 1) return issue(ErrorCode::MalformedKnots, "M must be positive");
  if (profile.pieces.empty()) return issue(ErrorCode::MalformedKnots, "profile has no pieces");
  if (profile.knots.size() != profile.pieces.size() + 1) {
    return issue(ErrorCode::MalformedKnots, "expected one more knot than pieces");
  }
  if (profile.knots.front() != 0) return issue(ErrorCode::MalformedKnots, "first knot must be 0");
  if (profile.knots.back() != profile.M) return issue(ErrorCode::MalformedKnots, "last knot must equal M");
  for (std::size_t i = 1; i < profile.knots.size(); ++i) {
    if (profile.knots[i] <= profile.knots[i - 1]) {
      return issue(ErrorCode::MalformedKnots, "knots must be strictly increasing");
    }
  }
  for (std::size_t l = 0; l < profile.pieces.size(); ++l) {
    if (profile.pieces[l].alpha < 0 || profile.pieces[l].beta < 0) {
      return issue(ErrorCode::NegativeCoefficient, "piece " + std::to_string(l + 1) + " has a negative coefficient");
    }
  }
  const Piece& first = profile.pieces.front();
  if (first.alpha != 0) return issue(ErrorCode::NonPositiveFirstSlope, "first piece must pass through the origin (alpha_1 = 0)");
  if (first.beta <= 0) return issue(ErrorCode::NonPositiveFirstSlope, "first piece needs beta_1 > 0");
  try {
    for (std::size_t l = 0; l + 1 < profile.pieces.size(); ++l) {
      const std::int64_t t = profile.knots[l + 1];
      if (piece_value(profile.pieces[l], t) != piece_value(profile.pieces[l + 1], t)) {
        return issue(ErrorCode::DiscontinuousAtKnot, "pieces " + std::to_string(l + 1) + " and " + std::to_string(l + 2) +
                                                         " disagree at t = " + std::to_string(t));
      }
    }
    // Pieces are linear, so r >= 1 on the integers of [t_{l-1}, t_l] iff it
    // holds at the integer endpoints (the left end of piece 1 is x = 1).
    for (std::size_t l = 0; l < profile.pieces.size(); ++l) {
      const std::int64_t lo = std::max<std::int64_t>(profile.knots[l], 1);
      const std::int64_t hi = profile.knots[l + 1];
      if (piece_value(profile.pieces[l], lo) < 1 || piece_value(profile.pieces[l], hi) < 1) {
        return issue(ErrorCode::EmptyParallel, "piece " + std::to_string(l + 1) + " leaves a parallel without points");
      }
    }
    (void)total_points(profile);
  } catch (const Error& e) {
    return issue(e.code(), e.what());
  }
  return std::nullopt;
}

void ensure_valid(const Profile& profile) {
  if (auto problem = validate(profile)) throw Error(problem->code, problem->message);
}

std::int64_t eval_piece(const Profile& profile, std::size_t ell, std::int64_t x) {
  return piece_value(profile.pieces.at(ell), x);
}

std::int64_t eval_r(const Profile& profile, std::int64_t j) {
  if (j < 1 || j > 2 * profile.M - 1) {
    throw Error(ErrorCode::OutOfRange, "parallel index " + std::to_string(j) + " outside [1, " +
                                           std::to_string(2 * profile.M - 1) + "]");
  }
  const std::int64_t x = j <= profile.M ? j : 2 * profile.M - j;
  // A knot shared by two pieces resolves to the left one; continuity makes
  // either choice correct.
  const auto it = std::lower_bound(profile.knots.begin() + 1, profile.knots.end(), x);
  const auto ell = static_cast<std::size_t>(it - (profile.knots.begin() + 1));
  return piece_value(profile.pieces[ell], x);
}

std::vector<std::int64_t> counts(const Profile& profile) {
  std::vector<std::int64_t> out;
  out.reserve(static_cast<std::size_t>(profile.parallels()));
  for (std::int64_t j = 1; j <= profile.parallels(); ++j) out.push_back(eval_r(profile, j));
  return out;
}

std::int64_t total_points(const Profile& profile) {
  // 2 - r(M) + 2 * sum_{j=1}^{M} r(j), piece by piece over j in (t_lo, t_hi].
  wide half = 0;
  for (std::size_t l = 0; l < profile.pieces.size(); ++l) {
    const wide lo = profile.knots[l];
    const wide hi = profile.knots[l + 1];
    const wide n = hi - lo;
    half += n * profile.pieces[l].alpha + profile.pieces[l].beta * ((lo + 1 + hi) * n / 2);
  }
  const wide total = 2 - static_cast<wide>(eval_r(profile, profile.M)) + 2 * half;
  if (total > std::numeric_limits<std::int64_t>::max()) {
    throw Error(ErrorCode::IntegerOverflow, "point count exceeds 64-bit range");
  }
  return static_cast<std::int64_t>(total);
}

Profile builtin_simple(std::int64_t K, std::int64_t M) {
  if (K < 1 || M < 1) throw Error(ErrorCode::InvalidArgument, "simple profile needs K >= 1 and M >= 1");
  Profile p{M, {0, M}, {{0, K}}, "simple:K=" + std::to_string(K) + ",M=" + std::to_string(M)};
  ensure_valid(p);
  return p;
}

Profile builtin_elaborated(std::int64_t m) {
  if (m < 1) throw Error(ErrorCode::InvalidArgument, "elaborated profile needs m >= 1");
  Profile p{checked_mul(4, m), {0, 2 * m, 3 * m, 4 * m}, {{0, 6}, {6 * m, 3}, {12 * m, 1}},
            "elaborated:m=" + std::to_string(m)};
  ensure_valid(p);
  return p;
}

Profile builtin_quasioptimal(std::int64_t m) {
  if (m < 1) throw Error(ErrorCode::InvalidArgument, "quasioptimal profile needs m >= 1");
  Profile p{checked_mul(7, m),
            {0, 2 * m, 3 * m, 4 * m, 5 * m, 6 * m, 7 * m},
            {{0, 6}, {2 * m, 5}, {5 * m, 4}, {9 * m, 3}, {14 * m, 2}, {20 * m, 1}},
            "quasioptimal:m=" + std::to_string(m)};
  ensure_valid(p);
  return p;
}

double heuristic_r(double K0, std::int64_t p, std::int64_t j) {
  const double q = static_cast<double>(p + 1);
  return K0 * std::numbers::pi * std::sin(static_cast<double>(j) * std::numbers::pi / q) /
         std::sin(std::numbers::pi / (2.0 * q));
}

ProfileLint lint(const Profile& profile) {
  ProfileLint out;
  const auto M = static_cast<double>(profile.M);
  for (const Piece& piece : profile.pieces) {
    out.A = std::max({out.A, static_cast<double>(piece.alpha) / M, static_cast<double>(piece.beta)});
  }
  if (profile.knots.size() >= 2) out.c = static_cast<double>(profile.knots[1]) / M;
  return out;
}

namespace {

[[noreturn]] void bad_spec(std::string_view spec, const std::string& why) {
  throw Error(ErrorCode::BadSpec, "'" + std::string(spec) + "': " + why);
}

std::int64_t parse_int(std::string_view spec, std::string_view text) {
  std::int64_t value = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end) bad_spec(spec, "'" + std::string(text) + "' is not an integer");
  return value;
}

}  // namespace

Profile parse_profile_spec(std::string_view spec) {
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos) bad_spec(spec, "expected name:key=value[,key=value]");
  const std::string_view name = spec.substr(0, colon);
  const std::string_view rest = spec.substr(colon + 1);

  if (name == "file") {
    std::ifstream in{std::string(rest)};
    if (!in) bad_spec(spec, "cannot open profile file");
    nlohmann::json doc;
    try {
      in >> doc;
    } catch (const nlohmann::json::exception& e) {
      bad_spec(spec, e.what());
    }
    try {
      Profile p = profile_from_json(doc);
      p.name = std::string(spec);
      return p;
    } catch (const Error& e) {
      bad_spec(spec, e.what());
    }
  }

  std::map<std::string, std::int64_t, std::less<>> params;
  std::size_t pos = 0;
  while (pos <= rest.size()) {
    const auto comma = rest.find(',', pos);
    const std::string_view item = rest.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos || eq == 0) bad_spec(spec, "expected key=value, got '" + std::string(item) + "'");
    const std::string key(item.substr(0, eq));
    if (params.contains(key)) bad_spec(spec, "duplicate key '" + key + "'");
    params[key] = parse_int(spec, item.substr(eq + 1));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }

  auto take = [&](const char* key) {
    auto it = params.find(key);
    if (it == params.end()) bad_spec(spec, std::string("missing key '") + key + "'");
    const std::int64_t v = it->second;
    params.erase(it);
    if (v < 1) bad_spec(spec, std::string(key) + " must be >= 1");
    return v;
  };

  Profile out;
  try {
    if (name == "simple") {
      const auto K = take("K");
      const auto M = take("M");
      if (!params.empty()) bad_spec(spec, "unknown key '" + params.begin()->first + "'");
      out = builtin_simple(K, M);
    } else if (name == "elaborated" || name == "quasioptimal") {
      const auto m = take("m");
      if (!params.empty()) bad_spec(spec, "unknown key '" + params.begin()->first + "'");
      out = name == "elaborated" ? builtin_elaborated(m) : builtin_quasioptimal(m);
    } else {
      bad_spec(spec, "unknown profile family '" + std::string(name) + "'");
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::BadSpec) throw;
    bad_spec(spec, e.what());
  }
  return out;
}

nlohmann::json to_json(const Profile& profile) {
  nlohmann::json pieces = nlohmann::json::array();
  for (const Piece& piece : profile.pieces) pieces.push_back({piece.alpha, piece.beta});
  return {{"M", profile.M}, {"knots", profile.knots}, {"pieces", pieces}};
}

namespace {

std::int64_t json_integer(const nlohmann::json& v, ErrorCode code, const char* what) {
  if (v.is_number_integer()) return v.get<std::int64_t>();
  if (v.is_number_float()) {
    const double d = v.get<double>();
    if (std::isfinite(d) && d == std::floor(d) && std::abs(d) < 9.0e15) return static_cast<std::int64_t>(d);
  }
  throw Error(code, std::string(what) + " must be an integer, got " + v.dump());
}

}  // namespace

Profile profile_from_json(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("M") || !doc.contains("knots") || !doc.contains("pieces")) {
    throw Error(ErrorCode::MalformedKnots, "profile JSON needs M, knots and pieces");
  }
  if (!doc["knots"].is_array() || !doc["pieces"].is_array()) {
    throw Error(ErrorCode::MalformedKnots, "knots and pieces must be arrays");
  }
  Profile p;
  p.M = json_integer(doc["M"], ErrorCode::NonIntegerKnot, "M");
  for (const auto& k : doc["knots"]) p.knots.push_back(json_integer(k, ErrorCode::NonIntegerKnot, "knot"));
  for (const auto& piece : doc["pieces"]) {
    if (!piece.is_array() || piece.size() != 2) {
      throw Error(ErrorCode::MalformedKnots, "each piece must be [alpha, beta]");
    }
    p.pieces.push_back({json_integer(piece[0], ErrorCode::NonIntegerCoefficient, "alpha"),
                        json_integer(piece[1], ErrorCode::NonIntegerCoefficient, "beta")});
  }
  ensure_valid(p);
  return p;
}

}  // namespace diamond
