#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "diamond/error.hpp"

namespace diamond {

/// One linear piece r(x) = alpha + beta * x.
struct Piece {
  std::int64_t alpha = 0;
  std::int64_t beta = 0;

  double operator()(double x) const { return static_cast<double>(alpha) + static_cast<double>(beta) * x; }
  friend bool operator==(const Piece&, const Piece&) = default;
};

/// Symmetric piecewise-linear population function. Only the half [0, M] is
/// stored; for M < x <= 2M the profile is read through r(x) = r(2M - x), and
/// parallel j (1 <= j <= 2M-1) carries r(j) points.
struct Profile {
  std::int64_t M = 0;
  std::vector<std::int64_t> knots;  // 0 = t_0 < t_1 < ... < t_n = M
  std::vector<Piece> pieces;        // pieces[l] lives on [knots[l], knots[l+1]]
  std::string name;                 // informational, e.g. "quasioptimal:m=2"

  std::size_t piece_count() const { return pieces.size(); }
  std::int64_t parallels() const { return 2 * M - 1; }

  friend bool operator==(const Profile& a, const Profile& b) {
    return a.M == b.M && a.knots == b.knots && a.pieces == b.pieces;
  }
};

struct ValidationIssue {
  ErrorCode code;
  std::string message;
};

/// First violated invariant, or nullopt when the profile is well formed.
std::optional<ValidationIssue> validate(const Profile& profile);

/// Throws Error carrying the first violated invariant.
void ensure_valid(const Profile& profile);

/// r(j) for parallel j in [1, 2M-1].
std::int64_t eval_r(const Profile& profile, std::int64_t j);

/// Value of piece `ell` (0-based) at x without range checks; used to compare
/// adjacent pieces at shared knots.
std::int64_t eval_piece(const Profile& profile, std::size_t ell, std::int64_t x);

/// r_1..r_{2M-1}.
std::vector<std::int64_t> counts(const Profile& profile);

/// N = 2 + sum_j r_j, exact.
std::int64_t total_points(const Profile& profile);

Profile builtin_simple(std::int64_t K, std::int64_t M);
Profile builtin_elaborated(std::int64_t m);
Profile builtin_quasioptimal(std::int64_t m);

/// Real-valued reference curve K0*pi*sin(j*pi/(p+1)) / sin(pi/(2(p+1))).
double heuristic_r(double K0, std::int64_t p, std::int64_t j);

/// Smallest A >= 2 with alpha_l <= A*M and beta_l <= A, and the largest c
/// with t_1 >= c*M. These are hypotheses of the asymptotic expansion, not
/// well-formedness conditions, so they are only reported.
struct ProfileLint {
  double A = 2.0;
  double c = 0.0;
};
ProfileLint lint(const Profile& profile);

/// Built-in spec strings: "simple:K=4,M=20", "elaborated:m=4",
/// "quasioptimal:m=2". "file:<path>" loads a JSON profile. Throws BadSpec.
Profile parse_profile_spec(std::string_view spec);

/// {"M":int, "knots":[int...], "pieces":[[alpha,beta]...]}
nlohmann::json to_json(const Profile& profile);
Profile profile_from_json(const nlohmann::json& doc);

}  // namespace diamond
