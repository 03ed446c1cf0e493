#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "diamond/parallel.hpp"
#include "diamond/profile.hpp"

namespace diamond {

/// log(num / den) for positive integers, accurate near num == den.
double log_ratio(std::int64_t num, std::int64_t den);

using Vec3 = std::array<double, 3>;

/// Parallels of an Omega(p, r_j, z_j) construction.
///
/// Optimal layouts (from optimal_heights) keep each height as the exact
/// integer numerator u_j of 1 - z_j over N - 1, and every quantity near the
/// poles (1 - z, 1 + z, 1 - z^2 and their logarithms) is derived from u_j
/// instead of from the rounded z_j. General layouts carry user heights only.
class ParallelLayout {
 public:
  std::size_t p() const { return counts_.size(); }
  std::int64_t N() const { return N_; }
  std::span<const std::int64_t> counts() const { return counts_; }
  std::int64_t count(std::size_t j) const { return counts_[j]; }
  std::span<const double> heights() const { return z_; }
  double z(std::size_t j) const { return z_[j]; }

  /// True when heights are the closed-form optimum stored as exact numerators.
  bool exact() const { return !numerators_.empty(); }
  /// u_j = (N - 1)(1 - z_j); only for exact layouts.
  std::span<const std::int64_t> numerators() const { return numerators_; }

  double one_minus_z(std::size_t j) const;
  double one_plus_z(std::size_t j) const;
  double log_one_minus_z(std::size_t j) const;
  double log_one_plus_z(std::size_t j) const;
  double log_one_minus_z2(std::size_t j) const { return log_one_minus_z(j) + log_one_plus_z(j); }
  /// sqrt(1 - z_j^2), never from a negative radicand.
  double radius(std::size_t j) const;

  /// r_j == r_{p+1-j} for all j.
  bool symmetric_counts() const;

  friend ParallelLayout optimal_heights(std::span<const std::int64_t> counts);
  friend ParallelLayout layout_with_heights(std::span<const std::int64_t> counts, std::span<const double> heights);

 private:
  std::vector<std::int64_t> counts_;
  std::vector<std::int64_t> numerators_;
  std::vector<double> z_;
  std::int64_t N_ = 0;
};

/// Heights minimizing the expected log-energy for fixed counts:
/// z_l = 1 - (1 + r_l + 2 sum_{k<l} r_k) / (N - 1).
ParallelLayout optimal_heights(std::span<const std::int64_t> counts);

/// General construction with caller-supplied heights, which must be strictly
/// decreasing inside (-1, 1).
ParallelLayout layout_with_heights(std::span<const std::int64_t> counts, std::span<const double> heights);

ParallelLayout layout_from_profile(const Profile& profile);

/// Closed form of the height numerator on one piece of the profile.
///
/// For t_{l-1} <= x <= t_l,
///   u_l(x) = 1 + 2 N_l - r(x) + 2 alpha (x - t_{l-1} + 1) + beta (x + t_{l-1})(x - t_{l-1} + 1)
/// with N_l = r_1 + ... + r_{t_{l-1}-1}, so that u_l(j) = u_j and
/// z_l(x) = 1 - u_l(x) / (N - 1). Note u_l'(x) = 2 r(x).
struct PieceHeight {
  double alpha = 0.0;
  double beta = 0.0;
  double t_lo = 0.0;
  double t_hi = 0.0;
  double base = 0.0;  // 1 + 2 N_l
  double n_minus_1 = 0.0;

  double r(double x) const { return alpha + beta * x; }
  double u(double x) const {
    const double k = x - t_lo + 1.0;
    return base - r(x) + 2.0 * alpha * k + beta * (x + t_lo) * k;
  }
  double z(double x) const { return 1.0 - u(x) / n_minus_1; }
};

/// Piece `ell` is 0-based here (the first piece is ell = 0).
PieceHeight piece_height(const Profile& profile, std::size_t ell);

/// z_ell(x); throws OutOfPiece unless t_{ell} <= x <= t_{ell+1} (0-based ell).
double height_polynomial(const Profile& profile, std::size_t ell, double x);

struct PointSet {
  /// North pole, then parallel 1..p each in i = 1..r_j order, then south pole.
  std::vector<Vec3> points;
  std::vector<double> phases;
  ParallelLayout layout;
  std::uint64_t seed = 0;
  std::string profile;
};

/// Index of the first point of parallel j (0-based) inside PointSet::points.
std::size_t parallel_offset(const ParallelLayout& layout, std::size_t j);

/// Draws theta_1..theta_p from SplitMix64(seed), in order, then places
/// x_j^i = (rho_j cos(2 pi i / r_j + theta_j), rho_j sin(...), z_j).
PointSet sample(const ParallelLayout& layout, std::uint64_t seed, std::string profile_name = {},
                unsigned threads = thread_count());

}  // namespace diamond
