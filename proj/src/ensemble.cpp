#include "diamond/ensemble.hpp"

#include <cmath>
#include <numbers>

#include "diamond/checked_int.hpp"
#include "diamond/parallel.hpp"
#include "diamond/rng.hpp"

namespace diamond {

using detail::checked_add;
using detail::checked_mul;

double ParallelLayout::one_minus_z(std::size_t j) const {
  if (exact()) return static_cast<double>(numerators_[j]) / static_cast<double>(N_ - 1);
  return 1.0 - z_[j];
}

double log_ratio(std::int64_t num, std::int64_t den) {
  if (2 * num < den) return std::log(static_cast<double>(num) / static_cast<double>(den));
  return std::log1p(static_cast<double>(num - den) / static_cast<double>(den));
}

double ParallelLayout::one_plus_z(std::size_t j) const {
  if (exact()) return static_cast<double>(2 * (N_ - 1) - numerators_[j]) / static_cast<double>(N_ - 1);
  return 1.0 + z_[j];
}

double ParallelLayout::log_one_minus_z(std::size_t j) const {
  if (exact()) return log_ratio(numerators_[j], N_ - 1);
  return std::log1p(-z_[j]);
}

double ParallelLayout::log_one_plus_z(std::size_t j) const {
  if (exact()) return log_ratio(2 * (N_ - 1) - numerators_[j], N_ - 1);
  return std::log1p(z_[j]);
}

double ParallelLayout::radius(std::size_t j) const {
  if (exact()) {
    const auto u = static_cast<double>(numerators_[j]);
    const auto v = static_cast<double>(2 * (N_ - 1) - numerators_[j]);
    return std::sqrt(u) * std::sqrt(v) / static_cast<double>(N_ - 1);
  }
  return std::sqrt((1.0 - z_[j]) * (1.0 + z_[j]));
}

bool ParallelLayout::symmetric_counts() const {
  const std::size_t n = counts_.size();
  for (std::size_t j = 0; j < n / 2; ++j) {
    if (counts_[j] != counts_[n - 1 - j]) return false;
  }
  return true;
}

namespace {

std::int64_t checked_total(std::span<const std::int64_t> counts) {
  if (counts.empty()) throw Error(ErrorCode::EmptyCounts, "at least one parallel is required");
  std::int64_t n = 2;
  for (std::int64_t r : counts) {
    if (r < 1) throw Error(ErrorCode::EmptyParallel, "every parallel needs at least one point");
    n = checked_add(n, r);
  }
  // 2(N-1) must stay representable for the 1 + z numerators.
  (void)checked_mul(2, n);
  return n;
}

}  // namespace

ParallelLayout optimal_heights(std::span<const std::int64_t> counts) {
  ParallelLayout out;
  out.N_ = checked_total(counts);
  out.counts_.assign(counts.begin(), counts.end());
  out.numerators_.reserve(counts.size());
  out.z_.reserve(counts.size());
  const std::int64_t denom = out.N_ - 1;
  std::int64_t before = 0;
  for (std::int64_t r : counts) {
    const std::int64_t u = checked_add(checked_add(1, r), checked_mul(2, before));
    out.numerators_.push_back(u);
    // (N - 1 - u) / (N - 1) is the difference-of-sums form; the numerator is exact.
    out.z_.push_back(static_cast<double>(denom - u) / static_cast<double>(denom));
    before = checked_add(before, r);
  }
  return out;
}

ParallelLayout layout_with_heights(std::span<const std::int64_t> counts, std::span<const double> heights) {
  ParallelLayout out;
  out.N_ = checked_total(counts);
  if (heights.size() != counts.size()) {
    throw Error(ErrorCode::InvalidHeights, "need one height per parallel");
  }
  for (std::size_t j = 0; j < heights.size(); ++j) {
    if (!(heights[j] > -1.0 && heights[j] < 1.0)) {
      throw Error(ErrorCode::InvalidHeights, "heights must lie in (-1, 1)");
    }
    if (j > 0 && !(heights[j] < heights[j - 1])) {
      throw Error(ErrorCode::InvalidHeights, "heights must be strictly decreasing");
    }
  }
  out.counts_.assign(counts.begin(), counts.end());
  out.z_.assign(heights.begin(), heights.end());
  return out;
}

ParallelLayout layout_from_profile(const Profile& profile) {
  ensure_valid(profile);
  const auto r = counts(profile);
  return optimal_heights(r);
}

PieceHeight piece_height(const Profile& profile, std::size_t ell) {
  ensure_valid(profile);
  if (ell >= profile.piece_count()) throw Error(ErrorCode::OutOfPiece, "piece index out of range");
  const std::int64_t t_lo = profile.knots[ell];
  std::int64_t before = 0;  // N_l = r_1 + ... + r_{t_lo - 1}
  for (std::int64_t j = 1; j < t_lo; ++j) before = checked_add(before, eval_r(profile, j));
  PieceHeight out;
  out.alpha = static_cast<double>(profile.pieces[ell].alpha);
  out.beta = static_cast<double>(profile.pieces[ell].beta);
  out.t_lo = static_cast<double>(t_lo);
  out.t_hi = static_cast<double>(profile.knots[ell + 1]);
  out.base = static_cast<double>(checked_add(1, checked_mul(2, before)));
  out.n_minus_1 = static_cast<double>(total_points(profile) - 1);
  return out;
}

double height_polynomial(const Profile& profile, std::size_t ell, double x) {
  const PieceHeight piece = piece_height(profile, ell);
  if (!(x >= piece.t_lo && x <= piece.t_hi)) {
    throw Error(ErrorCode::OutOfPiece, "x outside piece " + std::to_string(ell + 1));
  }
  return piece.z(x);
}

std::size_t parallel_offset(const ParallelLayout& layout, std::size_t j) {
  std::size_t offset = 1;
  for (std::size_t k = 0; k < j; ++k) offset += static_cast<std::size_t>(layout.count(k));
  return offset;
}

PointSet sample(const ParallelLayout& layout, std::uint64_t seed, std::string profile_name, unsigned threads) {
  PointSet out;
  out.layout = layout;
  out.seed = seed;
  out.profile = std::move(profile_name);

  // All phases are drawn before any parallel work so the stream does not
  // depend on scheduling.
  SplitMix64 rng(seed);
  out.phases.resize(layout.p());
  for (double& theta : out.phases) theta = rng.next_phase();

  std::vector<std::size_t> offsets(layout.p());
  std::size_t next = 1;
  for (std::size_t j = 0; j < layout.p(); ++j) {
    offsets[j] = next;
    next += static_cast<std::size_t>(layout.count(j));
  }
  out.points.resize(static_cast<std::size_t>(layout.N()));
  out.points.front() = {0.0, 0.0, 1.0};
  out.points.back() = {0.0, 0.0, -1.0};

  parallel_for(layout.p(), [&](std::size_t j) {
    const double rho = layout.radius(j);
    const double z = layout.z(j);
    const auto r = layout.count(j);
    for (std::int64_t i = 1; i <= r; ++i) {
      const double angle = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(r) + out.phases[j];
      out.points[offsets[j] + static_cast<std::size_t>(i - 1)] = {rho * std::cos(angle), rho * std::sin(angle), z};
    }
  }, threads);
  return out;
}

}  // namespace diamond
