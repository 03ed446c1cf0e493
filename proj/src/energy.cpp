#include "diamond/energy.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include <nlohmann/json.hpp>

#include "diamond/compensated_sum.hpp"

namespace diamond {

nlohmann::json to_json(const EnergyBreakdown& b) {
  return {{"A", b.pole_terms}, {"B", b.intra_parallel}, {"C", b.cross_parallel},
          {"total", b.total},  {"N", b.N},              {"p", b.p}};
}

namespace {

constexpr std::size_t kRowBlock = 16;
constexpr double kMinSquaredDistance = 1e-28;

double squared_distance(const Vec3& a, const Vec3& b) {
  const double dx = a[0] - b[0];
  const double dy = a[1] - b[1];
  const double dz = a[2] - b[2];
  return dx * dx + dy * dy + dz * dz;
}

[[noreturn]] void duplicate(std::size_t i, std::size_t j) {
  throw Error(ErrorCode::DuplicatePoints,
              "points " + std::to_string(i) + " and " + std::to_string(j) + " are closer than 1e-14");
}

/// Sums term(i, j, d2) over unordered pairs i < j into kBuckets compensated
/// accumulators chosen by bucket(i, j).
template <std::size_t kBuckets, typename Term, typename Bucket>
std::array<double, kBuckets> blocked_pair_sum(std::span<const Vec3> pts, Term term, Bucket bucket, unsigned threads) {
  const std::size_t n = pts.size();
  const std::size_t blocks = (n + kRowBlock - 1) / kRowBlock;
  std::vector<std::array<CompensatedSum, kBuckets>> partial(blocks);
  parallel_for(
      blocks,
      [&](std::size_t b) {
        auto& acc = partial[b];
        const std::size_t end = std::min(n, (b + 1) * kRowBlock);
        for (std::size_t i = b * kRowBlock; i < end; ++i) {
          for (std::size_t j = i + 1; j < n; ++j) {
            const double d2 = squared_distance(pts[i], pts[j]);
            if (d2 < kMinSquaredDistance) duplicate(i, j);
            acc[bucket(i, j)].add(term(d2));
          }
        }
      },
      threads);
  std::array<CompensatedSum, kBuckets> total{};
  for (const auto& block : partial) {
    for (std::size_t k = 0; k < kBuckets; ++k) total[k].add(block[k]);
  }
  std::array<double, kBuckets> out{};
  for (std::size_t k = 0; k < kBuckets; ++k) out[k] = total[k].value();
  return out;
}

constexpr auto kSingleBucket = [](std::size_t, std::size_t) -> std::size_t { return 0; };

}  // namespace

double riesz_energy(std::span<const Vec3> points, double s, unsigned threads) {
  if (!(s > 0.0)) throw Error(ErrorCode::InvalidArgument, "Riesz exponent must be positive");
  const double half_s = 0.5 * s;
  const auto sums = blocked_pair_sum<1>(
      points, [half_s](double d2) { return std::pow(d2, -half_s); }, kSingleBucket, threads);
  return 2.0 * sums[0];
}

double log_energy(std::span<const Vec3> points, unsigned threads) {
  // Ordered pairs: -2 * sum_{i<j} log d_ij = -sum_{i<j} log d_ij^2.
  const auto sums = blocked_pair_sum<1>(
      points, [](double d2) { return std::log(d2); }, kSingleBucket, threads);
  return -sums[0];
}

double log_interaction(std::span<const Vec3> a, std::span<const Vec3> b) {
  CompensatedSum acc;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      const double d2 = squared_distance(a[i], b[j]);
      if (d2 < kMinSquaredDistance) duplicate(i, j);
      acc.add(std::log(d2));
    }
  }
  return -0.5 * acc.value();
}

EnergyBreakdown sampled_breakdown(const PointSet& set, unsigned threads) {
  const auto& layout = set.layout;
  if (set.points.size() != static_cast<std::size_t>(layout.N())) {
    throw Error(ErrorCode::InvalidArgument, "point set does not match its layout");
  }
  // group[i] = parallel index, or -1 for the two poles.
  std::vector<std::ptrdiff_t> group(set.points.size(), -1);
  for (std::size_t j = 0, at = 1; j < layout.p(); ++j) {
    for (std::int64_t i = 0; i < layout.count(j); ++i) group[at++] = static_cast<std::ptrdiff_t>(j);
  }
  const auto sums = blocked_pair_sum<3>(
      set.points, [](double d2) { return std::log(d2); },
      [&group](std::size_t i, std::size_t j) -> std::size_t {
        if (group[i] < 0 || group[j] < 0) return 0;
        return group[i] == group[j] ? 1 : 2;
      },
      threads);
  EnergyBreakdown out;
  out.pole_terms = -sums[0];
  out.intra_parallel = -sums[1];
  out.cross_parallel = -sums[2];
  out.total = out.pole_terms + out.intra_parallel + out.cross_parallel;
  out.N = layout.N();
  out.p = layout.p();
  return out;
}

double roots_of_unity_energy(std::int64_t n, double R) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "roots of unity energy needs n >= 2");
  if (!(R > 0.0)) throw Error(ErrorCode::InvalidArgument, "radius must be positive");
  const auto dn = static_cast<double>(n);
  return -dn * std::log(dn) - dn * (dn - 1.0) * std::log(R);
}

double expected_cross_pair(double zi, double zj) {
  const double hi = std::max(zi, zj);
  const double lo = std::min(zi, zj);
  return -0.5 * (std::log1p(hi) + std::log1p(-lo));
}

namespace {

double r_log_r(std::int64_t r) {
  const auto d = static_cast<double>(r);
  return d * std::log(d);
}

/// sum_{j<k} r_j r_k log((1 + z_j)(1 - z_k)); heights decrease with j.
CompensatedSum off_diagonal_log_sum(const ParallelLayout& layout) {
  CompensatedSum acc;
  for (std::size_t j = 0; j < layout.p(); ++j) {
    const auto rj = static_cast<double>(layout.count(j));
    const double lp = layout.log_one_plus_z(j);
    for (std::size_t k = j + 1; k < layout.p(); ++k) {
      acc.add(rj * static_cast<double>(layout.count(k)) * (lp + layout.log_one_minus_z(k)));
    }
  }
  return acc;
}

}  // namespace

EnergyBreakdown expected_energy_general(const ParallelLayout& layout) {
  const double log2 = std::numbers::ln2;
  CompensatedSum a(-2.0 * log2);
  CompensatedSum b;
  for (std::size_t j = 0; j < layout.p(); ++j) {
    const auto r = static_cast<double>(layout.count(j));
    const double l2 = layout.log_one_minus_z2(j);
    a.add(-r * 2.0 * log2);
    a.add(-r * l2);
    b.add(-r_log_r(layout.count(j)));
    b.add(-0.5 * r * (r - 1.0) * l2);
  }
  // Each unordered pair of distinct parallels appears twice in C with weight 1/2.
  const double c = -off_diagonal_log_sum(layout).value();

  EnergyBreakdown out;
  out.pole_terms = a.value();
  out.intra_parallel = b.value();
  out.cross_parallel = c;
  CompensatedSum total;
  total.add(out.pole_terms);
  total.add(out.intra_parallel);
  total.add(out.cross_parallel);
  out.total = total.value();
  out.N = layout.N();
  out.p = layout.p();
  return out;
}

double expected_energy_single_sum(const ParallelLayout& layout) {
  const double log2 = std::numbers::ln2;
  CompensatedSum acc(-2.0 * log2);
  for (std::size_t j = 0; j < layout.p(); ++j) {
    const auto r = static_cast<double>(layout.count(j));
    const double l2 = layout.log_one_minus_z2(j);
    acc.add(-r * 2.0 * log2);
    acc.add(-0.5 * r * l2);
    acc.add(-r_log_r(layout.count(j)));
    // k = j term of the double sum: log(1 - z_j^2).
    acc.add(-0.5 * r * r * l2);
  }
  acc.add(off_diagonal_log_sum(layout).value() * -1.0);
  return acc.value();
}

double expected_energy_symmetric(const ParallelLayout& layout) {
  if (layout.p() % 2 == 0) throw Error(ErrorCode::NotSymmetric, "symmetric formula needs an odd number of parallels");
  if (!layout.symmetric_counts()) throw Error(ErrorCode::NotSymmetric, "counts are not palindromic");
  if (!layout.exact()) {
    const ParallelLayout optimal = optimal_heights(layout.counts());
    for (std::size_t j = 0; j < layout.p(); ++j) {
      if (std::abs(layout.z(j) - optimal.z(j)) > 1e-12) {
        throw Error(ErrorCode::NotOptimalHeights, "heights differ from the closed-form optimum");
      }
    }
    return expected_energy_symmetric(optimal);
  }

  const std::size_t M = (layout.p() + 1) / 2;
  const auto n1 = static_cast<double>(layout.N() - 1);
  const auto u = layout.numerators();
  CompensatedSum acc(-n1 * 2.0 * std::numbers::ln2);
  acc.add(r_log_r(layout.count(M - 1)));
  for (std::size_t j = 0; j < M; ++j) {
    const auto r = static_cast<double>(layout.count(j));
    // (N-1)(1 - z_j) = u_j and (N-1)(1 + z_j) = 2(N-1) - u_j, both integers.
    const auto minus = static_cast<double>(u[j]);
    const auto plus = static_cast<double>(2 * (layout.N() - 1) - u[j]);
    acc.add(-2.0 * r_log_r(layout.count(j)));
    acc.add(-r * minus * log_ratio(u[j], layout.N() - 1));
    acc.add(-r * plus * log_ratio(2 * (layout.N() - 1) - u[j], layout.N() - 1));
  }
  return acc.value();
}

}  // namespace diamond
