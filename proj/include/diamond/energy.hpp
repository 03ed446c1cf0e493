#pragma once

#include <span>

#include <nlohmann/json_fwd.hpp>

#include "diamond/ensemble.hpp"
#include "diamond/parallel.hpp"

namespace diamond {

/// Split of a log-energy into pole-related (A), intra-parallel (B) and
/// cross-parallel (C) contributions. All sums run over ordered pairs.
struct EnergyBreakdown {
  double pole_terms = 0.0;
  double intra_parallel = 0.0;
  double cross_parallel = 0.0;
  double total = 0.0;
  std::int64_t N = 0;
  std::size_t p = 0;
};

nlohmann::json to_json(const EnergyBreakdown& breakdown);

// Direct energies. Every pair kernel sums over i != j (each unordered pair
// twice), accumulates with compensation in fixed row blocks, and reduces the
// block partials in block order, so results do not depend on thread count.
// Points closer than 1e-14 raise DuplicatePoints.

double riesz_energy(std::span<const Vec3> points, double s, unsigned threads = thread_count());
double log_energy(std::span<const Vec3> points, unsigned threads = thread_count());

/// -sum_{x in a, y in b} log |x - y|, each cross pair counted once.
double log_interaction(std::span<const Vec3> a, std::span<const Vec3> b);

/// A/B/C split of the log-energy of an actual realization.
EnergyBreakdown sampled_breakdown(const PointSet& set, unsigned threads = thread_count());

// Closed forms.

/// Log-energy of n equally spaced points on a circle of radius R:
/// -n log n - n(n-1) log R.
double roots_of_unity_energy(std::int64_t n, double R);

/// Expected -log|x - y| for x, y uniform on the parallels at heights zi, zj:
/// -log(1 - zi zj + |zi - zj|) / 2. Evaluated through the factorization
/// 1 - zi zj + |zi - zj| = (1 + max)(1 - min), which is also the continuous
/// extension -log(1 - z^2) / 2 on the diagonal.
double expected_cross_pair(double zi, double zj);

/// Expected log-energy of Omega(p, r_j, z_j) as the A + B + C split. C
/// excludes the j = k diagonal, so each field matches sampled_breakdown in
/// expectation.
EnergyBreakdown expected_energy_general(const ParallelLayout& layout);

/// The same expectation in the rearranged single-sum form, where the
/// diagonal j = k terms appear inside the double sum.
double expected_energy_single_sum(const ParallelLayout& layout);

/// Symmetric closed form for odd p, r_j = r_{p+1-j} and optimal heights:
///   -(N-1) log 4 + r_M log r_M - 2 sum_{j<=M} r_j log r_j
///   - (N-1) sum_{j<=M} r_j (1 - z_j) log(1 - z_j)
///   - (N-1) sum_{j<=M} r_j (1 + z_j) log(1 + z_j).
/// Throws NotSymmetric, or NotOptimalHeights for a general layout whose
/// heights are not the optimum.
double expected_energy_symmetric(const ParallelLayout& layout);

}  // namespace diamond
